//! Counter-based random streams.
//!
//! A [`RandomStream`] names a deterministic sequence of draws by
//! `(master_seed, substream_path)`. The key for the underlying ChaCha12
//! generator is derived by absorbing the seed and the path elements into a
//! SplitMix64 sponge, so any substream can be opened independently of
//! execution order and replaying is bit-exact. Distinct paths give
//! statistically independent streams.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Identifier of a reproducible random substream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomStream {
    pub master_seed: u64,
    pub substream_path: Vec<u64>,
}

impl RandomStream {
    pub fn new(master_seed: u64) -> Self {
        RandomStream {
            master_seed,
            substream_path: Vec::new(),
        }
    }

    /// Child stream with one more path element.
    pub fn substream(&self, index: u64) -> Self {
        let mut path = self.substream_path.clone();
        path.push(index);
        RandomStream {
            master_seed: self.master_seed,
            substream_path: path,
        }
    }

    /// Derived 256-bit key; pure function of (seed, path).
    fn key(&self) -> [u8; 32] {
        let mut state = 0x6C62_272E_07BB_0142u64 ^ self.master_seed;
        splitmix64(&mut state);
        for &p in &self.substream_path {
            state ^= p.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0xA076_1D64_78BD_642F;
            splitmix64(&mut state);
        }
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        key
    }

    /// Open the stream for drawing.
    pub fn open(&self) -> StreamDraws {
        StreamDraws {
            rng: ChaCha12Rng::from_seed(self.key()),
        }
    }
}

/// An opened stream handing out variates.
pub struct StreamDraws {
    rng: ChaCha12Rng,
}

impl StreamDraws {
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in the open interval (0, 1); never returns 0 or 1.
    #[inline]
    pub fn uniform_open01(&mut self) -> f64 {
        // 53 significant bits, offset off the endpoints.
        (self.rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
            + (1.0 / 18_014_398_509_481_984.0)
    }
}
