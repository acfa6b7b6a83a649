//! Synthesis of linear fractional and multifractional stable motion through
//! a truncated wavelet double series, plus empirical verification of the
//! coefficient growth bounds, moduli of continuity and critical Holder-space
//! membership of the sample paths.
//!
//! Pipeline: [`stable`] simulates the driving SaS Levy motion, [`coeffs`]
//! projects one path onto a Daubechies system built by [`wavelet`], [`psi`]
//! tabulates the fractional-integral kernel, [`field`] assembles the random
//! field X(u, v) and the path Y(t) = X(t, H(t)), and [`regularity`] runs the
//! oscillation diagnostics. All numeric kernels are generic over [`Real`];
//! the aliases below fix the `f64` instantiation used by the CLI and the
//! file formats.

pub mod coeffs;
pub(crate) mod daubechies;
pub mod error;
pub mod field;
pub mod io;
pub mod psi;
pub mod quad;
pub mod regularity;
pub mod rng;
pub mod scalar;
pub mod stable;
pub mod stats;
pub mod sum;
pub mod wavelet;

pub use error::{CoreError, Result};
pub use rng::RandomStream;
pub use scalar::Real;

/// `f64` instantiations of the main domain types.
pub type StableParams = stable::StableParams<f64>;
pub type LevyPathGrid = stable::LevyPathGrid<f64>;
pub type WaveletTable = wavelet::WaveletTable<f64>;
pub type PsiTable = psi::PsiTable<f64>;
