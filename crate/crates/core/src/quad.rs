//! Deterministic quadrature: composite Gauss-Legendre on a mesh graded
//! toward an endpoint singularity, plus an adaptive Simpson rule used as an
//! independent cross-check.

use crate::scalar::Real;
use crate::sum::Compensated;
use serde::{Deserialize, Serialize};

/// 8-point Gauss-Legendre nodes on [-1, 1].
const GL8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_29,
    0.362_683_783_378_361_98,
    0.362_683_783_378_361_98,
    0.313_706_645_877_887_29,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Mesh and rule parameters for the kernel quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Number of geometric refinement levels toward the singular endpoint.
    pub grading_depth: u32,
    /// No cell away from the singularity exceeds this width.
    pub max_cell_width: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            grading_depth: 22,
            max_cell_width: 0.25,
        }
    }
}

impl QuadConfig {
    /// A configuration with roughly `factor` times the resolution.
    pub fn refined(&self, factor: u32) -> Self {
        QuadConfig {
            grading_depth: self.grading_depth + factor,
            max_cell_width: self.max_cell_width / factor as f64,
        }
    }
}

/// Integrates `f` over `[lo, hi]` on a mesh graded (ratio 2) toward `hi`,
/// 8-point Gauss-Legendre per cell, cells visited in ascending order with a
/// compensated accumulator.
pub fn integrate_graded_toward_upper<T: Real>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    config: &QuadConfig,
) -> T {
    if !(hi > lo) {
        return T::zero();
    }
    let span = hi - lo;
    let mut acc = Compensated::new();
    let gl_cell = |a: T, b: T, acc: &mut Compensated<T>| {
        let mid = (a + b) * T::half();
        let half = (b - a) * T::half();
        for (node, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
            let x = mid + half * T::of(*node);
            acc.add(T::of(*w) * half * f(x));
        }
    };
    let split_cell = |a: T, b: T, acc: &mut Compensated<T>| {
        let width = (b - a).as_f64();
        let parts = (width / config.max_cell_width).ceil().max(1.0) as usize;
        for i in 0..parts {
            let x0 = a + (b - a) * T::of(i as f64 / parts as f64);
            let x1 = a + (b - a) * T::of((i + 1) as f64 / parts as f64);
            gl_cell(x0, x1, acc);
        }
    };
    // Graded boundaries hi - span * 2^-t, t = 0..=depth, ascending cells.
    let mut left = lo;
    for t in 1..=config.grading_depth {
        let right = hi - span * T::exp2_i(-(t as i32));
        if right > left {
            split_cell(left, right, &mut acc);
            left = right;
        }
    }
    // Final sliver adjacent to the singularity.
    split_cell(left, hi, &mut acc);
    acc.value()
}

/// Adaptive Simpson quadrature; the independent cross-check rule.
pub fn adaptive_simpson<T: Real>(f: &impl Fn(T) -> T, lo: T, hi: T, tol: f64) -> T {
    fn simpson<T: Real>(f: &impl Fn(T) -> T, a: T, fa: T, b: T, fb: T) -> (T, T, T) {
        let m = (a + b) * T::half();
        let fm = f(m);
        let s = (b - a) / T::of(6.0) * (fa + T::of(4.0) * fm + fb);
        (m, fm, s)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<T: Real>(
        f: &impl Fn(T) -> T,
        a: T,
        fa: T,
        b: T,
        fb: T,
        whole: T,
        m: T,
        fm: T,
        tol: f64,
        depth: u32,
    ) -> T {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs().as_f64() <= 15.0 * tol {
            return left + right + delta / T::of(15.0);
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    if !(hi > lo) {
        return T::zero();
    }
    let fa = f(lo);
    let fb = f(hi);
    let (m, fm, whole) = simpson(f, lo, fa, hi, fb);
    recurse(f, lo, fa, hi, fb, whole, m, fm, tol, 48)
}
