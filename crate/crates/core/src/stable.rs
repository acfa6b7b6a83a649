//! Symmetric alpha-stable randomness: variates, Levy motion on a grid, and
//! stochastic integrals of deterministic functions against it.
//!
//! The sampler is the Chambers-Mallows-Stuck transform, which is exact (no
//! tail truncation). Grid cells are left-open/right-closed and the step
//! integral pairs the integrand at the right endpoint of each cell.

use crate::error::{CoreError, Result};
use crate::rng::RandomStream;
use crate::scalar::Real;
use crate::sum::{self, CHUNK};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Parameters of a symmetric alpha-stable law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams<T: Real> {
    alpha: T,
    scale: T,
}

impl<T: Real> StableParams<T> {
    /// Requires `1 < alpha < 2` strictly and `scale >= 0`.
    pub fn new(alpha: T, scale: T) -> Result<Self> {
        if !(alpha > T::one() && alpha < T::two()) {
            return Err(CoreError::InvalidParameter(format!(
                "alpha must lie in the open interval (1, 2), got {alpha}"
            )));
        }
        if !(scale >= T::zero()) {
            return Err(CoreError::InvalidParameter(format!(
                "scale must be nonnegative, got {scale}"
            )));
        }
        Ok(StableParams { alpha, scale })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn with_scale(&self, scale: T) -> Result<Self> {
        Self::new(self.alpha, scale)
    }
}

/// One CMS draw from the standard SaS(alpha) law (unit scale).
///
/// X = sin(alpha*phi)/cos(phi)^{1/alpha} * (cos((alpha-1)*phi)/w)^{(1-alpha)/alpha}
/// with phi uniform on (-pi/2, pi/2) and w standard exponential.
#[inline]
fn cms_standard(alpha: f64, u1: f64, u2: f64) -> f64 {
    let phi = std::f64::consts::PI * (u1 - 0.5);
    let w = -u2.ln();
    let inv_alpha = 1.0 / alpha;
    let a = (alpha * phi).sin() / phi.cos().powf(inv_alpha);
    let b = (((alpha - 1.0) * phi).cos() / w).powf((1.0 - alpha) * inv_alpha);
    a * b
}

/// Draws `n` i.i.d. SaS variates. Pure function of `(params, n, stream)`.
pub fn sample_sas<T: Real>(params: StableParams<T>, n: usize, stream: &RandomStream) -> Vec<T> {
    let alpha = params.alpha.as_f64();
    let scale = params.scale;
    if scale == T::zero() {
        return vec![T::zero(); n];
    }
    // Fixed chunking: variate i comes from substream i/CHUNK at offset i%CHUNK,
    // so the output is identical for every thread count.
    let n_chunks = n.div_ceil(CHUNK);
    let mut out = vec![T::zero(); n];
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .take(n_chunks)
        .for_each(|(c, chunk)| {
            let mut draws = stream.substream(c as u64).open();
            for slot in chunk.iter_mut() {
                let u1 = draws.uniform_open01();
                let u2 = draws.uniform_open01();
                *slot = scale * T::of(cms_standard(alpha, u1, u2));
            }
        });
    out
}

/// Discretized cadlag SaS Levy motion on a uniform grid containing 0.
///
/// `values[i]` holds `Z(s_min + i*step)`, with `Z(0) = 0` exactly and
/// increments over disjoint cells independent SaS with per-cell scale
/// `step^{1/alpha} * scale`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevyPathGrid<T: Real> {
    pub s_min: T,
    pub s_max: T,
    pub step: T,
    pub values: Vec<T>,
    pub params: StableParams<T>,
    pub stream: RandomStream,
    /// Index of the grid point s = 0.
    pub zero_index: usize,
}

impl<T: Real> LevyPathGrid<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn grid_point(&self, i: usize) -> T {
        self.s_min + T::of_usize(i) * self.step
    }

    /// Left-limit lookup: the path is treated as constant on [s_i, s_{i+1}).
    pub fn value_left_of(&self, s: T) -> T {
        if s < self.s_min {
            return T::zero();
        }
        let idx = ((s - self.s_min) / self.step).floor().as_f64() as usize;
        self.values[idx.min(self.values.len() - 1)]
    }
}

/// Upper bound on grid points a single path may occupy.
pub const DEFAULT_PATH_POINT_BUDGET: usize = 1 << 28;

/// Simulates SaS Levy motion on a uniform grid over `[s_min, s_max]`.
///
/// `s_min` is adjusted downward (and `s_max` upward) to the nearest grid
/// multiples of `step` so that 0 lands on the grid exactly; the returned
/// struct records the adjusted bounds. Increment generation is chunk-parallel
/// with fixed chunk boundaries; the cumulative sums are sequential
/// compensated sums per wing, so the result is bit-identical for every
/// thread count.
pub fn simulate_levy_path<T: Real>(
    params: StableParams<T>,
    s_min: T,
    s_max: T,
    step: T,
    stream: &RandomStream,
    point_budget: usize,
) -> Result<LevyPathGrid<T>> {
    if !(s_min < T::zero() && s_max > T::zero()) {
        return Err(CoreError::InvalidParameter(format!(
            "need s_min < 0 < s_max, got [{s_min}, {s_max}]"
        )));
    }
    if !(step > T::zero()) {
        return Err(CoreError::InvalidParameter(format!(
            "step must be positive, got {step}"
        )));
    }
    let n_neg = (-s_min / step).ceil().as_f64() as usize;
    let n_pos = (s_max / step).ceil().as_f64() as usize;
    let n = n_neg + n_pos + 1;
    if n > point_budget {
        return Err(CoreError::ResourceBudget(format!(
            "path would need {n} grid points, budget is {point_budget}"
        )));
    }
    let cell_scale = params.scale * step.powf(T::one() / params.alpha);
    let cell_params = params.with_scale(cell_scale)?;
    // Substream 0: increments of the negative wing, ordered away from 0.
    // Substream 1: increments of the positive wing.
    let neg = sample_sas(cell_params, n_neg, &stream.substream(0));
    let pos = sample_sas(cell_params, n_pos, &stream.substream(1));

    let mut values = vec![T::zero(); n];
    let mut acc = sum::Compensated::new();
    for (m, &inc) in pos.iter().enumerate() {
        acc.add(inc);
        values[n_neg + 1 + m] = acc.value();
    }
    // Z(s) = -Z([s, 0]) for s < 0: walking left accumulates negated increments.
    let mut acc = sum::Compensated::new();
    for (m, &inc) in neg.iter().enumerate() {
        acc.add(-inc);
        values[n_neg - 1 - m] = acc.value();
    }

    Ok(LevyPathGrid {
        s_min: -T::of_usize(n_neg) * step,
        s_max: T::of_usize(n_pos) * step,
        step,
        values,
        params,
        stream: stream.clone(),
        zero_index: n_neg,
    })
}

/// Step-function stochastic integral over a sub-range of the path grid.
///
/// `f_values[i]` must hold `f` at grid node `start + i`; the result is
/// `sum_i f(s_{i+1}) (Z(s_{i+1}) - Z(s_i))` over the cells of the sub-range,
/// accumulated in the canonical chunked compensated order.
pub fn integrate_step<T: Real>(
    f_values: &[T],
    start: usize,
    path: &LevyPathGrid<T>,
) -> Result<T> {
    if f_values.len() < 2 {
        return Err(CoreError::Contract(
            "integrate_step needs at least two aligned nodes".into(),
        ));
    }
    let end = start + f_values.len();
    if end > path.len() {
        return Err(CoreError::Contract(format!(
            "sub-range [{start}, {end}) escapes the path grid of {} points",
            path.len()
        )));
    }
    let z = &path.values;
    Ok(sum::sum_indexed(f_values.len() - 1, |i| {
        f_values[i + 1] * (z[start + i + 1] - z[start + i])
    }))
}

/// Integration-by-parts evaluation of the stochastic integral of a C^2
/// compactly supported `f`: returns `-Int f'(s) Z(s) ds` as a Riemann sum
/// over the grid with the cadlag left-limit convention.
pub fn integrate_by_parts<T: Real>(
    f: &dyn Fn(T) -> T,
    f_prime: &dyn Fn(T) -> T,
    path: &LevyPathGrid<T>,
) -> Result<T> {
    let eps = T::of(1e-300);
    for s in [path.s_min, path.s_max] {
        if f(s).abs() > eps || f_prime(s).abs() > eps {
            return Err(CoreError::Range(format!(
                "support of f must be contained in [{}, {}] with vanishing boundary values",
                path.s_min, path.s_max
            )));
        }
    }
    let z = &path.values;
    let step = path.step;
    let s_min = path.s_min;
    let total = sum::sum_indexed(path.len() - 1, |i| {
        f_prime(s_min + T::of_usize(i) * step) * z[i] * step
    });
    Ok(-total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats;

    fn params(alpha: f64, scale: f64) -> StableParams<f64> {
        StableParams::new(alpha, scale).unwrap()
    }

    #[test]
    fn rejects_boundary_alpha_and_negative_scale() {
        assert!(StableParams::new(1.0, 1.0).is_err());
        assert!(StableParams::new(2.0, 1.0).is_err());
        assert!(StableParams::new(0.5, 1.0).is_err());
        assert!(StableParams::new(1.5, -0.1).is_err());
        assert!(StableParams::new(1.5, 0.0).is_ok());
    }

    #[test]
    fn zero_scale_degenerates_to_point_mass() {
        let s = sample_sas(params(1.5, 0.0), 4, &RandomStream::new(1));
        assert_eq!(s, vec![0.0; 4]);
    }

    #[test]
    fn sampler_is_deterministic() {
        let stream = RandomStream::new(11).substream(4);
        let a = sample_sas(params(1.3, 2.0), 10_000, &stream);
        let b = sample_sas(params(1.3, 2.0), 10_000, &stream);
        assert_eq!(a, b);
    }

    #[test]
    fn empirical_median_is_near_zero() {
        // Symmetry: median of 1e6 draws within +-0.01 of 0.
        let s = sample_sas(params(1.5, 1.0), 1_000_000, &RandomStream::new(5));
        let med = stats::quantile(&s, 0.5);
        assert!(med.abs() < 0.01, "median = {med}");
    }

    #[test]
    fn iqr_scale_matches_cf_inversion_oracle() {
        // Scale re-estimated from the interquartile range matches 1 within 2%,
        // with the standard quantile from characteristic-function inversion.
        let s = sample_sas(params(1.5, 1.0), 1_000_000, &RandomStream::new(6));
        let est = stats::sas_scale_from_iqr(&s, 1.5);
        assert!((est - 1.0).abs() < 0.02, "scale estimate = {est}");
    }

    #[test]
    fn path_is_anchored_and_deterministic() {
        let stream = RandomStream::new(3);
        let p1 = simulate_levy_path(params(1.5, 1.0), -1.0, 1.0, 2f64.powi(-10), &stream, 1 << 22)
            .unwrap();
        let p2 = simulate_levy_path(params(1.5, 1.0), -1.0, 1.0, 2f64.powi(-10), &stream, 1 << 22)
            .unwrap();
        assert_eq!(p1.values[p1.zero_index], 0.0);
        assert_eq!(p1.grid_point(p1.zero_index), 0.0);
        assert_eq!(p1.values, p2.values);
    }

    #[test]
    fn path_budget_is_enforced() {
        let err = simulate_levy_path(
            params(1.5, 1.0),
            -1.0,
            1.0,
            2f64.powi(-12),
            &RandomStream::new(3),
            1024,
        );
        assert!(matches!(err, Err(CoreError::ResourceBudget(_))));
    }

    #[test]
    fn grid_misalignment_is_adjusted() {
        // s_min not a multiple of step: adjusted downward, 0 still on grid.
        let p = simulate_levy_path(
            params(1.5, 1.0),
            -0.7,
            0.3,
            0.25,
            &RandomStream::new(3),
            1 << 20,
        )
        .unwrap();
        assert_eq!(p.s_min, -0.75);
        assert_eq!(p.values[p.zero_index], 0.0);
    }

    #[test]
    fn self_similarity_of_marginals() {
        // Z(s)/s^{1/alpha} at s in {0.25, 0.5, 1} are mutually consistent:
        // pairwise quantile distances stay below a resampling threshold.
        let alpha = 1.5;
        let n_paths = 400;
        let root = RandomStream::new(77);
        let mut at = vec![Vec::new(); 3];
        for seed in 0..n_paths {
            let p = simulate_levy_path(
                params(alpha, 1.0),
                -0.25,
                1.0,
                2f64.powi(-8),
                &root.substream(seed),
                1 << 20,
            )
            .unwrap();
            for (j, s) in [0.25, 0.5, 1.0].iter().enumerate() {
                let idx = p.zero_index + (s / p.step) as usize;
                at[j].push(p.values[idx] / s.powf(1.0 / alpha));
            }
        }
        let ps = stats::default_prob_grid();
        let cal = RandomStream::new(991);
        for a in 0..3 {
            for b in (a + 1)..3 {
                let d = stats::two_sample_quantile_distance(&at[a], &at[b], &ps);
                let blocks_a: Vec<Vec<f64>> = at[a].iter().map(|&v| vec![v]).collect();
                let blocks_b: Vec<Vec<f64>> = at[b].iter().map(|&v| vec![v]).collect();
                let thr = stats::bootstrap_distance_threshold(
                    &blocks_a,
                    &blocks_b,
                    &ps,
                    200,
                    0.99,
                    &cal.substream((a * 3 + b) as u64),
                );
                assert!(d <= thr, "pair ({a},{b}): distance {d} > threshold {thr}");
            }
        }
    }

    #[test]
    fn step_integral_trivial_cases() {
        let p = simulate_levy_path(
            params(1.5, 1.0),
            -1.0,
            1.0,
            2f64.powi(-8),
            &RandomStream::new(8),
            1 << 20,
        )
        .unwrap();
        let zeros = vec![0.0; p.len()];
        assert_eq!(integrate_step(&zeros, 0, &p).unwrap(), 0.0);
        // f = 1 on the whole grid telescopes to Z(s_max) - Z(s_min).
        let ones = vec![1.0; p.len()];
        let v = integrate_step(&ones, 0, &p).unwrap();
        let expect = p.values[p.len() - 1] - p.values[0];
        assert!((v - expect).abs() < 1e-12 * expect.abs().max(1.0));
    }

    #[test]
    fn step_integral_is_linear_and_additive() {
        let p = simulate_levy_path(
            params(1.7, 1.0),
            -1.0,
            1.0,
            2f64.powi(-8),
            &RandomStream::new(9),
            1 << 20,
        )
        .unwrap();
        let n = p.len();
        // Disjoint-support f and g: integral(f+g) = integral(f) + integral(g).
        let mut f = vec![0.0; n];
        let mut g = vec![0.0; n];
        for i in 0..n / 3 {
            f[i] = (i as f64).sin();
        }
        for i in (2 * n / 3)..n {
            g[i] = (i as f64).cos();
        }
        let fg: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let lhs = integrate_step(&fg, 0, &p).unwrap();
        let rhs = integrate_step(&f, 0, &p).unwrap() + integrate_step(&g, 0, &p).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn step_integral_rejects_misalignment() {
        let p = simulate_levy_path(
            params(1.5, 1.0),
            -0.5,
            0.5,
            0.25,
            &RandomStream::new(2),
            1 << 16,
        )
        .unwrap();
        let too_long = vec![0.0; p.len() + 1];
        assert!(matches!(
            integrate_step(&too_long, 0, &p),
            Err(CoreError::Contract(_))
        ));
        assert!(matches!(
            integrate_step(&[0.0], 0, &p),
            Err(CoreError::Contract(_))
        ));
    }

    /// C^2 bump supported on [lo, hi]: c*(x-lo)^3 (hi-x)^3, with derivative.
    pub fn bump(lo: f64, hi: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
        let c = 64.0 / (hi - lo).powi(6);
        let f = move |x: f64| {
            if x <= lo || x >= hi {
                0.0
            } else {
                c * (x - lo).powi(3) * (hi - x).powi(3)
            }
        };
        let fp = move |x: f64| {
            if x <= lo || x >= hi {
                0.0
            } else {
                c * 3.0 * (x - lo).powi(2) * (hi - x).powi(2) * ((hi - x) - (x - lo))
            }
        };
        (f, fp)
    }

    #[test]
    fn ibp_trivial_and_linear() {
        let p = simulate_levy_path(
            params(1.5, 1.0),
            -1.0,
            1.0,
            2f64.powi(-10),
            &RandomStream::new(21),
            1 << 22,
        )
        .unwrap();
        let zero = |_x: f64| 0.0;
        assert_eq!(integrate_by_parts(&zero, &zero, &p).unwrap(), 0.0);

        let (f, fp) = bump(-0.5, 0.5);
        let v1 = integrate_by_parts(&f, &fp, &p).unwrap();
        let f2 = move |x: f64| 2.0 * f(x);
        let fp2 = move |x: f64| 2.0 * fp(x);
        let v2 = integrate_by_parts(&f2, &fp2, &p).unwrap();
        assert!((v2 - 2.0 * v1).abs() <= 1e-12 * v1.abs().max(1.0));
    }

    #[test]
    fn ibp_rejects_escaping_support() {
        let p = simulate_levy_path(
            params(1.5, 1.0),
            -0.25,
            0.25,
            2f64.powi(-8),
            &RandomStream::new(22),
            1 << 20,
        )
        .unwrap();
        let (f, fp) = bump(-0.5, 0.5);
        assert!(matches!(
            integrate_by_parts(&f, &fp, &p),
            Err(CoreError::Range(_))
        ));
    }

    #[test]
    fn routes_agree_better_on_finer_grids() {
        // |integrate_step(f) - integrate_by_parts(f)| halves (in trend) as the
        // step halves: log-log regression slope clearly negative.
        let (f, fp) = bump(-0.5, 0.5);
        let mut log_step = Vec::new();
        let mut log_diff = Vec::new();
        for level in [10, 12, 14] {
            let step = 2f64.powi(-level);
            let mut worst: f64 = 0.0;
            for seed in 0..5 {
                let p = simulate_levy_path(
                    params(1.5, 1.0),
                    -1.0,
                    1.0,
                    step,
                    &RandomStream::new(500 + seed),
                    1 << 24,
                )
                .unwrap();
                let fv: Vec<f64> = (0..p.len()).map(|i| f(p.grid_point(i))).collect();
                let a = integrate_step(&fv, 0, &p).unwrap();
                let b = integrate_by_parts(&f, &fp, &p).unwrap();
                worst = worst.max((a - b).abs());
            }
            log_step.push(step.ln());
            log_diff.push(worst.ln());
        }
        let (slope, _) = stats::ols_line(&log_step, &log_diff);
        assert!(slope > 0.5, "log-log slope vs step = {slope}");
    }
}
