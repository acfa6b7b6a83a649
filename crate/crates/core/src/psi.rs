//! The fractional-integral kernel and its tabulation.
//!
//! Psi(x, v) integrates (x - s)_+^{v - 1/alpha} against the mother wavelet;
//! x-derivatives shift onto the wavelet through integration by parts (the
//! boundary terms vanish by compact support), v-derivatives insert log
//! powers into the integrand. The kink at s = x is handled by the graded
//! quadrature mesh. Tables are bicubic-interpolable and record the measured
//! localization constants sup (3+|x|)^2 |d^p_x d^q_v Psi|.

use crate::error::{CoreError, Result};
use crate::quad::{integrate_graded_toward_upper, QuadConfig};
use crate::scalar::Real;
use crate::wavelet::WaveletTable;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

fn check_v_domain<T: Real>(v: T, alpha: T) -> Result<()> {
    let inv_alpha = T::one() / alpha;
    if !(v > inv_alpha && v < T::one()) {
        return Err(CoreError::Range(format!(
            "v must lie in (1/alpha, 1) = ({inv_alpha}, 1), got {v}"
        )));
    }
    Ok(())
}

/// d^p_x d^q_v Psi(x, v) by graded-mesh quadrature.
///
/// The integrand is (x-s)^{v-1/alpha} ln^q(x-s) psi^(p)(s), exactly zero for
/// s >= x; for x at or below the support infimum the result is exactly 0.
pub fn compute_psi_derivative<T: Real>(
    x: T,
    v: T,
    p: usize,
    q: usize,
    wavelet: &WaveletTable<T>,
    alpha: T,
    quad: &QuadConfig,
) -> Result<T> {
    check_v_domain(v, alpha)?;
    if p > 3 {
        return Err(CoreError::InvalidParameter(format!(
            "x-derivative order must be 0..=3, got {p}"
        )));
    }
    let kappa = v - T::one() / alpha;
    let upper = if x < wavelet.x_hi { x } else { wavelet.x_hi };
    if upper <= wavelet.x_lo {
        return Ok(T::zero());
    }
    let integrand = |s: T| {
        let d = x - s;
        let mut w = d.powf(kappa);
        for _ in 0..q {
            w = w * d.ln();
        }
        w * wavelet.eval(s, p)
    };
    Ok(integrate_graded_toward_upper(
        integrand,
        wavelet.x_lo,
        upper,
        quad,
    ))
}

/// Psi(x, v) itself.
pub fn compute_psi<T: Real>(
    x: T,
    v: T,
    wavelet: &WaveletTable<T>,
    alpha: T,
    quad: &QuadConfig,
) -> Result<T> {
    compute_psi_derivative(x, v, 0, 0, wavelet, alpha, quad)
}

/// Grid and content of a kernel table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiTableConfig {
    /// Upper end of the x-grid; values beyond it read as 0 (localization).
    pub x_max: f64,
    /// x-grid spacing.
    pub x_step: f64,
    /// v-grid range, strictly inside (1/alpha, 1).
    pub v_lo: f64,
    pub v_hi: f64,
    /// Number of v nodes (>= 4 for the bicubic stencil).
    pub v_points: usize,
    /// Stored derivative pairs (p, q).
    pub derivatives: Vec<(u8, u8)>,
    pub quad: QuadConfig,
}

impl PsiTableConfig {
    pub fn synthesis_default(alpha: f64, v_lo: f64, v_hi: f64) -> Self {
        let margin = 0.25 * (v_lo - 1.0 / alpha).min(1.0 - v_hi);
        PsiTableConfig {
            x_max: 50.0,
            x_step: 1.0 / 128.0,
            v_lo: v_lo - margin,
            v_hi: v_hi + margin,
            v_points: 33,
            derivatives: vec![(0, 0)],
            quad: QuadConfig::default(),
        }
    }

    /// Full derivative set used by the localization diagnostics.
    pub fn with_full_derivative_set(mut self, q_max: u8) -> Self {
        self.derivatives = (0..=3u8)
            .flat_map(|p| (0..=q_max).map(move |q| (p, q)))
            .collect();
        self
    }
}

/// Per-(p, q) measured localization constant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalizationEntry {
    pub p: u8,
    pub q: u8,
    /// sup over the table of (3+|x|)^2 |d^p_x d^q_v Psi|.
    pub sup_value: f64,
    pub argmax_x: f64,
    pub argmax_v: f64,
    /// True when the sup sits on the upper x boundary: the range is too
    /// short for the scan to be conclusive.
    pub boundary_flag: bool,
}

/// Outcome of [`verify_localization`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub entries: Vec<LocalizationEntry>,
    pub any_boundary: bool,
}

/// Tabulated kernel values over [support_lo, x_max] x [v_lo, v_hi].
/// Immutable after build; evaluation is reentrant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PsiTable<T: Real> {
    pub alpha: T,
    /// Infimum of the wavelet support: Psi is exactly 0 at or below it.
    pub support_lo: T,
    pub x_max: T,
    pub x_step: T,
    pub v_lo: T,
    pub v_hi: T,
    pub v_step: T,
    pub nx: usize,
    pub nv: usize,
    pub derivatives: Vec<(u8, u8)>,
    /// values[d][ix * nv + iv] for derivative pair d.
    pub values: Vec<Vec<T>>,
    pub localization: Vec<LocalizationEntry>,
    pub quad: QuadConfig,
}

/// Builds a [`PsiTable`] by direct quadrature at every node, in parallel
/// over x-columns.
pub fn tabulate_psi<T: Real>(
    wavelet: &WaveletTable<T>,
    alpha: T,
    config: &PsiTableConfig,
) -> Result<PsiTable<T>> {
    let inv_alpha = 1.0 / alpha.as_f64();
    if !(config.v_lo > inv_alpha && config.v_hi < 1.0 && config.v_lo < config.v_hi) {
        return Err(CoreError::InvalidParameter(format!(
            "v-range [{}, {}] must sit strictly inside (1/alpha, 1) = ({inv_alpha}, 1)",
            config.v_lo, config.v_hi
        )));
    }
    if config.v_points < 4 {
        return Err(CoreError::InvalidParameter(
            "v_points must be >= 4 for the bicubic stencil".into(),
        ));
    }
    if config.derivatives.is_empty() {
        return Err(CoreError::InvalidParameter(
            "derivative set must not be empty".into(),
        ));
    }
    for &(p, q) in &config.derivatives {
        if p > 3 {
            return Err(CoreError::InvalidParameter(format!(
                "x-derivative order {p} out of range 0..=3"
            )));
        }
        if q > 8 {
            return Err(CoreError::InvalidParameter(format!(
                "v-derivative order {q} unreasonably large"
            )));
        }
    }
    let support_lo = wavelet.x_lo;
    let nx = ((config.x_max - support_lo.as_f64()) / config.x_step).round() as usize + 1;
    let nv = config.v_points;
    let v_step = (config.v_hi - config.v_lo) / (nv - 1) as f64;

    let mut values = Vec::with_capacity(config.derivatives.len());
    for &(p, q) in &config.derivatives {
        let column: Vec<Vec<T>> = (0..nx)
            .into_par_iter()
            .map(|ix| {
                let x = support_lo + T::of(ix as f64 * config.x_step);
                let mut col = Vec::with_capacity(nv);
                for iv in 0..nv {
                    let v = T::of(config.v_lo + iv as f64 * v_step);
                    let val = compute_psi_derivative(
                        x,
                        v,
                        p as usize,
                        q as usize,
                        wavelet,
                        alpha,
                        &config.quad,
                    )
                    .expect("validated domain");
                    col.push(val);
                }
                col
            })
            .collect();
        let mut flat = Vec::with_capacity(nx * nv);
        for col in column {
            flat.extend(col);
        }
        values.push(flat);
    }

    let mut table = PsiTable {
        alpha,
        support_lo,
        x_max: T::of(config.x_max),
        x_step: T::of(config.x_step),
        v_lo: T::of(config.v_lo),
        v_hi: T::of(config.v_hi),
        v_step: T::of(v_step),
        nx,
        nv,
        derivatives: config.derivatives.clone(),
        values,
        localization: Vec::new(),
        quad: config.quad,
    };
    table.localization = scan_localization(&table);
    Ok(table)
}

fn scan_localization<T: Real>(table: &PsiTable<T>) -> Vec<LocalizationEntry> {
    let mut entries = Vec::new();
    for (d, &(p, q)) in table.derivatives.iter().enumerate() {
        let mut sup = 0.0f64;
        let mut arg = (0.0f64, 0.0f64);
        for ix in 0..table.nx {
            let x = table.support_lo.as_f64() + ix as f64 * table.x_step.as_f64();
            let w = (3.0 + x.abs()).powi(2);
            for iv in 0..table.nv {
                let v = table.values[d][ix * table.nv + iv].as_f64().abs() * w;
                if v > sup {
                    sup = v;
                    arg = (x, table.v_lo.as_f64() + iv as f64 * table.v_step.as_f64());
                }
            }
        }
        let boundary = arg.0 >= table.x_max.as_f64() - 2.0 * table.x_step.as_f64();
        entries.push(LocalizationEntry {
            p,
            q,
            sup_value: sup,
            argmax_x: arg.0,
            argmax_v: arg.1,
            boundary_flag: boundary,
        });
    }
    entries
}

/// Reports the measured localization constants of a built table.
pub fn verify_localization<T: Real>(table: &PsiTable<T>) -> LocalizationReport {
    let entries = scan_localization(table);
    let any_boundary = entries.iter().any(|e| e.boundary_flag);
    LocalizationReport {
        entries,
        any_boundary,
    }
}

/// 4-point Lagrange weights at offset t in [0, 1] between nodes 1 and 2.
#[inline]
fn cubic_weights<T: Real>(t: T) -> [T; 4] {
    let one = T::one();
    let two = T::two();
    let six = T::of(6.0);
    let w0 = -t * (t - one) * (t - two) / six;
    let w1 = (t + one) * (t - one) * (t - two) * T::half();
    let w2 = -(t + one) * t * (t - two) * T::half();
    let w3 = (t + one) * t * (t - one) / six;
    [w0, w1, w2, w3]
}

impl<T: Real> PsiTable<T> {
    fn derivative_index(&self, p: u8, q: u8) -> Result<usize> {
        self.derivatives
            .iter()
            .position(|&d| d == (p, q))
            .ok_or_else(|| CoreError::Range(format!("derivative pair ({p}, {q}) not tabulated")))
    }

    /// True when `x` lies beyond the tabulated range; such reads return 0
    /// and the caller charges the localization tail budget.
    pub fn beyond_range(&self, x: T) -> bool {
        x >= self.x_max
    }

    /// Bicubic interpolation of the tabulated pair (p, q). Exact 0 at or
    /// below the support infimum and beyond `x_max`.
    pub fn eval(&self, x: T, v: T, p: u8, q: u8) -> Result<T> {
        let d = self.derivative_index(p, q)?;
        if !(v >= self.v_lo && v <= self.v_hi) {
            return Err(CoreError::Range(format!(
                "v = {v} outside the tabulated range [{}, {}]",
                self.v_lo, self.v_hi
            )));
        }
        Ok(self.eval_unchecked(x, v, d))
    }

    /// Interpolation on a validated v; `d` indexes the derivative set.
    #[inline]
    pub fn eval_unchecked(&self, x: T, v: T, d: usize) -> T {
        if x <= self.support_lo || x >= self.x_max {
            return T::zero();
        }
        let data = &self.values[d];
        let fx = (x - self.support_lo) / self.x_step;
        let ix = (fx.floor().as_f64() as usize).min(self.nx - 2);
        let tx = fx - T::of_usize(ix);
        let fv = (v - self.v_lo) / self.v_step;
        let iv = (fv.floor().as_f64() as usize).min(self.nv - 2);
        let tv = fv - T::of_usize(iv);

        // Clamped 4-point stencils.
        let ix0 = ix.saturating_sub(1).min(self.nx - 4);
        let iv0 = iv.saturating_sub(1).min(self.nv - 4);
        let wx = cubic_weights(tx + T::of_usize(ix) - T::of_usize(ix0 + 1));
        let wv = cubic_weights(tv + T::of_usize(iv) - T::of_usize(iv0 + 1));
        let mut acc = T::zero();
        for (a, &wxa) in wx.iter().enumerate() {
            let row = (ix0 + a) * self.nv + iv0;
            let mut inner = T::zero();
            for (b, &wvb) in wv.iter().enumerate() {
                inner = inner + wvb * data[row + b];
            }
            acc = acc + wxa * inner;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive_simpson;
    use crate::wavelet::{build_wavelet_table, WaveletSpec};
    use std::sync::OnceLock;

    fn wavelet() -> &'static WaveletTable<f64> {
        static W: OnceLock<WaveletTable<f64>> = OnceLock::new();
        W.get_or_init(|| build_wavelet_table(WaveletSpec::new(12, 12).unwrap()).unwrap())
    }

    #[test]
    fn zero_region_is_exact() {
        let w = wavelet();
        let q = QuadConfig::default();
        assert_eq!(compute_psi(0.0, 0.8, w, 1.5, &q).unwrap(), 0.0);
        assert_eq!(compute_psi(-3.0, 0.8, w, 1.5, &q).unwrap(), 0.0);
    }

    #[test]
    fn rejects_v_outside_domain() {
        let w = wavelet();
        let q = QuadConfig::default();
        assert!(compute_psi(2.0, 0.5, w, 1.5, &q).is_err());
        assert!(compute_psi(2.0, 1.0, w, 1.5, &q).is_err());
    }

    #[test]
    fn agrees_with_adaptive_quadrature() {
        // Independent oracle: adaptive Simpson split at graded dyadic points
        // near the kink, at much higher resolution.
        let w = wavelet();
        let alpha = 1.5f64;
        let v = 0.8f64;
        let kappa = v - 1.0 / alpha;
        for &x in &[0.7, 2.0, 11.3, 22.9, 30.0] {
            let got = compute_psi(x, v, w, alpha, &QuadConfig::default()).unwrap();
            let f = |s: f64| (x - s).powf(kappa) * w.eval(s, 0);
            let upper = x.min(23.0);
            // Geometric splits toward the kink, adaptive Simpson per piece.
            let mut splits = vec![0.0];
            let mut width = upper;
            for _ in 0..40 {
                width *= 0.5;
                splits.push(upper - width);
            }
            splits.push(upper);
            let mut oracle = 0.0;
            for pair in splits.windows(2) {
                oracle += adaptive_simpson(&f, pair[0], pair[1], 1e-12);
            }
            let rel = (got - oracle).abs() / oracle.abs().max(1e-12);
            assert!(rel < 1e-4, "x = {x}: got {got}, oracle {oracle}, rel {rel}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference_in_x() {
        let w = wavelet();
        let q = QuadConfig::default();
        let (alpha, v) = (1.5, 0.8);
        for &x in &[1.5, 7.0, 20.0] {
            let h = 1e-4;
            let fd = (compute_psi(x + h, v, w, alpha, &q).unwrap()
                - compute_psi(x - h, v, w, alpha, &q).unwrap())
                / (2.0 * h);
            let d = compute_psi_derivative(x, v, 1, 0, w, alpha, &q).unwrap();
            let rel = (fd - d).abs() / d.abs().max(1e-9);
            assert!(rel < 1e-3, "x = {x}: fd {fd} vs {d}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference_in_v() {
        let w = wavelet();
        let q = QuadConfig::default();
        let (alpha, v) = (1.5, 0.8);
        for &x in &[1.5, 7.0, 20.0] {
            let h = 1e-4;
            let fd = (compute_psi(x, v + h, w, alpha, &q).unwrap()
                - compute_psi(x, v - h, w, alpha, &q).unwrap())
                / (2.0 * h);
            let d = compute_psi_derivative(x, v, 0, 1, w, alpha, &q).unwrap();
            let rel = (fd - d).abs() / d.abs().max(1e-9);
            assert!(rel < 1e-3, "x = {x}: fd {fd} vs {d}");
        }
    }

    #[test]
    fn localization_weight_is_bounded_and_stable() {
        // |Psi(x, v)| (3+|x|)^2 over x in [5, 50] is bounded by a constant
        // that does not move when the scan range is extended.
        let w = wavelet();
        let q = QuadConfig::default();
        let sup_on = |hi: f64| {
            let mut sup = 0.0f64;
            let mut x = 5.0;
            while x <= hi {
                let val = compute_psi(x, 0.8, w, 1.5, &q).unwrap();
                sup = sup.max((3.0 + x).powi(2) * val.abs());
                x += 0.5;
            }
            sup
        };
        let a = sup_on(50.0);
        let b = sup_on(100.0);
        assert!(a.is_finite() && a > 0.0);
        assert!((a - b).abs() <= 1e-9 * a, "sup moved: {a} vs {b}");
    }

    #[test]
    fn table_interpolation_matches_direct_evaluation() {
        let w = wavelet();
        let config = PsiTableConfig {
            x_max: 30.0,
            x_step: 1.0 / 128.0,
            v_lo: 0.70,
            v_hi: 0.92,
            v_points: 23,
            derivatives: vec![(0, 0)],
            quad: QuadConfig::default(),
        };
        let table = tabulate_psi(w, 1.5, &config).unwrap();
        // Deterministic pseudo-random probes off the grid.
        let mut state = 0x12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let x = 0.2 + 25.0 * next();
            let v = 0.71 + 0.2 * next();
            let interp = table.eval(x, v, 0, 0).unwrap();
            let direct = compute_psi(x, v, w, 1.5, &QuadConfig::default()).unwrap();
            let rel = (interp - direct).abs() / direct.abs().max(1e-6);
            assert!(rel < 1e-3, "({x:.4}, {v:.4}): interp {interp}, direct {direct}");
        }
    }

    #[test]
    fn interpolation_error_shrinks_with_grid_density() {
        let w = wavelet();
        let mut errs = Vec::new();
        for step_div in [32.0, 64.0] {
            let config = PsiTableConfig {
                x_max: 26.0,
                x_step: 1.0 / step_div,
                v_lo: 0.72,
                v_hi: 0.9,
                v_points: 17,
                derivatives: vec![(0, 0)],
                quad: QuadConfig::default(),
            };
            let table = tabulate_psi(w, 1.5, &config).unwrap();
            let mut worst = 0.0f64;
            for i in 0..30 {
                let x = 0.3 + 22.0 * (i as f64 + 0.37) / 30.0;
                let v = 0.73 + 0.16 * ((i * 7 % 30) as f64 + 0.51) / 30.0;
                let interp = table.eval(x, v, 0, 0).unwrap();
                let direct = compute_psi(x, v, w, 1.5, &QuadConfig::default()).unwrap();
                worst = worst.max((interp - direct).abs());
            }
            errs.push(worst);
        }
        assert!(errs[1] < errs[0], "errors {errs:?}");
    }

    #[test]
    fn zero_region_reproduced_by_interpolation() {
        let w = wavelet();
        let config = PsiTableConfig {
            x_max: 26.0,
            x_step: 1.0 / 64.0,
            v_lo: 0.72,
            v_hi: 0.9,
            v_points: 17,
            derivatives: vec![(0, 0)],
            quad: QuadConfig::default(),
        };
        let table = tabulate_psi(w, 1.5, &config).unwrap();
        assert_eq!(table.eval(-0.5, 0.8, 0, 0).unwrap(), 0.0);
        assert_eq!(table.eval(0.0, 0.8, 0, 0).unwrap(), 0.0);
    }

    #[test]
    fn truncated_decay_fixture_raises_boundary_flag() {
        // Negative control: a table cut off where the kernel is still large.
        let w = wavelet();
        let config = PsiTableConfig {
            x_max: 6.0,
            x_step: 1.0 / 32.0,
            v_lo: 0.72,
            v_hi: 0.9,
            v_points: 9,
            derivatives: vec![(0, 0)],
            quad: QuadConfig::default(),
        };
        let mut table = tabulate_psi(w, 1.5, &config).unwrap();
        // Force the stored sup onto the upper x boundary.
        let nv = table.nv;
        let nx = table.nx;
        for iv in 0..nv {
            table.values[0][(nx - 1) * nv + iv] = 100.0;
        }
        let report = verify_localization(&table);
        assert!(report.any_boundary);
    }

    #[test]
    fn kernel_is_lipschitz_in_v_on_the_table() {
        // |Psi(x, v1) - Psi(x, v2)| <= (measured sup |d_v Psi|) |v1 - v2|.
        let w = wavelet();
        let q = QuadConfig::default();
        let mut sup_dv = 0.0f64;
        for i in 0..=20 {
            let x = 0.5 + 24.0 * i as f64 / 20.0;
            for j in 0..=6 {
                let v = 0.72 + 0.16 * j as f64 / 6.0;
                sup_dv = sup_dv
                    .max(compute_psi_derivative(x, v, 0, 1, w, 1.5, &q).unwrap().abs());
            }
        }
        for (x, v1, v2) in [(2.0, 0.73, 0.87), (9.1, 0.75, 0.76), (17.3, 0.8, 0.88)] {
            let a = compute_psi(x, v1, w, 1.5, &q).unwrap();
            let b = compute_psi(x, v2, w, 1.5, &q).unwrap();
            assert!(
                (a - b).abs() <= sup_dv * (v1 - v2).abs() * 1.05,
                "triple ({x}, {v1}, {v2})"
            );
        }
    }
}
