//! Compactly supported Daubechies mother wavelet with three continuous
//! derivatives, tabulated on a dyadic grid.
//!
//! Construction: values of the scaling function phi and its derivatives at
//! the integers come from the eigenvectors of the two-scale transition
//! matrix (eigenvalue 2^-p for the p-th derivative), then the refinement
//! relation fills in dyadic points exactly; the wavelet and its derivatives
//! follow from the high-pass relation one level up. Evaluation between
//! nodes is cubic Hermite, so it is C^1 and exactly zero outside the
//! support.

use crate::error::{CoreError, Result};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

pub use crate::daubechies::lowpass_filter;

/// Minimal admissible number of vanishing moments. Below this the wavelet's
/// Holder regularity drops under 3 and the third-derivative tables that the
/// kernel construction relies on degrade.
pub const MIN_ORDER: usize = 12;

/// Maximal order with a frozen filter bank.
pub const MAX_ORDER: usize = 20;

/// Requested wavelet family member and table resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaveletSpec {
    /// Number of vanishing moments N; support width is 2N-1.
    pub order: usize,
    /// Dyadic refinement depth L; the table step is 2^-L.
    pub table_level: u32,
}

impl WaveletSpec {
    pub fn new(order: usize, table_level: u32) -> Result<Self> {
        if order < MIN_ORDER {
            return Err(CoreError::InvalidParameter(format!(
                "wavelet order must be >= {MIN_ORDER}, got {order}"
            )));
        }
        if order > MAX_ORDER {
            return Err(CoreError::InvalidParameter(format!(
                "no filter bank for order {order} (max {MAX_ORDER})"
            )));
        }
        if table_level < 8 {
            return Err(CoreError::InvalidParameter(format!(
                "table_level must be >= 8, got {table_level}"
            )));
        }
        Ok(WaveletSpec { order, table_level })
    }
}

/// Residuals achieved by the build-time table checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WaveletTolerances {
    /// |Int psi dx|.
    pub integral_residual: f64,
    /// |Int psi^2 dx - 1|.
    pub norm_residual: f64,
    /// max over m < N of |Int x^m psi dx| / max(1, Int |x|^m |psi| dx).
    pub moment_residual: f64,
    /// The ceiling the build was checked against.
    pub tau_w: f64,
}

/// Declared ceiling for the build-time checks.
pub const DEFAULT_TAU_W: f64 = 1e-6;

/// Tabulated mother wavelet psi and its first three derivatives on the
/// dyadic grid over the support [0, 2N-1]. Immutable after construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WaveletTable<T: Real> {
    pub spec: WaveletSpec,
    pub x_lo: T,
    pub x_hi: T,
    pub grid_step: T,
    /// values[p][m] = psi^(p)(m * 2^-L), p = 0..=3.
    pub values: [Vec<T>; 4],
    pub tolerances: WaveletTolerances,
}

// --- small dense LU solver used by the eigenvector extraction -------------

fn lu_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (pivot_row, pivot_val) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if pivot_val < 1e-300 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        perm.swap(col, pivot_row);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in (r + 1)..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

/// Values of phi^(p) at the interior integers 1..=2N-2, normalized by
/// sum_k k^p phi^(p)(k) = (-1)^p p!.
fn phi_derivative_at_integers(h: &[f64], p: u32) -> Result<Vec<f64>> {
    let width = h.len() - 1; // 2N - 1
    let dim = width - 1; // interior integers 1..=2N-2
    let lambda = 0.5f64.powi(p as i32);
    // Transition matrix M[i][j] = sqrt(2) h_{2(i+1)-(j+1)} on interior nodes.
    let mut m = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let k = 2 * (i as i64 + 1) - (j as i64 + 1);
            if k >= 0 && (k as usize) < h.len() {
                m[i][j] = std::f64::consts::SQRT_2 * h[k as usize];
            }
        }
    }
    // Inverse iteration around the known eigenvalue.
    let mut shifted = m.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= lambda + 1e-11;
    }
    let mut v: Vec<f64> = (0..dim).map(|i| (1.0 + i as f64).cos()).collect();
    for _ in 0..60 {
        let sol = lu_solve(shifted.clone(), v.clone()).ok_or_else(|| {
            CoreError::Construction(format!("transition matrix solve failed for p = {p}"))
        })?;
        let norm = sol.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        v = sol.iter().map(|x| x / norm).collect();
    }
    // Residual check against the unshifted matrix.
    let mut resid = 0.0f64;
    for i in 0..dim {
        let mut mv = 0.0;
        for j in 0..dim {
            mv += m[i][j] * v[j];
        }
        resid = resid.max((mv - lambda * v[i]).abs());
    }
    if resid > 1e-8 {
        return Err(CoreError::Construction(format!(
            "eigenvector residual {resid:.3e} too large for derivative order {p}"
        )));
    }
    // Normalization sum_k k^p v_k = (-1)^p p!.
    let target = if p % 2 == 0 { 1.0 } else { -1.0 } * (1..=p as u64).product::<u64>().max(1) as f64;
    let s: f64 = v
        .iter()
        .enumerate()
        .map(|(i, x)| ((i + 1) as f64).powi(p as i32) * x)
        .sum();
    if s.abs() < 1e-12 {
        return Err(CoreError::Construction(format!(
            "degenerate normalization for derivative order {p}"
        )));
    }
    let c = target / s;
    Ok(v.into_iter().map(|x| c * x).collect())
}

/// Dyadic refinement of phi^(p): from values at step 2^-(l-1) to step 2^-l
/// via phi^(p)(x) = 2^p sqrt(2) sum_k h_k phi^(p)(2x - k).
fn refine(h: &[f64], prev: &[f64], width: usize, level: u32, p: u32) -> Vec<f64> {
    let n_prev = width * (1usize << (level - 1));
    debug_assert_eq!(prev.len(), n_prev + 1);
    let n = width * (1usize << level);
    let factor = 2.0f64.powi(p as i32) * std::f64::consts::SQRT_2;
    let mut out = vec![0.0; n + 1];
    for (m, slot) in out.iter_mut().enumerate() {
        if m % 2 == 0 {
            *slot = prev[m / 2];
        } else {
            // 2x - k at x = m 2^-l lands on the previous grid at m - k 2^{l-1}.
            let mut acc = 0.0;
            for (k, &hk) in h.iter().enumerate() {
                let idx = m as i64 - (k as i64) * (1i64 << (level - 1));
                if idx >= 0 && (idx as usize) <= n_prev {
                    acc += hk * prev[idx as usize];
                }
            }
            *slot = factor * acc;
        }
    }
    out
}

/// Composite Simpson integral of nodal values with uniform step.
fn simpson(values: &[f64], step: f64) -> f64 {
    let n = values.len() - 1;
    assert!(n >= 2 && n % 2 == 0);
    let mut s = values[0] + values[n];
    for (i, &v) in values.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * step / 3.0
}

/// Builds the wavelet table for `spec`, running the moment and norm checks.
pub fn build_wavelet_table<T: Real>(spec: WaveletSpec) -> Result<WaveletTable<T>> {
    let n_moments = spec.order;
    let h = lowpass_filter(spec.order).ok_or_else(|| {
        CoreError::InvalidParameter(format!("no filter bank for order {}", spec.order))
    })?;
    let width = 2 * spec.order - 1;
    let level = spec.table_level;

    // g_k = (-1)^k h_{2N-1-k}: wavelet supported on [0, 2N-1] like phi.
    let g: Vec<f64> = (0..h.len())
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * h[h.len() - 1 - k]
        })
        .collect();

    let mut psi_tables: Vec<Vec<f64>> = Vec::with_capacity(4);
    for p in 0..4u32 {
        // phi^(p) to level L-1, then psi^(p) at level L.
        let interior = phi_derivative_at_integers(h, p)?;
        let mut phi = vec![0.0; width + 1];
        phi[1..width].copy_from_slice(&interior);
        for l in 1..level {
            phi = refine(h, &phi, width, l, p);
        }
        let n_prev = width * (1usize << (level - 1));
        let n = width * (1usize << level);
        let factor = 2.0f64.powi(p as i32) * std::f64::consts::SQRT_2;
        let mut psi = vec![0.0; n + 1];
        for (m, slot) in psi.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &gk) in g.iter().enumerate() {
                let idx = m as i64 - (k as i64) * (1i64 << (level - 1));
                if idx >= 0 && (idx as usize) <= n_prev {
                    acc += gk * phi[idx as usize];
                }
            }
            *slot = factor * acc;
        }
        psi[0] = 0.0;
        psi[n] = 0.0;
        psi_tables.push(psi);
    }

    // Build-time checks on the p = 0 table.
    let step = 0.5f64.powi(level as i32);
    let psi0 = &psi_tables[0];
    let integral_residual = simpson(psi0, step).abs();
    let sq: Vec<f64> = psi0.iter().map(|v| v * v).collect();
    let norm_residual = (simpson(&sq, step) - 1.0).abs();
    if integral_residual > 1e-8 {
        return Err(CoreError::Construction(format!(
            "zeroth moment residual {integral_residual:.3e} exceeds 1e-8"
        )));
    }
    if norm_residual > DEFAULT_TAU_W {
        return Err(CoreError::Construction(format!(
            "unit-norm residual {norm_residual:.3e} exceeds {DEFAULT_TAU_W:.1e}"
        )));
    }
    let mut moment_residual = 0.0f64;
    for m in 0..n_moments {
        let xm: Vec<f64> = psi0
            .iter()
            .enumerate()
            .map(|(i, v)| (i as f64 * step).powi(m as i32) * v)
            .collect();
        let absxm: Vec<f64> = xm.iter().map(|v| v.abs()).collect();
        let scale = simpson(&absxm, step).max(1.0);
        let resid = simpson(&xm, step).abs() / scale;
        if resid > DEFAULT_TAU_W {
            return Err(CoreError::Construction(format!(
                "vanishing-moment check failed at m = {m}: scaled residual {resid:.3e}"
            )));
        }
        moment_residual = moment_residual.max(resid);
    }

    let values: [Vec<T>; 4] = [
        psi_tables[0].iter().map(|&v| T::of(v)).collect(),
        psi_tables[1].iter().map(|&v| T::of(v)).collect(),
        psi_tables[2].iter().map(|&v| T::of(v)).collect(),
        psi_tables[3].iter().map(|&v| T::of(v)).collect(),
    ];

    Ok(WaveletTable {
        spec,
        x_lo: T::zero(),
        x_hi: T::of_usize(width),
        grid_step: T::of(step),
        values,
        tolerances: WaveletTolerances {
            integral_residual,
            norm_residual,
            moment_residual,
            tau_w: DEFAULT_TAU_W,
        },
    })
}

impl<T: Real> WaveletTable<T> {
    /// Support width 2N - 1.
    pub fn support_width(&self) -> T {
        self.x_hi - self.x_lo
    }

    /// L^alpha norm of psi by Simpson quadrature on the table.
    pub fn lalpha_norm(&self, alpha: T) -> T {
        let vals: Vec<f64> = self.values[0]
            .iter()
            .map(|v| v.abs().powf(alpha).as_f64())
            .collect();
        T::of(simpson(&vals, self.grid_step.as_f64()).powf(1.0 / alpha.as_f64()))
    }

    /// psi^(p)(x) by cubic Hermite interpolation of the dyadic table; exact
    /// table values at the nodes and exact 0 outside the support.
    pub fn eval(&self, x: T, p: usize) -> T {
        assert!(p <= 3, "derivative order must be 0..=3");
        if x <= self.x_lo || x >= self.x_hi {
            return T::zero();
        }
        let table = &self.values[p];
        let pos = (x - self.x_lo) / self.grid_step;
        let i = pos.floor().as_f64() as usize;
        let i = i.min(table.len() - 2);
        let t = pos - T::of_usize(i);
        if t == T::zero() {
            return table[i];
        }
        let y0 = table[i];
        let y1 = table[i + 1];
        // Slopes in grid units: exact derivative table when available,
        // central differences of the third-derivative table otherwise.
        let (d0, d1) = if p < 3 {
            let d = &self.values[p + 1];
            (d[i] * self.grid_step, d[i + 1] * self.grid_step)
        } else {
            let slope_at = |j: usize| -> T {
                if j == 0 {
                    table[1] - table[0]
                } else if j + 1 == table.len() {
                    table[j] - table[j - 1]
                } else {
                    (table[j + 1] - table[j - 1]) * T::half()
                }
            };
            (slope_at(i), slope_at(i + 1))
        };
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = T::two() * t3 - T::of(3.0) * t2 + T::one();
        let h10 = t3 - T::two() * t2 + t;
        let h01 = -T::two() * t3 + T::of(3.0) * t2;
        let h11 = t3 - t2;
        h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1
    }
}
