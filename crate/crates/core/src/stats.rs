//! Order statistics, resampling calibration and slope fits shared by the
//! verification modules and the test oracles.
//!
//! Heavy-tail policy: every statistic here is quantile-based; nothing takes a
//! sample mean of an alpha-stable quantity.

use crate::error::{CoreError, Result};
use crate::rng::RandomStream;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// Type-7 (linear interpolation) quantile of already sorted data.
pub fn quantile_sorted<T: Real>(sorted: &[T], p: f64) -> T {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    assert!((0.0..=1.0).contains(&p));
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = p * (n - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let w = T::of(h - lo as f64);
    sorted[lo] + w * (sorted[hi] - sorted[lo])
}

/// Sorts a copy and takes the requested quantile.
pub fn quantile<T: Real>(sample: &[T], p: f64) -> T {
    let mut v = sample.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("non-NaN sample"));
    quantile_sorted(&v, p)
}

/// Interquartile range.
pub fn iqr<T: Real>(sample: &[T]) -> T {
    let mut v = sample.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("non-NaN sample"));
    quantile_sorted(&v, 0.75) - quantile_sorted(&v, 0.25)
}

/// Probability grid used by the two-sample distance: 0.05, 0.10, ..., 0.95.
pub fn default_prob_grid() -> Vec<f64> {
    (1..20).map(|i| i as f64 * 0.05).collect()
}

/// Max absolute difference of quantiles over a probability grid.
pub fn two_sample_quantile_distance<T: Real>(a: &[T], b: &[T], ps: &[f64]) -> T {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).expect("non-NaN sample"));
    sb.sort_by(|x, y| x.partial_cmp(y).expect("non-NaN sample"));
    let mut d = T::zero();
    for &p in ps {
        let q = (quantile_sorted(&sa, p) - quantile_sorted(&sb, p)).abs();
        if q > d {
            d = q;
        }
    }
    d
}

/// Null threshold for the two-sample quantile distance, by pooled resampling.
///
/// Blocks keep dependent values together: each resample draws whole blocks
/// with replacement from the pooled block list and splits them into two
/// pseudo-samples matching the original block counts in size. Returns the
/// `level` quantile of the resampled distance distribution.
pub fn bootstrap_distance_threshold<T: Real>(
    blocks_a: &[Vec<T>],
    blocks_b: &[Vec<T>],
    ps: &[f64],
    replicates: usize,
    level: f64,
    stream: &RandomStream,
) -> T {
    let pooled: Vec<&Vec<T>> = blocks_a.iter().chain(blocks_b.iter()).collect();
    let nblocks = pooled.len();
    let mut draws = stream.open();
    let mut dist = Vec::with_capacity(replicates);
    for _ in 0..replicates {
        let mut ra: Vec<T> = Vec::new();
        let mut rb: Vec<T> = Vec::new();
        for _ in 0..blocks_a.len() {
            let i = (draws.next_u64() % nblocks as u64) as usize;
            ra.extend_from_slice(pooled[i]);
        }
        for _ in 0..blocks_b.len() {
            let i = (draws.next_u64() % nblocks as u64) as usize;
            rb.extend_from_slice(pooled[i]);
        }
        dist.push(two_sample_quantile_distance(&ra, &rb, ps));
    }
    quantile(&dist, level)
}

/// Ordinary least squares line fit.
pub fn ols_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = if denom.abs() < 1e-300 {
        0.0
    } else {
        (n * sxy - sx * sy) / denom
    };
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

/// Slope with a jackknife confidence band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeBand {
    pub slope: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Leave-one-out jackknife band for the OLS slope, widened to at least
/// `half_width_floor` on each side.
pub fn jackknife_slope(xs: &[f64], ys: &[f64], half_width_floor: f64) -> Result<SlopeBand> {
    let n = xs.len();
    if n < 3 {
        return Err(CoreError::Contract(format!(
            "slope band needs at least 3 points, got {n}"
        )));
    }
    let (slope, _) = ols_line(xs, ys);
    let mut loo = Vec::with_capacity(n);
    for skip in 0..n {
        let xi: Vec<f64> = (0..n).filter(|&i| i != skip).map(|i| xs[i]).collect();
        let yi: Vec<f64> = (0..n).filter(|&i| i != skip).map(|i| ys[i]).collect();
        loo.push(ols_line(&xi, &yi).0);
    }
    let mean: f64 = loo.iter().sum::<f64>() / n as f64;
    let var: f64 =
        loo.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() * (n as f64 - 1.0) / n as f64;
    let half = (2.0 * var.sqrt()).max(half_width_floor);
    Ok(SlopeBand {
        slope,
        lo: slope - half,
        hi: slope + half,
    })
}

// ---------------------------------------------------------------------------
// Standard SaS law by numerical characteristic-function inversion.
// ---------------------------------------------------------------------------

/// Nodes/weights of 8-point Gauss-Legendre on [-1, 1].
pub const GL8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
pub const GL8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_29,
    0.362_683_783_378_361_98,
    0.362_683_783_378_361_98,
    0.313_706_645_877_887_29,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// CDF of the standard SaS(alpha) law (unit scale, characteristic function
/// exp(-|t|^alpha)): F(x) = 1/2 + (1/pi) Int_0^inf sin(xt) exp(-t^alpha)/t dt.
pub fn sas_std_cdf(alpha: f64, x: f64) -> f64 {
    assert!(alpha > 1.0 && alpha < 2.0);
    if x == 0.0 {
        return 0.5;
    }
    // exp(-T^alpha) below 1e-18 truncates the integral.
    let t_max = 41.5f64.powf(1.0 / alpha);
    // Panel width resolves the sin(xt) oscillation.
    let width = (0.5f64).min(std::f64::consts::PI / (4.0 * x.abs() + 1.0));
    let n_panels = (t_max / width).ceil() as usize;
    let h = t_max / n_panels as f64;
    let mut integral = 0.0;
    for p in 0..n_panels {
        let mid = (p as f64 + 0.5) * h;
        for (node, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
            let t = mid + 0.5 * h * node;
            integral += w * 0.5 * h * (x * t).sin() * (-t.powf(alpha)).exp() / t;
        }
    }
    0.5 + integral / std::f64::consts::PI
}

/// Quantile of the standard SaS(alpha) law by bisection on [`sas_std_cdf`].
pub fn sas_std_quantile(alpha: f64, p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0);
    if (p - 0.5).abs() < 1e-15 {
        return 0.0;
    }
    let mut lo = -1.0;
    let mut hi = 1.0;
    while sas_std_cdf(alpha, lo) > p {
        lo *= 2.0;
    }
    while sas_std_cdf(alpha, hi) < p {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sas_std_cdf(alpha, mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * (1.0 + hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Scale estimate for an SaS(alpha) sample from its interquartile range.
pub fn sas_scale_from_iqr<T: Real>(sample: &[T], alpha: f64) -> f64 {
    let q75 = sas_std_quantile(alpha, 0.75);
    iqr(sample).as_f64() / (2.0 * q75)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_of_line() {
        let v: Vec<f64> = (0..=100).map(|i| i as f64).collect();
        assert!((quantile(&v, 0.5) - 50.0).abs() < 1e-12);
        assert!((quantile(&v, 0.25) - 25.0).abs() < 1e-12);
        assert!((iqr(&v) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn cauchy_limit_sanity() {
        // As alpha -> 1+ the SaS law approaches Cauchy with q75 = 1.
        let q = sas_std_quantile(1.02, 0.75);
        assert!((q - 1.0).abs() < 0.08, "q75 = {q}");
    }

    #[test]
    fn gaussian_limit_sanity() {
        // As alpha -> 2- the law approaches N(0, 2): q75 = sqrt(2)*0.6745.
        let q = sas_std_quantile(1.98, 0.75);
        let target = std::f64::consts::SQRT_2 * 0.674_489_75;
        assert!((q - target).abs() < 0.05, "q75 = {q}, target = {target}");
    }

    #[test]
    fn cdf_is_symmetric_and_monotone() {
        for &alpha in &[1.3, 1.5, 1.8] {
            let mut prev = 0.0;
            for i in 0..40 {
                let x = -4.0 + 0.2 * i as f64;
                let f = sas_std_cdf(alpha, x);
                assert!(f >= prev - 1e-12, "monotonicity at {x}");
                let sym = sas_std_cdf(alpha, -x);
                assert!((f + sym - 1.0).abs() < 1e-10, "symmetry at {x}");
                prev = f;
            }
        }
    }

    #[test]
    fn slope_of_exact_line() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.0 * x).collect();
        let band = jackknife_slope(&xs, &ys, 0.0).unwrap();
        assert!((band.slope + 2.0).abs() < 1e-12);
        assert!(band.hi - band.lo < 1e-9);
    }

    #[test]
    fn slope_needs_three_points() {
        assert!(jackknife_slope(&[0.0, 1.0], &[0.0, 1.0], 0.0).is_err());
    }
}
