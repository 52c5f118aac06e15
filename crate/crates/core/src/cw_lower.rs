//! Gilbert–Varshamov lower bound over constant-weight words.
//!
//! A code of constant weight `wn` and minimum distance `delta n` has
//! VC-dimension at most `(w - delta/2) n + 1`, so choosing `w = d + delta/2`
//! turns the constant-weight GV bound into a lower bound on `C(d, delta)`.

use crate::numeric::{clamp_into, h, ToleranceConfig};
use crate::upper::{half_unit, BoundQuery, Method, RateValue};
use crate::Result;

/// Normalized weight `w` and distance `delta` of a constant-weight GV query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedGVQuery {
    pub w: f64,
    pub delta: f64,
}

impl WeightedGVQuery {
    pub fn new(w: f64, delta: f64) -> Result<Self> {
        let tol = crate::numeric::DEFAULT_ABS_TOL;
        Ok(Self {
            w: clamp_into("w", w, 0.0, 1.0, "[0, 1]", tol)?,
            delta: half_unit("delta", delta, tol)?,
        })
    }
}

/// Exponent of the GV ball around a weight-`wn` word intersected with the
/// weight-`wn` sphere: `w h(x/w) + (1-w) h(x/(1-w))`.
fn sphere_ball_exponent(w: f64, x: f64) -> f64 {
    let left = if w > 0.0 { w * h((x / w).min(1.0)) } else { 0.0 };
    let right = if w < 1.0 {
        (1.0 - w) * h((x / (1.0 - w)).min(1.0))
    } else {
        0.0
    };
    left + right
}

/// Asymptotic exponent of
/// `C(n, wn) / sum_{i < delta n / 2} C(wn, i) C(n - wn, i)`:
/// `h(w) - max_{0 <= x <= min(delta/2, w)} [w h(x/w) + (1-w) h(x/(1-w))]`.
///
/// The bracket is concave in `x` with its peak at `x = w(1-w)`, so the
/// maximum sits at `min(w(1-w), delta/2)`. Weights above 1/2 are reflected
/// to `1 - w`.
pub fn cw_gv_exponent(q: WeightedGVQuery) -> f64 {
    let w = if q.w > 0.5 { 1.0 - q.w } else { q.w };
    let x = (w * (1.0 - w)).min(q.delta / 2.0).min(w);
    (h(w) - sphere_ball_exponent(w, x)).max(0.0)
}

/// Constant-weight lower bound with `w = d + delta/2`; for `w >= 1/2` it is
/// `1 - h(delta)`.
pub fn cwc_rate(q: &BoundQuery, cfg: &ToleranceConfig) -> Result<RateValue> {
    let BoundQuery { d, delta } = BoundQuery::with_tol(q.d, q.delta, cfg.abs_tol)?;
    let w = d + delta / 2.0;
    let rate = if w < 0.5 {
        cw_gv_exponent(WeightedGVQuery { w, delta })
    } else {
        1.0 - h(delta)
    };
    Ok(RateValue::new(Method::Cwc, rate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::counting::{binomial, log2_big};
    use num_bigint::BigUint;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn exponent(w: f64, delta: f64) -> f64 {
        cw_gv_exponent(WeightedGVQuery::new(w, delta).unwrap())
    }

    /// `(1/n) log2` of the exact right side of the constant-weight GV
    /// inequality for weight `k` and distance `dist` at length `n`.
    fn finite_exponent(n: u64, k: u64, dist: u64) -> f64 {
        let top = binomial(n, k);
        let mut ball = BigUint::from(0u32);
        // sum_{i=0}^{dist/2 - 1}
        for i in 0..(dist / 2) {
            ball += binomial(k, i) * binomial(n - k, i);
        }
        (log2_big(&top) - log2_big(&ball)) / n as f64
    }

    #[test]
    fn zero_distance_is_sphere_entropy() {
        assert!((exponent(0.3, 0.0) - h(0.3)).abs() < 1e-15);
        assert!((h(0.3) - 0.88129).abs() < 1e-5);
    }

    #[test]
    fn half_weight_is_gv() {
        for delta in [0.0, 0.05, 0.1, 0.25, 0.4, 0.5] {
            let v = exponent(0.5, delta);
            assert!((v - (1.0 - h(delta))).abs() < 1e-9, "delta={delta}: {v}");
        }
    }

    #[test]
    fn reflection() {
        assert!((exponent(0.7, 0.2) - exponent(0.3, 0.2)).abs() < 1e-15);
    }

    #[test]
    fn point_against_dense_grid() {
        let (w, delta) = (0.375, 0.25);
        let dense = (0..=1_000_000)
            .map(|i| sphere_ball_exponent(w, delta / 2.0 * i as f64 / 1e6))
            .fold(f64::NEG_INFINITY, f64::max);
        let v = exponent(w, delta);
        assert!(v <= h(w) - dense);
        assert!((v - (h(w) - dense)).abs() < 1e-9);
    }

    #[test]
    fn peak_inside_the_range_gives_zero() {
        // x = w(1-w) <= delta/2 recovers the whole sphere
        for w in [0.1, 0.2, 0.26, 0.4, 0.5] {
            assert!(exponent(w, 0.5) < 1e-15, "w={w}");
        }
        assert!(exponent(0.1, 0.18) < 1e-15);
    }

    #[test]
    fn cwc_branches() {
        let q = |d, delta| BoundQuery::new(d, delta).unwrap();
        let v = cwc_rate(&q(0.25, 0.0), &cfg()).unwrap().rate;
        assert!((v - h(0.25)).abs() < 1e-12);
        let v = cwc_rate(&q(0.4, 0.3), &cfg()).unwrap().rate;
        assert!((v - (1.0 - h(0.3))).abs() < 1e-15);
        assert!((v - 0.11871).abs() < 1e-5);
        let v = cwc_rate(&q(0.0, 0.2), &cfg()).unwrap().rate;
        assert!((v - exponent(0.1, 0.2)).abs() < 1e-15);
    }

    #[test]
    fn matches_finite_length_counting() {
        // d = 0, delta = 0.2 at n = 10^4: weight 1000, distance 2000
        let v = exponent(0.1, 0.2);
        let f = finite_exponent(10_000, 1000, 2000);
        assert!((v - f).abs() < 1e-2, "{v} vs {f}");
    }

    #[test]
    fn finite_consistency_n1000() {
        let n = 1000u64;
        for (wk, dk) in [(100, 50), (200, 100), (250, 250), (300, 200), (375, 250), (450, 400)] {
            let v = exponent(wk as f64 / n as f64, dk as f64 / n as f64);
            let f = finite_exponent(n, wk, dk);
            assert!((v - f).abs() < 0.02, "w={wk} dist={dk}: {v} vs {f}");
        }
    }

    #[test]
    fn nonincreasing_in_delta() {
        for w in [0.05, 0.2, 0.35, 0.5] {
            let mut prev = f64::INFINITY;
            for i in 0..=50 {
                let v = exponent(w, 0.5 * i as f64 / 50.0);
                assert!(v <= prev + 1e-9);
                prev = v;
            }
        }
    }
}
