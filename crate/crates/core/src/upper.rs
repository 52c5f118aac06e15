//! Asymptotic upper bounds on the best rate `C(d, delta)` of binary codes
//! with VC-dimension at most `dn` and minimum distance at least `delta n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numeric::{clamp_into, g_unchecked, h, minimize_scalar, ToleranceConfig};
use crate::{Error, Result};

/// A normalized `(d, delta)` pair, both in `[0, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub d: f64,
    pub delta: f64,
}

impl BoundQuery {
    pub fn new(d: f64, delta: f64) -> Result<Self> {
        Self::with_tol(d, delta, crate::numeric::DEFAULT_ABS_TOL)
    }

    pub fn with_tol(d: f64, delta: f64, tol: f64) -> Result<Self> {
        Ok(Self {
            d: half_unit("d", d, tol)?,
            delta: half_unit("delta", delta, tol)?,
        })
    }
}

pub(crate) fn half_unit(what: &'static str, v: f64, tol: f64) -> Result<f64> {
    clamp_into(what, v, 0.0, 0.5, "[0, 1/2]", tol)
}

/// Which bound produced a rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mrrw,
    Sauer,
    Haussler,
    Shortening,
    Cwc,
    Markov,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Mrrw,
        Method::Sauer,
        Method::Haussler,
        Method::Shortening,
        Method::Cwc,
        Method::Markov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Mrrw => "mrrw",
            Method::Sauer => "sauer",
            Method::Haussler => "haussler",
            Method::Shortening => "shortening",
            Method::Cwc => "cwc",
            Method::Markov => "markov",
        }
    }

    pub fn is_upper(self) -> bool {
        !self.is_lower()
    }

    pub fn is_lower(self) -> bool {
        matches!(self, Method::Cwc | Method::Markov)
    }

    /// Evaluates this bound at `q`.
    pub fn evaluate(self, q: &BoundQuery, cfg: &ToleranceConfig) -> Result<RateValue> {
        match self {
            Method::Mrrw => r_lp(q.delta, cfg),
            Method::Sauer => sauer_shelah_rate(q.d),
            Method::Haussler => haussler_rate(q),
            Method::Shortening => shortening_rate(q, cfg),
            Method::Cwc => crate::cw_lower::cwc_rate(q, cfg),
            Method::Markov => crate::markov::r_ma(q, cfg),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::InvalidRequest(format!("unknown method `{s}`")))
    }
}

/// A rate in `[0, 1]` tagged with the bound that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateValue {
    pub rate: f64,
    pub method: Method,
}

impl RateValue {
    /// Clamps rounding noise into `[0, 1]`.
    pub(crate) fn new(method: Method, rate: f64) -> Self {
        Self {
            rate: rate.clamp(0.0, 1.0),
            method,
        }
    }
}

fn mrrw_objective(delta: f64, u: f64) -> f64 {
    let u2 = u * u;
    1.0 + g_unchecked(u2) - g_unchecked(u2 + 2.0 * delta * u + 2.0 * delta)
}

fn r_lp_raw(delta: f64, cfg: &ToleranceConfig) -> Result<f64> {
    if delta <= 0.0 {
        return Ok(1.0);
    }
    let hi = (1.0 - 2.0 * delta).max(0.0);
    Ok(minimize_scalar(|u| mrrw_objective(delta, u), 0.0, hi, cfg)?.value)
}

/// Second MRRW (linear programming) bound
/// `min_{0 <= u <= 1-2 delta} 1 + g(u^2) - g(u^2 + 2 delta u + 2 delta)`.
pub fn r_lp(delta: f64, cfg: &ToleranceConfig) -> Result<RateValue> {
    let delta = half_unit("delta", delta, cfg.abs_tol)?;
    Ok(RateValue::new(Method::Mrrw, r_lp_raw(delta, cfg)?))
}

/// Sauer–Shelah cap `h(d)`.
pub fn sauer_shelah_rate(d: f64) -> Result<RateValue> {
    let d = half_unit("d", d, crate::numeric::DEFAULT_ABS_TOL)?;
    Ok(RateValue::new(Method::Sauer, h(d)))
}

/// Haussler packing bound `2d/(delta+2d) * h(<(delta+2d)/2>)`, with `0/0 = 0`.
pub fn haussler_rate(q: &BoundQuery) -> Result<RateValue> {
    let BoundQuery { d, delta } = BoundQuery::new(q.d, q.delta)?;
    let total = delta + 2.0 * d;
    if d == 0.0 || total == 0.0 {
        return Ok(RateValue::new(Method::Haussler, 0.0));
    }
    Ok(RateValue::new(
        Method::Haussler,
        (2.0 * d / total) * h((total / 2.0).min(0.5)),
    ))
}

/// `s h(<d/s>)`, extended by its limit 0 at `s = 0`.
fn projected_rate(d: f64, s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        s * h((d / s).min(0.5))
    }
}

/// Shortening bound: minimum over `s` in `[0, 1-2 delta]` of
/// `s h(<d/s>) + (1-s) R_LP(delta/(1-s))`.
///
/// The outer search over `s` runs on [`ToleranceConfig::coarse`]; each
/// evaluation solves an inner MRRW minimization on the full grid. Both
/// endpoints are always evaluated, so the result never exceeds `R_LP(delta)`
/// (at `s = 0`) or `(1-2 delta) h(<d/(1-2 delta)>)` (at the other end).
pub fn shortening_rate(q: &BoundQuery, cfg: &ToleranceConfig) -> Result<RateValue> {
    let BoundQuery { d, delta } = BoundQuery::with_tol(q.d, q.delta, cfg.abs_tol)?;
    let s_max = (1.0 - 2.0 * delta).max(0.0);
    let objective = |s: f64| {
        let tail = 1.0 - s;
        let shortened = if tail <= 0.0 {
            0.0
        } else {
            (delta / tail).min(0.5)
        };
        // r_lp_raw only fails on non-finite objectives, which the MRRW
        // objective never produces on its domain
        let lp = r_lp_raw(shortened, cfg).unwrap_or(f64::NAN);
        projected_rate(d, s) + tail * lp
    };
    let m = minimize_scalar(objective, 0.0, s_max, &cfg.coarse())?;
    Ok(RateValue::new(Method::Shortening, m.value))
}
