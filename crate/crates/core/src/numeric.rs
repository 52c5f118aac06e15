//! Entropy helpers and the deterministic minimizers shared by every bound.
//!
//! All logarithms are base 2.

use std::cell::Cell;

use crate::{Error, Result};

/// Default absolute tolerance on objective values.
pub const DEFAULT_ABS_TOL: f64 = 1e-9;

/// Tolerances for the numerical minimizers.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ToleranceConfig {
    /// Absolute tolerance on objective values, and the slack allowed when
    /// clamping arguments into closed domains.
    pub abs_tol: f64,
    /// Points in the coarse grid scan of [`minimize_scalar`].
    pub grid_points: usize,
    /// Golden-section iterations after the grid scan, and the bracket
    /// doubling cap of the convex minimizers.
    pub max_refinements: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            abs_tol: DEFAULT_ABS_TOL,
            grid_points: 2048,
            max_refinements: 60,
        }
    }
}

impl ToleranceConfig {
    pub fn new(abs_tol: f64, grid_points: usize, max_refinements: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::Domain {
                what: "abs_tol",
                value: abs_tol,
                domain: "(0, inf)",
            });
        }
        if grid_points < 3 {
            return Err(Error::Domain {
                what: "grid_points",
                value: grid_points as f64,
                domain: "[3, inf)",
            });
        }
        if max_refinements == 0 {
            return Err(Error::Domain {
                what: "max_refinements",
                value: 0.0,
                domain: "[1, inf)",
            });
        }
        Ok(Self {
            abs_tol,
            grid_points,
            max_refinements,
        })
    }

    /// The same tolerances with a 16x coarser grid, for the outer level of a
    /// nested search whose inner level already runs a full grid.
    pub fn coarse(&self) -> Self {
        Self {
            grid_points: (self.grid_points / 16).max(33),
            ..*self
        }
    }

    /// Bracket width at which the convex line searches stop.
    fn convex_arg_tol(&self) -> f64 {
        self.abs_tol.sqrt() * 1e-2
    }
}

/// Clamps `value` into `[lo, hi]` if it lies within `tol` of the interval.
pub(crate) fn clamp_into(
    what: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
    tol: f64,
) -> Result<f64> {
    if value.is_nan() || value < lo - tol || value > hi + tol {
        return Err(Error::Domain {
            what,
            value,
            domain,
        });
    }
    Ok(value.clamp(lo, hi))
}

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    /// Inputs within [`DEFAULT_ABS_TOL`] of `[0, 1]` are clamped.
    pub fn new(value: f64) -> Result<Self> {
        Self::with_tol(value, DEFAULT_ABS_TOL)
    }

    pub fn with_tol(value: f64, tol: f64) -> Result<Self> {
        clamp_into("probability", value, 0.0, 1.0, "[0, 1]", tol).map(Self)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn entropy(self) -> f64 {
        binary_entropy(self)
    }
}

/// Binary entropy `-p log p - (1-p) log (1-p)` with `0 log 0 = 0`.
pub fn binary_entropy(p: Probability) -> f64 {
    h(p.0)
}

/// Unchecked binary entropy; callers guarantee `p` in `[0, 1]`.
#[inline]
pub(crate) fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    let q = 1.0 - p;
    -(p * p.log2() + q * q.log2())
}

/// Binary entropy of a raw value, clamping within the default tolerance.
pub fn entropy_of(p: f64) -> Result<f64> {
    Probability::new(p).map(binary_entropy)
}

/// The auxiliary function `g(x) = h((1 - sqrt(1 - x)) / 2)` of the second
/// MRRW bound.
pub fn mrrw_g(x: f64) -> Result<f64> {
    let x = clamp_into("mrrw_g argument", x, 0.0, 1.0, "[0, 1]", DEFAULT_ABS_TOL)?;
    Ok(g_unchecked(x))
}

#[inline]
pub(crate) fn g_unchecked(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    h((1.0 - (1.0 - x).sqrt()) / 2.0)
}

/// `min(a, 1/2)`.
pub fn clamp_half(a: f64) -> Result<f64> {
    if a.is_nan() || a < 0.0 {
        return Err(Error::Domain {
            what: "clamp_half argument",
            value: a,
            domain: "[0, inf)",
        });
    }
    Ok(a.min(0.5))
}

/// Location and value of a minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum2d {
    pub x: f64,
    pub z: f64,
    pub value: f64,
}

struct Tracker<F> {
    f: F,
    best: Minimum,
}

impl<F: Fn(f64) -> f64> Tracker<F> {
    fn new(f: F) -> Self {
        Self {
            f,
            best: Minimum {
                arg: f64::NAN,
                value: f64::INFINITY,
            },
        }
    }

    /// Evaluates and records; `+inf` is allowed as "very large", anything else
    /// non-finite is an error.
    fn eval(&mut self, x: f64) -> Result<f64> {
        let v = (self.f)(x);
        if v.is_nan() || v == f64::NEG_INFINITY {
            return Err(Error::NonFinite { at: x });
        }
        if v < self.best.value || self.best.arg.is_nan() {
            self.best = Minimum { arg: x, value: v };
        }
        Ok(v)
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search on `[a, b]`; every evaluation is recorded in `t`.
fn golden<F: Fn(f64) -> f64>(
    t: &mut Tracker<F>,
    mut a: f64,
    mut b: f64,
    width_tol: f64,
    max_iter: usize,
) -> Result<()> {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = t.eval(c)?;
    let mut fd = t.eval(d)?;
    for _ in 0..max_iter {
        if b - a <= width_tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = t.eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = t.eval(d)?;
        }
    }
    Ok(())
}

/// Minimizes a continuous function on `[lo, hi]`.
///
/// A uniform grid of `cfg.grid_points` is scanned first and the bracket
/// around the best grid point is refined by golden-section search, so
/// non-convex objectives are handled as long as the grid resolves their
/// basins. The returned value is the lowest objective value evaluated, which
/// always includes both endpoints.
pub fn minimize_scalar<F>(objective: F, lo: f64, hi: f64, cfg: &ToleranceConfig) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidRequest(format!(
            "minimization interval [{lo}, {hi}] is empty or unbounded"
        )));
    }
    let mut t = Tracker::new(objective);
    if lo == hi {
        t.eval(lo)?;
        return Ok(t.best);
    }
    let n = cfg.grid_points.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let at = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..n {
        let v = t.eval(at(i))?;
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    if best_v == f64::INFINITY {
        return Err(Error::NonFinite { at: lo });
    }
    let a = at(best_i.saturating_sub(1));
    let b = at((best_i + 1).min(n - 1));
    golden(&mut t, a, b, cfg.abs_tol, cfg.max_refinements)?;
    Ok(t.best)
}

/// Outcome of a convex line search.
struct LineSearch {
    min: Minimum,
    /// Doublings used; `None` when the minimizer could not be bracketed.
    bracketed: Option<usize>,
}

/// Minimizes a convex function on `[lower, inf)` (or the whole line when
/// `lower` is `None`), starting from `start`.
///
/// The bracket is grown by doubling steps until the objective stops
/// decreasing; convexity guarantees the minimizer then lies between the
/// last three points.
fn convex_line_search<F>(
    objective: F,
    start: f64,
    lower: Option<f64>,
    cfg: &ToleranceConfig,
) -> Result<LineSearch>
where
    F: Fn(f64) -> f64,
{
    let mut t = Tracker::new(objective);
    let f0 = t.eval(start)?;
    let mut step = 1.0;
    let fr = t.eval(start + step)?;
    let left_ok = lower.map_or(true, |l| start - step >= l);
    let (dir, f1) = if fr < f0 {
        (1.0, fr)
    } else if left_ok {
        let fl = t.eval(start - step)?;
        if fl < f0 {
            (-1.0, fl)
        } else {
            (0.0, f0)
        }
    } else {
        (0.0, f0)
    };

    let (a, b) = if dir == 0.0 {
        let a = match lower {
            Some(l) if start - step < l => l,
            _ => start - step,
        };
        (a, start + step)
    } else {
        let mut prev = start;
        let mut cur = start + dir * step;
        let mut f_cur = f1;
        let mut doublings = 0usize;
        loop {
            let next = match lower {
                Some(l) if dir < 0.0 && cur - 2.0 * step < l => l,
                _ => cur + dir * 2.0 * step,
            };
            if next == cur {
                // clipped onto the lower bound: minimizer is in [lower, prev]
                break (next.min(prev), next.max(prev));
            }
            let f_next = t.eval(next)?;
            if f_next >= f_cur {
                break (prev.min(next), prev.max(next));
            }
            doublings += 1;
            if doublings > cfg.max_refinements {
                return Ok(LineSearch {
                    min: t.best,
                    bracketed: None,
                });
            }
            prev = cur;
            cur = next;
            f_cur = f_next;
            step *= 2.0;
        }
    };
    golden(&mut t, a, b, cfg.convex_arg_tol() * (1.0 + a.abs().max(b.abs())), 400)?;
    Ok(LineSearch {
        min: t.best,
        bracketed: Some(0),
    })
}

/// Minimizes a jointly convex function over `x` in the reals and `z >= 0`.
///
/// The search is nested: for each `z` the partial minimum over `x` is found
/// by a bracketing convex line search, and the resulting function of `z`
/// (convex, as a partial minimum of a jointly convex function) is minimized
/// the same way on `[0, inf)`. If either level cannot bracket its minimizer
/// within `cfg.max_refinements` doublings, [`Error::Unbracketed`] reports the
/// best point found, which is where the infimum is being approached.
pub fn minimize_convex_2d<F>(objective: F, cfg: &ToleranceConfig) -> Result<Minimum2d>
where
    F: Fn(f64, f64) -> f64,
{
    let unbracketed = Cell::new(false);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let best = Cell::new(Minimum2d {
        x: f64::NAN,
        z: f64::NAN,
        value: f64::INFINITY,
    });
    let partial = |z: f64| -> f64 {
        match convex_line_search(|x| objective(x, z), 0.0, None, cfg) {
            Ok(ls) => {
                if ls.bracketed.is_none() {
                    unbracketed.set(true);
                }
                let b = best.get();
                if ls.min.value < b.value || b.x.is_nan() {
                    best.set(Minimum2d {
                        x: ls.min.arg,
                        z,
                        value: ls.min.value,
                    });
                }
                ls.min.value
            }
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    };
    let outer = convex_line_search(partial, 0.0, Some(0.0), cfg);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let outer = outer?;
    let b = best.get();
    if unbracketed.get() || outer.bracketed.is_none() {
        return Err(Error::Unbracketed {
            doublings: cfg.max_refinements,
            x: b.x,
            z: b.z,
            best: b.value,
        });
    }
    Ok(b)
}

/// Minimizes a convex function of one real variable over the whole line.
/// Shares the bracketing rules of [`minimize_convex_2d`].
pub fn minimize_convex_1d<F>(objective: F, cfg: &ToleranceConfig) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    let ls = convex_line_search(objective, 0.0, None, cfg)?;
    match ls.bracketed {
        Some(_) => Ok(ls.min),
        None => Err(Error::Unbracketed {
            doublings: cfg.max_refinements,
            x: ls.min.arg,
            z: 0.0,
            best: ls.min.value,
        }),
    }
}
