//! Bound curves: grids of `(grid_value, method, rate)` rows and their CSV
//! and JSON encodings.
//!
//! CSV files have the header `grid_value,method,rate`, LF line endings, and
//! numbers rounded to 12 significant digits, so repeated runs are
//! byte-identical.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numeric::ToleranceConfig;
use crate::upper::{BoundQuery, Method};
use crate::{Error, Result};

/// Rounds to 12 significant digits (and maps `-0` to `0`).
pub fn quantize(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn format_value(x: f64) -> String {
    format!("{}", quantize(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub grid_value: f64,
    pub method: Method,
    pub rate: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundCurve {
    rows: Vec<CurveRow>,
}

impl BoundCurve {
    /// Values are quantized on insertion, so the in-memory curve is exactly
    /// what its CSV encoding reads back as.
    pub fn push(&mut self, grid_value: f64, method: Method, rate: f64) {
        self.rows.push(CurveRow {
            grid_value: quantize(grid_value),
            method,
            rate: quantize(rate),
        });
    }

    pub fn rows(&self) -> &[CurveRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Sorts by `(method, grid_value)`.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.method
                .cmp(&b.method)
                .then(a.grid_value.total_cmp(&b.grid_value))
        });
    }

    pub fn rate(&self, method: Method, grid_value: f64) -> Option<f64> {
        let g = quantize(grid_value);
        self.rows
            .iter()
            .find(|r| r.method == method && r.grid_value == g)
            .map(|r| r.rate)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(["grid_value", "method", "rate"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                format_value(r.grid_value),
                r.method.name().to_string(),
                format_value(r.rate),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::InvalidRequest(format!("csv header: {e}")))?;
        if headers != vec!["grid_value", "method", "rate"] {
            return Err(Error::InvalidRequest(format!("unexpected csv header {headers:?}")));
        }
        let mut curve = Self::default();
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::InvalidRequest(format!("csv record: {e}")))?;
            let num = |i: usize| -> Result<f64> {
                rec[i]
                    .parse()
                    .map_err(|e| Error::InvalidRequest(format!("`{}`: {e}", &rec[i])))
            };
            curve.push(num(0)?, rec[1].parse()?, num(2)?);
        }
        Ok(curve)
    }

    /// Pairs `(lower, upper)` of rows at a common grid value where a lower
    /// bound exceeds an upper bound by more than `tol`.
    pub fn order_violations(&self, tol: f64) -> Vec<(CurveRow, CurveRow)> {
        let mut out = Vec::new();
        for lo in self.rows.iter().filter(|r| r.method.is_lower()) {
            for up in self.rows.iter().filter(|r| r.method.is_upper()) {
                if lo.grid_value == up.grid_value && lo.rate > up.rate + tol {
                    out.push((*lo, *up));
                }
            }
        }
        out
    }
}

/// Which coordinate of `(d, delta)` a sweep holds fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    D,
    Delta,
}

/// `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidRequest("grid bounds must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::InvalidRequest(format!("grid step {step} must be positive")));
        }
        if start > stop {
            return Err(Error::InvalidRequest(format!("grid start {start} exceeds stop {stop}")));
        }
        Ok(Self { start, stop, step })
    }

    /// `start + i step` for every `i` up to `stop` (inclusive, with slack
    /// for rounding), quantized.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| quantize(self.start + self.step * i as f64))
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidRequest(format!("grid `{s}` is not start:stop:step")));
        }
        let num = |p: &str| -> Result<f64> {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidRequest(format!("grid component `{p}` is not a number")))
        };
        Self::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::InvalidRequest(format!("unknown format `{s}`"))),
        }
    }
}

/// A curve sweep: one coordinate fixed, the other walked over a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRequest {
    pub fixed_axis: Axis,
    pub fixed_value: f64,
    pub grid: Grid,
    pub methods: Vec<Method>,
}

impl SweepRequest {
    pub fn new(fixed_axis: Axis, fixed_value: f64, grid: Grid, methods: Vec<Method>) -> Result<Self> {
        if methods.is_empty() {
            return Err(Error::InvalidRequest("no methods requested".into()));
        }
        if !(0.0..=0.5).contains(&fixed_value) {
            return Err(Error::Domain {
                what: "fixed value",
                value: fixed_value,
                domain: "[0, 1/2]",
            });
        }
        let mut methods = methods;
        methods.sort();
        methods.dedup();
        Ok(Self {
            fixed_axis,
            fixed_value,
            grid,
            methods,
        })
    }

    fn query(&self, g: f64) -> Result<BoundQuery> {
        match self.fixed_axis {
            Axis::D => BoundQuery::new(self.fixed_value, g),
            Axis::Delta => BoundQuery::new(g, self.fixed_value),
        }
    }
}

/// Result of a sweep; `omitted` counts `(point, method)` pairs skipped
/// because the point lies outside the domain of the bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub curve: BoundCurve,
    pub omitted: usize,
}

pub fn sweep(req: &SweepRequest, cfg: &ToleranceConfig) -> Result<SweepResult> {
    let mut curve = BoundCurve::default();
    let mut omitted = 0;
    for g in req.grid.points() {
        let q = match req.query(g) {
            Ok(q) => q,
            Err(Error::Domain { .. }) => {
                omitted += req.methods.len();
                continue;
            }
            Err(e) => return Err(e),
        };
        for &m in &req.methods {
            curve.push(g, m, m.evaluate(&q, cfg)?.rate);
        }
    }
    curve.sort();
    Ok(SweepResult { curve, omitted })
}

/// Evaluates `methods` at one point; rows carry `delta` as the grid value.
pub fn evaluate_point(q: &BoundQuery, methods: &[Method], cfg: &ToleranceConfig) -> Result<BoundCurve> {
    if methods.is_empty() {
        return Err(Error::InvalidRequest("no methods requested".into()));
    }
    let mut curve = BoundCurve::default();
    for &m in methods {
        curve.push(q.delta, m, m.evaluate(q, cfg)?.rate);
    }
    curve.sort();
    Ok(curve)
}

#[derive(Serialize)]
struct JsonDocument<'a, R: Serialize> {
    meta: JsonMeta<'a, R>,
    rows: &'a [CurveRow],
}

#[derive(Serialize)]
struct JsonMeta<'a, R: Serialize> {
    request: &'a R,
    tolerance: &'a ToleranceConfig,
}

/// JSON with a `meta` object (request and tolerances) and the rows.
pub fn to_json<R: Serialize>(request: &R, cfg: &ToleranceConfig, curve: &BoundCurve) -> String {
    let doc = JsonDocument {
        meta: JsonMeta {
            request,
            tolerance: cfg,
        },
        rows: curve.rows(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}
