//! Markov-type lower bound.
//!
//! Words with few switches are the label sequences of cycles on a two-state
//! graph `G` whose edges into state `a` carry label 1 and edges into state `b`
//! carry label 0; the edge function `f` marks the two cross edges, so the
//! empirical average of `f` along a cycle counts switches. A GV argument over
//! the pairs of such cycles (the product graph `G x G`) gives
//!
//! ```text
//! R_MA(d, delta) = sup_{p in [0,d]} { 2 h(p) - inf_{x, z >= 0} [2px + delta z + log lambda(x, z)] }
//! ```
//!
//! where `lambda` is the spectral radius of the weighted adjacency matrix of
//! `G x G`. Both spectral radii are available in closed form and, as an
//! independent check, by power iteration.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::numeric::{
    clamp_into, h, minimize_convex_1d, minimize_convex_2d, minimize_scalar, ToleranceConfig,
};
use crate::upper::{BoundQuery, Method, RateValue};
use crate::{Error, Result};

pub const VERTEX_A: usize = 0;
pub const VERTEX_B: usize = 1;

/// Edge of a labeled graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: u8,
    pub f: u8,
}

/// A finite directed graph with binary edge labels and a 0/1 edge function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<&'static str>,
    pub edges: Vec<Edge>,
}

/// Edge of the product graph: the pair `<edges[left], edges[right]>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductEdge {
    pub source: usize,
    pub target: usize,
    pub left: usize,
    pub right: usize,
    pub f1: u8,
    pub f2: u8,
    /// 1 when the two labels differ.
    pub delta: u8,
}

/// The square `G x G` of a [`GraphSpec`]. Vertex `<u, u'>` has index
/// `u * |V| + u'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraphSpec {
    pub base: GraphSpec,
    pub edges: Vec<ProductEdge>,
}

/// Common view of [`GraphSpec`] and [`ProductGraphSpec`] used by the matrix,
/// stationarity and entropy code.
pub trait EdgeGraph {
    fn num_vertices(&self) -> usize;
    fn num_edges(&self) -> usize;
    fn endpoints(&self, edge: usize) -> (usize, usize);
    /// Coefficients `(c_x, c_z)` of the edge weight `2^-(x c_x + z c_z)`.
    fn weight_exponents(&self, edge: usize) -> (f64, f64);
}

impl GraphSpec {
    /// The two-state switch graph: `(a,a)` and `(b,a)` labeled 1, `(a,b)` and
    /// `(b,b)` labeled 0, `f = 1` exactly on the cross edges.
    pub fn switch_graph() -> Self {
        let e = |source, target, label, f| Edge {
            source,
            target,
            label,
            f,
        };
        Self {
            vertices: vec!["a", "b"],
            edges: vec![
                e(VERTEX_A, VERTEX_A, 1, 0),
                e(VERTEX_A, VERTEX_B, 0, 1),
                e(VERTEX_B, VERTEX_A, 1, 1),
                e(VERTEX_B, VERTEX_B, 0, 0),
            ],
        }
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&i| self.edges[i].source == v)
    }
}

impl ProductGraphSpec {
    pub fn square(base: &GraphSpec) -> Self {
        let nv = base.vertices.len();
        let mut edges = Vec::with_capacity(base.edges.len().pow(2));
        for (i, e) in base.edges.iter().enumerate() {
            for (j, e2) in base.edges.iter().enumerate() {
                edges.push(ProductEdge {
                    source: e.source * nv + e2.source,
                    target: e.target * nv + e2.target,
                    left: i,
                    right: j,
                    f1: e.f,
                    f2: e2.f,
                    delta: u8::from(e.label != e2.label),
                });
            }
        }
        Self {
            base: base.clone(),
            edges,
        }
    }
}

impl EdgeGraph for GraphSpec {
    fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    fn num_edges(&self) -> usize {
        self.edges.len()
    }
    fn endpoints(&self, edge: usize) -> (usize, usize) {
        (self.edges[edge].source, self.edges[edge].target)
    }
    fn weight_exponents(&self, edge: usize) -> (f64, f64) {
        (f64::from(self.edges[edge].f), 0.0)
    }
}

impl EdgeGraph for ProductGraphSpec {
    fn num_vertices(&self) -> usize {
        self.base.vertices.len().pow(2)
    }
    fn num_edges(&self) -> usize {
        self.edges.len()
    }
    fn endpoints(&self, edge: usize) -> (usize, usize) {
        (self.edges[edge].source, self.edges[edge].target)
    }
    fn weight_exponents(&self, edge: usize) -> (f64, f64) {
        let e = &self.edges[edge];
        (f64::from(e.f1 + e.f2), f64::from(e.delta))
    }
}

/// Irreducible with period 1, tested by Wielandt's bound: a primitive
/// `n x n` pattern has a strictly positive power of order `(n-1)^2 + 1`.
pub fn is_primitive(graph: &impl EdgeGraph) -> bool {
    let n = graph.num_vertices();
    let mut adj = vec![vec![false; n]; n];
    for e in 0..graph.num_edges() {
        let (s, t) = graph.endpoints(e);
        adj[s][t] = true;
    }
    let mut power = adj.clone();
    for _ in 0..(n - 1).pow(2) {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] {
                    for j in 0..n {
                        next[i][j] |= adj[k][j];
                    }
                }
            }
        }
        power = next;
    }
    power.iter().all(|row| row.iter().all(|&b| b))
}

/// Probability mass on the edges of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDistribution<T> {
    probs: Vec<T>,
}

impl<T> EdgeDistribution<T> {
    pub fn probs(&self) -> &[T] {
        &self.probs
    }
}

fn check_chain<T, G>(graph: &G, probs: &[T], close: impl Fn(&T, &T) -> bool) -> Result<()>
where
    T: Clone + Zero + One + PartialOrd + std::fmt::Debug,
    G: EdgeGraph,
{
    if probs.len() != graph.num_edges() {
        return Err(Error::NotStationary(format!(
            "{} probabilities for {} edges",
            probs.len(),
            graph.num_edges()
        )));
    }
    if let Some(p) = probs.iter().find(|p| **p < T::zero()) {
        return Err(Error::NotStationary(format!("negative mass {p:?}")));
    }
    let total = probs.iter().cloned().fold(T::zero(), |a, b| a + b);
    if !close(&total, &T::one()) {
        return Err(Error::NotStationary(format!("total mass {total:?}")));
    }
    let mut out = vec![T::zero(); graph.num_vertices()];
    let mut inc = vec![T::zero(); graph.num_vertices()];
    for (e, p) in probs.iter().enumerate() {
        let (s, t) = graph.endpoints(e);
        out[s] = out[s].clone() + p.clone();
        inc[t] = inc[t].clone() + p.clone();
    }
    for v in 0..out.len() {
        if !close(&out[v], &inc[v]) {
            return Err(Error::NotStationary(format!(
                "vertex {v}: outgoing {:?} != incoming {:?}",
                out[v], inc[v]
            )));
        }
    }
    Ok(())
}

impl EdgeDistribution<f64> {
    /// Validates nonnegativity, unit mass and stationarity to within `tol`.
    pub fn new(graph: &impl EdgeGraph, probs: Vec<f64>, tol: f64) -> Result<Self> {
        check_chain(graph, &probs, |a, b| (a - b).abs() <= tol)?;
        Ok(Self { probs })
    }

    /// `E_P(phi)` for an edge function `phi`.
    pub fn expectation(&self, phi: impl Fn(usize) -> f64) -> f64 {
        self.probs.iter().enumerate().map(|(e, p)| p * phi(e)).sum()
    }
}

impl EdgeDistribution<Rational64> {
    /// Exact validation.
    pub fn new_exact(graph: &impl EdgeGraph, probs: Vec<Rational64>) -> Result<Self> {
        check_chain(graph, &probs, |a, b| a == b)?;
        Ok(Self { probs })
    }

    pub fn is_stationary(&self, graph: &impl EdgeGraph) -> bool {
        check_chain(graph, &self.probs, |a, b| a == b).is_ok()
    }

    pub fn expectation(&self, phi: impl Fn(usize) -> i64) -> Rational64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(e, p)| p * Rational64::from_integer(phi(e)))
            .sum()
    }

    pub fn to_f64(&self) -> EdgeDistribution<f64> {
        EdgeDistribution {
            probs: self
                .probs
                .iter()
                .map(|p| *p.numer() as f64 / *p.denom() as f64)
                .collect(),
        }
    }
}

/// `H_P(Y | X)` where `(X, Y)` are the endpoints of an edge drawn from `P`.
pub fn conditional_entropy(graph: &impl EdgeGraph, p: &EdgeDistribution<f64>) -> Result<f64> {
    check_chain(graph, &p.probs, |a, b| (a - b).abs() <= 1e-9)?;
    let mut out_mass = vec![0.0; graph.num_vertices()];
    for (e, &pe) in p.probs.iter().enumerate() {
        out_mass[graph.endpoints(e).0] += pe;
    }
    Ok(p.probs
        .iter()
        .enumerate()
        .filter(|(_, &pe)| pe > 0.0)
        .map(|(e, &pe)| pe * (out_mass[graph.endpoints(e).0] / pe).log2())
        .sum())
}

/// A closed walk `e_1 ... e_n` starting and ending at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePath {
    start: usize,
    edges: Vec<usize>,
}

impl CyclePath {
    pub fn new(graph: &GraphSpec, start: usize, edges: Vec<usize>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidPath("empty cycle".into()));
        }
        if let Some(&e) = edges.iter().find(|&&e| e >= graph.edges.len()) {
            return Err(Error::InvalidPath(format!("unknown edge {e}")));
        }
        if graph.edges[edges[0]].source != start {
            return Err(Error::InvalidPath(format!(
                "first edge does not leave vertex {start}"
            )));
        }
        for (i, w) in edges.windows(2).enumerate() {
            if graph.edges[w[0]].target != graph.edges[w[1]].source {
                return Err(Error::InvalidPath(format!(
                    "edges {} and {} do not chain",
                    i + 1,
                    i + 2
                )));
            }
        }
        if graph.edges[*edges.last().unwrap()].target != start {
            return Err(Error::InvalidPath("walk is not closed".into()));
        }
        Ok(Self { start, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Label sequence `L(e_1) ... L(e_n)` with `L(e_1)` as the most
    /// significant bit. Requires `n <= 64`.
    pub fn label_word(&self, graph: &GraphSpec) -> u64 {
        self.edges
            .iter()
            .fold(0u64, |w, &e| (w << 1) | u64::from(graph.edges[e].label))
    }
}

/// All cycles of length `n` from `start`, in lexicographic edge order.
pub fn enumerate_cycles(graph: &GraphSpec, start: usize, n: usize) -> Vec<CyclePath> {
    fn walk(
        graph: &GraphSpec,
        start: usize,
        n: usize,
        at: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<CyclePath>,
    ) {
        if path.len() == n {
            if at == start {
                out.push(CyclePath {
                    start,
                    edges: path.clone(),
                });
            }
            return;
        }
        for e in graph.out_edges(at) {
            path.push(e);
            walk(graph, start, n, graph.edges[e].target, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        walk(graph, start, n, start, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Edge frequencies of a cycle, as exact fractions. Always stationary.
pub fn empirical_distribution(graph: &GraphSpec, cycle: &CyclePath) -> EdgeDistribution<Rational64> {
    let mut counts = vec![0i64; graph.edges.len()];
    for &e in &cycle.edges {
        counts[e] += 1;
    }
    let n = cycle.edges.len() as i64;
    EdgeDistribution {
        probs: counts
            .into_iter()
            .map(|c| Rational64::new(c, n))
            .collect(),
    }
}

/// Spectral radius of `A_{G;f}(x)`, which is `2^-x + 1`.
pub fn lambda_g(x: f64) -> f64 {
    (-x).exp2() + 1.0
}

/// `log2(1 + 2^-x)` without overflow for large negative `x`.
fn log2_lambda_g(x: f64) -> f64 {
    if x >= 0.0 {
        (-x).exp2().ln_1p() / std::f64::consts::LN_2
    } else {
        -x + x.exp2().ln_1p() / std::f64::consts::LN_2
    }
}

/// Closed-form spectral radius of `A_{GxG;phi'}(x, z)`:
/// `1/2 [ (4^-x+1)(2^-z+1) + sqrt((4^-x+1)^2 4^-z - 2(16^-x - 6 4^-x + 1) 2^-z + (4^-x+1)^2) ]`.
pub fn lambda_gxg(x: f64, z: f64) -> f64 {
    let a = (-2.0 * x).exp2();
    let b = (-z).exp2();
    let one_minus_b = -(-z * std::f64::consts::LN_2).exp_m1();
    // the radicand rearranged into nonnegative terms; the textbook form
    // cancels catastrophically when a is tiny and b is near 1
    let radicand = (a * a + 1.0) * one_minus_b * one_minus_b + 2.0 * a * (b * b + 6.0 * b + 1.0);
    0.5 * ((a + 1.0) * (b + 1.0) + radicand.sqrt())
}

/// `log2 lambda_gxg(x, z)`, using `lambda(x, z) = 4^-x lambda(-x, z)` to
/// keep `4^-x` bounded.
pub fn log2_lambda_gxg(x: f64, z: f64) -> f64 {
    if x < 0.0 {
        -2.0 * x + lambda_gxg(-x, z).log2()
    } else {
        lambda_gxg(x, z).log2()
    }
}

/// Dense weighted adjacency matrix with entries `2^-(x c_x + z c_z)`.
pub fn weighted_matrix(graph: &impl EdgeGraph, x: f64, z: f64) -> Vec<Vec<f64>> {
    let n = graph.num_vertices();
    let mut m = vec![vec![0.0; n]; n];
    for e in 0..graph.num_edges() {
        let (s, t) = graph.endpoints(e);
        let (cx, cz) = graph.weight_exponents(e);
        m[s][t] += (-(x * cx + z * cz)).exp2();
    }
    m
}

const POWER_REL_TOL: f64 = 1e-13;
const POWER_MAX_ITER: usize = 200;

/// Spectral radius of the weighted adjacency matrix by power iteration.
///
/// The iterate is multiplied by `A^(2^k)` at step `k` (the propagator is
/// squared each round) and the Collatz–Wielandt bounds
/// `min_i (Av)_i / v_i <= rho <= max_i (Av)_i / v_i` are tracked until they
/// agree to a relative `1e-13`. Requires a primitive graph.
pub fn lambda_power_iteration(graph: &impl EdgeGraph, x: f64, z: f64) -> Result<f64> {
    let a = weighted_matrix(graph, x, z);
    let n = a.len();
    let mul = |m: &[Vec<f64>], v: &[f64]| -> Vec<f64> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(r, x)| r * x).sum())
            .collect()
    };
    let mut prop = a.clone();
    let mut v = vec![1.0; n];
    for _ in 0..POWER_MAX_ITER {
        let av = mul(&a, &v);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = av[i] / v[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if !(lo.is_finite() && hi.is_finite()) {
            break;
        }
        if hi - lo <= POWER_REL_TOL * hi {
            return Ok(0.5 * (lo + hi));
        }
        let next = mul(&prop, &v);
        let norm = next.iter().cloned().fold(0.0, f64::max);
        if !(norm > 0.0 && norm.is_finite()) {
            break;
        }
        v = next.into_iter().map(|x| x / norm).collect();
        if v.iter().any(|&x| x <= 0.0) {
            // not yet positive; keep the plain iterate and continue
            v.iter_mut().for_each(|x| *x = x.max(f64::MIN_POSITIVE));
        }
        let mut sq = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    sq[i][j] += prop[i][k] * prop[k][j];
                }
            }
        }
        let scale = sq.iter().flatten().cloned().fold(0.0, f64::max);
        prop = sq.into_iter().map(|r| r.into_iter().map(|x| x / scale).collect()).collect();
    }
    Err(Error::NoConvergence {
        iterations: POWER_MAX_ITER,
    })
}

fn unit(what: &'static str, p: f64, tol: f64) -> Result<f64> {
    clamp_into(what, p, 0.0, 1.0, "[0, 1]", tol)
}

/// `F(p) = inf_x { p x + log lambda_g(x) }`, the maximum conditional entropy
/// of a stationary chain on the switch graph with switch frequency `p`.
/// Equals `h(p)`.
pub fn capital_f(p: f64, cfg: &ToleranceConfig) -> Result<f64> {
    let p = unit("p", p, cfg.abs_tol)?;
    match minimize_convex_1d(|x| p * x + log2_lambda_g(x), cfg) {
        Ok(m) => Ok(m.value),
        // p = 0 or 1: the infimum is approached as |x| -> inf
        Err(Error::Unbracketed { best, .. }) => Ok(best),
        Err(e) => Err(e),
    }
}

/// `G(p, delta) = inf_{x, z >= 0} { 2 p x + delta z + log lambda_gxg(x, z) }`,
/// the maximum conditional entropy of a stationary chain on `G x G` whose
/// marginals both have switch frequency `p` and whose label disagreement
/// frequency is at most `delta`.
pub fn capital_g(p: f64, delta: f64, cfg: &ToleranceConfig) -> Result<f64> {
    let p = unit("p", p, cfg.abs_tol)?;
    let delta = clamp_into("delta", delta, 0.0, 0.5, "(0, 1/2]", cfg.abs_tol)?;
    if delta <= 0.0 {
        return Err(Error::Domain {
            what: "delta",
            value: delta,
            domain: "(0, 1/2]",
        });
    }
    match minimize_convex_2d(
        |x, z| 2.0 * p * x + delta * z + log2_lambda_gxg(x, z),
        cfg,
    ) {
        Ok(m) => Ok(m.value),
        Err(Error::Unbracketed { best, .. }) => Ok(best),
        Err(e) => Err(e),
    }
}

/// Markov-type lower bound `sup_{p in [0,d]} { 2 h(p) - G(p, delta) }`,
/// floored at 0. At `delta = 0` the constraint set is empty and the bound is
/// defined by its limit `h(d)`.
///
/// The supremum over `p` is searched on [`ToleranceConfig::coarse`].
pub fn r_ma(q: &BoundQuery, cfg: &ToleranceConfig) -> Result<RateValue> {
    let BoundQuery { d, delta } = BoundQuery::with_tol(q.d, q.delta, cfg.abs_tol)?;
    if delta == 0.0 {
        return Ok(RateValue::new(Method::Markov, h(d)));
    }
    let m = minimize_scalar(
        |p| capital_g(p, delta, cfg).map_or(f64::NAN, |g| g - 2.0 * h(p)),
        0.0,
        d,
        &cfg.coarse(),
    )?;
    Ok(RateValue::new(Method::Markov, (-m.value).max(0.0)))
}

/// Number of length-`n` binary words with at most `k` switches, by dynamic
/// programming over (last bit, switches so far).
pub fn count_switch_bounded(n: u32, k: u32) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let k = k.min(n - 1) as usize;
    // ways[bit][j]: words ending in `bit` with exactly j switches
    let mut ways = vec![vec![BigUint::zero(); k + 1]; 2];
    ways[0][0] = BigUint::one();
    ways[1][0] = BigUint::one();
    for _ in 1..n {
        let mut next = vec![vec![BigUint::zero(); k + 1]; 2];
        for bit in 0..2 {
            for j in 0..=k {
                let mut v = ways[bit][j].clone();
                if j > 0 {
                    v += &ways[1 - bit][j - 1];
                }
                next[bit][j] = v;
            }
        }
        ways = next;
    }
    ways.into_iter().flatten().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::counting::{binomial, log2_big};
    use crate::oracle::switches;
    use rand::{Rng, SeedableRng};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn g() -> GraphSpec {
        GraphSpec::switch_graph()
    }

    #[test]
    fn graph_shape() {
        let g = g();
        assert!(is_primitive(&g));
        let gg = ProductGraphSpec::square(&g);
        assert!(is_primitive(&gg));
        assert_eq!(gg.edges.len(), 16);
        for pe in &gg.edges {
            let (l, r) = (g.edges[pe.left], g.edges[pe.right]);
            assert_eq!(pe.delta == 1, l.label != r.label);
            assert_eq!((pe.f1, pe.f2), (l.f, r.f));
        }
        // a graph without self-loops is periodic
        let cycle2 = GraphSpec {
            vertices: vec!["a", "b"],
            edges: vec![g.edges[1], g.edges[2]],
        };
        assert!(!is_primitive(&cycle2));
    }

    #[test]
    fn entropy_examples() {
        let g = g();
        let uniform = EdgeDistribution::new(&g, vec![0.25; 4], 1e-12).unwrap();
        assert!((conditional_entropy(&g, &uniform).unwrap() - 1.0).abs() < 1e-15);
        let loops = EdgeDistribution::new(&g, vec![0.5, 0.0, 0.0, 0.5], 1e-12).unwrap();
        assert_eq!(conditional_entropy(&g, &loops).unwrap(), 0.0);
        let p = EdgeDistribution::new(&g, vec![0.375, 0.125, 0.125, 0.375], 1e-12).unwrap();
        let expected = 2.0 - 0.75 * 3f64.log2();
        assert!((conditional_entropy(&g, &p).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_stationary() {
        let g = g();
        assert!(matches!(
            EdgeDistribution::new(&g, vec![0.25, 0.5, 0.0, 0.25], 1e-12),
            Err(Error::NotStationary(_))
        ));
        assert!(EdgeDistribution::new(&g, vec![0.5, 0.5, 0.5, -0.5], 1e-12).is_err());
        assert!(EdgeDistribution::new(&g, vec![0.25; 3], 1e-12).is_err());
    }

    #[test]
    fn cycle_validation() {
        let g = g();
        // both self-loops in a row do not chain
        assert!(matches!(
            CyclePath::new(&g, VERTEX_A, vec![0, 3]),
            Err(Error::InvalidPath(_))
        ));
        assert!(CyclePath::new(&g, VERTEX_A, vec![1]).is_err());
        assert!(CyclePath::new(&g, VERTEX_A, vec![]).is_err());
        assert!(CyclePath::new(&g, VERTEX_B, vec![0]).is_err());
    }

    #[test]
    fn empirical_examples() {
        let g = g();
        let loops = CyclePath::new(&g, VERTEX_A, vec![0; 7]).unwrap();
        let p = empirical_distribution(&g, &loops);
        assert_eq!(p.probs()[0], Rational64::one());
        assert!(p.is_stationary(&g));

        let n = 10;
        let alt = CyclePath::new(&g, VERTEX_A, [1, 2].repeat(n / 2)).unwrap();
        let p = empirical_distribution(&g, &alt);
        assert_eq!(p.probs()[1], Rational64::new(1, 2));
        assert_eq!(p.probs()[2], Rational64::new(1, 2));
        let n_ef = p.expectation(|e| i64::from(g.edges[e].f)) * Rational64::from_integer(n as i64);
        let first_f = i64::from(g.edges[alt.edges()[0]].f);
        let word = alt.label_word(&g);
        assert_eq!(word, 0b0101010101);
        assert_eq!(n_ef - first_f, Rational64::from_integer(n as i64 - 1));
        assert_eq!(switches(word, n as u32) as i64, n as i64 - 1);
    }

    #[test]
    fn switch_fact_exhaustive() {
        let g = g();
        for n in 1..=12 {
            for start in [VERTEX_A, VERTEX_B] {
                let cycles = enumerate_cycles(&g, start, n);
                assert_eq!(cycles.len(), 1 << (n - 1));
                for c in cycles {
                    let p = empirical_distribution(&g, &c);
                    assert!(p.is_stationary(&g));
                    let n_ef = p.expectation(|e| i64::from(g.edges[e].f))
                        * Rational64::from_integer(n as i64);
                    let lhs = n_ef - Rational64::from_integer(i64::from(g.edges[c.edges()[0]].f));
                    let sw = switches(c.label_word(&g), n as u32);
                    assert_eq!(lhs, Rational64::from_integer(sw as i64));
                }
            }
        }
    }

    #[test]
    fn lambda_g_values() {
        assert_eq!(lambda_g(0.0), 2.0);
        assert_eq!(lambda_g(1.0), 1.5);
        assert!((lambda_g(60.0) - 1.0).abs() < 1e-15);
        let g = g();
        assert!((lambda_power_iteration(&g, 0.0, 0.0).unwrap() - 2.0).abs() < 1e-12);
        for x in [-3.0, -0.5, 0.7, 4.0] {
            let pi = lambda_power_iteration(&g, x, 0.0).unwrap();
            assert!((pi - lambda_g(x)).abs() <= 1e-12 * pi);
        }
    }

    #[test]
    fn lambda_gxg_special_cases() {
        assert_eq!(lambda_gxg(0.0, 0.0), 4.0);
        let gg = ProductGraphSpec::square(&g());
        assert!((lambda_power_iteration(&gg, 0.0, 0.0).unwrap() - 4.0).abs() < 1e-12);
        for i in 0..100 {
            let x = -6.0 + 12.0 * i as f64 / 99.0;
            let sq = lambda_g(x).powi(2);
            assert!((lambda_gxg(x, 0.0) - sq).abs() <= 1e-12 * sq, "x={x}");
            let z = 0.1 * i as f64;
            let v = 2.0 * ((-z).exp2() + 1.0);
            assert!((lambda_gxg(0.0, z) - v).abs() < 1e-12);
            let pi = lambda_power_iteration(&gg, 0.0, z).unwrap();
            assert!((pi - v).abs() <= 1e-9 * v);
        }
    }

    #[test]
    fn lambda_gxg_vs_power_iteration() {
        let gg = ProductGraphSpec::square(&g());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = rng.gen_range(-5.0..5.0);
            let z = rng.gen_range(0.0..10.0);
            let closed = lambda_gxg(x, z);
            let pi = lambda_power_iteration(&gg, x, z).unwrap();
            assert!((closed - pi).abs() <= 1e-9 * pi, "({x}, {z}): {closed} vs {pi}");
        }
    }

    #[test]
    fn log_lambda_is_stable() {
        for (x, z) in [(-3.0, 0.5), (-0.25, 2.0), (2.0, 1.0)] {
            assert!((log2_lambda_gxg(x, z) - lambda_gxg(x, z).log2()).abs() < 1e-12);
        }
        assert!(log2_lambda_gxg(-2000.0, 1.0).is_finite());
        assert!(log2_lambda_g(-2000.0).is_finite());
    }

    #[test]
    fn capital_f_is_entropy() {
        assert!((capital_f(0.5, &cfg()).unwrap() - 1.0).abs() < 1e-9);
        assert!(capital_f(0.0, &cfg()).unwrap().abs() < 1e-9);
        assert!((capital_f(0.25, &cfg()).unwrap() - h(0.25)).abs() < 1e-9);
        assert!((capital_f(1.0, &cfg()).unwrap()).abs() < 1e-9);
    }

    /// Grid oracle for G over a box; an upper estimate of the infimum.
    fn grid_g(p: f64, delta: f64) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..=400 {
            let x = -4.0 + 12.0 * i as f64 / 400.0;
            for j in 0..=400 {
                let z = 12.0 * j as f64 / 400.0;
                best = best.min(2.0 * p * x + delta * z + log2_lambda_gxg(x, z));
            }
        }
        best
    }

    #[test]
    fn capital_g_against_grid() {
        for (p, delta) in [(0.25, 0.1), (0.1, 0.3), (0.4, 0.05), (0.25, 0.5)] {
            let v = capital_g(p, delta, &cfg()).unwrap();
            let grid = grid_g(p, delta);
            assert!(v <= grid + 1e-9, "({p},{delta}): {v} vs grid {grid}");
            assert!(grid - v < 1e-3, "({p},{delta}): {v} vs grid {grid}");
            assert!(v <= 2.0 * h(p) + 1e-9);
        }
    }

    #[test]
    fn capital_g_small_delta_limit() {
        let v = capital_g(0.5, 1e-4, &cfg()).unwrap();
        assert!((v - 1.0).abs() < 0.02, "{v}");
        assert!(capital_g(0.3, 0.0, &cfg()).is_err());
    }

    #[test]
    fn r_ma_examples() {
        let q = |d, delta| BoundQuery::new(d, delta).unwrap();
        assert_eq!(r_ma(&q(0.0, 0.2), &cfg()).unwrap().rate, 0.0);
        for d in [0.0625, 0.25, 0.5] {
            let v = r_ma(&q(d, 1e-3), &cfg()).unwrap().rate;
            assert!((v - h(d)).abs() < 0.02, "d={d}: {v}");
            assert_eq!(r_ma(&q(d, 0.0), &cfg()).unwrap().rate, h(d));
        }
        let v = r_ma(&q(0.25, 0.25), &cfg()).unwrap().rate;
        let cwc = crate::cw_lower::cwc_rate(&q(0.25, 0.25), &cfg()).unwrap().rate;
        assert!(v <= cwc + 1e-9);
        // sup over a coarse p-grid of the grid oracle
        let oracle = (0..=50)
            .map(|i| {
                let p = 0.25 * i as f64 / 50.0;
                2.0 * h(p) - grid_g(p, 0.25)
            })
            .fold(0.0, f64::max);
        assert!(v >= oracle - 1e-9, "{v} vs {oracle}");
        assert!(v - oracle < 1e-2, "{v} vs {oracle}");
    }

    #[test]
    fn switch_count_examples() {
        assert_eq!(count_switch_bounded(3, 1), BigUint::from(6u32));
        for n in 1..=20 {
            assert_eq!(count_switch_bounded(n, n - 1), BigUint::one() << n);
        }
    }

    #[test]
    fn switch_count_identity() {
        for n in 1..=60u32 {
            for k in 0..n {
                let expected: BigUint = (0..=k as u64)
                    .map(|j| binomial(u64::from(n) - 1, j))
                    .sum::<BigUint>()
                    * 2u32;
                assert_eq!(count_switch_bounded(n, k), expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn half_distance_gives_zero_rate() {
        // disagreement 1/2 is what independent marginals produce, so
        // G(p, 1/2) = 2 h(p) and nothing is left for the rate
        let cfg = ToleranceConfig::default();
        for e in 1..=40 {
            let p = 0.01 * 2f64.powi(-e);
            let g = capital_g(p, 0.5, &cfg).unwrap();
            assert!(g >= 2.0 * h(p) - 1e-13, "p={p}: {}", 2.0 * h(p) - g);
        }
        for d in [1e-6, 0.0102, 0.1, 0.5] {
            let r = r_ma(&BoundQuery::new(d, 0.5).unwrap(), &cfg).unwrap().rate;
            assert!(r < 1e-12, "d={d}: {r}");
        }
    }

    #[test]
    fn switch_count_growth() {
        let rate = |d: f64, n: u32| log2_big(&count_switch_bounded(n, (d * n as f64) as u32)) / n as f64;
        for d in [1.0 / 16.0, 0.125, 0.25] {
            assert!((h(d) - rate(d, 1000)).abs() < 0.03);
            // along lengths where dn is an integer the gap shrinks monotonically
            let mut prev_gap = f64::INFINITY;
            for n in (160..=960).step_by(160) {
                let gap = h(d) - rate(d, n);
                assert!(gap >= 0.0 && gap <= prev_gap, "d={d} n={n}");
                prev_gap = gap;
            }
        }
        let mut prev_gap = f64::INFINITY;
        for n in (100..=1000).step_by(100) {
            let gap = h(0.25) - rate(0.25, n);
            assert!(gap <= prev_gap, "n={n}");
            prev_gap = gap;
        }
    }

}
