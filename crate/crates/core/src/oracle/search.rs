//! Greedy and exact code searches inside an ambient word set.

use super::{hamming, vc_dimension, BinaryCode};
use crate::{Error, Result};

/// Scans `ambient` in ascending order, keeping each word at distance at
/// least `dist` from every word kept so far.
pub fn gv_greedy(ambient: &BinaryCode, dist: u32) -> BinaryCode {
    let mut kept: Vec<u64> = Vec::new();
    for &w in ambient.words() {
        if kept.iter().all(|&k| hamming(k, w) >= dist) {
            kept.push(w);
        }
    }
    BinaryCode::new(ambient.n(), kept).expect("subset of a valid code")
}

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn empty(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }
    fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }
    fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn subtract_in_place(&mut self, other: &Bitset) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a &= !b);
    }
}

/// Branch-and-bound maximum clique on the graph "distance >= dist" with
/// greedy-colouring bounds. With a VC cap, a branch is cut as soon as its
/// partial code exceeds the cap; VC-dimension never decreases when words are
/// added, so no extension of such a branch can satisfy it.
struct CliqueSearch<'a> {
    words: &'a [u64],
    n: u32,
    adj: Vec<Bitset>,
    vc_cap: Option<u32>,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
}

impl CliqueSearch<'_> {
    fn vc_ok(&self, clique: &[usize]) -> bool {
        match self.vc_cap {
            None => true,
            Some(cap) => {
                let code = BinaryCode::new(self.n, clique.iter().map(|&i| self.words[i]).collect())
                    .expect("subset of a valid code");
                vc_dimension(&code) <= cap
            }
        }
    }

    /// Candidates ordered by greedy colour class, with the colour count so far.
    fn colour_order(&self, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.clone();
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                uncoloured.remove(v);
                q.subtract_in_place(&self.adj[v]);
                order.push(v);
                bounds.push(colour);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bitset) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                best: self.best.len(),
            });
        }
        let (order, bounds) = self.colour_order(&cand);
        for idx in (0..order.len()).rev() {
            if clique.len() + bounds[idx] <= self.best.len() {
                return Ok(());
            }
            let v = order[idx];
            clique.push(v);
            if self.vc_ok(clique) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
                let next = cand.intersect(&self.adj[v]);
                if !next.is_empty() {
                    self.expand(clique, next)?;
                }
            }
            clique.pop();
            cand.remove(v);
        }
        Ok(())
    }
}

/// Default node budget for [`max_code_size_exact`].
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Largest code inside `ambient` with minimum distance at least `dist` (and
/// VC-dimension at most `vc_cap`, if given), with a witness.
///
/// On budget exhaustion returns [`Error::BudgetExceeded`] carrying the size
/// of the best code found, a certified lower bound on the optimum.
pub fn max_code_exact(
    ambient: &BinaryCode,
    dist: u32,
    vc_cap: Option<u32>,
    budget: u64,
) -> Result<BinaryCode> {
    let words = ambient.words();
    let m = words.len();
    let mut adj = vec![Bitset::empty(m); m];
    for i in 0..m {
        for j in i + 1..m {
            if hamming(words[i], words[j]) >= dist {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut search = CliqueSearch {
        words,
        n: ambient.n(),
        adj,
        vc_cap,
        budget,
        nodes: 0,
        best: Vec::new(),
    };
    if vc_cap.is_none() {
        // greedy incumbent; its indices are found by position in `words`
        let greedy = gv_greedy(ambient, dist);
        search.best = greedy
            .words()
            .iter()
            .map(|w| words.binary_search(w).expect("greedy words come from ambient"))
            .collect();
    }
    if m > 0 {
        search.expand(&mut Vec::new(), Bitset::full(m))?;
    }
    BinaryCode::new(ambient.n(), search.best.iter().map(|&i| words[i]).collect())
}

pub fn max_code_size_exact(
    ambient: &BinaryCode,
    dist: u32,
    vc_cap: Option<u32>,
    budget: u64,
) -> Result<usize> {
    max_code_exact(ambient, dist, vc_cap, budget).map(|c| c.len())
}

#[cfg(test)]
mod tests {
    use super::super::{constant_weight_set, min_distance};
    use super::*;

    /// Exhaustive subset search; feasible for at most ~20 ambient words.
    fn brute_max(ambient: &BinaryCode, dist: u32, vc_cap: Option<u32>) -> usize {
        let w = ambient.words();
        let mut best = 0;
        for mask in 0u64..1 << w.len() {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let sub: Vec<u64> = (0..w.len()).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).collect();
            let ok_dist = sub
                .iter()
                .enumerate()
                .all(|(i, a)| sub[i + 1..].iter().all(|b| hamming(*a, *b) >= dist));
            if !ok_dist {
                continue;
            }
            let code = BinaryCode::new(ambient.n(), sub).unwrap();
            if vc_cap.map_or(true, |c| vc_dimension(&code) <= c) {
                best = size;
            }
        }
        best
    }

    #[test]
    fn greedy_examples() {
        let cube = BinaryCode::cube(3).unwrap();
        assert_eq!(gv_greedy(&cube, 3).words(), &[0, 7]);
        assert_eq!(gv_greedy(&cube, 1), cube);
        let cw = constant_weight_set(6, 3).unwrap();
        let g = gv_greedy(&cw, 4);
        assert!(g.len() >= 2);
        assert!(min_distance(&g).unwrap() >= 4);
    }

    #[test]
    fn exact_examples() {
        let b = DEFAULT_BUDGET;
        assert_eq!(max_code_size_exact(&BinaryCode::cube(2).unwrap(), 2, None, b).unwrap(), 2);
        assert_eq!(max_code_size_exact(&BinaryCode::cube(3).unwrap(), 1, None, b).unwrap(), 8);
        assert_eq!(max_code_size_exact(&BinaryCode::cube(3).unwrap(), 3, None, b).unwrap(), 2);
        // A(5,3) = 4, A(6,3) = 8
        assert_eq!(max_code_size_exact(&BinaryCode::cube(5).unwrap(), 3, None, b).unwrap(), 4);
        assert_eq!(max_code_size_exact(&BinaryCode::cube(6).unwrap(), 3, None, b).unwrap(), 8);
        let w = max_code_exact(&BinaryCode::cube(6).unwrap(), 3, None, b).unwrap();
        assert!(min_distance(&w).unwrap() >= 3);
    }

    #[test]
    fn vc_capped_against_brute_force() {
        let cube = BinaryCode::cube(4).unwrap();
        for dist in 1..=4 {
            for cap in 0..=4 {
                let exact = max_code_size_exact(&cube, dist, Some(cap), DEFAULT_BUDGET).unwrap();
                assert_eq!(exact, brute_max(&cube, dist, Some(cap)), "dist={dist} cap={cap}");
            }
        }
        // dist 2 in the 4-cube: 8 unconstrained, but VC <= 1 forces far fewer
        let free = max_code_size_exact(&cube, 2, None, DEFAULT_BUDGET).unwrap();
        let capped = max_code_size_exact(&cube, 2, Some(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(free, 8);
        assert!(capped < free);
    }

    #[test]
    fn unconstrained_against_brute_force() {
        let cw = constant_weight_set(6, 3).unwrap();
        for dist in 1..=6 {
            assert_eq!(
                max_code_size_exact(&cw, dist, None, DEFAULT_BUDGET).unwrap(),
                brute_max(&cw, dist, None)
            );
        }
    }

    #[test]
    fn budget_exhaustion() {
        let cube = BinaryCode::cube(8).unwrap();
        match max_code_size_exact(&cube, 3, None, 5) {
            Err(Error::BudgetExceeded { budget: 5, best }) => assert!(best >= 16),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
