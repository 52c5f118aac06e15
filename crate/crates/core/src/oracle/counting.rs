//! Exact counts: binomial sums, the Kolesnik–Krachkovsky ratio and the
//! weighted unit-distance graph of a projection.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{hamming, BinaryCode, CoordinateSet};
use crate::{BigCount, Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n - k + i + 1, i + 1) after the division, so it is exact
        acc *= n - k + i + 1;
        acc /= i + 1;
    }
    acc
}

/// `log2 x` for an arbitrarily large integer; `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// Sauer–Shelah cap `sum_{i=0}^{D} C(n, i)`.
pub fn sauer_shelah_cap(n: u64, vc: u64) -> BigCount {
    (0..=vc.min(n)).map(|i| binomial(n, i)).sum()
}

/// Kolesnik–Krachkovsky ratio `|S|^2 / (4 |B_S(dist - 1)|)`, where `B_S`
/// counts ordered pairs of `S` (diagonal included) at distance below `dist`.
pub fn kk_bound(ambient: &BinaryCode, dist: u32) -> Result<BigRational> {
    if ambient.is_empty() {
        return Err(Error::InvalidCode("empty ambient set".into()));
    }
    if dist == 0 {
        return Err(Error::InvalidRequest("distance must be at least 1".into()));
    }
    let w = ambient.words();
    let mut close_pairs: u64 = w.len() as u64;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if hamming(w[i], w[j]) < dist {
                close_pairs += 2;
            }
        }
    }
    let size = BigInt::from(w.len());
    Ok(BigRational::new(&size * &size, BigInt::from(4u64 * close_pairs)))
}

/// Total edge weight `W` of the unit-distance graph of the projection of `c`
/// onto `set`, where a projected word weighs the number of codewords mapping
/// to it and an edge weighs the smaller of its endpoint weights.
pub fn ud_weight(c: &BinaryCode, set: CoordinateSet) -> BigCount {
    let mask = set.mask();
    let mut multiplicity: BTreeMap<u64, u64> = BTreeMap::new();
    for &w in c.words() {
        *multiplicity.entry(w & mask).or_default() += 1;
    }
    let mut total = BigUint::zero();
    for (&u, &wu) in &multiplicity {
        let mut bits = mask;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            bits ^= b;
            let v = u ^ b;
            if v > u {
                if let Some(&wv) = multiplicity.get(&v) {
                    total += wu.min(wv);
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: u32, s: &[&str]) -> BinaryCode {
        BinaryCode::new(n, s.iter().map(|w| u64::from_str_radix(w, 2).unwrap()).collect()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        let row: BigUint = (0..=100).map(|k| binomial(100, k)).sum();
        assert_eq!(row, BigUint::one() << 100);
    }

    #[test]
    fn log2_values() {
        assert_eq!(log2_big(&BigUint::from(1024u32)), 10.0);
        assert!((log2_big(&(BigUint::one() << 3000)) - 3000.0).abs() < 1e-12);
        let x = BigUint::from(3u32) << 200;
        assert!((log2_big(&x) - (200.0 + 3f64.log2())).abs() < 1e-12);
        assert_eq!(log2_big(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn sauer_caps() {
        assert_eq!(sauer_shelah_cap(3, 1), BigUint::from(4u32));
        assert_eq!(sauer_shelah_cap(10, 10), BigUint::from(1024u32));
        assert_eq!(sauer_shelah_cap(10, 3), BigUint::from(176u32));
    }

    #[test]
    fn kk_examples() {
        let cube = BinaryCode::cube(2).unwrap();
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(kk_bound(&cube, 1).unwrap(), r(1, 1));
        assert_eq!(kk_bound(&cube, 2).unwrap(), r(1, 3));
        assert_eq!(kk_bound(&cube, 3).unwrap(), r(1, 4));
        assert_eq!(kk_bound(&BinaryCode::cube(5).unwrap(), 6).unwrap(), r(1, 4));
        assert!(kk_bound(&cube, 0).is_err());
    }

    #[test]
    fn ud_examples() {
        let c = code(2, &["00", "01", "11"]);
        assert_eq!(ud_weight(&c, CoordinateSet::full(2)), BigUint::from(2u32));
        assert_eq!(ud_weight(&c, CoordinateSet::from_mask(2, 0).unwrap()), BigUint::zero());
        // projections onto (x2, x3): 00, 01, 11, 11 -> edges 00-01 (1) and 01-11 (min(1,2))
        let c = code(3, &["000", "001", "011", "111"]);
        let set = CoordinateSet::from_coordinates(3, &[2, 3]).unwrap();
        assert_eq!(ud_weight(&c, set), BigUint::from(2u32));
        // projection onto x1: 0 has weight 3, 1 has weight 1
        let set = CoordinateSet::from_coordinates(3, &[1]).unwrap();
        assert_eq!(ud_weight(&c, set), BigUint::one());
    }
}
