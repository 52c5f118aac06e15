//! Exact finite-length oracles over explicit binary codes.
//!
//! A word of length `n <= 64` is stored in a `u64`; coordinate `i` (1-based,
//! `x_1 x_2 ... x_n`) is bit `n - i`, so the word reads most significant bit
//! first.

pub mod counting;
pub mod props;
pub mod search;

pub use counting::{binomial, kk_bound, log2_big, sauer_shelah_cap, ud_weight};
pub use search::{gv_greedy, max_code_exact, max_code_size_exact};

use crate::{Error, Result};

pub const MAX_LENGTH: u32 = 64;

/// Mask of the low `n` bits.
#[inline]
pub fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// A set of distinct length-`n` words, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: u32,
    words: Vec<u64>,
}

impl BinaryCode {
    /// Sorts and deduplicates `words`.
    pub fn new(n: u32, mut words: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::InvalidCode(format!("length {n} outside [1, 64]")));
        }
        if let Some(w) = words.iter().find(|&&w| w & !low_mask(n) != 0) {
            return Err(Error::InvalidCode(format!("word {w:#x} has more than {n} bits")));
        }
        words.sort_unstable();
        words.dedup();
        Ok(Self { n, words })
    }

    /// The full cube `{0,1}^n`; `n <= 24`.
    pub fn cube(n: u32) -> Result<Self> {
        if n > 24 {
            return Err(Error::InvalidCode(format!("cube of length {n} is too large")));
        }
        Self::new(n, (0..1u64 << n).collect())
    }

    /// Parses whitespace- or comma-separated hexadecimal words (optional
    /// `0x` prefix; `#` starts a comment).
    pub fn parse_hex(n: u32, text: &str) -> Result<Self> {
        let mut words = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let digits = tok.trim_start_matches("0x").trim_start_matches("0X");
                let w = u64::from_str_radix(digits, 16)
                    .map_err(|e| Error::InvalidCode(format!("`{tok}`: {e}")))?;
                words.push(w);
            }
        }
        Self::new(n, words)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Binary string of a word, `x_1` first.
    pub fn format_word(&self, w: u64) -> String {
        (0..self.n).rev().map(|b| if w >> b & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// Coordinates `I` as a mask over word bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordinateSet {
    mask: u64,
}

impl CoordinateSet {
    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        if mask & !low_mask(n) != 0 {
            return Err(Error::InvalidCode(format!(
                "coordinate mask {mask:#x} exceeds length {n}"
            )));
        }
        Ok(Self { mask })
    }

    /// From 1-based coordinates in `[1, n]`.
    pub fn from_coordinates(n: u32, coords: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &i in coords {
            if i == 0 || i > n {
                return Err(Error::InvalidCode(format!("coordinate {i} outside [1, {n}]")));
            }
            mask |= 1 << (n - i);
        }
        Ok(Self { mask })
    }

    pub fn full(n: u32) -> Self {
        Self { mask: low_mask(n) }
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn size(self) -> u32 {
        self.mask.count_ones()
    }

    /// Bit positions in increasing order.
    fn positions(self) -> Vec<u32> {
        (0..64).filter(|b| self.mask >> b & 1 == 1).collect()
    }
}

/// Packs the bits of `w` selected by `positions` into the low bits.
#[inline]
fn compress(w: u64, positions: &[u32]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0usize, |acc, (i, &b)| acc | ((w >> b & 1) as usize) << i)
}

/// Smallest pairwise Hamming distance.
pub fn min_distance(c: &BinaryCode) -> Result<u32> {
    if c.len() < 2 {
        return Err(Error::InvalidCode(
            "minimum distance needs at least two words".into(),
        ));
    }
    let w = c.words();
    let mut best = u32::MAX;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            best = best.min(hamming(w[i], w[j]));
        }
    }
    Ok(best)
}

/// Whether the projection of `c` onto `set` is all of `{0,1}^|I|`.
pub fn is_shattered(c: &BinaryCode, set: CoordinateSet) -> bool {
    let k = set.size();
    if k >= usize::BITS - 1 || (1usize << k) > c.len() {
        return false;
    }
    let positions = set.positions();
    let patterns = 1usize << k;
    let mut seen = vec![false; patterns];
    let mut count = 0usize;
    for &w in c.words() {
        let p = compress(w, &positions);
        if !seen[p] {
            seen[p] = true;
            count += 1;
            if count == patterns {
                return true;
            }
        }
    }
    false
}

/// Next mask with the same popcount (Gosper's hack); `None` past `limit`.
fn next_same_weight(v: u64, limit: u64) -> Option<u64> {
    let t = v | v.wrapping_sub(1);
    let low = (!t & t.wrapping_add(1)).wrapping_sub(1);
    let next = t.wrapping_add(1) | low.checked_shr(v.trailing_zeros() + 1).unwrap_or(0);
    (next > v && next <= limit).then_some(next)
}

/// All `n`-bit masks of weight `k` in increasing order.
pub(crate) fn weight_masks(n: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = low_mask(n);
    let first = if k > n { None } else { Some(low_mask(k)) };
    std::iter::successors(first, move |&v| {
        if v == 0 {
            None
        } else {
            next_same_weight(v, limit)
        }
    })
}

/// Largest shattered coordinate set size.
///
/// Sizes are tried in ascending order, stopping at the first size with no
/// shattered set (subsets of shattered sets are shattered).
pub fn vc_dimension(c: &BinaryCode) -> u32 {
    if c.is_empty() {
        return 0;
    }
    let mut dim = 0;
    for k in 1..=c.n() {
        if k >= usize::BITS - 1 || (1usize << k) > c.len() {
            break;
        }
        let found = weight_masks(c.n(), k).any(|m| is_shattered(c, CoordinateSet { mask: m }));
        if !found {
            break;
        }
        dim = k;
    }
    dim
}

/// Number of positions `i < n` with `x_i != x_{i+1}`.
pub fn switches(word: u64, n: u32) -> u32 {
    if n <= 1 {
        return 0;
    }
    ((word ^ (word >> 1)) & low_mask(n - 1)).count_ones()
}

/// All words of length `n` and weight `k`.
pub fn constant_weight_set(n: u32, k: u32) -> Result<BinaryCode> {
    if k > n {
        return Err(Error::InvalidCode(format!("weight {k} exceeds length {n}")));
    }
    BinaryCode::new(n, weight_masks(n, k).collect())
}

/// All words of length `n` with at most `k` switches. A word is fixed by its
/// first bit and the set of switch positions, so this enumerates
/// `2 sum_{j<=k} C(n-1, j)` words directly.
pub fn switch_bounded_set(n: u32, k: u32) -> Result<BinaryCode> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::InvalidCode(format!("length {n} outside [1, 64]")));
    }
    let k = k.min(n - 1);
    let mut words = Vec::new();
    for j in 0..=k {
        for switch_mask in weight_masks(n - 1, j) {
            // bit b of switch_mask: x differs between bit positions b and b+1
            let mut w = 0u64;
            let mut bit = 0u64;
            for b in (0..n).rev() {
                if b + 1 < n && switch_mask >> b & 1 == 1 {
                    bit ^= 1;
                }
                w |= bit << b;
            }
            words.push(w);
            words.push(!w & low_mask(n));
        }
    }
    BinaryCode::new(n, words)
}
