//! Linear codes: parameters, duality checks, and exhaustive weight
//! enumeration.
//!
//! Enumeration walks the whole message space, so it is bounded by a budget on
//! `q^k`. Binary codes use bit-packed rows and a Gray-code walk. Other
//! fields are treated as Z_p-vector spaces: each basis row times each power
//! of the field generator gives an additive basis, and an odometer over Z_p
//! digits visits every codeword once, one vector addition per step
//! (amortized). Both walks can be sharded across threads by fixing the
//! leading digits; the merged histogram is the same as the serial one.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GfMatrix;

pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    LowerBound(usize),
    Unknown,
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::LowerBound(d) => write!(f, "≥{d}"),
            Distance::Unknown => write!(f, "?"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: GfMatrix,
    basis: GfMatrix,
}

impl PartialEq for LinearCode {
    /// Codes are equal when they span the same space.
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl LinearCode {
    pub fn new(generator: GfMatrix) -> LinearCode {
        let (basis, _) = generator.rref();
        LinearCode { generator, basis }
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn generator(&self) -> &GfMatrix {
        &self.generator
    }

    /// Reduced row echelon basis.
    pub fn basis(&self) -> &GfMatrix {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.basis.rows()
    }

    pub fn params(&self) -> (usize, usize) {
        (self.n(), self.k())
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.generator.gram().is_zero()
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_self_orthogonal() && 2 * self.k() == self.n()
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.basis.null_space())
    }

    /// Number of codewords, `q^k`.
    pub fn size(&self) -> Option<u128> {
        (self.field().q() as u128).checked_pow(self.k() as u32)
    }

    fn within(&self, budget: u64) -> bool {
        self.size().is_some_and(|s| s <= budget as u128)
    }

    /// Exact minimum distance when `q^k ≤ budget`, otherwise `Unknown`.
    pub fn min_distance(&self, budget: u64) -> Distance {
        if self.k() == 0 || !self.within(budget) {
            return Distance::Unknown;
        }
        let hist = self.histogram(true);
        let d = hist.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w);
        d.map_or(Distance::Unknown, Distance::Exact)
    }

    /// Full weight spectrum (weight → count, zero counts omitted).
    pub fn weight_distribution(&self, budget: u64) -> Result<BTreeMap<usize, u128>> {
        self.weight_distribution_with(budget, true)
    }

    /// As [`weight_distribution`](Self::weight_distribution), optionally serial.
    pub fn weight_distribution_with(&self, budget: u64, parallel: bool) -> Result<BTreeMap<usize, u128>> {
        if !self.within(budget) {
            return Err(Error::BudgetExceeded { words: self.size().unwrap_or(u128::MAX), budget });
        }
        Ok(self
            .histogram(parallel)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(w, c)| (w, c as u128))
            .collect())
    }

    /// For a binary self-orthogonal code whose generator rows all have weight
    /// divisible by 4, every codeword does too. `None` when the test does not
    /// apply (not binary or not self-orthogonal).
    pub fn doubly_even_generators(&self) -> Option<bool> {
        if self.field().q() != 2 || !self.is_self_orthogonal() {
            return None;
        }
        let g = &self.generator;
        Some((0..g.rows()).all(|r| g.row(r).iter().filter(|&&x| x != 0).count() % 4 == 0))
    }

    /// `[n,k,d]_q`.
    pub fn describe(&self, budget: u64) -> String {
        format!("[{},{},{}]_{}", self.n(), self.k(), self.min_distance(budget), self.field().q())
    }

    fn histogram(&self, parallel: bool) -> Vec<u64> {
        if self.field().q() == 2 {
            binary_histogram(&self.basis, parallel)
        } else {
            additive_histogram(&self.basis, parallel)
        }
    }
}

/// How many leading digits to fix per shard.
fn shard_digits(total: usize, radix: u64, parallel: bool) -> usize {
    if !parallel {
        return 0;
    }
    let mut t = 0;
    let mut shards = 1u64;
    while t < total && shards < 256 && total - t > 4 {
        shards *= radix;
        t += 1;
    }
    t
}

fn merge(parts: Vec<Vec<u64>>, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n + 1];
    for p in parts {
        for (o, c) in out.iter_mut().zip(p) {
            *o += c;
        }
    }
    out
}

fn binary_histogram(basis: &GfMatrix, parallel: bool) -> Vec<u64> {
    let n = basis.cols();
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..basis.rows())
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (c, &x) in basis.row(r).iter().enumerate() {
                if x != 0 {
                    bits[c / 64] |= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();
    let k = rows.len();
    let t = shard_digits(k, 2, parallel);
    let (low, high) = rows.split_at(k - t);
    let walk = |prefix: u64| {
        let mut cur = vec![0u64; words];
        for (i, row) in high.iter().enumerate() {
            if prefix >> i & 1 == 1 {
                xor(&mut cur, row);
            }
        }
        let mut hist = vec![0u64; n + 1];
        hist[weight(&cur)] += 1;
        for i in 1u64..(1u64 << low.len()) {
            xor(&mut cur, &low[i.trailing_zeros() as usize]);
            hist[weight(&cur)] += 1;
        }
        hist
    };
    let shards = 1u64 << t;
    let parts: Vec<Vec<u64>> = if parallel {
        (0..shards).into_par_iter().map(walk).collect()
    } else {
        (0..shards).map(walk).collect()
    };
    merge(parts, n)
}

fn xor(acc: &mut [u64], row: &[u64]) {
    for (a, b) in acc.iter_mut().zip(row) {
        *a ^= b;
    }
}

fn weight(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Generic fields: codewords as `n` blocks of `l` base-p digits.
fn additive_histogram(basis: &GfMatrix, parallel: bool) -> Vec<u64> {
    let field = basis.field();
    let (p, l, n) = (field.characteristic(), field.degree() as usize, basis.cols());
    let mut gens: Vec<Vec<u8>> = Vec::new();
    for r in 0..basis.rows() {
        for e in 0..l {
            let scale = field.pow(if l == 1 { 1 } else { p }, e as u64);
            let digits = basis
                .row(r)
                .iter()
                .flat_map(|&x| {
                    let mut c = field.coeffs(field.mul(x, scale));
                    c.resize(l, 0);
                    c.into_iter().map(|d| d as u8)
                })
                .collect();
            gens.push(digits);
        }
    }
    // supports per generator, as position indices
    let supports: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| (0..n).filter(|&j| g[j * l..(j + 1) * l].iter().any(|&d| d != 0)).collect())
        .collect();
    let total = gens.len();
    let t = shard_digits(total, p as u64, parallel);
    let low = total - t;
    let p8 = p as u8;

    let add = |cur: &mut [u8], g: &[u8], supp: &[usize], wt: &mut usize| {
        for &j in supp {
            let before = cur[j * l..(j + 1) * l].iter().any(|&d| d != 0);
            for i in j * l..(j + 1) * l {
                let s = cur[i] + g[i];
                cur[i] = if s >= p8 { s - p8 } else { s };
            }
            let after = cur[j * l..(j + 1) * l].iter().any(|&d| d != 0);
            match (before, after) {
                (false, true) => *wt += 1,
                (true, false) => *wt -= 1,
                _ => {}
            }
        }
    };

    let walk = |prefix: u64| {
        let mut cur = vec![0u8; n * l];
        let mut wt = 0usize;
        let mut rest = prefix;
        for i in low..total {
            for _ in 0..rest % p as u64 {
                add(&mut cur, &gens[i], &supports[i], &mut wt);
            }
            rest /= p as u64;
        }
        let mut hist = vec![0u64; n + 1];
        hist[wt] += 1;
        let mut digits = vec![0u32; low];
        loop {
            let mut i = 0;
            while i < low && digits[i] == p - 1 {
                digits[i] = 0;
                add(&mut cur, &gens[i], &supports[i], &mut wt);
                i += 1;
            }
            if i == low {
                break;
            }
            digits[i] += 1;
            add(&mut cur, &gens[i], &supports[i], &mut wt);
            hist[wt] += 1;
        }
        hist
    };
    let shards = (p as u64).pow(t as u32);
    let parts: Vec<Vec<u64>> = if parallel {
        (0..shards).into_par_iter().map(walk).collect()
    } else {
        (0..shards).map(walk).collect()
    };
    merge(parts, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_code() {
        let f = Field::prime(2).unwrap();
        let c = LinearCode::new(GfMatrix::from_integers(&f, 6, &[vec![1u32; 6]]));
        assert_eq!(c.params(), (6, 1));
        assert_eq!(c.min_distance(DEFAULT_BUDGET), Distance::Exact(6));
        assert!(c.is_self_orthogonal());
    }

    #[test]
    fn zero_code() {
        let f = Field::prime(3).unwrap();
        let c = LinearCode::new(GfMatrix::zeros(&f, 2, 5));
        assert_eq!(c.params(), (5, 0));
        let wd = c.weight_distribution(DEFAULT_BUDGET).unwrap();
        assert_eq!(wd, BTreeMap::from([(0, 1)]));
        assert_eq!(c.min_distance(DEFAULT_BUDGET), Distance::Unknown);
    }

    #[test]
    fn full_space_is_not_self_orthogonal() {
        let f = Field::prime(2).unwrap();
        let c = LinearCode::new(GfMatrix::identity(&f, 2));
        assert!(!c.is_self_orthogonal());
        assert_eq!(c.min_distance(DEFAULT_BUDGET), Distance::Exact(1));
    }

    #[test]
    fn budget_is_respected() {
        let f = Field::prime(2).unwrap();
        let c = LinearCode::new(GfMatrix::identity(&f, 10));
        assert_eq!(c.min_distance(512), Distance::Unknown);
        assert_eq!(
            c.weight_distribution(512).unwrap_err(),
            Error::BudgetExceeded { words: 1024, budget: 512 }
        );
        assert_eq!(c.describe(512), "[10,10,?]_2");
    }

    #[test]
    fn tetracode_over_gf3() {
        let f = Field::prime(3).unwrap();
        let g = GfMatrix::from_rows(&f, 4, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        let c = LinearCode::new(g);
        assert!(c.is_self_dual());
        let wd = c.weight_distribution(DEFAULT_BUDGET).unwrap();
        assert_eq!(wd, BTreeMap::from([(0, 1), (3, 8)]));
    }

    #[test]
    fn hexacode_over_gf4() {
        // [6,3,4] over GF(4); ω = 2 in the integer encoding
        let f = Field::with_order(4).unwrap();
        let w = 2u32;
        let w2 = f.mul(w, w);
        let g = GfMatrix::from_rows(
            &f,
            6,
            &[vec![1, 0, 0, 1, w2, w], vec![0, 1, 0, 1, w, w2], vec![0, 0, 1, 1, 1, 1]],
        )
        .unwrap();
        let c = LinearCode::new(g);
        assert_eq!(c.min_distance(DEFAULT_BUDGET), Distance::Exact(4));
        let wd = c.weight_distribution(DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.values().sum::<u128>(), 64);
        assert_eq!(wd.get(&4), Some(&45));
    }

    #[test]
    fn distance_display() {
        assert_eq!(Distance::Exact(4).to_string(), "4");
        assert_eq!(Distance::LowerBound(4).to_string(), "≥4");
        assert_eq!(Distance::Unknown.to_string(), "?");
    }
}
