//! Exact determinants and Pfaffians over any commutative ring with the
//! operations below, by Laplace expansion memoized on index subsets.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::LaurentPoly;

pub trait RingElem: Clone + Send + Sync + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingElem for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

fn check_square<R>(m: &[Vec<R>]) -> Result<usize> {
    let k = m.len();
    if k > 24 {
        return Err(Error::OutOfRange(format!(
            "matrix of size {k} is too large for subset expansion"
        )));
    }
    if m.iter().any(|row| row.len() != k) {
        return Err(Error::OutOfRange("matrix is not square".into()));
    }
    Ok(k)
}

/// Determinant by expansion along rows from the bottom, memoizing the minor
/// on every column subset. Minors of one size are computed in parallel.
pub fn det<R: RingElem>(m: &[Vec<R>]) -> Result<R> {
    let k = check_square(m)?;
    if k == 0 {
        return Ok(R::one());
    }
    // minors[mask] = det of the last popcount(mask) rows on columns `mask`
    let mut minors: HashMap<u32, R> = HashMap::new();
    minors.insert(0, R::one());
    for size in 1..=k {
        let row = k - size;
        let masks: Vec<u32> = (0u32..(1 << k))
            .filter(|s| s.count_ones() as usize == size)
            .collect();
        let level: Vec<(u32, R)> = masks
            .into_par_iter()
            .filter_map(|mask| {
                let mut acc = R::zero();
                let mut sign_pos = 0;
                for col in 0..k {
                    if mask & (1 << col) == 0 {
                        continue;
                    }
                    let entry = &m[row][col];
                    let rest = mask & !(1 << col);
                    if !entry.is_zero() {
                        if let Some(minor) = minors.get(&rest) {
                            let term = entry.mul(minor);
                            acc = if sign_pos % 2 == 0 {
                                acc.add(&term)
                            } else {
                                acc.add(&term.neg())
                            };
                        }
                    }
                    sign_pos += 1;
                }
                (!acc.is_zero()).then_some((mask, acc))
            })
            .collect();
        minors.extend(level);
    }
    Ok(minors.remove(&((1u32 << k) - 1)).unwrap_or_else(R::zero))
}

/// Checks `m[j][l] = -m[l][j]` and a zero diagonal.
pub fn check_antisymmetric<R: RingElem>(m: &[Vec<R>]) -> Result<()> {
    let k = check_square(m)?;
    for j in 0..k {
        for l in j..k {
            if m[j][l].add(&m[l][j]) != R::zero() {
                return Err(Error::NotAntisymmetric(j, l));
            }
        }
    }
    Ok(())
}

/// Pfaffian of an antisymmetric matrix of even size, expanding along the
/// first remaining index.
pub fn pfaffian<R: RingElem>(m: &[Vec<R>]) -> Result<R> {
    let k = check_square(m)?;
    check_antisymmetric(m)?;
    if k % 2 == 1 {
        return Ok(R::zero());
    }
    let mut memo: HashMap<u32, R> = HashMap::new();
    Ok(pf_rec(m, (1u32 << k) - 1, &mut memo))
}

fn pf_rec<R: RingElem>(m: &[Vec<R>], mask: u32, memo: &mut HashMap<u32, R>) -> R {
    if mask == 0 {
        return R::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut acc = R::zero();
    let mut pos = 0;
    for j in 0..m.len() {
        if rest & (1 << j) == 0 {
            continue;
        }
        let entry = &m[first][j];
        if !entry.is_zero() {
            let sub = pf_rec(m, rest & !(1 << j), memo);
            let term = entry.mul(&sub);
            acc = if pos % 2 == 0 {
                acc.add(&term)
            } else {
                acc.add(&term.neg())
            };
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}
