//! Determinant formula for the normalized Casorati ratio
//! `[0, i_1, ..., i_{N-1}] / [0, ..., N-1]` in terms of fundamentals.

use super::Fundamentals;
use crate::error::{Error, Result};
use crate::linalg::det;
use crate::ring::LaurentPoly;

/// The partition `mu_j = i_{N-j} + j - N`, `1 <= j <= N-1`, of an index set
/// `0 = i_0 < i_1 < ... < i_{N-1}`. Trailing zeros are dropped.
pub fn index_shape(big_n: u32, indices: &[i64]) -> Result<Vec<u32>> {
    let nn = big_n as usize;
    if indices.len() != nn || indices[0] != 0 || indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutOfRange(format!(
            "need {nn} strictly increasing indices starting at 0, got {indices:?}"
        )));
    }
    let mut mu: Vec<u32> = (1..nn)
        .map(|j| (indices[nn - j] + j as i64 - nn as i64) as u32)
        .collect();
    while mu.last() == Some(&0) {
        mu.pop();
    }
    Ok(mu)
}

/// Transpose of a partition.
pub fn transpose(mu: &[u32]) -> Vec<u32> {
    let width = mu.first().copied().unwrap_or(0);
    (1..=width)
        .map(|c| mu.iter().filter(|&&r| r >= c).count() as u32)
        .collect()
}

/// `det_{1<=j,l<=mu_1} T^(mu'_j - j + l)_1(u + (N-2+j+l-mu'_j)/2)`.
pub fn ratio_jacobi_trudi(f: &Fundamentals, indices: &[i64]) -> Result<LaurentPoly> {
    let big_n = f.big_n();
    let mu = index_shape(big_n, indices)?;
    let mu_t = transpose(&mu);
    let size = mu_t.len() as i64;
    let nn = i64::from(big_n);
    let m: Vec<Vec<LaurentPoly>> = (1..=size)
        .map(|j| {
            let c = i64::from(mu_t[(j - 1) as usize]);
            (1..=size)
                .map(|l| f.get(c - j + l, nn - 2 + j + l - c))
                .collect()
        })
        .collect();
    det(&m)
}

/// The index set `{0, ..., i-1, i+1, ..., N-1, k}` of the hook ratio; it
/// starts at 0 only for `i >= 1`.
pub fn hook_indices(big_n: u32, i: u32, k: u32) -> Vec<i64> {
    (0..big_n)
        .filter(|&r| r != i)
        .map(i64::from)
        .chain([i64::from(k)])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchar::h_table;

    #[test]
    fn shapes() {
        assert_eq!(
            index_shape(6, &[0, 1, 3, 4, 6, 7]).unwrap(),
            vec![2, 2, 1, 1]
        );
        assert_eq!(transpose(&[2, 2, 1, 1]), vec![4, 2]);
        assert!(index_shape(6, &[0, 1, 2, 3, 4, 5]).unwrap().is_empty());
        assert!(index_shape(6, &[1, 2, 3, 4, 5, 6]).is_err());
    }

    #[test]
    fn nineteen_monomials() {
        let f = Fundamentals::new(2).unwrap();
        let r = ratio_jacobi_trudi(&f, &[0, 1, 3, 4, 6, 7]).unwrap();
        let expect = &(&f.get(1, 3) * &f.get(1, 5)) - &(&f.get(2, 2) * &f.get(2, 6));
        assert_eq!(r, expect);
        assert_eq!(r.len(), 19);
    }

    #[test]
    fn hook_sets_match_recursion() {
        let f = Fundamentals::new(2).unwrap();
        let t = h_table(&f, 9);
        for k in 6..=9u32 {
            for i in 1..6u32 {
                let r = ratio_jacobi_trudi(&f, &hook_indices(6, i, k)).unwrap();
                assert_eq!(-r, t[k as usize][i as usize].shift(i.into()), "i={i} k={k}");
            }
        }
    }
}
