//! The hook family `H^(i)_k(u)`: the recursion, its determinant form and
//! the companion-matrix product formula.

use rayon::prelude::*;

use super::{check_rank, params, CharLabel, Fundamentals, QCharacter};
use crate::error::{Error, Result};
use crate::linalg::det;
use crate::report::SuiteReport;
use crate::ring::{AlgebraSpec, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    pub i: u32,
    pub k: u32,
    pub value: LaurentPoly,
}

impl HSeries {
    pub fn to_character(&self, n: u32) -> Result<QCharacter> {
        Ok(QCharacter {
            algebra: AlgebraSpec::c(n)?,
            label: CharLabel::Hook {
                i: self.i,
                k: self.k,
            },
            value: self.value.clone(),
            base_half: 0,
        })
    }
}

/// `table[k][i] = H^(i)_k(u)` for `0 <= k <= k_max`, `0 <= i <= N-1`, from
/// `H^(i)_{k+1}(u) = -T^(i)_1(u) H^(N-1)_k(u + (N+1-i)/2) - H^(i-1)_k(u + 1/2)`.
pub fn h_table(f: &Fundamentals, k_max: u32) -> Vec<Vec<LaurentPoly>> {
    let big_n = f.big_n() as usize;
    let mut table = vec![(0..big_n)
        .map(|i| {
            if i == 0 {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        })
        .collect::<Vec<_>>()];
    for k in 0..k_max as usize {
        let prev = &table[k];
        let last = &prev[big_n - 1];
        let next: Vec<LaurentPoly> = (0..big_n)
            .into_par_iter()
            .map(|i| {
                let ii = i as i64;
                let mut v = -(&f.get(ii, 0) * &last.shift(big_n as i64 + 1 - ii));
                if i > 0 {
                    v -= &prev[i - 1].shift(1);
                }
                v
            })
            .collect();
        table.push(next);
    }
    table
}

fn check_index(n: u32, i: u32) -> Result<()> {
    check_rank(n)?;
    if i > 2 * n + 1 {
        return Err(Error::OutOfRange(format!(
            "H^(i) needs 0 <= i <= {}, got {i}",
            2 * n + 1
        )));
    }
    Ok(())
}

/// `H^(i)_k(u)` from the recursion.
pub fn h_series(n: u32, i: u32, k: u32) -> Result<HSeries> {
    check_index(n, i)?;
    let f = Fundamentals::new(n)?;
    let mut t = h_table(&f, k);
    Ok(HSeries {
        i,
        k,
        value: t.swap_remove(k as usize).swap_remove(i as usize),
    })
}

/// `H^(i)_k(u)` for `k >= N` as minus the hook determinant of size
/// `k-N+1` with first column length `N-i`.
pub fn hook_jacobi_trudi(f: &Fundamentals, i: u32, k: u32) -> Result<LaurentPoly> {
    let n = f.rank();
    check_index(n, i)?;
    let big_n = i64::from(f.big_n());
    let (ii, kk) = (i64::from(i), i64::from(k));
    if kk < big_n {
        return Err(Error::OutOfRange(format!(
            "hook determinant needs k >= {big_n}, got {k}"
        )));
    }
    let size = kk - big_n + 1;
    let m: Vec<Vec<LaurentPoly>> = (1..=size)
        .map(|j| {
            let lam = if j == 1 { big_n - ii } else { 1 };
            (1..=size)
                .map(|l| f.get(lam - j + l, big_n - 2 - lam + j + l - ii))
                .collect()
        })
        .collect();
    Ok(-det(&m)?)
}

/// Recursion against hook determinants for `N <= k <= k_max`, the initial
/// values, and the leading monomials for `k > N`.
pub fn verify_hseries(n: u32, k_max: u32) -> Result<SuiteReport> {
    check_rank(n)?;
    let f = Fundamentals::new(n)?;
    let big_n = f.big_n();
    let table = h_table(&f, k_max);
    let mut report = SuiteReport::new("hseries");
    for (k, row) in table.iter().enumerate().take(big_n as usize) {
        let ok = row.iter().enumerate().all(|(i, h)| {
            let expect = if i == k {
                if i % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            *h == LaurentPoly::constant(expect)
        });
        report.record(
            "initial values (-1)^i delta_ik",
            params(&[("n", n.into()), ("k", k as i64)]),
            ok,
            None,
        );
    }
    if k_max >= big_n {
        for i in 0..big_n {
            report.record_eq(
                "H^(i)_N = T^(i)_1",
                params(&[("n", n.into()), ("i", i.into())]),
                &table[big_n as usize][i as usize],
                &f.get(i.into(), 0),
            );
        }
    }
    let cases: Vec<(u32, u32)> = (big_n..=k_max)
        .flat_map(|k| (0..big_n).map(move |i| (i, k)))
        .collect();
    let dets: Vec<LaurentPoly> = cases
        .par_iter()
        .map(|&(i, k)| hook_jacobi_trudi(&f, i, k))
        .collect::<Result<_>>()?;
    for (&(i, k), d) in cases.iter().zip(&dets) {
        let p = params(&[("n", n.into()), ("i", i.into()), ("k", k.into())]);
        report.record_eq(
            "recursion equals hook determinant",
            p.clone(),
            &table[k as usize][i as usize],
            d,
        );
        if k > big_n {
            let h = HSeries {
                i,
                k,
                value: table[k as usize][i as usize].clone(),
            }
            .to_character(n)?;
            let ok = h.has_highest_weight().unwrap_or(false);
            report.record(
                "sigma_i H^(i)_k(u+i/2) has its highest-weight monomial",
                p,
                ok,
                None,
            );
        }
    }
    Ok(report)
}

fn mat_mul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let size = a.len();
    (0..size)
        .into_par_iter()
        .map(|r| {
            (0..size)
                .map(|c| {
                    (0..size)
                        .filter(|&j| !a[r][j].is_zero() && !b[j][c].is_zero())
                        .map(|j| &a[r][j] * &b[j][c])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// `T(u + s)`: ones below the diagonal, last column `(-1)^r T^(r)_1(u+s+r/2)`.
fn companion(f: &Fundamentals, s: i64) -> Vec<Vec<LaurentPoly>> {
    let big_n = f.big_n() as usize;
    (0..big_n)
        .map(|r| {
            (0..big_n)
                .map(|c| {
                    if c == big_n - 1 {
                        let t = f.get(r as i64, 2 * s + r as i64);
                        if r % 2 == 0 {
                            t
                        } else {
                            -t
                        }
                    } else if r == c + 1 {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `T(u) T(u+1) ... T(u+k-1)` against the matrix whose columns are
/// `((-1)^r H^(r)_{k+c}(u + r/2))_r`, `0 <= c <= N-1`.
pub fn verify_product_formula(n: u32, k: u32) -> Result<SuiteReport> {
    check_rank(n)?;
    if k == 0 {
        return Err(Error::OutOfRange("product formula needs k >= 1".into()));
    }
    let f = Fundamentals::new(n)?;
    let big_n = f.big_n() as usize;
    let table = h_table(&f, k + big_n as u32 - 1);
    let mut prod = companion(&f, 0);
    for s in 1..i64::from(k) {
        prod = mat_mul(&prod, &companion(&f, s));
    }
    let mut report = SuiteReport::new("product-formula");
    for c in 0..big_n {
        for r in 0..big_n {
            let h = table[k as usize + c][r].shift(r as i64);
            let expect = if r % 2 == 0 { h } else { -h };
            report.record_eq(
                "companion product entry",
                params(&[
                    ("n", n.into()),
                    ("k", k.into()),
                    ("row", r as i64),
                    ("col", c as i64),
                ]),
                &prod[r][c],
                &expect,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_values_and_fundamentals() {
        let f = Fundamentals::new(2).unwrap();
        let t = h_table(&f, 6);
        for k in 0..6 {
            for i in 0..6 {
                let e = if i == k {
                    if i % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                };
                assert_eq!(t[k][i], LaurentPoly::constant(e));
            }
        }
        for i in 0..6 {
            assert_eq!(t[6][i], f.get(i as i64, 0));
        }
    }

    #[test]
    fn determinant_form_rank_two() {
        let r = verify_hseries(2, 9).unwrap();
        assert!(r.passed, "{}", r.to_text());
    }

    #[test]
    fn determinant_at_k_equal_n_is_fundamental() {
        let f = Fundamentals::new(3).unwrap();
        for i in 0..8 {
            assert_eq!(hook_jacobi_trudi(&f, i, 8).unwrap(), f.get(i.into(), 0));
        }
    }

    #[test]
    fn product_formula_small_k() {
        for k in [1, 2, 6, 8] {
            let r = verify_product_formula(2, k).unwrap();
            assert!(r.passed, "k={k}: {}", r.to_text());
        }
    }

    #[test]
    fn bad_index() {
        assert!(h_series(2, 6, 3).is_err());
        assert_eq!(h_series(2, 2, 2).unwrap().value, LaurentPoly::one());
    }
}
