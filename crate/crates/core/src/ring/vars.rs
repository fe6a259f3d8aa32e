//! Tables of the z- and x-variables as shift templates in Y/Q variables.
//!
//! Every entry is stored at base point `u`; the value at `u + s/2` is the
//! template shifted by `s` half units.

use crate::error::{Error, Result};
use crate::ring::{AlgebraSpec, LaurentPoly, Monomial, Series, VarKey};

/// `Y_a(u + half/2)` with `Y_0 = 1`.
pub fn y_factor(a: u32, half: i64, exp: i32) -> Option<(VarKey, i32)> {
    (a != 0).then(|| (VarKey::y(a, half), exp))
}

/// Monomial with coefficient 1 in Y-variables; `Y_0` factors are dropped.
pub fn y_mono(factors: &[(u32, i64, i32)]) -> LaurentPoly {
    LaurentPoly::from_monomial(Monomial::new(
        1,
        factors.iter().filter_map(|&(a, h, e)| y_factor(a, h, e)),
    ))
}

#[derive(Clone, Debug)]
pub struct VariableTable {
    algebra: AlgebraSpec,
    // index 0 holds z_0 = 1 (C and D) so that z(0) needs no special case
    z_plus: Vec<LaurentPoly>,
    z_bar: Vec<LaurentPoly>,
    x: Vec<LaurentPoly>,
    z_zero: Option<LaurentPoly>,
}

impl VariableTable {
    pub fn new(algebra: AlgebraSpec) -> Self {
        let n = algebra.rank();
        let ni = i64::from(n);
        let mut z_plus = vec![LaurentPoly::one()];
        let mut z_bar = vec![LaurentPoly::one()];
        let mut x = Vec::new();
        let mut z_zero = None;
        match algebra.series() {
            Series::C => {
                for a in 1..=n {
                    let ai = i64::from(a);
                    z_plus.push(y_mono(&[(a, ai, 1), (a - 1, ai + 1, -1)]));
                    z_bar.push(y_mono(&[
                        (a - 1, 2 * ni - ai + 3, 1),
                        (a, 2 * ni - ai + 4, -1),
                    ]));
                }
                let mid = LaurentPoly::from_monomial(Monomial::new(
                    1,
                    [
                        (VarKey::q(n, ni), 1),
                        (VarKey::q(n, ni + 4), 1),
                        (VarKey::q(n, ni + 2), -2),
                    ],
                ));
                x.push(LaurentPoly::zero());
                for i in 1..=algebra.big_n() {
                    let p = if i <= n {
                        z_plus[i as usize].clone()
                    } else if i == n + 1 {
                        mid.clone()
                    } else if i == n + 2 {
                        -&mid
                    } else {
                        z_bar[(2 * n + 3 - i) as usize].clone()
                    };
                    x.push(p);
                }
            }
            Series::B => {
                for a in 1..n {
                    let ai = i64::from(a);
                    z_plus.push(y_mono(&[(a, 2 * ai, 1), (a - 1, 2 * ai + 2, -1)]));
                    z_bar.push(y_mono(&[
                        (a - 1, 4 * ni - 2 * ai, 1),
                        (a, 4 * ni - 2 * ai + 2, -1),
                    ]));
                }
                z_plus.push(y_mono(&[
                    (n, 2 * ni + 1, 1),
                    (n, 2 * ni - 1, 1),
                    (n - 1, 2 * ni + 2, -1),
                ]));
                z_bar.push(y_mono(&[
                    (n - 1, 2 * ni, 1),
                    (n, 2 * ni + 3, -1),
                    (n, 2 * ni + 1, -1),
                ]));
                z_zero = Some(y_mono(&[(n, 2 * ni - 1, 1), (n, 2 * ni + 3, -1)]));
            }
            Series::D => {
                for a in 1..n - 1 {
                    let ai = i64::from(a);
                    z_plus.push(y_mono(&[(a, 2 * ai, 1), (a - 1, 2 * ai + 2, -1)]));
                    z_bar.push(y_mono(&[
                        (a - 1, 4 * ni - 2 * ai - 2, 1),
                        (a, 4 * ni - 2 * ai, -1),
                    ]));
                }
                z_plus.push(y_mono(&[
                    (n, 2 * ni - 2, 1),
                    (n - 1, 2 * ni - 2, 1),
                    (n - 2, 2 * ni, -1),
                ]));
                z_bar.push(y_mono(&[
                    (n - 2, 2 * ni, 1),
                    (n, 2 * ni + 2, -1),
                    (n - 1, 2 * ni + 2, -1),
                ]));
                z_plus.push(y_mono(&[(n, 2 * ni - 2, 1), (n - 1, 2 * ni + 2, -1)]));
                z_bar.push(y_mono(&[(n - 1, 2 * ni - 2, 1), (n, 2 * ni + 2, -1)]));
            }
        }
        VariableTable {
            algebra,
            z_plus,
            z_bar,
            x,
            z_zero,
        }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    fn check_node(&self, a: u32) -> Result<()> {
        if a > self.algebra.rank() {
            return Err(Error::OutOfRange(format!("node {a} for {}", self.algebra)));
        }
        Ok(())
    }

    /// `z_a(u + half/2)`, with `z_0 = 1` for the C and D series.
    pub fn z(&self, a: u32, half: i64) -> Result<LaurentPoly> {
        self.check_node(a)?;
        Ok(self.z_plus[a as usize].shift(half))
    }

    /// `z_{a bar}(u + half/2)`.
    pub fn z_bar(&self, a: u32, half: i64) -> Result<LaurentPoly> {
        self.check_node(a)?;
        Ok(self.z_bar[a as usize].shift(half))
    }

    /// `x_i(u + half/2)` for the C series, `1 <= i <= N`.
    pub fn x(&self, i: u32, half: i64) -> Result<LaurentPoly> {
        if self.x.is_empty() {
            return Err(Error::InvalidAlgebra(format!(
                "x-variables are defined for C only, not {}",
                self.algebra
            )));
        }
        if i == 0 || i > self.algebra.big_n() {
            return Err(Error::OutOfRange(format!("x index {i}")));
        }
        Ok(self.x[i as usize].shift(half))
    }

    /// The extra variable `z_0(u + half/2)` of the B series.
    pub fn z_zero(&self, half: i64) -> Result<LaurentPoly> {
        self.z_zero.as_ref().map(|p| p.shift(half)).ok_or_else(|| {
            Error::InvalidAlgebra(format!("z_0 is defined for B only, not {}", self.algebra))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_entries() {
        let t = VariableTable::new(AlgebraSpec::c(2).unwrap());
        assert_eq!(t.z(1, 0).unwrap(), y_mono(&[(1, 1, 1)]));
        assert_eq!(t.z(2, 0).unwrap(), y_mono(&[(2, 2, 1), (1, 3, -1)]));
        assert_eq!(t.z_bar(2, 0).unwrap(), y_mono(&[(1, 5, 1), (2, 6, -1)]));
        assert_eq!(t.z_bar(1, 0).unwrap(), y_mono(&[(1, 7, -1)]));
        assert_eq!(t.x(6, 0).unwrap(), t.z_bar(1, 0).unwrap());
        assert_eq!(t.x(3, 0).unwrap(), -t.x(4, 0).unwrap());
        assert!(t.x(7, 0).is_err());
        assert!(t.z_zero(0).is_err());
    }

    #[test]
    fn middle_x_shift() {
        let t = VariableTable::new(AlgebraSpec::c(2).unwrap());
        let expect = LaurentPoly::from_monomial(Monomial::new(
            1,
            [
                (VarKey::q(2, 3), 1),
                (VarKey::q(2, 7), 1),
                (VarKey::q(2, 5), -2),
            ],
        ));
        assert_eq!(t.x(3, 1).unwrap(), expect);
    }

    // z_b(u) z_bbar(u-n+b-2) = z_{b-1}(u) z_{b-1 bar}(u-n+b-2), 1 <= b <= n
    #[test]
    fn paired_product_identity() {
        for n in 2..=6u32 {
            let t = VariableTable::new(AlgebraSpec::c(n).unwrap());
            for b in 1..=n {
                let s = 2 * (i64::from(b) - i64::from(n) - 2);
                let lhs = &t.z(b, 0).unwrap() * &t.z_bar(b, s).unwrap();
                let rhs = &t.z(b - 1, 0).unwrap() * &t.z_bar(b - 1, s).unwrap();
                assert_eq!(lhs, rhs, "n={n} b={b}");
            }
        }
    }

    #[test]
    fn bd_entries() {
        let b = VariableTable::new(AlgebraSpec::new(Series::B, 3).unwrap());
        assert_eq!(b.z_zero(0).unwrap(), y_mono(&[(3, 5, 1), (3, 9, -1)]));
        assert_eq!(
            b.z(3, 0).unwrap(),
            y_mono(&[(3, 7, 1), (3, 5, 1), (2, 8, -1)])
        );
        let d = VariableTable::new(AlgebraSpec::new(Series::D, 4).unwrap());
        assert_eq!(d.z(4, 0).unwrap(), y_mono(&[(4, 6, 1), (3, 10, -1)]));
        assert_eq!(
            d.z_bar(3, 0).unwrap(),
            y_mono(&[(2, 8, 1), (4, 10, -1), (3, 10, -1)])
        );
        assert!(d.z(5, 0).is_err());
    }
}
