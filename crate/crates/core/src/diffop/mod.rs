//! Difference operators `sum_j c_j(u) D^j` with `D g(u) = g(u+1) D`.
//!
//! Operators are either polynomial in `D` or power series truncated at an
//! explicit order. Products of a polynomial and a series are series; two
//! series of different orders multiply to the smaller order.

mod c_ops;

pub use c_ops::{
    build_l_c, build_lj_c, extract_e, lj_constant_term, q_j, raw_product, verify_forms,
    EpsilonChoice, LForm,
};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ring::{CartanData, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Polynomial,
    /// Coefficients are known for degrees `0..=order` only.
    Series {
        order: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    coeffs: BTreeMap<usize, LaurentPoly>,
    kind: OpKind,
}

impl DiffOp {
    pub fn polynomial(coeffs: impl IntoIterator<Item = (usize, LaurentPoly)>) -> Self {
        let mut map: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (d, c) in coeffs {
            let slot = map.entry(d).or_insert_with(LaurentPoly::zero);
            *slot += &c;
        }
        map.retain(|_, c| !c.is_zero());
        DiffOp {
            coeffs: map,
            kind: OpKind::Polynomial,
        }
    }

    pub fn zero() -> Self {
        Self::polynomial([])
    }

    pub fn unit() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::polynomial([(0, c)])
    }

    /// `c(u) D^deg`.
    pub fn term(c: LaurentPoly, deg: usize) -> Self {
        Self::polynomial([(deg, c)])
    }

    /// `a(u) + b(u) D^deg`, the shape of every elementary factor.
    pub fn binomial(a: LaurentPoly, b: LaurentPoly, deg: usize) -> Self {
        Self::polynomial([(0, a), (deg, b)])
    }

    /// Reinterprets (and truncates) as a series of the given order.
    pub fn truncated(mut self, order: usize) -> Self {
        self.coeffs.retain(|d, _| *d <= order);
        self.kind = OpKind::Series { order };
        self
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    pub fn order(&self) -> Option<usize> {
        match self.kind {
            OpKind::Polynomial => None,
            OpKind::Series { order } => Some(order),
        }
    }

    pub fn coeff(&self, deg: usize) -> LaurentPoly {
        self.coeffs
            .get(&deg)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn combined_kind(&self, other: &Self) -> OpKind {
        match (self.kind, other.kind) {
            (OpKind::Polynomial, k) | (k, OpKind::Polynomial) => k,
            (OpKind::Series { order: a }, OpKind::Series { order: b }) => {
                if a != b {
                    log::warn!(
                        "combining series truncated at {a} and {b}; keeping {}",
                        a.min(b)
                    );
                }
                OpKind::Series { order: a.min(b) }
            }
        }
    }

    fn finish(coeffs: BTreeMap<usize, LaurentPoly>, kind: OpKind) -> Self {
        let mut coeffs = coeffs;
        coeffs.retain(|_, c| !c.is_zero());
        let op = DiffOp { coeffs, kind };
        match kind {
            OpKind::Polynomial => op,
            OpKind::Series { order } => op.truncated(order),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let kind = self.combined_kind(other);
        let limit = match kind {
            OpKind::Polynomial => usize::MAX,
            OpKind::Series { order } => order,
        };
        let mut acc: BTreeMap<usize, Vec<LaurentPoly>> = BTreeMap::new();
        for (&i, c) in &self.coeffs {
            for (&j, d) in &other.coeffs {
                if i + j > limit {
                    break;
                }
                acc.entry(i + j)
                    .or_default()
                    .push(c * &d.shift(2 * i as i64));
            }
        }
        let mut coeffs = BTreeMap::new();
        for (deg, parts) in acc {
            let s: LaurentPoly = parts.into_iter().sum();
            if !s.is_zero() {
                coeffs.insert(deg, s);
            }
        }
        Self::finish(coeffs, kind)
    }

    pub fn add(&self, other: &Self) -> Self {
        let kind = self.combined_kind(other);
        let mut coeffs = self.coeffs.clone();
        for (&d, c) in &other.coeffs {
            let slot = coeffs.entry(d).or_insert_with(LaurentPoly::zero);
            *slot += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self::finish(coeffs, kind)
    }

    pub fn neg(&self) -> Self {
        DiffOp {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
            kind: self.kind,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Left multiplication by a function of `u`.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(d, x)| (*d, c * x))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        DiffOp {
            coeffs,
            kind: self.kind,
        }
    }

    /// Applies a ring map to every coefficient.
    pub fn try_map_coeffs<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&LaurentPoly) -> Result<LaurentPoly>,
    {
        let mut coeffs = BTreeMap::new();
        for (d, c) in &self.coeffs {
            coeffs.insert(*d, f(c)?);
        }
        Ok(Self::finish(coeffs, self.kind))
    }

    /// All coefficients rewritten in Q-variables.
    pub fn to_q_form(&self, cartan: &CartanData) -> Result<Self> {
        self.try_map_coeffs(|c| c.to_q_form(cartan))
    }

    /// Inverse as a power series in `D`, exact through `D^order`.
    ///
    /// Requires the constant term to be `+1` or `-1`.
    pub fn inverse_series(&self, order: usize) -> Result<Self> {
        let a0 = self.coeff(0).as_constant().ok_or(Error::NonUnitConstant)?;
        if !a0.abs().is_one() {
            return Err(Error::NonUnitConstant);
        }
        if let Some(have) = self.order() {
            if have < order {
                return Err(Error::Truncation { have, need: order });
            }
        }
        let mut b: Vec<LaurentPoly> = vec![LaurentPoly::constant(a0.clone())];
        for m in 1..=order {
            let mut parts = Vec::new();
            for (&j, aj) in self.coeffs.range(1..=m) {
                parts.push(aj * &b[m - j].shift(2 * j as i64));
            }
            let s: LaurentPoly = parts.into_iter().sum();
            b.push(-s.scale(&a0));
        }
        Ok(Self::finish(
            b.into_iter().enumerate().collect(),
            OpKind::Series { order },
        ))
    }

    /// Ordered product `ops[0] ops[1] ... ops[k-1]`.
    pub fn product<'a>(ops: impl IntoIterator<Item = &'a DiffOp>) -> Self {
        ops.into_iter().fold(Self::unit(), |acc, op| acc.mul(op))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(d, c)| serde_json::json!({"deg": d, "coeff": c.to_json()}))
            .collect();
        let order = self.order();
        serde_json::json!({"order": order, "coeffs": coeffs})
    }
}

/// One line per nonzero degree: `D^j: <coefficient>`.
impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(order) = self.order() {
            writeln!(f, "series truncated at D^{order}")?;
        }
        if self.coeffs.is_empty() {
            return writeln!(f, "0");
        }
        for (d, c) in &self.coeffs {
            writeln!(f, "D^{d}: {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::VarKey;

    fn y(a: u32, h: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::y(a, h))
    }

    #[test]
    fn twist_rule() {
        let d = DiffOp::term(LaurentPoly::one(), 1);
        let prod = d.mul(&DiffOp::constant(y(1, 0)));
        assert_eq!(prod, DiffOp::term(y(1, 2), 1));
    }

    #[test]
    fn unit_is_neutral() {
        let op = DiffOp::binomial(LaurentPoly::one(), -y(1, 0), 1);
        assert_eq!(op.mul(&DiffOp::unit()), op);
        assert_eq!(DiffOp::unit().mul(&op), op);
    }

    #[test]
    fn two_factor_expansion() {
        let f1 = DiffOp::binomial(LaurentPoly::one(), -y(1, 0), 1);
        let f2 = DiffOp::binomial(LaurentPoly::one(), -y(2, 0), 1);
        let p = f1.mul(&f2);
        assert_eq!(p.coeff(0), LaurentPoly::one());
        assert_eq!(p.coeff(1), -(&y(1, 0) + &y(2, 0)));
        assert_eq!(p.coeff(2), &y(1, 0) * &y(2, 2));
    }

    #[test]
    fn geometric_inverse() {
        let c = y(1, 0);
        let op = DiffOp::binomial(LaurentPoly::one(), -c.clone(), 1);
        let inv = op.inverse_series(2).unwrap();
        assert_eq!(inv.coeff(0), LaurentPoly::one());
        assert_eq!(inv.coeff(1), c);
        assert_eq!(inv.coeff(2), &c * &c.shift(2));
        assert_eq!(
            DiffOp::unit().inverse_series(3).unwrap(),
            DiffOp::unit().truncated(3)
        );
        let prod = op.mul(&inv);
        assert_eq!(prod, DiffOp::unit().truncated(2));
    }

    #[test]
    fn non_unit_constant_rejected() {
        let op = DiffOp::binomial(LaurentPoly::constant(2), y(1, 0), 1);
        assert!(matches!(op.inverse_series(2), Err(Error::NonUnitConstant)));
        let op = DiffOp::binomial(y(1, 0), y(1, 0), 1);
        assert!(matches!(op.inverse_series(2), Err(Error::NonUnitConstant)));
    }

    #[test]
    fn series_orders_combine_to_min() {
        let a = DiffOp::unit().truncated(3);
        let b = DiffOp::term(LaurentPoly::one(), 2).truncated(5);
        let p = a.mul(&b);
        assert_eq!(p.order(), Some(3));
        assert_eq!(b.mul(&b), DiffOp::term(LaurentPoly::one(), 4).truncated(5));
        assert!(b.mul(&b).mul(&b).is_zero());
    }
}
