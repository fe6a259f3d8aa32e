//! Sparse Laurent polynomials over the integers in shift-indexed variables.
//!
//! A variable is `F_a(u + s)` where the family `F` is one of `Y`, `Q` or a
//! formal exponential, `a` is a node index and the shift `s` is stored as an
//! integer number of half units. Polynomials are kept in a canonical form:
//! monomials sorted by their exponent vectors, no repeated exponent vectors,
//! no zero coefficients. Two polynomials are equal iff their term lists are.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::CartanData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Y,
    Q,
    /// `e^{Lambda_a}`, the image of `Y_a` under the classical restriction.
    ELambda,
    /// `e^{epsilon_b}` for the orthogonal basis.
    EEps,
}

impl Family {
    fn tag(self) -> &'static str {
        match self {
            Family::Y => "Y",
            Family::Q => "Q",
            Family::ELambda => "eL",
            Family::EEps => "eE",
        }
    }

    fn shifts(self) -> bool {
        matches!(self, Family::Y | Family::Q)
    }
}

/// A ring variable. The derived order (family, index, shift) is the
/// canonical variable order used for monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarKey {
    pub family: Family,
    pub index: u32,
    pub half_shift: i64,
}

impl VarKey {
    pub fn y(index: u32, half_shift: i64) -> Self {
        debug_assert!(index >= 1, "Y_0 = 1 is never stored");
        VarKey {
            family: Family::Y,
            index,
            half_shift,
        }
    }

    pub fn q(index: u32, half_shift: i64) -> Self {
        debug_assert!(index >= 1);
        VarKey {
            family: Family::Q,
            index,
            half_shift,
        }
    }

    pub fn e_lambda(index: u32) -> Self {
        VarKey {
            family: Family::ELambda,
            index,
            half_shift: 0,
        }
    }

    pub fn e_eps(index: u32) -> Self {
        VarKey {
            family: Family::EEps,
            index,
            half_shift: 0,
        }
    }

    pub fn shifted(self, half: i64) -> Self {
        if self.family.shifts() {
            VarKey {
                half_shift: self.half_shift + half,
                ..self
            }
        } else {
            self
        }
    }
}

/// Formats a half-unit shift as an argument `u`, `u+1`, `u-3/2`, ...
pub fn fmt_arg(half: i64) -> String {
    if half == 0 {
        return "u".to_string();
    }
    let sign = if half < 0 { '-' } else { '+' };
    let abs = half.abs();
    if abs % 2 == 0 {
        format!("u{sign}{}", abs / 2)
    } else {
        format!("u{sign}{abs}/2")
    }
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.shifts() {
            write!(
                f,
                "{}[{}]({})",
                self.family.tag(),
                self.index,
                fmt_arg(self.half_shift)
            )
        } else {
            write!(f, "{}[{}]", self.family.tag(), self.index)
        }
    }
}

pub type Exponents = SmallVec<[(VarKey, i32); 6]>;

/// One signed term `coeff * prod var^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub exps: Exponents,
}

impl Monomial {
    /// Builds a monomial, merging repeated variables and dropping zero
    /// exponents.
    pub fn new(coeff: impl Into<BigInt>, vars: impl IntoIterator<Item = (VarKey, i32)>) -> Self {
        let mut exps: Exponents = vars.into_iter().collect();
        exps.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Exponents = SmallVec::with_capacity(exps.len());
        for (k, e) in exps {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += e,
                _ => merged.push((k, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        Monomial {
            coeff: coeff.into(),
            exps: merged,
        }
    }

    pub fn exponent_of(&self, key: &VarKey) -> i32 {
        self.exps
            .binary_search_by(|(k, _)| k.cmp(key))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }
}

pub(crate) fn mul_exps(a: &[(VarKey, i32)], b: &[(VarKey, i32)]) -> Exponents {
    let mut out: Exponents = SmallVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<Monomial>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: vec![Monomial {
                coeff: c,
                exps: SmallVec::new(),
            }],
        }
    }

    pub fn var(key: VarKey) -> Self {
        Self::var_pow(key, 1)
    }

    pub fn var_pow(key: VarKey, exp: i32) -> Self {
        Self::from_monomial(Monomial::new(1, [(key, exp)]))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        if m.coeff.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![m] }
    }

    /// Collects arbitrary (possibly repeated) terms into canonical form.
    pub fn from_monomials(it: impl IntoIterator<Item = Monomial>) -> Self {
        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        for m in it {
            if m.coeff.is_zero() {
                continue;
            }
            *acc.entry(m.exps).or_insert_with(BigInt::zero) += m.coeff;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Exponents, BigInt>) -> Self {
        let mut terms: Vec<Monomial> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| Monomial { coeff, exps })
            .collect();
        terms.sort_unstable_by(|a, b| a.exps.cmp(&b.exps));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [m] if m.exps.is_empty() => Some(m.coeff.clone()),
            _ => None,
        }
    }

    /// Coefficient of the monomial with the given variables (any order).
    pub fn coeff_of(&self, vars: &[(VarKey, i32)]) -> BigInt {
        let key = Monomial::new(1, vars.iter().copied()).exps;
        self.terms
            .binary_search_by(|m| m.exps.cmp(&key))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn variables(&self) -> BTreeSet<VarKey> {
        self.terms
            .iter()
            .flat_map(|m| m.exps.iter().map(|(k, _)| *k))
            .collect()
    }

    pub fn only_family(&self, family: Family) -> bool {
        self.terms
            .iter()
            .all(|m| m.exps.iter().all(|(k, _)| k.family == family))
    }

    /// `u -> u + half/2` on every Y and Q variable.
    pub fn shift(&self, half: i64) -> Self {
        if half == 0 {
            return self.clone();
        }
        // a uniform shift of Y/Q keys preserves both variable and term order
        let terms = self
            .terms
            .iter()
            .map(|m| Monomial {
                coeff: m.coeff.clone(),
                exps: m.exps.iter().map(|(k, e)| (k.shifted(half), *e)).collect(),
            })
            .collect();
        LaurentPoly { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|m| Monomial {
                coeff: &m.coeff * c,
                exps: m.exps.clone(),
            })
            .collect();
        LaurentPoly { terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        if m.coeff.is_zero() {
            return Self::zero();
        }
        let mut terms: Vec<Monomial> = self
            .terms
            .iter()
            .map(|t| Monomial {
                coeff: &t.coeff * &m.coeff,
                exps: mul_exps(&t.exps, &m.exps),
            })
            .collect();
        terms.sort_unstable_by(|a, b| a.exps.cmp(&b.exps));
        LaurentPoly { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes every variable by a unit monomial (coefficient 1).
    /// This is a ring homomorphism.
    pub fn map_vars<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&VarKey) -> Result<Vec<(VarKey, i32)>>,
    {
        let mut cache: HashMap<VarKey, Vec<(VarKey, i32)>> = HashMap::new();
        let mut out = Vec::with_capacity(self.terms.len());
        for m in &self.terms {
            let mut vars = Vec::new();
            for (k, e) in &m.exps {
                if !cache.contains_key(k) {
                    cache.insert(*k, f(k)?);
                }
                vars.extend(cache[k].iter().map(|(k2, e2)| (*k2, e2 * e)));
            }
            out.push(Monomial::new(m.coeff.clone(), vars));
        }
        Ok(Self::from_monomials(out))
    }

    /// Rewrites every `Y_a(u+s)` as `Q_a(u+s-t/2) / Q_a(u+s+t/2)` with
    /// `t = (alpha_a|alpha_a)`. Rejects anything that is not a Y-variable.
    pub fn y_to_q(&self, cartan: &CartanData) -> Result<Self> {
        self.map_vars(|k| match k.family {
            Family::Y => Ok(y_image(k, cartan)),
            _ => Err(Error::NotInY(*k)),
        })
    }

    /// Like [`Self::y_to_q`] but leaves Q-variables in place, so it also
    /// accepts the mixed Y/Q templates of the middle x-variables.
    pub fn to_q_form(&self, cartan: &CartanData) -> Result<Self> {
        self.map_vars(|k| match k.family {
            Family::Y => Ok(y_image(k, cartan)),
            Family::Q => Ok(vec![(*k, 1)]),
            _ => Err(Error::NotInY(*k)),
        })
    }

    /// Exact evaluation with values supplied by `value`. Values are cached
    /// per variable, so the callback is invoked once per distinct key.
    pub fn eval_with<F>(&self, mut value: F) -> Result<BigRational>
    where
        F: FnMut(&VarKey) -> Result<BigRational>,
    {
        let mut cache: HashMap<VarKey, BigRational> = HashMap::new();
        let mut total = BigRational::zero();
        for m in &self.terms {
            let mut term = BigRational::from_integer(m.coeff.clone());
            for (k, e) in &m.exps {
                if !cache.contains_key(k) {
                    cache.insert(*k, value(k)?);
                }
                let v = &cache[k];
                if v.is_zero() && *e < 0 {
                    return Err(Error::ZeroDivision(k.to_string()));
                }
                term *= rational_pow(v, *e);
            }
            total += term;
        }
        Ok(total)
    }

    pub fn eval_rational(&self, assign: &HashMap<VarKey, BigRational>) -> Result<BigRational> {
        self.eval_with(|k| assign.get(k).cloned().ok_or(Error::MissingAssignment(*k)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(
            self.terms
                .iter()
                .map(MonomialJson::from)
                .collect::<Vec<_>>(),
        )
        .expect("monomials serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let ms: Vec<MonomialJson> = serde_json::from_value(v.clone())
            .map_err(|e| Error::Config(format!("bad polynomial json: {e}")))?;
        let mut out = Vec::with_capacity(ms.len());
        for m in ms {
            out.push(m.into_monomial()?);
        }
        Ok(Self::from_monomials(out))
    }
}

fn y_image(k: &VarKey, cartan: &CartanData) -> Vec<(VarKey, i32)> {
    let t = cartan.norm(k.index);
    vec![
        (VarKey::q(k.index, k.half_shift - t), 1),
        (VarKey::q(k.index, k.half_shift + t), -1),
    ]
}

fn rational_pow(v: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { v.recip() } else { v.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    let (x, y) = (&a.terms, &b.terms);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let fix = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < x.len() && j < y.len() {
        match x[i].exps.cmp(&y[j].exps) {
            std::cmp::Ordering::Less => {
                out.push(x[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(Monomial {
                    coeff: fix(&y[j].coeff),
                    exps: y[j].exps.clone(),
                });
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b {
                    &x[i].coeff - &y[j].coeff
                } else {
                    &x[i].coeff + &y[j].coeff
                };
                if !c.is_zero() {
                    out.push(Monomial {
                        coeff: c,
                        exps: x[i].exps.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(x[i..].iter().cloned());
    out.extend(y[j..].iter().map(|m| Monomial {
        coeff: fix(&m.coeff),
        exps: m.exps.clone(),
    }));
    LaurentPoly { terms: out }
}

fn product(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    if a.len() == 1 {
        return b.mul_monomial(&a.terms[0]);
    }
    if b.len() == 1 {
        return a.mul_monomial(&b.terms[0]);
    }
    let mut acc: HashMap<Exponents, BigInt> = HashMap::with_capacity(a.len() * b.len());
    for x in &a.terms {
        for y in &b.terms {
            let e = mul_exps(&x.exps, &y.exps);
            let c = &x.coeff * &y.coeff;
            match acc.get_mut(&e) {
                Some(v) => *v += c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
    }
    LaurentPoly::from_map(acc)
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        product(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|m| Monomial {
                    coeff: -&m.coeff,
                    exps: m.exps.clone(),
                })
                .collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$f(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for m in &mut self.terms {
            m.coeff = -std::mem::take(&mut m.coeff);
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, true);
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        // batch the accumulation: merging one by one is quadratic
        LaurentPoly::from_monomials(iter.flat_map(|p| p.terms))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (k, e) in &self.exps {
            write!(f, " * {k}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical text form: terms in canonical order joined by ` + `.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct VarJson {
    fam: Family,
    idx: u32,
    half_shift: i64,
    exp: i32,
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    coeff: String,
    vars: Vec<VarJson>,
}

impl From<&Monomial> for MonomialJson {
    fn from(m: &Monomial) -> Self {
        MonomialJson {
            coeff: m.coeff.to_string(),
            vars: m
                .exps
                .iter()
                .map(|(k, e)| VarJson {
                    fam: k.family,
                    idx: k.index,
                    half_shift: k.half_shift,
                    exp: *e,
                })
                .collect(),
        }
    }
}

impl MonomialJson {
    fn into_monomial(self) -> Result<Monomial> {
        let coeff: BigInt = self
            .coeff
            .parse()
            .map_err(|_| Error::Config(format!("bad coefficient {:?}", self.coeff)))?;
        let vars = self.vars.into_iter().map(|v| {
            (
                VarKey {
                    family: v.fam,
                    index: v.idx,
                    half_shift: v.half_shift,
                },
                v.exp,
            )
        });
        Ok(Monomial::new(coeff, vars))
    }
}

/// Largest bit length among numerator and denominator.
pub fn rational_bits(r: &BigRational) -> u64 {
    r.numer().abs().bits().max(r.denom().bits())
}


#[cfg(test)]
mod ring_laws {
    use proptest::prelude::*;

    use super::*;
    use crate::ring::AlgebraSpec;

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        let var = (1u32..=3, -3i64..=3, -2i32..=2).prop_map(|(i, h, e)| (VarKey::y(i, h), e));
        (-3i64..=3, prop::collection::vec(var, 0..3)).prop_map(|(c, vs)| Monomial::new(c, vs))
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(arb_monomial(), 0..4).prop_map(LaurentPoly::from_monomials)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&(&p - &p) * &q, LaurentPoly::zero());
            prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
        }
    }

    proptest! {
        #[test]
        fn construction_order_is_irrelevant(
            ms in prop::collection::vec(arb_monomial(), 0..6).prop_shuffle(),
            seed in any::<u64>(),
        ) {
            let mut shuffled = ms.clone();
            let k = if ms.is_empty() { 0 } else { (seed % ms.len() as u64) as usize };
            shuffled.rotate_left(k);
            shuffled.reverse();
            let a = LaurentPoly::from_monomials(ms);
            let b = LaurentPoly::from_monomials(shuffled);
            prop_assert_eq!(a.to_json().to_string(), b.to_json().to_string());
            prop_assert_eq!(a.to_string(), b.to_string());
        }

        #[test]
        fn y_to_q_is_injective_homomorphism(p in arb_poly(), q in arb_poly()) {
            let cd = AlgebraSpec::c(3).unwrap().cartan();
            let (pq, qq) = (p.y_to_q(&cd).unwrap(), q.y_to_q(&cd).unwrap());
            prop_assert_eq!((&p * &q).y_to_q(&cd).unwrap(), &pq * &qq);
            prop_assert_eq!((&p + &q).y_to_q(&cd).unwrap(), &pq + &qq);
            prop_assert_eq!(pq == qq, p == q);
        }
    }
}
