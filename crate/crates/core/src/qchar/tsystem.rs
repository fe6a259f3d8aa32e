//! Rectangular characters `T^(a)_m` as determinants (`a < n`) and Pfaffians
//! (`a = n`) of fundamentals, and the T-system relations they satisfy.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::{check_rank, params, CharLabel, Fundamentals, QCharacter};
use crate::error::{Error, Result};
use crate::linalg::{check_antisymmetric, det, pfaffian};
use crate::report::SuiteReport;
use crate::ring::{AlgebraSpec, LaurentPoly};

/// `T^(a)_m(u) = det_{1<=j,l<=m} T^(a-j+l)_1(u + (j+l-m-1)/2)`.
pub fn tam_jacobi_trudi(f: &Fundamentals, a: u32, m: u32) -> Result<LaurentPoly> {
    let n = f.rank();
    if a == 0 || a >= n {
        return Err(Error::OutOfRange(format!(
            "determinant form needs 1 <= a <= {}, got {a}",
            n - 1
        )));
    }
    let (ai, mi) = (i64::from(a), i64::from(m));
    let mat: Vec<Vec<LaurentPoly>> = (1..=mi)
        .map(|j| {
            (1..=mi)
                .map(|l| f.get(ai - j + l, j + l - mi - 1))
                .collect()
        })
        .collect();
    det(&mat)
}

/// The `2m x 2m` array `T^(n+1-j+l)_1(u + (j+l-2m-1)/2)`.
pub fn pfaffian_array(f: &Fundamentals, m: u32) -> Vec<Vec<LaurentPoly>> {
    let (ni, mi) = (i64::from(f.rank()), i64::from(m));
    (1..=2 * mi)
        .map(|j| {
            (1..=2 * mi)
                .map(|l| f.get(ni + 1 - j + l, j + l - 2 * mi - 1))
                .collect()
        })
        .collect()
}

/// `T^(n)_m(u) = (-1)^m pf(...)`; the array is checked to be antisymmetric.
pub fn tnm_pfaffian(f: &Fundamentals, m: u32) -> Result<LaurentPoly> {
    let arr = pfaffian_array(f, m);
    check_antisymmetric(&arr)?;
    let p = pfaffian(&arr)?;
    Ok(if m % 2 == 0 { p } else { -p })
}

/// `T^(a)_m(u)` for `0 <= a <= n`, with `T^(0)_m = T^(a)_0 = 1`.
pub fn rect_value(f: &Fundamentals, a: u32, m: u32) -> Result<LaurentPoly> {
    let n = f.rank();
    if a == 0 || m == 0 {
        Ok(LaurentPoly::one())
    } else if a < n {
        tam_jacobi_trudi(f, a, m)
    } else if a == n {
        tnm_pfaffian(f, m)
    } else {
        Err(Error::OutOfRange(format!("T^({a})_m needs a <= {n}")))
    }
}

/// `T^(a)_m(u)` as a labelled character.
pub fn rect_character(n: u32, a: u32, m: u32) -> Result<QCharacter> {
    check_rank(n)?;
    let f = Fundamentals::new(n)?;
    Ok(QCharacter {
        algebra: AlgebraSpec::c(n)?,
        label: CharLabel::Rect { a, m },
        value: rect_value(&f, a, m)?,
        base_half: 0,
    })
}

/// A precomputed set of `T^(a)_m(u)`.
pub struct TValues {
    values: HashMap<(u32, u32), LaurentPoly>,
}

impl TValues {
    pub fn compute(f: &Fundamentals, needed: &BTreeSet<(u32, u32)>) -> Result<Self> {
        let list: Vec<(u32, u32)> = needed.iter().copied().collect();
        let vals: Vec<LaurentPoly> = list
            .par_iter()
            .map(|&(a, m)| rect_value(f, a, m))
            .collect::<Result<_>>()?;
        Ok(TValues {
            values: list.into_iter().zip(vals).collect(),
        })
    }

    /// `T^(a)_m(u + half/2)`.
    pub fn get(&self, a: u32, m: u32, half: i64) -> LaurentPoly {
        if a == 0 || m == 0 {
            return LaurentPoly::one();
        }
        self.values
            .get(&(a, m))
            .unwrap_or_else(|| panic!("T^({a})_{m} was not precomputed"))
            .shift(half)
    }
}

// (lhs, rhs) pairs: each factor is (a, m, half)
type Product = Vec<(u32, u32, i64)>;

struct Relation {
    name: &'static str,
    param: i64,
    a: u32,
    lhs: Product,
    rhs: Vec<Product>,
}

fn relations(n: u32, m_max: u32, pf_max: u32) -> Vec<Relation> {
    let mut out = Vec::new();
    for a in 1..=n.saturating_sub(2) {
        for m in 1..=m_max {
            out.push(Relation {
                name: "T(a,m)(u-1/2)T(a,m)(u+1/2) = T(a,m+1)T(a,m-1) + T(a-1,m)T(a+1,m)",
                param: m.into(),
                a,
                lhs: vec![(a, m, -1), (a, m, 1)],
                rhs: vec![
                    vec![(a, m + 1, 0), (a, m - 1, 0)],
                    vec![(a - 1, m, 0), (a + 1, m, 0)],
                ],
            });
        }
    }
    let b = n - 1;
    for m in (1..).take_while(|m| 2 * m <= m_max) {
        out.push(Relation {
            name: "T(n-1,2m)(u-1/2)T(n-1,2m)(u+1/2) = T(n-1,2m+1)T(n-1,2m-1) + T(n-2,2m)T(n,m)(u-1/2)T(n,m)(u+1/2)",
            param: m.into(),
            a: b,
            lhs: vec![(b, 2 * m, -1), (b, 2 * m, 1)],
            rhs: vec![vec![(b, 2 * m + 1, 0), (b, 2 * m - 1, 0)], vec![(b - 1, 2 * m, 0), (n, m, -1), (n, m, 1)]],
        });
    }
    for m in (0..).take_while(|m| 2 * m + 1 <= m_max) {
        out.push(Relation {
            name: "T(n-1,2m+1)(u-1/2)T(n-1,2m+1)(u+1/2) = T(n-1,2m+2)T(n-1,2m) + T(n-2,2m+1)T(n,m)T(n,m+1)",
            param: m.into(),
            a: b,
            lhs: vec![(b, 2 * m + 1, -1), (b, 2 * m + 1, 1)],
            rhs: vec![vec![(b, 2 * m + 2, 0), (b, 2 * m, 0)], vec![(b - 1, 2 * m + 1, 0), (n, m, 0), (n, m + 1, 0)]],
        });
    }
    for m in 1..=pf_max {
        out.push(Relation {
            name: "T(n,m)(u-1)T(n,m)(u+1) = T(n,m+1)T(n,m-1) + T(n-1,2m)",
            param: m.into(),
            a: n,
            lhs: vec![(n, m, -2), (n, m, 2)],
            rhs: vec![vec![(n, m + 1, 0), (n, m - 1, 0)], vec![(b, 2 * m, 0)]],
        });
    }
    out
}

fn product(t: &TValues, p: &Product) -> LaurentPoly {
    p.iter()
        .fold(LaurentPoly::one(), |acc, &(a, m, h)| &acc * &t.get(a, m, h))
}

/// All T-system relations for `T^(a)_m` with `a < n`, `m <= m_max` on the
/// left-hand side of the first three families, and `m <= pf_max` in the
/// family for `a = n`. Both sides are fully expanded and compared.
pub fn verify_tsystem(n: u32, m_max: u32, pf_max: u32) -> Result<SuiteReport> {
    check_rank(n)?;
    if m_max == 0 {
        return Err(Error::OutOfRange("m_max must be at least 1".into()));
    }
    let f = Fundamentals::new(n)?;
    let rels = relations(n, m_max, pf_max);
    let needed: BTreeSet<(u32, u32)> = rels
        .iter()
        .flat_map(|r| {
            r.lhs
                .iter()
                .chain(r.rhs.iter().flatten())
                .map(|&(a, m, _)| (a, m))
        })
        .filter(|&(a, m)| a > 0 && m > 0)
        .collect();
    log::info!(
        "t-system n={n}: {} relations, {} rectangular characters",
        rels.len(),
        needed.len()
    );
    let t = TValues::compute(&f, &needed)?;
    let sides: Vec<(LaurentPoly, LaurentPoly)> = rels
        .par_iter()
        .map(|r| {
            (
                product(&t, &r.lhs),
                r.rhs.iter().map(|p| product(&t, p)).sum(),
            )
        })
        .collect();
    let mut report = SuiteReport::new("tsystem");
    for (r, (lhs, rhs)) in rels.iter().zip(&sides) {
        report.record_eq(
            r.name,
            params(&[("n", n.into()), ("a", r.a.into()), ("m", r.param)]),
            lhs,
            rhs,
        );
    }
    for &(a, m) in &needed {
        let c = QCharacter {
            algebra: AlgebraSpec::c(n)?,
            label: CharLabel::Rect { a, m },
            value: t.get(a, m, 0),
            base_half: 0,
        };
        let ok = c.has_highest_weight() == Some(true);
        report.record(
            "rectangular character has its highest-weight monomial",
            params(&[("n", n.into()), ("a", a.into()), ("m", m.into())]),
            ok,
            None,
        );
    }
    Ok(report)
}
