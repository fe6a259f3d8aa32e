//! q-characters of type C: fundamental `T^(a)_1`, row characters
//! `T^(1)_m`, the hook family `H^(i)_k`, rectangular `T^(a)_m` from
//! determinants and Pfaffians, and the functional relations among them.
//!
//! Stored values are normalized to the base point `u`; every formula applies
//! its own shifts at the use site.

mod hseries;
mod relations;
mod skew;
mod tsystem;

pub use hseries::{
    h_series, h_table, hook_jacobi_trudi, verify_hseries, verify_product_formula, HSeries,
};
pub use relations::{verify_fundamentals, verify_tt_tq};
pub use skew::{hook_indices, index_shape, ratio_jacobi_trudi, transpose};
pub use tsystem::{rect_character, tam_jacobi_trudi, tnm_pfaffian, verify_tsystem, TValues};

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{y_mono, AlgebraSpec, LaurentPoly, VariableTable};
use crate::tableaux::{
    gen_column_tableaux, gen_row_tableaux, row_weight, tableau_weight, WeightConvention,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CharLabel {
    Fundamental { a: i64 },
    Row { m: u32 },
    Rect { a: u32, m: u32 },
    Hook { i: u32, k: u32 },
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharLabel::Fundamental { a } => write!(f, "T^({a})_1(u)"),
            CharLabel::Row { m } => write!(f, "T^(1)_{m}(u)"),
            CharLabel::Rect { a, m } => write!(f, "T^({a})_{m}(u)"),
            CharLabel::Hook { i, k } => write!(f, "H^({i})_{k}(u)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCharacter {
    pub algebra: AlgebraSpec,
    pub label: CharLabel,
    pub value: LaurentPoly,
    pub base_half: i64,
}

impl QCharacter {
    /// The expected highest-weight monomial and its expected coefficient.
    /// `None` where no such monomial is singled out.
    pub fn highest_weight(&self) -> Option<(LaurentPoly, i64)> {
        let n = self.algebra.rank();
        let big_n = self.algebra.big_n();
        let b = self.base_half;
        match self.label {
            CharLabel::Fundamental { a } if a >= 1 && a <= i64::from(n) => {
                Some((y_mono(&[(a as u32, b, 1)]), 1))
            }
            CharLabel::Row { m } => {
                let f: Vec<_> = (1..=i64::from(m))
                    .map(|j| (1, b + i64::from(m) + 1 - 2 * j, 1))
                    .collect();
                Some((y_mono(&f), 1))
            }
            CharLabel::Rect { a, m } => {
                let t = if a == n { 2 } else { 1 };
                let f: Vec<_> = (1..=i64::from(m))
                    .map(|j| (a, b + t * (i64::from(m) + 1 - 2 * j), 1))
                    .collect();
                Some((y_mono(&f), 1))
            }
            CharLabel::Hook { i, k } if k > big_n => {
                Some((hook_highest_monomial(n, i, k).shift(b), sigma(n, i)))
            }
            _ => None,
        }
    }

    /// Whether the expected highest-weight monomial occurs with the expected
    /// coefficient. `None` if the label has no such monomial.
    pub fn has_highest_weight(&self) -> Option<bool> {
        let (m, c) = self.highest_weight()?;
        let mono = &m.terms()[0];
        Some(self.value.coeff_of(&mono.exps) == c.into())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra": self.algebra.to_string(),
            "label": self.label,
            "display": self.label.to_string(),
            "monomials": self.value.len(),
            "highest_weight": self.has_highest_weight(),
            "value": self.value.to_json(),
        })
    }
}

/// `sigma_i`: `+1` for `i <= n`, `-1` for `n+1 <= i <= N-1`.
pub fn sigma(n: u32, i: u32) -> i64 {
    if i <= n {
        1
    } else {
        -1
    }
}

/// Monomial expected to lead `sigma_i H^(i)_k(u)` for `k >= N+1`, at base `u`.
pub fn hook_highest_monomial(n: u32, i: u32, k: u32) -> LaurentPoly {
    let big_n = i64::from(2 * n + 2);
    let (ii, kk) = (i64::from(i), i64::from(k));
    let mut f = Vec::new();
    let first_tail = if i == n + 1 {
        f.push((n, i64::from(n) + 2 - ii, 1));
        2
    } else {
        f.push((i.min(2 * n + 2 - i), 0, 1));
        1
    };
    for j in first_tail..=kk - big_n {
        f.push((1, big_n + 2 * j - 1 - ii, 1));
    }
    y_mono(&f)
}

/// The fundamental characters `T^(a)_1(u)` for `0 <= a <= N`, extended to
/// all integers by `T^(a) + T^(N-a) = 0` and `T^(a) = 0` for `a < 0`.
#[derive(Clone, Debug)]
pub struct Fundamentals {
    n: u32,
    table: VariableTable,
    values: Vec<LaurentPoly>,
}

impl Fundamentals {
    pub fn new(n: u32) -> Result<Self> {
        let table = VariableTable::new(AlgebraSpec::c(n)?);
        let mut values: Vec<LaurentPoly> = (0..=n)
            .into_par_iter()
            .map(|a| column_sum(&table, n, a))
            .collect::<Result<_>>()?;
        values.push(LaurentPoly::zero());
        for a in n + 2..=2 * n + 2 {
            let v = -&values[(2 * n + 2 - a) as usize];
            values.push(v);
        }
        Ok(Fundamentals { n, table, values })
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn big_n(&self) -> u32 {
        2 * self.n + 2
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    /// `T^(a)_1(u + half/2)` for any integer `a`.
    pub fn get(&self, a: i64, half: i64) -> LaurentPoly {
        if a < 0 || a > i64::from(self.big_n()) {
            return LaurentPoly::zero();
        }
        self.values[a as usize].shift(half)
    }
}

// T^(a)_1(u) = sum over admissible columns of Z_{u+a/2-1}
fn column_sum(table: &VariableTable, n: u32, a: u32) -> Result<LaurentPoly> {
    if a == 0 {
        return Ok(LaurentPoly::one());
    }
    let base = i64::from(a) - 2;
    let weights: Vec<LaurentPoly> = gen_column_tableaux(n, a)?
        .iter()
        .map(|t| tableau_weight(t, table, WeightConvention::Z, base))
        .collect::<Result<_>>()?;
    Ok(weights.into_iter().sum())
}

/// `T^(a)_1(u)` for any integer `a`.
pub fn fundamental(n: u32, a: i64) -> Result<QCharacter> {
    let f = Fundamentals::new(n)?;
    Ok(QCharacter {
        algebra: AlgebraSpec::c(n)?,
        label: CharLabel::Fundamental { a },
        value: f.get(a, 0),
        base_half: 0,
    })
}

/// `T^(1)_m(u)` as the sum over admissible rows, see
/// [`Tableau::is_admissible_row`](crate::tableaux::Tableau::is_admissible_row).
pub fn row_character(n: u32, m: u32) -> Result<QCharacter> {
    let algebra = AlgebraSpec::c(n)?;
    let table = VariableTable::new(algebra);
    let weights: Vec<LaurentPoly> = gen_row_tableaux(n, m)
        .par_iter()
        .map(|t| row_weight(t, &table, 0))
        .collect::<Result<_>>()?;
    Ok(QCharacter {
        algebra,
        label: CharLabel::Row { m },
        value: weights.into_iter().sum(),
        base_half: 0,
    })
}

/// Row characters `T^(1)_m(u)` for `0 <= m <= m_max`.
pub fn row_characters(n: u32, m_max: u32) -> Result<Vec<LaurentPoly>> {
    (0..=m_max)
        .into_par_iter()
        .map(|m| Ok(row_character(n, m)?.value))
        .collect()
}

pub(crate) fn check_rank(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidAlgebra(format!("rank {n}: need n >= 2")));
    }
    Ok(())
}

pub(crate) fn params(pairs: &[(&str, i64)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
