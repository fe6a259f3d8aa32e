//! Column, row and x-alphabet tableaux, their weights, and the cancellation
//! bijection between the two leftover sums of the x-expansion.

mod cancel;
mod ssyt;

pub use cancel::{
    cancellation_suite, enumerate_v, enumerate_w, in_v, in_v_b, in_v_lm, in_w,
    maximal_breaking_pair, sigma_b, sigma_full, tau_b, tau_full, verify_bijection,
    verify_cancellation, verify_rank_nine_chain, CancellationReport, RANK_NINE_CHAIN,
};

pub use ssyt::{skew_ssyt, SkewShape};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, VariableTable};

/// A letter of `J = {1 < ... < n < n~ < ... < 1~}`, or one of the two middle
/// positions `n+1`, `n+2` of the x-alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    Plain(u32),
    Bar(u32),
    Mid(u32),
}

impl Letter {
    /// Position in the x-alphabet `1..=N`; this also realizes the order of J.
    pub fn position(self, n: u32) -> u32 {
        match self {
            Letter::Plain(a) => a,
            Letter::Mid(p) => p,
            Letter::Bar(a) => 2 * n + 3 - a,
        }
    }

    pub fn from_position(pos: u32, n: u32) -> Result<Letter> {
        match pos {
            p if (1..=n).contains(&p) => Ok(Letter::Plain(p)),
            p if p == n + 1 || p == n + 2 => Ok(Letter::Mid(p)),
            p if p > n + 2 && p <= 2 * n + 2 => Ok(Letter::Bar(2 * n + 3 - p)),
            p => Err(Error::OutOfRange(format!("x position {p} for rank {n}"))),
        }
    }

    pub fn cmp_in(self, other: Letter, n: u32) -> Ordering {
        self.position(n).cmp(&other.position(n))
    }

    fn to_json(self) -> serde_json::Value {
        match self {
            Letter::Plain(v) | Letter::Mid(v) => serde_json::json!({"bar": false, "v": v}),
            Letter::Bar(v) => serde_json::json!({"bar": true, "v": v}),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Plain(a) => write!(f, "{a}"),
            Letter::Bar(a) => write!(f, "{a}~"),
            Letter::Mid(p) => write!(f, "[{p}]"),
        }
    }
}

/// An array of letters. No ordering condition is assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub rank: u32,
    pub entries: Vec<Letter>,
}

impl Tableau {
    pub fn new(rank: u32, entries: Vec<Letter>) -> Self {
        Tableau { rank, entries }
    }

    /// Parses `"3 5 9 9~ 3~"`; middle x-positions are written `[p]`.
    pub fn parse(rank: u32, s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::Config(format!("bad letter {tok:?}"));
            let letter = if let Some(v) = tok.strip_suffix('~') {
                Letter::Bar(v.parse().map_err(|_| bad())?)
            } else if let Some(v) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                Letter::Mid(v.parse().map_err(|_| bad())?)
            } else {
                Letter::Plain(tok.parse().map_err(|_| bad())?)
            };
            entries.push(letter);
        }
        Ok(Tableau { rank, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[0].cmp_in(w[1], self.rank) == Ordering::Less)
    }

    /// Every `(c, c~)` pair at 1-based positions `k`, `l` obeys `n + k - l >= c`.
    pub fn satisfies_pair_condition(&self) -> bool {
        self.breaking_pairs().next().is_none()
    }

    /// All `(c, k, l)` with `t_k = c`, `t_l = c~` and `n + k - l < c`
    /// (0-based positions).
    pub fn breaking_pairs(&self) -> impl Iterator<Item = (u32, usize, usize)> + '_ {
        let n = i64::from(self.rank);
        self.entries.iter().enumerate().flat_map(move |(k, x)| {
            self.entries
                .iter()
                .enumerate()
                .filter_map(move |(l, y)| match (x, y) {
                    (Letter::Plain(c), Letter::Bar(d))
                        if c == d && n + (k as i64) - (l as i64) < i64::from(*c) =>
                    {
                        Some((*c, k, l))
                    }
                    _ => None,
                })
        })
    }

    /// Strictly increasing and satisfying the pair condition.
    pub fn is_admissible_column(&self) -> bool {
        self.is_strictly_increasing() && self.satisfies_pair_condition()
    }

    /// Consecutive letters weakly increase, except for `n~ n` descents; a
    /// descent may not be preceded by `n~` nor followed by `n`, so the
    /// letters `n`, `n~` read `n..n (n~ n)..(n~ n) n~..n~`.
    pub fn is_admissible_row(&self) -> bool {
        let n = self.rank;
        let e = &self.entries;
        let descent = |k: usize| e[k] == Letter::Bar(n) && e[k + 1] == Letter::Plain(n);
        (0..e.len().saturating_sub(1)).all(|k| {
            if !descent(k) {
                return e[k].cmp_in(e[k + 1], n) != Ordering::Greater;
            }
            let before_ok = k == 0 || e[k - 1] != Letter::Bar(n);
            let after_ok = k + 2 >= e.len() || e[k + 2] != Letter::Plain(n);
            before_ok && after_ok
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.entries.iter().map(|l| l.to_json()).collect())
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// J in increasing order.
pub fn alphabet(n: u32) -> Vec<Letter> {
    (1..=n)
        .map(Letter::Plain)
        .chain((1..=n).rev().map(Letter::Bar))
        .collect()
}

pub(crate) fn increasing_subsets(letters: &[Letter], size: usize) -> Vec<Vec<Letter>> {
    fn rec(
        letters: &[Letter],
        size: usize,
        start: usize,
        cur: &mut Vec<Letter>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = size - cur.len();
        for i in start..=letters.len().saturating_sub(need) {
            cur.push(letters[i]);
            rec(letters, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= letters.len() {
        rec(letters, size, 0, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

/// Admissible columns of length `a`, in lexicographic order.
pub fn gen_column_tableaux(n: u32, a: u32) -> Result<Vec<Tableau>> {
    if a > n {
        return Err(Error::OutOfRange(format!(
            "column length {a} exceeds rank {n}"
        )));
    }
    Ok(increasing_subsets(&alphabet(n), a as usize)
        .into_iter()
        .map(|e| Tableau::new(n, e))
        .filter(|t| t.satisfies_pair_condition())
        .collect())
}

/// All strictly increasing columns over J of length `a`, admissible or not.
pub fn gen_increasing_columns(n: u32, a: u32) -> Vec<Tableau> {
    increasing_subsets(&alphabet(n), a as usize)
        .into_iter()
        .map(|e| Tableau::new(n, e))
        .collect()
}

/// Admissible rows of length `m`, in lexicographic order.
pub fn gen_row_tableaux(n: u32, m: u32) -> Vec<Tableau> {
    let letters = alphabet(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m as usize);
    fn rec(n: u32, m: usize, letters: &[Letter], cur: &mut Vec<Letter>, out: &mut Vec<Tableau>) {
        if cur.len() == m {
            let t = Tableau::new(n, cur.clone());
            if t.is_admissible_row() {
                out.push(t);
            }
            return;
        }
        for &l in letters {
            if let Some(&prev) = cur.last() {
                let ok = prev.cmp_in(l, n) != Ordering::Greater
                    || (prev == Letter::Bar(n) && l == Letter::Plain(n));
                if !ok {
                    continue;
                }
            }
            cur.push(l);
            rec(n, m, letters, cur, out);
            cur.pop();
        }
    }
    rec(n, m as usize, &letters, &mut cur, &mut out);
    out
}

/// Strictly increasing subsets of the x-alphabet `1..=N` of size `a`.
pub fn gen_x_tableaux(n: u32, a: u32) -> Result<Vec<Tableau>> {
    let big_n = 2 * n + 2;
    if a > big_n {
        return Err(Error::OutOfRange(format!(
            "x-column length {a} exceeds {big_n}"
        )));
    }
    let letters: Vec<Letter> = (1..=big_n)
        .map(|p| Letter::from_position(p, n))
        .collect::<Result<_>>()?;
    Ok(increasing_subsets(&letters, a as usize)
        .into_iter()
        .map(|e| Tableau::new(n, e))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightConvention {
    /// Letters of J read as z-variables.
    Z,
    /// Letters read as x-variables through their x-alphabet position.
    X,
}

/// Column weight `prod_k w_{i_k}(v + 1 - k)` with `v = u + base_half/2`.
pub fn tableau_weight(
    t: &Tableau,
    table: &VariableTable,
    conv: WeightConvention,
    base_half: i64,
) -> Result<LaurentPoly> {
    weight_with_shifts(t, table, conv, |k| base_half - 2 * k as i64)
}

/// Row weight `prod_k z_{i_k}(u + (2k - m - 2)/2 + base_half/2)`, 1-based `k`.
pub fn row_weight(t: &Tableau, table: &VariableTable, base_half: i64) -> Result<LaurentPoly> {
    let m = t.len() as i64;
    weight_with_shifts(t, table, WeightConvention::Z, |k| {
        base_half + 2 * (k as i64 + 1) - 2 - m
    })
}

// `half_of(k)` is the half shift of the factor at 0-based position `k`
fn weight_with_shifts<F>(
    t: &Tableau,
    table: &VariableTable,
    conv: WeightConvention,
    half_of: F,
) -> Result<LaurentPoly>
where
    F: Fn(usize) -> i64,
{
    let mut acc = LaurentPoly::one();
    for (k, &l) in t.entries.iter().enumerate() {
        let half = half_of(k);
        let factor = match (conv, l) {
            (WeightConvention::Z, Letter::Plain(a)) => table.z(a, half)?,
            (WeightConvention::Z, Letter::Bar(a)) => table.z_bar(a, half)?,
            (WeightConvention::Z, Letter::Mid(_)) => {
                return Err(Error::IncompatibleLetter {
                    letter: l.to_string(),
                    convention: "z",
                })
            }
            (WeightConvention::X, l) => table.x(l.position(t.rank), half)?,
        };
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Binomial coefficient for small arguments, zero outside range.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{y_mono, AlgebraSpec};

    fn table(n: u32) -> VariableTable {
        VariableTable::new(AlgebraSpec::c(n).unwrap())
    }

    #[test]
    fn column_counts() {
        let t = gen_column_tableaux(2, 1).unwrap();
        let shown: Vec<String> = t.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["1", "2", "2~", "1~"]);
        assert_eq!(gen_column_tableaux(2, 2).unwrap().len(), 5);
        assert_eq!(
            gen_column_tableaux(3, 0).unwrap(),
            vec![Tableau::new(3, vec![])]
        );
        assert!(gen_column_tableaux(2, 3).is_err());
        for n in 2..=6u32 {
            for a in 0..=n {
                let expect = binomial(2 * i64::from(n), i64::from(a))
                    - binomial(2 * i64::from(n), i64::from(a) - 2);
                assert_eq!(
                    gen_column_tableaux(n, a).unwrap().len() as u128,
                    expect,
                    "n={n} a={a}"
                );
            }
        }
    }

    #[test]
    fn row_counts() {
        assert_eq!(gen_row_tableaux(3, 0).len(), 1);
        assert_eq!(gen_row_tableaux(3, 1).len(), 6);
        // weakly increasing rows plus rows using the n~ n descent
        let brute = {
            let letters = alphabet(2);
            let mut c = 0;
            for &x in &letters {
                for &y in &letters {
                    if Tableau::new(2, vec![x, y]).is_admissible_row() {
                        c += 1;
                    }
                }
            }
            c
        };
        assert_eq!(gen_row_tableaux(2, 2).len(), brute);
        assert_eq!(brute, 11);
        let bad = ["2~ 2~ 2", "2~ 2 2", "1 2~ 2~ 2"];
        for s in bad {
            assert!(!Tableau::parse(2, s).unwrap().is_admissible_row(), "{s}");
        }
        for s in ["2 2~ 2", "2~ 2 2~", "2 2~ 2 2~ 1~", "1 2 2 2~ 2"] {
            assert!(Tableau::parse(2, s).unwrap().is_admissible_row(), "{s}");
        }
    }

    #[test]
    fn x_tableaux() {
        assert_eq!(gen_x_tableaux(2, 0).unwrap().len(), 1);
        let full = gen_x_tableaux(2, 6).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!(gen_x_tableaux(2, 3).unwrap().len(), 20);
        let tab = table(2);
        let w = tableau_weight(&full[0], &tab, WeightConvention::X, 4).unwrap();
        let cartan = AlgebraSpec::c(2).unwrap().cartan();
        assert_eq!(w.to_q_form(&cartan).unwrap(), LaurentPoly::constant(-1));
    }

    #[test]
    fn weights() {
        let tab = table(2);
        let one = Tableau::parse(2, "1").unwrap();
        assert_eq!(
            tableau_weight(&one, &tab, WeightConvention::Z, -1).unwrap(),
            y_mono(&[(1, 0, 1)])
        );
        let empty = Tableau::new(2, vec![]);
        assert_eq!(
            tableau_weight(&empty, &tab, WeightConvention::Z, 0).unwrap(),
            LaurentPoly::one()
        );
        let mid = Tableau::new(2, vec![Letter::Mid(3)]);
        assert!(matches!(
            tableau_weight(&mid, &tab, WeightConvention::Z, 0),
            Err(Error::IncompatibleLetter { .. })
        ));
    }

    // x_{n+1}(u) x_{n+2}(u-1) = -z_n(u) z_nbar(u-1)
    #[test]
    fn middle_pair_weight() {
        for n in 2..=4 {
            let tab = table(n);
            let cartan = AlgebraSpec::c(n).unwrap().cartan();
            let xt = Tableau::new(n, vec![Letter::Mid(n + 1), Letter::Mid(n + 2)]);
            let zt = Tableau::new(n, vec![Letter::Plain(n), Letter::Bar(n)]);
            let xw = tableau_weight(&xt, &tab, WeightConvention::X, 2).unwrap();
            let zw = tableau_weight(&zt, &tab, WeightConvention::Z, 2).unwrap();
            assert_eq!(
                xw.to_q_form(&cartan).unwrap(),
                (-zw).to_q_form(&cartan).unwrap()
            );
        }
    }

    #[test]
    fn parse_roundtrip() {
        let t = Tableau::parse(9, "3 5 7 9 9 9~ 8~ 7~ 3~").unwrap();
        assert_eq!(t.to_string(), "3 5 7 9 9 9~ 8~ 7~ 3~");
        assert_eq!(t.to_json()[5], serde_json::json!({"bar": true, "v": 9}));
        assert!(Tableau::parse(9, "x").is_err());
    }
}
