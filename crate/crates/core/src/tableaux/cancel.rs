//! The maps `tau_b`, `sigma_b` and the bijection `V -> W` that accounts for
//! the cancellation between the x-expansion and the admissible z-sum.
//!
//! `V` collects arrays `(i_1 < ... < i_k <= n, n~ <= j_1 < ...)` with an
//! extra `n, n~` inserted in the middle; `W` collects strictly increasing
//! columns violating the pair condition.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::SuiteReport;
use crate::ring::{AlgebraSpec, LaurentPoly, VariableTable};
use crate::tableaux::{
    binomial, gen_column_tableaux, gen_increasing_columns, gen_x_tableaux, increasing_subsets,
    tableau_weight, Letter, Tableau, WeightConvention,
};

// Rewrites every (from, [gap letters], from~) into (to, ..., to~).
fn pair_move(t: &Tableau, from: u32, to: u32) -> Tableau {
    let gap = (t.rank + 1 - from.max(to)) as usize;
    let mut out = t.entries.clone();
    for k in 0..t.len() {
        let l = k + gap + 1;
        if l < t.len() && t.entries[k] == Letter::Plain(from) && t.entries[l] == Letter::Bar(from) {
            out[k] = Letter::Plain(to);
            out[l] = Letter::Bar(to);
        }
    }
    Tableau::new(t.rank, out)
}

/// `(.., b, [n-b+1 letters], b~, ..) -> (.., b-1, .., (b-1)~, ..)` at every
/// matching pair, `2 <= b <= n`.
pub fn tau_b(t: &Tableau, b: u32) -> Result<Tableau> {
    if b < 2 || b > t.rank {
        return Err(Error::OutOfRange(format!(
            "tau_{b} needs 2 <= b <= {}",
            t.rank
        )));
    }
    Ok(pair_move(t, b, b - 1))
}

/// `(.., b-1, [n-b+1 letters], (b-1)~, ..) -> (.., b, .., b~, ..)`, `3 <= b <= n`.
pub fn sigma_b(t: &Tableau, b: u32) -> Result<Tableau> {
    if b < 3 || b > t.rank {
        return Err(Error::OutOfRange(format!(
            "sigma_{b} needs 3 <= b <= {}",
            t.rank
        )));
    }
    Ok(pair_move(t, b - 1, b))
}

/// All arrays of the set V for rank `n` and length `a`.
pub fn enumerate_v(n: u32, a: u32) -> Vec<Tableau> {
    let plain: Vec<Letter> = (1..=n).map(Letter::Plain).collect();
    let bars: Vec<Letter> = (1..=n).rev().map(Letter::Bar).collect();
    let mut out = Vec::new();
    if a < 2 {
        return out;
    }
    for k in 0..=(a - 2) as usize {
        let rest = a as usize - 2 - k;
        for left in increasing_subsets(&plain, k) {
            for right in increasing_subsets(&bars, rest) {
                let mut e = left.clone();
                e.push(Letter::Plain(n));
                e.push(Letter::Bar(n));
                e.extend_from_slice(&right);
                out.push(Tableau::new(n, e));
            }
        }
    }
    out
}

/// All strictly increasing columns of length `a` that violate the pair condition.
pub fn enumerate_w(n: u32, a: u32) -> Vec<Tableau> {
    gen_increasing_columns(n, a)
        .into_iter()
        .filter(|t| !t.satisfies_pair_condition())
        .collect()
}

pub fn in_v(t: &Tableau) -> bool {
    let n = t.rank;
    let e = &t.entries;
    if e.len() < 2 || e.iter().any(|l| matches!(l, Letter::Mid(_))) {
        return false;
    }
    // the inserted pair sits at the boundary between plain and barred letters
    let split = e
        .iter()
        .position(|l| matches!(l, Letter::Bar(_)))
        .unwrap_or(e.len());
    if split == 0
        || split == e.len()
        || e[split - 1] != Letter::Plain(n)
        || e[split] != Letter::Bar(n)
    {
        return false;
    }
    let left = Tableau::new(n, e[..split - 1].to_vec());
    let right = Tableau::new(n, e[split + 1..].to_vec());
    left.is_strictly_increasing()
        && right.is_strictly_increasing()
        && left.entries.iter().all(|l| matches!(l, Letter::Plain(_)))
        && right.entries.iter().all(|l| matches!(l, Letter::Bar(_)))
}

pub fn in_w(t: &Tableau) -> bool {
    t.entries.iter().all(|l| !matches!(l, Letter::Mid(_)))
        && t.is_strictly_increasing()
        && !t.satisfies_pair_condition()
}

/// Membership in `V^{l,m}_b`, decided from the letter positions.
pub fn in_v_lm(t: &Tableau, b: u32, l: usize, m: usize) -> bool {
    let n = t.rank;
    if b < 2 || b > n || (l, m) == (0, 0) || l.abs_diff(m) > 1 {
        return false;
    }
    if t.entries.iter().any(|x| matches!(x, Letter::Mid(_))) {
        return false;
    }
    let pb = Letter::Plain(b).position(n);
    let pbar = Letter::Bar(b).position(n);
    let pos: Vec<u32> = t.entries.iter().map(|x| x.position(n)).collect();
    // weakly increasing, with repetition allowed only for b and b~
    for w in pos.windows(2) {
        if w[0] > w[1] || (w[0] == w[1] && w[0] != pb && w[0] != pbar) {
            return false;
        }
    }
    if pos.iter().filter(|&&p| p == pb).count() != l
        || pos.iter().filter(|&&p| p == pbar).count() != m
    {
        return false;
    }
    let middle: Vec<Letter> = t
        .entries
        .iter()
        .copied()
        .filter(|x| {
            let p = x.position(n);
            p > pb && p < pbar
        })
        .collect();
    let beta = middle.len();
    // condition on the middle segment, only for b < d <= n
    let seg = Tableau::new(n, middle);
    if seg.breaking_pairs().any(|(d, _, _)| d > b) {
        return false;
    }
    let (ni, bi) = (n as usize, b as usize);
    let c1 = l == m && l >= 1 && l + beta == ni - bi + 1;
    let c2 = l == m && l >= 1 && l + beta == ni - bi + 2;
    let c3 = l == m + 1 && l + beta == ni - bi + 2;
    let c4 = l + 1 == m && l + beta == ni - bi + 1;
    c1 || c2 || c3 || c4
}

/// Membership in `V_b`, the union of `V^{l,m}_b` over `(l, m)`.
pub fn in_v_b(t: &Tableau, b: u32) -> bool {
    if b < 2 || b > t.rank {
        return false;
    }
    let l = t.entries.iter().filter(|&&x| x == Letter::Plain(b)).count();
    let m = t.entries.iter().filter(|&&x| x == Letter::Bar(b)).count();
    in_v_lm(t, b, l, m)
}

/// Largest `q` whose `(q, q~)` pair breaks the pair condition, with the
/// number of letters between them.
pub fn maximal_breaking_pair(t: &Tableau) -> Result<(u32, usize)> {
    if !in_w(t) {
        return Err(Error::NotInSet(format!("{t} (expected W)")));
    }
    let (q, k, l) = t
        .breaking_pairs()
        .max_by_key(|(q, _, _)| *q)
        .ok_or_else(|| Error::Consistency(format!("{t} has no breaking pair")))?;
    Ok((q, l - k - 1))
}

/// `tau(t) = tau_{p+1} ... tau_n(t)`, stopping at the first `p` where
/// `tau_p` acts trivially. Returns the image and `p`.
pub fn tau_full(t: &Tableau) -> Result<(Tableau, u32)> {
    if !in_v(t) {
        return Err(Error::NotInSet(format!("{t} (expected V)")));
    }
    let mut cur = t.clone();
    let mut d = t.rank;
    while d >= 2 {
        let next = tau_b(&cur, d)?;
        if next == cur {
            return Ok((cur, d));
        }
        cur = next;
        d -= 1;
    }
    Err(Error::Consistency(format!("no stopping index for {t}")))
}

/// Inverse of [`tau_full`]: `sigma_n ... sigma_{p+1}(s)` with `(p, p~)` the
/// maximal breaking pair of `s`.
pub fn sigma_full(s: &Tableau) -> Result<Tableau> {
    let (p, _) = maximal_breaking_pair(s)?;
    let mut cur = s.clone();
    for b in p + 1..=s.rank {
        cur = sigma_b(&cur, b)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct CancellationReport {
    pub rank: u32,
    pub length: u32,
    /// Number of x-alphabet columns in the signed sum.
    pub x_terms: usize,
    /// Number of admissible z-columns.
    pub admissible: usize,
    /// Signed x-sum equals the admissible z-sum.
    pub sums_agree: bool,
    /// Columns with exactly one middle letter cancel among themselves.
    pub single_middle_cancels: bool,
    /// The remaining x-terms equal all increasing z-columns minus the V-sum.
    pub grouping_holds: bool,
    pub v_size: usize,
    pub w_size: usize,
    /// Z-sums over V and W agree.
    pub v_w_sums_agree: bool,
    /// The explicit bijection was checked (only for rank >= 3, length >= 3).
    pub bijection_checked: bool,
    pub bijection_holds: bool,
}

impl CancellationReport {
    pub fn passed(&self) -> bool {
        self.sums_agree
            && self.single_middle_cancels
            && self.grouping_holds
            && self.v_w_sums_agree
            && (!self.bijection_checked || self.bijection_holds)
    }
}

fn z_sum(ts: &[Tableau], table: &VariableTable, base: i64) -> Result<LaurentPoly> {
    let parts: Vec<LaurentPoly> = ts
        .par_iter()
        .map(|t| tableau_weight(t, table, WeightConvention::Z, base))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().sum())
}

/// Checks that the signed x-sum of length `a` collapses to the admissible
/// z-sum, by direct comparison, by the grouping of middle letters, and
/// through the bijection `V -> W`.
pub fn verify_cancellation(n: u32, a: u32) -> Result<CancellationReport> {
    if a == 0 || a > n {
        return Err(Error::OutOfRange(format!(
            "cancellation needs 1 <= a <= n, got a={a}"
        )));
    }
    let alg = AlgebraSpec::c(n)?;
    let cartan = alg.cartan();
    let table = VariableTable::new(alg);
    let base = i64::from(a) - 2;
    let q = |p: &LaurentPoly| p.to_q_form(&cartan);

    let xs = gen_x_tableaux(n, a)?;
    let mut groups: [Vec<LaurentPoly>; 4] = Default::default();
    for t in &xs {
        let has1 = t.entries.contains(&Letter::Mid(n + 1));
        let has2 = t.entries.contains(&Letter::Mid(n + 2));
        let idx = match (has1, has2) {
            (false, false) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (true, true) => 3,
        };
        groups[idx].push(q(&tableau_weight(t, &table, WeightConvention::X, base)?)?);
    }
    let [g0, g1, g2, g3] = groups.map(|g| g.into_iter().sum::<LaurentPoly>());
    let x_total = &(&g0 + &g3) + &(&g1 + &g2);

    let admissible = gen_column_tableaux(n, a)?;
    let z_adm = q(&z_sum(&admissible, &table, base)?)?;
    let sums_agree = x_total == z_adm;
    let single_middle_cancels = (&g1 + &g2).is_zero();

    let v = enumerate_v(n, a);
    let w = enumerate_w(n, a);
    let z_inc = q(&z_sum(&gen_increasing_columns(n, a), &table, base)?)?;
    let z_v = q(&z_sum(&v, &table, base)?)?;
    let z_w = q(&z_sum(&w, &table, base)?)?;
    let grouping_holds = &g0 + &g3 == &z_inc - &z_v;
    let v_w_sums_agree = z_v == z_w;

    let bijection_checked = n >= 3 && a >= 3;
    let bijection_holds = if bijection_checked {
        check_bijection(&v, &w, &table, base)?
    } else {
        false
    };

    Ok(CancellationReport {
        rank: n,
        length: a,
        x_terms: xs.len(),
        admissible: admissible.len(),
        sums_agree,
        single_middle_cancels,
        grouping_holds,
        v_size: v.len(),
        w_size: w.len(),
        v_w_sums_agree,
        bijection_checked,
        bijection_holds,
    })
}

fn check_bijection(v: &[Tableau], w: &[Tableau], table: &VariableTable, base: i64) -> Result<bool> {
    if v.len() != w.len() {
        log::warn!("|V| = {} but |W| = {}", v.len(), w.len());
        return Ok(false);
    }
    let forward: Vec<(Tableau, bool)> = v
        .par_iter()
        .map(|t| {
            let (img, _) = tau_full(t)?;
            let same_weight = tableau_weight(t, table, WeightConvention::Z, base)?
                == tableau_weight(&img, table, WeightConvention::Z, base)?;
            let back = sigma_full(&img)? == *t;
            if !(same_weight && back && in_w(&img)) {
                log::warn!("tau fails at {t} -> {img}");
            }
            Ok((img, same_weight && back))
        })
        .collect::<Result<_>>()?;
    if forward.iter().any(|(_, ok)| !ok) {
        return Ok(false);
    }
    let images: HashSet<&Tableau> = forward.iter().map(|(i, _)| i).collect();
    let wset: HashSet<&Tableau> = w.iter().collect();
    if images != wset {
        return Ok(false);
    }
    let backward_ok = w
        .par_iter()
        .map(|s| Ok(tau_full(&sigma_full(s)?)?.0 == *s))
        .collect::<Result<Vec<bool>>>()?;
    Ok(backward_ok.into_iter().all(|b| b))
}

/// The chain `tau_9, tau_8, tau_7, tau_6, tau_5` starting from
/// `3 5 7 9 9 9~ 8~ 7~ 3~` at rank 9; `tau_4` then acts trivially.
pub const RANK_NINE_CHAIN: [&str; 6] = [
    "3 5 7 9 9 9~ 8~ 7~ 3~",
    "3 5 7 8 9 8~ 8~ 7~ 3~",
    "3 5 7 7 9 8~ 7~ 7~ 3~",
    "3 5 6 6 9 8~ 6~ 6~ 3~",
    "3 5 5 6 9 8~ 6~ 5~ 3~",
    "3 4 5 6 9 8~ 6~ 4~ 3~",
];

fn first_failure(bad: &[String]) -> Option<String> {
    bad.first()
        .map(|t| format!("{} failures, first at {t}", bad.len()))
}

/// Exhaustive check of `tau: V -> W` and `sigma: W -> V` at rank `n` and
/// length `a`: mutual inverses, weight preservation, and the maximal
/// breaking pair `(p, p~)` of every image enclosing `n - p` letters.
pub fn verify_bijection(n: u32, a: u32) -> Result<SuiteReport> {
    if n < 3 || a < 3 || a > n {
        return Err(Error::OutOfRange(format!(
            "bijection needs 3 <= a <= n, got n={n} a={a}"
        )));
    }
    let table = VariableTable::new(AlgebraSpec::c(n)?);
    let base = i64::from(a) - 2;
    let v = enumerate_v(n, a);
    let w = enumerate_w(n, a);
    let params = format!("n={n} a={a}");
    let mut report = SuiteReport::new("bijection");
    report.record(
        "|V| = |W|",
        params.clone(),
        v.len() == w.len() && !v.is_empty(),
        Some(format!("|V| = {}, |W| = {}", v.len(), w.len())),
    );

    // (image, weight kept, sigma(tau t) = t, gap = n - p)
    let forward: Vec<(Tableau, bool, bool, bool)> = v
        .par_iter()
        .map(|t| {
            let (img, p) = tau_full(t)?;
            let kept = tableau_weight(t, &table, WeightConvention::Z, base)?
                == tableau_weight(&img, &table, WeightConvention::Z, base)?;
            let back = in_w(&img) && sigma_full(&img)? == *t;
            let gap = in_w(&img) && maximal_breaking_pair(&img)? == (p, (n - p) as usize);
            Ok((img, kept, back, gap))
        })
        .collect::<Result<_>>()?;
    let failing = |f: &dyn Fn(&(Tableau, bool, bool, bool)) -> bool| -> Vec<String> {
        v.iter()
            .zip(&forward)
            .filter(|(_, r)| !f(r))
            .map(|(t, _)| t.to_string())
            .collect()
    };
    let bad_weight = failing(&|r| r.1);
    let bad_back = failing(&|r| r.2);
    let bad_gap = failing(&|r| r.3);
    report.record(
        "tau preserves the Z-weight",
        params.clone(),
        bad_weight.is_empty(),
        first_failure(&bad_weight),
    );
    report.record(
        "sigma(tau(t)) = t on V",
        params.clone(),
        bad_back.is_empty(),
        first_failure(&bad_back),
    );
    report.record(
        "tau(t) has maximal breaking pair (p, p~) with n-p letters between",
        params.clone(),
        bad_gap.is_empty(),
        first_failure(&bad_gap),
    );

    let images: HashSet<&Tableau> = forward.iter().map(|r| &r.0).collect();
    let wset: HashSet<&Tableau> = w.iter().collect();
    report.record("tau(V) = W", params.clone(), images == wset, None);
    let bad_inverse: Vec<String> = w
        .par_iter()
        .map(|s| Ok((s, tau_full(&sigma_full(s)?)?.0 == *s)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(s, _)| s.to_string())
        .collect();
    report.record(
        "tau(sigma(s)) = s on W",
        params,
        bad_inverse.is_empty(),
        first_failure(&bad_inverse),
    );
    Ok(report)
}

/// Replays [`RANK_NINE_CHAIN`] step by step, then checks `tau_full` on its
/// start stops at `p = 4` with maximal breaking pair `(4, 4~)`.
pub fn verify_rank_nine_chain() -> Result<SuiteReport> {
    let t9 = |s: &str| Tableau::parse(9, s);
    let mut report = SuiteReport::new("bijection");
    for (i, b) in (5..=9u32).rev().enumerate() {
        let got = tau_b(&t9(RANK_NINE_CHAIN[i])?, b)?;
        report.record_eq(
            "tau_b step of the rank 9 chain",
            format!("b={b}"),
            &got,
            &t9(RANK_NINE_CHAIN[i + 1])?,
        );
    }
    let last = t9(RANK_NINE_CHAIN[5])?;
    report.record_eq(
        "tau_4 acts trivially",
        "b=4".into(),
        &tau_b(&last, 4)?,
        &last,
    );
    let (img, p) = tau_full(&t9(RANK_NINE_CHAIN[0])?)?;
    report.record_eq("tau stops at p = 4", "n=9 a=9".into(), &p, &4);
    report.record_eq("tau image is the chain end", "n=9 a=9".into(), &img, &last);
    let pair = maximal_breaking_pair(&img)?;
    report.record(
        "maximal breaking pair (4, 4~) with 5 letters between",
        "n=9 a=9",
        pair == (4, 5),
        Some(format!("{pair:?}")),
    );
    report.record_eq(
        "sigma undoes the chain",
        "n=9 a=9".into(),
        &sigma_full(&img)?,
        &t9(RANK_NINE_CHAIN[0])?,
    );
    Ok(report)
}

/// [`verify_cancellation`] for every length `1 <= a <= n`, with the column
/// count `C(2n,a) - C(2n,a-2)`.
pub fn cancellation_suite(n: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("cancellation");
    let reports: Vec<CancellationReport> = (1..=n)
        .map(|a| verify_cancellation(n, a))
        .collect::<Result<_>>()?;
    for r in reports {
        let p = format!("n={} a={}", r.rank, r.length);
        report.record(
            "signed x-sum = admissible z-sum",
            p.clone(),
            r.sums_agree,
            None,
        );
        report.record(
            "columns with one middle letter cancel",
            p.clone(),
            r.single_middle_cancels,
            None,
        );
        report.record(
            "remaining x-sum = increasing z-sum - V-sum",
            p.clone(),
            r.grouping_holds,
            None,
        );
        report.record("V-sum = W-sum", p.clone(), r.v_w_sums_agree, None);
        let (nn, aa) = (i64::from(2 * r.rank), i64::from(r.length));
        let expected = (binomial(nn, aa) - binomial(nn, aa - 2)) as usize;
        report.record_eq(
            "admissible columns = C(2n,a) - C(2n,a-2)",
            p,
            &r.admissible,
            &expected,
        );
    }
    Ok(report)
}

/// Every letter of J at every length up to `a`; used by exhaustive checks.
#[cfg(test)]
pub(crate) fn all_arrays(n: u32, a: usize) -> Vec<Tableau> {
    let letters = crate::tableaux::alphabet(n);
    let mut out = vec![Vec::new()];
    for _ in 0..a {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|e| Tableau::new(n, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t9(s: &str) -> Tableau {
        Tableau::parse(9, s).unwrap()
    }

    #[test]
    fn worked_chain() {
        let chain = RANK_NINE_CHAIN;
        for (i, b) in (5..=9).rev().enumerate() {
            assert_eq!(
                tau_b(&t9(chain[i]), b).unwrap(),
                t9(chain[i + 1]),
                "tau_{b}"
            );
        }
        assert_eq!(
            tau_b(&t9(chain[5]), 3).unwrap(),
            t9("2 4 5 6 9 8~ 6~ 4~ 2~")
        );
        for s in chain {
            for b in [2, 4] {
                assert_eq!(tau_b(&t9(s), b).unwrap(), t9(s));
            }
        }
        assert!(in_v(&t9(chain[0])));
        let (img, p) = tau_full(&t9(chain[0])).unwrap();
        assert_eq!((img.clone(), p), (t9(chain[5]), 4));
        assert!(in_w(&img));
        assert_eq!(maximal_breaking_pair(&img).unwrap(), (4, 5));
        assert_eq!(sigma_full(&img).unwrap(), t9(chain[0]));
    }

    #[test]
    fn chain_and_small_bijections() {
        assert!(verify_rank_nine_chain().unwrap().passed);
        for n in 3..=4 {
            for a in 3..=n {
                let r = verify_bijection(n, a).unwrap();
                assert!(r.passed, "{}", r.to_text());
            }
        }
        assert!(verify_bijection(3, 2).is_err());
        assert!(cancellation_suite(3).unwrap().passed);
    }

    #[test]
    fn sigma_undoes_step() {
        let s = t9("3 4 5 6 9 8~ 6~ 4~ 3~");
        assert_eq!(sigma_b(&s, 5).unwrap(), t9("3 5 5 6 9 8~ 6~ 5~ 3~"));
        let plain = t9("1 2 3");
        assert_eq!(sigma_b(&plain, 5).unwrap(), plain);
        assert_eq!(
            tau_b(&Tableau::new(9, vec![]), 3).unwrap(),
            Tableau::new(9, vec![])
        );
    }

    #[test]
    fn membership_basics() {
        let adm = Tableau::parse(3, "1 2 3").unwrap();
        assert!(adm.is_admissible_column());
        assert!(!in_w(&adm));
        assert!(maximal_breaking_pair(&adm).is_err());
        assert!(tau_full(&adm).is_err());
        // (1, 1~) never breaks
        for n in 2..=5 {
            for a in 2..=n {
                for t in gen_increasing_columns(n, a) {
                    assert!(t.breaking_pairs().all(|(q, _, _)| q != 1));
                }
            }
        }
    }

    #[test]
    fn v_equals_top_layer() {
        for n in 3..=5 {
            for a in 3..=n {
                let v = enumerate_v(n, a);
                for t in &v {
                    assert!(in_v(t));
                    assert!(in_v_b(t, n), "{t}");
                }
                for t in v.iter().filter(|t| in_v_lm(t, n, 1, 1)) {
                    assert!(in_w(t));
                }
            }
        }
    }

    #[test]
    fn bottom_layer_is_fixed() {
        for n in 3..=5u32 {
            for a in 3..=n {
                let sharp = n - a + 2;
                for t in all_arrays(n, a as usize)
                    .iter()
                    .filter(|t| in_v_b(t, sharp))
                {
                    assert_eq!(&tau_b(t, sharp).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn tau_steps_stay_in_layers() {
        for n in 3..=5u32 {
            for a in 3..=n {
                for t in all_arrays(n, a as usize) {
                    for b in 3..=n {
                        if in_v_b(&t, b) {
                            let img = tau_b(&t, b).unwrap();
                            assert!(img == t || in_v_b(&img, b - 1), "{t} under tau_{b}");
                            if img != t {
                                assert_eq!(sigma_b(&img, b).unwrap(), t);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gap_of_maximal_pair() {
        let n = 5;
        for a in 3..=5 {
            for t in enumerate_w(n, a) {
                let (q, gap) = maximal_breaking_pair(&t).unwrap();
                assert_eq!(gap as u32, n - q, "{t}");
            }
        }
    }

    #[test]
    fn cancellation_small() {
        for n in 2..=4 {
            for a in 1..=n {
                let r = verify_cancellation(n, a).unwrap();
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.v_size, r.w_size);
            }
        }
        let r = verify_cancellation(3, 3).unwrap();
        assert!(r.bijection_checked && r.bijection_holds);
        assert_eq!(verify_cancellation(4, 4).unwrap().admissible, 42);
    }
}
