//! Relations between fundamental and row characters, and between the
//! fundamentals and the coefficients of `L`.

use rayon::prelude::*;

use super::{check_rank, params, row_characters, CharLabel, Fundamentals, QCharacter};
use crate::diffop::{build_l_c, extract_e, EpsilonChoice, LForm};
use crate::error::Result;
use crate::report::SuiteReport;
use crate::ring::{AlgebraSpec, LaurentPoly, VarKey};

/// Column sums against the coefficients of `L`, the extension rules and the
/// highest-weight monomials.
pub fn verify_fundamentals(n: u32) -> Result<SuiteReport> {
    check_rank(n)?;
    let f = Fundamentals::new(n)?;
    let big_n = i64::from(f.big_n());
    let l = build_l_c(n, LForm::ZFactored, EpsilonChoice::Plus)?;
    let mut report = SuiteReport::new("fundamentals");
    for a in 0..=big_n {
        let e = extract_e(&l, a as usize)?;
        report.record_eq(
            "column sum equals signed L coefficient",
            params(&[("n", n.into()), ("a", a)]),
            &f.get(a, 0),
            &e,
        );
    }
    for a in -2..=big_n + 2 {
        let s = &f.get(a, 0) + &f.get(big_n - a, 0);
        report.record_eq(
            "T^(a)_1 + T^(N-a)_1 = 0",
            params(&[("n", n.into()), ("a", a)]),
            &s,
            &LaurentPoly::zero(),
        );
    }
    report.record_eq(
        "T^(n+1)_1 = 0",
        params(&[("n", n.into())]),
        &f.get(i64::from(n) + 1, 0),
        &LaurentPoly::zero(),
    );
    report.record_eq(
        "T^(N)_1 = -1",
        params(&[("n", n.into())]),
        &f.get(big_n, 0),
        &LaurentPoly::constant(-1),
    );
    for a in 1..=i64::from(n) {
        let c = QCharacter {
            algebra: AlgebraSpec::c(n)?,
            label: CharLabel::Fundamental { a },
            value: f.get(a, 0),
            base_half: 0,
        };
        report.record(
            "T^(a)_1 has Y_a(u) with coefficient 1",
            params(&[("n", n.into()), ("a", a)]),
            c.has_highest_weight() == Some(true),
            None,
        );
    }
    Ok(report)
}

/// Both T-T relations for `0 <= m <= m_max`, and the T-Q relation
/// `sum_a (-1)^a Q_1(u+a) T^(a)_1(u+a/2) = 0` in Q-variables.
pub fn verify_tt_tq(n: u32, m_max: u32) -> Result<SuiteReport> {
    check_rank(n)?;
    let f = Fundamentals::new(n)?;
    let big_n = i64::from(f.big_n());
    let rows = row_characters(n, m_max)?;
    let row = |m: i64, half: i64| -> LaurentPoly {
        if m < 0 {
            LaurentPoly::zero()
        } else {
            rows[m as usize].shift(half)
        }
    };
    let sign = |a: i64| {
        if a % 2 == 0 {
            LaurentPoly::one()
        } else {
            LaurentPoly::constant(-1)
        }
    };
    let sides: Vec<(i64, LaurentPoly, LaurentPoly)> = (0..=i64::from(m_max))
        .into_par_iter()
        .map(|m| {
            let first: LaurentPoly = (0..=big_n)
                .map(|a| &sign(a) * &(&row(m - a, -a) * &f.get(a, m - a)))
                .sum();
            let second: LaurentPoly = (0..=big_n)
                .map(|a| &sign(a) * &(&row(m - a, m + a) * &f.get(a, a)))
                .sum();
            (m, first, second)
        })
        .collect();
    let mut report = SuiteReport::new("tt-tq");
    for (m, first, second) in sides {
        let delta = LaurentPoly::constant(i64::from(m == 0));
        let p = params(&[("n", n.into()), ("m", m)]);
        report.record_eq(
            "sum_a (-1)^a T^(1)_{m-a}(u-a/2) T^(a)_1(u+(m-a)/2) = delta_m0",
            p.clone(),
            &first,
            &delta,
        );
        report.record_eq(
            "sum_a (-1)^a T^(1)_{m-a}(u+(m+a)/2) T^(a)_1(u+a/2) = delta_m0",
            p,
            &second,
            &delta,
        );
    }
    let cartan = AlgebraSpec::c(n)?.cartan();
    let mut tq = LaurentPoly::zero();
    for a in 0..=big_n {
        let t = f.get(a, a).y_to_q(&cartan)?;
        tq += &(&sign(a) * &(&LaurentPoly::var(VarKey::q(1, 2 * a)) * &t));
    }
    report.record_eq(
        "sum_a (-1)^a Q_1(u+a) T^(a)_1(u+a/2) = 0",
        params(&[("n", n.into())]),
        &tq,
        &LaurentPoly::zero(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamentals_rank_two_and_three() {
        for n in 2..=3 {
            let r = verify_fundamentals(n).unwrap();
            assert!(r.passed, "{}", r.to_text());
        }
    }

    #[test]
    fn tt_tq_rank_two() {
        let r = verify_tt_tq(2, 6).unwrap();
        assert!(r.passed, "{}", r.to_text());
    }
}
