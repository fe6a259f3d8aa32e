//! The order-`N` L operator of the C series in its factorized forms, the
//! partial operators `L_j`, and coefficient extraction.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::report::SuiteReport;
use crate::ring::{AlgebraSpec, LaurentPoly, Monomial, VarKey, VariableTable};

/// Which of the four equal factorizations to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LForm {
    /// Left-to-right product of `1 - z D` factors around the quadratic middle.
    ZFactored,
    /// The same in `z - D` factors with staggered shifts.
    ZReversed,
    /// `prod_{i=1..N}^{->} (eps_i x_i(u+n+1-i) - D)`.
    XFactored,
    /// `prod_{i=1..N}^{<-} (1 - eps_i x_i(u) D)`.
    XReversed,
}

impl LForm {
    pub const ALL: [LForm; 4] = [
        LForm::ZFactored,
        LForm::ZReversed,
        LForm::XFactored,
        LForm::XReversed,
    ];
}

/// The common sign `eps_{n+1} = eps_{n+2}` of the two middle x-factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EpsilonChoice {
    Plus,
    Minus,
}

impl EpsilonChoice {
    pub const BOTH: [EpsilonChoice; 2] = [EpsilonChoice::Plus, EpsilonChoice::Minus];

    fn sign(self, n: u32, i: u32) -> i64 {
        if (i == n + 1 || i == n + 2) && self == EpsilonChoice::Minus {
            -1
        } else {
            1
        }
    }
}

fn table(n: u32) -> Result<VariableTable> {
    Ok(VariableTable::new(AlgebraSpec::c(n)?))
}

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

/// The literal product of one factorized form, without sign normalization.
/// The first three forms agree and the fourth is their negative.
pub fn raw_product(n: u32, form: LForm, eps: EpsilonChoice) -> Result<DiffOp> {
    let t = table(n)?;
    let big_n = 2 * n + 2;
    let ni = i64::from(n);
    let factors: Vec<DiffOp> = match form {
        LForm::ZFactored => {
            let mut f = Vec::new();
            for a in 1..=n {
                f.push(DiffOp::binomial(one(), -t.z_bar(a, 0)?, 1));
            }
            f.push(DiffOp::binomial(one(), -(&t.z_bar(n, 0)? * &t.z(n, 2)?), 2));
            for a in (1..=n).rev() {
                f.push(DiffOp::binomial(one(), -t.z(a, 0)?, 1));
            }
            f
        }
        LForm::ZReversed => {
            let mut f = Vec::new();
            for a in 1..=n {
                let s = 2 * (ni + 1 - i64::from(a));
                f.push(DiffOp::binomial(t.z(a, s)?, -one(), 1));
            }
            f.push(DiffOp::binomial(&t.z_bar(n, -2)? * &t.z(n, 0)?, -one(), 2));
            for a in (1..=n).rev() {
                let s = 2 * (i64::from(a) - ni - 2);
                f.push(DiffOp::binomial(t.z_bar(a, s)?, -one(), 1));
            }
            f
        }
        LForm::XReversed => (1..=big_n)
            .rev()
            .map(|i| {
                let x = t.x(i, 0)?.scale(&eps.sign(n, i).into());
                Ok(DiffOp::binomial(one(), -x, 1))
            })
            .collect::<Result<_>>()?,
        LForm::XFactored => (1..=big_n)
            .map(|i| {
                let s = 2 * (ni + 1 - i64::from(i));
                let x = t.x(i, s)?.scale(&eps.sign(n, i).into());
                Ok(DiffOp::binomial(x, -one(), 1))
            })
            .collect::<Result<_>>()?,
    };
    Ok(DiffOp::product(&factors))
}

/// The L operator of rank `n`, expanded from the requested form.
///
/// Every form yields the same operator: the x-factored product
/// `prod (x_i(u+n+1-i) - D)`, whose constant term is `-1` and whose top
/// coefficient is `+1`. The other forms are negated accordingly.
///
/// The z-forms produce coefficients in Y-variables. The x-forms carry the
/// middle Q-ratios, so their coefficients agree with the z-forms only after
/// [`DiffOp::to_q_form`].
pub fn build_l_c(n: u32, form: LForm, eps: EpsilonChoice) -> Result<DiffOp> {
    let raw = raw_product(n, form, eps)?;
    Ok(match form {
        LForm::XFactored => raw,
        _ => raw.neg(),
    })
}

/// `L_j(u) = prod_{i=N+1-j..N}^{->} (D - eps_i x_i(u+n+1-i))` with the
/// middle signs fixed to `-1`.
pub fn build_lj_c(n: u32, j: u32) -> Result<DiffOp> {
    let big_n = 2 * n + 2;
    if j == 0 || j > big_n {
        return Err(Error::OutOfRange(format!(
            "L_j needs 1 <= j <= {big_n}, got {j}"
        )));
    }
    let t = table(n)?;
    let ni = i64::from(n);
    let factors: Vec<DiffOp> = (big_n + 1 - j..=big_n)
        .map(|i| {
            let s = 2 * (ni + 1 - i64::from(i));
            let x = t.x(i, s)?.scale(&EpsilonChoice::Minus.sign(n, i).into());
            Ok(DiffOp::binomial(-x, one(), 1))
        })
        .collect::<Result<_>>()?;
    Ok(DiffOp::product(&factors))
}

/// The Q-monomial `q_j(u)` whose ratio `q_j(u+1)/q_j(u)` gives the constant
/// term of `L_j`, `1 <= j <= N-1`.
pub fn q_j(n: u32, j: u32) -> Result<LaurentPoly> {
    let big_n = 2 * n + 2;
    let (ni, ji) = (i64::from(n), i64::from(j));
    let vars: Vec<(VarKey, i32)> = if j == 0 || j >= big_n {
        return Err(Error::OutOfRange(format!(
            "q_j needs 1 <= j <= {}, got {j}",
            big_n - 1
        )));
    } else if j < n {
        vec![(VarKey::q(j, ji - 1), 1)]
    } else if j == n {
        vec![(VarKey::q(n, ni), 1), (VarKey::q(n, ni - 2), 1)]
    } else if j == n + 1 {
        vec![(VarKey::q(n, ni), 2)]
    } else if j == n + 2 {
        vec![(VarKey::q(n, ni), 1), (VarKey::q(n, ni + 2), 1)]
    } else {
        vec![(VarKey::q(big_n - j, ji - 1), 1)]
    };
    Ok(LaurentPoly::from_monomial(Monomial::new(1, vars)))
}

/// Expected constant term `(-1)^j sigma'_j q_j(u+1)/q_j(u)` of `L_j`.
pub fn lj_constant_term(n: u32, j: u32) -> Result<LaurentPoly> {
    let q = q_j(n, j)?;
    let m = &q.terms()[0];
    let inv = Monomial::new(1, m.exps.iter().map(|(k, e)| (*k, -e)));
    let ratio = q.shift(2).mul_monomial(&inv);
    let sigma = if j <= n + 1 { 1 } else { -1 };
    let sign = if j % 2 == 0 { sigma } else { -sigma };
    Ok(ratio.scale(&sign.into()))
}

/// `e_a(u)`: the `D^a` coefficient of `L` moved to base point `u` with the
/// sign convention `e_0 = 1`, `e_N = -1`.
pub fn extract_e(l: &DiffOp, a: usize) -> Result<LaurentPoly> {
    let deg = l.degree().unwrap_or(0);
    if a > deg {
        return Err(Error::OutOfRange(format!(
            "e_{a} for an operator of degree {deg}"
        )));
    }
    let c = l.coeff(a).shift(-(a as i64));
    Ok(if a % 2 == 0 { -c } else { c })
}

/// The four factorized forms and both middle signs give one operator in
/// Q-form, and the literal x-products differ by an overall sign.
pub fn verify_forms(n: u32) -> Result<SuiteReport> {
    let cartan = AlgebraSpec::c(n)?.cartan();
    let base = build_l_c(n, LForm::ZFactored, EpsilonChoice::Plus)?.to_q_form(&cartan)?;
    let mut report = SuiteReport::new("forms");
    for form in LForm::ALL {
        for eps in EpsilonChoice::BOTH {
            let l = build_l_c(n, form, eps)?.to_q_form(&cartan)?;
            report.record_eq(
                "factorized form equals the z-factored L",
                format!("n={n} form={form:?} eps={eps:?}"),
                &l,
                &base,
            );
        }
    }
    let xf = raw_product(n, LForm::XFactored, EpsilonChoice::Plus)?.to_q_form(&cartan)?;
    let xr = raw_product(n, LForm::XReversed, EpsilonChoice::Plus)?.to_q_form(&cartan)?;
    report.record_eq(
        "x-factored product = -(x-reversed product)",
        format!("n={n}"),
        &xf,
        &xr.neg(),
    );
    Ok(report)
}
