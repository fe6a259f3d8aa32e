//! Screening operators `S_a` acting on Y-polynomials and on difference
//! operators, with the shift relation `S_a(v + t) = A_a(v + t/2) S_a(v)`,
//! `t = (alpha_a|alpha_a)`, used to bring results to a canonical form.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diffop::{build_l_c, DiffOp, EpsilonChoice, LForm};
use crate::error::{Error, Result};
use crate::qchar::{row_characters, Fundamentals};
use crate::report::SuiteReport;
use crate::ring::{AlgebraSpec, CartanData, Family, LaurentPoly, Monomial, VarKey};

/// `coeff * S_a(u + arg_half/2)` with the coefficient in Q-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenedTerm {
    pub coeff: LaurentPoly,
    pub arg_half: i64,
}

/// A formal sum of screened terms for one node `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenedExpr {
    pub node: u32,
    pub terms: Vec<ScreenedTerm>,
}

/// `A_a(u + half/2) = prod_b Q_b(w - (a|b)) / Q_b(w + (a|b))` as a Q-monomial.
pub fn a_factor(cartan: &CartanData, a: u32, half: i64) -> LaurentPoly {
    let n = cartan.algebra().rank();
    let vars = (1..=n).flat_map(|b| {
        let d = cartan.doubled_pairing(a, b);
        [(VarKey::q(b, half - d), 1), (VarKey::q(b, half + d), -1)]
    });
    LaurentPoly::from_monomial(Monomial::new(1, vars))
}

impl ScreenedExpr {
    pub fn zero(node: u32) -> Self {
        ScreenedExpr {
            node,
            terms: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of monomials left in all coefficients.
    pub fn residual_terms(&self) -> usize {
        self.terms.iter().map(|t| t.coeff.len()).sum()
    }

    /// Rewrites every `S_a(v)` to the smallest argument present in its
    /// residue class modulo `(alpha_a|alpha_a)`, then merges and drops zero
    /// coefficients. Classes are never mixed.
    pub fn canonicalize(&self, cartan: &CartanData) -> Self {
        let a = self.node;
        let period = cartan.doubled_pairing(a, a);
        let half_period = period / 2;
        let mut classes: BTreeMap<i64, Vec<&ScreenedTerm>> = BTreeMap::new();
        for t in &self.terms {
            classes
                .entry(t.arg_half.rem_euclid(period))
                .or_default()
                .push(t);
        }
        let mut out = Vec::new();
        for (_, terms) in classes {
            let base = terms
                .iter()
                .map(|t| t.arg_half)
                .min()
                .expect("nonempty class");
            let mut parts = Vec::with_capacity(terms.len());
            for t in terms {
                let steps = (t.arg_half - base) / period;
                let mut c = t.coeff.clone();
                for j in 0..steps {
                    c = &c * &a_factor(cartan, a, base + j * period + half_period);
                }
                parts.push(c);
            }
            let coeff: LaurentPoly = parts.into_iter().sum();
            if !coeff.is_zero() {
                out.push(ScreenedTerm {
                    coeff,
                    arg_half: base,
                });
            }
        }
        ScreenedExpr {
            node: a,
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ScreenedExpr {
            node: self.node,
            terms,
        }
    }

    /// Multiplies every coefficient by `p`, given in Q-form.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| ScreenedTerm {
                coeff: &t.coeff * p,
                arg_half: t.arg_half,
            })
            .collect();
        ScreenedExpr {
            node: self.node,
            terms,
        }
    }
}

/// `S_a . p` by the Leibniz rule, canonicalized. The input must be a
/// polynomial in Y-variables.
pub fn apply_screening(a: u32, p: &LaurentPoly, cartan: &CartanData) -> Result<ScreenedExpr> {
    let mut terms = Vec::new();
    for m in p.terms() {
        let mut q_form: Option<LaurentPoly> = None;
        for (k, e) in &m.exps {
            if k.family != Family::Y {
                return Err(Error::NotInY(*k));
            }
            if k.index != a {
                continue;
            }
            if q_form.is_none() {
                q_form = Some(LaurentPoly::from_monomial(m.clone()).y_to_q(cartan)?);
            }
            let coeff = q_form.as_ref().expect("set above").scale(&(*e).into());
            terms.push(ScreenedTerm {
                coeff,
                arg_half: k.half_shift,
            });
        }
    }
    Ok(ScreenedExpr { node: a, terms }.canonicalize(cartan))
}

/// Per-degree screening images of an operator with Y-coefficients.
pub fn screen_operator(
    a: u32,
    op: &DiffOp,
    cartan: &CartanData,
) -> Result<BTreeMap<usize, ScreenedExpr>> {
    op.coeffs()
        .map(|(d, c)| Ok((d, apply_screening(a, c, cartan)?)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeResidual {
    pub deg: usize,
    pub residual_term_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub target: String,
    pub node_a: u32,
    pub per_degree: Vec<DegreeResidual>,
    pub zero: bool,
}

/// Screens every coefficient of `op` by `S_a` and reports what survives.
pub fn kernel_report(
    target: &str,
    a: u32,
    op: &DiffOp,
    cartan: &CartanData,
) -> Result<KernelReport> {
    let per = screen_operator(a, op, cartan)?;
    let per_degree: Vec<DegreeResidual> = per
        .iter()
        .map(|(d, e)| DegreeResidual {
            deg: *d,
            residual_term_count: e.residual_terms(),
        })
        .collect();
    let zero = per.values().all(|e| e.is_zero());
    Ok(KernelReport {
        target: target.to_string(),
        node_a: a,
        per_degree,
        zero,
    })
}

/// Same as [`kernel_report`] for a single polynomial.
pub fn kernel_report_poly(
    target: &str,
    a: u32,
    p: &LaurentPoly,
    cartan: &CartanData,
) -> Result<KernelReport> {
    kernel_report(target, a, &DiffOp::constant(p.clone()), cartan)
}

fn record_kernel(report: &mut SuiteReport, identity: &str, n: u32, r: KernelReport) {
    let detail = (!r.zero).then(|| {
        let left: Vec<String> = r
            .per_degree
            .iter()
            .filter(|d| d.residual_term_count > 0)
            .map(|d| format!("D^{}: {} terms", d.deg, d.residual_term_count))
            .collect();
        left.join(", ")
    });
    report.record(identity, format!("n={n} a={}", r.node_a), r.zero, detail);
}

/// `S_a L = 0` degree by degree, `S_a T^(b)_1 = 0` for all nodes `a, b`,
/// and `S_a T^(1)_m = 0` for `1 <= m <= m_max`, in type C.
pub fn verify_screening_c(n: u32, m_max: u32) -> Result<SuiteReport> {
    let cartan = AlgebraSpec::c(n)?.cartan();
    let l = build_l_c(n, LForm::ZFactored, EpsilonChoice::Plus)?;
    let f = Fundamentals::new(n)?;
    let rows = row_characters(n, m_max)?;
    let mut report = SuiteReport::new("screening");
    for a in 1..=n {
        record_kernel(
            &mut report,
            "S_a L = 0",
            n,
            kernel_report("L", a, &l, &cartan)?,
        );
    }
    for b in 1..=n {
        let t = f.get(b.into(), 0);
        for a in 1..=n {
            record_kernel(
                &mut report,
                &format!("S_a T^({b})_1 = 0"),
                n,
                kernel_report_poly("T", a, &t, &cartan)?,
            );
        }
    }
    for (m, t) in rows.iter().enumerate().skip(1) {
        for a in 1..=n {
            record_kernel(
                &mut report,
                &format!("S_a T^(1)_{m} = 0"),
                n,
                kernel_report_poly("T", a, t, &cartan)?,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{y_mono, Series};

    fn c(n: u32) -> CartanData {
        AlgebraSpec::c(n).unwrap().cartan()
    }

    #[test]
    fn elementary_actions() {
        let cd = c(2);
        assert!(apply_screening(1, &y_mono(&[(2, 0, 1)]), &cd)
            .unwrap()
            .is_zero());
        assert!(apply_screening(1, &LaurentPoly::one(), &cd)
            .unwrap()
            .is_zero());
        let inv = y_mono(&[(1, 0, -1)]);
        let e = apply_screening(1, &inv, &cd).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].arg_half, 0);
        assert_eq!(e.terms[0].coeff, (-&inv).y_to_q(&cd).unwrap());
        assert!(apply_screening(1, &LaurentPoly::var(VarKey::q(1, 0)), &cd).is_err());
    }

    #[test]
    fn shift_relation_for_long_root() {
        for n in 2..=4 {
            let cd = c(n);
            // S_n(v+2) -> Y_n(v) Y_n(v+2) / (Y_{n-1}(v+3/2) Y_{n-1}(v+1/2)) S_n(v)
            let x = LaurentPoly::var(VarKey::q(1, 7));
            let e = ScreenedExpr {
                node: n,
                terms: vec![
                    ScreenedTerm {
                        coeff: LaurentPoly::one(),
                        arg_half: 4,
                    },
                    ScreenedTerm {
                        coeff: x.clone(),
                        arg_half: 0,
                    },
                ],
            };
            let canon = e.canonicalize(&cd);
            let expect = y_mono(&[(n, 0, 1), (n, 4, 1), (n - 1, 3, -1), (n - 1, 1, -1)])
                .y_to_q(&cd)
                .unwrap();
            assert_eq!(
                canon.terms,
                vec![ScreenedTerm {
                    coeff: &expect + &x,
                    arg_half: 0
                }]
            );
            let cancel = ScreenedExpr {
                node: n,
                terms: vec![
                    ScreenedTerm {
                        coeff: LaurentPoly::one(),
                        arg_half: 4,
                    },
                    ScreenedTerm {
                        coeff: -&expect,
                        arg_half: 0,
                    },
                ],
            };
            assert!(cancel.canonicalize(&cd).is_zero());
            let single = ScreenedExpr {
                node: n,
                terms: vec![ScreenedTerm {
                    coeff: x.clone(),
                    arg_half: 3,
                }],
            };
            assert_eq!(single.canonicalize(&cd), single);
            assert_eq!(canon.canonicalize(&cd), canon);
        }
    }

    #[test]
    fn operator_is_annihilated() {
        for n in 2..=3 {
            let cd = c(n);
            let l = build_l_c(n, LForm::ZFactored, EpsilonChoice::Plus).unwrap();
            for a in 1..=n {
                let r = kernel_report("L", a, &l, &cd).unwrap();
                assert!(r.zero, "{r:?}");
            }
        }
    }

    #[test]
    fn rank_two_suite() {
        let r = verify_screening_c(2, 2).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(r.checks.len(), 2 + 4 + 4);
    }

    #[test]
    fn leibniz_rule() {
        let cd = c(3);
        let p = &y_mono(&[(1, 0, 1), (2, 3, -1)]) + &y_mono(&[(2, 1, 2)]);
        let q = &y_mono(&[(2, 5, 1)]) - &y_mono(&[(3, 2, -1), (2, 1, 1)]);
        for a in 1..=3 {
            let lhs = apply_screening(a, &(&p * &q), &cd).unwrap();
            let rhs = apply_screening(a, &p, &cd)
                .unwrap()
                .mul_poly(&q.y_to_q(&cd).unwrap())
                .add(
                    &apply_screening(a, &q, &cd)
                        .unwrap()
                        .mul_poly(&p.y_to_q(&cd).unwrap()),
                )
                .canonicalize(&cd);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn a_factor_other_series() {
        let b = AlgebraSpec::new(Series::B, 2).unwrap().cartan();
        // short root of B2: (a2|a2) = 1, (a1|a2) = -1
        let f = a_factor(&b, 2, 0);
        assert_eq!(
            f.coeff_of(&[
                (VarKey::q(2, -2), 1),
                (VarKey::q(2, 2), -1),
                (VarKey::q(1, 2), 1),
                (VarKey::q(1, -2), -1)
            ]),
            1.into()
        );
    }
}
