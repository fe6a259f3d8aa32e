//! Run configuration and suite dispatch behind the `qdiff` binary.
//!
//! Settings are layered: built-in defaults, then `QCHAR_SEED`, then a flat
//! `key = value` config file, then command-line flags.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bd::{default_order, verify_bd_screening, verify_lemma_exp};
use crate::casorati::{default_index_sets, verify_casorati, verify_nnsy};
use crate::classical::{hook_char_dimension, verify_hookchi, verify_pieri, HookLabel};
use crate::diffop::verify_forms;
use crate::error::{Error, Result};
use crate::qchar::{
    verify_fundamentals, verify_hseries, verify_product_formula, verify_tsystem, verify_tt_tq,
};
use crate::report::SuiteReport;
use crate::ring::{AlgebraSpec, Series};
use crate::screening::verify_screening_c;
use crate::tableaux::{cancellation_suite, verify_bijection, verify_rank_nine_chain};

pub const SEED_ENV: &str = "QCHAR_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Screening,
    Cancellation,
    Bijection,
    Forms,
    Tsystem,
    TtTq,
    Hseries,
    Hookchi,
    Casorati,
    Nnsy,
    Bd,
    LemmaExp,
    ProductFormula,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Screening,
        Suite::Cancellation,
        Suite::Bijection,
        Suite::Forms,
        Suite::Tsystem,
        Suite::TtTq,
        Suite::Hseries,
        Suite::Hookchi,
        Suite::Casorati,
        Suite::Nnsy,
        Suite::Bd,
        Suite::LemmaExp,
        Suite::ProductFormula,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Screening => "screening",
            Suite::Cancellation => "cancellation",
            Suite::Bijection => "bijection",
            Suite::Forms => "forms",
            Suite::Tsystem => "tsystem",
            Suite::TtTq => "tt-tq",
            Suite::Hseries => "hseries",
            Suite::Hookchi => "hookchi",
            Suite::Casorati => "casorati",
            Suite::Nnsy => "nnsy",
            Suite::Bd => "bd",
            Suite::LemmaExp => "lemma-exp",
            Suite::ProductFormula => "product-formula",
        }
    }

    /// One line naming what the suite checks; printed as the report header.
    pub fn summary(self) -> &'static str {
        match self {
            Suite::Screening => "S_a annihilates L, T^(b)_1 and T^(1)_m (type C)",
            Suite::Cancellation => "signed x-expansion collapses to the admissible z-sum",
            Suite::Bijection => "tau: V -> W and sigma: W -> V are inverse and weight preserving",
            Suite::Forms => "the factorized forms of L agree",
            Suite::Tsystem => "T-system relations for Jacobi-Trudi and Pfaffian T-values",
            Suite::TtTq => "T-T relations and the T-Q relation",
            Suite::Hseries => "H-series recursion, hook determinants and highest monomials",
            Suite::Hookchi => "classical hook decompositions and the Pieri rule",
            Suite::Casorati => "Casorati determinants on a rational grid solve the T-system",
            Suite::Nnsy => "skew tableau sums of x~ against Casorati ratios",
            Suite::Bd => "screening kernels and inverse of the B/D series L",
            Suite::LemmaExp => "closed forms of the B/D middle factors",
            Suite::ProductFormula => "matrix product of T(u) equals the H-series matrix",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format {other:?}, expected text or json"
            ))),
        }
    }
}

/// Everything a command needs besides its own label arguments.
///
/// `None` limits fall back to per-suite defaults; see [`RunConfig::max_m_or`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub algebra: Option<Series>,
    pub rank: u32,
    pub seed: u64,
    pub order: Option<usize>,
    pub max_m: Option<u32>,
    pub pf_max: Option<u32>,
    pub trials: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algebra: None,
            rank: 2,
            seed: 7,
            order: None,
            max_m: None,
            pf_max: None,
            trials: 5,
            format: OutputFormat::Text,
            out: None,
            jobs: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
}

impl RunConfig {
    /// Takes the seed from `QCHAR_SEED` when that is set.
    pub fn apply_env_seed(&mut self, value: Option<&str>) -> Result<()> {
        if let Some(v) = value {
            self.seed = parse(SEED_ENV, v.trim())?;
        }
        Ok(())
    }

    /// Applies one setting; keys use `-` or `_` interchangeably.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.replace('-', "_").as_str() {
            "algebra" => self.algebra = Some(value.parse()?),
            "rank" => self.rank = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "order" => self.order = Some(parse(key, value)?),
            "max_m" => self.max_m = Some(parse(key, value)?),
            "pf_max" => self.pf_max = Some(parse(key, value)?),
            "trials" => self.trials = parse(key, value)?,
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            "jobs" => self.jobs = Some(parse(key, value)?),
            other => return Err(Error::Config(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::Config("rank must be positive".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn max_m_or(&self, default: u32) -> u32 {
        self.max_m.unwrap_or(default)
    }

    fn big_n(&self) -> u32 {
        2 * self.rank + 2
    }

    /// The algebra for C-only suites; any other series is a usage error.
    pub fn c_algebra(&self) -> Result<AlgebraSpec> {
        match self.algebra {
            None | Some(Series::C) => AlgebraSpec::c(self.rank),
            Some(other) => Err(Error::Config(format!(
                "this command needs series C, got {other}"
            ))),
        }
    }

    /// The algebra for B/D commands; defaults to B.
    pub fn bd_algebra(&self) -> Result<AlgebraSpec> {
        match self.algebra.unwrap_or(Series::B) {
            Series::C => Err(Error::Config("this command needs series B or D".into())),
            s => AlgebraSpec::new(s, self.rank),
        }
    }

    pub fn bd_order(&self, algebra: AlgebraSpec) -> usize {
        self.order.unwrap_or_else(|| default_order(algebra))
    }
}

/// Runs one suite under `cfg`.
///
/// Meaning of `max_m` per suite: row length for screening, largest `m` for
/// tsystem, tt-tq and casorati, largest `k` for hseries, hookchi and
/// product-formula.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    let n = cfg.rank;
    let big_n = cfg.big_n();
    let mut report = SuiteReport::new(suite.name());
    match suite {
        Suite::Bd | Suite::LemmaExp => {}
        _ => {
            cfg.c_algebra()?;
        }
    }
    match suite {
        Suite::Screening => report.extend(verify_screening_c(n, cfg.max_m_or(4))?),
        Suite::Cancellation => report.extend(cancellation_suite(n)?),
        Suite::Bijection => {
            if n < 3 {
                return Err(Error::Config("bijection needs rank >= 3".into()));
            }
            for a in 3..=n {
                report.extend(verify_bijection(n, a)?);
            }
            report.extend(verify_rank_nine_chain()?);
        }
        Suite::Forms => report.extend(verify_forms(n)?),
        Suite::Tsystem => {
            let m = cfg.max_m_or(3);
            let pf = cfg.pf_max.unwrap_or(if n == 2 { m } else { m.min(2) });
            report.extend(verify_tsystem(n, m, pf)?);
        }
        Suite::TtTq => {
            report.extend(verify_fundamentals(n)?);
            report.extend(verify_tt_tq(n, cfg.max_m_or(2 * big_n))?);
        }
        Suite::Hseries => report.extend(verify_hseries(n, cfg.max_m_or(big_n + 3))?),
        Suite::ProductFormula => {
            for k in 1..=cfg.max_m_or(big_n + 2) {
                report.extend(verify_product_formula(n, k)?);
            }
        }
        Suite::Hookchi => {
            report.extend(verify_hookchi(
                n,
                cfg.max_m_or(big_n + 3),
                cfg.trials,
                cfg.seed,
            )?);
            for a in 1..=i64::from(n) {
                for p in 0..=3 {
                    report.extend(verify_pieri(n, p, a, cfg.trials, cfg.seed)?);
                }
            }
            let d = |a, g| hook_char_dimension(n, HookLabel::new(a, g));
            let (d00, d10, d01) = (d(0, 0)?, d(1, 0)?, d(0, 1)?);
            let lhs = &d00 * &d00;
            let rhs = &d10 + &d01 + num_rational::BigRational::from_integer(1.into());
            report.record(
                "dim (0|0)^2 = dim (1|0) + dim (0|1) + 1",
                format!("n={n}"),
                lhs == rhs,
                Some(format!("{lhs} = {d10} + {d01} + 1")),
            );
        }
        Suite::Casorati => report.extend(verify_casorati(n, cfg.seed, cfg.max_m_or(2))?),
        Suite::Nnsy => report.extend(verify_nnsy(n, cfg.seed, &default_index_sets(big_n))?),
        Suite::Bd => {
            let alg = cfg.bd_algebra()?;
            report.extend(verify_bd_screening(alg, cfg.bd_order(alg))?);
        }
        Suite::LemmaExp => {
            let alg = cfg.bd_algebra()?;
            report.extend(verify_lemma_exp(alg, cfg.bd_order(alg))?);
        }
    }
    report.suite = suite.name().to_string();
    Ok(report)
}

/// The report as JSON, with the suite summary and the settings that shaped
/// it, so equal configurations give byte-identical output.
pub fn report_json(suite: Suite, cfg: &RunConfig, report: &SuiteReport) -> serde_json::Value {
    serde_json::json!({
        "suite": suite.name(),
        "summary": suite.summary(),
        "rank": cfg.rank,
        "algebra": cfg.algebra.map(|s| s.to_string()),
        "seed": cfg.seed,
        "order": cfg.order,
        "max_m": cfg.max_m,
        "passed": report.passed,
        "check_count": report.checks.len(),
        "checks": report.checks,
    })
}

/// Usage errors map to exit code 2, everything else to 1.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_)
        | Error::InvalidAlgebra(_)
        | Error::OutOfRange(_)
        | Error::Truncation { .. } => 2,
        _ => 1,
    }
}
