use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdiff::bd::{build_series_l, CoeffKind};
use qdiff::cli::{exit_code_for, report_json, run_suite, OutputFormat, RunConfig, Suite, SEED_ENV};
use qdiff::diffop::{build_l_c, DiffOp, EpsilonChoice, LForm};
use qdiff::qchar::{fundamental, h_series, rect_character, row_character, QCharacter};
use qdiff::ring::Series;
use qdiff::{Error, Result};

/// Difference L operators, q-characters and exact checks of their identities.
#[derive(Debug, Parser)]
#[command(name = "qdiff", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Rank n of the algebra.
    #[arg(long, global = true)]
    rank: Option<u32>,
    /// Series: B, C or D.
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Seed for random points and grids (falls back to QCHAR_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Truncation order for series operators.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Upper bound on m (or k); its meaning depends on the suite.
    #[arg(long = "max-m", global = true)]
    max_m: Option<u32>,
    /// Output format on stdout: text or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat key = value config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a q-character with its monomial count.
    Character(CharacterArgs),
    /// Print the expanded L operator.
    Operator(OperatorArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Coefficients or checks of the B/D series operators.
    Bd(BdArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Label {
    /// T^(a)_1 for the given a.
    #[arg(long, allow_negative_numbers = true)]
    fundamental: Option<i64>,
    /// T^(1)_m from admissible rows.
    #[arg(long)]
    row: Option<u32>,
    /// T^(a)_m from the determinant formulas.
    #[arg(long, num_args = 2, value_names = ["A", "M"])]
    rect: Option<Vec<u32>>,
    /// H^(i)_k from the H-series.
    #[arg(long, num_args = 2, value_names = ["I", "K"])]
    hook: Option<Vec<u32>>,
}

#[derive(Debug, Args)]
struct CharacterArgs {
    #[command(flatten)]
    label: Label,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Z,
    ZRev,
    X,
    XRev,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EpsArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
struct OperatorArgs {
    /// Factorized form to expand (type C).
    #[arg(long, value_enum, default_value = "z")]
    form: FormArg,
    /// Sign of the two middle x-factors (type C).
    #[arg(long, value_enum, default_value = "plus")]
    eps: EpsArg,
    /// Print the inverse series instead, truncated at --order.
    #[arg(long)]
    inverse: bool,
    /// Print coefficients in Q-variables; always on for the x-forms.
    #[arg(long = "q-form")]
    q_form: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite name; see --help for the list.
    #[arg(help = suite_help())]
    suite: String,
    /// Largest m for the Pfaffian relation of the T-system.
    #[arg(long = "pf-max")]
    pf_max: Option<u32>,
    /// Random points per classical identity.
    #[arg(long)]
    trials: Option<usize>,
}

fn suite_help() -> String {
    let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
    format!("Suite: {}", names.join(", "))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Coeffs,
    Report,
}

#[derive(Debug, Args)]
struct BdArgs {
    #[arg(long, value_enum, default_value = "coeffs")]
    emit: Emit,
}

fn build_config(common: &Common) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    cfg.apply_env_seed(std::env::var(SEED_ENV).ok().as_deref())?;
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_file(&text)?;
    }
    if let Some(r) = common.rank {
        cfg.rank = r;
    }
    if let Some(a) = &common.algebra {
        cfg.algebra = Some(a.parse::<Series>()?);
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if common.order.is_some() {
        cfg.order = common.order;
    }
    if common.max_m.is_some() {
        cfg.max_m = common.max_m;
    }
    if let Some(f) = &common.format {
        cfg.format = f.parse()?;
    }
    if common.out.is_some() {
        cfg.out = common.out.clone();
    }
    if common.jobs.is_some() {
        cfg.jobs = common.jobs;
    }
    Ok(cfg)
}

/// Prints in the chosen format and writes JSON to `--out` if given.
fn emit(cfg: &RunConfig, text: &str, json: &serde_json::Value) -> Result<()> {
    let pretty = serde_json::to_string_pretty(json).expect("json renders") + "\n";
    match cfg.format {
        OutputFormat::Text => print!("{text}"),
        OutputFormat::Json => print!("{pretty}"),
    }
    if let Some(path) = &cfg.out {
        std::fs::write(path, &pretty)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn character(cfg: &RunConfig, label: &Label) -> Result<bool> {
    cfg.c_algebra()?;
    let n = cfg.rank;
    let c: QCharacter = if let Some(a) = label.fundamental {
        fundamental(n, a)?
    } else if let Some(m) = label.row {
        row_character(n, m)?
    } else if let Some(am) = &label.rect {
        rect_character(n, am[0], am[1])?
    } else if let Some(ik) = &label.hook {
        h_series(n, ik[0], ik[1])?.to_character(n)?
    } else {
        return Err(Error::Config("no character label given".into()));
    };
    let hw = match c.has_highest_weight() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    };
    let mut text = format!(
        "{} {}\nmonomials: {}\nhighest weight: {hw}\n",
        c.algebra,
        c.label,
        c.value.len()
    );
    for m in c.value.terms() {
        text.push_str(&format!("{m}\n"));
    }
    emit(cfg, &text, &c.to_json())?;
    Ok(c.has_highest_weight() != Some(false))
}

fn operator_text(op: &DiffOp) -> String {
    let mut text = String::new();
    for (d, c) in op.coeffs() {
        text.push_str(&format!("D^{d}: {c}\n"));
    }
    text
}

fn operator(cfg: &RunConfig, args: &OperatorArgs) -> Result<bool> {
    let (name, op) = match cfg.algebra.unwrap_or(Series::C) {
        Series::C => {
            let form = match args.form {
                FormArg::Z => LForm::ZFactored,
                FormArg::ZRev => LForm::ZReversed,
                FormArg::X => LForm::XFactored,
                FormArg::XRev => LForm::XReversed,
            };
            let eps = match args.eps {
                EpsArg::Plus => EpsilonChoice::Plus,
                EpsArg::Minus => EpsilonChoice::Minus,
            };
            let alg = cfg.c_algebra()?;
            let mut l = build_l_c(cfg.rank, form, eps)?;
            if args.q_form || matches!(form, LForm::XFactored | LForm::XReversed) {
                l = l.to_q_form(&alg.cartan())?;
            }
            if args.inverse {
                let order = cfg.order.unwrap_or(2 * alg.big_n() as usize);
                (format!("{alg} L^-1"), l.inverse_series(order)?)
            } else {
                (format!("{alg} L"), l)
            }
        }
        _ => {
            let alg = cfg.bd_algebra()?;
            let series = build_series_l(alg, cfg.bd_order(alg))?;
            let op = if args.inverse {
                series.inverse()?
            } else {
                series.op
            };
            let op = if args.q_form {
                op.to_q_form(&alg.cartan())?
            } else {
                op
            };
            (
                format!("{alg} L{}", if args.inverse { "^-1" } else { "" }),
                op,
            )
        }
    };
    let text = format!("{name}\n{}", operator_text(&op));
    let json = serde_json::json!({ "operator": name, "value": op.to_json() });
    emit(cfg, &text, &json)?;
    Ok(true)
}

fn verify(cfg: &mut RunConfig, args: &VerifyArgs) -> Result<bool> {
    let suite: Suite = args.suite.parse()?;
    if args.pf_max.is_some() {
        cfg.pf_max = args.pf_max;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    cfg.validate()?;
    let report = run_suite(suite, cfg)?;
    let text = format!("# {}: {}\n{}", suite, suite.summary(), report.to_text());
    emit(cfg, &text, &report_json(suite, cfg, &report))?;
    Ok(report.passed)
}

fn bd(cfg: &RunConfig, args: &BdArgs) -> Result<bool> {
    let alg = cfg.bd_algebra()?;
    let order = cfg.bd_order(alg);
    match args.emit {
        Emit::Coeffs => {
            let series = build_series_l(alg, order)?;
            let ta = series.coeffs(CoeffKind::Ta)?;
            let tm = series.coeffs(CoeffKind::Tm)?;
            let mut text = format!("{alg} truncated at D^{order}\n");
            for (a, t) in ta.iter().enumerate() {
                text.push_str(&format!("T^{a}(u) = {t}\n"));
            }
            for (m, t) in tm.iter().enumerate() {
                text.push_str(&format!("T_{m}(u) = {t}\n"));
            }
            let json = serde_json::json!({
                "algebra": alg.to_string(),
                "order": order,
                "t_upper": ta.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                "t_lower": tm.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            });
            emit(cfg, &text, &json)?;
            Ok(true)
        }
        Emit::Report => {
            let report = run_suite(Suite::Bd, cfg)?;
            let text = format!("# bd: {}\n{}", Suite::Bd.summary(), report.to_text());
            emit(cfg, &text, &report_json(Suite::Bd, cfg, &report))?;
            Ok(report.passed)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let mut cfg = build_config(&cli.common)?;
    cfg.validate()?;
    if let Some(j) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }
    log::debug!("config: {cfg:?}");
    match &cli.command {
        Command::Character(args) => character(&cfg, &args.label),
        Command::Operator(args) => operator(&cfg, args),
        Command::Verify(args) => verify(&mut cfg, args),
        Command::Bd(args) => bd(&cfg, args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
