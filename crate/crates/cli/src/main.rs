//! Command-line front end: joint probabilities, noise thresholds, LHV
//! checks, and threshold-curve sweep data in CSV or JSON.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 on an internal
//! consistency failure (closed-form vs Born-rule disagreement, or the
//! inequality contradicting the LP oracle away from the boundary).

mod schema;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hardy_core::hardy::{Outcome, SchmidtSpec, Setting, TwoQubitSpec};
use hardy_core::jointprob::{
    born_joint, quartet_colored_2x2, quartet_white_2x2, sextet_white_highdim, HardyQuartet,
    OutcomePair,
};
use hardy_core::lhv::{check_quartet, hardy_inequality, measure_constraints};
use hardy_core::noise::{mix_colored, mix_white, NoisyHardyState};
use hardy_core::sweep::{self, SweepRequest};
use hardy_core::thresholds::{report, OrderingKind};

use schema::*;

/// Closed-form and Born-rule values must agree to this before the CLI
/// trusts its own numbers.
const CONSISTENCY_TOL: f64 = 1e-9;
/// Inequality slacks within this of zero are reported as "boundary" and not
/// compared against the LP verdict.
const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "hardy",
    version,
    about = "Hardy states under noise: joint probabilities, LHV feasibility, and nonlocality thresholds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form joint probabilities next to their Born-rule values
    Probs(ProbsArgs),
    /// Print all closed-form noise thresholds and the verified orderings
    Thresholds(ThresholdsArgs),
    /// Evaluate the local-explicability inequality and the LP oracle for one noise level
    LhvCheck(LhvCheckArgs),
    /// Emit the two nonlocality curves (as 1 - p) over a p1 grid
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Local dimension of party 1
    #[arg(long, default_value_t = 2)]
    d1: usize,
    /// Local dimension of party 2
    #[arg(long, default_value_t = 2)]
    d2: usize,
    /// Squared first Schmidt weight; the second weight is sqrt(1 - p1sq)
    #[arg(long)]
    p1sq: Option<f64>,
    /// Squared second Schmidt weight; requires --p1sq and p1sq + p2sq = 1
    #[arg(long)]
    p2sq: Option<f64>,
    /// Comma-separated raw Schmidt weights, renormalized to sum of squares 1
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weights: Option<Vec<f64>>,
    /// Preset weights maximizing the Hardy probability: p1 p2 = (3 - sqrt 5)/2
    #[arg(long)]
    hardy_max: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoiseArg {
    White,
    Colored,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct ProbsArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Noise family
    #[arg(long, value_enum, default_value_t = NoiseArg::White)]
    noise: NoiseArg,
    /// Purity parameter p in [0, 1]
    #[arg(long)]
    p: f64,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    /// Decimal digits in tables (default 6)
    #[arg(long)]
    digits: Option<usize>,
}

#[derive(Args)]
struct ThresholdsArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    #[arg(long)]
    digits: Option<usize>,
}

#[derive(Args)]
struct LhvCheckArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = NoiseArg::White)]
    noise: NoiseArg,
    /// Purity parameter p in [0, 1]
    #[arg(long)]
    p: f64,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    #[arg(long)]
    digits: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Local dimension of party 1
    #[arg(long, default_value_t = 2)]
    d1: usize,
    /// Local dimension of party 2
    #[arg(long, default_value_t = 2)]
    d2: usize,
    /// Squared fixed second weight; p2 = sqrt(p2sq)
    #[arg(long)]
    p2sq: f64,
    /// p1 grid as start:stop:steps (steps points, endpoints included)
    #[arg(long)]
    grid: String,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    format: SweepFormat,
    /// Decimal digits for CSV values (default: 17 significant digits)
    #[arg(long)]
    digits: Option<usize>,
}

enum CliError {
    Invalid(String),
    Internal(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Internal(m) => m,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Probs(args) => run_probs(args),
        Command::Thresholds(args) => run_thresholds(args),
        Command::LhvCheck(args) => run_lhv_check(args),
        Command::Sweep(args) => run_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn build_spec(args: &SpecArgs) -> Result<SchmidtSpec, CliError> {
    let sources =
        args.hardy_max as usize + args.p1sq.is_some() as usize + args.weights.is_some() as usize;
    if sources != 1 {
        return Err(CliError::Invalid(
            "choose exactly one weight source: --hardy-max, --p1sq or --weights".into(),
        ));
    }
    if args.p2sq.is_some() && args.p1sq.is_none() {
        return Err(CliError::Invalid("--p2sq requires --p1sq".into()));
    }

    let weights = if args.hardy_max {
        SchmidtSpec::hardy_max().weights().to_vec()
    } else if let Some(p1sq) = args.p1sq {
        if !p1sq.is_finite() || p1sq <= 0.0 || p1sq >= 1.0 {
            return Err(CliError::Invalid(format!(
                "--p1sq must lie strictly between 0 and 1, got {p1sq}"
            )));
        }
        if let Some(p2sq) = args.p2sq {
            if (p1sq + p2sq - 1.0).abs() > 1e-12 {
                return Err(CliError::Invalid(format!(
                    "--p1sq and --p2sq must sum to 1, got {}",
                    p1sq + p2sq
                )));
            }
        }
        vec![p1sq.sqrt(), (1.0 - p1sq).sqrt()]
    } else {
        let raw = args.weights.clone().unwrap();
        if raw.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(CliError::Invalid(
                "--weights entries must be strictly positive".into(),
            ));
        }
        let sum_sq: f64 = raw.iter().map(|w| w * w).sum();
        if sum_sq <= 0.0 {
            return Err(CliError::Invalid("--weights must not be empty".into()));
        }
        if (sum_sq - 1.0).abs() > 1e-12 {
            eprintln!("warning: weights renormalized, sum of squares was {sum_sq:.17}");
            let norm = sum_sq.sqrt();
            raw.iter().map(|w| w / norm).collect()
        } else {
            raw
        }
    };

    SchmidtSpec::new(args.d1, args.d2, weights).map_err(invalid)
}

fn spec_json(spec: &SchmidtSpec) -> SpecJson {
    SpecJson {
        d1: spec.d1(),
        d2: spec.d2(),
        weights: spec.weights().to_vec(),
    }
}

fn fmt_num(v: f64, digits: Option<usize>) -> String {
    format!("{:.*}", digits.unwrap_or(6), v)
}

fn fmt_csv(v: f64, digits: Option<usize>) -> String {
    match digits {
        Some(d) => format!("{v:.d$}"),
        None => format!("{v:.16e}"),
    }
}

fn spec_line(spec: &SchmidtSpec, digits: Option<usize>) -> String {
    let weights: Vec<String> = spec.weights().iter().map(|w| fmt_num(*w, digits)).collect();
    format!(
        "spec: d1={} d2={} weights=[{}]  (p1*p2 = {})",
        spec.d1(),
        spec.d2(),
        weights.join(", "),
        fmt_num(spec.p1() * spec.p2(), digits)
    )
}

/// One probability row: display name, symbol, closed-form value, the
/// outcome pair to feed the Born rule, and whether the consistency gate
/// applies (it does not for 0-outcome rows whose eigenspace rank exceeds 1,
/// where the published closed form deliberately simplifies).
struct ProbRow {
    name: &'static str,
    symbol: &'static str,
    closed: f64,
    pair: OutcomePair,
    gated: bool,
}

fn quartet_rows(quartet: &HardyQuartet) -> Vec<ProbRow> {
    use Outcome::{Minus, Plus};
    use Setting::{X, Y};
    match *quartet {
        HardyQuartet::White2x2 { eps, a } | HardyQuartet::WhiteHighDim { eps, a } => vec![
            ProbRow {
                name: "P(X1=+1, X2=+1)",
                symbol: "eps",
                closed: eps,
                pair: OutcomePair::new(X, Plus, X, Plus),
                gated: true,
            },
            ProbRow {
                name: "P(Y1=+1, X2=-1)",
                symbol: "eps",
                closed: eps,
                pair: OutcomePair::new(Y, Plus, X, Minus),
                gated: true,
            },
            ProbRow {
                name: "P(X1=-1, Y2=+1)",
                symbol: "eps",
                closed: eps,
                pair: OutcomePair::new(X, Minus, Y, Plus),
                gated: true,
            },
            ProbRow {
                name: "P(Y1=+1, Y2=+1)",
                symbol: "a+eps",
                closed: a + eps,
                pair: OutcomePair::new(Y, Plus, Y, Plus),
                gated: true,
            },
        ],
        HardyQuartet::Colored2x2 { eps1, eps2, eps3 } => vec![
            ProbRow {
                name: "P(X1=+1, X2=+1)",
                symbol: "eps1",
                closed: eps1,
                pair: OutcomePair::new(X, Plus, X, Plus),
                gated: true,
            },
            ProbRow {
                name: "P(Y1=+1, X2=-1)",
                symbol: "eps2",
                closed: eps2,
                pair: OutcomePair::new(Y, Plus, X, Minus),
                gated: true,
            },
            ProbRow {
                name: "P(X1=-1, Y2=+1)",
                symbol: "eps2",
                closed: eps2,
                pair: OutcomePair::new(X, Minus, Y, Plus),
                gated: true,
            },
            ProbRow {
                name: "P(Y1=+1, Y2=+1)",
                symbol: "eps3",
                closed: eps3,
                pair: OutcomePair::new(Y, Plus, Y, Plus),
                gated: true,
            },
        ],
    }
}

/// The probability family for a (spec, noise) combination, with its rows.
fn family_rows(
    spec: &SchmidtSpec,
    noise: NoiseArg,
    purity: f64,
) -> Result<(&'static str, NoisyHardyState, HardyQuartet, Vec<ProbRow>), CliError> {
    match noise {
        NoiseArg::White if spec.is_two_qubit() => {
            let two = TwoQubitSpec::from_spec(spec).expect("checked two-qubit");
            let quartet = quartet_white_2x2(&two, purity).map_err(invalid)?;
            let state = mix_white(spec, purity).map_err(invalid)?;
            let rows = quartet_rows(&quartet);
            Ok(("white_2x2", state, quartet, rows))
        }
        NoiseArg::White => {
            let sextet = sextet_white_highdim(spec, purity).map_err(invalid)?;
            let state = mix_white(spec, purity).map_err(invalid)?;
            let quartet = sextet.quartet();
            let mut rows = quartet_rows(&quartet);
            if let Some(closed) = sextet.y1_plus_x2_zero {
                rows.push(ProbRow {
                    name: "P(Y1=+1, X2=0)",
                    symbol: "eps",
                    closed,
                    pair: OutcomePair::new(Setting::Y, Outcome::Plus, Setting::X, Outcome::Zero),
                    gated: spec.d2() == 3,
                });
            }
            if let Some(closed) = sextet.x1_zero_y2_plus {
                rows.push(ProbRow {
                    name: "P(X1=0, Y2=+1)",
                    symbol: "eps",
                    closed,
                    pair: OutcomePair::new(Setting::X, Outcome::Zero, Setting::Y, Outcome::Plus),
                    gated: spec.d1() == 3,
                });
            }
            Ok(("white_highdim", state, quartet, rows))
        }
        NoiseArg::Colored => {
            let two = TwoQubitSpec::from_spec(spec).map_err(invalid)?;
            let quartet = quartet_colored_2x2(&two, purity).map_err(invalid)?;
            let state = mix_colored(&two, purity).map_err(invalid)?;
            let rows = quartet_rows(&quartet);
            Ok(("colored_2x2", state, quartet, rows))
        }
    }
}

fn run_probs(args: ProbsArgs) -> Result<(), CliError> {
    let spec = build_spec(&args.spec)?;
    let (family, state, _, rows) = family_rows(&spec, args.noise, args.p)?;

    let mut json_rows = Vec::new();
    let mut footnote = false;
    for row in &rows {
        let born = born_joint(&state, row.pair).map_err(|e| CliError::Internal(e.to_string()))?;
        let abs_diff = (born - row.closed).abs();
        if row.gated && abs_diff > CONSISTENCY_TOL {
            return Err(CliError::Internal(format!(
                "internal consistency failure: {} closed-form {} vs born-rule {}",
                row.name, row.closed, born
            )));
        }
        footnote |= !row.gated;
        json_rows.push(ProbRowJson {
            name: row.name.to_string(),
            symbol: row.symbol.to_string(),
            closed_form: row.closed,
            born,
            abs_diff,
        });
    }

    match args.format {
        TextFormat::Json => {
            let out = ProbsJson {
                schema: SCHEMA_VERSION,
                spec: spec_json(&spec),
                family: family.to_string(),
                noise: match args.noise {
                    NoiseArg::White => "white",
                    NoiseArg::Colored => "colored",
                }
                .to_string(),
                p: args.p,
                rows: json_rows,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        TextFormat::Text => {
            let d = args.digits;
            println!("{}", spec_line(&spec, d));
            println!(
                "state: {} noise, p = {}",
                match args.noise {
                    NoiseArg::White => "white",
                    NoiseArg::Colored => "colored",
                },
                fmt_num(args.p, d)
            );
            println!();
            println!(
                "{:<18} {:<7} {:<16} {:<16} |diff|",
                "probability", "symbol", "closed-form", "born-rule"
            );
            for (row, json) in rows.iter().zip(&json_rows) {
                println!(
                    "{:<18} {:<7} {:<16} {:<16} {:.1e}{}",
                    row.name,
                    row.symbol,
                    fmt_num(json.closed_form, d),
                    fmt_num(json.born, d),
                    json.abs_diff,
                    if row.gated { "" } else { " *" }
                );
            }
            if footnote {
                println!();
                println!(
                    "* closed form assumes a rank-1 zero eigenspace (d = 3); on this \
                     dimension the Born-rule value scales with the rank d - 2"
                );
            }
        }
    }
    Ok(())
}

fn run_thresholds(args: ThresholdsArgs) -> Result<(), CliError> {
    let spec = build_spec(&args.spec)?;
    let rep = report(&spec);
    let orderings: Vec<OrderingJson> = rep
        .orderings
        .iter()
        .map(|o| OrderingJson {
            name: match o.kind {
                OrderingKind::ColoredBelowWhite => "colored_below_white",
                OrderingKind::ChshBelowWhite => "chsh_below_white",
                OrderingKind::HighdimBelowTracedist => "highdim_below_tracedist",
            }
            .to_string(),
            lesser: o.lesser,
            greater: o.greater,
        })
        .collect();

    match args.format {
        TextFormat::Json => {
            let out = ThresholdsJson {
                schema: SCHEMA_VERSION,
                spec: spec_json(&spec),
                thresholds: ThresholdValuesJson {
                    white_2x2: rep.t_white,
                    colored: rep.t_colored,
                    chsh_white: rep.t_chsh,
                    white_highdim: rep.t_highdim,
                    tracedist_p_equivalent: rep.t_tracedist,
                    tracedist_eta_bound: rep.eta_bound,
                },
                orderings,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        TextFormat::Text => {
            let d = args.digits;
            println!("{}", spec_line(&spec, d));
            println!();
            println!("{:<26} threshold p", "criterion");
            println!("{:<26} {}", "white noise (2x2)", fmt_num(rep.t_white, d));
            let na = "n/a (requires 2x2)".to_string();
            println!(
                "{:<26} {}",
                "colored noise (2x2)",
                rep.t_colored.map_or(na.clone(), |t| fmt_num(t, d))
            );
            println!(
                "{:<26} {}",
                "chsh / horodecki (2x2)",
                rep.t_chsh.map_or(na, |t| fmt_num(t, d))
            );
            println!(
                "{:<26} {}",
                "white noise (general d)",
                fmt_num(rep.t_highdim, d)
            );
            println!(
                "{:<26} {}   (eta bound {})",
                "trace-distance criterion",
                fmt_num(rep.t_tracedist, d),
                fmt_num(rep.eta_bound, d)
            );
            println!();
            if rep.orderings.is_empty() {
                println!("no orderings verified");
            } else {
                println!("orderings verified strictly:");
                for o in &rep.orderings {
                    println!(
                        "  {}: {} < {}",
                        o.kind.label(),
                        fmt_num(o.lesser, d),
                        fmt_num(o.greater, d)
                    );
                }
            }
        }
    }
    Ok(())
}

fn run_lhv_check(args: LhvCheckArgs) -> Result<(), CliError> {
    let spec = build_spec(&args.spec)?;
    let (family, _, quartet, _) = family_rows(&spec, args.noise, args.p)?;
    let check = hardy_inequality(&quartet);
    let lp = check_quartet(&quartet);
    let measures = measure_constraints(&quartet);

    let inequality = match quartet {
        HardyQuartet::White2x2 { .. } => "2*eps - a >= 0",
        HardyQuartet::Colored2x2 { .. } => "eps1 + 2*eps2 - eps3 >= 0",
        HardyQuartet::WhiteHighDim { .. } => "4*eps - a >= 0",
    };
    let boundary = check.slack.abs() <= BOUNDARY_TOL;
    let agreement = if boundary {
        "boundary"
    } else if (check.slack > 0.0) == lp.feasible {
        "agree"
    } else {
        "disagree"
    };

    match args.format {
        TextFormat::Json => {
            let out = LhvCheckJson {
                schema: SCHEMA_VERSION,
                spec: spec_json(&spec),
                family: family.to_string(),
                noise: match args.noise {
                    NoiseArg::White => "white",
                    NoiseArg::Colored => "colored",
                }
                .to_string(),
                p: args.p,
                inequality: inequality.to_string(),
                slack: check.slack,
                inequality_satisfied: check.satisfied,
                lp_feasible: lp.feasible,
                lp_max_violation: lp.max_violation,
                agreement: agreement.to_string(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        TextFormat::Text => {
            let d = args.digits;
            println!("{}", spec_line(&spec, d));
            println!(
                "state: {} noise, p = {}  (family {})",
                match args.noise {
                    NoiseArg::White => "white",
                    NoiseArg::Colored => "colored",
                },
                fmt_num(args.p, d),
                family
            );
            println!();
            let entries: Vec<String> = quartet
                .entries()
                .iter()
                .map(|(n, v)| format!("{n} = {}", fmt_num(*v, d)))
                .collect();
            println!("closed-form probabilities: {}", entries.join(", "));
            println!("set-measure constraints:");
            println!("  mu[A&B]         = {}", fmt_num(measures.a_and_b, d));
            println!(
                "  mu[C] - mu[B&C] = {}",
                fmt_num(measures.c_minus_b_and_c, d)
            );
            println!(
                "  mu[D] - mu[A&D] = {}",
                fmt_num(measures.d_minus_a_and_d, d)
            );
            println!("  mu[C&D]         = {}", fmt_num(measures.c_and_d, d));
            println!(
                "inequality {}: slack = {}  -> {}",
                inequality,
                fmt_num(check.slack, d),
                if boundary {
                    "boundary"
                } else if check.satisfied {
                    "satisfied"
                } else {
                    "violated"
                }
            );
            println!(
                "LP over deterministic strategies: {}, best achievable max residual = {:.3e}",
                if lp.feasible {
                    "feasible"
                } else {
                    "infeasible"
                },
                lp.max_violation
            );
            println!(
                "agreement: {}",
                match agreement {
                    "boundary" =>
                        format!("boundary (|slack| <= {BOUNDARY_TOL:.0e}, LP not compared)"),
                    "agree" if lp.feasible =>
                        "agree (both admit a local deterministic model)".to_string(),
                    "agree" => "agree (both rule out a local deterministic model)".to_string(),
                    other => other.to_string(),
                }
            );
        }
    }

    if agreement == "disagree" {
        return Err(CliError::Internal(format!(
            "internal consistency failure: inequality slack {} contradicts LP verdict (feasible = {}, max residual {:.3e})",
            check.slack, lp.feasible, lp.max_violation
        )));
    }
    Ok(())
}

fn parse_grid(grid: &str) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Invalid(format!(
            "--grid must be start:stop:steps, got {grid}"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad grid start {}", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad grid stop {}", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad grid steps {}", parts[2])))?;
    Ok((start, stop, steps))
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    if !args.p2sq.is_finite() || args.p2sq <= 0.0 || args.p2sq > 1.0 {
        return Err(CliError::Invalid(format!(
            "--p2sq must lie in (0, 1], got {}",
            args.p2sq
        )));
    }
    let (start, stop, steps) = parse_grid(&args.grid)?;
    let request = SweepRequest {
        d1: args.d1,
        d2: args.d2,
        p2: args.p2sq.sqrt(),
        p1_start: start,
        p1_stop: stop,
        steps,
    };
    let result = sweep::run(&request).map_err(invalid)?;

    match args.format {
        SweepFormat::Json => {
            let out = SweepJson {
                schema: SCHEMA_VERSION,
                request: SweepRequestJson {
                    d1: request.d1,
                    d2: request.d2,
                    p2: request.p2,
                    grid: GridJson { start, stop, steps },
                },
                rows: result
                    .rows
                    .iter()
                    .map(|r| SweepRowJson {
                        p1: r.p1,
                        upper_one_minus_p: r.upper_one_minus_p,
                        lower_one_minus_p: r.lower_one_minus_p,
                    })
                    .collect(),
                skipped: result
                    .skipped
                    .iter()
                    .map(|s| SkippedJson {
                        p1: s.p1,
                        reason: s.reason.clone(),
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        SweepFormat::Csv => {
            let d = args.digits;
            println!("p1,upper_one_minus_p,lower_one_minus_p");
            for row in &result.rows {
                println!(
                    "{},{},{}",
                    fmt_csv(row.p1, d),
                    fmt_csv(row.upper_one_minus_p, d),
                    fmt_csv(row.lower_one_minus_p, d)
                );
            }
            for s in &result.skipped {
                println!("# skipped p1={} reason={}", fmt_csv(s.p1, d), s.reason);
            }
        }
    }
    Ok(())
}
