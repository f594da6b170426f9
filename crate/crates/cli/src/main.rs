//! `specialis`: classification of special families of cyclic covers of the
//! projective line, with characteristic-p verification tools.
//!
//! Exit codes: 0 success, 1 resource/IO, 2 usage, 3 internal invariant
//! violation (a bug certificate, e.g. the two p-rank computations
//! disagreeing).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use specialis::arith::{ArithError, FpElt, MultiPoly};
use specialis::charp::{
    cartier_matrix_numeric, cartier_matrix_symbolic, count_points, hasse_witt_variation,
    l_polynomial, p_rank, p_rank_from_l, Branch, CartierBlock, CharpContext, CharpError,
};
use specialis::monodromy::{parse_raw_datum, MonodromyDatum, ValidationError};
use specialis::special::{
    enumerate_special, is_special, render_report, ClassificationRow, ReportFormat, SearchBounds,
    SpecialError,
};

#[derive(Parser)]
#[command(
    name = "specialis",
    version,
    about = "Special families of cyclic covers of the projective line: exhaustive classification and characteristic-p tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the special families in a search box
    Classify(ClassifyArgs),
    /// Report genus, eigenspace dimensions, and the specialness verdict of one datum
    Inspect {
        /// Monodromy datum, e.g. "m=6 a=1,1,1,3"
        datum: String,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Characteristic-p experiments: Cartier matrices, p-rank, point counts
    #[command(subcommand)]
    Charp(CharpCmd),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long = "m-max", default_value_t = 24)]
    m_max: u64,
    #[arg(long = "n-max", default_value_t = 8)]
    n_max: usize,
    #[arg(long = "genus-max")]
    genus_max: Option<u64>,
    /// table, json, or csv
    #[arg(long, default_value = "table")]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Worker threads (default: available parallelism; 1 = sequential)
    #[arg(long)]
    jobs: Option<usize>,
    /// Suppress the table banner
    #[arg(long)]
    plain: bool,
}

#[derive(Args)]
struct CharpCommon {
    /// Monodromy datum, e.g. "m=2 a=1,1,1,1"
    datum: String,
    /// Prime with p = 1 (mod m)
    #[arg(long)]
    p: u64,
    /// Comma-separated branch points in F_p, e.g. 0,1,2,3
    #[arg(long, conflicts_with = "symbolic")]
    branch: Option<String>,
    /// Use symbolic branch coordinates t_1..t_N
    #[arg(long)]
    symbolic: bool,
    /// Append the implied branch point at infinity (a_inf = -sum a_i mod m)
    #[arg(long = "allow-infinity")]
    allow_infinity: bool,
    /// table or json
    #[arg(long, default_value = "table")]
    format: String,
}

#[derive(Subcommand)]
enum CharpCmd {
    /// Cartier-Manin matrix blocks, numeric or symbolic
    Cartier {
        #[command(flatten)]
        common: CharpCommon,
        /// Only the block of this character (default: all of 1..m-1)
        #[arg(long)]
        n: Option<u64>,
    },
    /// p-rank from the Cartier blocks, cross-checked against the L-polynomial
    Prank {
        #[command(flatten)]
        common: CharpCommon,
    },
    /// Rational points of the smooth model over F_{p^k}
    Count {
        #[command(flatten)]
        common: CharpCommon,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// L-polynomial from point counts over F_p..F_{p^g}
    Lpoly {
        #[command(flatten)]
        common: CharpCommon,
    },
    /// Entrywise d/dt_i of the symbolic Cartier block
    Variation {
        #[command(flatten)]
        common: CharpCommon,
        /// Character index of the block
        #[arg(long)]
        n: u64,
        /// Branch-coordinate index i (1-based), differentiates in t_i
        #[arg(long)]
        var: usize,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<ValidationError> for Failure {
    fn from(e: ValidationError) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<SpecialError> for Failure {
    fn from(e: SpecialError) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<ArithError> for Failure {
    fn from(e: ArithError) -> Self {
        let code = match e {
            ArithError::InexactDivision { .. }
            | ArithError::DivisionByZero
            | ArithError::NonInvertibleLeading { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CharpError> for Failure {
    fn from(e: CharpError) -> Self {
        let code = match &e {
            CharpError::GateExceeded { .. } | CharpError::DegreeCapExceeded { .. } => 1,
            CharpError::OracleInconsistency { .. } | CharpError::Internal(_) => 3,
            CharpError::Arith(a) => return Failure::from(a.clone()),
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify(args) => classify(args),
        Command::Inspect { datum, format } => inspect(&datum, &format),
        Command::Charp(cmd) => charp(cmd),
    }
}

fn parse_format(s: &str) -> Result<ReportFormat, Failure> {
    s.parse::<ReportFormat>().map_err(Failure::from)
}

fn classify(args: ClassifyArgs) -> Result<(), Failure> {
    let format = parse_format(&args.format)?;
    let bounds = SearchBounds::new(args.m_max, args.n_max, args.genus_max)?;
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(Failure::usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot configure worker pool: {e}")))?;
    }
    let reports = enumerate_special(&bounds);
    let banner = if args.plain { None } else { Some(&bounds) };
    let rendered = render_report(&reports, format, banner);
    match args.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            file.write_all(rendered.as_bytes())?;
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn inspect(datum_str: &str, format: &str) -> Result<(), Failure> {
    let format = parse_format(format)?;
    let datum: MonodromyDatum = datum_str.parse()?;
    if datum.is_zero_dimensional() {
        let sig = datum.eigenspace_dims();
        match format {
            ReportFormat::Json => {
                let row = serde_json::json!({
                    "m": datum.m(),
                    "N": datum.branch_count(),
                    "a": datum.local_monodromies(),
                    "genus": sig.genus(),
                    "d": sig.dims(),
                    "zero_dimensional": true,
                });
                println!("{}", serde_json::to_string_pretty(&row).unwrap());
            }
            _ => {
                println!("datum: {datum}");
                println!("genus: {}", sig.genus());
                println!("d: {}", join(sig.dims()));
                println!("verdict: zero-dimensional (CM point; excluded from the classification)");
            }
        }
        return Ok(());
    }
    let report = is_special(&datum)?;
    match format {
        ReportFormat::Json => {
            let row = ClassificationRow::from_report(&report);
            println!("{}", serde_json::to_string_pretty(&row).unwrap());
        }
        _ => {
            println!("datum: {datum} (canonical: {})", report.datum);
            println!("genus: {}", report.signature.genus());
            println!("d: {}", join(report.signature.dims()));
            println!("shimura_dim: {}", report.shimura_dim);
            println!("family_dim: {}", report.family_dim);
            println!(
                "verdict: {}",
                if report.special { "special" } else { "not special" }
            );
        }
    }
    Ok(())
}

fn build_context(common: &CharpCommon) -> Result<CharpContext, Failure> {
    let (m, a) = parse_raw_datum(&common.datum)?;
    let branch = match (&common.branch, common.symbolic) {
        (Some(list), false) => {
            let ts = list
                .split(',')
                .map(|tok| tok.trim().parse::<u64>())
                .collect::<Result<Vec<u64>, _>>()
                .map_err(|_| Failure::usage(format!("cannot parse branch points {list:?}")))?;
            Branch::Numeric(ts)
        }
        (None, true) => Branch::Symbolic,
        (None, false) => {
            return Err(Failure::usage("one of --branch or --symbolic is required"));
        }
        (Some(_), true) => unreachable!("clap conflicts_with"),
    };
    let ctx = if common.allow_infinity {
        CharpContext::with_infinity(m, &a, common.p, branch)?
    } else {
        let datum = MonodromyDatum::new(m, a)?;
        CharpContext::new(&datum, common.p, branch)?
    };
    Ok(ctx)
}

fn charp(cmd: CharpCmd) -> Result<(), Failure> {
    match cmd {
        CharpCmd::Cartier { common, n } => {
            let ctx = build_context(&common)?;
            let format = parse_format(&common.format)?;
            let ns: Vec<u64> = match n {
                Some(n) => vec![n],
                None => (1..ctx.m()).collect(),
            };
            let mut blocks_json = Vec::new();
            for &n in &ns {
                match ctx.branch() {
                    Branch::Numeric(_) => {
                        let block = cartier_matrix_numeric(&ctx, n)?;
                        match format {
                            ReportFormat::Json => blocks_json.push(numeric_block_json(&block)),
                            _ => print_block(&block, |e: &FpElt| e.to_string()),
                        }
                    }
                    Branch::Symbolic => {
                        let block = cartier_matrix_symbolic(&ctx, n)?;
                        match format {
                            ReportFormat::Json => blocks_json.push(symbolic_block_json(&block)),
                            _ => print_block(&block, |e: &MultiPoly| e.to_string()),
                        }
                    }
                }
            }
            if format == ReportFormat::Json {
                print_json(&charp_envelope(&ctx, serde_json::json!({ "blocks": blocks_json })));
            }
            Ok(())
        }
        CharpCmd::Prank { common } => {
            let ctx = build_context(&common)?;
            let format = parse_format(&common.format)?;
            let rank = p_rank(&ctx)?;
            let cross = match l_polynomial(&ctx) {
                Ok(l) => Some(p_rank_from_l(&l)),
                Err(CharpError::GateExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            if let Some(other) = cross {
                if other != rank {
                    return Err(Failure {
                        code: 3,
                        message: format!(
                            "p-rank oracles disagree: Cartier gives {rank}, L-polynomial gives {other}"
                        ),
                    });
                }
            }
            match format {
                ReportFormat::Json => print_json(&charp_envelope(
                    &ctx,
                    serde_json::json!({
                        "p_rank": rank,
                        "l_polynomial_p_rank": cross,
                        "cross_check": cross.map(|_| "agree"),
                    }),
                )),
                _ => {
                    println!("p-rank: {rank}");
                    match cross {
                        Some(_) => println!("cross-check (L-polynomial): agree"),
                        None => println!("cross-check (L-polynomial): skipped, p^g exceeds the gate"),
                    }
                }
            }
            Ok(())
        }
        CharpCmd::Count { common, k } => {
            let ctx = build_context(&common)?;
            let format = parse_format(&common.format)?;
            let count = count_points(&ctx, k)?;
            match format {
                ReportFormat::Json => print_json(&charp_envelope(
                    &ctx,
                    serde_json::json!({ "k": k, "count": count }),
                )),
                _ => println!("{count}"),
            }
            Ok(())
        }
        CharpCmd::Lpoly { common } => {
            let ctx = build_context(&common)?;
            let format = parse_format(&common.format)?;
            let l = l_polynomial(&ctx)?;
            match format {
                ReportFormat::Json => {
                    let coeffs: Vec<String> = l.coefficients().iter().map(i128::to_string).collect();
                    print_json(&charp_envelope(
                        &ctx,
                        serde_json::json!({ "genus": l.genus(), "coefficients": coeffs }),
                    ))
                }
                _ => println!("{}", format_lpoly(l.coefficients())),
            }
            Ok(())
        }
        CharpCmd::Variation { common, n, var } => {
            if !common.symbolic {
                return Err(Failure::usage("variation requires --symbolic branch points"));
            }
            let ctx = build_context(&common)?;
            let format = parse_format(&common.format)?;
            let block = hasse_witt_variation(&ctx, n, var)?;
            match format {
                ReportFormat::Json => print_json(&charp_envelope(
                    &ctx,
                    serde_json::json!({ "var": var, "blocks": [symbolic_block_json(&block)] }),
                )),
                _ => print_block(&block, |e: &MultiPoly| e.to_string()),
            }
            Ok(())
        }
    }
}

fn charp_envelope(ctx: &CharpContext, mut body: serde_json::Value) -> serde_json::Value {
    let obj = body.as_object_mut().unwrap();
    obj.insert("m".into(), ctx.m().into());
    obj.insert("p".into(), ctx.p().into());
    if ctx.infinity_monodromy() > 0 {
        obj.insert("a_inf".into(), ctx.infinity_monodromy().into());
    }
    body
}

fn numeric_block_json(block: &CartierBlock<FpElt>) -> serde_json::Value {
    let rows: Vec<Vec<u64>> = block
        .rows()
        .take(block.size)
        .map(|r| r.iter().map(FpElt::value).collect())
        .collect();
    serde_json::json!({
        "n": block.n,
        "size": block.size,
        "semilinearity": "inverse-frobenius",
        "rows": rows,
    })
}

fn symbolic_block_json(block: &CartierBlock<MultiPoly>) -> serde_json::Value {
    let rows: Vec<Vec<serde_json::Value>> = block
        .rows()
        .take(block.size)
        .map(|r| {
            r.iter()
                .map(|entry| {
                    let terms: Vec<serde_json::Value> = entry
                        .terms()
                        .map(|(exps, c)| {
                            serde_json::json!({ "coeffs": exps, "value": c.value() })
                        })
                        .collect();
                    serde_json::Value::Array(terms)
                })
                .collect()
        })
        .collect();
    serde_json::json!({
        "n": block.n,
        "size": block.size,
        "semilinearity": "inverse-frobenius",
        "rows": rows,
    })
}

fn print_block<C>(block: &CartierBlock<C>, show: impl Fn(&C) -> String) {
    println!("n={} ({}x{}):", block.n, block.size, block.size);
    for row in block.rows().take(block.size) {
        let cells: Vec<String> = row.iter().map(&show).collect();
        println!("  [ {} ]", cells.join(", "));
    }
}

fn format_lpoly(coeffs: &[i128]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = match k {
            0 => format!("{c}"),
            1 => format!("{c}*T"),
            _ => format!("{c}*T^{k}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        parts.push("0".into());
    }
    format!("L(T) = {}", parts.join(" + "))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
