use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use stablemac::comb::{Composition, Partition};
use stablemac::daha::weight_alpha_tilde;
use stablemac::fixtures;
use stablemac::hhl::{dump_fillings, stable_e};
use stablemac::stablelimit::{
    a_function, measured_weight, pair_weight, stable_e_pair, weight_sparse, IndexedPair,
};
use stablemac::symfunc::hall_littlewood_p;
use stablemac::verify::{Bounds, EngineRegistry, Registry};
use stablemac::Error;

/// Exact nonsymmetric Macdonald polynomials, stable limits and the limit
/// Cherednik weight basis.
#[derive(Parser)]
#[command(name = "stablemac", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one object and print it canonically.
    Compute(ComputeArgs),
    /// Run a verification suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
    /// Compare or rewrite the golden files.
    Fixtures(FixturesArgs),
    /// List non-attacking fillings with their statistics.
    DumpFillings(DumpArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "E")]
    E,
    #[value(name = "stableE")]
    StableE,
    #[value(name = "pair")]
    Pair,
    #[value(name = "A")]
    A,
    #[value(name = "HLP")]
    Hlp,
    #[value(name = "weight")]
    Weight,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Comma-separated composition, or "empty".
    #[arg(long)]
    mu: Option<String>,
    /// Comma-separated partition, or "empty".
    #[arg(long)]
    lambda: Option<String>,
    /// Engine for `E`: hhl or eigen.
    #[arg(long, default_value = "hhl")]
    engine: String,
    /// For `weight`: apply the limit operators instead of the formula.
    #[arg(long)]
    measured: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    /// Laurent exponent box `lo..hi`.
    #[arg(long = "box", allow_hyphen_values = true)]
    exponent_box: Option<String>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_size: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    deg: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Negative control: run against a deliberately broken ingredient.
    #[arg(long)]
    perturbed: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureAction {
    Check,
    Freeze,
}

#[derive(Args)]
struct FixturesArgs {
    #[arg(value_enum)]
    action: FixtureAction,
    #[arg(long)]
    dir: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    mu: String,
    /// Alphabet size; defaults to the diagram width.
    #[arg(long)]
    n: Option<u32>,
    /// Constraint: extend by zeros and use label len(mu)+i exactly lambda_i times.
    #[arg(long)]
    lambda: Option<String>,
    /// Use the limit cell factors in row 1.
    #[arg(long)]
    limit: bool,
    #[command(flatten)]
    output: Output,
}

/// Usage problems exit 2, failed checks exit 1.
enum Failure {
    Usage(String),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::IndexOutOfRange { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Checks(other.to_string()),
        }
    }
}

fn emit(out: &Output, body: &str) -> Result<(), Failure> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Checks(e.to_string())),
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
    v.as_deref()
        .ok_or_else(|| Failure::Usage(format!("--{flag} is required here")))
}

fn composition(v: &Option<String>) -> Result<Composition, Failure> {
    Ok(Composition::parse(need(v, "mu")?)?)
}

fn partition(v: &Option<String>) -> Result<Partition, Failure> {
    Ok(Partition::parse(need(v, "lambda")?)?)
}

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn weight_text(w: &[(usize, String)]) -> String {
    let items: Vec<String> = w.iter().map(|(i, c)| format!("({i}, \"{c}\")")).collect();
    format!("[{}]", items.join(", "))
}

fn compute(a: &ComputeArgs) -> Result<(), Failure> {
    let fmt = a.output.format;
    let body = match a.kind {
        Kind::E => {
            let mu = composition(&a.mu)?;
            let engines = EngineRegistry::with_defaults();
            let engine = engines.get(&a.engine).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown engine {:?}; known: {:?}",
                    a.engine,
                    engines.names()
                ))
            })?;
            let p = engine.compute(&mu)?;
            match fmt {
                Format::Text => p.to_pretty(),
                Format::Json => to_json(&p),
                Format::Csv => csv_table(
                    &["exponent", "coefficient"],
                    p.terms().iter().map(|(e, c)| {
                        let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                        vec![e.join(" "), c.to_string()]
                    }),
                ),
            }
        }
        Kind::StableE | Kind::Pair => {
            let f = match a.kind {
                Kind::StableE => stable_e(&composition(&a.mu)?),
                _ => stable_e_pair(&IndexedPair::new(
                    composition(&a.mu)?,
                    partition(&a.lambda)?,
                )),
            };
            match (fmt, a.kind) {
                (Format::Text, Kind::StableE) => f.to_text(),
                (Format::Text, _) => f.to_hlp_text()?,
                (Format::Json, _) => to_json(&f),
                (Format::Csv, _) => csv_table(
                    &["x_exponent", "tail_partition", "coefficient"],
                    f.normalize().terms().iter().map(|((e, l), c)| {
                        let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                        vec![e.join(" "), l.to_string(), c.to_string()]
                    }),
                ),
            }
        }
        Kind::A | Kind::Hlp => {
            let l = partition(&a.lambda)?;
            let f = match a.kind {
                Kind::A => a_function(&l),
                _ => hall_littlewood_p(&l),
            };
            match fmt {
                Format::Text => f.to_text(),
                Format::Json => to_json(&f),
                Format::Csv => csv_table(
                    &["basis", "partition", "coefficient"],
                    f.sorted_terms().into_iter().map(|(p, c)| {
                        vec![f.basis().tag().to_string(), p.to_string(), c.to_string()]
                    }),
                ),
            }
        }
        Kind::Weight => {
            let mu = composition(&a.mu)?;
            let w = match (&a.lambda, a.measured) {
                (None, false) => weight_alpha_tilde(&mu),
                (Some(_), false) => pair_weight(&IndexedPair::new(mu, partition(&a.lambda)?)),
                (l, true) => {
                    let f = match l {
                        None => stable_e(&mu),
                        Some(_) => {
                            stable_e_pair(&IndexedPair::new(mu.clone(), partition(&a.lambda)?))
                        }
                    };
                    measured_weight(&f, mu.len() + 2)?
                }
            };
            let w = weight_sparse(&w);
            match fmt {
                Format::Text => weight_text(&w),
                Format::Json => serde_json::to_string(&w).expect("plain data"),
                Format::Csv => csv_table(
                    &["i", "weight"],
                    w.iter().map(|(i, c)| vec![i.to_string(), c.clone()]),
                ),
            }
        }
    };
    emit(&a.output, &body)
}

fn parse_box(s: &str) -> Result<(i32, i32), Failure> {
    let bad = || Failure::Usage(format!("--box expects lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let bounds = Bounds {
        n: a.n,
        exponent_box: a.exponent_box.as_deref().map(parse_box).transpose()?,
        max_len: a.max_len,
        max_size: a.max_size,
        k: a.k,
        deg: a.deg,
        m: a.m,
        r: a.r,
        samples: a.samples,
        seed: a.seed,
        perturbed: a.perturbed,
    };
    let report = Registry::with_defaults().run(&a.suite, &bounds)?;
    let body = match a.output.format {
        Format::Json => to_json(&report),
        Format::Csv => csv_table(
            &["check", "status", "detail"],
            report.checks.iter().map(|c| {
                vec![
                    c.name.clone(),
                    c.status.clone(),
                    c.detail.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!("{} {}", c.status, c.name));
                if let Some(d) = &c.detail {
                    s.push_str(&format!(": {d}"));
                }
                s.push('\n');
            }
            for n in &report.notes {
                s.push_str(&format!("note: {n}\n"));
            }
            s.push_str(&format!(
                "{}: {} ({} passed, {} failed)",
                report.suite, report.status, report.passed, report.failed
            ));
            s
        }
    };
    emit(&a.output, &body)?;
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Checks(format!("{} failed", report.suite)))
    }
}

fn fixtures_cmd(a: &FixturesArgs) -> Result<(), Failure> {
    let dir = a.dir.clone().unwrap_or_else(fixtures::default_dir);
    match a.action {
        FixtureAction::Check => {
            let checks = fixtures::check(&dir);
            let body = match a.output.format {
                Format::Json => to_json(&checks),
                _ => checks
                    .iter()
                    .map(|c| {
                        let mut line = format!("{} {}", c.status, c.name);
                        if let Some(d) = &c.diff {
                            line.push('\n');
                            line.push_str(d.trim_end());
                        }
                        line
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&a.output, &body)?;
            if checks.iter().all(|c| c.passed()) {
                Ok(())
            } else {
                Err(Failure::Checks("fixture drift".into()))
            }
        }
        FixtureAction::Freeze => {
            let written = fixtures::freeze(&dir)?;
            let body = match a.output.format {
                Format::Json => to_json(&json!({ "written": written })),
                _ if written.is_empty() => "nothing to write".into(),
                _ => written
                    .iter()
                    .map(|w| format!("wrote {w}"))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&a.output, &body)
        }
    }
}

fn dump(a: &DumpArgs) -> Result<(), Failure> {
    let mu = Composition::parse(&a.mu)?;
    let (shape, counts) = match &a.lambda {
        None => (mu.clone(), None),
        Some(l) => {
            let l = Partition::parse(l)?;
            let counts: BTreeMap<u32, u32> = l
                .parts()
                .iter()
                .enumerate()
                .map(|(i, &p)| ((mu.len() + i + 1) as u32, p))
                .collect();
            (mu.pad_zeros(l.len()), Some(counts))
        }
    };
    let alphabet = a.n.unwrap_or(shape.len() as u32);
    let rows = dump_fillings(&shape, alphabet, counts.as_ref(), a.limit);
    let body = match a.output.format {
        Format::Text => rows
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => to_json(&rows),
        Format::Csv => csv_table(
            &["cells", "maj", "coinv", "gamma"],
            rows.iter().map(|r| {
                vec![
                    r.cells.clone(),
                    r.maj.to_string(),
                    r.coinv.to_string(),
                    r.gamma.clone(),
                ]
            }),
        ),
    };
    emit(&a.output, &body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Compute(a) => compute(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Fixtures(a) => fixtures_cmd(a),
        Cmd::DumpFillings(a) => dump(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}
