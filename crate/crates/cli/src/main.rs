//! `ranklab` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure or reproduction mismatch, 2 usage error,
//! 3 resource cap exceeded, 4 domain error (with witness data when available).

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ranklab::code::{delsarte_rank_distribution, singleton_bound};
use ranklab::constructions::{
    albert_twisted_field, gabidulin, scattered_pair_code, skew_mrd, twisted_code, SkewParams, TwistFamily,
    TwistSpec,
};
use ranklab::explore::{census, sample_mrd_fraction, equivalence_test, CensusParams, EquivalenceVerdict};
use ranklab::representations::{convert, RepKind, Representation};
use ranklab::semifield::SemifieldMultiplication;
use ranklab::symmetric::{commutative_to_symmetric, schmidt_bound, symmetric_type, type_distribution};
use ranklab::transforms::{bilinear_form_dual, delsarte_dual, idealisers, lift, puncture, shorten, subspace_distance, Axis};
use ranklab::{Error, Field, Linearity, Matrix, RankMetricCode, SigmaPolynomial, SubspaceBasis};

mod reproduce;

#[derive(Parser)]
#[command(name = "ranklab", version, about = "Rank-metric and MRD code toolkit")]
struct Cli {
    /// Worker threads for partitionable work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Exhaustive-enumeration cap (overrides RANKLAB_CAP).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from one of the known families and write it as JSON.
    Construct(ConstructArgs),
    /// Rank distribution, minimum distance and MRD status of a code file.
    Analyze { file: PathBuf },
    /// Delsarte dual, or the dual for the bilinear form given by B1 and B2.
    Dual {
        file: PathBuf,
        #[arg(long, requires = "b2")]
        b1: Option<String>,
        #[arg(long, requires = "b1")]
        b2: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shorten by a subspace given by spanning vectors `v1;v2;...`.
    Shorten {
        file: PathBuf,
        #[arg(long, default_value = "row")]
        axis: String,
        #[arg(long)]
        vectors: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Puncture by a full-rank matrix.
    Puncture {
        file: PathBuf,
        #[arg(long, default_value = "row")]
        axis: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift every codeword to the row space of `[I | A]`.
    Lift { file: PathBuf },
    /// Left and right idealisers.
    Idealisers { file: PathBuf },
    /// Convert between vector, matrix, linearized polynomial, Dickson and Moore forms.
    Convert {
        /// Base field GF(q).
        #[arg(long)]
        q: String,
        /// Extension degree of GF(q^n) over GF(q).
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Vector `c1,c2,...`, matrix `r1;r2;...` or polynomial `s=..; coeffs=[..]`.
        #[arg(long)]
        value: String,
    },
    /// Symmetric matrices: types, bounds and type distributions
    #[command(subcommand)]
    Symmetric(SymmetricCommand),
    /// Exhaustive census of subspaces of n x m matrices.
    Census(CensusArgs),
    /// Exact or Monte-Carlo MRD fraction among random subspaces.
    Sample(SampleArgs),
    /// Decide equivalence of two codes.
    Equiv { a: PathBuf, b: PathBuf },
    /// Re-run a table and diff against stored expectations.
    Reproduce {
        #[arg(long, default_value = "all")]
        table: String,
    },
}

#[derive(Subcommand)]
enum SymmetricCommand {
    /// Rank and sign of a symmetric matrix.
    Type {
        #[arg(long)]
        q: String,
        #[arg(long)]
        matrix: String,
    },
    /// Upper bound on the size of a symmetric code.
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        additive: bool,
    },
    /// Type distribution of a symmetric code file.
    Typedist { file: PathBuf },
    /// Symmetric code from the multiplication of GF(q^n).
    FromCommutative {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gabidulin,
    Twisted,
    Skew,
    Scattered,
    Albert,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Base field: `q`, `p^e` or a descriptor with moduli.
    #[arg(long)]
    q: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Twisted family: tg, gtg, agtg, tz.
    #[arg(long, default_value = "gtg")]
    twist: String,
    /// Element code used as η (twisted, skew) or c (albert).
    #[arg(long, default_value_t = 0)]
    eta: u32,
    #[arg(long, default_value_t = 1)]
    h: u32,
    /// Degree of the skew-polynomial modulus over the centre.
    #[arg(long, default_value_t = 1)]
    s_deg: u32,
    /// Scattered polynomial `s=..; coeffs=[..]` over GF(q^n).
    #[arg(long)]
    poly: Option<String>,
    /// Albert exponents i, j.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    exponents: Option<Vec<u32>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    q: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    d: usize,
    /// Leave transpose out of the equivalence group.
    #[arg(long)]
    no_transpose: bool,
    /// Scan counts only.
    #[arg(long)]
    scan_only: bool,
    #[arg(long, default_value_t = 1 << 14)]
    chunk: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    q: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    dim: usize,
    /// fp, fq or fqn.
    #[arg(long, default_value = "fq")]
    linearity: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Lib(Error),
    Io(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.cap {
        std::env::set_var("RANKLAB_CAP", cap.to_string());
    }
    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().is_err() {
            eprintln!("warning: thread pool already initialised");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if let Some(w) = e.witness() {
                eprintln!("witness: {w}");
            }
            match e {
                Error::Resource { .. } => ExitCode::from(3),
                _ => ExitCode::from(4),
            }
        }
    }
}

fn parse_field(text: &str) -> ranklab::Result<Field> {
    Field::parse(text)
}

fn read_code(path: &PathBuf) -> CliResult<RankMetricCode> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    Ok(RankMetricCode::from_json(&text)?)
}

fn write_text(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit(format: Format, value: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Table => {
            if let Value::Object(map) = value {
                let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
                for (k, v) in map {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    println!("{k:<width$}  {shown}");
                }
            } else {
                println!("{value}");
            }
        }
    }
}

fn header(command: &str) -> Value {
    json!({ "version": env!("CARGO_PKG_VERSION"), "command": command })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn parse_vectors(field: &Field, text: &str) -> ranklab::Result<Vec<Vec<u32>>> {
    Ok(Matrix::parse(field, text)?.row_vectors())
}

fn run(cli: &Cli) -> CliResult<()> {
    let fmt = cli.format;
    match &cli.command {
        Command::Construct(a) => {
            let code = construct(a)?;
            write_text(&a.out, &code.to_json())
        }
        Command::Analyze { file } => {
            let code = read_code(file)?;
            emit(fmt, &merge(header("analyze"), analyze(&code)?));
            Ok(())
        }
        Command::Dual { file, b1, b2, out } => {
            let code = read_code(file)?;
            let dual = match (b1, b2) {
                (Some(b1), Some(b2)) => {
                    let f = code.field();
                    bilinear_form_dual(&code, &Matrix::parse(f, b1)?, &Matrix::parse(f, b2)?)?
                }
                _ => delsarte_dual(&code)?,
            };
            write_text(out, &dual.to_json())
        }
        Command::Shorten { file, axis, vectors, out } => {
            let code = read_code(file)?;
            let axis: Axis = axis.parse()?;
            let f = code.field();
            let ambient = match axis {
                Axis::Row => code.m(),
                Axis::Column => code.n(),
            };
            let u = SubspaceBasis::from_vectors(f, ambient, parse_vectors(f, vectors)?);
            write_text(out, &shorten(&code, &u, axis)?.to_json())
        }
        Command::Puncture { file, axis, matrix, out } => {
            let code = read_code(file)?;
            let axis: Axis = axis.parse()?;
            let x = Matrix::parse(code.field(), matrix)?;
            write_text(out, &puncture(&code, &x, axis)?.to_json())
        }
        Command::Lift { file } => {
            let code = read_code(file)?;
            let lifted = lift(&code)?;
            let f = code.field();
            let mut min = None;
            if lifted.len() <= 1024 {
                for i in 0..lifted.len() {
                    for j in i + 1..lifted.len() {
                        let d = subspace_distance(f, &lifted[i], &lifted[j])?;
                        min = Some(min.map_or(d, |m: usize| m.min(d)));
                    }
                }
            }
            let subspaces: Vec<String> = lifted.iter().map(|s| s.as_matrix(f).to_text()).collect();
            emit(
                fmt,
                &merge(
                    header("lift"),
                    json!({
                        "count": lifted.len(),
                        "ambient": code.n() + code.m(),
                        "dimension": code.n(),
                        "min_subspace_distance": min,
                        "subspaces": subspaces,
                    }),
                ),
            );
            Ok(())
        }
        Command::Idealisers { file } => {
            let code = read_code(file)?;
            let ids = idealisers(&code)?;
            let basis = |v: &[Matrix]| -> Vec<String> { v.iter().map(|m| m.to_text()).collect() };
            emit(
                fmt,
                &merge(
                    header("idealisers"),
                    json!({
                        "left_order": ids.left_order.to_string(),
                        "right_order": ids.right_order.to_string(),
                        "fqn_linear": ids.fqn_linear,
                        "left_basis": basis(&ids.left),
                        "right_basis": basis(&ids.right),
                    }),
                ),
            );
            Ok(())
        }
        Command::Convert { q, n, s, from, to, value } => {
            let base = parse_field(q)?;
            let ext = base.extension(*n, None)?;
            let from_kind: RepKind = from.parse()?;
            let to_kind: RepKind = to.parse()?;
            let rep = match from_kind {
                RepKind::Vector => Representation::Vector(Matrix::parse(&ext, value)?.into_data()),
                RepKind::Matrix => Representation::Matrix(Matrix::parse(&base, value)?),
                RepKind::Linpoly => Representation::Linpoly(SigmaPolynomial::parse(&ext, value)?),
                RepKind::Dickson => Representation::Dickson(Matrix::parse(&ext, value)?),
                RepKind::Moore => Representation::Moore(Matrix::parse(&ext, value)?),
            };
            let out = convert(&ext, *s, &rep, to_kind)?;
            let text = match &out {
                Representation::Vector(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                Representation::Matrix(m) | Representation::Dickson(m) | Representation::Moore(m) => m.to_text(),
                Representation::Linpoly(f) => f.to_text(),
            };
            emit(
                fmt,
                &merge(
                    header("convert"),
                    json!({ "field": ext.to_text(), "to": to, "value": text, "rank": out.rank(&ext) }),
                ),
            );
            Ok(())
        }
        Command::Symmetric(cmd) => symmetric(fmt, cmd),
        Command::Census(a) => {
            let field = parse_field(&a.q)?;
            let mut p = CensusParams::new(&field, a.n, a.m, a.dim, a.d);
            p.transpose = !a.no_transpose;
            p.classify = !a.scan_only;
            p.chunk = a.chunk;
            let report = census(&p)?;
            if let Some(out) = &a.out {
                write_text(&Some(out.clone()), &report.to_json())?;
            }
            match fmt {
                Format::Json => println!("{}", report.to_json()),
                Format::Table => print!("{}", report.to_table()),
            }
            Ok(())
        }
        Command::Sample(a) => {
            let field = parse_field(&a.q)?;
            let lin: Linearity = a.linearity.parse()?;
            let r = sample_mrd_fraction(&field, a.n, a.m, a.dim, lin, a.trials, a.seed)?;
            let v = serde_json::to_value(&r).expect("serializable");
            emit(fmt, &merge(header("sample"), v));
            Ok(())
        }
        Command::Equiv { a, b } => {
            let (c1, c2) = (read_code(a)?, read_code(b)?);
            let v = match equivalence_test(&c1, &c2)? {
                EquivalenceVerdict::Equivalent(mv) => json!({
                    "verdict": "equivalent",
                    "x": mv.x.to_text(),
                    "y": mv.y.to_text(),
                    "rho": mv.rho,
                    "transpose": mv.transpose,
                }),
                EquivalenceVerdict::NotEquivalent { reason } => json!({ "verdict": "not-equivalent", "reason": reason }),
                EquivalenceVerdict::Indeterminate { reason } => json!({ "verdict": "indeterminate", "reason": reason }),
            };
            emit(fmt, &merge(header("equiv"), v));
            Ok(())
        }
        Command::Reproduce { table } => {
            let results = reproduce::run(table)?;
            let mut failed = Vec::new();
            for r in &results {
                println!("{} {}: {}", if r.ok { "PASS" } else { "FAIL" }, r.table, r.detail);
                if !r.ok {
                    failed.push(r.table.clone());
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Mismatch(failed.join(", ")))
            }
        }
    }
}

fn construct(a: &ConstructArgs) -> CliResult<RankMetricCode> {
    let base = parse_field(&a.q)?;
    let need_n = || a.n.ok_or_else(|| Failure::Lib(Error::Argument("--n is required for this family".into())));
    let code = match a.family {
        Family::Gabidulin => gabidulin(&base, need_n()?, a.k, a.s)?,
        Family::Twisted => {
            let family: TwistFamily = a.twist.parse()?;
            twisted_code(&TwistSpec::new(family, a.k, a.eta, a.h), &base, need_n()?, a.s)?
        }
        Family::Skew => {
            let mut p = SkewParams::new(need_n()?, a.s_deg, a.k, a.eta);
            p.twist = a.s;
            p.seed = a.seed;
            skew_mrd(&base, &p)?
        }
        Family::Scattered => {
            let ext = base.extension(need_n()?, None)?;
            let text = a
                .poly
                .as_deref()
                .ok_or_else(|| Failure::Lib(Error::Argument("--poly is required for scattered codes".into())))?;
            scattered_pair_code(&SigmaPolynomial::parse(&ext, text)?)?
        }
        Family::Albert => {
            if !base.is_prime_field() && base.base().is_some() {
                return Err(Error::Argument("albert fields take q = p^e over a prime".into()).into());
            }
            let ij = a.exponents.clone().unwrap_or_else(|| vec![1, 2]);
            albert_twisted_field(base.characteristic(), base.prime_degree(), ij[0], ij[1], a.eta)?
        }
    };
    Ok(code)
}

fn analyze(code: &RankMetricCode) -> CliResult<Value> {
    let dist = code.rank_distribution()?;
    let d = dist
        .min_distance()
        .ok_or_else(|| Error::domain("minimum distance is undefined for a code with fewer than two codewords"))?;
    let (n, m) = (code.n(), code.m());
    let q = code.q();
    let mrd = code.is_mrd()?;
    let predicted = if mrd {
        Some(delsarte_rank_distribution(q, n, m, d)?.0.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    } else {
        None
    };
    Ok(json!({
        "q": q,
        "n": n,
        "m": m,
        "transposed": code.transposed(),
        "linearity": code.linearity().to_string(),
        "prime_dim": code.prime_dim(),
        "size": code.size().to_string(),
        "rank_distribution": dist.0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "min_distance": d,
        "singleton_bound": singleton_bound(q, n, m, d)?.to_string(),
        "mrd": mrd,
        "delsarte_distribution": predicted,
        "provenance": code.provenance(),
    }))
}

fn symmetric(fmt: Format, cmd: &SymmetricCommand) -> CliResult<()> {
    match cmd {
        SymmetricCommand::Type { q, matrix } => {
            let f = parse_field(q)?;
            let t = symmetric_type(&Matrix::parse(&f, matrix)?)?;
            emit(fmt, &merge(header("symmetric type"), json!({ "rank": t.rank, "sign": t.sign })));
        }
        SymmetricCommand::Bound { q, n, d, additive } => {
            let b = schmidt_bound(*q, *n, *d, *additive)?;
            emit(
                fmt,
                &merge(
                    header("symmetric bound"),
                    json!({ "q": q, "n": n, "d": d, "additive": additive, "bound": b.to_string() }),
                ),
            );
        }
        SymmetricCommand::Typedist { file } => {
            let code = read_code(file)?;
            let t = type_distribution(&code)?;
            emit(
                fmt,
                &merge(
                    header("symmetric typedist"),
                    json!({
                        "plus": t.plus.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "minus": t.minus.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "text": t.to_string(),
                    }),
                ),
            );
        }
        SymmetricCommand::FromCommutative { q, n, out } => {
            let base = parse_field(q)?;
            let ext = base.extension(*n, None)?;
            let code = commutative_to_symmetric(&SemifieldMultiplication::field_multiplication(&ext))?;
            write_text(out, &code.to_json())?;
        }
    }
    Ok(())
}
