mod build;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use qcover::bounds::bound_table;
use qcover::constructions as cons;
use qcover::design::{
    parse_design, parse_design_in, to_point_set_system, verify_covering, verify_covering_with,
    verify_steiner_system, verify_turan_with, write_design, write_set_system, CoverageReport,
};
use qcover::field::prime_power;
use qcover::{Error, Field, Strategy, SubspaceDesign};

/// Build and verify q-analog covering, Turán and Steiner designs.
#[derive(Parser, Debug)]
#[command(name = "qcover", version, about)]
struct Cli {
    /// Field modulus for reading design files over GF(p^m), as coefficients
    /// from x^0 up to x^m, e.g. `1,1,0,0,0,0,1`.
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a design and verify it.
    Construct(ConstructArgs),
    /// Check a design file as a covering, Turán design or Steiner structure.
    Verify(VerifyArgs),
    /// Print the bound table for C_q(n, k, r).
    Bounds(BoundsArgs),
    /// Expand a binary S_2[2,k,n] into a Steiner system S(3, 2^k, 2^n).
    Expand(ExpandArgs),
    /// Derive S_q[t-1,k-1,n-1] from S_q[t,k,n] through a point.
    Derive(DeriveArgs),
    /// Replace every block by its orthogonal complement.
    Dualize(DualizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Spread,
    Lift,
    PartialSpread,
    LineCovering,
    TuranDual,
    Recursive,
    #[value(name = "cyclic-gf64", alias = "lemma6")]
    CyclicGf64,
    Greedy,
    Trivial,
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    kind: Kind,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Block dimension, or the piece dimension for `partial-spread`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Extra dimensions for `lift`.
    #[arg(long)]
    delta: Option<usize>,
    /// Input design for `lift`, or the C_q[n-1,k-1,r-1] for `recursive`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// The C_q[n-1,k,r] for `recursive`.
    #[arg(long)]
    input2: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Covering,
    Turan,
    Steiner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Expansion,
    Scan,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    mode: Mode,
    /// Strength for covering and steiner modes.
    #[arg(long)]
    r: Option<usize>,
    /// Target dimension for turan mode.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: StrategyArg,
}

#[derive(clap::Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    q: u64,
    /// Largest n in the table.
    #[arg(long)]
    n: u64,
    /// Only the entry n,k,r.
    #[arg(long, value_parser = parse_triple)]
    filter: Option<(u64, u64, u64)>,
    #[arg(long)]
    csv: bool,
}

#[derive(clap::Args, Debug)]
struct ExpandArgs {
    file: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(clap::Args, Debug)]
struct DeriveArgs {
    file: PathBuf,
    /// Strength t of the input Steiner structure.
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// Spanning vector of the point, as a digit string.
    #[arg(long)]
    point: String,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(clap::Args, Debug)]
struct DualizeArgs {
    file: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

fn parse_triple(s: &str) -> Result<(u64, u64, u64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [n, k, r] = parts[..] else {
        return Err(format!("expected n,k,r, got `{s}`"));
    };
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((num(n)?, num(k)?, num(r)?))
}

/// How a command ended.
#[derive(Debug)]
enum Failure {
    Verification(String),
    Invalid(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn verdict(&self) -> &'static str {
        match self {
            Failure::Verification(_) => "fail",
            Failure::Invalid(_) => "invalid",
            Failure::Budget(_) => "budget",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Invalid(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Unverified(_) | Error::SelfCheck(_) => Failure::Verification(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(e) => e.into(),
            Err(e) => Failure::Invalid(format!("{e:#}")),
        }
    }
}

type Outcome = Result<(&'static str, u64), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let ctx = Ctx {
        modulus: cli.modulus.clone(),
    };
    let (name, params, outcome) = match &cli.command {
        Command::Construct(a) => ("construct", construct_params(a), construct(a, &ctx)),
        Command::Verify(a) => ("verify", verify_params(a), verify(a, &ctx)),
        Command::Bounds(a) => ("bounds", bounds_params(a), bounds(a)),
        Command::Expand(a) => (
            "expand",
            format!("file={}", a.file.display()),
            expand(a, &ctx),
        ),
        Command::Derive(a) => (
            "derive",
            format!("file={} t={} point={}", a.file.display(), a.t, a.point),
            derive(a, &ctx),
        ),
        Command::Dualize(a) => (
            "dualize",
            format!("file={}", a.file.display()),
            dualize(a, &ctx),
        ),
    };
    match outcome {
        Ok((verdict, size)) => {
            println!("RESULT: {name} {params} verdict={verdict} size={size}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            println!("RESULT: {name} {params} verdict={} size=0", f.verdict());
            ExitCode::from(f.code())
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(val) = std::env::var("QCOVER_THREADS") else {
        return Ok(());
    };
    let n: usize = val
        .trim()
        .parse()
        .map_err(|_| format!("QCOVER_THREADS must be a positive integer, got `{val}`"))?;
    if n == 0 {
        return Err("QCOVER_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

struct Ctx {
    modulus: Option<Vec<u32>>,
}

impl Ctx {
    fn read_design(&self, path: &Path) -> Result<SubspaceDesign, Failure> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::from)?;
        let bad = |e: Error| Failure::Invalid(format!("{}: {e}", path.display()));
        let d = parse_design(&text).map_err(bad)?;
        let Some(modulus) = &self.modulus else {
            return Ok(d);
        };
        let (p, m) = prime_power(d.q()).expect("design fields have prime power order");
        let field = Field::new(p, m, Some(modulus))?;
        parse_design_in(&text, Arc::new(field)).map_err(bad)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::from)
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Invalid(format!("`{kind}` needs --{flag}")))
}

fn kind_name(k: Kind) -> String {
    k.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn construct_params(a: &ConstructArgs) -> String {
    let mut p = format!("kind={}", kind_name(a.kind));
    for (name, v) in [
        ("q", a.q.map(|x| x as usize)),
        ("n", a.n),
        ("k", a.k),
        ("r", a.r),
        ("delta", a.delta),
    ] {
        if let Some(v) = v {
            p.push_str(&format!(" {name}={v}"));
        }
    }
    p
}

fn construct(a: &ConstructArgs, ctx: &Ctx) -> Outcome {
    let kind = kind_name(a.kind);
    let q = || need(a.q, "q", &kind);
    let n = || need(a.n, "n", &kind);
    let k = || need(a.k, "k", &kind);
    let r = || need(a.r, "r", &kind);
    let (design, strength) = match a.kind {
        Kind::Spread => (cons::spread(q()?, k()?, n()?)?, 1),
        Kind::Lift => {
            let input = ctx.read_design(need(a.input.as_deref(), "input", &kind)?)?;
            (
                cons::lift_covering(&input, need(a.delta, "delta", &kind)?)?,
                1,
            )
        }
        Kind::PartialSpread => {
            let res = cons::partial_spread(q()?, k()?, n()?)?;
            println!("residual {}-subspace: {}", res.m(), res.residual);
            (res.blocks, 0)
        }
        Kind::LineCovering => (cons::optimal_line_covering(q()?, n()?, k()?)?, 1),
        Kind::TuranDual => {
            let (n, k) = (n()?, k()?);
            (cons::turan_dual_covering(q()?, n, k)?, n.saturating_sub(k))
        }
        Kind::Recursive => {
            let r = r()?;
            match (a.input.as_deref(), a.input2.as_deref()) {
                (Some(f1), Some(f2)) => {
                    let (s1, s2) = (ctx.read_design(f1)?, ctx.read_design(f2)?);
                    (cons::recursive_covering(&s1, &s2, r)?, r)
                }
                (None, None) => (build::recursive(q()?, n()?, k()?, r)?, r),
                _ => {
                    return Err(Failure::Invalid(
                        "`recursive` needs both --input and --input2, or neither".into(),
                    ))
                }
            }
        }
        Kind::CyclicGf64 => (cons::cyclic_gf64_design()?, 2),
        Kind::Greedy => (cons::greedy_covering(q()?, n()?, k()?, r()?)?, r()?),
        Kind::Trivial => (cons::trivial_steiner(q()?, n()?, r()?)?, r()?),
    };

    println!(
        "{}: {} blocks of dimension {} in F_{}^{}",
        design.label().unwrap_or("design"),
        design.len(),
        design.k(),
        design.q(),
        design.n()
    );
    let rep = verify_covering_with(&design, strength, Strategy::Auto)?;
    print_report(&rep, &format!("covering at r={strength}"));
    if let Some(out) = &a.output {
        write_file(out, &write_design(&design))?;
        println!("wrote {}", out.display());
    }
    if !rep.is_covering {
        return Err(Failure::Verification(
            "constructed design does not verify".into(),
        ));
    }
    Ok(("pass", design.len() as u64))
}

fn verify_params(a: &VerifyArgs) -> String {
    let mode = match a.mode {
        Mode::Covering => "covering",
        Mode::Turan => "turan",
        Mode::Steiner => "steiner",
    };
    let mut p = format!("file={} mode={mode}", a.file.display());
    if let Some(r) = a.r {
        p.push_str(&format!(" r={r}"));
    }
    if let Some(k) = a.k {
        p.push_str(&format!(" k={k}"));
    }
    p
}

fn verify(a: &VerifyArgs, ctx: &Ctx) -> Outcome {
    let d = ctx.read_design(&a.file)?;
    let strategy = match a.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::Expansion => Strategy::BlockExpansion,
        StrategyArg::Scan => Strategy::TargetScan,
    };
    println!(
        "{} blocks of dimension {} in F_{}^{}",
        d.len(),
        d.k(),
        d.q(),
        d.n()
    );
    let (rep, ok, what) = match a.mode {
        Mode::Covering | Mode::Steiner => {
            let r = need(a.r, "r", "verify")?;
            let rep = verify_covering_with(&d, r, strategy)?;
            let (ok, what) = if a.mode == Mode::Steiner {
                (rep.is_steiner, format!("Steiner at r={r}"))
            } else {
                (rep.is_covering, format!("covering at r={r}"))
            };
            (rep, ok, what)
        }
        Mode::Turan => {
            let k = need(a.k, "k", "verify")?;
            let rep = verify_turan_with(&d, k, strategy)?;
            let ok = rep.is_turan();
            (rep, ok, format!("Turán at k={k}"))
        }
    };
    print_report(&rep, &what);
    if ok {
        Ok(("pass", d.len() as u64))
    } else {
        Err(Failure::Verification(format!(
            "design is not a {what} design"
        )))
    }
}

fn print_report(rep: &CoverageReport, what: &str) {
    println!("targets: {}", rep.total);
    for (m, c) in &rep.histogram {
        println!("  multiplicity {m}: {c}");
    }
    println!(
        "min multiplicity: {}  max multiplicity: {}",
        rep.min, rep.max
    );
    if !rep.witnesses.is_empty() {
        println!("uncovered (first {}):", rep.witnesses.len());
        for w in &rep.witnesses {
            println!("  {w}");
        }
    }
    let ok = if what.starts_with("Steiner") {
        rep.is_steiner
    } else {
        rep.is_covering
    };
    println!("{what}: {}", if ok { "yes" } else { "no" });
}

fn bounds_params(a: &BoundsArgs) -> String {
    match a.filter {
        Some((n, k, r)) => format!("q={} n={n} k={k} r={r}", a.q),
        None => format!("q={} n_max={}", a.q, a.n),
    }
}

fn bounds(a: &BoundsArgs) -> Outcome {
    if !matches!(a.q, 2 | 3) || a.n == 0 || a.n > 12 {
        return Err(Failure::Invalid(
            "bounds needs q in {2, 3} and 1 <= n <= 12".into(),
        ));
    }
    let table = bound_table(a.q, a.n)?;
    if let Some((n, k, r)) = a.filter {
        if table.get(n, k, r).is_none() {
            return Err(Failure::Invalid(format!(
                "no entry ({n},{k},{r}); need 1 <= r <= k <= n <= {}",
                a.n
            )));
        }
    }
    if a.csv {
        print!("{}", table.to_csv(a.filter));
    } else {
        print!("{}", table.to_text(a.filter));
    }
    match a.filter {
        Some((n, k, r)) => {
            let rec = table.get(n, k, r).expect("checked above");
            println!("lower={} upper={}", rec.lower, rec.upper);
            let size: u64 = rec.upper.clone().try_into().unwrap_or(u64::MAX);
            Ok((if rec.is_exact() { "exact" } else { "open" }, size))
        }
        None => {
            for rec in table.records() {
                println!(
                    "RESULT: bounds q={} n={} k={} r={} verdict={} size={}",
                    a.q,
                    rec.n,
                    rec.k,
                    rec.r,
                    if rec.is_exact() { "exact" } else { "open" },
                    rec.upper
                );
            }
            Ok(("pass", table.records().count() as u64))
        }
    }
}

fn expand(a: &ExpandArgs, ctx: &Ctx) -> Outcome {
    let d = ctx.read_design(&a.file)?;
    let sys = cons::expand_to_steiner_system(&d)?;
    let rep = verify_steiner_system(&sys, 3)?;
    println!(
        "S(3,{},{}): {} blocks, every 3-subset covered exactly once: {}",
        sys.block_size(),
        sys.points(),
        sys.len(),
        if rep.is_steiner { "yes" } else { "no" }
    );
    write_file(&a.output, &write_set_system(&sys))?;
    if !rep.is_steiner {
        return Err(Failure::Verification(
            "expansion is not a Steiner system".into(),
        ));
    }
    Ok(("pass", sys.len() as u64))
}

fn derive(a: &DeriveArgs, ctx: &Ctx) -> Outcome {
    let d = ctx.read_design(&a.file)?;
    let v = d.space().parse_vector(&a.point)?;
    if v.is_zero() {
        return Err(Failure::Invalid("point must be a nonzero vector".into()));
    }
    let p = d.space().span(&[v])?;
    let out = cons::derive_steiner(&d, a.t, &p)?;
    let points = to_point_set_system(&out)?;
    println!(
        "derived S_{}[{},{},{}]: {} blocks over {} points",
        out.q(),
        a.t - 1,
        out.k(),
        out.n(),
        out.len(),
        points.points()
    );
    let rep = verify_covering(&out, a.t - 1)?;
    println!(
        "Steiner at r={}: {}",
        a.t - 1,
        if rep.is_steiner { "yes" } else { "no" }
    );
    write_file(&a.output, &write_design(&out))?;
    if !rep.is_steiner {
        return Err(Failure::Verification(
            "derived design is not a Steiner structure".into(),
        ));
    }
    Ok(("pass", out.len() as u64))
}

fn dualize(a: &DualizeArgs, ctx: &Ctx) -> Outcome {
    let d = ctx.read_design(&a.file)?;
    let dual = d.dualize();
    println!(
        "dual: {} blocks of dimension {} in F_{}^{}",
        dual.len(),
        dual.k(),
        dual.q(),
        dual.n()
    );
    write_file(&a.output, &write_design(&dual))?;
    Ok(("pass", dual.len() as u64))
}
