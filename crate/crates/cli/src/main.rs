//! `arr`: exact Tutte, coboundary and characteristic polynomials of integer
//! hyperplane arrangements, with verification commands for the identities
//! they satisfy.
//!
//! All results go to stdout as JSON (or plain text with `--format text`),
//! diagnostics to stderr. Exit codes: 0 success / all checks pass,
//! 1 failed verification, 2 usage or resource errors.

use arr_core::algebra::{
    bipoly_to_json, characteristic_from_coboundary, region_counts, tutte_from_coboundary,
    unipoly_to_json, BiPoly, UniPoly,
};
use arr_core::arrangement::Arrangement;
use arr_core::codes::{
    codeweight_polynomial, coloring_polynomial, greene_check, GeneratorMatrix, SimpleGraph,
};
use arr_core::egf::{limit_ratio, verify_esa, verify_family_egf};
use arr_core::families::{build, make, FamilyKind, SlopeSet};
use arr_core::finite_field::{
    coboundary_via_finite_field, FfError, FfOptions, DEFAULT_POINT_BUDGET,
};
use arr_core::oracle::{coboundary_bruteforce, coboundary_moebius, OracleError};
use arr_core::report::Report;
use arr_core::verify::{dc_report, expectation_report, triple_agreement, VerifyError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::io::Read;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "arr", version, about = "Exact polynomials of integer hyperplane arrangements")]
struct Cli {
    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Emit an arrangement of a named family as JSON.
    Family(FamilyArgs),
    /// Coboundary polynomial χ̄(q,t) of an arrangement.
    Coboundary(PolyArgs),
    /// Tutte polynomial T(x,y) of an arrangement.
    Tutte(PolyArgs),
    /// Characteristic polynomial χ(q) of an arrangement.
    Char(PolyArgs),
    /// Region counts via Zaslavsky's theorem.
    Regions(RegionsArgs),
    /// Cross-method verification checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Generating-function identities.
    #[command(subcommand)]
    Egf(EgfCommand),
    /// Graph specializations.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Linear-code specializations.
    #[command(subcommand)]
    Code(CodeCommand),
}

#[derive(Args)]
struct FamilyArgs {
    /// braid | coxeter_b | coxeter_d | threshold | shi | linial | semiorder
    /// | catalan | generic_deformation | slope_deformation | graphical
    #[arg(long)]
    kind: String,
    /// Ambient dimension parameter n.
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Slopes for slope_deformation, e.g. `-1,0,1`.
    #[arg(long)]
    slopes: Option<String>,
    /// Edges for graphical, 1-based, e.g. `1-2,2-3`.
    #[arg(long)]
    edges: Option<String>,
}

#[derive(Args)]
struct MethodArgs {
    /// ff (provable primes) | ff-fast (user primes) | brute | moebius
    #[arg(long, default_value = "ff")]
    method: String,
    /// Primes for ff-fast, e.g. `11,13,17,19,23`.
    #[arg(long)]
    primes: Option<String>,
    /// Point budget for the finite-field method (env ARR_BUDGET overrides
    /// the default, this flag overrides both).
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args)]
struct PolyArgs {
    /// Arrangement JSON file, or `-` for stdin.
    input: String,
    #[command(flatten)]
    method: MethodArgs,
}

#[derive(Args)]
struct RegionsArgs {
    /// Arrangement JSON file or `-`; alternatively use --kind/--n.
    input: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    method: MethodArgs,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Deletion-contraction identity on every eligible hyperplane.
    Dc(VerifyTargetArgs),
    /// Finite-field = brute force = Möbius, exactly.
    Triple(VerifyTargetArgs),
    /// Expected characteristic polynomial at a rational t.
    Expected(ExpectedArgs),
}

#[derive(Args)]
struct VerifyTargetArgs {
    /// Arrangement JSON file or `-`; alternatively use --kind/--n.
    input: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    method: MethodArgs,
}

#[derive(Args)]
struct ExpectedArgs {
    input: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Removal probability as a rational, e.g. `1/2`.
    #[arg(long, default_value = "1/2")]
    t: String,
}

#[derive(Subcommand)]
enum EgfCommand {
    /// Verify a family EGF identity: an | bn | dn | threshold | generic |
    /// esa:<kind>.
    Verify(EgfVerifyArgs),
    /// Stabilized limit A_r/A_{r−1} for a slope set.
    Limit(EgfLimitArgs),
}

#[derive(Args)]
struct EgfVerifyArgs {
    #[arg(long)]
    identity: String,
    /// Truncation order in x.
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Integer q-values, e.g. `1,2,3`. Default: enough values to certify
    /// the identity (odd values where the identity needs them).
    #[arg(long)]
    q: Option<String>,
}

#[derive(Args)]
struct EgfLimitArgs {
    /// Slope set, e.g. `1` or `-1,0,1`.
    #[arg(long)]
    slopes: String,
    #[arg(long, default_value_t = 5)]
    order: usize,
    /// Specialize to t = 0.
    #[arg(long)]
    t0: bool,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Σ_κ t^{mono(κ)} over q-colorings.
    Coloring(ColoringArgs),
}

#[derive(Args)]
struct ColoringArgs {
    /// Edges, 1-based, e.g. `1-2,1-3,2-3`.
    #[arg(long)]
    edges: String,
    /// Number of vertices (default: largest endpoint).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: u64,
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Codeweight polynomial from a generator matrix JSON.
    Weight(CodeArgs),
    /// Greene's theorem check.
    Greene(CodeArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// Generator JSON {"p":2,"rows":[[1,1,1]]}; file path or `-`.
    #[arg(long)]
    generator: String,
    /// Field size; must match the generator file when both are given.
    #[arg(long)]
    p: Option<u64>,
}

/// Failures carry the exit code: 1 for failed verifications, 2 for usage
/// and resource problems.
struct AppError {
    code: i32,
    message: String,
}

impl AppError {
    fn usage(message: impl Into<String>) -> Self {
        AppError { code: 2, message: message.into() }
    }

    fn fail(message: impl Into<String>) -> Self {
        AppError { code: 1, message: message.into() }
    }
}

impl From<FfError> for AppError {
    fn from(e: FfError) -> Self {
        match e {
            // Correctness alarms: the assembled data is inconsistent.
            FfError::VerificationMismatch { .. } | FfError::Algebra(_) => {
                AppError::fail(e.to_string())
            }
            // Bad or oversized inputs.
            FfError::NotPrime(_)
            | FfError::ResourceLimit { .. }
            | FfError::InsufficientPrimes { .. } => AppError::usage(e.to_string()),
        }
    }
}

impl From<OracleError> for AppError {
    fn from(e: OracleError) -> Self {
        AppError::usage(e.to_string())
    }
}

impl From<VerifyError> for AppError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::FiniteField(f) => f.into(),
            VerifyError::Oracle(o) => o.into(),
        }
    }
}

impl From<arr_core::egf::EgfError> for AppError {
    fn from(e: arr_core::egf::EgfError) -> Self {
        match e {
            arr_core::egf::EgfError::IdentityFailure(_) => AppError::fail(e.to_string()),
            _ => AppError::usage(e.to_string()),
        }
    }
}

impl From<arr_core::algebra::AlgebraError> for AppError {
    fn from(e: arr_core::algebra::AlgebraError) -> Self {
        AppError::usage(e.to_string())
    }
}

impl From<arr_core::codes::CodesError> for AppError {
    fn from(e: arr_core::codes::CodesError) -> Self {
        AppError::usage(e.to_string())
    }
}

impl From<arr_core::families::FamilyError> for AppError {
    fn from(e: arr_core::families::FamilyError) -> Self {
        AppError::usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn run(cli: &Cli) -> Result<i32, AppError> {
    match &cli.command {
        Command::Family(args) => {
            let arr = family_from_args(args)?;
            // Serialize the struct directly so the wire format keeps its
            // field order: {"n": …, "hyperplanes": […]}.
            println!("{}", serde_json::to_string(&arr).expect("arrangement serializes"));
            Ok(0)
        }
        Command::Coboundary(args) => {
            let arr = read_arrangement(&args.input)?;
            let chibar = coboundary(&arr, &args.method)?;
            emit(cli.format, &bipoly_to_json(&chibar, ["q", "t"]), || {
                bipoly_text(&chibar, ["q", "t"])
            });
            Ok(0)
        }
        Command::Tutte(args) => {
            let arr = read_arrangement(&args.input)?;
            let chibar = coboundary(&arr, &args.method)?;
            let tutte = tutte_from_coboundary(&chibar, arr.arrangement_rank())?;
            emit(cli.format, &bipoly_to_json(&tutte, ["x", "y"]), || {
                bipoly_text(&tutte, ["x", "y"])
            });
            Ok(0)
        }
        Command::Char(args) => {
            let arr = read_arrangement(&args.input)?;
            let chi = characteristic(&arr, &args.method)?;
            emit(cli.format, &unipoly_to_json(&chi, "q"), || unipoly_text(&chi, "q"));
            Ok(0)
        }
        Command::Regions(args) => {
            let arr = arrangement_from_target(&args.input, &args.kind, args.n)?;
            let chi = characteristic(&arr, &args.method)?;
            let (regions, bounded) =
                region_counts(&chi, arr.ambient_dim(), arr.arrangement_rank())?;
            let json = serde_json::json!({ "regions": regions.to_string(), "bounded": bounded.to_string() });
            emit(cli.format, &json, || format!("regions {regions}, bounded {bounded}"));
            Ok(0)
        }
        Command::Verify(cmd) => run_verify(cli.format, cmd),
        Command::Egf(cmd) => run_egf(cli.format, cmd),
        Command::Graph(GraphCommand::Coloring(args)) => {
            let g = parse_graph(&args.edges, args.n)?;
            let poly = coloring_polynomial(&g, args.q)?;
            emit(cli.format, &unipoly_to_json(&poly, "t"), || unipoly_text(&poly, "t"));
            Ok(0)
        }
        Command::Code(cmd) => run_code(cli.format, cmd),
    }
}

fn run_verify(format: Format, cmd: &VerifyCommand) -> Result<i32, AppError> {
    let reports: Vec<Report> = match cmd {
        VerifyCommand::Dc(args) => {
            let arr = arrangement_from_target(&args.input, &args.kind, args.n)?;
            let mut reports = Vec::new();
            for i in 0..arr.len() {
                match dc_report(&arr, i) {
                    Ok(r) => reports.push(r),
                    Err(VerifyError::Oracle(OracleError::HypothesisViolated(why))) => {
                        eprintln!("skipping hyperplane {i}: {why}");
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            reports
        }
        VerifyCommand::Triple(args) => {
            let arr = arrangement_from_target(&args.input, &args.kind, args.n)?;
            let opts = ff_options(&args.method)?;
            vec![triple_agreement(&arr, &opts)?]
        }
        VerifyCommand::Expected(args) => {
            let arr = arrangement_from_target(&args.input, &args.kind, args.n)?;
            let t = parse_rational(&args.t)?;
            vec![expectation_report(&arr, &t)?]
        }
    };
    finish_reports(format, &reports)
}

fn run_egf(format: Format, cmd: &EgfCommand) -> Result<i32, AppError> {
    match cmd {
        EgfCommand::Verify(args) => {
            let (kind, esa) = parse_identity(&args.identity)?;
            let odd_only =
                matches!(kind, FamilyKind::CoxeterB | FamilyKind::CoxeterD | FamilyKind::Threshold)
                    && !esa;
            let q_values = match &args.q {
                Some(spec) => parse_i64_list(spec)?,
                None => default_q_values(args.order, odd_only),
            };
            let report = if esa {
                verify_esa(&kind, &q_values, args.order)?
            } else {
                verify_family_egf(&kind, &q_values, args.order)?
            };
            finish_reports(format, &[report])
        }
        EgfCommand::Limit(args) => {
            let slopes = parse_slopes(&args.slopes)?;
            let ratio = limit_ratio(&slopes, args.order, args.t0)?;
            let coeffs: Vec<serde_json::Value> =
                ratio.coeffs().iter().map(|c| unipoly_to_json(c, "t")).collect();
            let json = serde_json::json!({ "order": args.order, "coefficients": coeffs });
            emit(format, &json, || {
                ratio
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| format!("x^{k}/{k}!: {}", unipoly_text(c, "t")))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(0)
        }
    }
}

fn run_code(format: Format, cmd: &CodeCommand) -> Result<i32, AppError> {
    match cmd {
        CodeCommand::Weight(args) => {
            let gen = read_generator(args)?;
            let poly = codeweight_polynomial(&gen)?;
            emit(format, &unipoly_to_json(&poly, "t"), || unipoly_text(&poly, "t"));
            Ok(0)
        }
        CodeCommand::Greene(args) => {
            let gen = read_generator(args)?;
            let g = greene_check(&gen)?;
            let report = Report {
                identity: format!(
                    "greene: [{},{}] code over F_{}",
                    gen.length(),
                    gen.dimension(),
                    gen.field_size()
                ),
                lhs: unipoly_to_json(&g.weight_enumerator, "t"),
                rhs: unipoly_to_json(&g.from_coboundary, "t"),
                pass: g.pass,
            };
            finish_reports(format, &[report])
        }
    }
}

/// Print reports and turn any failure into exit code 1.
fn finish_reports(format: Format, reports: &[Report]) -> Result<i32, AppError> {
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::Value::Array(reports.iter().map(Report::to_json).collect())
    };
    emit(format, &json, || {
        reports
            .iter()
            .map(|r| format!("{}: {}", r.identity, if r.pass { "PASS" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn emit(format: Format, json: &serde_json::Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{json}"),
        Format::Text => println!("{}", text()),
    }
}

fn family_from_args(args: &FamilyArgs) -> Result<Arrangement, AppError> {
    let kind = parse_kind(&args.kind, args.slopes.as_deref(), args.edges.as_deref())?;
    Ok(build(&kind, args.n)?)
}

fn parse_kind(
    tag: &str,
    slopes: Option<&str>,
    edges: Option<&str>,
) -> Result<FamilyKind, AppError> {
    let kind = match tag {
        "braid" => FamilyKind::Braid,
        "coxeter_b" => FamilyKind::CoxeterB,
        "coxeter_d" => FamilyKind::CoxeterD,
        "threshold" => FamilyKind::Threshold,
        "shi" => FamilyKind::Shi,
        "linial" => FamilyKind::Linial,
        "semiorder" => FamilyKind::Semiorder,
        "catalan" => FamilyKind::Catalan,
        "generic_deformation" => FamilyKind::GenericDeformation,
        "slope_deformation" => {
            let spec = slopes.ok_or_else(|| AppError::usage("slope_deformation needs --slopes"))?;
            FamilyKind::SlopeDeformation(parse_slopes(spec)?)
        }
        "graphical" => {
            let spec = edges.ok_or_else(|| AppError::usage("graphical needs --edges"))?;
            FamilyKind::Graphical(parse_graph(spec, None)?)
        }
        other => return Err(AppError::usage(format!("unknown family kind `{other}`"))),
    };
    Ok(kind)
}

fn parse_slopes(spec: &str) -> Result<SlopeSet, AppError> {
    let slopes: Vec<i64> = spec
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| AppError::usage(format!("cannot parse slopes `{spec}`")))?;
    if slopes.is_empty() {
        return Err(AppError::usage("slope set must be nonempty"));
    }
    Ok(SlopeSet::new(slopes))
}

fn parse_graph(spec: &str, n: Option<usize>) -> Result<SimpleGraph, AppError> {
    let mut edges = Vec::new();
    let mut max_vertex = 0usize;
    for part in spec.split(',') {
        let (a, b) = part
            .trim()
            .split_once('-')
            .ok_or_else(|| AppError::usage(format!("edge `{part}` is not of the form i-j")))?;
        let a: usize = a.parse().map_err(|_| AppError::usage(format!("bad vertex `{a}`")))?;
        let b: usize = b.parse().map_err(|_| AppError::usage(format!("bad vertex `{b}`")))?;
        if a == 0 || b == 0 {
            return Err(AppError::usage("vertices are 1-based"));
        }
        max_vertex = max_vertex.max(a).max(b);
        edges.push((a - 1, b - 1));
    }
    let n = n.unwrap_or(max_vertex);
    SimpleGraph::new(n, edges).map_err(|e| AppError::usage(e.to_string()))
}

fn parse_rational(spec: &str) -> Result<BigRational, AppError> {
    BigRational::from_str(spec)
        .map_err(|_| AppError::usage(format!("cannot parse rational `{spec}`")))
}

fn parse_i64_list(spec: &str) -> Result<Vec<i64>, AppError> {
    spec.split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| AppError::usage(format!("cannot parse integer list `{spec}`")))
}

fn parse_primes(spec: &str) -> Result<Vec<u64>, AppError> {
    spec.split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| AppError::usage(format!("cannot parse primes `{spec}`")))
}

fn default_q_values(order: usize, odd_only: bool) -> Vec<i64> {
    // Each x^n-coefficient is a polynomial in q of degree ≤ n+1, so
    // order+2 sample values certify the identity to the given order.
    let count = order + 2;
    if odd_only {
        (1..=count).map(|k| 2 * k as i64 + 1).collect()
    } else {
        (1..=count as i64).collect()
    }
}

fn parse_identity(spec: &str) -> Result<(FamilyKind, bool), AppError> {
    if let Some(kind) = spec.strip_prefix("esa:") {
        let kind = parse_kind(kind, None, None)?;
        if kind.slope_set().is_none() {
            return Err(AppError::usage(format!("`{spec}` is not a braid deformation")));
        }
        return Ok((kind, true));
    }
    let kind = match spec {
        "an" => FamilyKind::Braid,
        "bn" => FamilyKind::CoxeterB,
        "dn" => FamilyKind::CoxeterD,
        "threshold" => FamilyKind::Threshold,
        "generic" => FamilyKind::GenericDeformation,
        other => return Err(AppError::usage(format!("unknown identity `{other}`"))),
    };
    Ok((kind, false))
}

fn read_arrangement(input: &str) -> Result<Arrangement, AppError> {
    let data = read_input(input)?;
    serde_json::from_str(&data)
        .map_err(|e| AppError::usage(format!("cannot parse arrangement JSON: {e}")))
}

fn arrangement_from_target(
    input: &Option<String>,
    kind: &Option<String>,
    n: Option<usize>,
) -> Result<Arrangement, AppError> {
    match (input, kind) {
        (Some(path), None) => read_arrangement(path),
        (None, Some(tag)) => {
            let kind = parse_kind(tag, None, None)?;
            let n = n.ok_or_else(|| AppError::usage("--kind needs --n"))?;
            Ok(make(&kind, n)?)
        }
        _ => Err(AppError::usage("give either an input file (or `-`) or --kind/--n")),
    }
}

fn read_generator(args: &CodeArgs) -> Result<GeneratorMatrix, AppError> {
    let data = read_input(&args.generator)?;
    let gen: GeneratorMatrix = serde_json::from_str(&data)
        .map_err(|e| AppError::usage(format!("cannot parse generator JSON: {e}")))?;
    if let Some(p) = args.p {
        if p != gen.field_size() {
            return Err(AppError::usage(format!(
                "--p {p} disagrees with the generator file (p = {})",
                gen.field_size()
            )));
        }
    }
    Ok(gen)
}

fn read_input(path: &str) -> Result<String, AppError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| AppError::usage(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| AppError::usage(format!("cannot read {path}: {e}")))
    }
}

fn ff_options(method: &MethodArgs) -> Result<FfOptions, AppError> {
    let budget = method
        .budget
        .or_else(|| std::env::var("ARR_BUDGET").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_POINT_BUDGET);
    let mut opts = match (method.method.as_str(), &method.primes) {
        // An explicit prime list always overrides the provable plan.
        ("ff" | "ff-fast", Some(primes)) => FfOptions::fast(parse_primes(primes)?),
        ("ff", None) => FfOptions::default(),
        ("ff-fast", None) => return Err(AppError::usage("ff-fast needs --primes")),
        (other, _) => {
            return Err(AppError::usage(format!("`{other}` is not a finite-field method")))
        }
    };
    opts.budget = budget;
    Ok(opts)
}

/// Coboundary polynomial by the requested method. The default `ff` falls
/// back to brute force when the provable primes blow the point budget,
/// with a notice on stderr.
fn coboundary(arr: &Arrangement, method: &MethodArgs) -> Result<BiPoly, AppError> {
    match method.method.as_str() {
        "brute" => Ok(coboundary_bruteforce(arr)?),
        "moebius" => Ok(coboundary_moebius(arr)?),
        "ff" | "ff-fast" => {
            let opts = ff_options(method)?;
            match coboundary_via_finite_field(arr, &opts) {
                Ok(p) => Ok(p),
                Err(FfError::ResourceLimit { points, budget }) if method.method == "ff" => {
                    eprintln!(
                        "finite-field method needs {points} points (budget {budget}); \
                         falling back to brute force"
                    );
                    Ok(coboundary_bruteforce(arr)?)
                }
                Err(e) => Err(e.into()),
            }
        }
        other => Err(AppError::usage(format!("unknown method `{other}`"))),
    }
}

fn characteristic(arr: &Arrangement, method: &MethodArgs) -> Result<UniPoly, AppError> {
    let chibar = coboundary(arr, method)?;
    Ok(characteristic_from_coboundary(&chibar, arr.ambient_dim(), arr.arrangement_rank()))
}

fn unipoly_text(p: &UniPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c == &BigRational::from_integer(BigInt::from(0)) {
            continue;
        }
        let body = match k {
            0 => c.to_string(),
            _ => {
                let var_part = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if c == &BigRational::from_integer(BigInt::from(1)) {
                    var_part
                } else if c == &BigRational::from_integer(BigInt::from(-1)) {
                    format!("-{var_part}")
                } else {
                    format!("{c}*{var_part}")
                }
            }
        };
        parts.push(body);
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn bipoly_text(p: &BiPoly, vars: [&str; 2]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let var_pow = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let mut parts = Vec::new();
    for (&(a, b), c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let mut factors = Vec::new();
        let one = BigInt::from(1);
        let minus_one = BigInt::from(-1);
        if (c != &one && c != &minus_one) || (a == 0 && b == 0) {
            factors.push(c.magnitude().to_string());
        }
        let qa = var_pow(vars[0], a);
        if !qa.is_empty() {
            factors.push(qa);
        }
        let tb = var_pow(vars[1], b);
        if !tb.is_empty() {
            factors.push(tb);
        }
        let sign = if c < &BigInt::from(0) { "-" } else { "" };
        parts.push(format!("{sign}{}", factors.join("*")));
    }
    parts.join(" + ").replace("+ -", "- ")
}
