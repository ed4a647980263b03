mod render;
mod settings;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use tracecode::char_sums::{lemma_suite, SuiteOptions};
use tracecode::code::TraceCode;
use tracecode::planar::{
    build_df_code, check_df_conditions, compare_with_cd, nonlinearity_measure, Family,
    PlanarFunction,
};
use tracecode::sss::{
    access_structure, participant_counts, theoretical_stats, MasseyScheme, Recovery, ShareBundle,
};
use tracecode::theory::{ashikhmin_barg, griesmer_min_length, square_trace_code, verify};
use tracecode::{Error, ErrorKind, FieldCtx, Limits, PrimeElement};

use settings::{resolve_limits, RunManifest};

#[derive(Parser)]
#[command(
    name = "tracecode",
    version,
    about = "Trace codes from Tr(x^2) = 0 over GF(p^m): construction, verification, planar variants and secret sharing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for enumeration (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Human-readable output instead of one-line JSON
    #[arg(long, global = true)]
    pretty: bool,
    /// TOML file with `ceiling` and/or `planar_ceiling`
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Maximum number of codewords or field elements to enumerate
    #[arg(long, global = true)]
    ceiling: Option<u64>,
    /// Maximum q for measures costing q^2
    #[arg(long, global = true)]
    planar_ceiling: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and report its parameters and weight distribution
    Construct(ConstructArgs),
    /// Check closed forms against enumeration
    Verify(VerifyArgs),
    /// Planarity and D_f experiments
    Planar(PlanarArgs),
    /// Secret sharing on the dual code
    #[command(subcommand)]
    Sss(SssCommand),
    /// Griesmer bound for given parameters
    Bounds(BoundsArgs),
}

#[derive(Args, Serialize, Clone)]
struct CodeArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    /// One coordinate per GF(p)* orbit of the defining set
    #[arg(long)]
    punctured: bool,
    /// Use D_f for a planar function, e.g. `ding-yuan:u=1`
    #[arg(long)]
    planar: Option<String>,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    code: CodeArgs,
    /// Also compute the dual minimum distance
    #[arg(long)]
    dual: bool,
    /// Include the defining set encodings
    #[arg(long)]
    defining_set: bool,
    /// Also write the JSON result to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long, requires = "m", conflicts_with = "range")]
    p: Option<u32>,
    #[arg(long, requires = "p")]
    m: Option<u32>,
    /// Grid such as `3,5:2-5` (primes, then an m range)
    #[arg(long, required_unless_present = "p")]
    range: Option<String>,
    /// Run the character-sum and counting identities
    #[arg(long)]
    all_lemmas: bool,
    /// Compare weight tables with enumeration
    #[arg(long)]
    theorems: bool,
    #[arg(long, default_value_t = 100)]
    weil_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// List every identity, not just failures
    #[arg(long)]
    verbose: bool,
}

#[derive(Args, Serialize)]
struct PlanarArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    family: String,
    /// `k=<int>` or `u=<element encoding>`
    #[arg(long)]
    param: Option<String>,
    /// Compare C_{D_f} with C_D
    #[arg(long)]
    compare: bool,
    #[arg(long)]
    punctured: bool,
    /// Refuse families not known to be planar on this field
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum SssCommand {
    /// Describe the scheme on the dual code
    Setup(CodeArgs),
    /// Deal shares of a secret
    Deal(DealArgs),
    /// Recover a secret from a bundle and a coalition
    Recover(RecoverArgs),
    /// Minimal access sets and membership statistics
    Structure(CodeArgs),
}

#[derive(Args, Serialize)]
struct DealArgs {
    #[command(flatten)]
    #[serde(flatten)]
    code: CodeArgs,
    #[arg(long)]
    #[serde(skip)]
    secret: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the share bundle here instead of standard output
    #[arg(long)]
    bundle: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct RecoverArgs {
    #[arg(long)]
    bundle: PathBuf,
    /// Comma-separated participant indices, e.g. `1,4,7`
    #[arg(long, value_delimiter = ',')]
    coalition: Vec<usize>,
}

#[derive(Args, Serialize)]
struct BoundsArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    d: u64,
}

/// A failed run: message for standard error plus exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err.kind() {
            ErrorKind::Usage | ErrorKind::Domain => 2,
            ErrorKind::Resource => 3,
            ErrorKind::Integrity => 1,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

struct Outcome {
    value: Value,
    pass: bool,
    modulus: Option<Vec<u32>>,
    text: Option<String>,
    out: Option<PathBuf>,
}

impl Outcome {
    fn new(value: impl Serialize) -> Result<Self, Failure> {
        let value = serde_json::to_value(value).map_err(|e| Failure::usage(e.to_string()))?;
        Ok(Outcome {
            value,
            pass: true,
            modulus: None,
            text: None,
            out: None,
        })
    }

    fn field(mut self, ctx: &FieldCtx) -> Self {
        self.modulus = Some(ctx.modulus().to_vec());
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let limits = resolve_limits(cli.config.as_deref(), cli.ceiling, cli.planar_ceiling)?;
    let start = Instant::now();
    let (mut manifest, outcome) = match &cli.command {
        Command::Construct(a) => (RunManifest::new("construct", a, limits), construct(a, limits)?),
        Command::Verify(a) => (RunManifest::new("verify", a, limits), verify_cmd(a, limits)?),
        Command::Planar(a) => (RunManifest::new("planar", a, limits), planar(a, limits)?),
        Command::Sss(SssCommand::Setup(a)) => (RunManifest::new("sss setup", a, limits), sss_setup(a, limits)?),
        Command::Sss(SssCommand::Deal(a)) => (RunManifest::new("sss deal", a, limits), sss_deal(a, limits)?),
        Command::Sss(SssCommand::Recover(a)) => {
            (RunManifest::new("sss recover", a, limits), sss_recover(a, limits)?)
        }
        Command::Sss(SssCommand::Structure(a)) => {
            (RunManifest::new("sss structure", a, limits), sss_structure(a, limits)?)
        }
        Command::Bounds(a) => (RunManifest::new("bounds", a, limits), bounds(a)?),
    };
    manifest.modulus = outcome.modulus.clone();
    manifest.finish(start.elapsed());
    let mut value = outcome.value;
    match &mut value {
        Value::Object(map) => {
            map.insert("manifest".into(), json!(manifest));
        }
        other => {
            *other = json!({ "result": other.take(), "manifest": manifest });
        }
    }
    let json = serde_json::to_string(&value).expect("serializable");
    if let Some(path) = &outcome.out {
        write_file(path, &json)?;
    }
    if cli.pretty {
        match &outcome.text {
            Some(text) => print!("{text}"),
            None => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
        }
    } else {
        println!("{json}");
    }
    if outcome.pass {
        Ok(0)
    } else {
        eprintln!("verification failed");
        Ok(1)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn field(p: u32, m: u32, limits: Limits) -> Result<FieldCtx, Failure> {
    Ok(FieldCtx::with_limits(p, m, limits)?)
}

fn planar_function(
    spec: &str,
    ctx: &FieldCtx,
    strict: bool,
) -> Result<PlanarFunction, Failure> {
    let family = Family::parse(spec)?;
    Ok(if strict {
        PlanarFunction::new(family, ctx)?
    } else {
        PlanarFunction::unchecked(family, ctx)?
    })
}

fn build(args: &CodeArgs, ctx: &FieldCtx) -> Result<TraceCode, Failure> {
    match &args.planar {
        Some(spec) => {
            let f = planar_function(spec, ctx, false)?;
            if let Some(reason) = f.inadmissible_reason() {
                eprintln!("warning: {} is not known to be planar here ({reason})", f.family());
            }
            Ok(build_df_code(&f, args.punctured)?)
        }
        None => Ok(square_trace_code(ctx, args.punctured)?),
    }
}

fn construct(a: &ConstructArgs, limits: Limits) -> Result<Outcome, Failure> {
    let ctx = field(a.code.p, a.code.m, limits)?;
    let code = build(&a.code, &ctx)?;
    let report = code.report()?;
    let text = render::code_table(&report);
    let mut value = serde_json::to_value(&report).expect("serializable");
    if a.dual {
        value["dual_distance"] = match code.dual_minimum_distance() {
            Ok(d) => json!(d),
            Err(Error::TrivialDual) => Value::Null,
            Err(e) => return Err(e.into()),
        };
    }
    if a.defining_set {
        value["defining_set"] = json!(code.defining_set().encodings());
    }
    let mut out = Outcome::new(value)?.field(&ctx);
    out.text = Some(text);
    out.out = a.out.clone();
    Ok(out)
}

/// Parses `3,5:2-5` into primes and an inclusive m range.
fn parse_range(spec: &str) -> Result<Vec<(u32, u32)>, Failure> {
    let bad = || Failure::usage(format!("bad range {spec:?}; expected e.g. 3,5:2-5"));
    let (primes, ms) = spec.split_once(':').ok_or_else(bad)?;
    let primes: Vec<u32> = primes
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (lo, hi) = match ms.split_once('-') {
        Some((lo, hi)) => (lo, hi),
        None => (ms, ms),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi || primes.is_empty() {
        return Err(bad());
    }
    Ok(primes
        .iter()
        .flat_map(|&p| (lo..=hi).map(move |m| (p, m)))
        .collect())
}

fn verify_cmd(a: &VerifyArgs, limits: Limits) -> Result<Outcome, Failure> {
    let cells = match (&a.range, a.p, a.m) {
        (Some(r), _, _) => parse_range(r)?,
        (None, Some(p), Some(m)) => vec![(p, m)],
        _ => return Err(Failure::usage("give --p and --m, or --range")),
    };
    let (theorems, lemmas) = if a.theorems || a.all_lemmas {
        (a.theorems, a.all_lemmas)
    } else {
        (true, true)
    };
    let mut pass = true;
    let mut out = Vec::new();
    for (p, m) in cells {
        let ctx = field(p, m, limits)?;
        let mut cell = json!({ "p": p, "m": m });
        if theorems {
            let mut reports = Vec::new();
            for punctured in [false, true] {
                match verify(p, m, punctured, limits) {
                    Ok(r) => {
                        pass &= r.pass;
                        reports.push(json!(r));
                    }
                    Err(Error::EmptyDefiningSet) => reports.push(json!({
                        "p": p, "m": m, "punctured": punctured,
                        "skipped": "defining set is empty",
                    })),
                    Err(e) => return Err(e.into()),
                }
            }
            cell["theorems"] = json!(reports);
        }
        if lemmas {
            let opts = SuiteOptions {
                exact: true,
                complex: true,
                weil_samples: a.weil_samples,
                seed: a.seed,
            };
            let reports = lemma_suite(&ctx, opts)?;
            let failures: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
            pass &= failures.is_empty();
            let mut summary = json!({
                "checks": reports.len(),
                "failed": failures.len(),
                "failures": failures,
            });
            if a.verbose {
                summary["reports"] = json!(reports);
            }
            cell["lemmas"] = summary;
        }
        out.push(cell);
    }
    let text = render::verify_table(&out);
    let mut outcome = Outcome::new(json!({ "pass": pass, "cells": out }))?;
    outcome.pass = pass;
    outcome.text = Some(text);
    Ok(outcome)
}

fn planar(a: &PlanarArgs, limits: Limits) -> Result<Outcome, Failure> {
    let ctx = field(a.p, a.m, limits)?;
    let family = Family::from_parts(&a.family, a.param.as_deref())?;
    let f = planar_function(&family.to_string(), &ctx, a.strict)?;
    let out = if a.compare {
        Outcome::new(compare_with_cd(&f, a.punctured)?)?
    } else {
        let p_f = nonlinearity_measure(&f)?;
        Outcome::new(json!({
            "family": family.name(),
            "params": family.params(),
            "p": a.p,
            "m": a.m,
            "admissible": f.admissible(),
            "inadmissible_reason": f.inadmissible_reason(),
            "conditions": check_df_conditions(&f),
            "P_f": p_f,
            "planar": p_f.is_perfect(),
        }))?
    };
    Ok(out.field(&ctx))
}

fn sss_setup(a: &CodeArgs, limits: Limits) -> Result<Outcome, Failure> {
    let ctx = field(a.p, a.m, limits)?;
    let code = build(a, &ctx)?;
    let scheme = MasseyScheme::setup(&code)?;
    let d_dual = code.dual_minimum_distance()?;
    Ok(Outcome::new(json!({
        "kind": code.defining_set().kind(),
        "n": code.n(),
        "k": code.k(),
        "participants": scheme.participants(),
        "participant_counts": participant_counts(&scheme),
        "dual_rows": scheme.dual().rows(),
        "dual_distance": d_dual,
        "h0": scheme.dual().column(0),
    }))?
    .field(&ctx))
}

fn sss_deal(a: &DealArgs, limits: Limits) -> Result<Outcome, Failure> {
    let ctx = field(a.code.p, a.code.m, limits)?;
    let code = build(&a.code, &ctx)?;
    let scheme = MasseyScheme::setup(&code)?;
    let secret = PrimeElement::new(a.secret, a.code.p)?;
    let deal = scheme.deal(secret, a.seed);
    let bundle = ShareBundle::new(&scheme, &deal);
    let out = match &a.bundle {
        Some(path) => {
            let text = serde_json::to_string_pretty(&bundle).expect("serializable");
            write_file(path, &text)?;
            Outcome::new(json!({
                "bundle": path,
                "participants": scheme.participants(),
                "seed": a.seed,
            }))?
        }
        None => Outcome::new(&bundle)?,
    };
    Ok(out.field(&ctx))
}

/// Reverses [`tracecode::code::SetKind::label`] for the kinds a bundle can hold.
fn code_args_for(bundle: &ShareBundle) -> Result<CodeArgs, Failure> {
    let (punctured, planar) = match bundle.kind.as_str() {
        "full" => (false, None),
        "punctured" => (true, None),
        kind => match kind.split_once(':') {
            Some(("planar", spec)) => (false, Some(spec.to_string())),
            Some(("planar-punctured", spec)) => (true, Some(spec.to_string())),
            _ => return Err(Failure::usage(format!("bundle has unsupported kind {kind:?}"))),
        },
    };
    Ok(CodeArgs {
        p: bundle.p,
        m: bundle.m,
        punctured,
        planar,
    })
}

fn sss_recover(a: &RecoverArgs, limits: Limits) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(&a.bundle)
        .map_err(|e| Failure::usage(format!("cannot read bundle {}: {e}", a.bundle.display())))?;
    let bundle: ShareBundle = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad bundle {}: {e}", a.bundle.display())))?;
    let ctx = FieldCtx::with_modulus(bundle.p, bundle.m, bundle.modulus.clone(), limits)?;
    let code = build(&code_args_for(&bundle)?, &ctx)?;
    let scheme = MasseyScheme::setup(&code)?;
    if bundle.shares.len() != scheme.participants() {
        return Err(Failure::usage(format!(
            "bundle has {} shares but the scheme has {} participants",
            bundle.shares.len(),
            scheme.participants()
        )));
    }
    let shares = bundle.select(&a.coalition)?;
    let recovery = scheme.recover(&a.coalition, &shares)?;
    let (value, line) = match recovery {
        Recovery::Secret { secret } => (json!(recovery), format!("secret: {secret}\n")),
        Recovery::NotAnAccessSet => (
            json!({ "result": "not-an-access-set", "message": "not an access set" }),
            "not an access set\n".to_string(),
        ),
    };
    let mut out = Outcome::new(value)?.field(&ctx);
    out.text = Some(line);
    Ok(out)
}

fn sss_structure(a: &CodeArgs, limits: Limits) -> Result<Outcome, Failure> {
    let ctx = field(a.p, a.m, limits)?;
    let code = build(a, &ctx)?;
    let scheme = MasseyScheme::setup(&code)?;
    let structure = access_structure(&code)?;
    let d_dual = code.dual_minimum_distance()?;
    let wd = code.weight_distribution()?;
    let predicted = if structure.all_codewords_minimal {
        theoretical_stats(code.p(), code.k() as u32, d_dual.value as u32, 1).ok()
    } else {
        None
    };
    let pair_counts = if d_dual.value >= 4 && code.k() >= 3 {
        let counts = structure.pair_counts();
        let lo = counts.values().min().copied();
        let hi = counts.values().max().copied();
        json!({ "min": lo, "max": hi, "predicted": theoretical_stats(code.p(), code.k() as u32, d_dual.value as u32, 2).ok() })
    } else {
        Value::Null
    };
    let text = render::structure_summary(&structure, &d_dual);
    let mut value = serde_json::to_value(&structure).expect("serializable");
    value["minimal_access_set_count"] = json!(structure.len());
    value["n"] = json!(code.n());
    value["k"] = json!(code.k());
    value["dual_distance"] = json!(d_dual);
    value["ratio_condition"] = json!(ashikhmin_barg(&wd, code.p()));
    value["predicted"] = json!(predicted);
    value["pair_counts"] = pair_counts;
    value["participant_counts"] = json!(participant_counts(&scheme));
    let mut out = Outcome::new(value)?.field(&ctx);
    out.text = Some(text);
    Ok(out)
}

fn bounds(a: &BoundsArgs) -> Result<Outcome, Failure> {
    if a.k == 0 || a.d == 0 {
        return Err(Failure::usage("k and d must be positive"));
    }
    if a.p < 2 || !tracecode::prime::is_prime(u64::from(a.p)) {
        return Err(Failure::usage(format!("p must be prime (got {})", a.p)));
    }
    let g = griesmer_min_length(a.p, a.k, a.d);
    Outcome::new(json!({
        "p": a.p,
        "n": a.n,
        "k": a.k,
        "d": a.d,
        "griesmer": g,
        "optimal": a.n == g,
        "admissible": a.n >= g,
    }))
}
