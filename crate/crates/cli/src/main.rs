use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use maxideal_core::counterexample::{check_conditions_ab, condition_c_structural, normal_form, StructuralVerdict};
use maxideal_core::random::RandomScalar;
use maxideal_core::{
    decide_membership, gaussian_instance, gf4_instance, remark_sweep, run_counterexample, BiPoly, GaussianRational,
    Gf4, InstanceFile, InstanceParams, Membership, Overall, PrecisionPolicy, RunOptions, SkewLaurentSeries,
    SweepReport, TwistedField, VerificationReport,
};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "maxideal", version, about = "Certified checks for a maximal left ideal with non-maximal contraction")]
struct Cli {
    /// gf4, gaussian, or custom:PATH to a JSON instance file
    #[arg(long, global = true, default_value = "gf4")]
    instance: String,

    /// Absolute working precision for truncated series
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(i64).range(4..))]
    precision: i64,

    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,

    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    enum_depth: u64,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check on the selected instance
    Verify,
    /// Randomized check of small quaternion triples
    RemarkSweep,
    /// Decide membership of the polynomial stored in a JSON file
    Decide { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl Failure {
    fn usage(e: impl Into<anyhow::Error>) -> Self {
        Failure::Usage(e.into())
    }

    fn runtime(e: impl Into<anyhow::Error>) -> Self {
        Failure::Runtime(e.into())
    }
}

enum Instance {
    Gf4(String, InstanceParams<SkewLaurentSeries<Gf4>>),
    Gaussian(String, InstanceParams<SkewLaurentSeries<GaussianRational>>),
}

fn load_custom(path: &Path) -> anyhow::Result<Instance> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))?;
    let field =
        value.get("field").and_then(|f| f.as_str()).ok_or_else(|| anyhow!("instance file needs a \"field\""))?;
    let name = format!("custom:{}", path.display());
    match field {
        "gf4" => {
            let file: InstanceFile<Gf4> = serde_json::from_value(value)?;
            Ok(Instance::Gf4(name, file.into_params()?))
        }
        "gaussian" => {
            let file: InstanceFile<GaussianRational> = serde_json::from_value(value)?;
            Ok(Instance::Gaussian(name, file.into_params()?))
        }
        other => bail!("unknown field {other:?}; expected gf4 or gaussian"),
    }
}

fn select_instance(spec: &str) -> anyhow::Result<Instance> {
    match spec {
        "gf4" => Ok(Instance::Gf4("gf4".into(), gf4_instance())),
        "gaussian" => Ok(Instance::Gaussian("gaussian".into(), gaussian_instance())),
        other => match other.strip_prefix("custom:") {
            Some(path) if !path.is_empty() => load_custom(Path::new(path)),
            _ => bail!("unknown instance {other:?}; expected gf4, gaussian or custom:PATH"),
        },
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display())).map_err(Failure::runtime)
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Failure::runtime)?;
    s.push('\n');
    Ok(s)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn verify_text<K: TwistedField>(r: &VerificationReport<K>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "instance   {} over {}", r.instance, r.field);
    let _ = writeln!(s, "a = {}   b = {}   c = {}", r.a, r.b, r.c);
    let _ = writeln!(s, "q = {}", r.q);
    let ab = &r.conditions.ab;
    let _ = writeln!(s, "condition (a)   {}", mark(ab.a.holds));
    let _ = writeln!(s, "condition (b)   {}", mark(ab.b.holds));
    match (&r.conditions.c_structural, &r.conditions.c_structural_error) {
        (Some(c), _) => {
            let _ = writeln!(
                s,
                "condition (c)   {}  (σ(c) = {}, σ²(c) = c: {})",
                mark(c.verdict == StructuralVerdict::Pass),
                c.c_sigma,
                c.c_sigma2_equals_c
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(s, "condition (c)   FAILED  ({e})");
        }
        (None, None) => {}
    }
    if let Some(e) = &r.conditions.c_enumerative {
        let levels: Vec<String> = e.level_one.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(
            s,
            "root prefixes   depth {}: {} found, t-coefficients {{{}}}, all differ from c at t: {}",
            e.depth,
            e.prefix_count,
            levels.join(", "),
            e.all_differ_at_t
        );
    }
    match &r.properness {
        Some(p) => {
            let ok = p.actions_commute && p.q_annihilates_generator && p.y_minus_c_annihilates_generator;
            let _ = writeln!(s, "properness      {}  (module of dimension {})", mark(ok), p.module_dimension);
        }
        None => {
            let _ = writeln!(s, "properness      skipped");
        }
    }
    let verified = r.maximality_trials.iter().filter(|t| t.verified).count();
    let _ = writeln!(s, "maximality      {verified}/{} witnesses re-expanded", r.maximality_trials.len());
    let mut kinds = std::collections::BTreeMap::new();
    for t in &r.maximality_trials {
        *kinds.entry(t.witness_kind.clone().unwrap_or_else(|| "error".into())).or_insert(0usize) += 1;
    }
    for (k, n) in kinds {
        let _ = writeln!(s, "    {k:<16} {n}");
    }
    match &r.contraction {
        Some(c) => {
            let ok = c.q_factors && c.q_member && c.membership_matches_divisibility;
            let _ = writeln!(
                s,
                "contraction     {}  ({}/{} sampled members, x − b and 1 excluded)",
                mark(ok),
                c.sampled_members,
                c.samples
            );
        }
        None => {
            let _ = writeln!(s, "contraction     skipped");
        }
    }
    for a in &r.annotations {
        let _ = writeln!(s, "note: {a}");
    }
    for f in &r.failures {
        let _ = writeln!(s, "failure: {f}");
    }
    let _ = writeln!(s, "overall         {}", if r.overall == Overall::Pass { "PASS" } else { "FAIL" });
    s
}

fn verify_on<K: RandomScalar>(
    cli: &Cli,
    name: &str,
    params: &InstanceParams<SkewLaurentSeries<K>>,
) -> Result<ExitCode, Failure> {
    let policy = PrecisionPolicy::new(cli.precision).map_err(Failure::usage)?;
    let opts = RunOptions {
        trials: cli.trials as usize,
        enum_depth: cli.enum_depth as usize,
        seed: cli.seed,
        ..RunOptions::default()
    };
    let report = run_counterexample(name, params, &opts, &policy).map_err(Failure::runtime)?;
    let body = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Text => verify_text(&report),
    };
    emit(cli, &body)?;
    Ok(if report.overall == Overall::Pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
#[serde(bound = "")]
struct DecideReport<K: TwistedField> {
    instance: String,
    conditions_certified: bool,
    input: BiPoly<SkewLaurentSeries<K>>,
    normal_form: maxideal_core::counterexample::NormalFormLinear<SkewLaurentSeries<K>>,
    membership: Membership<SkewLaurentSeries<K>>,
    verified: bool,
}

fn decide_on<K: TwistedField>(
    cli: &Cli,
    name: &str,
    params: &InstanceParams<SkewLaurentSeries<K>>,
    path: &Path,
) -> Result<ExitCode, Failure> {
    let raw =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::usage)?;
    let f: BiPoly<SkewLaurentSeries<K>> =
        serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display())).map_err(Failure::usage)?;
    let ab = check_conditions_ab(params).map_err(Failure::runtime)?;
    let c_ok = matches!(condition_c_structural(params), Ok(r) if r.verdict == StructuralVerdict::Pass);
    let nf = normal_form(&f, params).map_err(Failure::runtime)?;
    let membership = decide_membership(&f, params).map_err(Failure::runtime)?;
    let verified = membership.witness().verify(&f, params).is_ok();
    let report = DecideReport {
        instance: name.to_string(),
        conditions_certified: ab.both_hold() && c_ok,
        input: f,
        normal_form: nf,
        membership,
        verified,
    };
    let body = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "instance       {}", report.instance);
            let _ = writeln!(s, "input          {}", report.input);
            let _ = writeln!(s, "normal form    ({})·x − ({})", report.normal_form.u, report.normal_form.v);
            let verdict = if report.membership.is_member() { "member" } else { "not a member" };
            let _ = writeln!(s, "verdict        {verdict} ({})", report.membership.witness().kind_name());
            let _ = writeln!(
                s,
                "witness        {}",
                serde_json::to_string(report.membership.witness()).map_err(Failure::runtime)?
            );
            let _ = writeln!(s, "re-verified    {}", report.verified);
            if !report.conditions_certified {
                let _ = writeln!(s, "warning: the instance hypotheses are not all certified");
            }
            s
        }
    };
    emit(cli, &body)?;
    Ok(if verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sweep_text(r: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "trials               {} (seed {})", r.trials, r.seed);
    for (k, n) in &r.histogram {
        let _ = writeln!(s, "    {k:<16} {n}");
    }
    for (k, n) in &r.sampler_histogram {
        let _ = writeln!(s, "    sampler {k:<16} {n}");
    }
    let _ = writeln!(s, "commuting roots      {} re-checked", r.roots_verified);
    let _ = writeln!(s, "full certifications  {}", r.full_certifications);
    for e in &r.errors {
        let _ = writeln!(s, "error: {e}");
    }
    s
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::RemarkSweep => {
            let report = remark_sweep(cli.trials as usize, cli.seed);
            let body = match cli.format {
                Format::Json => to_json(&report)?,
                Format::Text => sweep_text(&report),
            };
            emit(cli, &body)?;
            let ok = report.full_certifications == 0 && report.errors.is_empty();
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify => match select_instance(&cli.instance).map_err(Failure::usage)? {
            Instance::Gf4(name, p) => verify_on(cli, &name, &p),
            Instance::Gaussian(name, p) => verify_on(cli, &name, &p),
        },
        Command::Decide { path } => match select_instance(&cli.instance).map_err(Failure::usage)? {
            Instance::Gf4(name, p) => decide_on(cli, &name, &p, path),
            Instance::Gaussian(name, p) => decide_on(cli, &name, &p, path),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
