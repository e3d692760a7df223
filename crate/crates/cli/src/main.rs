//! `supertab`: tables, verification reports, orbit partitions, the Glauberman
//! check and the classical-group checks, with an optional result cache.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use supertab::algebra::spec::{AlgebraSpec, Instance, PresetSpec};
use supertab::classical::{classical_report, pair_label, CLASSICAL_CHECKS};
use supertab::dual::{ActionKind, Space};
use supertab::oracle::{glauberman, ORACLE_CAP, DEFAULT_SEED};
use supertab::sct::{build_and_verify, context, CheckSelection, FixedTheory, PTheory, SupercharacterTable, FIXED_CHECKS, P_CHECKS};
use supertab::Error;

use cache::{Cache, Entry, CACHE_ENV};

const USAGE: u8 = 1;
const CAP: u8 = 2;
const FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "supertab", version, about = "Supercharacter tables of algebra groups and their involution-fixed subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the supercharacter table of P or of C_P(σ).
    Table {
        #[command(flatten)]
        common: Common,
        /// Which group; defaults to C_P(σ) when the algebra carries an involution.
        #[arg(long, value_enum)]
        group: Option<Group>,
    },
    /// Build the table and run the selected checks; exit 3 if any fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Re-check a saved JSON table instead of building one.
        #[arg(long, value_name = "FILE")]
        table: Option<PathBuf>,
    },
    /// Emit the superclass and dual-orbit partitions.
    Orbits {
        #[command(flatten)]
        common: Common,
        /// Apply the generators in reverse order.
        #[arg(long)]
        reverse: bool,
    },
    /// Glauberman correspondence and the decomposition of every ς.
    Glauberman {
        #[command(flatten)]
        common: Common,
    },
    /// Basic-pair census, factorization and proportionality checks.
    Classical {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Group {
    P,
    Fixed,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Classical preset: sp, o+, o-odd, u or ut.
    #[arg(long, conflicts_with = "algebra")]
    preset: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// JSON description of an explicit algebra.
    #[arg(long, value_name = "FILE")]
    algebra: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Largest orbit space or group to enumerate.
    #[arg(long, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Largest group handed to the character-table oracle.
    #[arg(long, default_value_t = ORACLE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    oracle_cap: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated check names; all checks by default.
    #[arg(long)]
    checks: Option<String>,
    /// Cache directory; falls back to the SUPERTAB_CACHE_DIR variable.
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => CAP,
            Error::Violation { .. } => FAILED,
            _ => USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: USAGE, msg: msg.into() }
}

type Run = Result<Entry, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Table { common, .. }
        | Command::Verify { common, .. }
        | Command::Orbits { common, .. }
        | Command::Glauberman { common }
        | Command::Classical { common } => common,
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let c = common(&cli.command);
    let canonical = canonical_config(&cli.command)?;
    let dir = c.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let cache = match dir {
        Some(d) => Some(Cache::open(&d).map_err(|e| usage(format!("cache directory {}: {e}", d.display())))?),
        None => None,
    };
    let key = cache::key_of(&canonical);
    let cached = match &cache {
        Some(store) => match store.load(&key, &canonical) {
            Ok(hit) => hit,
            Err(why) => {
                eprintln!("warning: corrupt cache entry, recomputing ({why})");
                None
            }
        },
        None => None,
    };
    let entry = match cached {
        Some(e) => e,
        None => {
            let e = execute(&cli.command)?;
            if let Some(store) = &cache {
                if let Err(err) = store.store(&key, &canonical, &e) {
                    eprintln!("warning: could not write cache entry: {err}");
                }
            }
            e
        }
    };
    match &c.out {
        Some(path) => std::fs::write(path, &entry.output).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => print!("{}", entry.output),
    }
    Ok(entry.status as u8)
}

/// The algebra description as a JSON value, from the preset flags or the file.
fn algebra_spec(c: &Common) -> Result<AlgebraSpec, Failure> {
    match (&c.preset, &c.algebra) {
        (Some(preset), None) => {
            let p = c.p.ok_or_else(|| usage("--preset needs --p"))?;
            Ok(AlgebraSpec::Preset(PresetSpec {
                preset: preset.clone(),
                m: c.m,
                n: c.n,
                p,
                k: c.k,
            }))
        }
        (None, Some(path)) => {
            if c.m.is_some() || c.n.is_some() || c.p.is_some() || c.k.is_some() {
                return Err(usage("--m, --n, --p and --k only apply to presets"));
            }
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(AlgebraSpec::parse(&text)?)
        }
        _ => Err(usage("give exactly one of --preset or --algebra")),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Table { .. } => "table",
        Command::Verify { .. } => "verify",
        Command::Orbits { .. } => "orbits",
        Command::Glauberman { .. } => "glauberman",
        Command::Classical { .. } => "classical",
    }
}

fn known_checks(cmd: &Command) -> Vec<&'static [&'static str]> {
    match cmd {
        Command::Classical { .. } => vec![CLASSICAL_CHECKS],
        _ => vec![P_CHECKS, FIXED_CHECKS],
    }
}

fn selection(cmd: &Command) -> Result<CheckSelection, Failure> {
    match &common(cmd).checks {
        Some(list) => Ok(CheckSelection::parse_among(list, &known_checks(cmd))?),
        None => Ok(CheckSelection::all()),
    }
}

/// Everything that can change the output, with sorted keys.
fn canonical_config(cmd: &Command) -> Result<String, Failure> {
    let c = common(cmd);
    let mut checks: Option<Vec<String>> = c
        .checks
        .as_ref()
        .map(|l| l.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
    if let Some(v) = checks.as_mut() {
        v.sort();
        v.dedup();
    }
    let source = match cmd {
        Command::Verify { table: Some(path), .. } => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            json!({ "table_sha256": cache::key_of(&text) })
        }
        _ => serde_json::to_value(algebra_spec(c)?).expect("spec serializes"),
    };
    let extra = match cmd {
        Command::Table { group, .. } => json!(group.map(|g| format!("{g:?}").to_lowercase())),
        Command::Orbits { reverse, .. } => json!(reverse),
        _ => Value::Null,
    };
    let v = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(cmd),
        "algebra": source,
        "format": format!("{:?}", c.format).to_lowercase(),
        "cap": c.cap,
        "oracle_cap": c.oracle_cap,
        "seed": c.seed,
        "checks": checks,
        "extra": extra,
    });
    Ok(v.to_string())
}

fn instance(c: &Common) -> Result<Instance, Failure> {
    Ok(algebra_spec(c)?.instantiate()?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        FAILED as i32
    }
}

fn execute(cmd: &Command) -> Run {
    let sel = selection(cmd)?;
    match cmd {
        Command::Table { common: c, group } => table(c, *group),
        Command::Verify { common: c, table: Some(path) } => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let t = SupercharacterTable::from_json(&text)?;
            let report = t.verify();
            Ok(report_entry(c.format, &report))
        }
        Command::Verify { common: c, table: None } => {
            let inst = instance(c)?;
            let (_, report) = build_and_verify(&inst, &sel, c.cap, c.oracle_cap)?;
            Ok(report_entry(c.format, &report))
        }
        Command::Orbits { common: c, reverse } => orbits(c, *reverse),
        Command::Glauberman { common: c } => {
            let inst = instance(c)?;
            if inst.sigma.is_none() {
                return Err(usage("glauberman needs an algebra with an involution"));
            }
            let ctx = context(&inst, c.cap)?;
            let pt = PTheory::build(ctx.clone())?;
            let ft = FixedTheory::build(ctx)?;
            let r = glauberman(&pt, &ft, c.oracle_cap, c.seed)?;
            let output = match c.format {
                Format::Json => pretty(&r),
                Format::Csv => {
                    let mut s = String::from("p_char,p_degree,fixed_char,fixed_degree,multiplicity\n");
                    for x in &r.correspondence {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            x.p_char, x.p_degree, x.fixed_char, x.fixed_degree, x.multiplicity
                        ));
                    }
                    s
                }
            };
            Ok(Entry {
                output,
                status: status(r.all_passed()),
            })
        }
        Command::Classical { common: c } => {
            let inst = instance(c)?;
            let r = classical_report(&inst, &sel, c.cap, c.oracle_cap)?;
            let output = match c.format {
                Format::Json => pretty(&r),
                Format::Csv => {
                    let mut s = String::from("pair,q_index,xi_degree,varsigma_degree,ratio\n");
                    let opt = |v: Option<String>| v.unwrap_or_default();
                    for p in &r.pairs {
                        s.push_str(&format!(
                            "\"{}\",{},{},{},{}\n",
                            pair_label(&p.pair).replace('"', "\"\""),
                            p.q_index,
                            opt(p.xi_degree.map(|d| d.to_string())),
                            opt(p.varsigma_degree.map(|d| d.to_string())),
                            opt(p.ratio.map(|d| d.to_string())),
                        ));
                    }
                    s
                }
            };
            Ok(Entry {
                output,
                status: status(r.all_passed()),
            })
        }
    }
}

fn report_entry(format: Format, report: &supertab::sct::SCTReport) -> Entry {
    let output = match format {
        Format::Json => pretty(report),
        Format::Csv => {
            let mut s = String::from("check,status,note\n");
            for c in &report.checks {
                let note = c.witness.as_ref().or(c.detail.as_ref()).cloned().unwrap_or_default();
                s.push_str(&format!(
                    "{},{},\"{}\"\n",
                    c.name,
                    format!("{:?}", c.status).to_lowercase(),
                    note.replace('"', "\"\"")
                ));
            }
            s
        }
    };
    Entry {
        output,
        status: status(report.all_passed()),
    }
}

fn table(c: &Common, group: Option<Group>) -> Run {
    let inst = instance(c)?;
    let ctx = context(&inst, c.cap)?;
    let fixed = match group {
        Some(Group::Fixed) if inst.sigma.is_none() => return Err(usage("--group fixed needs an involution")),
        Some(g) => g == Group::Fixed,
        None => inst.sigma.is_some(),
    };
    let t = if fixed {
        SupercharacterTable::from_fixed(&FixedTheory::build(ctx)?)
    } else {
        SupercharacterTable::from_p(&PTheory::build(ctx)?)
    };
    let mut output = match c.format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    };
    if !output.ends_with('\n') {
        output.push('\n');
    }
    Ok(Entry { output, status: 0 })
}

fn orbits(c: &Common, reverse: bool) -> Run {
    let inst = instance(c)?;
    let ctx = context(&inst, c.cap)?;
    let mut parts = vec![(Space::Algebra, ActionKind::TwoSided), (Space::Dual, ActionKind::TwoSided)];
    if inst.sigma.is_some() {
        parts.push((Space::FixedAlgebra, ActionKind::Twisted));
        parts.push((Space::FixedDual, ActionKind::Twisted));
    }
    let partitions = parts
        .iter()
        .map(|&(s, a)| ctx.orbits_ordered(s, a, reverse))
        .collect::<supertab::Result<Vec<_>>>()?;
    let output = match c.format {
        Format::Json => pretty(&partitions.iter().map(|p| p.to_json()).collect::<Vec<_>>()),
        Format::Csv => {
            let mut s = String::from("space,action,rep,size,members\n");
            for p in &partitions {
                let v = p.to_json();
                for o in v["orbits"].as_array().expect("orbits") {
                    let members: Vec<String> = o["members"]
                        .as_array()
                        .expect("members")
                        .iter()
                        .map(|m| m.to_string())
                        .collect();
                    s.push_str(&format!(
                        "{},{},{},{},{}\n",
                        v["space"].as_str().unwrap_or(""),
                        v["action"].as_str().unwrap_or(""),
                        o["rep"],
                        o["size"],
                        members.join(" ")
                    ));
                }
            }
            s
        }
    };
    Ok(Entry { output, status: 0 })
}
