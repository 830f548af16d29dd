mod cache;
mod render;
mod session;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use modcx_core::checks::{lab_for, run_labs, suite_lab, CheckReport, SuiteConfig, Verdict};
use modcx_core::fixtures::catalog_names;
use modcx_core::resolution::{ResolutionSummary, DEFAULT_STEPS};
use modcx_core::{classify, ext_table, minimal_free_resolution, tor_table, Error, GrowthClass, HomologyTable};

use cache::Cache;
use session::Session;

#[derive(Parser, Debug)]
#[command(name = "modcx", version, about = "Complexity invariants of modules over artinian local rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Resolution depth.
    #[arg(long, global = true, default_value_t = DEFAULT_STEPS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    /// Seed for random modules.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Characteristic of the coefficient field for catalog rings.
    #[arg(long, global = true, default_value_t = 101)]
    prime: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached resolutions and tables.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Recompute cached results and fail if they differ.
    #[arg(long, global = true)]
    verify_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print invariants of a ring (catalog name or session file).
    RingInfo { ring: String },
    /// Betti numbers of a module and their growth class.
    Resolve { ring: String, module: String },
    /// Ext (or Tor) lengths and generator counts of a pair.
    Ext {
        ring: String,
        m: String,
        n: String,
        #[arg(long)]
        tor: bool,
        /// Also compute the Matlis-dual table and compare lengths.
        #[arg(long)]
        dual_check: bool,
    },
    /// Complexity, plexity and, given N, the pair complexity.
    Cx { ring: String, m: String, n: Option<String> },
    /// Run a check suite; exits 1 if any check is violated.
    Check {
        /// Rings to check instead of the suite's own list (catalog names or session files).
        rings: Vec<String>,
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Random modules per ring; defaults to the suite's setting.
        #[arg(long)]
        modules: Option<usize>,
        /// Where to write the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Render a saved check report.
    Report {
        path: PathBuf,
        #[arg(long)]
        violations_only: bool,
    },
    /// List catalog rings.
    Catalog,
}

/// A failed run with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("modcx: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cache_for(cli: &Cli) -> Cache {
    if cli.no_cache {
        return Cache::disabled();
    }
    match &cli.cache_dir {
        Some(d) => Cache::new(Some(d)),
        None => Cache::new(Some(&std::env::temp_dir().join("modcx-cache"))),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialize");
    s.push('\n');
    s
}

fn verified(flag: Option<bool>) -> Result<(), Failure> {
    match flag {
        Some(false) => Err(Failure { code: 3, message: "cached result differs from recomputation".into() }),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct ResolveOutput {
    ring: String,
    module: String,
    resolution: ResolutionSummary,
    class: GrowthClass,
}

#[derive(Serialize)]
struct ExtOutput {
    ring: String,
    table: HomologyTable,
    class: GrowthClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_check: Option<render::DualCheck>,
}

#[derive(Serialize)]
struct CxOutput {
    ring: String,
    module: String,
    cx: GrowthClass,
    px: GrowthClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<(String, GrowthClass)>,
}

fn run(cli: &Cli) -> Outcome {
    let steps = cli.steps as usize;
    let cache = cache_for(cli);
    match &cli.command {
        Command::Catalog => {
            let names = catalog_names();
            Ok((
                match cli.format {
                    Format::Json => json(&names),
                    _ => names.iter().map(|n| format!("{n}\n")).collect(),
                },
                0,
            ))
        }
        Command::RingInfo { ring } => {
            let s = Session::load(ring, cli.prime)?;
            let info = render::RingInfo::of(&s);
            Ok((
                match cli.format {
                    Format::Json => json(&info),
                    Format::Csv => info.csv(),
                    Format::Text => info.text(),
                },
                0,
            ))
        }
        Command::Resolve { ring, module } => {
            let s = Session::load(ring, cli.prime)?;
            let m = s.module(module)?;
            let key = cache::key("resolve", &s.spec, &[&m.canonical], steps);
            let (summary, same) =
                cache.fetch(&key, cli.verify_cache, || Ok(minimal_free_resolution(&m.module, steps)?.summary()))?;
            verified(same)?;
            let out = ResolveOutput {
                ring: s.name.clone(),
                module: m.name.clone(),
                class: classify(&summary.betti),
                resolution: summary,
            };
            Ok((
                match cli.format {
                    Format::Json => json(&out),
                    Format::Csv => render::sequence_csv("betti", &out.resolution.betti),
                    Format::Text => render::resolve_text(&out.ring, &out.module, &out.resolution, &out.class),
                },
                0,
            ))
        }
        Command::Ext { ring, m, n, tor, dual_check } => {
            let s = Session::load(ring, cli.prime)?;
            let (m, n) = (s.module(m)?, s.module(n)?);
            let op = if *tor { "tor" } else { "ext" };
            let compute = |op: &str, nm: &session::NamedModule| -> Result<(HomologyTable, Option<bool>), Failure> {
                let key = cache::key(op, &s.spec, &[&m.canonical, &nm.canonical], steps);
                let (t, same) = cache.fetch(&key, cli.verify_cache, || {
                    let t = if op == "tor" { tor_table(&m.module, &nm.module, steps)? } else { ext_table(&m.module, &nm.module, steps)? };
                    Ok(t.with_pair(&m.name, &nm.name))
                })?;
                Ok((t, same))
            };
            let (table, same) = compute(op, &n)?;
            verified(same)?;
            let class = modcx_core::growth::class_of_table(&table)?;
            let dual = if *dual_check {
                let nd = session::NamedModule {
                    name: format!("{}^v", n.name),
                    canonical: format!("dual({})", n.canonical),
                    module: n.module.matlis_dual(),
                };
                let (other, same) = compute(if *tor { "ext" } else { "tor" }, &nd)?;
                verified(same)?;
                Some(render::DualCheck::compare(&table, &other))
            } else {
                None
            };
            let code = match &dual {
                Some(d) if d.mismatches > 0 => 1,
                _ => 0,
            };
            let out = ExtOutput { ring: s.name.clone(), table, class, dual_check: dual };
            Ok((
                match cli.format {
                    Format::Json => json(&out),
                    Format::Csv => out.table.to_csv(),
                    Format::Text => render::ext_text(&out.table, &out.class, out.dual_check.as_ref()),
                },
                code,
            ))
        }
        Command::Cx { ring, m, n } => {
            let s = Session::load(ring, cli.prime)?;
            let mm = s.module(m)?;
            let k = s.module("k")?;
            let class = |src: &session::NamedModule, tgt: &session::NamedModule| -> Result<GrowthClass, Failure> {
                let key = cache::key("ext", &s.spec, &[&src.canonical, &tgt.canonical], steps);
                let (t, same) = cache.fetch(&key, cli.verify_cache, || {
                    Ok(ext_table(&src.module, &tgt.module, steps)?.with_pair(&src.name, &tgt.name))
                })?;
                verified(same)?;
                Ok(modcx_core::growth::class_of_table(&t)?)
            };
            let pair = match n {
                Some(n) => {
                    let nn = s.module(n)?;
                    Some((nn.name.clone(), class(&mm, &nn)?))
                }
                None => None,
            };
            let out = CxOutput { ring: s.name.clone(), module: mm.name.clone(), cx: class(&mm, &k)?, px: class(&k, &mm)?, pair };
            Ok((
                match cli.format {
                    Format::Json => json(&out),
                    _ => render::cx_text(&out.module, &out.cx, &out.px, out.pair.as_ref(), cli.format),
                },
                0,
            ))
        }
        Command::Check { rings, suite, modules, out, inject_fault } => {
            let mut config = SuiteConfig::named(suite, cli.seed, steps)?;
            config.prime = cli.prime;
            config.inject_fault = *inject_fault;
            if let Some(c) = modules {
                config.modules_per_ring = *c;
            }
            if !rings.is_empty() {
                config.rings = rings.clone();
            }
            let labs = config
                .rings
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    if catalog_names().contains(&r.as_str()) {
                        return suite_lab(&config, r, i);
                    }
                    let s = Session::load(r, cli.prime)?;
                    let extra = s
                        .modules
                        .keys()
                        .map(|name| s.module(name).map(|m| (m.name, m.module)))
                        .collect::<modcx_core::Result<Vec<_>>>()?;
                    lab_for(&config, &s.name, s.algebra.clone(), extra, i)
                })
                .collect::<modcx_core::Result<Vec<_>>>()?;
            let report = run_labs(&config, &labs);
            let text = json(&report);
            if let Some(path) = out {
                std::fs::write(path, &text)
                    .map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()) })?;
            }
            let code = if report.violations().next().is_some() { 1 } else { 0 };
            Ok((
                match cli.format {
                    Format::Json => text,
                    Format::Csv => render::report_csv(&report, false),
                    Format::Text => render::report_text(&report, false),
                },
                code,
            ))
        }
        Command::Report { path, violations_only } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })?;
            let report: CheckReport = serde_json::from_str(&text)
                .map_err(|e| Failure { code: 2, message: format!("{}: not a check report: {e}", path.display()) })?;
            if report.schema != modcx_core::checks::SCHEMA {
                return Err(Failure { code: 2, message: format!("unsupported report schema {}", report.schema) });
            }
            let code = if report.verdicts.iter().any(|v| v.verdict == Verdict::Violated) { 1 } else { 0 };
            Ok((
                match cli.format {
                    Format::Json => json(&report),
                    Format::Csv => render::report_csv(&report, *violations_only),
                    Format::Text => render::report_text(&report, *violations_only),
                },
                code,
            ))
        }
    }
}
