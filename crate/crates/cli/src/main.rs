//! `cpf`: run named checks, enumerate objects, and print coefficient tables.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use cyclic_pf::bijection::{
    enumerate_global_pf, enumerate_ptableaux, gamma, max_global_area, psi, GlobalParkingFunction,
};
use cyclic_pf::checks::{run_check, CheckParams, CHECK_NAMES};
use cyclic_pf::ehaops::{
    build_h, det_expand, evaluate_omega, omega_rows, phi_operator, rhs_main, rhs_wilson,
    word_to_string, Budget,
};
use cyclic_pf::macdonald::htilde;
use cyclic_pf::paths::enumerate::{enumerate_chains, enumerate_cpf, ChainKind};
use cyclic_pf::paths::{PathTuple, Skeleton, TupleStats};
use cyclic_pf::symcore::{basis_vector, Basis, Composition, Partition, SymPoly};

#[derive(Parser)]
#[command(
    name = "cpf",
    version,
    about = "Cyclic parking functions: checks, enumeration and tables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one or more named checks; exit status is 0 only if all pass.
    Verify {
        /// Check names, or `all`.
        #[arg(required = true)]
        checks: Vec<String>,
        #[command(flatten)]
        p: ParamArgs,
        /// Budget defaults per (m,n,k), overridden by flags.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the reports here as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List objects as JSON.
    Enumerate {
        what: Enumerable,
        #[command(flatten)]
        p: ParamArgs,
        /// Chain type for `chains`.
        #[arg(long, value_enum, default_value = "all")]
        kind: Kind,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Coefficient tables as CSV.
    Table {
        what: TableKind,
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Map a P-tableau (tuple JSON) to a global parking function.
    Gamma {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Map a global parking function (JSON) back to its P-tableau.
    Psi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Composition, e.g. `1,2`.
    #[arg(long)]
    alpha: Option<String>,
    /// Partition, e.g. `2,1`.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    area_budget: Option<u32>,
    #[arg(long)]
    labels: Option<u32>,
    #[arg(long)]
    guard: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Enumerable {
    Cpf,
    Pf,
    Ptab,
    Chains,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    All,
    Hat,
    Bar,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Macdonald,
    Phi,
    Calpha,
    Main,
    Wilson,
}

#[derive(Deserialize, Default)]
struct Config {
    #[serde(default)]
    defaults: Vec<ConfigEntry>,
}

#[derive(Deserialize)]
struct ConfigEntry {
    m: u32,
    n: u32,
    k: usize,
    area: Option<u32>,
    labels: Option<u32>,
    guard: Option<u32>,
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("bad part {t:?} in {s:?}"))
        })
        .collect()
}

fn params(p: &ParamArgs, cfg: &Config) -> Result<CheckParams> {
    let mut out = CheckParams::new(p.m, p.n, p.k);
    if let Some(e) = cfg
        .defaults
        .iter()
        .find(|e| (e.m, e.n, e.k) == (p.m, p.n, p.k))
    {
        out.area = e.area;
        out.labels = e.labels;
        if let Some(g) = e.guard {
            out.guard = g;
        }
    }
    if let Some(a) = &p.alpha {
        out.alpha = Some(Composition::new(parse_parts(a)?)?);
    }
    if let Some(l) = &p.lambda {
        out.lambda = Some(Partition::new(parse_parts(l)?)?);
    }
    out.area = p.area_budget.or(out.area);
    out.labels = p.labels.or(out.labels);
    if let Some(g) = p.guard {
        out.guard = g;
    }
    Ok(out)
}

fn emit(target: Option<&Path>, text: &str) -> Result<()> {
    match target {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(target: Option<&Path>, v: &Value) -> Result<()> {
    emit(target, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn stats_json(s: TupleStats, z: &Skeleton) -> Value {
    json!({"pdinv": s.pdinv, "ldinv": s.ldinv, "stat": s.stat, "skeleton": z})
}

fn verify(
    checks: &[String],
    p: &ParamArgs,
    config: Option<&Path>,
    out: Option<&Path>,
) -> Result<bool> {
    let cfg: Config = match config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?).context("parsing config")?,
        None => Config::default(),
    };
    let cp = params(p, &cfg)?;
    let names: Vec<&str> = if checks.iter().any(|c| c == "all") {
        CHECK_NAMES.to_vec()
    } else {
        checks.iter().map(String::as_str).collect()
    };
    let mut reports = Vec::new();
    let mut ok = true;
    for name in names {
        let r = run_check(name, &cp).with_context(|| format!("check {name}"))?;
        eprintln!("{}", r.summary());
        ok &= r.passed();
        reports.push(r.to_json());
    }
    if out.is_some() {
        emit_json(out, &Value::Array(reports))?;
    }
    Ok(ok)
}

fn enumerate(what: Enumerable, p: &ParamArgs, kind: Kind, out: Option<&Path>) -> Result<()> {
    let cp = params(p, &Config::default())?;
    let labels = cp.labels.unwrap_or((cp.k * cp.n as usize) as u32);
    let v = match what {
        Enumerable::Cpf => {
            serde_json::to_value(enumerate_cpf(cp.m, cp.n, cp.area.unwrap_or(3), labels))?
        }
        Enumerable::Pf => serde_json::to_value(enumerate_global_pf(cp.m, cp.n, cp.k, labels))?,
        Enumerable::Ptab => {
            let area = cp.area.unwrap_or(max_global_area(cp.m, cp.n, cp.k));
            serde_json::to_value(enumerate_ptableaux(cp.m, cp.n, cp.k, area, labels))?
        }
        Enumerable::Chains => {
            let kind = match kind {
                Kind::All => ChainKind::All,
                Kind::Hat => ChainKind::Hat,
                Kind::Bar => ChainKind::Bar,
            };
            serde_json::to_value(enumerate_chains(
                kind,
                cp.k,
                cp.m,
                cp.n,
                cp.area.unwrap_or(3),
                labels,
            ))?
        }
    };
    emit_json(out, &v)
}

fn series_csv(poly: &SymPoly) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "xexp", "coeff"])?;
    for (t, lam, c) in omega_rows(poly) {
        w.write_record([t.to_string(), lam.to_string(), c.to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn table(what: TableKind, p: &ParamArgs, out: Option<&Path>) -> Result<()> {
    let cp = params(p, &Config::default())?;
    let labels = cp.labels.unwrap_or((cp.k * cp.n as usize) as u32);
    let text = match what {
        TableKind::Macdonald => {
            let d = cp.k;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["mu", "xexp", "coeff"])?;
            for mu in Partition::all(d) {
                for (lam, c) in htilde(&mu, d)?.terms() {
                    w.write_record([mu.to_string(), lam.to_string(), c.to_string()])?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
        TableKind::Phi => {
            let lam = cp
                .lambda
                .clone()
                .ok_or_else(|| anyhow!("phi needs --lambda"))?;
            let sum = phi_operator(&basis_vector(Basis::S, &lam, lam.size()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["word", "coeff"])?;
            for (word, c) in sum.terms() {
                w.write_record([word_to_string(word), c.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        TableKind::Calpha => {
            let alpha = cp
                .alpha
                .clone()
                .ok_or_else(|| anyhow!("calpha needs --alpha"))?;
            let k = alpha.size();
            let area = cp.area.unwrap_or(max_global_area(cp.m, cp.n, k));
            let labels = cp.labels.unwrap_or((k * cp.n as usize) as u32);
            let om = evaluate_omega(
                &det_expand(&build_h(&alpha)),
                Budget::new(cp.m, cp.n, area, labels),
            );
            series_csv(&om.truncated(area as i32))?
        }
        TableKind::Main | TableKind::Wilson => {
            let area = cp.area.unwrap_or(4);
            if matches!(what, TableKind::Wilson) && cp.k == 0 {
                bail!("wilson needs --k >= 1");
            }
            let s = match what {
                TableKind::Main => rhs_main(cp.m, cp.n, cp.k, area, labels),
                _ => rhs_wilson(cp.m, cp.n, cp.k, area, labels),
            };
            series_csv(&s.truncated(area as i32))?
        }
    };
    emit(out, &text)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Verify {
            checks,
            p,
            config,
            json,
        } => verify(&checks, &p, config.as_deref(), json.as_deref()),
        Cmd::Enumerate {
            what,
            p,
            kind,
            json,
        } => enumerate(what, &p, kind, json.as_deref()).map(|_| true),
        Cmd::Table { what, p, csv } => table(what, &p, csv.as_deref()).map(|_| true),
        Cmd::Gamma { input, json } => {
            let t: PathTuple =
                serde_json::from_str(&fs::read_to_string(&input)?).context("parsing tuple")?;
            let g = gamma(&t)?;
            emit_json(
                json.as_deref(),
                &json!({"image": g, "stats": stats_json(g.stats(), &g.skeleton())}),
            )?;
            Ok(true)
        }
        Cmd::Psi { input, json } => {
            let g: GlobalParkingFunction = serde_json::from_str(&fs::read_to_string(&input)?)
                .context("parsing parking function")?;
            let t = psi(&g)?;
            emit_json(
                json.as_deref(),
                &json!({"image": t, "stats": stats_json(t.stats(), &t.skeleton())}),
            )?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("VERIFY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
