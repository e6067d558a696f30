use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use filtra_core::approx::{indecomposables_in_perp, perp_class, precover, preenvelope, verify_precover, verify_preenvelope, VerifyReport};
use filtra_core::conflation::{ext_space, is_split, realize, Cocycle};
use filtra_core::filtration::{decide_filtered, group, length_is_exact, oracle_filtered, reorder};
use filtra_core::quiverrep::{enumerate_reps, hom_space, is_indecomposable, krull_schmidt};
use filtra_core::search::DEFAULT_BUDGET;
use filtra_core::suite::{run_criterion, SuiteConfig, CRITERIA};
use filtra_core::{
    ApproxResult, Budget, ExtClass, Filtration, GroupedFiltration, Matrix, PerpSide, RepMorphism, Representation, ThetaFamily,
};
use serde_json::{json, Value};

use crate::workspace::{parse, Workspace, WorkspaceError};

#[derive(Parser, Debug)]
#[command(name = "filtra", version, about = "Ext groups, Θ-filtrations and approximations for quiver representations over F_p")]
pub struct Cli {
    /// Workspace file (required by every command except `selftest`).
    #[arg(short, long, global = true)]
    pub workspace: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis of Hom(A, B).
    Hom { a: String, b: String },
    /// Basis of Ext(C, A) as cocycles.
    Ext { c: String, a: String },
    /// The conflation A → B → C realizing the given class of Ext(C, A).
    Realize {
        c: String,
        a: String,
        #[arg(long, value_delimiter = ',', required = true)]
        class: Vec<u32>,
    },
    /// Checks the ordering condition of a Θ-family.
    CheckTheta { theta: String },
    /// Decides membership in F(Θ) and prints an ordered filtration.
    Filter {
        m: String,
        #[arg(long)]
        theta: String,
        /// Cross-check against brute-force subrepresentation search.
        #[arg(long)]
        oracle: bool,
    },
    /// Reorders a filtration from the workspace and groups equal labels.
    Reorder {
        #[arg(long)]
        filtration: String,
    },
    /// I(Θ)-preenvelope X → Y_X with cokernel in F(Θ).
    Preenvelope(ApproxArgs),
    /// P(Θ)-precover Q_X → X with kernel in F(Θ).
    Precover(ApproxArgs),
    /// Indecomposables of a perpendicular class up to a dimension bound.
    Perp {
        theta: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_delimiter = ',', required = true)]
        max_dim: Vec<usize>,
    },
    /// One representative per isomorphism class up to a dimension bound.
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        max_dim: Vec<usize>,
    },
    /// Runs the invariant suites.
    Selftest {
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(clap::Args, Debug)]
pub struct ApproxArgs {
    pub x: String,
    #[arg(long)]
    pub theta: String,
    /// Check the approximation property against the indecomposables of the class.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_delimiter = ',')]
    pub max_dim: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    ExtLeft,
    ExtRight,
    HomLeft,
    HomRight,
}

impl From<SideArg> for PerpSide {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::ExtLeft => PerpSide::ExtLeft,
            SideArg::ExtRight => PerpSide::ExtRight,
            SideArg::HomLeft => PerpSide::HomLeft,
            SideArg::HomRight => PerpSide::HomRight,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Workspace(#[from] WorkspaceError),
    #[error("{0}")]
    Core(#[from] filtra_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// Exit status and output document.
pub struct Outcome {
    pub status: i32,
    pub document: Value,
}

fn ok(document: Value) -> Outcome {
    Outcome { status: 0, document }
}

fn judged(pass: bool, document: Value) -> Outcome {
    Outcome {
        status: if pass { 0 } else { 1 },
        document,
    }
}

pub fn budget_from_env() -> Result<u64, CliError> {
    match std::env::var("FILTRA_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("FILTRA_BUDGET must be an integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_rows())
}

pub fn rep_json(r: &Representation) -> Value {
    let maps: serde_json::Map<String, Value> = r
        .quiver()
        .arrows()
        .iter()
        .zip(r.maps())
        .map(|(a, m)| (a.name.clone(), matrix_json(m)))
        .collect();
    json!({ "dims": r.dims(), "maps": maps })
}

pub fn morphism_json(f: &RepMorphism) -> Value {
    Value::Array(f.components().iter().map(matrix_json).collect())
}

fn cocycle_json(r: &Representation, g: &Cocycle) -> Value {
    let m: serde_json::Map<String, Value> =
        r.quiver().arrows().iter().zip(g).map(|(a, m)| (a.name.clone(), matrix_json(m))).collect();
    Value::Object(m)
}

pub fn filtration_json(f: &Filtration, theta: &ThetaFamily) -> Value {
    let steps: Vec<Value> = f
        .steps()
        .iter()
        .zip(f.labels())
        .map(|(s, &k)| {
            json!({
                "label": k + 1,
                "dims": s.b().dims(),
                "quotient_dims": s.c().dims(),
                "inflation": morphism_json(s.x()),
            })
        })
        .collect();
    json!({
        "length": f.len(),
        "labels": f.labels().iter().map(|k| k + 1).collect::<Vec<_>>(),
        "multiplicities": f.multiplicities(theta.len()),
        "steps": steps,
    })
}

pub fn grouped_json(g: &GroupedFiltration) -> Value {
    let steps: Vec<Value> = g
        .steps
        .iter()
        .zip(g.labels.iter().zip(&g.multiplicities))
        .map(|(s, (&k, &m))| {
            json!({
                "label": k + 1,
                "multiplicity": m,
                "dims": s.b().dims(),
                "inflation": morphism_json(s.x()),
            })
        })
        .collect();
    json!({ "length": g.len(), "steps": steps })
}

fn summands_json(m: &Representation) -> Result<Value, CliError> {
    let parts: Vec<Value> = krull_schmidt(m)?
        .iter()
        .map(|(r, k)| json!({ "summand": rep_json(r), "multiplicity": k }))
        .collect();
    Ok(Value::Array(parts))
}

fn report_json(r: &VerifyReport, bound: &[usize]) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| json!({ "object": rep_json(&e.object), "passed": e.passed }))
        .collect();
    json!({
        "bound": bound,
        "checked": r.checked(),
        "skipped": r.skipped(),
        "all_passed": r.all_passed(),
        "entries": entries,
    })
}

fn load(path: &Option<PathBuf>) -> Result<Workspace, CliError> {
    let path = path
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs --workspace <FILE>".into()))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(parse(&text)?)
}

fn check_bound(ws: &Workspace, bound: &[usize]) -> Result<(), CliError> {
    if bound.len() != ws.quiver.vertex_count() {
        return Err(CliError::Usage(format!(
            "--max-dim needs {} entries, found {}",
            ws.quiver.vertex_count(),
            bound.len()
        )));
    }
    Ok(())
}

fn approximation(ws: &Workspace, args: &ApproxArgs, envelope: bool) -> Result<Outcome, CliError> {
    let x = ws.rep(&args.x)?;
    let theta = ws.theta(&args.theta)?;
    let r: ApproxResult = if envelope { preenvelope(x, &theta)? } else { precover(x, &theta)? };
    let mut doc = json!({
        "approximation": rep_json(r.approximation()),
        "remainder": rep_json(r.remainder()),
        "remainder_summands": summands_json(r.remainder())?,
        "map": morphism_json(&r.map),
        "triangle": {
            "dims": [r.triangle.a().dims(), r.triangle.b().dims(), r.triangle.c().dims()],
            "inflation": morphism_json(r.triangle.x()),
            "deflation": morphism_json(r.triangle.y()),
        },
    });
    if !args.verify {
        return Ok(ok(doc));
    }
    let bound = args.max_dim.clone().unwrap_or_else(|| vec![2; ws.quiver.vertex_count()]);
    check_bound(ws, &bound)?;
    let mut budget = Budget::new(budget_from_env()?);
    let side = if envelope { PerpSide::ExtRight } else { PerpSide::ExtLeft };
    let tests = indecomposables_in_perp(&theta, side, &bound, &mut budget)?;
    let report = if envelope {
        verify_preenvelope(&r, &theta, &tests)?
    } else {
        verify_precover(&r, &theta, &tests)?
    };
    doc["verified"] = json!(report.all_passed());
    doc["report"] = report_json(&report, &bound);
    Ok(judged(report.all_passed(), doc))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Selftest { seed, budget } => {
            let budget = match budget {
                Some(b) => *b,
                None if std::env::var_os("FILTRA_BUDGET").is_some() => budget_from_env()?,
                None => SuiteConfig::default().budget,
            };
            let config = SuiteConfig { seed: *seed, budget };
            let mut all = true;
            let mut rows = Vec::new();
            for &(id, _, _) in CRITERIA.iter() {
                let r = run_criterion(id, &config)?;
                all &= r.passed();
                rows.push(json!({
                    "criterion": r.id,
                    "title": r.title,
                    "passed": r.passed(),
                    "cases": r.cases,
                    "failures": r.failures.iter().filter(|f| !f.is_empty()).collect::<Vec<_>>(),
                    "time_limit_seconds": r.time_limit.as_secs(),
                }));
            }
            Ok(judged(all, json!({ "seed": seed, "budget": budget, "verified": all, "report": rows })))
        }
        command => {
            let ws = load(&cli.workspace)?;
            match command {
                Command::Hom { a, b } => {
                    let h = hom_space(ws.rep(a)?, ws.rep(b)?)?;
                    let basis: Vec<Value> = h.basis().iter().map(morphism_json).collect();
                    Ok(ok(json!({ "dimension": h.dim(), "basis": basis })))
                }
                Command::Ext { c, a } => {
                    let cr = ws.rep(c)?;
                    let space = ext_space(cr, ws.rep(a)?)?;
                    let basis: Vec<Value> = space.basis().iter().map(|g| cocycle_json(cr, g)).collect();
                    Ok(ok(json!({ "dimension": space.dim(), "basis": basis })))
                }
                Command::Realize { c, a, class } => {
                    let space = ext_space(ws.rep(c)?, ws.rep(a)?)?;
                    let dim = space.dim();
                    let reduced = class.iter().map(|&x| ws.field.reduce(x as i64)).collect();
                    let delta = ExtClass::new(space, reduced)?;
                    let conf = realize(&delta)?;
                    Ok(ok(json!({
                        "dimension": dim,
                        "class": delta.coords(),
                        "middle": rep_json(conf.b()),
                        "inflation": morphism_json(conf.x()),
                        "deflation": morphism_json(conf.y()),
                        "split": is_split(&conf)?.is_some(),
                    })))
                }
                Command::CheckTheta { theta } => match ThetaFamily::new(ws.theta_members(theta)?) {
                    Ok(t) => Ok(ok(json!({
                        "valid": true,
                        "size": t.len(),
                        "length_exact": length_is_exact(&t),
                    }))),
                    Err(e) => Ok(judged(false, json!({ "valid": false, "reason": e.to_string() }))),
                },
                Command::Filter { m, theta, oracle } => {
                    let mr = ws.rep(m)?;
                    let t = ws.theta(theta)?;
                    let mut budget = Budget::new(budget_from_env()?);
                    let found = decide_filtered(mr, &t, &mut budget)?;
                    let mut doc = json!({
                        "member": found.is_some(),
                        "length_exact": length_is_exact(&t),
                    });
                    if let Some(f) = &found {
                        doc["filtration"] = filtration_json(f, &t);
                        doc["grouped"] = grouped_json(&group(f, &t)?);
                    }
                    let mut pass = found.is_some();
                    if *oracle {
                        let o = oracle_filtered(mr, &t, &mut budget)?;
                        doc["oracle"] = json!(o);
                        doc["verified"] = json!(o == found.is_some());
                        pass &= o;
                    }
                    Ok(judged(pass, doc))
                }
                Command::Reorder { filtration } => {
                    let (f, t) = ws.filtration(filtration)?;
                    let r = reorder(&f, &t)?;
                    Ok(ok(json!({
                        "input": filtration_json(&f, &t),
                        "filtration": filtration_json(&r, &t),
                        "grouped": grouped_json(&group(&r, &t)?),
                    })))
                }
                Command::Preenvelope(args) => approximation(&ws, args, true),
                Command::Precover(args) => approximation(&ws, args, false),
                Command::Perp { theta, side, max_dim } => {
                    check_bound(&ws, max_dim)?;
                    let t = ws.theta(theta)?;
                    let mut budget = Budget::new(budget_from_env()?);
                    let mut cands = Vec::new();
                    for m in enumerate_reps(&ws.quiver, ws.field, max_dim, &mut budget)? {
                        if !m.is_zero() && is_indecomposable(&m)? {
                            cands.push(m);
                        }
                    }
                    let members = perp_class(&t, (*side).into(), &cands)?;
                    Ok(ok(json!({
                        "bound": max_dim,
                        "count": members.len(),
                        "members": members.iter().map(rep_json).collect::<Vec<_>>(),
                    })))
                }
                Command::Enumerate { max_dim } => {
                    check_bound(&ws, max_dim)?;
                    let mut budget = Budget::new(budget_from_env()?);
                    let reps = enumerate_reps(&ws.quiver, ws.field, max_dim, &mut budget)?;
                    let mut out = Vec::with_capacity(reps.len());
                    for r in &reps {
                        let mut v = rep_json(r);
                        v["indecomposable"] = json!(!r.is_zero() && is_indecomposable(r)?);
                        out.push(v);
                    }
                    Ok(ok(json!({ "bound": max_dim, "count": reps.len(), "representations": out })))
                }
                Command::Selftest { .. } => unreachable!("handled above"),
            }
        }
    }
}
