//! Command-line interface.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kazlab_core::hecke::{DoubleCosetLabel, HeckeAlgebra, HeckeElement, ProductCache};
use kazlab_core::kazhdan::TransportContext;
use kazlab_core::matgrp::{format_residue_matrix, GroupSpec};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::config::{Kind, RunConfig, Validated};
use crate::report::{kazhdan_json, table, write_constants_csv, write_json};
use crate::parse;
use crate::suites::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "kazlab", version, about = "Hecke algebras of close local fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Maximum number of residue matrices to enumerate.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write structure constants as CSV here.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Source field kind: mixed or equal.
    #[arg(long, global = true)]
    pub kind: Option<Kind>,
    #[arg(long, global = true)]
    pub e: Option<u32>,
    #[arg(long, global = true)]
    pub f: Option<u32>,
    #[arg(long, global = true)]
    pub target_kind: Option<Kind>,
    #[arg(long, global = true)]
    pub target_e: Option<u32>,
    #[arg(long, global = true)]
    pub target_f: Option<u32>,
    /// Closeness N of the field pair.
    #[arg(long = "closeness", short = 'N', global = true)]
    pub closeness: Option<u32>,
    /// GLn or SLn.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Congruence level m.
    #[arg(long, short = 'm', global = true)]
    pub level: Option<u32>,
    /// Window bound B on the norm of cocharacters.
    #[arg(long, short = 'B', global = true)]
    pub window: Option<u32>,
    /// Coefficient ring: Z, Q, F_l or Z/l^k.
    #[arg(long, global = true)]
    pub ring: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan factorization g = a·n_τ·b.
    Cartan { matrix: String },
    /// Degree and left cosets of K_m g K_m, or the window labels when no matrix is given.
    Dcosets { matrix: Option<String> },
    /// Convolution of two Hecke elements.
    Convolve { f1: String, f2: String },
    /// Stabilizer and orbit representatives for a cocharacter such as "1,-1".
    Orbits {
        #[arg(allow_hyphen_values = true)]
        tau: String,
    },
    /// Transport a Hecke element, or a residue with suffix @N, to the target field.
    Transport { expr: String },
    /// Run invariant suites and the algebra comparison.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

pub struct Output {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Global {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($src:ident => $($dst:ident).+),* $(,)?) => {
                $(if let Some(v) = &self.$src { c.$($dst).+ = v.clone(); })*
            };
        }
        set!(p => p, kind => source.kind, e => source.e, f => source.f, target_kind => target.kind,
             target_e => target.e, target_f => target.f, group => group, level => level,
             window => window, ring => coefficients, budget => budget, seed => seed);
        if self.f.is_some() && self.target_f.is_none() {
            c.target.f = c.source.f;
        }
        c.closeness = Some(self.closeness.unwrap_or_else(|| c.closeness()));
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        if self.csv.is_some() {
            c.csv = self.csv.clone();
        }
        Ok(c)
    }
}

fn source_spec(v: &Validated) -> Result<GroupSpec> {
    Ok(GroupSpec::new(v.family, v.n, v.source.clone())?)
}

fn algebra(cfg: &RunConfig, v: &Validated) -> Result<HeckeAlgebra> {
    Ok(HeckeAlgebra::new(source_spec(v)?, cfg.level, cfg.budget)?)
}

fn context(cfg: &RunConfig, need_products: bool) -> Result<(Validated, TransportContext)> {
    let (v, pair) = cfg.validate_pair(need_products)?;
    let n = cfg.closeness();
    let ctx = TransportContext::new(pair, v.family, v.n, cfg.level, n, cfg.window, cfg.budget)?;
    Ok((v, ctx))
}

/// Terms with the larger cocharacter first, then by label.
fn display_order(h: &HeckeElement) -> Vec<(&DoubleCosetLabel, &BigRational)> {
    let mut terms: Vec<_> = h.terms().iter().collect();
    terms.sort_by(|(x, _), (y, _)| y.tau.entries().cmp(x.tau.entries()).then_with(|| x.cmp(y)));
    terms
}

fn describe_element(h: &HeckeElement, alg: &HeckeAlgebra) -> Result<(String, Value)> {
    let mut rows = Vec::new();
    let mut terms = Vec::new();
    for (l, c) in display_order(h) {
        let d = alg.degree(l)?;
        rows.push(vec![l.to_string(), c.to_string(), d.to_string()]);
        terms.push(json!({ "label": l.to_string(), "coefficient": c.to_string(), "degree": d }));
    }
    Ok((table(&["label", "coefficient", "degree"], &rows), Value::Array(terms)))
}

fn cmd_cartan(cfg: &RunConfig, matrix: &str) -> Result<Output> {
    let v = cfg.validate()?;
    let spec = source_spec(&v)?;
    let g = parse::group_element(matrix, &spec)?;
    let c = spec.cartan(&g)?;
    let exact = c.product(&spec) == g;
    let text = format!(
        "group  {spec}\ntau    {}\na      {}\nb      {}\na*n_tau*b == g: {exact}\n",
        c.tau, c.a, c.b
    );
    let json = json!({ "tau": c.tau.to_string(), "a": c.a.to_string(), "b": c.b.to_string(), "exact": exact });
    Ok(Output { text, json, passed: exact })
}

fn cmd_dcosets(cfg: &RunConfig, matrix: Option<&str>) -> Result<Output> {
    let v = cfg.validate()?;
    let alg = algebra(cfg, &v)?;
    match matrix {
        None => {
            let labels = alg.window_labels(cfg.window)?;
            let mut rows = Vec::new();
            let mut arr = Vec::new();
            for l in &labels {
                let d = alg.degree(l)?;
                rows.push(vec![l.to_string(), d.to_string()]);
                arr.push(json!({ "label": l.to_string(), "degree": d }));
            }
            let text = format!("{} labels with |tau| <= {}\n{}", labels.len(), cfg.window, table(&["label", "degree"], &rows));
            Ok(Output { text, json: json!({ "labels": arr }), passed: true })
        }
        Some(m) => {
            let g = parse::group_element(m, alg.spec())?;
            let label = alg.classify(&g)?;
            let cosets = alg.left_cosets(&g)?;
            let mut text = format!("label   {label}\ndegree  {}\n", cosets.len());
            for c in &cosets {
                text.push_str(&format!("  {c}\n"));
            }
            let json = json!({
                "label": label.to_string(),
                "degree": cosets.len(),
                "cosets": cosets.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok(Output { text, json, passed: true })
        }
    }
}

fn cmd_convolve(cfg: &RunConfig, f1: &str, f2: &str) -> Result<Output> {
    let v = cfg.validate()?;
    let alg = algebra(cfg, &v)?;
    let a = parse::hecke_element(f1, &alg, &v.ring)?;
    let b = parse::hecke_element(f2, &alg, &v.ring)?;
    let mut cache = ProductCache::new();
    let prod = alg.convolve(&a, &b, &mut cache)?;
    let (body, terms) = describe_element(&prod, &alg)?;
    let mut conserved = true;
    let mut rows = Vec::new();
    for c in cache.products() {
        conserved &= c.conserves_degree();
        let lhs: u64 = c.terms.iter().map(|(x, n)| n * c.degrees[x]).sum();
        rows.push(vec![c.g.to_string(), c.h.to_string(), lhs.to_string(), (c.deg_g * c.deg_h).to_string()]);
    }
    let summary = display_order(&prod).into_iter().map(|(l, c)| format!("{l}:{c}")).collect::<Vec<_>>().join(", ");
    let text = format!(
        "{summary}\n\n{body}\n{}degree check: {}\n",
        table(&["g", "h", "sum c_x deg(x)", "deg g * deg h"], &rows),
        if conserved { "ok" } else { "FAILED" }
    );
    if let Some(path) = &cfg.csv {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(["label", "coefficient"])?;
        for (l, c) in prod.terms() {
            w.write_record([l.to_string(), c.to_string()])?;
        }
        w.flush()?;
    }
    Ok(Output { text, json: json!({ "ring": v.ring.to_string(), "terms": terms, "degree_check": conserved }), passed: conserved })
}

fn cmd_orbits(cfg: &RunConfig, tau: &str) -> Result<Output> {
    let v = cfg.validate()?;
    let alg = algebra(cfg, &v)?;
    let entries: Vec<i64> = tau
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|s| s.trim().parse().with_context(|| format!("bad cocharacter '{tau}'")))
        .collect::<Result<_>>()?;
    let tau = alg.spec().tau(entries)?;
    let table_ = alg.orbit_table(&tau)?;
    let mut rows = Vec::new();
    for l in &table_.reps {
        rows.push(vec![l.to_string(), alg.degree(l)?.to_string()]);
    }
    let text = format!(
        "tau {tau}\n|Gamma| {}\n|X| {}\n{}",
        table_.gamma.len(),
        table_.reps.len(),
        table(&["orbit representative", "degree"], &rows)
    );
    let json = json!({
        "tau": tau.to_string(),
        "gamma": table_.gamma.iter().map(|(x, y)| [format_residue_matrix(x), format_residue_matrix(y)]).collect::<Vec<_>>(),
        "orbits": table_.reps.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(Output { text, json, passed: true })
}

fn cmd_transport(cfg: &RunConfig, expr: &str) -> Result<Output> {
    let (v, ctx) = context(cfg, false)?;
    if !expr.trim_start().starts_with('[') && expr.contains('@') && !expr.contains("t(") {
        let r = parse::residue(expr, ctx.pair().source())?;
        let image = ctx.pair().apply(&r)?;
        let text = format!("{r} -> {image}\n");
        return Ok(Output { text, json: json!({ "source": r.to_string(), "target": image.to_string() }), passed: true });
    }
    let f = parse::hecke_element(expr, ctx.source(), &v.ring)?;
    let img = ctx.transport_hecke(&f)?;
    let mut rows = Vec::new();
    let mut arr = Vec::new();
    for (l, c) in display_order(&f) {
        let t = ctx.transport_label(l)?;
        rows.push(vec![l.to_string(), t.to_string(), c.to_string()]);
        arr.push(json!({ "source": l.to_string(), "target": t.to_string(), "coefficient": c.to_string() }));
    }
    let text = format!(
        "{} -> {}\n{}",
        ctx.source().spec(),
        ctx.target().spec(),
        table(&["source label", "target label", "coefficient"], &rows)
    );
    let passed = img.terms().len() == f.terms().len();
    Ok(Output { text, json: json!({ "terms": arr }), passed })
}

fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<Output> {
    let need_products = matches!(suite, Suite::Kazhdan | Suite::All);
    let (_, ctx) = context(cfg, need_products)?;
    let outcome = suites::run(&ctx, suite, cfg.seed)?;
    let rows: Vec<Vec<String>> = outcome
        .checks
        .iter()
        .map(|c| vec![c.suite.to_string(), if c.passed { "PASS" } else { "FAIL" }.into(), c.name.clone(), c.detail.clone()])
        .collect();
    let mut text = table(&["suite", "result", "check", "detail"], &rows);
    let mut json = json!({ "checks": outcome.checks.iter().map(|c| c.to_json()).collect::<Vec<_>>() });
    if let Some(r) = &outcome.kazhdan {
        text.push_str(&format!(
            "\npairs {}/{} equal, min sufficient N observed: {}\n",
            r.pairs_equal,
            r.pairs_checked,
            r.min_sufficient_n_observed.map_or("none".into(), |n| n.to_string())
        ));
        if let Some(c) = r.counterexamples.first() {
            text.push_str(&format!("first counterexample: {} * {} (witnesses {} and {})\n", c.g, c.h, c.g_witness, c.h_witness));
        }
        if let Some(path) = &cfg.csv {
            let file = std::fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
            write_constants_csv(r, file)?;
        }
        let k = kazhdan_json(r);
        for key in ["pairs_checked", "pairs_equal", "min_sufficient_N_observed", "counterexamples"] {
            json[key] = k[key].clone();
        }
        json["kazhdan"] = k;
    }
    Ok(Output { text, json, passed: outcome.passed() })
}

/// Runs one command. The JSON report carries the resolved configuration.
pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = cli.global.resolve()?;
    let mut out = match &cli.command {
        Command::Cartan { matrix } => cmd_cartan(&cfg, matrix),
        Command::Dcosets { matrix } => cmd_dcosets(&cfg, matrix.as_deref()),
        Command::Convolve { f1, f2 } => cmd_convolve(&cfg, f1, f2),
        Command::Orbits { tau } => cmd_orbits(&cfg, tau),
        Command::Transport { expr } => cmd_transport(&cfg, expr),
        Command::Verify { suite } => cmd_verify(&cfg, *suite),
    }?;
    let body = std::mem::take(&mut out.json);
    let mut json = json!({ "config": cfg.to_json(), "seed": cfg.seed, "passed": out.passed });
    match body {
        Value::Object(map) => json.as_object_mut().expect("object").extend(map),
        Value::Null => {}
        other => bail!("unexpected report body {other}"),
    }
    if let Some(path) = &cfg.out {
        write_json(path, &json)?;
    }
    out.json = json;
    Ok(out)
}
