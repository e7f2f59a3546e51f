//! Command-line front end: tables as JSON, CSV or text, and DOT diagrams of
//! the closure order.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use eo_strata::closure_order::{
    bruhat_matrix, closure_relation_with, conjecture_report, covers, run_with_threads, scan_one, ClosurePoset,
    CoverKind, CoverRelation, SourceResult, Strategy,
};
use eo_strata::product_maps::{phi_1x1, phi_1x1_oracle, phi_2x0, phi_2x0_oracle};
use eo_strata::siegel::{
    admissible_profiles, f_nilpotent, in_wq, minimal_omega, psi, psi_oracle, ss_contained, ss_report, Provenance,
};
use eo_strata::strata_index::{all_strata, count_by_dimension, count_formula_b2, gaussian_binomial, GammaUV, Signature};

#[derive(Parser, Debug)]
#[command(name = "eo-strata", version, about = "Ekedahl-Oort strata of GU(q-2,2): orders, products, forgetful map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Pruned, global = true)]
    strategy: StrategyArg,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strata γ_{u,v} with lengths and counts per dimension.
    Strata {
        #[arg(long)]
        q: QRange,
    },
    /// Covers of the Bruhat order.
    Bruhat {
        #[arg(long)]
        q: QRange,
    },
    /// Covers of the closure order.
    Closure {
        #[arg(long)]
        q: QRange,
        /// JSONL file of finished sources; read to resume, appended while running.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Compare the closure order with the order generated by the theorems.
    Conjecture {
        #[arg(long)]
        q: QRange,
    },
    /// Relations realized by single simple reflections, q = 3..max-q.
    Scan {
        #[arg(long)]
        max_q: usize,
    },
    /// Product map on indices, closed form against the Dieudonné oracle.
    Product {
        #[arg(long, value_enum)]
        kind: ProductKind,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        u: Option<usize>,
        #[arg(long)]
        v: Option<usize>,
    },
    /// ψ(γ_{u,v}) ∈ W_q, closed form against the Dieudonné oracle.
    Forgetful {
        #[arg(long)]
        q: QRange,
    },
    /// ω_α for every admissible slope profile.
    MinimalEo {
        #[arg(long)]
        q: QRange,
        #[arg(long)]
        max_parts: Option<usize>,
    },
    /// Supersingular classification of every stratum.
    SsReport {
        #[arg(long)]
        q: QRange,
        #[arg(long)]
        max_parts: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Pruned,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Pruned => Strategy::Pruned,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProductKind {
    #[value(name = "1x1")]
    OneByOne,
    #[value(name = "2x0")]
    TwoByZero,
}

/// `7` or `5..11` (inclusive).
#[derive(Debug, Clone, Copy)]
struct QRange {
    lo: usize,
    hi: usize,
}

impl FromStr for QRange {
    type Err = String;

    fn from_str(s: &str) -> Result<QRange, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad q {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let q = parse(s)?;
                (q, q)
            }
        };
        if lo < 2 || hi < lo {
            return Err(format!("q range {s:?} must satisfy 2 ≤ lo ≤ hi"));
        }
        Ok(QRange { lo, hi })
    }
}

impl QRange {
    fn values(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    fn single(&self, what: &str) -> Result<usize> {
        if self.lo != self.hi {
            bail!("{what} needs a single q");
        }
        Ok(self.lo)
    }
}

/// Output of one command: a JSON document, flat rows for CSV and text, an
/// optional DOT graph, and whether all agreement checks passed.
struct Output {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    dot: Option<String>,
    ok: bool,
}

impl Output {
    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let mut s = String::new();
                let line = |cells: Vec<&str>, s: &mut String| {
                    let padded: Vec<String> =
                        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
                    let _ = writeln!(s, "{}", padded.join("  ").trim_end());
                };
                line(self.header.clone(), &mut s);
                for r in &self.rows {
                    line(r.iter().map(String::as_str).collect(), &mut s);
                }
                Ok(s)
            }
            Format::Dot => self.dot.clone().context("this command has no DOT output"),
        }
    }
}

fn one_or_many(mut docs: Vec<Value>) -> Value {
    if docs.len() == 1 {
        docs.pop().unwrap()
    } else {
        Value::Array(docs)
    }
}

fn stratum_json(g: &GammaUV) -> Value {
    json!({"u": g.u, "v": g.v})
}

fn cover_json(c: &CoverRelation) -> Value {
    json!({"lower": stratum_json(&c.lower), "upper": stratum_json(&c.upper), "kind": c.kind})
}

fn node_id(g: &GammaUV) -> String {
    format!("\"{}_{}\"", g.u, g.v)
}

/// Plain directed graph: nodes "u_v" with rank = length, edges lower → upper.
fn dot_graph(name: &str, strata: &[GammaUV], covers: &[CoverRelation]) -> String {
    let mut nodes = strata.to_vec();
    nodes.sort_by_key(|g| g.sort_key());
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n");
    for g in &nodes {
        let _ = writeln!(s, "  {} [label=\"({},{})\", rank={}];", node_id(g), g.u, g.v, g.length());
    }
    for c in covers {
        let style = match c.kind {
            CoverKind::Bruhat => "style=solid",
            CoverKind::NonBruhat => "style=dashed, color=orange",
        };
        let _ = writeln!(s, "  {} -> {} [{}];", node_id(&c.lower), node_id(&c.upper), style);
    }
    s.push_str("}\n");
    s
}

fn cmd_strata(q: QRange) -> Output {
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for q in q.values() {
        let strata = all_strata(q);
        let sig = Signature { a: q - 2, b: 2 };
        let gauss = gaussian_binomial(q - 2, 2);
        let counts: Vec<Value> = (0..=2 * (q - 2))
            .map(|d| {
                let n = count_by_dimension(sig, d);
                ok &= n == count_formula_b2(q, d) && gauss.get(d).copied().unwrap_or(0) as usize == n;
                json!({"d": d, "n": n, "formula": count_formula_b2(q, d), "gaussian": gauss.get(d).copied().unwrap_or(0)})
            })
            .collect();
        for g in &strata {
            rows.push(vec![q.to_string(), g.u.to_string(), g.v.to_string(), g.length().to_string()]);
        }
        docs.push(json!({
            "q": q,
            "strata": strata.iter().map(|g| json!({"u": g.u, "v": g.v, "dim": g.length()})).collect::<Vec<_>>(),
            "counts": counts,
            "total": strata.len(),
        }));
    }
    Output { json: one_or_many(docs), header: vec!["q", "u", "v", "dim"], rows, dot: None, ok }
}

fn cmd_bruhat(q: QRange) -> Output {
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    let mut dot = String::new();
    for q in q.values() {
        let strata = all_strata(q);
        let cv = covers(&strata, &bruhat_matrix(&strata));
        for c in &cv {
            rows.push(vec![q.to_string(), c.lower.to_string(), c.upper.to_string()]);
        }
        dot.push_str(&dot_graph(&format!("bruhat_q{q}"), &strata, &cv));
        docs.push(json!({"q": q, "covers": cv.iter().map(cover_json).collect::<Vec<_>>()}));
    }
    Output { json: one_or_many(docs), header: vec!["q", "lower", "upper"], rows, dot: Some(dot), ok: true }
}

fn read_checkpoint(path: &PathBuf, q: usize) -> Result<Vec<SourceResult>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r: SourceResult =
            serde_json::from_str(&line).with_context(|| format!("{}:{}", path.display(), k + 1))?;
        if r.source.q != q {
            bail!("checkpoint {} holds q={}, expected {q}", path.display(), r.source.q);
        }
        out.push(r);
    }
    Ok(out)
}

fn closure_poset_logged(q: usize, strategy: Strategy, threads: usize, checkpoint: Option<&PathBuf>) -> Result<ClosurePoset> {
    let done = match checkpoint {
        Some(p) => read_checkpoint(p, q)?,
        None => Vec::new(),
    };
    let sink = match checkpoint {
        Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
        None => None,
    };
    let total = all_strata(q).len();
    let counter = AtomicUsize::new(done.len());
    let start = Instant::now();
    if !done.is_empty() {
        eprintln!("q={q}: resuming with {} of {total} sources done", done.len());
    }
    let on_result = |r: &SourceResult| {
        let k = counter.fetch_add(1, Ordering::SeqCst) + 1;
        eprintln!(
            "q={q} [{k}/{total}] source {} -> {} targets ({:.1}s)",
            r.source,
            r.targets.len(),
            start.elapsed().as_secs_f64()
        );
        if let Some(sink) = &sink {
            let mut f = sink.lock().unwrap();
            let _ = writeln!(f, "{}", serde_json::to_string(r).unwrap());
            let _ = f.flush();
        }
    };
    let relation = run_with_threads(threads, || closure_relation_with(q, strategy, &done, &on_result))?;
    Ok(ClosurePoset::from_relation(relation))
}

fn cmd_closure(q: QRange, strategy: Strategy, threads: usize, checkpoint: Option<&PathBuf>) -> Result<Output> {
    if checkpoint.is_some() {
        q.single("--checkpoint")?;
    }
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    let mut dot = String::new();
    let mut ok = true;
    for q in q.values() {
        let poset = closure_poset_logged(q, strategy, threads, checkpoint)?;
        ok &= poset.relation.is_partial_order();
        let rel = &poset.relation;
        let covers_json: Vec<Value> = poset
            .covers
            .iter()
            .map(|c| {
                let mut v = cover_json(c);
                if c.kind == CoverKind::NonBruhat {
                    let (i, j) = (rel.index_of(&c.lower).unwrap(), rel.index_of(&c.upper).unwrap());
                    v["witness"] = json!(rel.witness(i, j));
                }
                v
            })
            .collect();
        for c in &poset.covers {
            rows.push(vec![q.to_string(), c.lower.to_string(), c.upper.to_string(), format!("{:?}", c.kind)]);
        }
        dot.push_str(&dot_graph(&format!("closure_q{q}"), &rel.strata, &poset.covers));
        docs.push(json!({
            "q": q,
            "strategy": strategy,
            "is_partial_order": rel.is_partial_order(),
            "non_bruhat_count": poset.non_bruhat_covers().len(),
            "covers": covers_json,
        }));
    }
    Ok(Output { json: one_or_many(docs), header: vec!["q", "lower", "upper", "kind"], rows, dot: Some(dot), ok })
}

fn cmd_conjecture(q: QRange, strategy: Strategy, threads: usize) -> Result<Output> {
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for q in q.values() {
        let start = Instant::now();
        let poset = closure_poset_logged(q, strategy, threads, None)?;
        let report = conjecture_report(&poset);
        eprintln!("q={q}: holds={} ({:.1}s)", report.holds, start.elapsed().as_secs_f64());
        ok &= report.holds && report.is_partial_order;
        rows.push(vec![
            q.to_string(),
            report.holds.to_string(),
            report.non_bruhat_covers.len().to_string(),
            report.extra_covers.len().to_string(),
            report.missing_covers.len().to_string(),
        ]);
        docs.push(serde_json::to_value(&report)?);
    }
    Ok(Output {
        json: Value::Array(docs),
        header: vec!["q", "holds", "non_bruhat", "extra", "missing"],
        rows,
        dot: None,
        ok,
    })
}

fn cmd_scan(max_q: usize, threads: usize) -> Result<Output> {
    let reports = run_with_threads(threads, || {
        use rayon::prelude::*;
        (3..=max_q).into_par_iter().map(scan_one).collect::<Vec<_>>()
    })?;
    let mut rows = Vec::new();
    let mut ok = true;
    for r in &reports {
        ok &= r.matches_primary;
        rows.push(vec![
            r.q.to_string(),
            r.hits.len().to_string(),
            r.essential.len().to_string(),
            r.primary.len().to_string(),
            r.matches_primary.to_string(),
        ]);
    }
    Ok(Output {
        json: serde_json::to_value(&reports)?,
        header: vec!["q", "hits", "essential", "primary", "matches_primary"],
        rows,
        dot: None,
        ok,
    })
}

#[derive(Serialize)]
struct ProductRow {
    kind: &'static str,
    params: Value,
    formula: GammaUV,
    oracle: GammaUV,
    agree: bool,
}

fn cmd_product(kind: ProductKind, m: usize, n: usize, a: Option<usize>, b: Option<usize>, u: Option<usize>, v: Option<usize>) -> Result<Output> {
    let row = match kind {
        ProductKind::OneByOne => {
            let (a, b) = (a.context("--a is required")?, b.context("--b is required")?);
            let formula = phi_1x1(m, a, n, b)?;
            let oracle = phi_1x1_oracle(m, a, n, b)?;
            ProductRow { kind: "1x1", params: json!({"m": m, "a": a, "n": n, "b": b}), formula, oracle, agree: formula == oracle }
        }
        ProductKind::TwoByZero => {
            let (u, v) = (u.context("--u is required")?, v.context("--v is required")?);
            let formula = phi_2x0(m, u, v, n)?;
            let oracle = phi_2x0_oracle(m, u, v, n)?;
            ProductRow { kind: "2x0", params: json!({"m": m, "u": u, "v": v, "n": n}), formula, oracle, agree: formula == oracle }
        }
    };
    let rows = vec![vec![
        row.kind.to_string(),
        row.params.to_string(),
        row.formula.q.to_string(),
        row.formula.to_string(),
        row.oracle.to_string(),
        row.agree.to_string(),
    ]];
    let ok = row.agree;
    Ok(Output {
        json: serde_json::to_value(&row)?,
        header: vec!["kind", "params", "q", "formula", "oracle", "agree"],
        rows,
        dot: None,
        ok,
    })
}

fn cmd_forgetful(q: QRange) -> Result<Output> {
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for q in q.values() {
        let mut entries = Vec::new();
        for g in all_strata(q) {
            let w = psi(q, g.u, g.v)?;
            let o = psi_oracle(q, g.u, g.v)?;
            let agree = w == o;
            let invariants = in_wq(w.permutation());
            ok &= agree && invariants;
            rows.push(vec![
                q.to_string(),
                g.u.to_string(),
                g.v.to_string(),
                w.to_string(),
                agree.to_string(),
                invariants.to_string(),
                ss_contained(&w).to_string(),
                f_nilpotent(&w).to_string(),
            ]);
            entries.push(json!({
                "u": g.u, "v": g.v, "omega": w, "oracle": o, "agree": agree, "invariants": invariants,
                "ss_contained": ss_contained(&w), "f_nilpotent": f_nilpotent(&w),
            }));
        }
        docs.push(json!({"q": q, "strata": entries}));
    }
    Ok(Output {
        json: one_or_many(docs),
        header: vec!["q", "u", "v", "omega", "agree", "invariants", "ss_contained", "f_nilpotent"],
        rows,
        dot: None,
        ok,
    })
}

fn cmd_minimal(q: QRange, max_parts: Option<usize>) -> Result<Output> {
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    for q in q.values() {
        let psi_values: BTreeSet<_> = all_strata(q).iter().map(|g| psi(q, g.u, g.v)).collect::<Result<_, _>>()?;
        let mut entries = Vec::new();
        for p in admissible_profiles(q, max_parts) {
            let m = minimal_omega(&p)?;
            let hits: Vec<Value> = all_strata(q)
                .iter()
                .filter(|g| psi(q, g.u, g.v).map(|w| w == m.omega).unwrap_or(false))
                .map(stratum_json)
                .collect();
            rows.push(vec![
                q.to_string(),
                p.to_string(),
                m.omega.to_string(),
                f_nilpotent(&m.omega).to_string(),
                m.words_pin_eta.to_string(),
                psi_values.contains(&m.omega).to_string(),
            ]);
            entries.push(json!({
                "profile": p.n, "omega": m.omega, "eta": m.eta, "f_nilpotent": f_nilpotent(&m.omega),
                "words_pin_eta": m.words_pin_eta, "strata_with_this_omega": hits,
            }));
        }
        docs.push(json!({"q": q, "profiles": entries}));
    }
    Ok(Output {
        json: one_or_many(docs),
        header: vec!["q", "profile", "omega", "f_nilpotent", "words_pin_eta", "is_psi_image"],
        rows,
        dot: None,
        ok: true,
    })
}

fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::PrefixIdentity => "prefix-identity".into(),
        Provenance::FNotNilpotent => "F-not-nilpotent".into(),
        Provenance::MinimalStratum { profile } => format!("minimal{profile}"),
        Provenance::Product { certificate } => {
            let steps: Vec<String> = certificate
                .iter()
                .map(|s| serde_json::to_value(s).ok().and_then(|v| v["map"].as_str().map(String::from)).unwrap_or_default())
                .collect();
            format!("product[{}]", steps.join(">"))
        }
    }
}

fn cmd_ss_report(q: QRange, max_parts: Option<usize>) -> Result<Output> {
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    for q in q.values() {
        let report = ss_report(q, max_parts)?;
        for r in &report {
            let prov: Vec<String> = r.provenance.iter().map(provenance_label).collect();
            rows.push(vec![
                q.to_string(),
                r.u.to_string(),
                r.v.to_string(),
                r.dim.to_string(),
                format!("{:?}", r.verdict),
                prov.join(";"),
            ]);
        }
        docs.push(json!({"q": q, "strata": report}));
    }
    Ok(Output {
        json: one_or_many(docs),
        header: vec!["q", "u", "v", "dim", "verdict", "provenance"],
        rows,
        dot: None,
        ok: true,
    })
}

fn run(cli: &Cli) -> Result<Output> {
    if cli.threads == 0 {
        bail!("--threads must be at least 1");
    }
    let strategy: Strategy = cli.strategy.into();
    match &cli.command {
        Command::Strata { q } => Ok(cmd_strata(*q)),
        Command::Bruhat { q } => Ok(cmd_bruhat(*q)),
        Command::Closure { q, checkpoint } => cmd_closure(*q, strategy, cli.threads, checkpoint.as_ref()),
        Command::Conjecture { q } => cmd_conjecture(*q, strategy, cli.threads),
        Command::Scan { max_q } => {
            if *max_q < 3 {
                bail!("--max-q must be at least 3");
            }
            cmd_scan(*max_q, cli.threads)
        }
        Command::Product { kind, m, n, a, b, u, v } => cmd_product(*kind, *m, *n, *a, *b, *u, *v),
        Command::Forgetful { q } => cmd_forgetful(*q),
        Command::MinimalEo { q, max_parts } => cmd_minimal(*q, *max_parts),
        Command::SsReport { q, max_parts } => cmd_ss_report(*q, *max_parts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        let text = out.render(cli.format)?;
        match &cli.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => print!("{text}"),
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("eo-strata: an agreement check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("eo-strata: {e:#}");
            ExitCode::from(2)
        }
    }
}
