//! Command handlers for the `dualdist` binary.
//!
//! Every command produces a [`ReportDocument`] plus a plain-text rendering
//! of the same values and an exit code.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use dualdist::boolean::{epc_counterexample, epc_requirement, RequirementStatus};
use dualdist::lp::build_base_system;
use dualdist::table1;
use dualdist::{
    bound_report, catalog, exists_code, true_n, BinaryMatrix, Budget, Error, LinearCode, Method,
    MethodSet, SearchOptions, SearchOutcome, TrueStatus, TruthTable, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_GUARD: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "dualdist",
    version,
    about = "Bounds, search and witnesses for N(d, d⊥)"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Abort a search after this many nodes.
    #[arg(long, global = true, value_name = "N")]
    pub budget_nodes: Option<u64>,
    /// Abort a search after this many seconds.
    #[arg(long, global = true, value_name = "S")]
    pub budget_secs: Option<f64>,
    /// Run searches sequentially so witnesses are reproducible.
    #[arg(long, global = true)]
    pub seq: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Distances {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub dperp: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper bounds on N(d, d⊥).
    Bound {
        #[command(flatten)]
        dist: Distances,
        /// `all` or a comma list of singleton, griesmer, hamming, lp, lp-refined, gv.
        #[arg(long, default_value = "all")]
        methods: String,
        /// Also print the base LP system at this length in LP file format.
        #[arg(long, value_name = "N")]
        dump_lp: Option<usize>,
    },
    /// Parameters of the code generated by a matrix file.
    Verify {
        path: PathBuf,
        /// Expected `n,d,dperp`; a mismatch exits with status 3.
        #[arg(long, value_name = "N,D,DPERP")]
        expect: Option<String>,
    },
    /// Recompute the reference table and compare cell by cell.
    Table1 {
        #[arg(long, default_value = "all")]
        methods: String,
    },
    /// Print a catalog witness as a generator matrix.
    Catalog {
        #[command(flatten)]
        dist: Distances,
    },
    /// Exhaustive search for a code of given length, or for N(d, d⊥).
    Search {
        #[command(flatten)]
        dist: Distances,
        #[arg(
            long,
            required_unless_present = "find_true",
            conflicts_with = "find_true"
        )]
        n: Option<usize>,
        /// Scan lengths upward from the best lower bound.
        #[arg(long)]
        find_true: bool,
        /// Lower-bound methods used to start the scan.
        #[arg(long, default_value = "all")]
        methods: String,
        /// Record finished partitions here and skip them on restart.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Check EPC(ℓ) of order k for a truth-table file.
    Epc {
        path: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        order: usize,
    },
    /// Input length of EPC(ℓ) of order k functions built from codes.
    EpcRequirement {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "all")]
        methods: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    pub label: String,
}

/// Machine-readable result of one command. Maps are ordered, so the JSON
/// form is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub provenance: Vec<Provenance>,
    /// Microseconds per phase.
    pub timings_us: BTreeMap<String, u64>,
}

impl ReportDocument {
    fn new(command: &str) -> Self {
        ReportDocument {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            provenance: Vec::new(),
            timings_us: BTreeMap::new(),
        }
    }

    fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.inputs.insert(
            key.to_string(),
            serde_json::to_value(v).expect("serializable"),
        );
        self
    }

    fn time(&mut self, key: &str, since: Instant) {
        self.timings_us
            .insert(key.to_string(), since.elapsed().as_micros() as u64);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub struct Output {
    pub doc: ReportDocument,
    pub text: String,
    pub code: i32,
}

/// A failure before any report could be built.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::RaggedRows { .. } | Error::EmptyMatrix => EXIT_PARSE,
            Error::TooLarge(_)
            | Error::TooManyColumns { .. }
            | Error::DimensionTooLarge { .. }
            | Error::ScanCapExceeded { .. } => EXIT_GUARD,
            Error::InvalidParameter(_)
            | Error::Arity(_)
            | Error::InadmissibleCase(_)
            | Error::UnknownKey { .. } => EXIT_USAGE,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn methods(s: &str) -> Result<MethodSet, Failure> {
    Ok(s.parse::<MethodSet>()?)
}

fn provenance(set: &MethodSet) -> Vec<Provenance> {
    set.iter()
        .map(|m| Provenance {
            method: m.name().into(),
            label: m.description().into(),
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = Budget {
        max_nodes: cli.budget_nodes,
        max_time: match cli.budget_secs {
            Some(s) if !(s.is_finite() && s >= 0.0) => {
                return Err(usage(format!("invalid --budget-secs {s}")))
            }
            s => s.map(Duration::from_secs_f64),
        },
    };
    let search_opts = |checkpoint: Option<PathBuf>| SearchOptions {
        budget,
        sequential: cli.seq,
        checkpoint,
    };
    match &cli.command {
        Command::Bound {
            dist,
            methods: m,
            dump_lp,
        } => cmd_bound(dist, &methods(m)?, *dump_lp),
        Command::Verify { path, expect } => cmd_verify(path, expect.as_deref()),
        Command::Table1 { methods: m } => cmd_table1(&methods(m)?),
        Command::Catalog { dist } => cmd_catalog(dist),
        Command::Search {
            dist,
            n,
            find_true,
            methods: m,
            checkpoint,
        } => {
            let opts = search_opts(checkpoint.clone());
            match (n, find_true) {
                (Some(n), false) => cmd_search(dist, *n, &opts),
                _ => cmd_find_true(dist, &methods(m)?, &opts),
            }
        }
        Command::Epc { path, ell, order } => cmd_epc(path, *ell, *order),
        Command::EpcRequirement {
            ell,
            order,
            methods: m,
        } => cmd_epc_requirement(*ell, *order, &methods(m)?),
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn cmd_bound(dist: &Distances, set: &MethodSet, dump_lp: Option<usize>) -> Result<Output, Failure> {
    let start = Instant::now();
    let r = bound_report(dist.d, dist.dperp, set)?;
    let mut doc = ReportDocument::new("bound")
        .input("d", dist.d)
        .input("dperp", dist.dperp)
        .input("methods", set.iter().map(Method::name).collect::<Vec<_>>());
    doc.time("bounds", start);
    doc.provenance = provenance(set);
    let mut text = format!("N({}, {})\n", dist.d, dist.dperp);
    for m in set.iter() {
        let kind = if m.is_upper() { "upper" } else { "lower" };
        text += &format!(
            "  {:<11} {kind}  {:>4}   {}\n",
            m.name(),
            opt(r.get(m)),
            m.description()
        );
    }
    text += &format!(
        "  best lower        {:>4}\n  best upper        {:>4}\n",
        r.best_lb,
        opt(r.best_ub)
    );
    if let Some(t) = &r.true_value {
        text += &format!(
            "  true value        {:>4}   {}\n",
            t.n,
            describe_source(&t.source)
        );
    }
    let mut results = serde_json::to_value(&r).expect("serializable");
    if let Some(n) = dump_lp {
        let lp = build_base_system(n, dist.d, dist.dperp)?.to_lp_format();
        text += &format!("\n{lp}");
        results["lp_dump"] = Value::String(lp);
    }
    doc.results = results;
    Ok(Output {
        doc,
        text,
        code: EXIT_OK,
    })
}

fn describe_source(s: &dualdist::TrueValueSource) -> String {
    match s {
        dualdist::TrueValueSource::Repetition => "repetition code or its dual".into(),
        dualdist::TrueValueSource::Catalog { name, .. } => format!("witness: {name}"),
    }
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), Failure> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--expect wants n,d,dperp, got {s:?}")))?;
    match parts[..] {
        [n, d, e] => Ok((n, d, e)),
        _ => Err(usage(format!("--expect wants n,d,dperp, got {s:?}"))),
    }
}

fn code_summary(code: &LinearCode) -> Result<(Value, String), Failure> {
    let (n, m) = (code.len(), code.dimension());
    let d = code.min_distance()?;
    let dperp = if m == n {
        None
    } else {
        Some(code.dual_distance()?)
    };
    let wd = code.weight_distribution()?.counts().to_vec();
    let ell_ok = catalog::satisfies_ell_bound(n, m, d);
    let ell_dual_ok = dperp.map(|e| catalog::satisfies_ell_bound(n, n - m, e));
    let v = json!({
        "n": n, "m": m, "d": d, "dperp": dperp,
        "weight_distribution": wd.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "ell_bound_holds": ell_ok,
        "dual_ell_bound_holds": ell_dual_ok,
    });
    let nonzero: Vec<String> = wd
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(w, c)| format!("A{w}={c}"))
        .collect();
    let text = format!(
        "n = {n}, m = {m}, d = {d}, d⊥ = {}\nweights: {}\n2^(n-m) >= l(n,d): {ell_ok}\n",
        opt(dperp),
        nonzero.join(" ")
    );
    Ok((v, text))
}

fn cmd_verify(path: &PathBuf, expect: Option<&str>) -> Result<Output, Failure> {
    let expect = expect.map(parse_triple).transpose()?;
    let start = Instant::now();
    let g = BinaryMatrix::parse(&read(path)?)?;
    let code = LinearCode::span(&g)?;
    let (mut results, mut text) = code_summary(&code)?;
    let mut doc = ReportDocument::new("verify")
        .input("path", path.display().to_string())
        .input("expect", expect);
    doc.time("verify", start);
    let mut code_out = EXIT_OK;
    if let Some((n, d, e)) = expect {
        let got = (
            results["n"].as_u64(),
            results["d"].as_u64(),
            results["dperp"].as_u64(),
        );
        let ok = got == (Some(n as u64), Some(d as u64), Some(e as u64));
        results["expectation_met"] = Value::Bool(ok);
        text += &format!(
            "expected ({n}, {d}, {e}): {}\n",
            if ok { "MATCH" } else { "MISMATCH" }
        );
        if !ok {
            code_out = EXIT_MISMATCH;
        }
    }
    if g.rank() < g.rows() {
        text += &format!("note: {} dependent rows ignored\n", g.rows() - g.rank());
    }
    doc.results = results;
    Ok(Output {
        doc,
        text,
        code: code_out,
    })
}

fn cmd_table1(set: &MethodSet) -> Result<Output, Failure> {
    let start = Instant::now();
    let rows = table1::compare_all(set)?;
    let mut doc = ReportDocument::new("table1")
        .input("methods", set.iter().map(Method::name).collect::<Vec<_>>());
    doc.time("table", start);
    doc.provenance = provenance(set);
    doc.provenance.push(Provenance {
        method: "true-value".into(),
        label: "length of the verified catalog witness".into(),
    });
    let all = rows.iter().all(|r| r.all_match());
    let header: Vec<&str> = rows[0].cells.iter().map(|c| c.column.as_str()).collect();
    let mut text = format!(
        "{:>2} {:>2} | {}\n",
        "d",
        "d⊥",
        header
            .iter()
            .map(|h| format!("{h:>11}"))
            .collect::<String>()
    );
    let mut mismatches = Vec::new();
    for r in &rows {
        text += &format!("{:>2} {:>2} | ", r.d, r.dperp);
        for c in &r.cells {
            text += &format!(
                "{:>11}",
                if c.matches {
                    c.computed.to_string()
                } else {
                    format!("{}≠{}", c.computed, c.published)
                }
            );
            if !c.matches {
                mismatches.push(format!(
                    "MISMATCH ({}, {}) {}: computed {}, published {}",
                    r.d, r.dperp, c.column, c.computed, c.published
                ));
            }
        }
        text.push('\n');
    }
    if all {
        text += "all cells MATCH\n";
    } else {
        text += &(mismatches.join("\n") + "\n");
    }
    doc.results = json!({ "rows": rows, "all_match": all });
    Ok(Output {
        doc,
        text,
        code: if all { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn cmd_catalog(dist: &Distances) -> Result<Output, Failure> {
    let entry = catalog::get(dist.d, dist.dperp)?;
    let v = catalog::verify(&entry)?;
    let code = entry.code()?;
    let matrix = code.generator().to_text();
    let mut doc = ReportDocument::new("catalog")
        .input("d", dist.d)
        .input("dperp", dist.dperp);
    doc.results = json!({ "name": entry.name, "verified": v, "generator": matrix.lines().collect::<Vec<_>>() });
    let text = format!(
        "# {} (n = {}, d = {}, d⊥ = {})\n{matrix}",
        entry.name, v.n, v.d, v.dperp_direct
    );
    Ok(Output {
        doc,
        text,
        code: EXIT_OK,
    })
}

fn witness_json(w: &LinearCode) -> Value {
    json!(w.generator().to_text().lines().collect::<Vec<_>>())
}

fn outcome_json(o: &SearchOutcome) -> Value {
    json!({
        "n": o.n,
        "verdict": o.verdict,
        "dimensions": o.dimensions,
        "nodes_explored": o.nodes_explored,
        "wall_budget_secs": o.wall_budget.map(|d| d.as_secs_f64()),
        "witness": o.witness.as_ref().map(witness_json),
    })
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Found => "found",
        Verdict::ExhaustedNone => "exhausted-none",
        Verdict::AbortedNodes => "aborted-budget (nodes)",
        Verdict::AbortedTime => "aborted-budget (time)",
    }
}

fn search_inputs(cmd: &str, dist: &Distances, opts: &SearchOptions) -> ReportDocument {
    ReportDocument::new(cmd)
        .input("d", dist.d)
        .input("dperp", dist.dperp)
        .input("budget_nodes", opts.budget.max_nodes)
        .input("budget_secs", opts.budget.max_time.map(|t| t.as_secs_f64()))
        .input("sequential", opts.sequential)
}

fn cmd_search(dist: &Distances, n: usize, opts: &SearchOptions) -> Result<Output, Failure> {
    let start = Instant::now();
    let o = exists_code(n, dist.d, dist.dperp, opts)?;
    let mut doc = search_inputs("search", dist, opts).input("n", n);
    doc.time("search", start);
    doc.results = outcome_json(&o);
    let mut text = format!(
        "n = {n}, d >= {}, d⊥ >= {}: {}\ndimensions tried: {:?}, nodes: {}\n",
        dist.d,
        dist.dperp,
        verdict_text(o.verdict),
        o.dimensions,
        o.nodes_explored
    );
    if let Some(w) = &o.witness {
        text += &format!(
            "# [{}, {}] witness\n{}",
            w.len(),
            w.dimension(),
            w.generator().to_text()
        );
    }
    let code = if o.verdict.is_aborted() {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok(Output { doc, text, code })
}

fn cmd_find_true(
    dist: &Distances,
    set: &MethodSet,
    opts: &SearchOptions,
) -> Result<Output, Failure> {
    let start = Instant::now();
    let lower: MethodSet = set.iter().filter(|m| !m.is_upper()).collect();
    let r = true_n(dist.d, dist.dperp, &lower, opts)?;
    let mut doc = search_inputs("search", dist, opts)
        .input("find_true", true)
        .input(
            "methods",
            lower.iter().map(Method::name).collect::<Vec<_>>(),
        );
    doc.time("search", start);
    doc.provenance = provenance(&lower);
    let per_length: Vec<Value> = r
        .per_length
        .iter()
        .map(|(n, v)| json!({ "n": n, "verdict": v }))
        .collect();
    doc.results = json!({
        "lower_bound": r.lower_bound,
        "value": r.value,
        "status": r.status,
        "per_length": per_length,
        "witness": r.witness.as_ref().map(witness_json),
    });
    let status = match r.status {
        TrueStatus::Proved => "proved",
        TrueStatus::LowerBoundedOnly => "lower-bounded-only",
    };
    let mut text = format!(
        "N({}, {}) = {} ({status}); scan started at {}\n",
        dist.d,
        dist.dperp,
        opt(r.value),
        r.lower_bound
    );
    for (n, v) in &r.per_length {
        text += &format!("  n = {n}: {}\n", verdict_text(*v));
    }
    if let Some(w) = &r.witness {
        text += &format!(
            "# [{}, {}] witness\n{}",
            w.len(),
            w.dimension(),
            w.generator().to_text()
        );
    }
    let code = if r.status == TrueStatus::Proved {
        EXIT_OK
    } else {
        EXIT_BUDGET
    };
    Ok(Output { doc, text, code })
}

fn cmd_epc(path: &PathBuf, ell: usize, order: usize) -> Result<Output, Failure> {
    let start = Instant::now();
    let f = TruthTable::parse(&read(path)?)?;
    let cx = epc_counterexample(&f, ell, order)?;
    let mut doc = ReportDocument::new("epc")
        .input("path", path.display().to_string())
        .input("ell", ell)
        .input("order", order);
    doc.time("check", start);
    doc.results = json!({ "arity": f.arity(), "satisfies": cx.is_none(), "counterexample": cx });
    let text = match &cx {
        None => format!("f on {} inputs satisfies EPC({ell}) of order {order}\n", f.arity()),
        Some(v) => format!(
            "f on {} inputs fails EPC({ell}) of order {order}\n  Δ = {:0w$b}; fixing inputs {:?} to {:?} gives output {} on {} inputs{}\n",
            f.arity(),
            v.delta,
            v.fixing.positions.iter().map(|p| p + 1).collect::<Vec<_>>(),
            v.fixing.values,
            v.fixing.output,
            v.fixing.count,
            v.fixing.expected.map_or_else(String::new, |e| format!(" (uniform: {e})")),
            w = f.arity(),
        ),
    };
    Ok(Output {
        doc,
        text,
        code: EXIT_OK,
    })
}

fn cmd_epc_requirement(ell: usize, order: usize, set: &MethodSet) -> Result<Output, Failure> {
    let start = Instant::now();
    let r = epc_requirement(ell, order, set)?;
    let mut doc = ReportDocument::new("epc-requirement")
        .input("ell", ell)
        .input("order", order);
    doc.time("bounds", start);
    doc.provenance = provenance(set);
    let text = match r.status {
        RequirementStatus::Exact => format!(
            "d = {}, d⊥ = {}: input length {}{}\n",
            r.d,
            r.dperp,
            opt(r.min_input_length),
            r.source
                .as_ref()
                .map_or_else(String::new, |s| format!(" ({s})"))
        ),
        RequirementStatus::Interval => {
            format!(
                "d = {}, d⊥ = {}: input length in [{}, {}]\n",
                r.d,
                r.dperp,
                r.interval.0,
                opt(r.interval.1)
            )
        }
    };
    doc.results = serde_json::to_value(&r).expect("serializable");
    Ok(Output {
        doc,
        text,
        code: EXIT_OK,
    })
}
