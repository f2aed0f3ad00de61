use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chemtree::enumeration::{enumerate, enumerate_chemical_trees, prufer_oracle_count, EnumerationRequest};
use chemtree::extremal::{
    audit_conjecture_bp0, check_c_conditions, epsilon_reduction_check, minimize_brute, minimize_theory,
    ConditionReport, MinimizerSet, Objective,
};
use chemtree::huffman::{
    all_huffman_trees, degree_shift_check, directed_identity_check, generalized_huffman, huffman_optimality_check,
    majorization_property_suite, GeneratingTuple, PropertyOutcome,
};
use chemtree::indices::{
    ad_hoc_c, degree_counts, first_zagreb, generalized_first_zagreb, oxygen_distance, second_zagreb,
    subroot_indicator, vertex_weighted_wiener, wiener, DegreeCostVector,
};
use chemtree::qspr::{descriptors, fit, load_dataset, parse_terms, precision, predict, RegressionModel};
use chemtree::{parse_tree, Error, ParsedTree, PendentRootedTree};

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "chemtree", version, about = "Chemical-tree indices, extremal trees and boiling-point models")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List one tree per isomorphism class.
    Enumerate(EnumerateArgs),
    /// Compute a topological index of one tree.
    Index(IndexArgs),
    /// Print the regression descriptors of an alcohol skeleton.
    Descriptors(TreeArg),
    /// Predict a boiling point in °C.
    Predict(PredictArgs),
    /// Find the trees minimizing an objective.
    Minimize(MinimizeArgs),
    /// Run the generalized Huffman algorithm on a generating tuple.
    Huffman(HuffmanArgs),
    /// Run a verification check.
    Verify(VerifyArgs),
    /// Fit a regression model to a CSV dataset.
    Fit(FitArgs),
    /// Correlation and standard deviation of a model on a dataset.
    Stats(StatsArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    /// Pendent-rooted trees (alcohol skeletons) instead of free trees.
    #[arg(long)]
    rooted: bool,
    #[arg(long)]
    extremely_branched: bool,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Print only the number of trees.
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct TreeArg {
    /// Tree in the parenthesis grammar, e.g. "O(C(C))", or a JSON parent array.
    #[arg(long)]
    tree: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexName {
    M1,
    M2,
    C1,
    C,
    Wiener,
    Wio,
    S2,
    S3,
    S4,
}

#[derive(Args)]
struct IndexArgs {
    #[arg(long)]
    tree: String,
    #[arg(long, value_enum)]
    index: IndexName,
    /// Degree costs c1,c2,c3,c4 for `c1` and `c` (default: regression I costs).
    #[arg(long)]
    coeffs: Option<String>,
    /// Second Zagreb weight for `c` (default: regression I value).
    #[arg(long, allow_hyphen_values = true)]
    b3: Option<f64>,
}

#[derive(Args)]
struct PredictArgs {
    /// Preset (basic, reg1, reg2) or path to a model JSON file.
    #[arg(long, default_value = "basic")]
    model: String,
    #[arg(long)]
    tree: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Theory,
}

#[derive(Args)]
struct MinimizeArgs {
    #[arg(long)]
    order: usize,
    /// c, c0, m1, m2, wiener, wio, s2, s3, s4, bp0, bp1 or bp2.
    #[arg(long)]
    objective: String,
    #[arg(long, value_enum, default_value = "brute")]
    method: MethodArg,
    /// Search pendent-rooted trees (implied by rooted-only objectives).
    #[arg(long)]
    rooted: bool,
}

#[derive(Args)]
struct HuffmanArgs {
    /// Vertex weights, comma separated.
    #[arg(long)]
    weights: String,
    /// Vertex degrees, comma separated.
    #[arg(long)]
    degrees: String,
    /// Show the merge steps.
    #[arg(long, conflicts_with = "all")]
    trace: bool,
    /// List every tree reachable under some tie resolution.
    #[arg(long)]
    all: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    CConditions,
    HuffmanOptimality,
    DegreeShift,
    Majorization,
    DirectedIdentity,
    EpsilonReduction,
    Enumeration,
    ConjectureBp0,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: Check,
    /// Model for c-conditions: preset or JSON file (default: all presets).
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Orders such as "4..14" or "5,7,9".
    #[arg(long)]
    orders: Option<String>,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "wio3,n2,n3,n4,s2,m2")]
    active: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    data: PathBuf,
}

/// Command failure with its exit status.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::Precondition(_)
            | Error::Infeasible(_)
            | Error::RankDeficient { .. }
            | Error::InsufficientData { .. }
            | Error::ZeroVariance => (3, "precondition"),
            Error::Io(_) => (2, "io"),
            _ => (2, "usage"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        kind: "usage",
        message: message.into(),
    }
}

/// Successful output: a JSON payload, its text rendering, and whether a
/// verification check found a counterexample.
struct Report {
    json: Value,
    text: String,
    failed: bool,
}

impl Report {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Report {
            json,
            text: text.into(),
            failed: false,
        }
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, result) = run(cli.command);
    match result {
        Ok(report) => {
            if cli.json {
                let mut obj = json!({ "schema_version": SCHEMA_VERSION, "command": command });
                merge(&mut obj, report.json);
                println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
            } else {
                print!("{}", report.text);
                if !report.text.ends_with('\n') {
                    println!();
                }
            }
            if report.failed {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.json {
                let obj = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "error": { "kind": f.kind, "message": f.message },
                });
                println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
            }
            ExitCode::from(f.code)
        }
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn run(command: Command) -> (&'static str, Outcome) {
    match command {
        Command::Enumerate(a) => ("enumerate", cmd_enumerate(a)),
        Command::Index(a) => ("index", cmd_index(a)),
        Command::Descriptors(a) => ("descriptors", cmd_descriptors(a)),
        Command::Predict(a) => ("predict", cmd_predict(a)),
        Command::Minimize(a) => ("minimize", cmd_minimize(a)),
        Command::Huffman(a) => ("huffman", cmd_huffman(a)),
        Command::Verify(a) => ("verify", cmd_verify(a)),
        Command::Fit(a) => ("fit", cmd_fit(a)),
        Command::Stats(a) => ("stats", cmd_stats(a)),
    }
}

fn rooted(text: &str) -> Result<PendentRootedTree, Failure> {
    match parse_tree(text)? {
        ParsedTree::Rooted(r) => Ok(r),
        ParsedTree::Free(_) => Err(usage("this command needs a pendent-rooted tree whose outermost label is O")),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|_| usage(format!("invalid {what} entry {s:?}"))))
        .collect()
}

fn parse_orders(text: &str) -> Result<Vec<usize>, Failure> {
    if let Some((a, b)) = text.split_once("..") {
        let inclusive = b.strip_prefix('=').unwrap_or(b);
        let lo: usize = a.trim().parse().map_err(|_| usage(format!("invalid order range {text:?}")))?;
        let hi: usize = inclusive.trim().parse().map_err(|_| usage(format!("invalid order range {text:?}")))?;
        if lo > hi {
            return Err(usage(format!("empty order range {text:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        parse_list(text, "order")
    }
}

fn load_model(spec: &str) -> Result<RegressionModel, Failure> {
    if let Ok(m) = RegressionModel::preset(spec) {
        return Ok(m);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(usage(format!("{spec:?} is neither a preset (basic, reg1, reg2) nor a model file")));
    }
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn cmd_enumerate(a: EnumerateArgs) -> Outcome {
    let mut req = if a.rooted {
        EnumerationRequest::rooted(a.order)
    } else {
        EnumerationRequest::free(a.order)
    }
    .max_degree(a.max_degree);
    if a.extremely_branched {
        req = req.extremely_branched();
    }
    let trees = enumerate(&req)?;
    let text = if a.count_only {
        format!("{}\n", trees.len())
    } else {
        trees.iter().map(|t| format!("{t}\n")).collect()
    };
    let mut obj = json!({
        "order": a.order,
        "rooted": a.rooted,
        "extremely_branched": a.extremely_branched,
        "max_degree": a.max_degree,
        "count": trees.len(),
    });
    if !a.count_only {
        obj["trees"] = json!(trees.iter().map(|t| t.as_str()).collect::<Vec<_>>());
    }
    Ok(Report::ok(obj, text))
}

fn cmd_index(a: IndexArgs) -> Outcome {
    let parsed = parse_tree(&a.tree)?;
    let t = parsed.tree();
    let reg1 = RegressionModel::regression_i();
    let costs = match &a.coeffs {
        Some(text) => {
            let v: Vec<f64> = parse_list(text, "coefficient")?;
            let arr: [f64; 4] = v
                .try_into()
                .map_err(|_| usage("--coeffs needs exactly four values c1,c2,c3,c4"))?;
            DegreeCostVector::try_from(arr)?
        }
        None => reg1.c,
    };
    let rooted = || -> Result<PendentRootedTree, Failure> { rooted(&a.tree) };
    let (name, value): (&str, Value) = match a.index {
        IndexName::M1 => ("m1", json!(first_zagreb(t))),
        IndexName::M2 => ("m2", json!(second_zagreb(t))),
        IndexName::C1 => ("c1", json!(generalized_first_zagreb(t, &costs)?)),
        IndexName::C => ("c", json!(ad_hoc_c(t, &costs, a.b3.unwrap_or(reg1.b3))?)),
        IndexName::Wiener => ("wiener", json!(wiener(t))),
        IndexName::Wio => ("wio", json!(oxygen_distance(&rooted()?))),
        IndexName::S2 => ("s2", json!(subroot_indicator(&rooted()?, 2)?)),
        IndexName::S3 => ("s3", json!(subroot_indicator(&rooted()?, 3)?)),
        IndexName::S4 => ("s4", json!(subroot_indicator(&rooted()?, 4)?)),
    };
    let text = format!("{value}\n");
    Ok(Report::ok(
        json!({ "tree": parsed.canonical_form().as_str(), "index": name, "value": value }),
        text,
    ))
}

fn cmd_descriptors(a: TreeArg) -> Outcome {
    let r = rooted(&a.tree)?;
    let d = descriptors(&r)?;
    let counts = degree_counts(&r)?;
    let text = format!(
        "wio {}\nwio_cuberoot {:.6}\nn1 {}\nn2 {}\nn3 {}\nn4 {}\ns2 {}\nm2 {}\n",
        d.wio, d.wio_cuberoot, counts.n1, d.n2, d.n3, d.n4, d.s2, d.m2
    );
    Ok(Report::ok(
        json!({ "tree": r.canonical_form().as_str(), "descriptors": d }),
        text,
    ))
}

fn cmd_predict(a: PredictArgs) -> Outcome {
    let m = load_model(&a.model)?;
    let r = rooted(&a.tree)?;
    let bp = predict(&m, &r)?;
    Ok(Report::ok(
        json!({ "tree": r.canonical_form().as_str(), "model": a.model, "bp_celsius": bp }),
        format!("{bp:.3}\n"),
    ))
}

fn minimizer_json(m: &MinimizerSet) -> Value {
    json!({
        "order": m.order,
        "objective": m.objective,
        "rooted": m.rooted,
        "method": m.method,
        "value": m.value,
        "count": m.members.len(),
        "members": m.members.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
    })
}

fn minimizer_text(m: &MinimizerSet) -> String {
    let mut s = format!(
        "objective {} order {} ({}) value {} count {}\n",
        m.objective,
        m.order,
        if m.rooted { "rooted" } else { "free" },
        m.value,
        m.members.len()
    );
    for t in &m.members {
        s.push_str(&format!("{t}\n"));
    }
    s
}

fn cmd_minimize(a: MinimizeArgs) -> Outcome {
    let obj = Objective::from_name(&a.objective)?;
    let m = match a.method {
        MethodArg::Brute => minimize_brute(a.order, &obj, a.rooted)?,
        MethodArg::Theory => {
            let m = minimize_theory(a.order, &obj)?;
            if a.rooted && !m.rooted {
                return Err(usage(format!("the construction for {} yields free trees; drop --rooted", a.objective)));
            }
            m
        }
    };
    Ok(Report::ok(minimizer_json(&m), minimizer_text(&m)))
}

fn cmd_huffman(a: HuffmanArgs) -> Outcome {
    let weights: Vec<f64> = parse_list(&a.weights, "weight")?;
    let degrees: Vec<usize> = parse_list(&a.degrees, "degree")?;
    let gt = GeneratingTuple::new(weights, degrees)?;
    if a.all {
        let all = all_huffman_trees(&gt)?;
        let items: Vec<Value> = all
            .iter()
            .map(|h| json!({ "edges": h.edges(), "vwwi": vertex_weighted_wiener(&h.tree) }))
            .collect();
        let mut text = format!("{} Huffman trees\n", all.len());
        for h in &all {
            text.push_str(&format!("{:?} vwwi {}\n", h.edges(), vertex_weighted_wiener(&h.tree)));
        }
        return Ok(Report::ok(json!({ "count": all.len(), "trees": items }), text));
    }
    let h = generalized_huffman(&gt)?;
    let vwwi = vertex_weighted_wiener(&h.tree);
    let f = h.directed.subordinate_weights();
    let mut obj = json!({
        "edges": h.edges(),
        "terminal": h.trace.terminal,
        "subordinate_weights": f,
        "vwwi": vwwi,
    });
    let mut text = format!("edges {:?}\nterminal {}\nvwwi {}\n", h.edges(), h.trace.terminal, vwwi);
    if a.trace {
        obj["steps"] = json!(h.trace.steps);
        for (i, s) in h.trace.steps.iter().enumerate() {
            text.push_str(&format!(
                "step {}: vertex {} takes {:?}, weight {}\n",
                i + 1,
                s.merged,
                s.attached,
                s.updated_weight
            ));
        }
    }
    Ok(Report::ok(obj, text))
}

fn property_text(o: &PropertyOutcome) -> String {
    format!(
        "{} {}: {} trials, {} failures{}\n",
        if o.passed() { "PASS" } else { "FAIL" },
        o.name,
        o.trials,
        o.failures,
        o.witness.as_ref().map(|w| format!(" (first: {w})")).unwrap_or_default()
    )
}

fn conditions_json(label: &str, m: &RegressionModel, r: &ConditionReport) -> Value {
    json!({
        "model": label,
        "c": m.c.as_array(),
        "b3": m.b3,
        "conditions": {
            "cond_23": r.cond_23,
            "cond_22": r.cond_22,
            "cond_33": r.cond_33,
            "cond_23bis": r.cond_23bis,
        },
        "margins": {
            "cond_23": r.margin_23,
            "cond_22": r.margin_22,
            "cond_33": r.margin_33,
            "cond_23bis": r.margin_23bis,
        },
        "extremal_guaranteed": r.extremal_guaranteed,
        "extremal_guaranteed_n_le_17": r.extremal_guaranteed_n_le_17,
    })
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let seed = a.seed;
    match a.check {
        Check::CConditions => {
            let models: Vec<(String, RegressionModel)> = match &a.model {
                Some(spec) => vec![(spec.clone(), load_model(spec)?)],
                None => ["basic", "reg1", "reg2"]
                    .iter()
                    .map(|n| (n.to_string(), RegressionModel::preset(n).expect("preset")))
                    .collect(),
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            for (label, m) in &models {
                let r = check_c_conditions(&m.c, m.b3);
                text.push_str(&format!(
                    "{label}: cond_23 {} cond_22 {} cond_33 {} cond_23bis {}; applies {} (n <= 17: {})\n",
                    r.cond_23, r.cond_22, r.cond_33, r.cond_23bis, r.extremal_guaranteed, r.extremal_guaranteed_n_le_17
                ));
                rows.push(conditions_json(label, m, &r));
            }
            Ok(Report::ok(json!({ "check": "c-conditions", "models": rows }), text))
        }
        Check::HuffmanOptimality => {
            let trials = a.trials.unwrap_or(500);
            let max_order = a.max_order.unwrap_or(9);
            let r = huffman_optimality_check(seed, trials, max_order)?;
            let text: String = std::iter::once(format!("seed {seed}, trials {trials}, orders 4..={max_order}\n"))
                .chain(r.outcomes.iter().map(property_text))
                .collect();
            Ok(Report {
                failed: !r.passed(),
                json: json!({ "check": "huffman-optimality", "max_order": max_order, "report": r, "passed": r.passed() }),
                text,
            })
        }
        Check::DegreeShift => {
            let trials = a.trials.unwrap_or(300);
            let max_order = a.max_order.unwrap_or(8);
            let o = degree_shift_check(seed, trials, max_order)?;
            Ok(Report {
                failed: !o.passed(),
                text: format!("seed {seed}, orders 4..={max_order}\n{}", property_text(&o)),
                json: json!({ "check": "degree-shift", "seed": seed, "max_order": max_order, "outcome": o, "passed": o.passed() }),
            })
        }
        Check::Majorization => {
            let trials = a.trials.unwrap_or(1000);
            let r = majorization_property_suite(seed, trials);
            let text: String = std::iter::once(format!("seed {seed}, trials {trials}\n"))
                .chain(r.outcomes.iter().map(property_text))
                .collect();
            Ok(Report {
                failed: !r.passed(),
                json: json!({ "check": "majorization", "report": r, "passed": r.passed() }),
                text,
            })
        }
        Check::DirectedIdentity => {
            let max_order = a.max_order.unwrap_or(8);
            let o = directed_identity_check(seed, max_order)?;
            Ok(Report {
                failed: !o.passed(),
                text: format!("seed {seed}, orders 3..={max_order}\n{}", property_text(&o)),
                json: json!({ "check": "directed-identity", "seed": seed, "max_order": max_order, "outcome": o, "passed": o.passed() }),
            })
        }
        Check::EpsilonReduction => {
            let orders = parse_orders(a.orders.as_deref().unwrap_or("4..10"))?;
            let bound_max = a.max_order.unwrap_or(8);
            let r = epsilon_reduction_check(a.epsilon, bound_max, orders)?;
            let passed = r.bound_holds() && r.argmins_agree();
            let mut text = format!(
                "epsilon {}: distance bound holds on {}/{} rooted trees of order <= {bound_max}\n",
                r.epsilon,
                r.bound_checked - r.bound_violations,
                r.bound_checked
            );
            for row in &r.rows {
                text.push_str(&format!(
                    "n={}: {} epsilon minimizers, {} distance minimizers, {}\n",
                    row.order,
                    row.epsilon_minimizers.len(),
                    row.oxygen_distance_minimizers.len(),
                    if row.agree { "agree" } else { "DIFFER" }
                ));
            }
            Ok(Report {
                failed: !passed,
                json: json!({ "check": "epsilon-reduction", "report": r, "passed": passed }),
                text,
            })
        }
        Check::Enumeration => {
            let max_order = a.max_order.unwrap_or(10);
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut passed = true;
            for d in 2..=4 {
                for n in 2..=max_order {
                    let main = enumerate_chemical_trees(n, d)?.len();
                    let oracle = prufer_oracle_count(n, d)?;
                    passed &= main == oracle;
                    text.push_str(&format!("n={n} max_degree={d}: {main} trees, oracle {oracle}\n"));
                    rows.push(json!({ "order": n, "max_degree": d, "count": main, "oracle": oracle }));
                }
            }
            Ok(Report {
                failed: !passed,
                json: json!({ "check": "enumeration", "rows": rows, "passed": passed }),
                text,
            })
        }
        Check::ConjectureBp0 => {
            let orders = parse_orders(a.orders.as_deref().unwrap_or("4..14"))?;
            let rows = audit_conjecture_bp0(orders)?;
            let passed = rows.iter().all(|r| r.consistent());
            let mut text = String::new();
            for r in &rows {
                text.push_str(&format!(
                    "n={}: {} minimizer(s) value {:.3}, extremely branched {}, restricted search agrees {}, intersection {}\n",
                    r.order,
                    r.minimizers.len(),
                    r.value,
                    r.all_extremely_branched,
                    r.restricted_agrees,
                    match r.intersection_agrees {
                        Some(true) => "agrees",
                        Some(false) => "disagrees",
                        None => "empty",
                    }
                ));
                for m in &r.minimizers {
                    text.push_str(&format!("  {m}\n"));
                }
            }
            Ok(Report {
                failed: !passed,
                json: json!({ "check": "conjecture-bp0", "rows": rows, "passed": passed }),
                text,
            })
        }
    }
}

fn stats_json(s: &chemtree::qspr::PrecisionStats) -> Value {
    json!({ "correlation": s.correlation, "sd": s.sd, "records": s.records })
}

fn cmd_fit(a: FitArgs) -> Outcome {
    let data = load_dataset(&a.data)?;
    for w in &data.warnings {
        eprintln!("warning: {w}");
    }
    let active: BTreeSet<_> = parse_terms(&a.active)?;
    let m = fit(&data.records, &active)?;
    let stats = precision(&m, &data.records)?;
    let model_json = serde_json::to_value(&m).map_err(Error::from)?;
    if let Some(out) = &a.out {
        let text = serde_json::to_string_pretty(&m).map_err(Error::from)?;
        std::fs::write(out, text + "\n").map_err(Error::from)?;
    }
    let text = format!(
        "{}\ncorrelation {:.6} sd {:.6} records {}\n",
        serde_json::to_string(&m).map_err(Error::from)?,
        stats.correlation,
        stats.sd,
        stats.records
    );
    Ok(Report::ok(
        json!({ "model": model_json, "training": stats_json(&stats), "warnings": data.warnings }),
        text,
    ))
}

fn cmd_stats(a: StatsArgs) -> Outcome {
    let m = load_model(&a.model)?;
    let data = load_dataset(&a.data)?;
    for w in &data.warnings {
        eprintln!("warning: {w}");
    }
    let s = precision(&m, &data.records)?;
    Ok(Report::ok(
        json!({ "stats": stats_json(&s), "warnings": data.warnings }),
        format!("correlation {:.6} sd {:.6} records {}\n", s.correlation, s.sd, s.records),
    ))
}
