use std::fs;
use std::path::Path;

use qsym_core::cqg::{verify_action, VerifyOptions, DEFAULT_SEED};
use qsym_core::graph::{parse_graph, DirectedMultigraph};
use qsym_core::kms::{check_invariance, check_subinvariance, SpectralReport};
use qsym_core::partitions::{
    classify_weights, enumerate_partitions_capped, partition_count_capped, symmetry_descriptor, ClassificationDocument,
    NameStyle, Partition, SymmetryDescriptor,
};
use qsym_core::scalar::Beta;
use qsym_core::{BigRational, Error};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::weights::{self, Weights};
use crate::{Command, WeightArgs};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_SINK: u8 = 3;
pub const EXIT_NONPOSITIVE: u8 = 4;
pub const EXIT_GROUPING: u8 = 5;
pub const EXIT_VERIFY_FAILED: u8 = 6;

pub const SEED_ENV: &str = "QSYM_SEED";
const SINK_MESSAGE: &str = "graph has a sink; the no-sink hypothesis is violated";

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(Error::NonPositiveWeight { .. }) => EXIT_NONPOSITIVE,
            CliError::Core(Error::InconsistentGrouping(..)) => EXIT_GROUPING,
            _ => EXIT_USAGE,
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "usage".into(),
            CliError::Core(e) => {
                // Variant name in snake_case, e.g. NonPositiveWeight -> non_positive_weight.
                let debug = format!("{e:?}");
                let name = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("error");
                let mut out = String::new();
                for (i, c) in name.chars().enumerate() {
                    if c.is_uppercase() {
                        if i > 0 {
                            out.push('_');
                        }
                        out.extend(c.to_lowercase());
                    } else {
                        out.push(c);
                    }
                }
                out
            }
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        }
    }
}

pub struct Outcome {
    pub document: Value,
    pub exit: u8,
    /// Printed to stderr alongside a normal report.
    pub notice: Option<String>,
}

pub struct Failure {
    pub document: Value,
    pub code: u8,
    pub message: String,
}

fn ok(document: Value) -> Outcome {
    Outcome {
        document,
        exit: 0,
        notice: None,
    }
}

fn style(ascii: bool) -> NameStyle {
    if ascii {
        NameStyle::Ascii
    } else {
        NameStyle::Unicode
    }
}

/// `{"request": ..}` followed by the fields of `body`.
fn with_request(request: Value, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("request".into(), request);
    match body {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    Value::Object(doc)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn run(command: &Command, ascii: bool) -> Result<Outcome, Failure> {
    let request = request_of(command, ascii);
    dispatch(command, ascii, &request).map_err(|e| Failure {
        document: with_request(request, json!({ "error": { "kind": e.kind(), "message": e.message() } })),
        code: e.code(),
        message: e.message(),
    })
}

fn weight_request(w: &WeightArgs) -> Value {
    json!({
        "weights": w.weights,
        "n": w.n,
        "mode": w.mode,
        "eps": w.eps,
        "exact_decimal": w.exact_decimal,
    })
}

fn request_of(command: &Command, ascii: bool) -> Value {
    let mut req = match command {
        Command::Analyze { graph } => json!({ "command": "analyze", "graph": graph.display().to_string() }),
        Command::KmsCheck { graph, weights, beta } => {
            let mut r = weight_request(weights);
            r["command"] = json!("kms-check");
            r["graph"] = json!(graph.display().to_string());
            r["beta"] = json!(beta);
            r
        }
        Command::Classify { weights } => {
            let mut r = weight_request(weights);
            r["command"] = json!("classify");
            r
        }
        Command::Symmetry { partition } => json!({ "command": "symmetry", "partition": partition }),
        Command::VerifyAction {
            weights,
            seed: _,
            trials,
            max_degree,
            tol,
            force_single_block,
        } => {
            let mut r = weight_request(weights);
            r["command"] = json!("verify-action");
            r["trials"] = json!(trials);
            r["L"] = json!(max_degree);
            r["tol"] = json!(tol);
            r["force_single_block"] = json!(force_single_block);
            r
        }
        Command::Partitions { n, cap } => json!({ "command": "partitions", "n": n, "cap": cap }),
    };
    req["ascii"] = json!(ascii);
    req
}

fn dispatch(command: &Command, ascii: bool, request: &Value) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze { graph } => analyze(graph, request),
        Command::KmsCheck { graph, weights, beta } => kms_check(graph, weights, beta, request),
        Command::Classify { weights } => classify(weights, ascii, request),
        Command::Symmetry { partition } => symmetry(partition, ascii, request),
        Command::VerifyAction {
            weights,
            seed,
            trials,
            max_degree,
            tol,
            force_single_block,
        } => {
            let (seed, source) = resolve_seed(*seed)?;
            let opts = VerifyOptions {
                seed,
                trials: *trials,
                max_degree: *max_degree,
                tol: *tol,
                force_single_block: *force_single_block,
            };
            let mut request = request.clone();
            request["seed"] = json!(seed);
            request["seed_source"] = json!(source);
            verify(weights, &opts, request)
        }
        Command::Partitions { n, cap } => partitions(*n, *cap, ascii, request),
    }
}

/// `--seed`, then `QSYM_SEED`, then the built-in default.
fn resolve_seed(flag: Option<u64>) -> Result<(u64, &'static str), CliError> {
    if let Some(s) = flag {
        return Ok((s, "flag"));
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|s| (s, "env"))
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok((DEFAULT_SEED, "default")),
    }
}

fn load_graph(path: &Path) -> Result<DirectedMultigraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

fn analyze(path: &Path, request: &Value) -> Result<Outcome, CliError> {
    let g = load_graph(path)?;
    let d = g.vertex_matrix();
    let has_sink = g.has_sink();
    let body = json!({
        "graph": {
            "vertices": g.num_vertices(),
            "edges": g.num_edges(),
            "edge_list": to_value(&g.edges()),
            "has_sink": has_sink,
            "is_connected": g.is_connected(),
            "is_disjoint_loops": g.is_disjoint_loops(),
        },
        "vertex_matrix": d.rows(),
        "spectral": to_value(&SpectralReport::new(&d)),
    });
    let mut out = ok(with_request(request.clone(), body));
    if has_sink {
        out.exit = EXIT_SINK;
        out.notice = Some(SINK_MESSAGE.into());
    }
    Ok(out)
}

fn kms_check(path: &Path, args: &WeightArgs, beta: &str, request: &Value) -> Result<Outcome, CliError> {
    let g = load_graph(path)?;
    let beta = Beta::parse(beta)?;
    let beta_value = beta.value();
    let w = weights::parse(args, beta)?;
    let d = g.vertex_matrix();
    let (sub, inv, positive) = match &w {
        Weights::Exact(w) => (check_subinvariance(&d, w)?, check_invariance(&d, w)?, w.is_strictly_positive()),
        Weights::Float(w) => (check_subinvariance(&d, w)?, check_invariance(&d, w)?, w.is_strictly_positive()),
    };
    let mut request = request.clone();
    request["resolved_mode"] = json!(w.mode());
    Ok(ok(with_request(
        request,
        json!({
            "beta": beta_value,
            "subinvariant": sub,
            "invariant": inv,
            "strictly_positive": positive,
        }),
    )))
}

fn classify(args: &WeightArgs, ascii: bool, request: &Value) -> Result<Outcome, CliError> {
    let w = weights::parse(args, Beta::Zero)?;
    let doc = match &w {
        Weights::Exact(w) => ClassificationDocument::new(&classify_weights(w, &BigRational::zero())?, style(ascii)),
        Weights::Float(w) => ClassificationDocument::new(&classify_weights(w, &args.eps)?, style(ascii)),
    };
    let mut request = request.clone();
    request["resolved_mode"] = json!(w.mode());
    Ok(ok(with_request(request, to_value(&doc))))
}

fn parse_partition(text: &str) -> Result<Partition, CliError> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    let blocks = trimmed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid partition part {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(blocks)?)
}

fn descriptor_value(d: &SymmetryDescriptor, ascii: bool) -> Value {
    json!({
        "partition": d.partition(),
        "symmetry": d.name(style(ascii)),
        "canonical_name": d.canonical_name(),
        "factor_count": d.factor_count(),
        "factors": to_value(&d.factors()),
    })
}

fn symmetry(text: &str, ascii: bool, request: &Value) -> Result<Outcome, CliError> {
    let p = parse_partition(text)?;
    Ok(ok(with_request(request.clone(), descriptor_value(&symmetry_descriptor(&p), ascii))))
}

fn verify(args: &WeightArgs, opts: &VerifyOptions, mut request: Value) -> Result<Outcome, CliError> {
    let w = weights::parse(args, Beta::Zero)?;
    let report = match &w {
        Weights::Exact(w) => verify_action(w, &BigRational::zero(), opts)?,
        Weights::Float(w) => verify_action(w, &args.eps, opts)?,
    };
    request["resolved_mode"] = json!(w.mode());
    let pass = report.pass;
    let mut out = ok(with_request(request, to_value(&report)));
    if !pass {
        out.exit = EXIT_VERIFY_FAILED;
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        out.notice = Some(format!("verification failed: {}", failed.join(", ")));
    }
    Ok(out)
}

fn partitions(n: usize, cap: usize, ascii: bool, request: &Value) -> Result<Outcome, CliError> {
    let count = partition_count_capped(n, cap)?;
    let list = enumerate_partitions_capped(n, cap)?;
    let entries: Vec<Value> = list.iter().map(|p| descriptor_value(&symmetry_descriptor(p), ascii)).collect();
    Ok(ok(with_request(
        request.clone(),
        json!({ "n": n, "count": count as u64, "partitions": entries }),
    )))
}
