use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};
use shortcount::alphamap::{
    count_by_enumeration, count_closed_form, is_rs_affected, StructureMode, DEFAULT_ALPHA_CAP,
};
use shortcount::counter::{count_models, CounterConfig};
use shortcount::encode::{build_counting_cnf, export_problem};
use shortcount::formula::parse_dimacs;
use shortcount::knowledge::{exhaustive_support, ConceptVector, Knowledge, Support, DEFAULT_ENUMERATION_CAP};
use shortcount::metrics::{evaluate, parse_predictions, Metric};
use shortcount::tasks::{
    builtin_task, export_knowledge_dimacs, generate_dataset, parse_config, BuiltinTask, Manifest, TaskSpec,
};

use crate::error::{CliError, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Enumerate,
    EncodeCount,
    ClosedForm,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Enumerate => "enumerate",
            Method::EncodeCount => "encode-count",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// Where the task knowledge comes from.
pub enum Source {
    Builtin(String),
    Knowledge { path: PathBuf, label_var: Option<u32> },
}

pub struct TaskArgs {
    pub source: Source,
    pub support: String,
    pub cap: u64,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn load_task(source: &Source) -> Result<(String, BuiltinTask), CliError> {
    match source {
        Source::Builtin(name) => {
            let spec = TaskSpec::from_name(name).map_err(|e| CliError::usage(e.to_string()))?;
            Ok((name.clone(), builtin_task(&spec)?))
        }
        Source::Knowledge { path, label_var } => {
            let cnf = parse_dimacs(&read(path)?)?.formula;
            let spec = TaskSpec::CustomCnf {
                cnf,
                label_var: *label_var,
            };
            Ok((path.display().to_string(), builtin_task(&spec)?))
        }
    }
}

fn parse_vectors(text: &str, k: &Knowledge) -> Result<Vec<ConceptVector>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split(';') {
            let values: Vec<&str> = item
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect();
            if values.is_empty() {
                continue;
            }
            let bad = |m: String| CliError {
                line: Some(i + 1),
                ..CliError::new(Kind::Input, format!("support line {}: {m}", i + 1))
            };
            let v = values
                .iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| bad(format!("`{t}` is not a concept value")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let c = ConceptVector::new(v);
            if !k.space().contains(&c) {
                return Err(bad(format!(
                    "{c} is outside k = {}, b = {}",
                    k.space().k(),
                    k.space().b()
                )));
            }
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(CliError::new(Kind::Input, "support lists no concept vector"));
    }
    Ok(out)
}

/// `exhaustive`, `default`, `@file`, or inline vectors like `0,0,0;1,1,1`.
fn load_support(task: &BuiltinTask, spec: &str, cap: u64) -> Result<Support, CliError> {
    let k = &task.knowledge;
    match spec {
        "exhaustive" => Ok(exhaustive_support(k, cap)?),
        "default" => Ok(task.support(cap)?),
        s if s.starts_with('@') => {
            let path = Path::new(&s[1..]);
            Ok(Support::new(k, parse_vectors(&read(path)?, k)?)?)
        }
        s => Ok(Support::new(k, parse_vectors(s, k)?)?),
    }
}

fn resolve_mode(method: Method, mode: Option<StructureMode>) -> Result<StructureMode, CliError> {
    match (method, mode) {
        (Method::ClosedForm, None) => Ok(StructureMode::Unrestricted),
        (_, None) => Ok(StructureMode::Permutation),
        (Method::ClosedForm, Some(StructureMode::Unrestricted)) => Ok(StructureMode::Unrestricted),
        (Method::ClosedForm, Some(m)) => Err(CliError::usage(format!(
            "closed-form counts only apply to unrestricted mode, not {m}"
        ))),
        (Method::EncodeCount, Some(StructureMode::Unrestricted)) => {
            Err(CliError::usage("encode-count needs complete or permutation mode"))
        }
        (_, Some(m)) => Ok(m),
    }
}

pub struct CountArgs {
    pub task: Option<TaskArgs>,
    pub models: bool,
    pub mode: Option<StructureMode>,
    pub method: Method,
    pub decision_cap: Option<u64>,
}

pub fn run_count(args: &CountArgs) -> Result<Value, CliError> {
    let counter = CounterConfig {
        decision_cap: args.decision_cap,
        ..CounterConfig::default()
    };
    let Some(t) = &args.task else {
        return Err(CliError::usage("count needs --task or --cnf"));
    };
    if let (true, Source::Knowledge { path, .. }) = (args.models, &t.source) {
        let start = Instant::now();
        let file = parse_dimacs(&read(path)?)?;
        let n = count_models(&file.formula, &counter)?;
        return Ok(json!({
            "count": n.value.to_string(),
            "method": "model-count",
            "cnf": path.display().to_string(),
            "num_vars": file.formula.num_vars(),
            "num_clauses": file.formula.clauses().len(),
            "projection_size": file.projection().map(|p| p.len()),
            "counter": n.stats,
            "wall_time_ms": elapsed_ms(start),
        }));
    }
    let mode = resolve_mode(args.method, args.mode)?;
    let (name, task) = load_task(&t.source)?;
    let supp = load_support(&task, &t.support, t.cap)?;
    let k = &task.knowledge;
    let start = Instant::now();
    let mut stats = None;
    let count = match args.method {
        Method::Enumerate => count_by_enumeration(k, &supp, mode, DEFAULT_ALPHA_CAP.max(t.cap))?,
        Method::ClosedForm => count_closed_form(k, &supp, t.cap)?,
        Method::EncodeCount => {
            let p = build_counting_cnf(k, &supp, mode)?;
            let n = count_models(&p.cnf, &counter)?;
            stats = Some(n.stats);
            n.value
        }
    };
    let mut report = json!({
        "count": count.to_string(),
        "rs_affected": is_rs_affected(&count),
        "method": args.method.as_str(),
        "mode": mode.as_str(),
        "task": name,
        "k": k.space().k(),
        "b": k.space().b(),
        "support_size": supp.len(),
        "wall_time_ms": elapsed_ms(start),
    });
    if let Some(s) = stats {
        report["counter"] = json!(s);
    }
    Ok(report)
}

fn range(r: (u32, u32)) -> Value {
    if r.0 > r.1 {
        Value::Null
    } else {
        json!([r.0, r.1])
    }
}

pub fn run_encode(t: &TaskArgs, mode: StructureMode, out: &Path) -> Result<Value, CliError> {
    let (name, task) = load_task(&t.source)?;
    let supp = load_support(&task, &t.support, t.cap)?;
    let p = build_counting_cnf(&task.knowledge, &supp, mode)?;
    let text = export_problem(&p);
    write(out, &text)?;
    Ok(json!({
        "out": out.display().to_string(),
        "task": name,
        "mode": mode.as_str(),
        "k": p.book.k(),
        "b": p.book.b(),
        "support_size": supp.len(),
        "num_vars": p.cnf.num_vars(),
        "num_clauses": p.cnf.clauses().len(),
        "projection_size": p.projection.len(),
        "ranges": {
            "o": range(p.book.o_range()),
            "a": range(p.book.a_range()),
            "chat": range(p.book.chat_range()),
            "aux": range(p.book.aux_range()),
        },
    }))
}

pub fn run_gen(config: &Path, out: Option<&Path>, seed: Option<u64>) -> Result<Value, CliError> {
    let text = read(config)?;
    let mut cfg = parse_config(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let dir = match (out, &cfg.output_dir) {
        (Some(d), _) => d.to_path_buf(),
        (None, Some(d)) => config.parent().unwrap_or(Path::new(".")).join(d),
        (None, None) => return Err(CliError::usage("gen needs --out or `output_dir` in the config")),
    };
    let ds = generate_dataset(&cfg)?;
    let json_text = ds.to_json();
    let knowledge = export_knowledge_dimacs(&ds.knowledge).ok();
    let manifest = Manifest::new(&text, &ds, &json_text, knowledge.as_deref());
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut files = vec!["dataset.json"];
    write(&dir.join("dataset.json"), &json_text)?;
    if let Some(k) = &knowledge {
        write(&dir.join("knowledge.cnf"), k)?;
        files.push("knowledge.cnf");
    }
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write(&dir.join("manifest.json"), &manifest_text)?;
    files.push("manifest.json");
    Ok(json!({
        "out_dir": dir.display().to_string(),
        "files": files,
        "task": ds.task,
        "seed": ds.seed,
        "splits": manifest.splits,
        "records": manifest.records,
        "dataset_sha256": manifest.dataset_sha256,
        "config_sha256": manifest.config_sha256,
    }))
}

pub fn run_eval(
    predictions: &Path,
    metrics: &[Metric],
    positions: Option<&[usize]>,
) -> Result<Value, CliError> {
    let records = parse_predictions(&read(predictions)?)?;
    let report = evaluate(&records, metrics, positions)?;
    Ok(serde_json::to_value(report).expect("report serializes"))
}

pub const DEFAULT_CAP: u64 = DEFAULT_ENUMERATION_CAP;
