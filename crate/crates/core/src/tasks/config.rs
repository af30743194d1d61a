//! YAML task configurations.
//!
//! Shared keys: `task`, `n_samples`, `seed`, `output_dir`, `val_prop`,
//! `test_prop`, `prop_in_distribution`, `combinations_in_distribution`.
//! Each family adds its own keys; anything else is rejected.

use serde_yaml::{Mapping, Value};

use super::logic::{parse_bool, parse_term, Term};
use super::{TaskError, TaskSpec, KAND_COLORS, KAND_SHAPES};
use crate::formula::{parse_dimacs, BoolExpr};
use crate::knowledge::{ConceptVector, LabelTerm};

const SHARED_KEYS: [&str; 8] = [
    "task",
    "n_samples",
    "seed",
    "output_dir",
    "val_prop",
    "test_prop",
    "prop_in_distribution",
    "combinations_in_distribution",
];

fn family_keys(family: &str) -> Option<&'static [&'static str]> {
    Some(match family {
        "mnlogic" => &["n_digits", "xor_rule", "use_mnist", "symbols", "logic"],
        "mnadd" => &["n_digits", "use_mnist", "symbols"],
        "mnadd-half" | "mnadd-evenodd" => &["use_mnist", "symbols"],
        "mnmath" => &["num_digits", "digit_values", "use_mnist", "symbols", "logic"],
        "kand" => &[
            "n_shapes",
            "n_figures",
            "colors",
            "shapes",
            "symbols",
            "logic",
            "aggregator_symbols",
            "aggregator_logic",
        ],
        "cle4evr" => &["n_objects", "n_values", "symbols", "logic"],
        "boia" | "boia-ood" => &[],
        "custom-cnf" => &["cnf", "label_var", "symbols"],
        _ => return None,
    })
}

/// A concept-value pattern; `None` positions match any value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern(pub Vec<Option<u32>>);

impl Pattern {
    pub fn matches(&self, c: &ConceptVector) -> bool {
        self.0.len() == c.len()
            && self
                .0
                .iter()
                .zip(c.values())
                .all(|(p, v)| p.is_none_or(|p| p == *v))
    }
}

/// A validated generator configuration.
#[derive(Debug, Clone)]
pub struct TaskConfig {
    pub spec: TaskSpec,
    /// Concept names for the dataset output; family defaults otherwise.
    pub symbols: Option<Vec<String>>,
    pub n_samples: usize,
    pub val_prop: f64,
    pub test_prop: f64,
    pub prop_in_distribution: f64,
    pub combinations_in_distribution: Option<Vec<Pattern>>,
    pub seed: u64,
    /// Where a front end should write the bundle; unused by the library.
    pub output_dir: Option<String>,
}

impl TaskConfig {
    pub fn new(spec: TaskSpec) -> Self {
        TaskConfig {
            spec,
            symbols: None,
            n_samples: 100,
            val_prop: 0.2,
            test_prop: 0.2,
            prop_in_distribution: 1.0,
            combinations_in_distribution: None,
            seed: 0,
            output_dir: None,
        }
    }

    /// Checks the numeric fields.
    pub fn validate(&self) -> Result<(), TaskError> {
        let bad = |path: &str, message: &str| {
            Err(TaskError::Config {
                path: path.into(),
                message: message.into(),
            })
        };
        for (path, v) in [("val_prop", self.val_prop), ("test_prop", self.test_prop)] {
            if !v.is_finite() || v < 0.0 {
                return bad(path, "must be a non-negative fraction");
            }
        }
        if self.val_prop + self.test_prop >= 1.0 {
            return bad("val_prop", "val_prop + test_prop must stay below 1");
        }
        let p = self.prop_in_distribution;
        if !p.is_finite() || p <= 0.0 || p > 1.0 {
            return bad("prop_in_distribution", "must lie in (0, 1]");
        }
        if self.n_samples == 0 {
            return bad("n_samples", "must be at least 1");
        }
        Ok(())
    }
}

fn cfg_err<T>(path: impl Into<String>, message: impl Into<String>) -> Result<T, TaskError> {
    Err(TaskError::Config {
        path: path.into(),
        message: message.into(),
    })
}

struct Fields<'a>(&'a Mapping);

impl Fields<'_> {
    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key).filter(|v| !v.is_null())
    }

    fn uint(&self, key: &str) -> Result<Option<u64>, TaskError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .map_or_else(|| cfg_err(key, "expected a non-negative integer"), Ok),
        }
    }

    fn float(&self, key: &str) -> Result<Option<f64>, TaskError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .map_or_else(|| cfg_err(key, "expected a number"), Ok),
        }
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>, TaskError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_bool()
                .map(Some)
                .map_or_else(|| cfg_err(key, "expected true or false"), Ok),
        }
    }

    fn string(&self, key: &str) -> Result<Option<String>, TaskError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => cfg_err(key, "expected a string"),
        }
    }

    /// A list of strings; a single string is a one-element list.
    fn strings(&self, key: &str) -> Result<Option<Vec<String>>, TaskError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(vec![s.clone()])),
            Some(Value::Sequence(items)) => items
                .iter()
                .enumerate()
                .map(|(i, v)| match v {
                    Value::String(s) => Ok(s.clone()),
                    _ => cfg_err(format!("{key}[{i}]"), "expected a string"),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(_) => cfg_err(key, "expected a string or a list of strings"),
        }
    }

    fn uints(&self, key: &str) -> Result<Option<Vec<u32>>, TaskError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Sequence(items)) => items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.as_u64().and_then(|x| u32::try_from(x).ok()).map_or_else(
                        || cfg_err(format!("{key}[{i}]"), "expected a non-negative integer"),
                        Ok,
                    )
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(_) => cfg_err(key, "expected a list of integers"),
        }
    }
}

fn single_logic(f: &Fields, key: &str) -> Result<Option<String>, TaskError> {
    match f.strings(key)? {
        None => Ok(None),
        Some(mut v) if v.len() == 1 => Ok(v.pop()),
        Some(_) => cfg_err(key, "expected a single formula"),
    }
}

fn boolean_formula(text: &str, symbols: &[String], path: &str) -> Result<BoolExpr, TaskError> {
    parse_bool(text, symbols).or_else(|e| cfg_err(path, format!("malformed formula: {e}")))
}

fn symbols_or(f: &Fields, n: usize, default: impl Fn(usize) -> String) -> Result<Vec<String>, TaskError> {
    match f.strings("symbols")? {
        None => Ok((0..n).map(default).collect()),
        Some(s) if s.len() == n => Ok(s),
        Some(s) => cfg_err("symbols", format!("expected {n} symbols, got {}", s.len())),
    }
}

fn name_subset(f: &Fields, key: &str, known: &[&str]) -> Result<Vec<String>, TaskError> {
    match f.strings(key)? {
        None => Ok(known.iter().map(|s| s.to_string()).collect()),
        Some(list) => {
            for (i, s) in list.iter().enumerate() {
                if !known.contains(&s.as_str()) {
                    return cfg_err(format!("{key}[{i}]"), format!("`{s}` is not one of {known:?}"));
                }
                if list[..i].contains(s) {
                    return cfg_err(format!("{key}[{i}]"), format!("`{s}` is listed twice"));
                }
            }
            Ok(list)
        }
    }
}

fn build_spec(family: &str, f: &Fields) -> Result<(TaskSpec, Option<Vec<String>>), TaskError> {
    let c_default = |i: usize| format!("c{}", i + 1);
    Ok(match family {
        "mnlogic" => {
            let given = f.strings("symbols")?;
            let k = match (f.uint("n_digits")?, &given) {
                (Some(k), _) => k as usize,
                (None, Some(s)) => s.len(),
                (None, None) => 3,
            };
            if k == 0 {
                return cfg_err("n_digits", "must be at least 1");
            }
            let symbols = symbols_or(f, k, c_default)?;
            let logic = single_logic(f, "logic")?;
            let formula = match (f.boolean("xor_rule")?, logic) {
                (Some(true), Some(_)) => {
                    return cfg_err("xor_rule", "xor_rule and logic are mutually exclusive")
                }
                (Some(false), None) => return cfg_err("logic", "required when xor_rule is false"),
                (_, Some(text)) => Some(boolean_formula(&text, &symbols, "logic")?),
                (_, None) => None,
            };
            (TaskSpec::MnLogic { k, formula }, Some(symbols))
        }
        "mnadd" => {
            let digits = f.uint("n_digits")?.unwrap_or(2) as usize;
            let symbols = f.strings("symbols")?;
            (TaskSpec::MnAdd { digits, b: 10 }, symbols)
        }
        "mnadd-half" => (TaskSpec::MnAddHalf, f.strings("symbols")?),
        "mnadd-evenodd" => (TaskSpec::MnAddEvenOdd, f.strings("symbols")?),
        "mnmath" => {
            let given = f.strings("symbols")?;
            let n = match (f.uint("num_digits")?, &given) {
                (Some(n), _) => n as usize,
                (None, Some(s)) => s.len(),
                (None, None) => 4,
            };
            let symbols = symbols_or(f, n, c_default)?;
            let digit_values = f.uints("digit_values")?.unwrap_or_else(|| (0..10).collect());
            let Some(texts) = f.strings("logic")? else {
                return cfg_err("logic", "required for mnmath");
            };
            let mut equations = Vec::new();
            for (i, t) in texts.iter().enumerate() {
                let path = format!("logic[{i}]");
                match parse_term(t, &symbols) {
                    Ok(Term::Int(e)) => equations.push(LabelTerm::Int(e)),
                    Ok(Term::Bool(e)) => equations.push(LabelTerm::Bool(e)),
                    Err(e) => return cfg_err(path, format!("malformed formula: {e}")),
                }
            }
            (
                TaskSpec::MnMath {
                    num_digits: n,
                    digit_values,
                    equations,
                },
                Some(symbols),
            )
        }
        "kand" => {
            let primitives = f.uint("n_shapes")?.unwrap_or(3) as usize;
            let figures = f.uint("n_figures")?.unwrap_or(2) as usize;
            let colors = name_subset(f, "colors", &KAND_COLORS)?;
            let shapes = name_subset(f, "shapes", &KAND_SHAPES)?;
            let symbols = symbols_or(f, 2 * primitives, |i| {
                if i % 2 == 0 {
                    format!("shape_{}", i / 2 + 1)
                } else {
                    format!("color_{}", i / 2 + 1)
                }
            })?;
            let figure_logic = single_logic(f, "logic")?
                .map(|t| boolean_formula(&t, &symbols, "logic"))
                .transpose()?;
            let agg_symbols = match f.strings("aggregator_symbols")? {
                None => (1..=figures).map(|i| format!("pattern_{i}")).collect(),
                Some(s) if s.len() == figures => s,
                Some(s) => {
                    return cfg_err(
                        "aggregator_symbols",
                        format!("expected {figures} symbols, got {}", s.len()),
                    )
                }
            };
            let aggregator = single_logic(f, "aggregator_logic")?
                .map(|t| boolean_formula(&t, &agg_symbols, "aggregator_logic"))
                .transpose()?;
            if figure_logic.is_none() && aggregator.is_some() {
                return cfg_err("aggregator_logic", "needs a per-figure `logic`");
            }
            (
                TaskSpec::Kand {
                    figures,
                    primitives,
                    shapes,
                    colors,
                    figure_logic,
                    aggregator,
                },
                None,
            )
        }
        "cle4evr" => {
            let objects = f.uint("n_objects")?.unwrap_or(2) as usize;
            let values = f.uint("n_values")?.unwrap_or(3) as u32;
            let symbols = symbols_or(f, 2 * objects, |i| {
                if i % 2 == 0 {
                    format!("color_{}", i / 2 + 1)
                } else {
                    format!("shape_{}", i / 2 + 1)
                }
            })?;
            let logic = single_logic(f, "logic")?
                .map(|t| boolean_formula(&t, &symbols, "logic"))
                .transpose()?;
            (
                TaskSpec::Cle4evr {
                    objects,
                    values,
                    logic,
                },
                Some(symbols),
            )
        }
        "boia" => (TaskSpec::Boia, None),
        "boia-ood" => (TaskSpec::BoiaOodEmergency, None),
        "custom-cnf" => {
            let Some(text) = f.string("cnf")? else {
                return cfg_err("cnf", "required for custom-cnf");
            };
            let cnf = parse_dimacs(&text)
                .or_else(|e| cfg_err("cnf", format!("malformed DIMACS: {e}")))?
                .formula;
            let label_var = f
                .uint("label_var")?
                .map(|v| u32::try_from(v).or_else(|_| cfg_err("label_var", "too large")))
                .transpose()?;
            (TaskSpec::CustomCnf { cnf, label_var }, f.strings("symbols")?)
        }
        _ => unreachable!("family checked by the caller"),
    })
}

fn pattern_tokens(v: &Value, path: &str) -> Result<Vec<String>, TaskError> {
    let split = |s: &str| -> Vec<String> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect()
    };
    match v {
        Value::String(s) => Ok(split(s)),
        Value::Number(n) => Ok(vec![n.to_string()]),
        Value::Sequence(items) => {
            let mut out = Vec::new();
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::String(s) => out.extend(split(s)),
                    Value::Number(n) => out.push(n.to_string()),
                    _ => return cfg_err(format!("{path}[{i}]"), "expected a value or a string"),
                }
            }
            Ok(out)
        }
        _ => cfg_err(path, "expected a pattern string or list"),
    }
}

/// Resolves one `combinations_in_distribution` entry to a pattern of
/// length `k`. Compact digit strings ("0101", "0*3") spread one value per
/// character. Kand entries may name a primitive's color and shape in
/// either order.
fn parse_pattern(
    v: &Value,
    path: &str,
    k: usize,
    b: u32,
    names: Option<&[Vec<String>]>,
) -> Result<Pattern, TaskError> {
    let mut tokens = pattern_tokens(v, path)?;
    if tokens.len() == 1 && k > 1 && tokens[0].chars().count() == k {
        tokens = tokens[0].chars().map(String::from).collect();
    }
    if tokens.len() != k {
        return cfg_err(path, format!("pattern has {} values, expected {k}", tokens.len()));
    }
    if let Some(names) = names {
        // a primitive given as "color, shape"
        for p in (0..k).step_by(2) {
            let is = |slot: usize, t: &str| names[slot].iter().any(|n| n == t);
            if p + 1 < k && !is(p, &tokens[p]) && is(p, &tokens[p + 1]) && is(p + 1, &tokens[p]) {
                tokens.swap(p, p + 1);
            }
        }
    }
    let mut out = Vec::with_capacity(k);
    for (slot, t) in tokens.iter().enumerate() {
        if t == "*" {
            out.push(None);
            continue;
        }
        let value = match t.parse::<u32>() {
            Ok(v) => v,
            Err(_) => match names.and_then(|n| n[slot].iter().position(|x| x == t)) {
                Some(i) => i as u32,
                None => match t.as_str() {
                    "true" | "True" if b == 2 => 1,
                    "false" | "False" if b == 2 => 0,
                    _ => return cfg_err(path, format!("unknown value `{t}` at position {slot}")),
                },
            },
        };
        if value >= b {
            return cfg_err(
                path,
                format!("value {value} at position {slot} is outside 0..{b}"),
            );
        }
        out.push(Some(value));
    }
    Ok(Pattern(out))
}

/// Parses and validates a YAML task configuration, including the check
/// that the labels vary over the in-distribution combinations.
pub fn parse_config(text: &str) -> Result<TaskConfig, TaskError> {
    let doc: Value = serde_yaml::from_str(text).or_else(|e| cfg_err("<document>", e.to_string()))?;
    let Value::Mapping(map) = &doc else {
        return cfg_err("<document>", "expected a mapping of keys");
    };
    for key in map.keys() {
        if !key.is_string() {
            return cfg_err("<document>", format!("non-string key {key:?}"));
        }
    }
    let f = Fields(map);
    let Some(family) = f.string("task")? else {
        return cfg_err("task", "missing required field");
    };
    let Some(extra) = family_keys(&family) else {
        return cfg_err("task", format!("unknown task family `{family}`"));
    };
    for key in map.keys().filter_map(Value::as_str) {
        if !SHARED_KEYS.contains(&key) && !extra.contains(&key) {
            return cfg_err(key, format!("unknown key for task `{family}`"));
        }
    }
    let (spec, symbols) = build_spec(&family, &f)?;
    let task = super::builtin_task(&spec).or_else(|e| cfg_err("task", e.to_string()))?;
    let space = task.space();
    if let Some(s) = &symbols {
        if s.len() != space.k() {
            return cfg_err(
                "symbols",
                format!("expected {} symbols, got {}", space.k(), s.len()),
            );
        }
    }
    let mut cfg = TaskConfig::new(spec);
    cfg.symbols = symbols;
    if let Some(n) = f.uint("n_samples")? {
        cfg.n_samples = n as usize;
    }
    if let Some(s) = f.uint("seed")? {
        cfg.seed = s;
    }
    if let Some(v) = f.float("val_prop")? {
        cfg.val_prop = v;
    }
    if let Some(v) = f.float("test_prop")? {
        cfg.test_prop = v;
    }
    if let Some(v) = f.float("prop_in_distribution")? {
        cfg.prop_in_distribution = v;
    }
    cfg.output_dir = f.string("output_dir")?;
    let _ = f.boolean("use_mnist")?;
    if let Some(v) = f.get("combinations_in_distribution") {
        let Value::Sequence(items) = v else {
            return cfg_err("combinations_in_distribution", "expected a list of patterns");
        };
        let names = cfg.spec.value_names();
        let patterns = items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                parse_pattern(
                    item,
                    &format!("combinations_in_distribution[{i}]"),
                    space.k(),
                    space.b(),
                    names.as_deref(),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        cfg.combinations_in_distribution = Some(patterns);
    }
    cfg.validate()?;
    super::generate::plan(&cfg)?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_error(text: &str) -> (String, String) {
        match parse_config(text) {
            Err(TaskError::Config { path, message }) => (path, message),
            other => panic!("expected a configuration error, got {other:?}"),
        }
    }

    #[test]
    fn mnlogic_example() {
        let cfg = parse_config(
            "task: mnlogic\nsymbols: [a, b, c]\nlogic: Or(And(a, b), Not(c))\nn_digits: 3\nval_prop: 0.2\ntest_prop: 0.2\n",
        )
        .unwrap();
        let TaskSpec::MnLogic { k, formula } = &cfg.spec else {
            panic!("wrong family")
        };
        assert_eq!(*k, 3);
        let expected = BoolExpr::Or(vec![
            BoolExpr::And(vec![BoolExpr::Atom(1), BoolExpr::Atom(2)]),
            BoolExpr::not(BoolExpr::Atom(3)),
        ]);
        assert_eq!(formula.as_ref(), Some(&expected));
        assert_eq!(cfg.n_samples, 100);
    }

    #[test]
    fn mnmath_equation_list() {
        let cfg =
            parse_config("task: mnmath\nnum_digits: 2\nsymbols: [a, b]\nlogic: [2*a + b, a + b]\n").unwrap();
        let task = crate::tasks::builtin_task(&cfg.spec).unwrap();
        let y = task.knowledge.label_of(&ConceptVector::new(vec![3, 1])).unwrap();
        assert_eq!(y.values(), &[7, 4]);
        let cfg = parse_config("task: mnmath\nnum_digits: 4\nlogic: Eq(c1 + c2, c3 + c4)\n").unwrap();
        assert!(
            matches!(&cfg.spec, TaskSpec::MnMath { equations, .. } if matches!(equations[0], LabelTerm::Bool(_)))
        );
    }

    #[test]
    fn tautology_is_degenerate() {
        let (path, message) = config_error("task: mnlogic\nn_digits: 2\nlogic: Or(c1, Not(c1))\n");
        assert_eq!(path, "logic");
        assert!(message.contains("either all false or all true"), "{message}");
    }

    #[test]
    fn unknown_and_misplaced_keys() {
        assert_eq!(config_error("task: mnlogic\ncolour: red\n").0, "colour");
        assert_eq!(config_error("task: mnlogic\ncolors: [red]\n").0, "colors");
        assert_eq!(config_error("n_samples: 3\n").0, "task");
        assert_eq!(config_error("task: chess\n").0, "task");
        assert_eq!(config_error("task: mnlogic\nn_samples: many\n").0, "n_samples");
    }

    #[test]
    fn malformed_formula_reports_its_key() {
        let (path, message) = config_error("task: mnlogic\nsymbols: [a, b]\nlogic: And(a, q)\n");
        assert_eq!(path, "logic");
        assert!(message.contains("unknown symbol"));
        assert_eq!(
            config_error("task: mnmath\nnum_digits: 2\nlogic: [c1 +]\n").0,
            "logic[0]"
        );
    }

    #[test]
    fn fraction_validation() {
        assert_eq!(
            config_error("task: mnlogic\nval_prop: 0.5\ntest_prop: 0.5\n").0,
            "val_prop"
        );
        assert_eq!(
            config_error("task: mnlogic\nprop_in_distribution: 0\n").0,
            "prop_in_distribution"
        );
        assert_eq!(config_error("task: mnlogic\ntest_prop: -0.1\n").0, "test_prop");
    }

    #[test]
    fn combination_patterns() {
        let cfg = parse_config(
            "task: mnlogic\nn_digits: 4\ncombinations_in_distribution: [\"0101\", \"1*00\", [1, 1, 1, 1]]\nprop_in_distribution: 0.8\n",
        )
        .unwrap();
        let p = cfg.combinations_in_distribution.unwrap();
        assert_eq!(p[0].0, vec![Some(0), Some(1), Some(0), Some(1)]);
        assert_eq!(p[1].0, vec![Some(1), None, Some(0), Some(0)]);
        assert!(p[1].matches(&ConceptVector::new(vec![1, 1, 0, 0])));
        assert!(!p[1].matches(&ConceptVector::new(vec![0, 1, 0, 0])));
        assert_eq!(p[2].0, vec![Some(1); 4]);
        let (path, _) = config_error("task: mnlogic\nn_digits: 3\ncombinations_in_distribution: [\"01\"]\n");
        assert_eq!(path, "combinations_in_distribution[0]");
        let (path, _) = config_error("task: mnlogic\nn_digits: 2\ncombinations_in_distribution: [\"02\"]\n");
        assert_eq!(path, "combinations_in_distribution[0]");
    }

    #[test]
    fn kand_named_patterns() {
        let cfg = parse_config(
            "task: kand\nn_figures: 2\nn_shapes: 2\ncombinations_in_distribution:\n  - [\"red, square\", \"circle, blue\", \"*\", \"*\", \"*\", \"*\"]\n",
        )
        .unwrap();
        let p = &cfg.combinations_in_distribution.unwrap()[0];
        // shape, color per primitive
        assert_eq!(
            p.0,
            vec![Some(0), Some(0), Some(1), Some(2), None, None, None, None]
        );
        let (path, _) = config_error("task: kand\ncolors: [red, green, blue]\n");
        assert_eq!(path, "colors[1]");
    }

    #[test]
    fn kand_custom_logic_and_aggregator() {
        let cfg = parse_config(
            "task: kand\nn_figures: 2\nn_shapes: 2\nsymbols: [s1, c1, s2, c2]\nlogic: Eq(c1, c2)\naggregator_symbols: [p, q]\naggregator_logic: p | q\n",
        )
        .unwrap();
        assert!(matches!(
            cfg.spec,
            TaskSpec::Kand {
                figure_logic: Some(_),
                aggregator: Some(_),
                ..
            }
        ));
        assert_eq!(
            config_error("task: kand\naggregator_logic: pattern_1\n").0,
            "aggregator_logic"
        );
    }

    #[test]
    fn custom_cnf_config() {
        let cfg = parse_config("task: custom-cnf\ncnf: |\n  p cnf 2 1\n  1 2 0\n").unwrap();
        assert!(matches!(cfg.spec, TaskSpec::CustomCnf { label_var: None, .. }));
        assert_eq!(config_error("task: custom-cnf\ncnf: \"p cnf x\"\n").0, "cnf");
    }
}
