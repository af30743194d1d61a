//! Builtin task families, YAML task configurations and symbolic dataset
//! generation.
//!
//! Every family is realized at the concept level: a task is a concept
//! space, a deterministic knowledge map and a default training support.

mod boia;
mod config;
mod export;
mod generate;
pub mod logic;

use thiserror::Error;

use crate::formula::{BoolExpr, CnfFormula, FormulaError, IntExpr};
use crate::knowledge::{
    ConceptSpace, ConceptVector, Knowledge, KnowledgeError, LabelTerm, Support, DEFAULT_DETERMINISM_BITS,
};

pub use boia::{BOIA_ACTIONS, BOIA_CONCEPTS};
pub use config::{parse_config, Pattern, TaskConfig};
pub use export::export_knowledge_dimacs;
pub use generate::{generate_dataset, Dataset, DatasetRecord, Manifest, Split, SplitCounts};

/// Default bound on materialized default supports.
pub const DEFAULT_SUPPORT_CAP: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum TaskError {
    #[error("invalid task parameters: {0}")]
    Invalid(String),
    #[error("configuration error at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error("generation error: {0}")]
    Generation(String),
    #[error(transparent)]
    Knowledge(#[from] KnowledgeError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, TaskError> {
    Err(TaskError::Invalid(msg.into()))
}

/// A task family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaskSpec {
    /// `k` binary concepts, `y = φ(c)`; XOR when `formula` is `None`.
    MnLogic {
        k: usize,
        formula: Option<BoolExpr>,
    },
    /// `y = c1 + ... + c_digits` over digits `0..b`.
    MnAdd {
        digits: usize,
        b: u32,
    },
    /// Two-digit addition trained on digits 0 to 4 only.
    MnAddHalf,
    /// Two-digit addition trained on all-even or all-odd pairs only.
    MnAddEvenOdd,
    /// A system of equations over decimal digits. Each equation is either
    /// an integer term (raw result) or a boolean indicator.
    MnMath {
        num_digits: usize,
        digit_values: Vec<u32>,
        equations: Vec<LabelTerm>,
    },
    /// Figures of primitives, each primitive a (shape, color) pair.
    /// `figure_logic` is written over one figure's concepts and
    /// `aggregator` over atoms `1..=figures` standing for the per-figure
    /// results; both `None` selects the default pattern.
    Kand {
        figures: usize,
        primitives: usize,
        shapes: Vec<String>,
        colors: Vec<String>,
        figure_logic: Option<BoolExpr>,
        aggregator: Option<BoolExpr>,
    },
    /// Objects with (color, shape) attributes over `values` values; the
    /// default label is "two objects share color and shape".
    Cle4evr {
        objects: usize,
        values: u32,
        logic: Option<BoolExpr>,
    },
    Boia,
    /// BOIA plus an `emergency` concept relaxing the red-light and
    /// solid-line rules.
    BoiaOodEmergency,
    /// Knowledge read from CNF. Without `label_var` the formula itself is
    /// the label; otherwise that variable is the label of a relation over
    /// the remaining variables.
    CustomCnf {
        cnf: CnfFormula,
        label_var: Option<u32>,
    },
}

pub const KAND_SHAPES: [&str; 3] = ["square", "circle", "triangle"];
pub const KAND_COLORS: [&str; 3] = ["red", "yellow", "blue"];

impl TaskSpec {
    pub fn family(&self) -> &'static str {
        match self {
            TaskSpec::MnLogic { .. } => "mnlogic",
            TaskSpec::MnAdd { .. } => "mnadd",
            TaskSpec::MnAddHalf => "mnadd-half",
            TaskSpec::MnAddEvenOdd => "mnadd-evenodd",
            TaskSpec::MnMath { .. } => "mnmath",
            TaskSpec::Kand { .. } => "kand",
            TaskSpec::Cle4evr { .. } => "cle4evr",
            TaskSpec::Boia => "boia",
            TaskSpec::BoiaOodEmergency => "boia-ood",
            TaskSpec::CustomCnf { .. } => "custom-cnf",
        }
    }

    pub fn kand_default() -> Self {
        TaskSpec::Kand {
            figures: 2,
            primitives: 3,
            shapes: KAND_SHAPES.iter().map(|s| s.to_string()).collect(),
            colors: KAND_COLORS.iter().map(|s| s.to_string()).collect(),
            figure_logic: None,
            aggregator: None,
        }
    }

    pub fn mnmath_default() -> Self {
        let c = IntExpr::Concept;
        TaskSpec::MnMath {
            num_digits: 4,
            digit_values: (0..10).collect(),
            equations: vec![
                LabelTerm::Int(IntExpr::Add(vec![
                    IntExpr::Mul(vec![IntExpr::Const(2), c(0)]),
                    c(1),
                ])),
                LabelTerm::Int(IntExpr::Add(vec![c(2), c(3)])),
            ],
        }
    }

    /// Resolves a builtin task name.
    ///
    /// Names: `xor-K`, `and-K`, `or-K` (MNLogic gates over K bits),
    /// `mnlogic`, `mnadd`, `mnadd-half`, `mnadd-evenodd`, `mnmath`, `kand`,
    /// `cle4evr`, `boia`, `boia-ood`. Numeric parameters follow a colon,
    /// e.g. `mnadd:digits=1,b=4` or `kand:figures=1,primitives=2`.
    pub fn from_name(name: &str) -> Result<TaskSpec, TaskError> {
        let (base, params) = match name.split_once(':') {
            Some((b, p)) => (b, p),
            None => (name, ""),
        };
        let mut kv = Vec::new();
        for item in params.split(',').filter(|s| !s.is_empty()) {
            let Some((key, value)) = item.split_once('=') else {
                return invalid(format!("parameter `{item}` is not key=value"));
            };
            let Ok(value) = value.trim().parse::<u64>() else {
                return invalid(format!("parameter `{key}` must be a non-negative integer"));
            };
            kv.push((key.trim().to_string(), value));
        }
        let mut used = vec![false; kv.len()];
        let mut get = |key: &str, default: u64| -> u64 {
            match kv.iter().position(|(k, _)| k == key) {
                Some(i) => {
                    used[i] = true;
                    kv[i].1
                }
                None => default,
            }
        };
        let spec = match base {
            "mnlogic" => TaskSpec::MnLogic {
                k: get("k", 3) as usize,
                formula: None,
            },
            "mnadd" => TaskSpec::MnAdd {
                digits: get("digits", 2) as usize,
                b: get("b", 10) as u32,
            },
            "mnadd-half" => TaskSpec::MnAddHalf,
            "mnadd-evenodd" => TaskSpec::MnAddEvenOdd,
            "mnmath" => TaskSpec::mnmath_default(),
            "kand" => {
                let TaskSpec::Kand { shapes, colors, .. } = TaskSpec::kand_default() else {
                    unreachable!()
                };
                TaskSpec::Kand {
                    figures: get("figures", 2) as usize,
                    primitives: get("primitives", 3) as usize,
                    shapes,
                    colors,
                    figure_logic: None,
                    aggregator: None,
                }
            }
            "cle4evr" => TaskSpec::Cle4evr {
                objects: get("objects", 2) as usize,
                values: get("values", 3) as u32,
                logic: None,
            },
            "boia" => TaskSpec::Boia,
            "boia-ood" => TaskSpec::BoiaOodEmergency,
            other => match gate_name(other) {
                Some((g @ ("xor" | "and" | "or"), k)) if k >= 1 => {
                    let atoms: Vec<BoolExpr> = (1..=k as u32).map(BoolExpr::Atom).collect();
                    let formula = match g {
                        "xor" => BoolExpr::Xor(atoms),
                        "and" => BoolExpr::And(atoms),
                        _ => BoolExpr::Or(atoms),
                    };
                    TaskSpec::MnLogic {
                        k,
                        formula: Some(formula),
                    }
                }
                _ => return invalid(format!("unknown task `{name}`")),
            },
        };
        if let Some(i) = used.iter().position(|u| !u) {
            return invalid(format!("task `{base}` has no parameter `{}`", kv[i].0));
        }
        Ok(spec)
    }

    /// Names of the values of each concept, where the family has them.
    pub fn value_names(&self) -> Option<Vec<Vec<String>>> {
        match self {
            TaskSpec::Kand {
                figures,
                primitives,
                shapes,
                colors,
                ..
            } => Some(
                (0..figures * primitives)
                    .flat_map(|_| [shapes.clone(), colors.clone()])
                    .collect(),
            ),
            _ => None,
        }
    }
}

fn gate_name(base: &str) -> Option<(&str, usize)> {
    let (g, n) = base.split_once('-')?;
    Some((g, n.parse().ok()?))
}

/// Rule selecting the default training support of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportRule {
    /// Every concept vector.
    Exhaustive,
    /// Concept vectors satisfying a constraint over concept values.
    Constraint(BoolExpr),
    /// An explicit list, in order.
    Explicit(Vec<ConceptVector>),
}

impl SupportRule {
    pub fn allows(&self, c: &ConceptVector) -> bool {
        match self {
            SupportRule::Exhaustive => true,
            SupportRule::Constraint(e) => e.eval(c).unwrap_or(false),
            SupportRule::Explicit(list) => list.contains(c),
        }
    }

    /// Lexicographic indices of the allowed vectors.
    pub fn candidates(&self, space: ConceptSpace, cap: u64) -> Result<Vec<u64>, KnowledgeError> {
        match self {
            SupportRule::Explicit(list) => {
                let mut idx: Vec<u64> = list.iter().map(|c| space.index_of(c)).collect();
                idx.sort_unstable();
                Ok(idx)
            }
            _ => {
                let n = space.size_within(cap, "support enumeration")?;
                Ok((0..n).filter(|&i| self.allows(&space.vector_at(i))).collect())
            }
        }
    }

    pub fn materialize(&self, k: &Knowledge, cap: u64) -> Result<Support, KnowledgeError> {
        let space = k.space();
        let vectors = match self {
            SupportRule::Explicit(list) => list.clone(),
            _ => self
                .candidates(space, cap)?
                .into_iter()
                .map(|i| space.vector_at(i))
                .collect(),
        };
        if vectors.len() as u64 > cap {
            return Err(KnowledgeError::Capacity {
                what: "default support".into(),
                needed: vectors.len().to_string(),
                cap,
            });
        }
        Support::new(k, vectors)
    }
}

/// A builtin task: knowledge plus its canonical training restriction.
#[derive(Debug, Clone)]
pub struct BuiltinTask {
    pub spec: TaskSpec,
    pub knowledge: Knowledge,
    pub default_support: SupportRule,
}

impl BuiltinTask {
    pub fn space(&self) -> ConceptSpace {
        self.knowledge.space()
    }

    pub fn support(&self, cap: u64) -> Result<Support, KnowledgeError> {
        self.default_support.materialize(&self.knowledge, cap)
    }
}

fn in_values(concept: usize, values: &[u32]) -> BoolExpr {
    BoolExpr::Or(
        values
            .iter()
            .map(|&v| BoolExpr::Eq(IntExpr::Concept(concept), IntExpr::Const(v as i64)))
            .collect(),
    )
}

fn sum_of(digits: usize) -> LabelTerm {
    LabelTerm::Int(IntExpr::Add((0..digits).map(IntExpr::Concept).collect()))
}

/// Shifts concept indices (and atoms) by `offset`.
pub(crate) fn shift_concepts(e: &BoolExpr, offset: usize) -> BoolExpr {
    fn int(t: &IntExpr, offset: usize) -> IntExpr {
        match t {
            IntExpr::Const(v) => IntExpr::Const(*v),
            IntExpr::Concept(i) => IntExpr::Concept(i + offset),
            IntExpr::Add(ts) => IntExpr::Add(ts.iter().map(|t| int(t, offset)).collect()),
            IntExpr::Mul(ts) => IntExpr::Mul(ts.iter().map(|t| int(t, offset)).collect()),
            IntExpr::Neg(t) => IntExpr::Neg(Box::new(int(t, offset))),
        }
    }
    let all = |es: &[BoolExpr]| es.iter().map(|e| shift_concepts(e, offset)).collect();
    match e {
        BoolExpr::Const(v) => BoolExpr::Const(*v),
        BoolExpr::Atom(v) => BoolExpr::Atom(v + offset as u32),
        BoolExpr::Not(x) => BoolExpr::not(shift_concepts(x, offset)),
        BoolExpr::And(es) => BoolExpr::And(all(es)),
        BoolExpr::Or(es) => BoolExpr::Or(all(es)),
        BoolExpr::Xor(es) => BoolExpr::Xor(all(es)),
        BoolExpr::Iff(a, b) => BoolExpr::iff(shift_concepts(a, offset), shift_concepts(b, offset)),
        BoolExpr::Eq(a, b) => BoolExpr::Eq(int(a, offset), int(b, offset)),
    }
}

fn all_equal(idx: &[usize]) -> BoolExpr {
    BoolExpr::And(
        idx.windows(2)
            .map(|w| BoolExpr::Eq(IntExpr::Concept(w[0]), IntExpr::Concept(w[1])))
            .collect(),
    )
}

fn all_different(idx: &[usize]) -> BoolExpr {
    let mut out = Vec::new();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i + 1..] {
            out.push(BoolExpr::ne(IntExpr::Concept(a), IntExpr::Concept(b)));
        }
    }
    BoolExpr::And(out)
}

/// The six figure predicates (diffcol, twocol, samecol, diffsha, twosha,
/// samesha) for the figure whose primitives start at concept `base`.
fn kand_predicates(base: usize, primitives: usize) -> [BoolExpr; 6] {
    let shapes: Vec<usize> = (0..primitives).map(|p| base + 2 * p).collect();
    let colors: Vec<usize> = (0..primitives).map(|p| base + 2 * p + 1).collect();
    let two = |idx: &[usize]| {
        BoolExpr::And(vec![
            BoolExpr::not(all_equal(idx)),
            BoolExpr::not(all_different(idx)),
        ])
    };
    [
        all_different(&colors),
        two(&colors),
        all_equal(&colors),
        all_different(&shapes),
        two(&shapes),
        all_equal(&shapes),
    ]
}

fn kand_knowledge(
    figures: usize,
    primitives: usize,
    values: u32,
    figure_logic: Option<&BoolExpr>,
    aggregator: Option<&BoolExpr>,
) -> Result<Knowledge, TaskError> {
    let width = 2 * primitives;
    let space = ConceptSpace::new(figures * width, values)?;
    let label = match (figure_logic, aggregator) {
        (None, None) => {
            // a pattern holds when every figure satisfies the same predicate
            let per_figure: Vec<[BoolExpr; 6]> = (0..figures)
                .map(|f| kand_predicates(f * width, primitives))
                .collect();
            BoolExpr::Or(
                (0..6)
                    .map(|p| BoolExpr::And(per_figure.iter().map(|fig| fig[p].clone()).collect()))
                    .collect(),
            )
        }
        (None, Some(_)) => return invalid("an aggregator needs a per-figure logic"),
        (Some(fl), agg) => {
            let mut refs = Vec::new();
            fl.concepts(&mut refs);
            if fl.max_atom() as usize > width || refs.iter().any(|&i| i >= width) {
                return invalid("per-figure logic refers beyond one figure's concepts");
            }
            let patterns: Vec<BoolExpr> = (0..figures).map(|f| shift_concepts(fl, f * width)).collect();
            match agg {
                None => BoolExpr::And(patterns),
                Some(a) => {
                    if a.max_atom() as usize > figures || !a.is_boolean() {
                        return invalid("aggregator must be boolean over the figure patterns");
                    }
                    a.substitute(&|v| patterns[v as usize - 1].clone())
                }
            }
        }
    };
    let mut symbols = Vec::new();
    for f in 1..=figures {
        for p in 1..=primitives {
            if figures == 1 {
                symbols.push(format!("shape_{p}"));
                symbols.push(format!("color_{p}"));
            } else {
                symbols.push(format!("shape_{f}_{p}"));
                symbols.push(format!("color_{f}_{p}"));
            }
        }
    }
    Ok(Knowledge::new("kand", space, vec![LabelTerm::Bool(label)])?
        .with_symbols(symbols)?
        .with_label_names(vec!["pattern".into()])?)
}

fn custom_cnf_knowledge(cnf: &CnfFormula, label_var: Option<u32>) -> Result<Knowledge, TaskError> {
    let n = cnf.num_vars() as usize;
    let expr = cnf.to_expr();
    match label_var {
        None => {
            if n == 0 {
                return invalid("custom CNF declares no variables");
            }
            let space = ConceptSpace::new(n, 2)?;
            Ok(Knowledge::new("custom-cnf", space, vec![LabelTerm::Bool(expr)])?)
        }
        Some(y) => {
            if y == 0 || y as usize > n {
                return invalid(format!("label variable {y} outside 1..={n}"));
            }
            if n < 2 {
                return invalid("a relational CNF needs at least one concept variable");
            }
            // concepts keep their order, the label moves to atom n
            let renumbered = expr.substitute(&|v| {
                BoolExpr::Atom(match v.cmp(&y) {
                    std::cmp::Ordering::Less => v,
                    std::cmp::Ordering::Equal => n as u32,
                    std::cmp::Ordering::Greater => v - 1,
                })
            });
            let k = Knowledge::from_relation("custom-cnf", n - 1, 1, &renumbered, DEFAULT_DETERMINISM_BITS)?;
            let symbols = (1..=n as u32)
                .filter(|&v| v != y)
                .map(|v| format!("x{v}"))
                .collect();
            Ok(k.with_symbols(symbols)?)
        }
    }
}

/// Builds the knowledge and default support of a task family.
pub fn builtin_task(spec: &TaskSpec) -> Result<BuiltinTask, TaskError> {
    let (knowledge, default_support) = match spec {
        TaskSpec::MnLogic { k, formula } => {
            if *k == 0 {
                return invalid("MNLogic needs at least one bit");
            }
            let phi = formula
                .clone()
                .unwrap_or_else(|| BoolExpr::Xor((1..=*k as u32).map(BoolExpr::Atom).collect()));
            if !phi.is_boolean() || phi.max_atom() as usize > *k {
                return invalid(format!("MNLogic formula must be boolean over {k} atoms"));
            }
            let space = ConceptSpace::new(*k, 2)?;
            (
                Knowledge::new("mnlogic", space, vec![LabelTerm::Bool(phi)])?,
                SupportRule::Exhaustive,
            )
        }
        TaskSpec::MnAdd { digits, b } => {
            let space = ConceptSpace::new(*digits, *b)
                .or_else(|_| invalid(format!("MNAdd needs digits >= 1 and b >= 2, got {digits}, {b}")))?;
            (
                Knowledge::new("mnadd", space, vec![sum_of(*digits)])?,
                SupportRule::Exhaustive,
            )
        }
        TaskSpec::MnAddHalf => {
            let space = ConceptSpace::new(2, 10)?;
            let low: Vec<u32> = (0..5).collect();
            (
                Knowledge::new("mnadd-half", space, vec![sum_of(2)])?,
                SupportRule::Constraint(BoolExpr::And(vec![in_values(0, &low), in_values(1, &low)])),
            )
        }
        TaskSpec::MnAddEvenOdd => {
            let space = ConceptSpace::new(2, 10)?;
            let list = space
                .vectors()
                .filter(|c| c.values()[0] % 2 == c.values()[1] % 2)
                .collect();
            (
                Knowledge::new("mnadd-evenodd", space, vec![sum_of(2)])?,
                SupportRule::Explicit(list),
            )
        }
        TaskSpec::MnMath {
            num_digits,
            digit_values,
            equations,
        } => {
            if digit_values.is_empty() {
                return invalid("MNMath digit subset is empty");
            }
            if let Some(v) = digit_values.iter().find(|&&v| v > 9) {
                return invalid(format!("digit value {v} is not a decimal digit"));
            }
            if equations.is_empty() {
                return invalid("MNMath needs at least one equation");
            }
            let space =
                ConceptSpace::new(*num_digits, 10).or_else(|_| invalid("MNMath needs at least one digit"))?;
            let support = if digit_values.len() == 10 {
                SupportRule::Exhaustive
            } else {
                SupportRule::Constraint(BoolExpr::And(
                    (0..*num_digits).map(|i| in_values(i, digit_values)).collect(),
                ))
            };
            (Knowledge::new("mnmath", space, equations.clone())?, support)
        }
        TaskSpec::Kand {
            figures,
            primitives,
            shapes,
            colors,
            figure_logic,
            aggregator,
        } => {
            if *figures == 0 || *primitives == 0 {
                return invalid("Kand needs at least one figure and one primitive");
            }
            if shapes.len() != colors.len() || shapes.len() < 2 {
                return invalid(format!(
                    "Kand needs equally many shapes and colors (at least 2), got {} and {}",
                    shapes.len(),
                    colors.len()
                ));
            }
            let k = kand_knowledge(
                *figures,
                *primitives,
                shapes.len() as u32,
                figure_logic.as_ref(),
                aggregator.as_ref(),
            )?;
            (k, SupportRule::Exhaustive)
        }
        TaskSpec::Cle4evr {
            objects,
            values,
            logic,
        } => {
            if *objects < 2 {
                return invalid("CLE4EVR needs at least two objects");
            }
            let space = ConceptSpace::new(2 * objects, *values)
                .or_else(|_| invalid(format!("CLE4EVR needs at least 2 attribute values, got {values}")))?;
            let label = match logic {
                Some(l) => l.clone(),
                None => {
                    let mut pairs = Vec::new();
                    for i in 0..*objects {
                        for j in i + 1..*objects {
                            pairs.push(BoolExpr::And(vec![
                                BoolExpr::Eq(IntExpr::Concept(2 * i), IntExpr::Concept(2 * j)),
                                BoolExpr::Eq(IntExpr::Concept(2 * i + 1), IntExpr::Concept(2 * j + 1)),
                            ]));
                        }
                    }
                    BoolExpr::Or(pairs)
                }
            };
            let mut symbols = Vec::new();
            for o in 1..=*objects {
                symbols.push(format!("color_{o}"));
                symbols.push(format!("shape_{o}"));
            }
            let k = Knowledge::new("cle4evr", space, vec![LabelTerm::Bool(label)])?.with_symbols(symbols)?;
            (k, SupportRule::Exhaustive)
        }
        TaskSpec::Boia => boia::knowledge(false)?,
        TaskSpec::BoiaOodEmergency => boia::knowledge(true)?,
        TaskSpec::CustomCnf { cnf, label_var } => {
            (custom_cnf_knowledge(cnf, *label_var)?, SupportRule::Exhaustive)
        }
    };
    Ok(BuiltinTask {
        spec: spec.clone(),
        knowledge,
        default_support,
    })
}
