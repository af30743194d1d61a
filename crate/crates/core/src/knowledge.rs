//! Concept spaces, deterministic knowledge maps, supports and equivalence
//! classes.
//!
//! A concept vector holds `k` categorical values in `[0, b)`. Its one-hot
//! form has `k * b` bits; block `j` occupies bits `[j*b, (j+1)*b)` and bit
//! `j*b + v` is set iff concept `j` takes value `v`. Bit-level formulas use
//! atom `x + 1` for bit `x`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{BoolExpr, EvalContext, FormulaError, IntExpr};

/// Default bound on the number of concept vectors any routine enumerates.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 22;
/// Default bound (in bits) for [`check_determinism`].
pub const DEFAULT_DETERMINISM_BITS: u32 = 24;

const INDICATOR_ENUMERATION_CAP: u64 = 1 << 16;
const MAX_INDICATORS_PER_LABEL: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnowledgeError {
    #[error("invalid concept space: k={k}, b={b} (need k >= 1, b >= 2)")]
    InvalidSpace { k: usize, b: u32 },
    #[error("concept vector {0} is outside the concept space")]
    OutOfSpace(String),
    #[error("{what} needs {needed} enumerations, above the cap of {cap}")]
    Capacity { what: String, needed: String, cap: u64 },
    #[error("invalid knowledge: {0}")]
    Invalid(String),
    #[error("support lists concept vector {0} twice")]
    DuplicateSupport(String),
    #[error("knowledge `{0}` has no bit-level formula")]
    MissingBitFormula(String),
    #[error("relation is not deterministic: {0}")]
    NotDeterministic(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConceptSpace {
    k: usize,
    b: u32,
}

impl ConceptSpace {
    pub fn new(k: usize, b: u32) -> Result<Self, KnowledgeError> {
        if k == 0 || b < 2 {
            return Err(KnowledgeError::InvalidSpace { k, b });
        }
        Ok(ConceptSpace { k, b })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn onehot_width(&self) -> usize {
        self.k * self.b as usize
    }

    /// `b^k`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        (self.b as u64).checked_pow(self.k.try_into().ok()?)
    }

    /// `b^k` if it does not exceed `cap`.
    pub fn size_within(&self, cap: u64, what: &str) -> Result<u64, KnowledgeError> {
        match self.size() {
            Some(n) if n <= cap => Ok(n),
            n => Err(KnowledgeError::Capacity {
                what: what.to_string(),
                needed: n.map_or_else(|| format!("{}^{}", self.b, self.k), |n| n.to_string()),
                cap,
            }),
        }
    }

    pub fn contains(&self, c: &ConceptVector) -> bool {
        c.0.len() == self.k && c.0.iter().all(|&v| v < self.b)
    }

    pub fn check(&self, c: &ConceptVector) -> Result<(), KnowledgeError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(KnowledgeError::OutOfSpace(c.to_string()))
        }
    }

    /// Index of `c` in lexicographic order (concept 0 most significant).
    pub fn index_of(&self, c: &ConceptVector) -> u64 {
        c.0.iter().fold(0u64, |acc, &v| acc * self.b as u64 + v as u64)
    }

    pub fn vector_at(&self, mut index: u64) -> ConceptVector {
        let mut values = vec![0u32; self.k];
        for slot in values.iter_mut().rev() {
            *slot = (index % self.b as u64) as u32;
            index /= self.b as u64;
        }
        ConceptVector(values)
    }

    /// All vectors in lexicographic order. Callers bound the size first.
    pub fn vectors(&self) -> impl Iterator<Item = ConceptVector> + '_ {
        let n = self.size().expect("concept space too large to enumerate");
        (0..n).map(move |i| self.vector_at(i))
    }

    pub fn bit(&self, concept: usize, value: u32) -> usize {
        concept * self.b as usize + value as usize
    }

    /// Atom (1-based) of the one-hot bit for `concept == value`.
    pub fn bit_atom(&self, concept: usize, value: u32) -> u32 {
        self.bit(concept, value) as u32 + 1
    }

    pub fn onehot(&self, c: &ConceptVector) -> Vec<bool> {
        let mut bits = vec![false; self.onehot_width()];
        for (j, &v) in c.0.iter().enumerate() {
            bits[self.bit(j, v)] = true;
        }
        bits
    }

    /// Inverse of [`ConceptSpace::onehot`]; `None` unless every block has
    /// exactly one bit set.
    pub fn decode(&self, bits: &[bool]) -> Option<ConceptVector> {
        if bits.len() != self.onehot_width() {
            return None;
        }
        let b = self.b as usize;
        let mut values = Vec::with_capacity(self.k);
        for block in bits.chunks(b) {
            let mut set = block.iter().enumerate().filter(|(_, &x)| x);
            let (v, _) = set.next()?;
            if set.next().is_some() {
                return None;
            }
            values.push(v as u32);
        }
        Some(ConceptVector(values))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptVector(Vec<u32>);

impl ConceptVector {
    pub fn new(values: Vec<u32>) -> Self {
        ConceptVector(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u32>> for ConceptVector {
    fn from(v: Vec<u32>) -> Self {
        ConceptVector(v)
    }
}

impl fmt::Display for ConceptVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Atoms read a concept as true when it is non-zero; `Eq` terms read the
/// raw values.
impl EvalContext for ConceptVector {
    fn atom(&self, var: u32) -> Option<bool> {
        (var as usize)
            .checked_sub(1)
            .and_then(|i| self.0.get(i))
            .map(|&v| v != 0)
    }

    fn concept(&self, index: usize) -> Option<i64> {
        self.0.get(index).map(|&v| v as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabelVector(Vec<i64>);

impl LabelVector {
    pub fn new(values: Vec<i64>) -> Self {
        LabelVector(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// One output position of a knowledge map, written over concept values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelTerm {
    /// Binary label (0/1).
    Bool(BoolExpr),
    /// Integer label, e.g. the result of an equation.
    Int(IntExpr),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDomain {
    pub min: i64,
    pub max: i64,
}

impl LabelDomain {
    pub const BINARY: LabelDomain = LabelDomain { min: 0, max: 1 };

    pub fn cardinality(&self) -> u64 {
        (self.max - self.min + 1) as u64
    }

    pub fn is_binary(&self) -> bool {
        *self == Self::BINARY
    }
}

/// Bit-level formula for the binary indicator "label `position` equals
/// `value`", over the one-hot concept bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indicator {
    pub position: usize,
    pub value: i64,
    pub expr: BoolExpr,
}

/// A deterministic knowledge map from concept vectors to label vectors.
#[derive(Debug, Clone)]
pub struct Knowledge {
    name: String,
    space: ConceptSpace,
    outputs: Vec<LabelTerm>,
    domains: Vec<LabelDomain>,
    symbols: Vec<String>,
    label_names: Vec<String>,
    bit_formula: Option<Vec<Indicator>>,
}

impl Knowledge {
    /// Builds the map and, where feasible, its bit-level formula.
    ///
    /// Atoms and `Eq` comparisons between single concepts or constants lift
    /// structurally. Other integer comparisons and integer labels lift by
    /// enumerating the concepts they reference.
    pub fn new(
        name: impl Into<String>,
        space: ConceptSpace,
        outputs: Vec<LabelTerm>,
    ) -> Result<Self, KnowledgeError> {
        let name = name.into();
        if outputs.is_empty() {
            return Err(KnowledgeError::Invalid("knowledge has no label".into()));
        }
        let mut refs = Vec::new();
        for o in &outputs {
            match o {
                LabelTerm::Bool(e) => e.concepts(&mut refs),
                LabelTerm::Int(t) => t.concepts(&mut refs),
            }
        }
        if let Some(&bad) = refs.iter().find(|&&i| i >= space.k()) {
            return Err(KnowledgeError::Invalid(format!(
                "concept {bad} referenced but only {} exist",
                space.k()
            )));
        }
        let max_value = space.b() as i64 - 1;
        let domains = outputs
            .iter()
            .map(|o| match o {
                LabelTerm::Bool(_) => LabelDomain::BINARY,
                LabelTerm::Int(t) => {
                    let (min, max) = t.bounds(max_value);
                    LabelDomain { min, max }
                }
            })
            .collect();
        let mut k = Knowledge {
            symbols: (0..space.k()).map(|i| format!("c{}", i + 1)).collect(),
            label_names: (0..outputs.len()).map(|i| format!("y{}", i + 1)).collect(),
            name,
            space,
            outputs,
            domains,
            bit_formula: None,
        };
        k.bit_formula = k.lift_outputs();
        Ok(k)
    }

    /// Knowledge from a relation over concept atoms `1..=k` (b = 2) and
    /// label atoms `k+1..=k+labels`, after checking that every concept
    /// vector admits exactly one label vector.
    pub fn from_relation(
        name: impl Into<String>,
        k: usize,
        labels: usize,
        rel: &BoolExpr,
        max_bits: u32,
    ) -> Result<Self, KnowledgeError> {
        let space = ConceptSpace::new(k, 2)?;
        if labels == 0 {
            return Err(KnowledgeError::Invalid("relation has no label atoms".into()));
        }
        if rel.max_atom() as usize > k + labels {
            return Err(KnowledgeError::Invalid(format!(
                "relation uses atom {} beyond {k} concepts and {labels} labels",
                rel.max_atom()
            )));
        }
        if !check_determinism(rel, space, &vec![2; labels], max_bits)? {
            return Err(KnowledgeError::NotDeterministic(
                "some concept vector admits zero or several label vectors".into(),
            ));
        }
        // With a unique solution, y_p holds iff some completion with y_p = 1
        // satisfies the relation.
        let mut outputs = Vec::with_capacity(labels);
        for p in 0..labels {
            let others: Vec<usize> = (0..labels).filter(|&q| q != p).collect();
            let mut disjuncts = Vec::new();
            for mask in 0u64..(1 << others.len()) {
                let fixed = |atom: u32| -> BoolExpr {
                    let a = atom as usize;
                    if a <= k {
                        return BoolExpr::Atom(atom);
                    }
                    let q = a - k - 1;
                    if q == p {
                        return BoolExpr::Const(true);
                    }
                    let pos = others.iter().position(|&o| o == q).unwrap();
                    BoolExpr::Const(mask >> pos & 1 == 1)
                };
                disjuncts.push(rel.substitute(&fixed));
            }
            outputs.push(LabelTerm::Bool(BoolExpr::Or(disjuncts)));
        }
        Knowledge::new(name, space, outputs)
    }

    pub fn with_symbols(mut self, symbols: Vec<String>) -> Result<Self, KnowledgeError> {
        if symbols.len() != self.space.k() {
            return Err(KnowledgeError::Invalid(format!(
                "{} symbols for {} concepts",
                symbols.len(),
                self.space.k()
            )));
        }
        self.symbols = symbols;
        Ok(self)
    }

    pub fn with_label_names(mut self, names: Vec<String>) -> Result<Self, KnowledgeError> {
        if names.len() != self.outputs.len() {
            return Err(KnowledgeError::Invalid(format!(
                "{} label names for {} labels",
                names.len(),
                self.outputs.len()
            )));
        }
        self.label_names = names;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> ConceptSpace {
        self.space
    }

    pub fn outputs(&self) -> &[LabelTerm] {
        &self.outputs
    }

    pub fn domains(&self) -> &[LabelDomain] {
        &self.domains
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn bit_formula(&self) -> Option<&[Indicator]> {
        self.bit_formula.as_deref()
    }

    pub fn require_bit_formula(&self) -> Result<&[Indicator], KnowledgeError> {
        self.bit_formula()
            .ok_or_else(|| KnowledgeError::MissingBitFormula(self.name.clone()))
    }

    /// True when every label is binary.
    pub fn is_boolean(&self) -> bool {
        self.domains.iter().all(LabelDomain::is_binary)
    }

    pub fn label_of(&self, c: &ConceptVector) -> Result<LabelVector, KnowledgeError> {
        self.space.check(c)?;
        let mut out = Vec::with_capacity(self.outputs.len());
        for o in &self.outputs {
            out.push(match o {
                LabelTerm::Bool(e) => e.eval(c)? as i64,
                LabelTerm::Int(t) => t.eval(c)?,
            });
        }
        Ok(LabelVector(out))
    }

    /// Truth values of the bit-formula indicators for label `y`.
    pub fn label_bits(&self, y: &LabelVector) -> Result<Vec<bool>, KnowledgeError> {
        Ok(self
            .require_bit_formula()?
            .iter()
            .map(|ind| y.0[ind.position] == ind.value)
            .collect())
    }

    fn lift_outputs(&self) -> Option<Vec<Indicator>> {
        let mut out = Vec::new();
        for (p, o) in self.outputs.iter().enumerate() {
            match o {
                LabelTerm::Bool(e) => out.push(Indicator {
                    position: p,
                    value: 1,
                    expr: self.lift(e)?,
                }),
                LabelTerm::Int(t) => {
                    let d = self.domains[p];
                    if d.max - d.min + 1 > MAX_INDICATORS_PER_LABEL {
                        return None;
                    }
                    let mut by_value: HashMap<i64, Vec<BoolExpr>> = HashMap::new();
                    self.enumerate_refs(&[t], |ctx, bits| {
                        let v = t.eval(ctx).ok()?;
                        by_value.entry(v).or_default().push(BoolExpr::And(bits));
                        Some(())
                    })?;
                    for v in d.min..=d.max {
                        let expr = match by_value.remove(&v) {
                            Some(terms) => BoolExpr::Or(terms),
                            None => BoolExpr::Const(false),
                        };
                        out.push(Indicator {
                            position: p,
                            value: v,
                            expr,
                        });
                    }
                }
            }
        }
        Some(out)
    }

    fn lift(&self, e: &BoolExpr) -> Option<BoolExpr> {
        let s = self.space;
        Some(match e {
            BoolExpr::Const(v) => BoolExpr::Const(*v),
            BoolExpr::Atom(v) => {
                let j = *v as usize - 1;
                if s.b() == 2 {
                    BoolExpr::Atom(s.bit_atom(j, 1))
                } else {
                    BoolExpr::Or((1..s.b()).map(|x| BoolExpr::Atom(s.bit_atom(j, x))).collect())
                }
            }
            BoolExpr::Not(a) => BoolExpr::not(self.lift(a)?),
            BoolExpr::And(es) => BoolExpr::And(es.iter().map(|x| self.lift(x)).collect::<Option<_>>()?),
            BoolExpr::Or(es) => BoolExpr::Or(es.iter().map(|x| self.lift(x)).collect::<Option<_>>()?),
            BoolExpr::Xor(es) => BoolExpr::Xor(es.iter().map(|x| self.lift(x)).collect::<Option<_>>()?),
            BoolExpr::Iff(a, b) => BoolExpr::iff(self.lift(a)?, self.lift(b)?),
            BoolExpr::Eq(a, b) => match (a, b) {
                (IntExpr::Const(x), IntExpr::Const(y)) => BoolExpr::Const(x == y),
                (IntExpr::Concept(j), IntExpr::Const(v)) | (IntExpr::Const(v), IntExpr::Concept(j)) => {
                    if (0..s.b() as i64).contains(v) {
                        BoolExpr::Atom(s.bit_atom(*j, *v as u32))
                    } else {
                        BoolExpr::Const(false)
                    }
                }
                (IntExpr::Concept(i), IntExpr::Concept(j)) if i == j => BoolExpr::Const(true),
                (IntExpr::Concept(i), IntExpr::Concept(j)) => BoolExpr::Or(
                    (0..s.b())
                        .map(|v| {
                            BoolExpr::And(vec![
                                BoolExpr::Atom(s.bit_atom(*i, v)),
                                BoolExpr::Atom(s.bit_atom(*j, v)),
                            ])
                        })
                        .collect(),
                ),
                _ => {
                    let mut terms = Vec::new();
                    self.enumerate_refs(&[a, b], |ctx, bits| {
                        if a.eval(ctx).ok()? == b.eval(ctx).ok()? {
                            terms.push(BoolExpr::And(bits));
                        }
                        Some(())
                    })?;
                    BoolExpr::Or(terms)
                }
            },
        })
    }

    /// Calls `f` for every assignment of the concepts referenced by
    /// `terms`, with the matching conjunction of one-hot bit atoms.
    fn enumerate_refs(
        &self,
        terms: &[&IntExpr],
        mut f: impl FnMut(&ConceptVector, Vec<BoolExpr>) -> Option<()>,
    ) -> Option<()> {
        let mut refs = Vec::new();
        for t in terms {
            t.concepts(&mut refs);
        }
        refs.sort_unstable();
        let b = self.space.b() as u64;
        let total = b.checked_pow(refs.len() as u32)?;
        if total > INDICATOR_ENUMERATION_CAP {
            return None;
        }
        let mut values = vec![0u32; self.space.k()];
        for idx in 0..total {
            let mut rest = idx;
            for &j in refs.iter().rev() {
                values[j] = (rest % b) as u32;
                rest /= b;
            }
            let ctx = ConceptVector(values.clone());
            let bits = refs
                .iter()
                .map(|&j| BoolExpr::Atom(self.space.bit_atom(j, values[j])))
                .collect();
            f(&ctx, bits)?;
        }
        Some(())
    }
}

/// Ordered set of training concept vectors paired with their labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    entries: Vec<(ConceptVector, LabelVector)>,
}

impl Support {
    pub fn new(k: &Knowledge, concepts: Vec<ConceptVector>) -> Result<Self, KnowledgeError> {
        let mut seen = std::collections::HashSet::new();
        let mut entries = Vec::with_capacity(concepts.len());
        for c in concepts {
            if !seen.insert(c.clone()) {
                return Err(KnowledgeError::DuplicateSupport(c.to_string()));
            }
            let y = k.label_of(&c)?;
            entries.push((c, y));
        }
        Ok(Support { entries })
    }

    pub fn entries(&self) -> &[(ConceptVector, LabelVector)] {
        &self.entries
    }

    pub fn concepts(&self) -> impl Iterator<Item = &ConceptVector> {
        self.entries.iter().map(|(c, _)| c)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, c: &ConceptVector) -> bool {
        self.entries.iter().any(|(x, _)| x == c)
    }
}

pub fn exhaustive_support(k: &Knowledge, cap: u64) -> Result<Support, KnowledgeError> {
    k.space().size_within(cap, "exhaustive support")?;
    Support::new(k, k.space().vectors().collect())
}

/// Every concept vector with the same label as `c`, in lexicographic order.
pub fn equivalence_class(
    k: &Knowledge,
    c: &ConceptVector,
    cap: u64,
) -> Result<Vec<ConceptVector>, KnowledgeError> {
    let target = k.label_of(c)?;
    k.space().size_within(cap, "equivalence class")?;
    let mut out = Vec::new();
    for v in k.space().vectors() {
        if k.label_of(&v)? == target {
            out.push(v);
        }
    }
    Ok(out)
}

/// Size of every equivalence class, keyed by its label.
pub fn class_sizes(k: &Knowledge, cap: u64) -> Result<HashMap<LabelVector, u64>, KnowledgeError> {
    k.space().size_within(cap, "equivalence classes")?;
    let mut sizes = HashMap::new();
    for v in k.space().vectors() {
        *sizes.entry(k.label_of(&v)?).or_insert(0) += 1;
    }
    Ok(sizes)
}

fn bits_for(n: u64) -> u32 {
    64 - (n.max(1) - 1).leading_zeros()
}

/// Checks that `rel` assigns exactly one label vector to each concept
/// vector, by enumeration.
///
/// Atom layout: concept atoms first (`k` direct atoms when `b = 2`, the
/// `k*b` one-hot bits otherwise), then label atoms (one atom per binary
/// label, `a` one-hot atoms for a label of arity `a > 2`).
pub fn check_determinism(
    rel: &BoolExpr,
    space: ConceptSpace,
    label_arity: &[u32],
    max_bits: u32,
) -> Result<bool, KnowledgeError> {
    if label_arity.iter().any(|&a| a < 2) {
        return Err(KnowledgeError::Invalid("label arity must be at least 2".into()));
    }
    let bits = space.k() as u32 * bits_for(space.b() as u64)
        + label_arity.iter().map(|&a| bits_for(a as u64)).sum::<u32>();
    if bits > max_bits {
        return Err(KnowledgeError::Capacity {
            what: "determinism check".into(),
            needed: format!("2^{bits}"),
            cap: 1u64 << max_bits.min(63),
        });
    }
    let label_count: u64 = label_arity.iter().map(|&a| a as u64).product();
    let concept_bits = |c: &ConceptVector| -> Vec<bool> {
        if space.b() == 2 {
            c.values().iter().map(|&v| v == 1).collect()
        } else {
            space.onehot(c)
        }
    };
    for c in space.vectors() {
        let base = concept_bits(&c);
        let mut solutions = 0;
        for idx in 0..label_count {
            let mut digits = vec![0u32; label_arity.len()];
            let mut rest = idx;
            for (d, &a) in digits.iter_mut().zip(label_arity).rev() {
                *d = (rest % a as u64) as u32;
                rest /= a as u64;
            }
            let mut atoms = base.clone();
            for (&a, &v) in label_arity.iter().zip(&digits) {
                if a == 2 {
                    atoms.push(v == 1);
                } else {
                    atoms.extend((0..a).map(|x| x == v));
                }
            }
            if rel.eval(&atoms)? {
                solutions += 1;
                if solutions > 1 {
                    return Ok(false);
                }
            }
        }
        if solutions != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(n: u32) -> Vec<BoolExpr> {
        (1..=n).map(BoolExpr::Atom).collect()
    }

    fn xor3() -> Knowledge {
        let s = ConceptSpace::new(3, 2).unwrap();
        Knowledge::new("xor", s, vec![LabelTerm::Bool(BoolExpr::Xor(atoms(3)))]).unwrap()
    }

    fn and3() -> Knowledge {
        let s = ConceptSpace::new(3, 2).unwrap();
        Knowledge::new("and", s, vec![LabelTerm::Bool(BoolExpr::And(atoms(3)))]).unwrap()
    }

    fn cv(v: &[u32]) -> ConceptVector {
        ConceptVector::new(v.to_vec())
    }

    #[test]
    fn addition_label() {
        let s = ConceptSpace::new(2, 10).unwrap();
        let k = Knowledge::new(
            "add",
            s,
            vec![LabelTerm::Int(IntExpr::Add(vec![
                IntExpr::Concept(0),
                IntExpr::Concept(1),
            ]))],
        )
        .unwrap();
        assert_eq!(k.label_of(&cv(&[3, 4])).unwrap().values(), &[7]);
        assert_eq!(k.domains()[0], LabelDomain { min: 0, max: 18 });
        assert_eq!(k.bit_formula().unwrap().len(), 19);
    }

    #[test]
    fn equation_system_label() {
        let s = ConceptSpace::new(4, 10).unwrap();
        let two_a_b = IntExpr::Add(vec![
            IntExpr::Mul(vec![IntExpr::Const(2), IntExpr::Concept(0)]),
            IntExpr::Concept(1),
        ]);
        let c_d = IntExpr::Add(vec![IntExpr::Concept(2), IntExpr::Concept(3)]);
        let k = Knowledge::new("math", s, vec![LabelTerm::Int(two_a_b), LabelTerm::Int(c_d)]).unwrap();
        assert_eq!(k.label_of(&cv(&[2, 2, 3, 4])).unwrap().values(), &[6, 7]);
    }

    #[test]
    fn out_of_space_vector() {
        assert!(matches!(
            xor3().label_of(&cv(&[0, 2, 0])),
            Err(KnowledgeError::OutOfSpace(_))
        ));
        assert!(xor3().label_of(&cv(&[0, 1])).is_err());
    }

    #[test]
    fn xor_equivalence_class() {
        let class = equivalence_class(&xor3(), &cv(&[0, 0, 0]), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(
            class,
            vec![cv(&[0, 0, 0]), cv(&[0, 1, 1]), cv(&[1, 0, 1]), cv(&[1, 1, 0])]
        );
    }

    #[test]
    fn and_equivalence_classes() {
        let k = and3();
        assert_eq!(
            equivalence_class(&k, &cv(&[1, 1, 1]), DEFAULT_ENUMERATION_CAP).unwrap(),
            vec![cv(&[1, 1, 1])]
        );
        let zero = equivalence_class(&k, &cv(&[0, 0, 0]), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(zero.len(), 7);
        assert!(!zero.contains(&cv(&[1, 1, 1])));
    }

    #[test]
    fn exhaustive_supports() {
        let s = exhaustive_support(&xor3(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.len(), 8);
        for (c, y) in s.entries() {
            assert_eq!(&xor3().label_of(c).unwrap(), y);
        }
        let add = Knowledge::new(
            "add",
            ConceptSpace::new(2, 10).unwrap(),
            vec![LabelTerm::Int(IntExpr::Add(vec![
                IntExpr::Concept(0),
                IntExpr::Concept(1),
            ]))],
        )
        .unwrap();
        assert_eq!(
            exhaustive_support(&add, DEFAULT_ENUMERATION_CAP).unwrap().len(),
            100
        );
        assert!(matches!(
            exhaustive_support(&add, 50),
            Err(KnowledgeError::Capacity { .. })
        ));
    }

    #[test]
    fn duplicate_support_rejected() {
        assert!(matches!(
            Support::new(&xor3(), vec![cv(&[0, 0, 0]), cv(&[0, 0, 0])]),
            Err(KnowledgeError::DuplicateSupport(_))
        ));
    }

    #[test]
    fn determinism_checks() {
        let s2 = ConceptSpace::new(2, 2).unwrap();
        // y <-> c1 xor c2, label atom 3
        let rel = BoolExpr::iff(BoolExpr::Atom(3), BoolExpr::Xor(atoms(2)));
        assert!(check_determinism(&rel, s2, &[2], 24).unwrap());
        // y or c1, label atom 2
        let s1 = ConceptSpace::new(1, 2).unwrap();
        let rel = BoolExpr::Or(vec![BoolExpr::Atom(2), BoolExpr::Atom(1)]);
        assert!(!check_determinism(&rel, s1, &[2], 24).unwrap());
        assert!(matches!(
            check_determinism(&rel, ConceptSpace::new(30, 2).unwrap(), &[2], 24),
            Err(KnowledgeError::Capacity { .. })
        ));
    }

    #[test]
    fn relation_derived_knowledge() {
        let rel = BoolExpr::iff(BoolExpr::Atom(3), BoolExpr::Xor(atoms(2)));
        let k = Knowledge::from_relation("xor2", 2, 1, &rel, 24).unwrap();
        for c in k.space().vectors() {
            let parity = (c.values()[0] ^ c.values()[1]) as i64;
            assert_eq!(k.label_of(&c).unwrap().values(), &[parity]);
        }
        let loose = BoolExpr::Or(vec![BoolExpr::Atom(2), BoolExpr::Atom(1)]);
        assert!(matches!(
            Knowledge::from_relation("loose", 1, 1, &loose, 24),
            Err(KnowledgeError::NotDeterministic(_))
        ));
    }

    #[test]
    fn onehot_roundtrip_and_layout() {
        let s = ConceptSpace::new(3, 4).unwrap();
        let c = cv(&[3, 0, 2]);
        let bits = s.onehot(&c);
        assert!(bits[3] && bits[4] && bits[10]);
        assert_eq!(bits.iter().filter(|&&b| b).count(), 3);
        assert_eq!(s.decode(&bits), Some(c.clone()));
        assert_eq!(s.vector_at(s.index_of(&c)), c);
        let mut broken = bits.clone();
        broken[5] = true;
        assert_eq!(s.decode(&broken), None);
    }

    #[test]
    fn bit_formula_agrees_with_labels() {
        let s = ConceptSpace::new(3, 3).unwrap();
        let k = Knowledge::new(
            "mixed",
            s,
            vec![
                LabelTerm::Bool(BoolExpr::And(vec![
                    BoolExpr::Eq(IntExpr::Concept(0), IntExpr::Concept(1)),
                    BoolExpr::ne(IntExpr::Concept(1), IntExpr::Const(2)),
                ])),
                LabelTerm::Bool(BoolExpr::Eq(
                    IntExpr::Add(vec![IntExpr::Concept(0), IntExpr::Concept(2)]),
                    IntExpr::Const(2),
                )),
                LabelTerm::Bool(BoolExpr::Atom(3)),
                LabelTerm::Int(IntExpr::Mul(vec![IntExpr::Concept(1), IntExpr::Concept(2)])),
            ],
        )
        .unwrap();
        let formula = k.bit_formula().unwrap();
        for c in s.vectors() {
            let y = k.label_of(&c).unwrap();
            let expected = k.label_bits(&y).unwrap();
            let bits = s.onehot(&c);
            let got: Vec<bool> = formula.iter().map(|i| i.expr.eval(&bits).unwrap()).collect();
            assert_eq!(got, expected, "{c}");
        }
    }
}
