//! Concept remappings and the brute-force shortcut counts.
//!
//! A structured map is stored column-wise: `targets[y]` is the row `x` of
//! the single true entry in column `y` of `A`. Columns index ground-truth
//! one-hot bits, rows index predicted bits. `O[i][j]` is true iff block
//! `(i, j)` of `A` has a true entry.
//!
//! Enumeration order is lexicographic: first the block structure (the
//! predicted block of each ground-truth block, as a `k`-tuple or a
//! permutation), then the per-block value functions, read as `k*b` base-`b`
//! digits with the last digit varying fastest.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knowledge::{
    class_sizes, ConceptSpace, ConceptVector, Knowledge, KnowledgeError, Support, DEFAULT_ENUMERATION_CAP,
};

/// Default bound on the number of maps enumerated; admits the `8^8`
/// unrestricted maps of three binary concepts.
pub const DEFAULT_ALPHA_CAP: u64 = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureMode {
    /// Any function on concept vectors.
    Unrestricted,
    /// Every ground-truth concept feeds exactly one predicted concept.
    Complete,
    /// `O` is a permutation matrix.
    #[default]
    Permutation,
}

impl StructureMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructureMode::Unrestricted => "unrestricted",
            StructureMode::Complete => "complete",
            StructureMode::Permutation => "permutation",
        }
    }
}

impl fmt::Display for StructureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StructureMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "unrestricted" => Ok(StructureMode::Unrestricted),
            "complete" => Ok(StructureMode::Complete),
            "permutation" => Ok(StructureMode::Permutation),
            _ => Err(format!(
                "unknown mode `{s}` (expected unrestricted, complete or permutation)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaError {
    #[error("{mode} enumeration needs {needed} maps, above the cap of {cap}")]
    Capacity {
        mode: StructureMode,
        needed: String,
        cap: u64,
    },
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error(transparent)]
    Knowledge(#[from] KnowledgeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaMap {
    space: ConceptSpace,
    targets: Vec<usize>,
}

impl AlphaMap {
    /// `targets[y]` is the predicted bit ground-truth bit `y` routes to.
    pub fn from_targets(space: ConceptSpace, targets: Vec<usize>) -> Result<Self, AlphaError> {
        let n = space.onehot_width();
        if targets.len() != n {
            return Err(AlphaError::Invalid(format!(
                "{} columns, expected {n}",
                targets.len()
            )));
        }
        if let Some(&t) = targets.iter().find(|&&t| t >= n) {
            return Err(AlphaError::Invalid(format!("row {t} out of range")));
        }
        Ok(AlphaMap { space, targets })
    }

    /// Validates `A` (every column exactly one true entry) and `O` (block
    /// summary of `A`).
    pub fn from_matrices(space: ConceptSpace, o: &[Vec<bool>], a: &[Vec<bool>]) -> Result<Self, AlphaError> {
        let n = space.onehot_width();
        let k = space.k();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(AlphaError::Invalid(format!("A must be {n}x{n}")));
        }
        if o.len() != k || o.iter().any(|r| r.len() != k) {
            return Err(AlphaError::Invalid(format!("O must be {k}x{k}")));
        }
        let mut targets = Vec::with_capacity(n);
        for y in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&x| a[x][y]).collect();
            if rows.len() != 1 {
                return Err(AlphaError::Invalid(format!(
                    "column {y} of A has {} true entries",
                    rows.len()
                )));
            }
            targets.push(rows[0]);
        }
        let alpha = AlphaMap { space, targets };
        if alpha.o() != o {
            return Err(AlphaError::Invalid("O does not summarize the blocks of A".into()));
        }
        Ok(alpha)
    }

    pub fn identity(space: ConceptSpace) -> Self {
        AlphaMap {
            space,
            targets: (0..space.onehot_width()).collect(),
        }
    }

    pub fn space(&self) -> ConceptSpace {
        self.space
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn a(&self) -> Vec<Vec<bool>> {
        let n = self.targets.len();
        let mut a = vec![vec![false; n]; n];
        for (y, &x) in self.targets.iter().enumerate() {
            a[x][y] = true;
        }
        a
    }

    pub fn o(&self) -> Vec<Vec<bool>> {
        let k = self.space.k();
        let b = self.space.b() as usize;
        let mut o = vec![vec![false; k]; k];
        for (y, &x) in self.targets.iter().enumerate() {
            o[x / b][y / b] = true;
        }
        o
    }

    /// True when the map meets the structural constraints of `mode`.
    pub fn satisfies(&self, mode: StructureMode) -> bool {
        let o = self.o();
        let k = self.space.k();
        let col_one = (0..k).all(|j| (0..k).filter(|&i| o[i][j]).count() == 1);
        let row_one = (0..k).all(|i| o[i].iter().filter(|&&v| v).count() == 1);
        match mode {
            StructureMode::Unrestricted => true,
            StructureMode::Complete => col_one,
            StructureMode::Permutation => col_one && row_one,
        }
    }

    /// Boolean product `A ⊗ onehot(c)`.
    pub fn apply(&self, c: &ConceptVector) -> Result<Vec<bool>, AlphaError> {
        self.space.check(c)?;
        let mut bits = vec![false; self.targets.len()];
        for (j, &v) in c.values().iter().enumerate() {
            bits[self.targets[self.space.bit(j, v)]] = true;
        }
        Ok(bits)
    }

    /// [`AlphaMap::apply`] decoded; `None` when some block is not one-hot.
    pub fn apply_decoded(&self, c: &ConceptVector) -> Result<Option<ConceptVector>, AlphaError> {
        Ok(self.space.decode(&self.apply(c)?))
    }
}

/// An arbitrary map on concept vectors, stored by lexicographic index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnrestrictedAlpha {
    space: ConceptSpace,
    table: Vec<u64>,
}

impl UnrestrictedAlpha {
    pub fn new(space: ConceptSpace, table: Vec<u64>) -> Result<Self, AlphaError> {
        let n = space.size_within(DEFAULT_ENUMERATION_CAP, "unrestricted map")?;
        if table.len() as u64 != n || table.iter().any(|&t| t >= n) {
            return Err(AlphaError::Invalid(format!(
                "table must map {n} entries into 0..{n}"
            )));
        }
        Ok(UnrestrictedAlpha { space, table })
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn apply(&self, c: &ConceptVector) -> Result<ConceptVector, AlphaError> {
        self.space.check(c)?;
        Ok(self.space.vector_at(self.table[self.space.index_of(c) as usize]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alpha {
    Structured(AlphaMap),
    Unrestricted(UnrestrictedAlpha),
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn tuples(k: usize) -> Vec<Vec<usize>> {
    let total = k.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = idx % k;
                idx /= k;
            }
            t
        })
        .collect()
}

fn big_pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Number of maps of `mode` over `space`, exactly.
pub fn alpha_count(space: ConceptSpace, mode: StructureMode) -> BigUint {
    let k = space.k() as u64;
    let b = space.b() as u64;
    let functions = big_pow(b, b * k);
    match mode {
        StructureMode::Unrestricted => {
            let n = big_pow(b, k);
            // n^n
            let mut acc = BigUint::from(1u32);
            let mut i = BigUint::from(0u32);
            while i < n {
                acc *= &n;
                i += 1u32;
            }
            acc
        }
        StructureMode::Complete => big_pow(k, k) * functions,
        StructureMode::Permutation => (1..=k).map(BigUint::from).product::<BigUint>() * functions,
    }
}

fn check_cap(space: ConceptSpace, mode: StructureMode, cap: u64) -> Result<u64, AlphaError> {
    let capacity = |needed: String| AlphaError::Capacity { mode, needed, cap };
    if mode == StructureMode::Unrestricted {
        // Avoid materializing n^n when n is huge.
        let n = space
            .size()
            .filter(|&n| n <= 64)
            .ok_or_else(|| capacity(format!("({0}^{1})^({0}^{1})", space.b(), space.k())))?;
        let total = alpha_count(space, mode);
        return u64::try_from(&total).ok().filter(|&t| t <= cap).ok_or_else(|| {
            capacity(if n > 20 {
                format!("{n}^{n}")
            } else {
                total.to_string()
            })
        });
    }
    if space.k() > 64 || space.b() > 64 {
        let (k, b) = (space.k(), space.b());
        return Err(capacity(match mode {
            StructureMode::Complete => format!("{k}^{k}*({b}^{b})^{k}"),
            _ => format!("{k}!*({b}^{b})^{k}"),
        }));
    }
    let total = alpha_count(space, mode);
    u64::try_from(&total)
        .ok()
        .filter(|&t| t <= cap)
        .ok_or_else(|| capacity(total.to_string()))
}

struct StructuredEnum {
    space: ConceptSpace,
    structures: Vec<Vec<usize>>,
    per_structure: u64,
}

impl StructuredEnum {
    fn new(space: ConceptSpace, mode: StructureMode) -> Self {
        let structures = match mode {
            StructureMode::Permutation => permutations(space.k()),
            _ => tuples(space.k()),
        };
        let b = space.b() as u64;
        StructuredEnum {
            space,
            structures,
            per_structure: b.pow(space.onehot_width() as u32),
        }
    }

    fn total(&self) -> u64 {
        self.structures.len() as u64 * self.per_structure
    }

    fn targets_at(&self, idx: u64, out: &mut [usize]) {
        let b = self.space.b() as usize;
        let sigma = &self.structures[(idx / self.per_structure) as usize];
        let mut f = idx % self.per_structure;
        for y in (0..out.len()).rev() {
            let v = (f % b as u64) as usize;
            f /= b as u64;
            out[y] = sigma[y / b] * b + v;
        }
    }

    fn at(&self, idx: u64) -> AlphaMap {
        let mut targets = vec![0; self.space.onehot_width()];
        self.targets_at(idx, &mut targets);
        AlphaMap {
            space: self.space,
            targets,
        }
    }
}

/// Every structured map of `mode`, each exactly once, in the documented
/// order.
pub fn enumerate_structured(
    space: ConceptSpace,
    mode: StructureMode,
    cap: u64,
) -> Result<impl Iterator<Item = AlphaMap>, AlphaError> {
    if mode == StructureMode::Unrestricted {
        return Err(AlphaError::Invalid(
            "unrestricted maps have no block structure".into(),
        ));
    }
    check_cap(space, mode, cap)?;
    let e = StructuredEnum::new(space, mode);
    Ok((0..e.total()).map(move |i| e.at(i)))
}

/// Every function on the concept space, tables in lexicographic order.
pub fn enumerate_unrestricted(
    space: ConceptSpace,
    cap: u64,
) -> Result<impl Iterator<Item = UnrestrictedAlpha>, AlphaError> {
    let total = check_cap(space, StructureMode::Unrestricted, cap)?;
    let n = space.size().unwrap();
    Ok((0..total).map(move |mut idx| {
        let mut table = vec![0u64; n as usize];
        for slot in table.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        UnrestrictedAlpha { space, table }
    }))
}

pub fn enumerate_alphas(
    space: ConceptSpace,
    mode: StructureMode,
    cap: u64,
) -> Result<Box<dyn Iterator<Item = Alpha>>, AlphaError> {
    Ok(match mode {
        StructureMode::Unrestricted => Box::new(enumerate_unrestricted(space, cap)?.map(Alpha::Unrestricted)),
        _ => Box::new(enumerate_structured(space, mode, cap)?.map(Alpha::Structured)),
    })
}

/// Exact number of maps of `mode` under which every support example keeps
/// its label. Structured modes evaluate the bit-level knowledge on
/// `A ⊗ onehot(c*)`, unrestricted mode compares labels of mapped vectors.
pub fn count_by_enumeration(
    k: &Knowledge,
    supp: &Support,
    mode: StructureMode,
    cap: u64,
) -> Result<BigUint, AlphaError> {
    let space = k.space();
    if mode == StructureMode::Unrestricted {
        return count_unrestricted(k, supp, cap);
    }
    check_cap(space, mode, cap)?;
    let formula = k.require_bit_formula()?;
    let examples: Vec<(Vec<usize>, Vec<bool>)> = supp
        .entries()
        .iter()
        .map(|(c, y)| {
            let cols = c
                .values()
                .iter()
                .enumerate()
                .map(|(j, &v)| space.bit(j, v))
                .collect();
            Ok((cols, k.label_bits(y)?))
        })
        .collect::<Result<_, KnowledgeError>>()?;
    let e = StructuredEnum::new(space, mode);
    let n = space.onehot_width();
    let count = (0..e.total())
        .into_par_iter()
        .map_init(
            || (vec![0usize; n], vec![false; n]),
            |(targets, bits), idx| {
                e.targets_at(idx, targets);
                for (cols, expected) in &examples {
                    bits.iter_mut().for_each(|b| *b = false);
                    for &col in cols {
                        bits[targets[col]] = true;
                    }
                    for (ind, &want) in formula.iter().zip(expected) {
                        if ind.expr.eval(bits.as_slice()) != Ok(want) {
                            return 0u64;
                        }
                    }
                }
                1
            },
        )
        .sum::<u64>();
    Ok(BigUint::from(count))
}

fn count_unrestricted(k: &Knowledge, supp: &Support, cap: u64) -> Result<BigUint, AlphaError> {
    let space = k.space();
    check_cap(space, StructureMode::Unrestricted, cap)?;
    let n = space.size().unwrap() as usize;
    let labels: Vec<_> = space
        .vectors()
        .map(|c| k.label_of(&c))
        .collect::<Result<_, _>>()?;
    // allowed[c][t]: mapping entry c to t keeps c's label. Entries outside
    // the support accept every target.
    let mut allowed = vec![vec![true; n]; n];
    for (c, y) in supp.entries() {
        let i = space.index_of(c) as usize;
        for t in 0..n {
            allowed[i][t] = &labels[t] == y;
        }
    }
    let total = (n as u64).pow(n as u32);
    let per_first = total / n as u64;
    let count: u64 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut digits = vec![0usize; n];
            digits[0] = first;
            let mut hits = 0u64;
            for _ in 0..per_first {
                if digits.iter().enumerate().all(|(c, &t)| allowed[c][t]) {
                    hits += 1;
                }
                for d in (1..n).rev() {
                    digits[d] += 1;
                    if digits[d] < n {
                        break;
                    }
                    digits[d] = 0;
                }
            }
            hits
        })
        .sum();
    Ok(BigUint::from(count))
}

/// `∏_{c∈supp} |E(c)| · (b^k)^(b^k − |supp|)`: the number of unrestricted
/// maps that keep every support label.
pub fn count_closed_form(k: &Knowledge, supp: &Support, cap: u64) -> Result<BigUint, AlphaError> {
    let sizes = class_sizes(k, cap)?;
    let n = k.space().size().unwrap();
    let mut count = BigUint::from(1u32);
    for (_, y) in supp.entries() {
        count *= sizes[y];
    }
    let free = n - supp.len() as u64;
    count *= BigUint::from(n).pow(free as u32);
    Ok(count)
}

/// A task admits shortcuts iff more than one map is optimal.
pub fn is_rs_affected(count: &BigUint) -> bool {
    *count > BigUint::from(1u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::BoolExpr;
    use crate::knowledge::{exhaustive_support, LabelTerm};

    fn space(k: usize, b: u32) -> ConceptSpace {
        ConceptSpace::new(k, b).unwrap()
    }

    fn cv(v: &[u32]) -> ConceptVector {
        ConceptVector::new(v.to_vec())
    }

    fn gate(e: BoolExpr) -> Knowledge {
        Knowledge::new("k", space(3, 2), vec![LabelTerm::Bool(e)]).unwrap()
    }

    fn xor3() -> Knowledge {
        gate(BoolExpr::Xor((1..=3).map(BoolExpr::Atom).collect()))
    }

    fn and3() -> Knowledge {
        gate(BoolExpr::And((1..=3).map(BoolExpr::Atom).collect()))
    }

    fn count(k: &Knowledge, supp: &[&[u32]], mode: StructureMode) -> BigUint {
        let s = Support::new(k, supp.iter().map(|c| cv(c)).collect()).unwrap();
        count_by_enumeration(k, &s, mode, DEFAULT_ALPHA_CAP).unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        let s = space(3, 2);
        assert_eq!(
            enumerate_structured(s, StructureMode::Permutation, DEFAULT_ALPHA_CAP)
                .unwrap()
                .count(),
            384
        );
        assert_eq!(
            enumerate_structured(s, StructureMode::Complete, DEFAULT_ALPHA_CAP)
                .unwrap()
                .count(),
            1728
        );
        assert_eq!(
            enumerate_unrestricted(space(2, 2), DEFAULT_ALPHA_CAP)
                .unwrap()
                .count(),
            256
        );
        assert_eq!(
            alpha_count(s, StructureMode::Unrestricted),
            BigUint::from(16_777_216u64)
        );
    }

    #[test]
    fn enumeration_is_distinct_and_valid() {
        let s = space(3, 2);
        for mode in [StructureMode::Complete, StructureMode::Permutation] {
            let all: Vec<_> = enumerate_structured(s, mode, DEFAULT_ALPHA_CAP)
                .unwrap()
                .collect();
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.iter().all(|a| a.satisfies(mode)));
            // first structure, every value sent to value 0
            let first: &[usize] = match mode {
                StructureMode::Permutation => &[0, 0, 2, 2, 4, 4],
                _ => &[0, 0, 0, 0, 0, 0],
            };
            assert_eq!(all[0].targets(), first);
        }
    }

    #[test]
    fn capacity_error() {
        let r = enumerate_structured(space(2, 10), StructureMode::Permutation, DEFAULT_ALPHA_CAP);
        assert!(matches!(r.err(), Some(AlphaError::Capacity { .. })));
        let r = enumerate_unrestricted(space(4, 2), DEFAULT_ALPHA_CAP);
        assert!(matches!(r.err(), Some(AlphaError::Capacity { .. })));
    }

    #[test]
    fn apply_examples() {
        let s = space(3, 2);
        let id = AlphaMap::identity(s);
        for c in s.vectors() {
            assert_eq!(id.apply(&c).unwrap(), s.onehot(&c));
        }
        let s2 = space(2, 3);
        let swap = AlphaMap::from_targets(s2, vec![3, 4, 5, 0, 1, 2]).unwrap();
        assert_eq!(swap.apply_decoded(&cv(&[2, 0])).unwrap(), Some(cv(&[0, 2])));
        let not_first = AlphaMap::from_targets(s, vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert_eq!(
            not_first.apply_decoded(&cv(&[0, 1, 1])).unwrap(),
            Some(cv(&[1, 1, 1]))
        );
    }

    #[test]
    fn complete_mode_may_break_one_hot() {
        let s = space(2, 2);
        // both ground-truth blocks route into predicted block 0
        let a = AlphaMap::from_targets(s, vec![0, 1, 1, 0]).unwrap();
        assert!(a.satisfies(StructureMode::Complete));
        assert!(!a.satisfies(StructureMode::Permutation));
        assert_eq!(a.apply(&cv(&[0, 0])).unwrap(), vec![true, true, false, false]);
        assert_eq!(a.apply_decoded(&cv(&[0, 0])).unwrap(), None);
    }

    #[test]
    fn matrix_validation() {
        let s = space(2, 2);
        let id = AlphaMap::identity(s);
        assert_eq!(AlphaMap::from_matrices(s, &id.o(), &id.a()).unwrap(), id);
        let mut bad_a = id.a();
        bad_a[1][0] = true;
        assert!(AlphaMap::from_matrices(s, &id.o(), &bad_a).is_err());
        let mut bad_o = id.o();
        bad_o[0][1] = true;
        assert!(AlphaMap::from_matrices(s, &bad_o, &id.a()).is_err());
    }

    #[test]
    fn published_counts() {
        let all: Vec<Vec<u32>> = space(3, 2).vectors().map(|c| c.values().to_vec()).collect();
        let all: Vec<&[u32]> = all.iter().map(|v| v.as_slice()).collect();
        let p = StructureMode::Permutation;
        assert_eq!(count(&and3(), &all, p), BigUint::from(6u32));
        assert_eq!(count(&xor3(), &all, p), BigUint::from(24u32));
        for c in &all {
            assert_eq!(count(&xor3(), &[c], p), BigUint::from(192u32), "{c:?}");
        }
        assert_eq!(count(&and3(), &[&[1, 1, 1]], p), BigUint::from(48u32));
        assert_eq!(count(&and3(), &[&[0, 0, 0]], p), BigUint::from(336u32));
    }

    #[test]
    fn closed_form_trivial_cases() {
        let s = space(2, 2);
        let injective = Knowledge::new(
            "id",
            s,
            vec![
                LabelTerm::Bool(BoolExpr::Atom(1)),
                LabelTerm::Bool(BoolExpr::Atom(2)),
            ],
        )
        .unwrap();
        let supp = exhaustive_support(&injective, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(
            count_closed_form(&injective, &supp, DEFAULT_ENUMERATION_CAP).unwrap(),
            BigUint::from(1u32)
        );
        let constant = gate(BoolExpr::Const(true));
        let supp = exhaustive_support(&constant, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(
            count_closed_form(&constant, &supp, DEFAULT_ENUMERATION_CAP).unwrap(),
            BigUint::from(8u32).pow(8)
        );
        let supp = exhaustive_support(&xor3(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(
            count_closed_form(&xor3(), &supp, DEFAULT_ENUMERATION_CAP).unwrap(),
            BigUint::from(65536u32)
        );
    }

    #[test]
    fn unrestricted_matches_closed_form_small() {
        let s = space(2, 2);
        let k = Knowledge::new(
            "or",
            s,
            vec![LabelTerm::Bool(BoolExpr::Or(vec![
                BoolExpr::Atom(1),
                BoolExpr::Atom(2),
            ]))],
        )
        .unwrap();
        for supp in [vec![], vec![cv(&[0, 0])], vec![cv(&[1, 0]), cv(&[1, 1])]] {
            let supp = Support::new(&k, supp).unwrap();
            assert_eq!(
                count_by_enumeration(&k, &supp, StructureMode::Unrestricted, DEFAULT_ALPHA_CAP).unwrap(),
                count_closed_form(&k, &supp, DEFAULT_ENUMERATION_CAP).unwrap()
            );
        }
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "PERMUTATION".parse::<StructureMode>(),
            Ok(StructureMode::Permutation)
        );
        assert!("blah".parse::<StructureMode>().is_err());
        assert_eq!(StructureMode::default(), StructureMode::Permutation);
        assert!(is_rs_affected(&BigUint::from(2u32)));
        assert!(!is_rs_affected(&BigUint::from(1u32)));
    }
}
