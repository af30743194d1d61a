//! CNF encoding whose models are exactly the shortcut maps of a task.
//!
//! Variables are numbered contiguously: the `k*k` entries of `O`
//! (row-major), the `(kb)*(kb)` entries of `A` (row-major), the `kb`
//! predicted bits `ĉ` of each support example in order, then Tseitin
//! auxiliaries. Every non-`A` variable is a function of the `A` variables,
//! so the plain model count equals the count projected on `A`.

use thiserror::Error;

use crate::alphamap::{AlphaMap, StructureMode};
use crate::formula::{emit_dimacs, tseitin, BoolExpr, Clause, CnfFormula, FormulaError, Lit};
use crate::knowledge::{Knowledge, KnowledgeError, Support};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("exactly-one over an empty variable list")]
    EmptyExactlyOne,
    #[error("the CNF encoding does not support {0} mode")]
    UnsupportedMode(StructureMode),
    #[error("support is empty")]
    EmptySupport,
    #[error("encoding needs {needed} predicted-concept variables, above the bound {cap}")]
    Capacity { needed: u64, cap: u64 },
    #[error("side constraint mentions variable {0}, outside the O and A variables")]
    SideConstraint(u32),
    #[error("model has {got} variables, expected at least {expected}")]
    ShortModel { got: usize, expected: usize },
    #[error("model does not encode a map: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Knowledge(#[from] KnowledgeError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Pairwise exactly-one: one at-least-one clause plus every binary
/// at-most-one clause.
pub fn exactly_one(vars: &[u32]) -> Result<Vec<Clause>, EncodeError> {
    if vars.is_empty() {
        return Err(EncodeError::EmptyExactlyOne);
    }
    let mut out = vec![Clause::new(vars.iter().map(|&v| Lit::pos(v)).collect())?];
    for (i, &a) in vars.iter().enumerate() {
        for &b in &vars[i + 1..] {
            out.push(Clause::new(vec![Lit::neg(a), Lit::neg(b)])?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarBook {
    k: usize,
    b: usize,
    examples: usize,
    aux_count: u32,
}

impl VarBook {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.b
    }

    fn width(&self) -> usize {
        self.k * self.b
    }

    pub fn o_var(&self, i: usize, j: usize) -> u32 {
        (1 + i * self.k + j) as u32
    }

    pub fn a_var(&self, x: usize, y: usize) -> u32 {
        (1 + self.k * self.k + x * self.width() + y) as u32
    }

    pub fn chat_var(&self, example: usize, x: usize) -> u32 {
        let n = self.width();
        (1 + self.k * self.k + n * n + example * n + x) as u32
    }

    pub fn o_range(&self) -> (u32, u32) {
        (1, (self.k * self.k) as u32)
    }

    pub fn a_range(&self) -> (u32, u32) {
        let n = self.width();
        (self.a_var(0, 0), self.a_var(n - 1, n - 1))
    }

    /// Empty (`start > end`) when the support is empty.
    pub fn chat_range(&self) -> (u32, u32) {
        (self.chat_var(0, 0), self.chat_var(self.examples, 0) - 1)
    }

    /// Empty (`start > end`) when no auxiliary was needed.
    pub fn aux_range(&self) -> (u32, u32) {
        let start = self.chat_var(self.examples, 0);
        (start, start + self.aux_count - 1)
    }

    pub fn num_vars(&self) -> u32 {
        self.aux_range().1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingProblem {
    pub cnf: CnfFormula,
    pub projection: Vec<u32>,
    pub book: VarBook,
    pub mode: StructureMode,
}

impl CountingProblem {
    pub fn support_size(&self) -> usize {
        self.book.examples
    }

    /// Extra clauses over the `O` and `A` variables only, such as concept
    /// supervision. Restricting them to those variables keeps every other
    /// variable functionally determined.
    pub fn add_side_constraints(&mut self, clauses: Vec<Clause>) -> Result<(), EncodeError> {
        let (_, a_end) = self.book.a_range();
        for c in &clauses {
            if let Some(l) = c.lits().iter().find(|l| l.var() > a_end) {
                return Err(EncodeError::SideConstraint(l.var()));
            }
        }
        self.cnf.extend(clauses);
        Ok(())
    }

    /// Reads the map encoded by a model (bit `v - 1` is variable `v`).
    pub fn alpha_of(&self, model: &[bool], k: &Knowledge) -> Result<AlphaMap, EncodeError> {
        let n = self.book.width();
        let needed = self.book.a_range().1 as usize;
        if model.len() < needed {
            return Err(EncodeError::ShortModel {
                got: model.len(),
                expected: needed,
            });
        }
        let a: Vec<Vec<bool>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| model[self.book.a_var(x, y) as usize - 1])
                    .collect()
            })
            .collect();
        let o: Vec<Vec<bool>> = (0..self.book.k)
            .map(|i| {
                (0..self.book.k)
                    .map(|j| model[self.book.o_var(i, j) as usize - 1])
                    .collect()
            })
            .collect();
        AlphaMap::from_matrices(k.space(), &o, &a).map_err(|e| EncodeError::InvalidModel(e.to_string()))
    }
}

/// Bound on `|supp| * k * b`, the number of per-example predicted bits.
pub const DEFAULT_ENCODE_CAP: u64 = 1 << 22;

pub fn build_counting_cnf(
    k: &Knowledge,
    supp: &Support,
    mode: StructureMode,
) -> Result<CountingProblem, EncodeError> {
    if mode == StructureMode::Unrestricted {
        return Err(EncodeError::UnsupportedMode(mode));
    }
    if supp.is_empty() {
        return Err(EncodeError::EmptySupport);
    }
    let formula = k.require_bit_formula()?;
    let space = k.space();
    let needed = supp.len() as u64 * space.k() as u64 * space.b() as u64;
    if needed > DEFAULT_ENCODE_CAP {
        return Err(EncodeError::Capacity {
            needed,
            cap: DEFAULT_ENCODE_CAP,
        });
    }
    let mut book = VarBook {
        k: space.k(),
        b: space.b() as usize,
        examples: supp.len(),
        aux_count: 0,
    };
    let (kk, b, n) = (book.k, book.b, book.width());
    let mut cnf = CnfFormula::empty(book.aux_range().0 - 1);

    // O[i,j] <-> OR of block (i,j) of A
    for i in 0..kk {
        for j in 0..kk {
            let o = Lit::pos(book.o_var(i, j));
            let block: Vec<Lit> = (i * b..(i + 1) * b)
                .flat_map(|x| (j * b..(j + 1) * b).map(move |y| (x, y)))
                .map(|(x, y)| Lit::pos(book.a_var(x, y)))
                .collect();
            for &a in &block {
                cnf.push(Clause::new(vec![!a, o])?);
            }
            cnf.push(Clause::new(std::iter::once(!o).chain(block).collect())?);
        }
    }
    for y in 0..n {
        let col: Vec<u32> = (0..n).map(|x| book.a_var(x, y)).collect();
        cnf.extend(exactly_one(&col)?);
    }
    // ĉ_d[x] <-> OR_j A[x, j*b + c*_j]
    for (d, (c, _)) in supp.entries().iter().enumerate() {
        let cols: Vec<usize> = c
            .values()
            .iter()
            .enumerate()
            .map(|(j, &v)| space.bit(j, v))
            .collect();
        for x in 0..n {
            let h = Lit::pos(book.chat_var(d, x));
            let ins: Vec<Lit> = cols.iter().map(|&y| Lit::pos(book.a_var(x, y))).collect();
            for &a in &ins {
                cnf.push(Clause::new(vec![!a, h])?);
            }
            cnf.push(Clause::new(std::iter::once(!h).chain(ins).collect())?);
        }
    }
    let mut next_aux = book.aux_range().0;
    for (d, (_, y)) in supp.entries().iter().enumerate() {
        let want = k.label_bits(y)?;
        for (ind, &value) in formula.iter().zip(&want) {
            let expr = ind
                .expr
                .substitute(&|atom| BoolExpr::Atom(book.chat_var(d, atom as usize - 1)));
            let t = tseitin(&expr, next_aux)?;
            next_aux += t.aux_count;
            cnf.extend(t.cnf.clauses().iter().cloned());
            cnf.push(Clause::new(vec![if value { t.root } else { !t.root }])?);
        }
    }
    book.aux_count = next_aux - book.aux_range().0;
    cnf.set_num_vars(book.num_vars())?;
    for j in 0..kk {
        let col: Vec<u32> = (0..kk).map(|i| book.o_var(i, j)).collect();
        cnf.extend(exactly_one(&col)?);
    }
    if mode == StructureMode::Permutation {
        for i in 0..kk {
            let row: Vec<u32> = (0..kk).map(|j| book.o_var(i, j)).collect();
            cnf.extend(exactly_one(&row)?);
        }
    }
    let (a0, a1) = book.a_range();
    Ok(CountingProblem {
        cnf,
        projection: (a0..=a1).collect(),
        book,
        mode,
    })
}

fn range_text(name: &str, (lo, hi): (u32, u32)) -> String {
    if lo > hi {
        format!("{name} none")
    } else {
        format!("{name} {lo}..{hi}")
    }
}

/// DIMACS text led by the `c ind` projection line and the variable map.
pub fn export_problem(p: &CountingProblem) -> String {
    let ind: Vec<String> = p.projection.iter().map(u32::to_string).collect();
    let b = &p.book;
    let comments = vec![
        format!("ind {} 0", ind.join(" ")),
        format!("mode {}", p.mode),
        format!("k {} b {} support {}", b.k, b.b, b.examples),
        range_text("o row-major", b.o_range()),
        range_text("a row-major", b.a_range()),
        range_text("chat per-example", b.chat_range()),
        range_text("aux", b.aux_range()),
    ];
    emit_dimacs(&p.cnf, &comments)
}
