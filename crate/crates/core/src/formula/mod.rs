//! Propositional formula core: literals, clauses, CNF formulas, expression
//! trees, DIMACS I/O, Tseitin conversion and seeded random ℓ-CNF generation.

mod dimacs;
mod expr;
mod random;
mod tseitin;

use std::fmt;

use thiserror::Error;

pub use dimacs::{emit_dimacs, parse_dimacs, DimacsFile, ParseError};
pub use expr::{BoolExpr, EvalContext, IntExpr};
pub use random::{random_lcnf, SeededRng};
pub use tseitin::{tseitin, TseitinCnf};

/// Errors raised while constructing or evaluating formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause must contain at least one literal")]
    EmptyClause,
    #[error("clause repeats literal {0}")]
    DuplicateLiteral(i64),
    #[error("variable {var} exceeds declared variable count {num_vars}")]
    VariableOutOfRange { var: u32, num_vars: u32 },
    #[error("assignment does not cover variable {0}")]
    MissingVariable(u32),
    #[error("concept index {0} is not available in this context")]
    MissingConcept(usize),
    #[error("expression contains a non-boolean node ({0})")]
    NonBoolean(&'static str),
    #[error("first auxiliary variable {first_aux} does not exceed atom {max_atom}")]
    AuxOverlap { first_aux: u32, max_atom: u32 },
    #[error("clause width {width} is invalid for {vars} variables")]
    InvalidWidth { width: usize, vars: usize },
    #[error("cannot draw {requested} distinct clauses; only {available} exist")]
    TooManyClauses { requested: usize, available: u128 },
    #[error("clause count must be at least 1")]
    NoClauses,
}

/// A propositional literal: a variable index (1-based) with a polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    var: u32,
    positive: bool,
}

impl Lit {
    /// Panics if `var` is zero.
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variable indices start at 1");
        Lit { var, positive }
    }

    pub fn pos(var: u32) -> Self {
        Lit::new(var, true)
    }

    pub fn neg(var: u32) -> Self {
        Lit::new(var, false)
    }

    /// Builds a literal from its signed DIMACS form; `0` yields `None`.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Lit::new(value.unsigned_abs() as u32, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// Value of the literal when its variable takes `value`.
    pub fn eval(self, value: bool) -> bool {
        value == self.positive
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals. Never empty, never repeats a literal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Lit>);

impl Clause {
    pub fn new(lits: Vec<Lit>) -> Result<Self, FormulaError> {
        if lits.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        for (i, l) in lits.iter().enumerate() {
            if lits[..i].contains(l) {
                return Err(FormulaError::DuplicateLiteral(l.to_dimacs()));
            }
        }
        Ok(Clause(lits))
    }

    /// Drops repeated literals and returns `None` for tautologies, which
    /// carry no constraint. Used by the clause generators.
    pub(crate) fn normalized(lits: impl IntoIterator<Item = Lit>) -> Option<Self> {
        let mut out: Vec<Lit> = Vec::new();
        for l in lits {
            if out.contains(&!l) {
                return None;
            }
            if !out.contains(&l) {
                out.push(l);
            }
        }
        assert!(!out.is_empty(), "generated an empty clause");
        Some(Clause(out))
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> u32 {
        self.0.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, FormulaError> {
        let mut sat = false;
        for l in &self.0 {
            sat |= l.eval(a.value(l.var)?);
        }
        Ok(sat)
    }
}

/// A conjunction of clauses over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for c in &clauses {
            let var = c.max_var();
            if var > num_vars {
                return Err(FormulaError::VariableOutOfRange { var, num_vars });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn empty(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    /// Appends a clause, growing the variable count if needed.
    pub fn push(&mut self, clause: Clause) {
        self.num_vars = self.num_vars.max(clause.max_var());
        self.clauses.push(clause);
    }

    pub fn extend(&mut self, clauses: impl IntoIterator<Item = Clause>) {
        for c in clauses {
            self.push(c);
        }
    }

    pub fn set_num_vars(&mut self, num_vars: u32) -> Result<(), FormulaError> {
        if let Some(var) = self.clauses.iter().map(Clause::max_var).max() {
            if var > num_vars {
                return Err(FormulaError::VariableOutOfRange { var, num_vars });
            }
        }
        self.num_vars = num_vars;
        Ok(())
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, FormulaError> {
        if self.num_vars > 0 {
            a.value(self.num_vars)?;
        }
        for c in &self.clauses {
            if !c.eval(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The formula as an expression tree over the same atoms.
    pub fn to_expr(&self) -> BoolExpr {
        BoolExpr::And(
            self.clauses
                .iter()
                .map(|c| {
                    BoolExpr::Or(
                        c.lits()
                            .iter()
                            .map(|l| {
                                let atom = BoolExpr::Atom(l.var());
                                if l.is_positive() {
                                    atom
                                } else {
                                    BoolExpr::not(atom)
                                }
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// A total truth assignment to variables `1..=len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    /// `bits[i]` is the value of variable `i + 1`.
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    /// Decodes the low `n` bits of `mask`: bit `i` is variable `i + 1`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Assignment((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, var: u32) -> Result<bool, FormulaError> {
        (var as usize)
            .checked_sub(1)
            .and_then(|i| self.0.get(i).copied())
            .ok_or(FormulaError::MissingVariable(var))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl EvalContext for Assignment {
    fn atom(&self, var: u32) -> Option<bool> {
        self.value(var).ok()
    }
}
