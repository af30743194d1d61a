use std::fmt;

use super::FormulaError;

/// Supplies atom and concept values to [`BoolExpr::eval`].
///
/// Atoms are boolean variables (1-based). Concepts are integer-valued
/// positions (0-based) and only exist for concept-level knowledge; plain
/// assignments leave [`EvalContext::concept`] unimplemented.
pub trait EvalContext {
    fn atom(&self, var: u32) -> Option<bool>;

    fn concept(&self, _index: usize) -> Option<i64> {
        None
    }
}

impl EvalContext for [bool] {
    fn atom(&self, var: u32) -> Option<bool> {
        (var as usize).checked_sub(1).and_then(|i| self.get(i).copied())
    }
}

impl EvalContext for Vec<bool> {
    fn atom(&self, var: u32) -> Option<bool> {
        self.as_slice().atom(var)
    }
}

/// Boolean expression tree.
///
/// `Eq` compares two integer terms over concept values; it is only
/// meaningful for concept-level knowledge and is rejected by the Tseitin
/// conversion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Const(bool),
    Atom(u32),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
    Xor(Vec<BoolExpr>),
    Iff(Box<BoolExpr>, Box<BoolExpr>),
    Eq(IntExpr, IntExpr),
}

/// Integer term over concept values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntExpr {
    Const(i64),
    Concept(usize),
    Add(Vec<IntExpr>),
    Mul(Vec<IntExpr>),
    Neg(Box<IntExpr>),
}

impl BoolExpr {
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> BoolExpr {
        BoolExpr::Not(Box::new(e))
    }

    pub fn iff(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::Iff(Box::new(a), Box::new(b))
    }

    pub fn implies(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::Or(vec![BoolExpr::not(a), b])
    }

    pub fn ne(a: IntExpr, b: IntExpr) -> BoolExpr {
        BoolExpr::not(BoolExpr::Eq(a, b))
    }

    pub fn eval(&self, ctx: &(impl EvalContext + ?Sized)) -> Result<bool, FormulaError> {
        Ok(match self {
            BoolExpr::Const(v) => *v,
            BoolExpr::Atom(v) => ctx.atom(*v).ok_or(FormulaError::MissingVariable(*v))?,
            BoolExpr::Not(e) => !e.eval(ctx)?,
            BoolExpr::And(es) => {
                for e in es {
                    if !e.eval(ctx)? {
                        return Ok(false);
                    }
                }
                true
            }
            BoolExpr::Or(es) => {
                for e in es {
                    if e.eval(ctx)? {
                        return Ok(true);
                    }
                }
                false
            }
            BoolExpr::Xor(es) => {
                let mut parity = false;
                for e in es {
                    parity ^= e.eval(ctx)?;
                }
                parity
            }
            BoolExpr::Iff(a, b) => a.eval(ctx)? == b.eval(ctx)?,
            BoolExpr::Eq(a, b) => a.eval(ctx)? == b.eval(ctx)?,
        })
    }

    /// True when the tree contains no `Eq` node.
    pub fn is_boolean(&self) -> bool {
        match self {
            BoolExpr::Const(_) | BoolExpr::Atom(_) => true,
            BoolExpr::Not(e) => e.is_boolean(),
            BoolExpr::And(es) | BoolExpr::Or(es) | BoolExpr::Xor(es) => es.iter().all(BoolExpr::is_boolean),
            BoolExpr::Iff(a, b) => a.is_boolean() && b.is_boolean(),
            BoolExpr::Eq(..) => false,
        }
    }

    pub fn max_atom(&self) -> u32 {
        match self {
            BoolExpr::Const(_) | BoolExpr::Eq(..) => 0,
            BoolExpr::Atom(v) => *v,
            BoolExpr::Not(e) => e.max_atom(),
            BoolExpr::And(es) | BoolExpr::Or(es) | BoolExpr::Xor(es) => {
                es.iter().map(BoolExpr::max_atom).max().unwrap_or(0)
            }
            BoolExpr::Iff(a, b) => a.max_atom().max(b.max_atom()),
        }
    }

    /// Concept indices referenced through atoms (`atom - 1`) and `Eq` terms.
    pub fn concepts(&self, out: &mut Vec<usize>) {
        match self {
            BoolExpr::Const(_) => {}
            BoolExpr::Atom(v) => push_unique(out, *v as usize - 1),
            BoolExpr::Not(e) => e.concepts(out),
            BoolExpr::And(es) | BoolExpr::Or(es) | BoolExpr::Xor(es) => {
                es.iter().for_each(|e| e.concepts(out))
            }
            BoolExpr::Iff(a, b) => {
                a.concepts(out);
                b.concepts(out);
            }
            BoolExpr::Eq(a, b) => {
                a.concepts(out);
                b.concepts(out);
            }
        }
    }

    /// Replaces every atom by the expression `f` returns for it.
    pub fn substitute(&self, f: &impl Fn(u32) -> BoolExpr) -> BoolExpr {
        match self {
            BoolExpr::Const(v) => BoolExpr::Const(*v),
            BoolExpr::Atom(v) => f(*v),
            BoolExpr::Not(e) => BoolExpr::not(e.substitute(f)),
            BoolExpr::And(es) => BoolExpr::And(es.iter().map(|e| e.substitute(f)).collect()),
            BoolExpr::Or(es) => BoolExpr::Or(es.iter().map(|e| e.substitute(f)).collect()),
            BoolExpr::Xor(es) => BoolExpr::Xor(es.iter().map(|e| e.substitute(f)).collect()),
            BoolExpr::Iff(a, b) => BoolExpr::iff(a.substitute(f), b.substitute(f)),
            BoolExpr::Eq(a, b) => BoolExpr::Eq(a.clone(), b.clone()),
        }
    }
}

fn push_unique(out: &mut Vec<usize>, i: usize) {
    if !out.contains(&i) {
        out.push(i);
    }
}

impl IntExpr {
    pub fn eval(&self, ctx: &(impl EvalContext + ?Sized)) -> Result<i64, FormulaError> {
        Ok(match self {
            IntExpr::Const(v) => *v,
            IntExpr::Concept(i) => ctx.concept(*i).ok_or(FormulaError::MissingConcept(*i))?,
            IntExpr::Add(ts) => {
                let mut s = 0i64;
                for t in ts {
                    s += t.eval(ctx)?;
                }
                s
            }
            IntExpr::Mul(ts) => {
                let mut p = 1i64;
                for t in ts {
                    p *= t.eval(ctx)?;
                }
                p
            }
            IntExpr::Neg(t) => -t.eval(ctx)?,
        })
    }

    pub fn concepts(&self, out: &mut Vec<usize>) {
        match self {
            IntExpr::Const(_) => {}
            IntExpr::Concept(i) => push_unique(out, *i),
            IntExpr::Add(ts) | IntExpr::Mul(ts) => ts.iter().for_each(|t| t.concepts(out)),
            IntExpr::Neg(t) => t.concepts(out),
        }
    }

    /// Inclusive value range when every concept ranges over `[0, max_value]`.
    pub fn bounds(&self, max_value: i64) -> (i64, i64) {
        match self {
            IntExpr::Const(v) => (*v, *v),
            IntExpr::Concept(_) => (0, max_value),
            IntExpr::Add(ts) => ts.iter().fold((0, 0), |(lo, hi), t| {
                let (a, b) = t.bounds(max_value);
                (lo + a, hi + b)
            }),
            IntExpr::Mul(ts) => ts.iter().fold((1, 1), |(lo, hi), t| {
                let (a, b) = t.bounds(max_value);
                let corners = [lo * a, lo * b, hi * a, hi * b];
                (*corners.iter().min().unwrap(), *corners.iter().max().unwrap())
            }),
            IntExpr::Neg(t) => {
                let (a, b) = t.bounds(max_value);
                (-b, -a)
            }
        }
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, es: &[BoolExpr]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")
        }
        match self {
            BoolExpr::Const(v) => write!(f, "{}", if *v { "True" } else { "False" }),
            BoolExpr::Atom(v) => write!(f, "x{v}"),
            BoolExpr::Not(e) => write!(f, "Not({e})"),
            BoolExpr::And(es) => list(f, "And", es),
            BoolExpr::Or(es) => list(f, "Or", es),
            BoolExpr::Xor(es) => list(f, "Xor", es),
            BoolExpr::Iff(a, b) => write!(f, "Equivalent({a}, {b})"),
            BoolExpr::Eq(a, b) => write!(f, "Eq({a}, {b})"),
        }
    }
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, op: &str, ts: &[IntExpr]) -> fmt::Result {
            write!(f, "(")?;
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, ")")
        }
        match self {
            IntExpr::Const(v) => write!(f, "{v}"),
            IntExpr::Concept(i) => write!(f, "c{i}"),
            IntExpr::Add(ts) => join(f, "+", ts),
            IntExpr::Mul(ts) => join(f, "*", ts),
            IntExpr::Neg(t) => write!(f, "-{t}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(n: u32) -> Vec<BoolExpr> {
        (1..=n).map(BoolExpr::Atom).collect()
    }

    #[test]
    fn xor_is_parity() {
        let e = BoolExpr::Xor(atoms(3));
        assert!(!e.eval(&vec![true, true, false]).unwrap());
        assert!(e.eval(&vec![true, true, true]).unwrap());
        assert!(!BoolExpr::Xor(vec![]).eval(&vec![]).unwrap());
    }

    #[test]
    fn iff_is_equality() {
        let e = BoolExpr::iff(BoolExpr::Atom(1), BoolExpr::Atom(2));
        assert!(e.eval(&vec![false, false]).unwrap());
        assert!(!e.eval(&vec![true, false]).unwrap());
    }

    #[test]
    fn eq_needs_concept_context() {
        let e = BoolExpr::Eq(IntExpr::Concept(0), IntExpr::Const(1));
        assert_eq!(e.eval(&vec![true]), Err(FormulaError::MissingConcept(0)));
        assert!(!e.is_boolean());
    }

    #[test]
    fn int_bounds() {
        let t = IntExpr::Add(vec![
            IntExpr::Mul(vec![IntExpr::Const(2), IntExpr::Concept(0)]),
            IntExpr::Concept(1),
        ]);
        assert_eq!(t.bounds(9), (0, 27));
        assert_eq!(IntExpr::Neg(Box::new(IntExpr::Concept(0))).bounds(9), (-9, 0));
    }
}
