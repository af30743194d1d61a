//! Tseitin conversion of boolean expressions into definitional CNF.
//!
//! Every gate gets one auxiliary variable defined by a full biconditional,
//! so each assignment to the original atoms extends to exactly one
//! assignment of the auxiliaries. `Not` folds into literal polarity and
//! constants are propagated through gates before any variable is allocated.

use super::{BoolExpr, Clause, CnfFormula, FormulaError, Lit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TseitinCnf {
    pub cnf: CnfFormula,
    pub root: Lit,
    pub aux_count: u32,
}

enum Node {
    Const(bool),
    Lit(Lit),
}

struct Builder {
    next: u32,
    clauses: Vec<Clause>,
}

impl Builder {
    fn fresh(&mut self) -> Lit {
        let v = self.next;
        self.next += 1;
        Lit::pos(v)
    }

    fn add(&mut self, lits: impl IntoIterator<Item = Lit>) {
        if let Some(c) = Clause::normalized(lits) {
            self.clauses.push(c);
        }
    }

    fn convert(&mut self, e: &BoolExpr) -> Result<Node, FormulaError> {
        Ok(match e {
            BoolExpr::Const(v) => Node::Const(*v),
            BoolExpr::Atom(v) => Node::Lit(Lit::pos(*v)),
            BoolExpr::Not(inner) => match self.convert(inner)? {
                Node::Const(v) => Node::Const(!v),
                Node::Lit(l) => Node::Lit(!l),
            },
            BoolExpr::And(es) => self.junction(es, true)?,
            BoolExpr::Or(es) => self.junction(es, false)?,
            BoolExpr::Xor(es) => {
                let mut parity = false;
                let mut acc: Option<Lit> = None;
                for child in es {
                    match self.convert(child)? {
                        Node::Const(v) => parity ^= v,
                        Node::Lit(l) => {
                            acc = Some(match acc {
                                None => l,
                                Some(a) => self.xor_gate(a, l),
                            })
                        }
                    }
                }
                match acc {
                    None => Node::Const(parity),
                    Some(l) if parity => Node::Lit(!l),
                    Some(l) => Node::Lit(l),
                }
            }
            BoolExpr::Iff(a, b) => match (self.convert(a)?, self.convert(b)?) {
                (Node::Const(x), Node::Const(y)) => Node::Const(x == y),
                (Node::Const(c), Node::Lit(l)) | (Node::Lit(l), Node::Const(c)) => {
                    Node::Lit(if c { l } else { !l })
                }
                // a <-> b  ==  !(a xor b)
                (Node::Lit(x), Node::Lit(y)) => Node::Lit(!self.xor_gate(x, y)),
            },
            BoolExpr::Eq(..) => return Err(FormulaError::NonBoolean("Eq")),
        })
    }

    /// `and == true` builds a conjunction, otherwise a disjunction.
    fn junction(&mut self, es: &[BoolExpr], and: bool) -> Result<Node, FormulaError> {
        let mut lits: Vec<Lit> = Vec::new();
        for child in es {
            match self.convert(child)? {
                // absorbing element
                Node::Const(v) if v != and => return Ok(Node::Const(v)),
                Node::Const(_) => {}
                Node::Lit(l) => {
                    if lits.contains(&!l) {
                        return Ok(Node::Const(!and));
                    }
                    if !lits.contains(&l) {
                        lits.push(l);
                    }
                }
            }
        }
        Ok(match lits.len() {
            0 => Node::Const(and),
            1 => Node::Lit(lits[0]),
            _ => {
                let g = self.fresh();
                if and {
                    for &l in &lits {
                        self.add([!g, l]);
                    }
                    self.add(std::iter::once(g).chain(lits.iter().map(|&l| !l)));
                } else {
                    for &l in &lits {
                        self.add([g, !l]);
                    }
                    self.add(std::iter::once(!g).chain(lits.iter().copied()));
                }
                Node::Lit(g)
            }
        })
    }

    fn xor_gate(&mut self, a: Lit, b: Lit) -> Lit {
        let g = self.fresh();
        self.add([!g, a, b]);
        self.add([!g, !a, !b]);
        self.add([g, !a, b]);
        self.add([g, a, !b]);
        g
    }
}

/// Converts `e` into definitional CNF with auxiliaries numbered
/// contiguously from `first_aux`. Asserting `root` together with the
/// returned clauses is satisfiable exactly on the atom assignments that
/// satisfy `e`.
pub fn tseitin(e: &BoolExpr, first_aux: u32) -> Result<TseitinCnf, FormulaError> {
    let max_atom = e.max_atom();
    if first_aux <= max_atom || first_aux == 0 {
        return Err(FormulaError::AuxOverlap { first_aux, max_atom });
    }
    if !e.is_boolean() {
        return Err(FormulaError::NonBoolean("Eq"));
    }
    let mut b = Builder {
        next: first_aux,
        clauses: Vec::new(),
    };
    let root = match b.convert(e)? {
        Node::Lit(l) => l,
        Node::Const(v) => {
            let g = b.fresh();
            b.add([if v { g } else { !g }]);
            g
        }
    };
    let aux_count = b.next - first_aux;
    let num_vars = if aux_count > 0 { b.next - 1 } else { max_atom };
    let cnf = CnfFormula::new(num_vars.max(max_atom), b.clauses)?;
    Ok(TseitinCnf { cnf, root, aux_count })
}
