//! Parser for sympy-style knowledge formulas.
//!
//! Accepts function syntax (`And`, `Or`, `Not`, `Xor`, `Implies`,
//! `Equivalent`, `Eq`, `Ne`, `ITE`) and Python operators with Python
//! precedence: `==`/`!=` bind loosest, then `|`, `^`, `&`, `>>`/`<<`
//! (implication), `+`/`-`, `*`, and unary `-`/`~`. Symbols are typed by
//! use: a symbol in a boolean position is the atom "concept is non-zero",
//! in an arithmetic position it is the concept value.

use thiserror::Error;

use crate::formula::{BoolExpr, IntExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct LogicError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, LogicError> {
    Err(LogicError {
        offset,
        message: message.into(),
    })
}

/// A parsed formula, boolean or integer valued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Bool(BoolExpr),
    Int(IntExpr),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(i64),
    Op(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    const OPS: [&str; 16] = [
        "==", "!=", ">>", "<<", "&", "|", "^", "~", "+", "-", "*", "(", ")", ",", "[", "]",
    ];
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i].parse().map_err(|_| LogicError {
                offset: start,
                message: "integer too large".into(),
            })?;
            out.push((start, Tok::Int(v)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(text[start..i].to_string())));
            continue;
        }
        match OPS.iter().find(|op| text[i..].starts_with(**op)) {
            Some(op) => {
                out.push((i, Tok::Op(op)));
                i += op.len();
            }
            None => return err(i, format!("unexpected character `{c}`")),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Sym(usize, String),
    Int(i64),
    Bool(bool),
    Call(usize, String, Vec<Ast>),
    Bin(usize, &'static str, Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Invert(Box<Ast>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<&'static str> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(op))) => Some(op),
            _ => None,
        }
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expect(&mut self, op: &str) -> Result<(), LogicError> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            err(self.offset(), format!("expected `{op}`"))
        }
    }

    fn binary(
        &mut self,
        ops: &[&'static str],
        next: fn(&mut Parser) -> Result<Ast, LogicError>,
    ) -> Result<Ast, LogicError> {
        let mut lhs = next(self)?;
        while let Some(op) = self.peek_op().filter(|op| ops.contains(op)) {
            let at = self.offset();
            self.pos += 1;
            let rhs = next(self)?;
            lhs = Ast::Bin(at, op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn comparison(&mut self) -> Result<Ast, LogicError> {
        self.binary(&["==", "!="], Parser::or)
    }

    fn or(&mut self) -> Result<Ast, LogicError> {
        self.binary(&["|"], Parser::xor)
    }

    fn xor(&mut self) -> Result<Ast, LogicError> {
        self.binary(&["^"], Parser::and)
    }

    fn and(&mut self) -> Result<Ast, LogicError> {
        self.binary(&["&"], Parser::shift)
    }

    fn shift(&mut self) -> Result<Ast, LogicError> {
        self.binary(&[">>", "<<"], Parser::arith)
    }

    fn arith(&mut self) -> Result<Ast, LogicError> {
        self.binary(&["+", "-"], Parser::term)
    }

    fn term(&mut self) -> Result<Ast, LogicError> {
        self.binary(&["*"], Parser::unary)
    }

    fn unary(&mut self) -> Result<Ast, LogicError> {
        match self.peek_op() {
            Some("-") => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some("~") => {
                self.pos += 1;
                Ok(Ast::Invert(Box::new(self.unary()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Ast, LogicError> {
        let at = self.offset();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return err(at, "unexpected end of formula");
        };
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(Ast::Int(v)),
            Tok::Name(n) if n == "True" => Ok(Ast::Bool(true)),
            Tok::Name(n) if n == "False" => Ok(Ast::Bool(false)),
            Tok::Name(n) => {
                if self.peek_op() != Some("(") {
                    return Ok(Ast::Sym(at, n));
                }
                self.pos += 1;
                let mut args = Vec::new();
                if self.peek_op() != Some(")") {
                    loop {
                        args.push(self.comparison()?);
                        if self.peek_op() == Some(",") {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(")")?;
                Ok(Ast::Call(at, n, args))
            }
            Tok::Op("(") => {
                let inner = self.comparison()?;
                self.expect(")")?;
                Ok(inner)
            }
            Tok::Op(op) => err(at, format!("unexpected `{op}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Bool,
    Int,
}

/// The type an expression has regardless of context, if any.
fn nature(a: &Ast) -> Option<Kind> {
    match a {
        Ast::Sym(..) => None,
        Ast::Int(_) | Ast::Neg(_) => Some(Kind::Int),
        Ast::Bool(_) | Ast::Invert(_) | Ast::Call(..) => Some(Kind::Bool),
        Ast::Bin(_, op, ..) => Some(match *op {
            "+" | "-" | "*" => Kind::Int,
            _ => Kind::Bool,
        }),
    }
}

struct Typer<'a> {
    symbols: &'a [String],
}

impl Typer<'_> {
    fn index(&self, at: usize, name: &str) -> Result<usize, LogicError> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map_or_else(|| err(at, format!("unknown symbol `{name}`")), Ok)
    }

    fn boolean(&self, a: &Ast) -> Result<BoolExpr, LogicError> {
        Ok(match a {
            Ast::Sym(at, n) => BoolExpr::Atom(self.index(*at, n)? as u32 + 1),
            Ast::Bool(v) => BoolExpr::Const(*v),
            Ast::Int(0) => BoolExpr::Const(false),
            Ast::Int(1) => BoolExpr::Const(true),
            Ast::Int(v) => return err(0, format!("integer {v} used as a truth value")),
            Ast::Invert(e) => BoolExpr::not(self.boolean(e)?),
            Ast::Neg(_) => return err(0, "negation `-` used as a truth value"),
            Ast::Bin(at, op, l, r) => match *op {
                "|" => BoolExpr::Or(self.flatten(a, "|")?),
                "&" => BoolExpr::And(self.flatten(a, "&")?),
                "^" => BoolExpr::Xor(self.flatten(a, "^")?),
                ">>" => BoolExpr::implies(self.boolean(l)?, self.boolean(r)?),
                "<<" => BoolExpr::implies(self.boolean(r)?, self.boolean(l)?),
                "==" => self.equality(l, r)?,
                "!=" => BoolExpr::not(self.equality(l, r)?),
                _ => return err(*at, format!("arithmetic `{op}` used as a truth value")),
            },
            Ast::Call(at, name, args) => self.call(*at, name, args)?,
        })
    }

    fn flatten(&self, a: &Ast, op: &str) -> Result<Vec<BoolExpr>, LogicError> {
        match a {
            Ast::Bin(_, o, l, r) if *o == op => {
                let mut v = self.flatten(l, op)?;
                v.extend(self.flatten(r, op)?);
                Ok(v)
            }
            _ => Ok(vec![self.boolean(a)?]),
        }
    }

    fn equality(&self, l: &Ast, r: &Ast) -> Result<BoolExpr, LogicError> {
        if nature(l) == Some(Kind::Bool) || nature(r) == Some(Kind::Bool) {
            Ok(BoolExpr::iff(self.boolean(l)?, self.boolean(r)?))
        } else {
            Ok(BoolExpr::Eq(self.integer(l)?, self.integer(r)?))
        }
    }

    fn call(&self, at: usize, name: &str, args: &[Ast]) -> Result<BoolExpr, LogicError> {
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                err(at, format!("{name} takes {n} arguments, got {}", args.len()))
            }
        };
        let all = || {
            args.iter()
                .map(|a| self.boolean(a))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(match name {
            "And" => BoolExpr::And(all()?),
            "Or" => BoolExpr::Or(all()?),
            "Xor" => BoolExpr::Xor(all()?),
            "Not" => {
                arity(1)?;
                BoolExpr::not(self.boolean(&args[0])?)
            }
            "Implies" => {
                arity(2)?;
                BoolExpr::implies(self.boolean(&args[0])?, self.boolean(&args[1])?)
            }
            "Equivalent" => {
                if args.len() < 2 {
                    return err(at, "Equivalent takes at least 2 arguments");
                }
                let es = all()?;
                BoolExpr::And(
                    es.windows(2)
                        .map(|w| BoolExpr::iff(w[0].clone(), w[1].clone()))
                        .collect(),
                )
            }
            "Eq" => {
                arity(2)?;
                self.equality(&args[0], &args[1])?
            }
            "Ne" => {
                arity(2)?;
                BoolExpr::not(self.equality(&args[0], &args[1])?)
            }
            "ITE" => {
                arity(3)?;
                let (c, t, e) = (
                    self.boolean(&args[0])?,
                    self.boolean(&args[1])?,
                    self.boolean(&args[2])?,
                );
                BoolExpr::Or(vec![
                    BoolExpr::And(vec![c.clone(), t]),
                    BoolExpr::And(vec![BoolExpr::not(c), e]),
                ])
            }
            _ => return err(at, format!("unknown function `{name}`")),
        })
    }

    fn integer(&self, a: &Ast) -> Result<IntExpr, LogicError> {
        Ok(match a {
            Ast::Sym(at, n) => IntExpr::Concept(self.index(*at, n)?),
            Ast::Int(v) => IntExpr::Const(*v),
            Ast::Bool(v) => IntExpr::Const(*v as i64),
            Ast::Neg(e) => IntExpr::Neg(Box::new(self.integer(e)?)),
            Ast::Bin(_, "+", l, r) => {
                let mut ts = match self.integer(l)? {
                    IntExpr::Add(ts) => ts,
                    t => vec![t],
                };
                ts.push(self.integer(r)?);
                IntExpr::Add(ts)
            }
            Ast::Bin(_, "-", l, r) => {
                let mut ts = match self.integer(l)? {
                    IntExpr::Add(ts) => ts,
                    t => vec![t],
                };
                ts.push(IntExpr::Neg(Box::new(self.integer(r)?)));
                IntExpr::Add(ts)
            }
            Ast::Bin(_, "*", l, r) => {
                let mut ts = match self.integer(l)? {
                    IntExpr::Mul(ts) => ts,
                    t => vec![t],
                };
                ts.push(self.integer(r)?);
                IntExpr::Mul(ts)
            }
            Ast::Bin(at, op, ..) => return err(*at, format!("logical `{op}` used as a number")),
            Ast::Invert(_) | Ast::Call(..) => return err(0, "truth value used as a number"),
        })
    }
}

fn parse_ast(text: &str) -> Result<Ast, LogicError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let ast = p.comparison()?;
    if p.pos != p.toks.len() {
        return err(p.offset(), "trailing input");
    }
    Ok(ast)
}

/// Parses a formula that must be boolean.
pub fn parse_bool(text: &str, symbols: &[String]) -> Result<BoolExpr, LogicError> {
    Typer { symbols }.boolean(&parse_ast(text)?)
}

/// Parses a formula, typing it as an integer term when it is arithmetic
/// and as a boolean otherwise. A bare symbol is boolean.
pub fn parse_term(text: &str, symbols: &[String]) -> Result<Term, LogicError> {
    let ast = parse_ast(text)?;
    let t = Typer { symbols };
    match nature(&ast) {
        Some(Kind::Int) => Ok(Term::Int(t.integer(&ast)?)),
        _ => Ok(Term::Bool(t.boolean(&ast)?)),
    }
}
