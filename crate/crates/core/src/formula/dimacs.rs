//! DIMACS CNF reader and writer.
//!
//! The accepted dialect is strict: a single `p cnf V C` header, `c` comment
//! lines anywhere, clauses terminated by `0` and allowed to span lines.
//! Anything else (`%` trailers, stray tokens) is a parse error.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Clause, CnfFormula, Lit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// A parsed DIMACS document: the formula plus its comment lines, stored
/// without the leading `c ` so they can be re-emitted verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsFile {
    pub formula: CnfFormula,
    pub comments: Vec<String>,
}

impl DimacsFile {
    /// Variables listed on `c ind ... 0` lines, in order.
    pub fn projection(&self) -> Option<Vec<u32>> {
        let mut vars = Vec::new();
        let mut found = false;
        for c in &self.comments {
            let mut toks = c.split_whitespace();
            if toks.next() != Some("ind") {
                continue;
            }
            found = true;
            for t in toks {
                match t.parse::<u32>() {
                    Ok(0) => break,
                    Ok(v) => vars.push(v),
                    Err(_) => return None,
                }
            }
        }
        found.then_some(vars)
    }
}

pub fn parse_dimacs(text: &str) -> Result<DimacsFile, ParseError> {
    let mut comments = Vec::new();
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut current_start = 0usize;
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let first = toks.next().unwrap_or_default();
        if first == "c" {
            let rest = line[1..].strip_prefix([' ', '\t']).unwrap_or(&line[1..]);
            comments.push(rest.trim_end().to_string());
            continue;
        }
        if first == "p" {
            if header.is_some() {
                return Err(ParseError::new(line_no, "duplicate problem line"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(ParseError::new(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = parts[2]
                .parse::<u32>()
                .map_err(|_| ParseError::new(line_no, "invalid variable count"))?;
            let count = parts[3]
                .parse::<usize>()
                .map_err(|_| ParseError::new(line_no, "invalid clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::new(line_no, "clause data before problem line"));
        };
        for tok in line.split_whitespace() {
            if tok.starts_with('%') {
                return Err(ParseError::new(line_no, "`%` trailer is not accepted"));
            }
            let value: i64 = tok
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("invalid literal `{tok}`")))?;
            match Lit::from_dimacs(value) {
                None if value == 0 => {
                    if current.is_empty() {
                        return Err(ParseError::new(line_no, "empty clause"));
                    }
                    let clause = Clause::new(std::mem::take(&mut current))
                        .map_err(|e| ParseError::new(line_no, e.to_string()))?;
                    clauses.push(clause);
                }
                None => return Err(ParseError::new(line_no, format!("invalid literal `{tok}`"))),
                Some(lit) => {
                    if lit.var() > num_vars {
                        return Err(ParseError::new(
                            line_no,
                            format!("literal {value} exceeds declared {num_vars} variables"),
                        ));
                    }
                    if current.is_empty() {
                        current_start = line_no;
                    }
                    current.push(lit);
                }
            }
        }
    }

    if !current.is_empty() {
        return Err(ParseError::new(current_start, "clause missing terminating 0"));
    }
    let Some((num_vars, count)) = header else {
        return Err(ParseError::new(last_line.max(1), "missing problem line"));
    };
    if clauses.len() != count {
        return Err(ParseError::new(
            last_line.max(1),
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    let formula =
        CnfFormula::new(num_vars, clauses).map_err(|e| ParseError::new(last_line.max(1), e.to_string()))?;
    Ok(DimacsFile { formula, comments })
}

/// Writes `comments` (each prefixed `c `), the header, then one clause per
/// line. Output always ends with a newline.
pub fn emit_dimacs(f: &CnfFormula, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.clauses().len());
    for clause in f.clauses() {
        for l in clause.lits() {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_clause_example() {
        let d = parse_dimacs("p cnf 2 2\n1 2 0\n1 -2 0\n").unwrap();
        assert_eq!(d.formula.num_vars(), 2);
        let lits: Vec<Vec<i64>> = d
            .formula
            .clauses()
            .iter()
            .map(|c| c.lits().iter().map(|l| l.to_dimacs()).collect())
            .collect();
        assert_eq!(lits, vec![vec![1, 2], vec![1, -2]]);
    }

    #[test]
    fn empty_clause_set() {
        let d = parse_dimacs("p cnf 1 0\n").unwrap();
        assert_eq!(d.formula.num_vars(), 1);
        assert!(d.formula.clauses().is_empty());
        assert_eq!(emit_dimacs(&d.formula, &[]), "p cnf 1 0\n");
    }

    #[test]
    fn index_beyond_header_is_rejected() {
        let err = parse_dimacs("p cnf 2 1\n3 0\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn clauses_may_span_lines() {
        let d = parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0 2\n0\n").unwrap();
        assert_eq!(d.formula.clauses().len(), 2);
        assert_eq!(d.formula.clauses()[0].len(), 3);
        assert_eq!(d.comments, vec!["hello".to_string()]);
    }

    #[test]
    fn malformed_inputs() {
        for (text, line) in [
            ("p cnf x 1\n1 0\n", 1),
            ("1 0\np cnf 1 1\n", 1),
            ("p cnf 2 1\n1 2\n", 2),
            ("p cnf 2 1\n1 0\n%\n0\n", 3),
            ("p cnf 2 2\n1 0\n", 2),
            ("p cnf 2 1\n1 1 0\n", 2),
            ("p cnf 2 1\n0\n", 2),
            ("p cnf 2 1\np cnf 2 1\n1 0\n", 2),
            ("p dnf 2 1\n1 0\n", 1),
        ] {
            let err = parse_dimacs(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
        }
    }

    #[test]
    fn projection_comment_leads_output() {
        let d = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        let text = emit_dimacs(&d.formula, &["ind 1 2 0".to_string()]);
        assert_eq!(text.lines().next(), Some("c ind 1 2 0"));
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(back.projection(), Some(vec![1, 2]));
        assert_eq!(back.formula, d.formula);
    }
}
