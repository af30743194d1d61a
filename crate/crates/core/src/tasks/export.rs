//! Knowledge as DIMACS CNF.

use crate::encode::exactly_one;
use crate::formula::{emit_dimacs, tseitin, BoolExpr, Clause, CnfFormula};
use crate::knowledge::Knowledge;

use super::TaskError;

/// Writes `K` as CNF over concept and label variables whose models,
/// restricted to those variables, are exactly the pairs `(c, K(c))`.
///
/// Binary concepts take one variable each; larger domains take `b`
/// one-hot variables with an exactly-one constraint. Each bit-formula
/// indicator gets one label variable defined through Tseitin auxiliaries.
/// The variable map is written in `c` comment lines.
pub fn export_knowledge_dimacs(k: &Knowledge) -> Result<String, TaskError> {
    let indicators = k.require_bit_formula()?;
    let space = k.space();
    let (kk, b) = (space.k(), space.b());
    let binary = b == 2;
    let concept_vars = if binary { kk } else { kk * b as usize } as u32;
    let mut comments = Vec::new();
    let mut cnf = CnfFormula::empty(concept_vars + indicators.len() as u32);
    for (j, name) in k.symbols().iter().enumerate() {
        if binary {
            comments.push(format!("concept {name} var {}", j + 1));
        } else {
            let vars: Vec<u32> = (0..b).map(|v| space.bit_atom(j, v)).collect();
            for (v, var) in vars.iter().enumerate() {
                comments.push(format!("concept {name}={v} var {var}"));
            }
            cnf.extend(exactly_one(&vars).map_err(|e| TaskError::Invalid(e.to_string()))?);
        }
    }
    let mut next = concept_vars + indicators.len() as u32 + 1;
    let aux_start = next;
    for (i, ind) in indicators.iter().enumerate() {
        let label_var = concept_vars + 1 + i as u32;
        let name = &k.label_names()[ind.position];
        if k.domains()[ind.position].is_binary() && ind.value == 1 {
            comments.push(format!("label {name} var {label_var}"));
        } else {
            comments.push(format!("label {name}={} var {label_var}", ind.value));
        }
        let expr = if binary {
            // one-hot bit 2j+1 is "concept j is 0", bit 2j+2 is "concept j is 1"
            ind.expr.substitute(&|a| {
                let j = (a - 1) / 2 + 1;
                if a % 2 == 0 {
                    BoolExpr::Atom(j)
                } else {
                    BoolExpr::not(BoolExpr::Atom(j))
                }
            })
        } else {
            ind.expr.clone()
        };
        let t = tseitin(&BoolExpr::iff(expr, BoolExpr::Atom(label_var)), next)?;
        next += t.aux_count;
        cnf.extend(t.cnf.clauses().iter().cloned());
        cnf.push(Clause::new(vec![t.root])?);
    }
    cnf.set_num_vars(next - 1)?;
    comments.push(if next > aux_start {
        format!("aux {aux_start}..{}", next - 1)
    } else {
        "aux none".to_string()
    });
    comments.insert(0, format!("knowledge {} k {kk} b {b}", k.name()));
    Ok(emit_dimacs(&cnf, &comments))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counter::{count_models, CounterConfig};
    use crate::formula::{parse_dimacs, Assignment};
    use crate::tasks::{builtin_task, TaskSpec};
    use num_bigint::BigUint;

    fn count(text: &str) -> BigUint {
        let f = parse_dimacs(text).unwrap().formula;
        count_models(&f, &CounterConfig::default()).unwrap().value
    }

    #[test]
    fn gates_have_one_model_per_concept_vector() {
        for name in ["xor-3", "and-3"] {
            let t = builtin_task(&TaskSpec::from_name(name).unwrap()).unwrap();
            let text = export_knowledge_dimacs(&t.knowledge).unwrap();
            assert_eq!(count(&text), BigUint::from(8u32), "{name}");
            assert!(text.contains("c label y1 var 4"));
        }
    }

    #[test]
    fn models_pair_concepts_with_their_label() {
        let t = builtin_task(&TaskSpec::from_name("xor-3").unwrap()).unwrap();
        let f = parse_dimacs(&export_knowledge_dimacs(&t.knowledge).unwrap())
            .unwrap()
            .formula;
        let n = f.num_vars() as usize;
        let mut seen = 0;
        for m in 0u64..1 << n {
            let a = Assignment::from_mask(m, n);
            if f.eval(&a).unwrap() {
                let bits = a.bits();
                let parity = bits[..3].iter().filter(|&&x| x).count() % 2 == 1;
                assert_eq!(bits[3], parity);
                seen += 1;
            }
        }
        assert_eq!(seen, 8);
    }

    #[test]
    fn categorical_knowledge() {
        let t = builtin_task(&TaskSpec::from_name("mnadd:digits=2,b=3").unwrap()).unwrap();
        let text = export_knowledge_dimacs(&t.knowledge).unwrap();
        assert_eq!(count(&text), BigUint::from(9u32));
        assert!(text.contains("c concept c1=2 var 3"));
        assert!(text.contains("c label y1=4 var"));
    }

    #[test]
    fn deterministic_text() {
        let t = builtin_task(&TaskSpec::kand_default()).unwrap();
        let a = export_knowledge_dimacs(&t.knowledge).unwrap();
        assert_eq!(a, export_knowledge_dimacs(&t.knowledge).unwrap());
    }
}
