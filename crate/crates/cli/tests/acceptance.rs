//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use shortcount::alphamap::{count_by_enumeration, count_closed_form, StructureMode, DEFAULT_ALPHA_CAP};
use shortcount::counter::{count_exhaustive, count_models, CounterConfig};
use shortcount::encode::build_counting_cnf;
use shortcount::formula::{parse_dimacs, random_lcnf, BoolExpr, Clause, CnfFormula, Lit, SeededRng};
use shortcount::knowledge::{
    exhaustive_support, ConceptSpace, ConceptVector, Knowledge, LabelTerm, Support, DEFAULT_ENUMERATION_CAP,
};
use shortcount::metrics::{
    binary_f1, collapse, confusion_matrix, evaluate, macro_f1, mean_accuracy, mean_f1, Metric,
    PredictionRecord,
};
use shortcount::tasks::{builtin_task, generate_dataset, parse_config, Split, TaskError, TaskSpec};

const PUBLISHED_COUNT_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_SUITE_LIMIT: Duration = Duration::from_secs(60);
const CLOSED_FORM_SUITE_LIMIT: Duration = Duration::from_secs(600);
const METRIC_TOLERANCE: f64 = 1e-12;
const ORACLE_CASES: u64 = 24;
const COUNTER_CASES: u64 = 120;
const MAX_COUNTER_VARS: u64 = 20;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn task(name: &str) -> Knowledge {
    builtin_task(&TaskSpec::from_name(name).unwrap())
        .unwrap()
        .knowledge
}

fn support_of(k: &Knowledge, vectors: &[&[u32]]) -> Support {
    Support::new(
        k,
        vectors.iter().map(|v| ConceptVector::new(v.to_vec())).collect(),
    )
    .unwrap()
}

fn encode_count(k: &Knowledge, s: &Support, mode: StructureMode) -> Result<String, String> {
    let p = build_counting_cnf(k, s, mode).map_err(|e| e.to_string())?;
    let n = count_models(&p.cnf, &CounterConfig::default()).map_err(|e| e.to_string())?;
    Ok(n.value.to_string())
}

fn enumerate_count(k: &Knowledge, s: &Support, mode: StructureMode) -> Result<String, String> {
    count_by_enumeration(k, s, mode, DEFAULT_ALPHA_CAP)
        .map(|n| n.to_string())
        .map_err(|e| e.to_string())
}

fn published_counts() -> Outcome {
    let cases: [(&str, Option<&[u32]>, &str); 5] = [
        ("and-3", None, "6"),
        ("xor-3", None, "24"),
        ("xor-3", Some(&[0, 1, 1]), "192"),
        ("and-3", Some(&[1, 1, 1]), "48"),
        ("and-3", Some(&[0, 0, 0]), "336"),
    ];
    let mut slowest = Duration::ZERO;
    for (name, example, want) in cases {
        let k = task(name);
        let s = match example {
            None => exhaustive_support(&k, DEFAULT_ENUMERATION_CAP).unwrap(),
            Some(c) => support_of(&k, &[c]),
        };
        for (method, f) in [
            (
                "enumerate",
                enumerate_count as fn(&Knowledge, &Support, StructureMode) -> _,
            ),
            ("encode-count", encode_count),
        ] {
            let start = Instant::now();
            let got = f(&k, &s, StructureMode::Permutation)?;
            let t = start.elapsed();
            slowest = slowest.max(t);
            ensure(got == want, || {
                format!("{name} {example:?} {method}: {got}, expected {want}")
            })?;
            ensure(t < PUBLISHED_COUNT_LIMIT, || {
                format!("{name} {method} took {t:?}")
            })?;
        }
        // and through the binary
        let supp_arg = example.map_or("exhaustive".to_string(), |c| {
            c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        });
        for method in ["enumerate", "encode-count"] {
            let start = Instant::now();
            let out = Command::new(env!("CARGO_BIN_EXE_shortcount"))
                .args([
                    "count",
                    "--task",
                    name,
                    "--support",
                    &supp_arg,
                    "--method",
                    method,
                ])
                .args(["--mode", "permutation"])
                .output()
                .map_err(|e| e.to_string())?;
            let t = start.elapsed();
            slowest = slowest.max(t);
            let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
            ensure(out.status.success() && v["count"] == want, || {
                format!("binary {name} {supp_arg} {method}: {v}")
            })?;
            ensure(t < PUBLISHED_COUNT_LIMIT, || {
                format!("binary {name} {method} took {t:?}")
            })?;
        }
    }
    Ok(format!(
        "5 counts x 2 methods x (library, binary); slowest {slowest:.2?}"
    ))
}

fn random_knowledge(k: usize, seed: u64) -> Knowledge {
    let mut rng = SeededRng::new(seed);
    let l = 1 + rng.below(k as u64) as usize;
    let m = 1 + rng.below(4) as usize;
    let phi = random_lcnf(k, m, l, seed)
        .or_else(|_| random_lcnf(k, 1, l, seed))
        .unwrap();
    let space = ConceptSpace::new(k, 2).unwrap();
    Knowledge::new("lcnf", space, vec![LabelTerm::Bool(phi.to_expr())]).unwrap()
}

fn random_support(k: &Knowledge, size: usize, seed: u64) -> Support {
    let mut rng = SeededRng::new(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut all: Vec<ConceptVector> = k.space().vectors().collect();
    let size = size.min(all.len());
    for i in 0..size {
        let j = i + rng.below((all.len() - i) as u64) as usize;
        all.swap(i, j);
    }
    all.truncate(size);
    Support::new(k, all).unwrap()
}

fn truth_table(k: usize, table: u32) -> Knowledge {
    let clauses: Vec<BoolExpr> = (0..1u32 << k)
        .filter(|row| table >> row & 1 == 0)
        .map(|row| {
            // blocks the assignment `row`, concept 1 being the top bit
            let lits = (0..k)
                .map(|j| {
                    let a = BoolExpr::Atom(j as u32 + 1);
                    if row >> (k - 1 - j) & 1 == 1 {
                        BoolExpr::not(a)
                    } else {
                        a
                    }
                })
                .collect();
            BoolExpr::Or(lits)
        })
        .collect();
    let space = ConceptSpace::new(k, 2).unwrap();
    Knowledge::new("table", space, vec![LabelTerm::Bool(BoolExpr::And(clauses))]).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    for seed in 0..ORACLE_CASES {
        let k = random_knowledge(3, seed);
        let s = random_support(&k, 1 + (seed % 8) as usize, seed);
        for mode in [StructureMode::Complete, StructureMode::Permutation] {
            let (a, b) = (encode_count(&k, &s, mode)?, enumerate_count(&k, &s, mode)?);
            ensure(a == b, || {
                format!("seed {seed} {mode}: encode-count {a}, enumerate {b}")
            })?;
        }
    }
    let t = start.elapsed();
    ensure(t < ORACLE_SUITE_LIMIT, || format!("suite took {t:?}"))?;
    Ok(format!(
        "{ORACLE_CASES} knowledges, supports 1..8, 2 modes, {t:.2?}"
    ))
}

fn closed_form_validation() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut check = |k: &Knowledge, s: &Support, what: &str| -> Result<(), String> {
        let cf = count_closed_form(k, s, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
        let brute = enumerate_count(k, s, StructureMode::Unrestricted)?;
        cases += 1;
        ensure(cf.to_string() == brute, || {
            format!("{what}: closed form {cf}, brute force {brute}")
        })
    };
    for kk in 1..=3usize {
        let seeds = if kk == 3 { 10 } else { 6 };
        for seed in 0..seeds {
            let k = random_knowledge(kk, 100 * kk as u64 + seed);
            let size = 1 + (seed as usize % (1 << kk));
            check(
                &k,
                &random_support(&k, size, seed),
                &format!("k={kk} seed {seed}"),
            )?;
        }
        // every function of kk bits, as the CNF of its zeros
        for table in 0u32..1 << (1 << kk) {
            let k = truth_table(kk, table);
            let s = exhaustive_support(&k, DEFAULT_ENUMERATION_CAP).unwrap();
            check(&k, &s, &format!("k={kk} table {table:#x}"))?;
        }
    }
    // trivial cases
    for kk in 1..=3usize {
        let space = ConceptSpace::new(kk, 2).unwrap();
        let injective = Knowledge::new(
            "id",
            space,
            (1..=kk as u32)
                .map(|a| LabelTerm::Bool(BoolExpr::Atom(a)))
                .collect(),
        )
        .unwrap();
        let s = exhaustive_support(&injective, DEFAULT_ENUMERATION_CAP).unwrap();
        let n = count_closed_form(&injective, &s, DEFAULT_ENUMERATION_CAP).unwrap();
        ensure(n.to_string() == "1", || format!("injective k={kk}: {n}"))?;

        let constant = Knowledge::new("top", space, vec![LabelTerm::Bool(BoolExpr::Const(true))]).unwrap();
        let s = exhaustive_support(&constant, DEFAULT_ENUMERATION_CAP).unwrap();
        let n = count_closed_form(&constant, &s, DEFAULT_ENUMERATION_CAP).unwrap();
        let want = (1u64 << kk).pow(1 << kk);
        ensure(n.to_string() == want.to_string(), || {
            format!("constant k={kk}: {n}, expected {want}")
        })?;
        check(&constant, &s, &format!("constant k={kk}"))?;
    }
    let t = start.elapsed();
    ensure(t < CLOSED_FORM_SUITE_LIMIT, || format!("suite took {t:?}"))?;
    Ok(format!(
        "{cases} brute-force comparisons, trivial cases exact, {t:.1?}"
    ))
}

fn random_cnf(seed: u64) -> CnfFormula {
    let mut rng = SeededRng::new(seed);
    let n = 1 + rng.below(MAX_COUNTER_VARS) as u32;
    let m = rng.below(4 * n as u64 + 1) as usize;
    let clauses = (0..m)
        .map(|_| {
            let width = 1 + rng.below(3.min(n as u64));
            let mut lits: Vec<Lit> = Vec::new();
            while lits.len() < width as usize {
                let v = 1 + rng.below(n as u64) as u32;
                if lits.iter().all(|l| l.var() != v) {
                    lits.push(Lit::new(v, rng.coin()));
                }
            }
            Clause::new(lits).unwrap()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

fn counter_correctness() -> Outcome {
    let cfg = CounterConfig::default();
    let mut nonzero = 0;
    for seed in 0..COUNTER_CASES {
        let f = random_cnf(seed);
        let a = count_models(&f, &cfg).map_err(|e| e.to_string())?.value;
        let b = count_exhaustive(&f).map_err(|e| e.to_string())?.value;
        ensure(a == b, || format!("seed {seed}: counter {a}, exhaustive {b}"))?;
        nonzero += usize::from(a.bits() > 0);
    }
    let count = |text: &str| {
        count_models(&parse_dimacs(text).unwrap().formula, &cfg)
            .unwrap()
            .value
            .to_string()
    };
    let free = count("p cnf 2 0\n");
    ensure(free == "4", || format!("p cnf 2 0 gave {free}"))?;
    let contra = count("p cnf 1 2\n1 0\n-1 0\n");
    ensure(contra == "0", || format!("contradiction gave {contra}"))?;
    Ok(format!(
        "{COUNTER_CASES} random CNFs ({nonzero} satisfiable), empty and contradictory formulas"
    ))
}

/// Exact fractions for the hand-computed metric values.
#[derive(Clone, Copy)]
struct Ratio(i64, i64);

impl Ratio {
    fn f1(tp: i64, fp: i64, fn_: i64) -> Ratio {
        if 2 * tp + fp + fn_ == 0 {
            Ratio(0, 1)
        } else {
            Ratio(2 * tp, 2 * tp + fp + fn_)
        }
    }

    fn mean(parts: &[Ratio]) -> Ratio {
        let den = parts.iter().map(|r| r.1).product::<i64>();
        let num: i64 = parts.iter().map(|r| r.0 * (den / r.1)).sum();
        Ratio(num, den * parts.len() as i64)
    }

    fn value(self) -> f64 {
        self.0 as f64 / self.1 as f64
    }
}

fn close(got: f64, want: Ratio, what: &str) -> Result<(), String> {
    ensure((got - want.value()).abs() <= METRIC_TOLERANCE, || {
        format!("{what}: {got}, expected {}/{}", want.0, want.1)
    })
}

fn vectors(rows: &[[u32; 4]]) -> Vec<ConceptVector> {
    rows.iter().map(|r| ConceptVector::new(r.to_vec())).collect()
}

fn metric_identities() -> Outcome {
    let space = ConceptSpace::new(4, 2).unwrap();
    let gt: Vec<[u32; 4]> = (0..10u32)
        .map(|i| [i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1])
        .collect();
    let gtv = vectors(&gt);

    let cm = confusion_matrix(&gtv, &gtv, space).map_err(|e| e.to_string())?;
    close(collapse(&cm).unwrap(), Ratio(0, 1), "identity collapse")?;
    let codes: Vec<usize> = (0..10).collect();
    close(
        macro_f1(&codes, &codes, &codes).unwrap(),
        Ratio(1, 1),
        "identity macro-F1",
    )?;

    let constant = vectors(&[gt[3]; 10]);
    let cm = confusion_matrix(&gtv, &constant, space).map_err(|e| e.to_string())?;
    ensure(cm.size() == 10, || {
        format!("constant predictions observed {} codes", cm.size())
    })?;
    close(collapse(&cm).unwrap(), Ratio(9, 10), "constant collapse")?;

    // position 2 is always flipped
    let bits: Vec<Vec<bool>> = gt.iter().map(|r| r.iter().map(|&v| v == 1).collect()).collect();
    let flipped: Vec<Vec<bool>> = bits
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(j, &v)| if j == 2 { !v } else { v })
                .collect()
        })
        .collect();
    close(
        mean_f1(&bits, &flipped).unwrap(),
        Ratio(3, 4),
        "mean-F1 one wrong position",
    )?;

    // hand oracle: gt 1,1,0,0,1,0 vs pred 1,0,1,0,1,1 -> tp 2, fp 2, fn 1
    let g = [true, true, false, false, true, false];
    let p = [true, false, true, false, true, true];
    close(binary_f1(&g, &p).unwrap(), Ratio::f1(2, 2, 1), "binary F1")?;
    // classes a,b,c: gt a a b b c c, pred a b b c c a
    let (gc, pc) = (["a", "a", "b", "b", "c", "c"], ["a", "b", "b", "c", "c", "a"]);
    let per_class = [Ratio::f1(1, 1, 1), Ratio::f1(1, 1, 1), Ratio::f1(1, 1, 1)];
    close(
        macro_f1(&gc, &pc, &["a", "b", "c"]).unwrap(),
        Ratio::mean(&per_class),
        "macro-F1",
    )?;
    // macro-F1 over a class never predicted nor present counts as 0
    let with_d = [
        Ratio::f1(1, 1, 1),
        Ratio::f1(1, 1, 1),
        Ratio::f1(1, 1, 1),
        Ratio(0, 1),
    ];
    close(
        macro_f1(&gc, &pc, &["a", "b", "c", "d"]).unwrap(),
        Ratio::mean(&with_d),
        "macro-F1 empty class",
    )?;
    let rows_g = vec![vec![0u32, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    let rows_p = vec![vec![0u32, 1, 0], vec![1, 1, 1], vec![1, 1, 0]];
    let acc = Ratio::mean(&[Ratio(3, 3), Ratio(2, 3), Ratio(2, 3)]);
    close(mean_accuracy(&rows_g, &rows_p).unwrap(), acc, "mean accuracy")?;

    // the same file through the report path
    let records: Vec<PredictionRecord> = rows_g
        .iter()
        .zip(&rows_p)
        .map(|(g, p)| PredictionRecord {
            gt_concepts: g.clone(),
            pred_concepts: p.clone(),
            gt_label: None,
            pred_label: None,
        })
        .collect();
    let r = evaluate(
        &records,
        &[Metric::Collapse, Metric::ConceptAccuracy, Metric::ConceptMeanF1],
        None,
    )
    .map_err(|e| e.to_string())?;
    // codes 3,5,6 vs 2,7,6: union of 5 codes, predicted columns {2,7,6}
    close(r.collapse.unwrap(), Ratio(2, 5), "report collapse")?;
    close(r.concept_accuracy.unwrap(), acc, "report accuracy")?;
    let cols = [Ratio::f1(2, 0, 0), Ratio::f1(2, 1, 0), Ratio::f1(1, 0, 1)];
    close(
        r.concept_mean_f1.unwrap(),
        Ratio::mean(&cols),
        "report concept mean-F1",
    )?;
    Ok(format!("identities and hand oracles within {METRIC_TOLERANCE:e}"))
}

const GEN_CONFIGS: [&str; 4] = [
    "task: mnlogic\nn_digits: 3\nxor_rule: true\nseed: 1\n",
    "task: mnlogic\nn_digits: 4\nlogic: \"(c1 & c2) | c4\"\nn_samples: 137\nval_prop: 0.15\ntest_prop: 0.25\nseed: 7\n",
    "task: mnlogic\nn_digits: 3\nxor_rule: true\nn_samples: 250\nseed: 3\nprop_in_distribution: 0.8\n\
     combinations_in_distribution: [\"000\", \"0*1\", \"101\"]\n",
    "task: mnadd\nn_digits: 2\nn_samples: 90\nseed: 5\nprop_in_distribution: 0.7\n\
     combinations_in_distribution: [[0, \"*\"], [1, \"*\"], [2, \"*\"]]\n",
];

fn generator_contracts() -> Outcome {
    let mut records = 0;
    for (i, text) in GEN_CONFIGS.iter().enumerate() {
        let cfg = parse_config(text).map_err(|e| format!("config {i}: {e}"))?;
        let a = generate_dataset(&cfg).map_err(|e| e.to_string())?;
        let b = generate_dataset(&cfg).map_err(|e| e.to_string())?;
        ensure(a.to_json() == b.to_json(), || {
            format!("config {i}: reruns differ")
        })?;
        records += a.records.len();

        let n = cfg.n_samples as f64;
        let n_in = n * cfg.prop_in_distribution;
        let counts = a.split_counts();
        let expected = [
            (counts.val, n_in * cfg.val_prop, "val"),
            (counts.test, n_in * cfg.test_prop, "test"),
            (counts.train, n_in * (1.0 - cfg.val_prop - cfg.test_prop), "train"),
            (counts.ood, n - n_in, "ood"),
        ];
        for (got, want, name) in expected {
            ensure((got as f64 - want).abs() <= 1.0, || {
                format!("config {i}: {name} has {got}, expected {want}")
            })?;
        }
        ensure(counts.total() == cfg.n_samples, || {
            format!("config {i}: {} records", counts.total())
        })?;

        let patterns = cfg.combinations_in_distribution.clone();
        let binary = a.labels.len() == 1 && a.knowledge.domains()[0].is_binary();
        let mut balance: HashMap<Split, i64> = HashMap::new();
        for r in &a.records {
            let y = a.knowledge.label_of(&r.concepts).map_err(|e| e.to_string())?;
            ensure(y == r.label, || {
                format!("config {i}: label {:?} for {}", r.label, r.concepts)
            })?;
            if let Some(ps) = &patterns {
                let inside = ps.iter().any(|p| p.matches(&r.concepts));
                ensure(inside == (r.split != Split::Ood), || {
                    format!("config {i}: {} in split {:?}", r.concepts, r.split)
                })?;
            }
            if binary {
                *balance.entry(r.split).or_default() += if r.label.values()[0] == 1 { 1 } else { -1 };
            }
        }
        for (split, d) in balance {
            ensure(d.abs() <= 1, || {
                format!("config {i}: {split:?} label imbalance {d}")
            })?;
        }
    }
    let degenerate = "task: mnlogic\nn_digits: 3\nlogic: \"c1 | ~c1\"\n";
    match parse_config(degenerate) {
        Err(TaskError::Config { path, message }) if message.contains("either all false or all true") => {
            ensure(path == "logic", || format!("degenerate error at {path}"))?
        }
        other => return Err(format!("tautology accepted: {other:?}")),
    }
    Ok(format!(
        "{} configs, {records} records, degenerate knowledge rejected",
        GEN_CONFIGS.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("published shortcut counts", published_counts),
        ("encode-count equals enumeration", oracle_equivalence),
        (
            "closed form equals unrestricted enumeration",
            closed_form_validation,
        ),
        ("model counter equals exhaustive count", counter_correctness),
        ("metric identities", metric_identities),
        ("generator contracts", generator_contracts),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("SKIP [7] trained-model results: need neural training on image data, out of scope");
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
