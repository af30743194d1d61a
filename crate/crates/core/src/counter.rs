//! Exact model counting.
//!
//! DPLL search with unit propagation, splitting of the residual formula
//! into variable-disjoint components and memoization of component counts.
//! No clause learning. A component is identified by its unsatisfied clause
//! ids and its unassigned variables, which together fix the residual
//! clauses exactly; the cache compares full keys, so hash collisions cannot
//! corrupt a count.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formula::CnfFormula;

/// Largest formula [`count_exhaustive`] accepts.
pub const EXHAUSTIVE_MAX_VARS: u32 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branching {
    /// Variable with the most occurrences in the component's clauses.
    #[default]
    MostFrequent,
    /// Smallest variable index first.
    FixedOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterConfig {
    pub branching: Branching,
    pub component_caching: bool,
    /// Components with at most this many variables are counted by
    /// enumeration; 0 disables the fallback.
    pub exhaustive_fallback: usize,
    /// Abort with [`CounterError::Budget`] after this many decisions.
    pub decision_cap: Option<u64>,
}

impl Default for CounterConfig {
    fn default() -> Self {
        CounterConfig {
            branching: Branching::MostFrequent,
            component_caching: true,
            exhaustive_fallback: 6,
            decision_cap: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CountStats {
    pub decisions: u64,
    pub propagations: u64,
    pub cache_hits: u64,
    pub cached_components: u64,
    #[serde(rename = "wall_time_ms", serialize_with = "millis")]
    pub wall_time: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCount {
    pub value: BigUint,
    pub stats: CountStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CounterError {
    #[error("decision budget of {cap} exhausted after {} decisions", stats.decisions)]
    Budget { cap: u64, stats: CountStats },
    #[error("exhaustive counting supports at most {max} variables, formula has {num_vars}")]
    Capacity { num_vars: u32, max: u32 },
}

struct Budget;

struct Solver<'a> {
    cfg: &'a CounterConfig,
    /// Literals as signed variable indices.
    clauses: Vec<Vec<i32>>,
    occurs: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<u32>,
    cache: HashMap<(Vec<usize>, Vec<u32>), BigUint>,
    stats: CountStats,
}

impl<'a> Solver<'a> {
    fn new(f: &CnfFormula, cfg: &'a CounterConfig) -> Self {
        let n = f.num_vars() as usize;
        let clauses: Vec<Vec<i32>> = f
            .clauses()
            .iter()
            .map(|c| c.lits().iter().map(|l| l.to_dimacs() as i32).collect())
            .collect();
        let mut occurs = vec![Vec::new(); n + 1];
        for (i, c) in clauses.iter().enumerate() {
            for &l in c {
                occurs[l.unsigned_abs() as usize].push(i);
            }
        }
        Solver {
            cfg,
            clauses,
            occurs,
            value: vec![0; n + 1],
            trail: Vec::new(),
            cache: HashMap::new(),
            stats: CountStats::default(),
        }
    }

    fn lit_value(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn satisfied(&self, c: usize) -> bool {
        self.clauses[c].iter().any(|&l| self.lit_value(l) == 1)
    }

    fn assign(&mut self, l: i32) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l.unsigned_abs());
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().unwrap();
            self.value[v as usize] = 0;
        }
    }

    /// Unit propagation from the assignments on the trail after `from`.
    /// Returns false on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let v = self.trail[from] as usize;
            from += 1;
            for idx in 0..self.occurs[v].len() {
                let c = self.occurs[v][idx];
                let mut unassigned = None;
                let mut open = 0;
                let mut sat = false;
                for &l in &self.clauses[c] {
                    match self.lit_value(l) {
                        1 => {
                            sat = true;
                            break;
                        }
                        0 => {
                            open += 1;
                            unassigned = Some(l);
                        }
                        _ => {}
                    }
                }
                if sat {
                    continue;
                }
                match open {
                    0 => return false,
                    1 => {
                        self.stats.propagations += 1;
                        self.assign(unassigned.unwrap());
                    }
                    _ => {}
                }
            }
        }
        true
    }

    /// Splits the unsatisfied clauses among `ids` into components. Returns
    /// the components (clause ids, variables) and the number of variables
    /// of `vars` left unconstrained.
    fn components(&self, ids: &[usize], vars: &[u32]) -> (Vec<(Vec<usize>, Vec<u32>)>, usize) {
        let open: Vec<usize> = ids.iter().copied().filter(|&c| !self.satisfied(c)).collect();
        let mut local: HashMap<u32, usize> = HashMap::new();
        let mut order: Vec<u32> = Vec::new();
        for &c in &open {
            for &l in &self.clauses[c] {
                let v = l.unsigned_abs();
                if self.value[v as usize] == 0 && !local.contains_key(&v) {
                    local.insert(v, order.len());
                    order.push(v);
                }
            }
        }
        let mut parent: Vec<usize> = (0..order.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &c in &open {
            let mut first = None;
            for &l in &self.clauses[c] {
                let v = l.unsigned_abs();
                if self.value[v as usize] != 0 {
                    continue;
                }
                let i = local[&v];
                match first {
                    None => first = Some(i),
                    Some(f) => {
                        let (a, b) = (find(&mut parent, f), find(&mut parent, i));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        let mut groups: HashMap<usize, (Vec<usize>, Vec<u32>)> = HashMap::new();
        for (i, &v) in order.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().1.push(v);
        }
        for &c in &open {
            let v = self.clauses[c]
                .iter()
                .map(|l| l.unsigned_abs())
                .find(|&v| self.value[v as usize] == 0)
                .expect("unsatisfied clause without open literal");
            let r = find(&mut parent, local[&v]);
            groups.get_mut(&r).unwrap().0.push(c);
        }
        let free = vars
            .iter()
            .filter(|&&v| self.value[v as usize] == 0 && !local.contains_key(&v))
            .count();
        let mut comps: Vec<(Vec<usize>, Vec<u32>)> = groups
            .into_values()
            .map(|(mut c, mut v)| {
                c.sort_unstable();
                v.sort_unstable();
                (c, v)
            })
            .collect();
        comps.sort_unstable_by_key(|(_, v)| v[0]);
        (comps, free)
    }

    fn pick(&self, ids: &[usize], vars: &[u32]) -> u32 {
        match self.cfg.branching {
            Branching::FixedOrder => vars[0],
            Branching::MostFrequent => {
                let mut freq: HashMap<u32, usize> = HashMap::new();
                for &c in ids {
                    for &l in &self.clauses[c] {
                        let v = l.unsigned_abs();
                        if self.value[v as usize] == 0 {
                            *freq.entry(v).or_default() += 1;
                        }
                    }
                }
                // ties broken by the smaller index
                *vars
                    .iter()
                    .max_by_key(|&&v| (freq.get(&v).copied().unwrap_or(0), std::cmp::Reverse(v)))
                    .unwrap()
            }
        }
    }

    fn enumerate(&self, ids: &[usize], vars: &[u32]) -> BigUint {
        let pos: HashMap<u32, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let masks: Vec<(u64, u64)> = ids
            .iter()
            .map(|&c| {
                self.clauses[c]
                    .iter()
                    .fold((0, 0), |(p, n), &l| match pos.get(&l.unsigned_abs()) {
                        Some(&i) if l > 0 => (p | 1 << i, n),
                        Some(&i) => (p, n | 1 << i),
                        None => (p, n),
                    })
            })
            .collect();
        let count = (0u64..1 << vars.len())
            .filter(|&m| masks.iter().all(|&(p, n)| m & p != 0 || !m & n != 0))
            .count();
        BigUint::from(count)
    }

    fn count_component(&mut self, ids: Vec<usize>, vars: Vec<u32>) -> Result<BigUint, Budget> {
        if self.cfg.exhaustive_fallback > 0 && vars.len() <= self.cfg.exhaustive_fallback {
            return Ok(self.enumerate(&ids, &vars));
        }
        let key = (ids, vars);
        if self.cfg.component_caching {
            if let Some(v) = self.cache.get(&key) {
                self.stats.cache_hits += 1;
                return Ok(v.clone());
            }
        }
        let (ids, vars) = key;
        let v = self.pick(&ids, &vars);
        let mut total = BigUint::from(0u32);
        for lit in [v as i32, -(v as i32)] {
            self.stats.decisions += 1;
            if let Some(cap) = self.cfg.decision_cap {
                if self.stats.decisions > cap {
                    return Err(Budget);
                }
            }
            let mark = self.trail.len();
            self.assign(lit);
            if self.propagate(mark) {
                total += self.count_residual(&ids, &vars)?;
            }
            self.undo(mark);
        }
        if self.cfg.component_caching {
            self.stats.cached_components += 1;
            self.cache.insert((ids, vars), total.clone());
        }
        Ok(total)
    }

    fn count_residual(&mut self, ids: &[usize], vars: &[u32]) -> Result<BigUint, Budget> {
        let (comps, free) = self.components(ids, vars);
        let mut product = BigUint::from(1u32) << free;
        for (c, v) in comps {
            let n = self.count_component(c, v)?;
            if n == BigUint::from(0u32) {
                return Ok(n);
            }
            product *= n;
        }
        Ok(product)
    }
}

/// Exact number of assignments to all `num_vars` variables satisfying `f`.
pub fn count_models(f: &CnfFormula, cfg: &CounterConfig) -> Result<ModelCount, CounterError> {
    let start = Instant::now();
    let mut s = Solver::new(f, cfg);
    let all_vars: Vec<u32> = (1..=f.num_vars()).collect();
    let all_ids: Vec<usize> = (0..s.clauses.len()).collect();
    // root-level units
    let mut ok = true;
    for c in 0..s.clauses.len() {
        if s.clauses[c].len() == 1 {
            let l = s.clauses[c][0];
            match s.lit_value(l) {
                0 => s.assign(l),
                -1 => ok = false,
                _ => {}
            }
        }
    }
    ok = ok && s.propagate(0);
    let result = if ok {
        s.count_residual(&all_ids, &all_vars)
    } else {
        Ok(BigUint::from(0u32))
    };
    s.stats.wall_time = start.elapsed();
    match result {
        Ok(value) => Ok(ModelCount {
            value,
            stats: s.stats,
        }),
        Err(Budget) => Err(CounterError::Budget {
            cap: cfg.decision_cap.unwrap_or(0),
            stats: s.stats,
        }),
    }
}

/// Brute-force count over all `2^num_vars` assignments.
pub fn count_exhaustive(f: &CnfFormula) -> Result<ModelCount, CounterError> {
    let n = f.num_vars();
    if n > EXHAUSTIVE_MAX_VARS {
        return Err(CounterError::Capacity {
            num_vars: n,
            max: EXHAUSTIVE_MAX_VARS,
        });
    }
    let start = Instant::now();
    let masks: Vec<(u64, u64)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.lits().iter().fold((0, 0), |(p, q), l| {
                let bit = 1u64 << (l.var() - 1);
                if l.is_positive() {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect();
    let count: u64 = (0u64..1 << n)
        .into_par_iter()
        .filter(|&m| masks.iter().all(|&(p, q)| m & p != 0 || !m & q != 0))
        .count() as u64;
    Ok(ModelCount {
        value: BigUint::from(count),
        stats: CountStats {
            wall_time: start.elapsed(),
            ..CountStats::default()
        },
    })
}
