//! Seeded random ℓ-CNF generation.
//!
//! The generator is SplitMix64 (state += 0x9E3779B97F4A7C15, then the
//! 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB finalizer), seeded with the raw
//! seed as its initial state. Bounded draws use rejection against the
//! largest multiple of `n` below 2^64, so streams are reproducible in any
//! language from the seed alone.

use std::collections::HashSet;

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::{Clause, CnfFormula, FormulaError, Lit};

/// Portable seeded generator shared by every randomized routine.
#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw from `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // 2^64 mod n
        let rem = (u64::MAX % n + 1) % n;
        loop {
            let r = self.next_u64();
            if rem == 0 || r <= u64::MAX - rem {
                return r % n;
            }
        }
    }

    /// Fair coin from the top bit.
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform float in `[0, 1)` from the top 53 bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Draws `m` distinct clauses of exactly `l` distinct variables over
/// variables `1..=k`.
///
/// Each clause picks its variables by drawing uniformly from `1..=k` and
/// rejecting repeats, sorts them ascending, then draws one sign per
/// variable (top bit set = positive). Clauses already drawn are rejected.
pub fn random_lcnf(k: usize, m: usize, l: usize, seed: u64) -> Result<CnfFormula, FormulaError> {
    if l == 0 || l > k {
        return Err(FormulaError::InvalidWidth { width: l, vars: k });
    }
    if m == 0 {
        return Err(FormulaError::NoClauses);
    }
    let available = binomial(k as u128, l as u128).saturating_mul(1u128 << l.min(127));
    if m as u128 > available {
        return Err(FormulaError::TooManyClauses {
            requested: m,
            available,
        });
    }
    let mut rng = SeededRng::new(seed);
    let mut seen: HashSet<Vec<Lit>> = HashSet::new();
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let mut vars: Vec<u32> = Vec::with_capacity(l);
        while vars.len() < l {
            let v = rng.below(k as u64) as u32 + 1;
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort_unstable();
        let lits: Vec<Lit> = vars.into_iter().map(|v| Lit::new(v, rng.coin())).collect();
        if seen.insert(lits.clone()) {
            clauses.push(Clause::new(lits)?);
        }
    }
    CnfFormula::new(k as u32, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_value() {
        // First output of SplitMix64 from state 0.
        assert_eq!(SeededRng::new(0).next_u64(), 0xE220A8397B1DCDAF);
    }

    #[test]
    fn single_variable_unit_clause() {
        for seed in 0..4 {
            let f = random_lcnf(1, 1, 1, seed).unwrap();
            assert_eq!(f.clauses().len(), 1);
            assert_eq!(f.clauses()[0].lits()[0].var(), 1);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_lcnf(3, 2, 3, 0), random_lcnf(3, 2, 3, 0));
    }

    #[test]
    fn all_width_three_clauses() {
        let f = random_lcnf(3, 8, 3, 0).unwrap();
        let set: HashSet<_> = f.clauses().iter().collect();
        assert_eq!(set.len(), 8);
        for c in f.clauses() {
            let mut vars: Vec<u32> = c.lits().iter().map(|l| l.var()).collect();
            vars.dedup();
            assert_eq!(vars, vec![1, 2, 3]);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            random_lcnf(2, 1, 3, 0),
            Err(FormulaError::InvalidWidth { .. })
        ));
        assert!(matches!(
            random_lcnf(3, 9, 3, 0),
            Err(FormulaError::TooManyClauses { .. })
        ));
        assert_eq!(random_lcnf(3, 0, 1, 0), Err(FormulaError::NoClauses));
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = SeededRng::new(7);
        for n in 1..50 {
            assert!(r.below(n) < n);
        }
    }
}
