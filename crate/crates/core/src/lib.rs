//! Formal verification and counting of reasoning shortcuts in
//! learning-and-reasoning tasks.
//!
//! The crate is layered bottom-up:
//!
//! * [`formula`]: literals, CNF, expression trees, DIMACS, Tseitin.
//! * [`knowledge`]: concept spaces and deterministic knowledge maps.
//! * [`alphamap`]: structured concept remappings and the brute-force and
//!   closed-form shortcut counts.
//! * [`encode`]: the CNF encoding whose models are exactly the shortcuts.
//! * [`counter`]: an exact #SAT counter for those encodings.
//! * [`tasks`]: builtin task families, YAML configs and dataset generation.
//! * [`metrics`]: concept-quality metrics on prediction files.

pub mod alphamap;
pub mod counter;
pub mod encode;
pub mod formula;
pub mod knowledge;
pub mod metrics;
pub mod tasks;
