//! Seeded symbolic dataset generation.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::TaskConfig;
use super::{builtin_task, BuiltinTask, TaskError};
use crate::formula::SeededRng;
use crate::knowledge::{ConceptVector, Knowledge, LabelVector, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
    Ood,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub label: LabelVector,
    pub concepts: ConceptVector,
    pub split: Split,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCounts {
    pub train: usize,
    pub val: usize,
    pub test: usize,
    pub ood: usize,
}

impl SplitCounts {
    /// Split sizes for `n` samples: the in-distribution share is
    /// `round(n * prop_in_distribution)`, validation and test take their
    /// rounded fractions of it, training takes the rest.
    pub fn plan(cfg: &TaskConfig) -> SplitCounts {
        let n = cfg.n_samples;
        let n_in = ((n as f64 * cfg.prop_in_distribution).round() as usize).clamp(1, n);
        let val = ((n_in as f64 * cfg.val_prop).round() as usize).min(n_in);
        let test = ((n_in as f64 * cfg.test_prop).round() as usize).min(n_in - val);
        SplitCounts {
            train: n_in - val - test,
            val,
            test,
            ood: n - n_in,
        }
    }

    pub fn total(&self) -> usize {
        self.train + self.val + self.test + self.ood
    }
}

/// A generated dataset. Serializes to a single JSON document.
#[derive(Debug, Clone, Serialize)]
pub struct Dataset {
    pub task: String,
    pub k: usize,
    pub b: u32,
    pub symbols: Vec<String>,
    pub labels: Vec<String>,
    pub seed: u64,
    pub records: Vec<DatasetRecord>,
    #[serde(skip)]
    pub knowledge: Knowledge,
}

impl Dataset {
    pub fn split_counts(&self) -> SplitCounts {
        let mut c = SplitCounts::default();
        for r in &self.records {
            match r.split {
                Split::Train => c.train += 1,
                Split::Val => c.val += 1,
                Split::Test => c.test += 1,
                Split::Ood => c.ood += 1,
            }
        }
        c
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dataset serializes")
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Provenance of a generated bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub task: String,
    pub seed: u64,
    pub config_sha256: String,
    pub splits: SplitCounts,
    pub records: usize,
    pub dataset_sha256: String,
    /// Absent when the knowledge has no bit-level formula to export.
    pub knowledge_sha256: Option<String>,
}

impl Manifest {
    pub fn new(
        config_text: &str,
        dataset: &Dataset,
        dataset_json: &str,
        knowledge_dimacs: Option<&str>,
    ) -> Self {
        Manifest {
            task: dataset.task.clone(),
            seed: dataset.seed,
            config_sha256: sha256_hex(config_text.as_bytes()),
            splits: dataset.split_counts(),
            records: dataset.records.len(),
            dataset_sha256: sha256_hex(dataset_json.as_bytes()),
            knowledge_sha256: knowledge_dimacs.map(|k| sha256_hex(k.as_bytes())),
        }
    }
}

/// Candidate concept vectors (lexicographic indices) per distribution.
pub(super) struct Plan {
    pub task: BuiltinTask,
    pub in_dist: Vec<u64>,
    pub ood: Vec<u64>,
}

fn single_binary(k: &Knowledge) -> bool {
    k.outputs().len() == 1 && k.is_boolean()
}

/// Resolves the candidate pools and rejects degenerate knowledge.
pub(super) fn plan(cfg: &TaskConfig) -> Result<Plan, TaskError> {
    let mut task = builtin_task(&cfg.spec)?;
    if let Some(s) = &cfg.symbols {
        task.knowledge = task.knowledge.clone().with_symbols(s.clone())?;
    }
    let space = task.space();
    let allowed = task.default_support.candidates(space, DEFAULT_ENUMERATION_CAP)?;
    let (in_dist, ood) = match &cfg.combinations_in_distribution {
        None => (allowed.clone(), allowed),
        Some(patterns) => {
            if let Some((i, _)) = patterns.iter().enumerate().find(|(_, p)| p.0.len() != space.k()) {
                return Err(TaskError::Config {
                    path: format!("combinations_in_distribution[{i}]"),
                    message: format!("pattern length differs from k = {}", space.k()),
                });
            }
            allowed
                .into_iter()
                .partition(|&i| patterns.iter().any(|p| p.matches(&space.vector_at(i))))
        }
    };
    if in_dist.is_empty() {
        return Err(TaskError::Config {
            path: "combinations_in_distribution".into(),
            message: "no allowed concept vector matches the in-distribution patterns".into(),
        });
    }
    // every label position must vary over the in-distribution candidates
    let k = &task.knowledge;
    let first = k.label_of(&space.vector_at(in_dist[0]))?;
    let mut varies = vec![false; first.values().len()];
    for &i in &in_dist[1..] {
        let y = k.label_of(&space.vector_at(i))?;
        for (p, (a, b)) in first.values().iter().zip(y.values()).enumerate() {
            varies[p] |= a != b;
        }
        if varies.iter().all(|&v| v) {
            break;
        }
    }
    if let Some(p) = varies.iter().position(|&v| !v) {
        let name = &k.label_names()[p];
        let message = if k.domains()[p].is_binary() {
            format!("label `{name}` is either all false or all true over the candidate combinations")
        } else {
            format!(
                "label `{name}` takes the single value {} over the candidate combinations",
                first.values()[p]
            )
        };
        return Err(TaskError::Config {
            path: "logic".into(),
            message,
        });
    }
    if cfg.prop_in_distribution < 1.0 && ood.is_empty() {
        return Err(TaskError::Config {
            path: "combinations_in_distribution".into(),
            message: "patterns cover every allowed concept vector, leaving nothing out of distribution"
                .into(),
        });
    }
    Ok(Plan { task, in_dist, ood })
}

struct Sampler {
    pos: Vec<u64>,
    neg: Vec<u64>,
    all: Vec<u64>,
    balanced: bool,
    drawn: usize,
}

impl Sampler {
    fn new(k: &Knowledge, pool: Vec<u64>, binary: bool) -> Result<Sampler, TaskError> {
        let space = k.space();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        if binary {
            for &i in &pool {
                if k.label_of(&space.vector_at(i))?.values()[0] == 1 {
                    pos.push(i);
                } else {
                    neg.push(i);
                }
            }
        }
        let balanced = !pos.is_empty() && !neg.is_empty();
        Ok(Sampler {
            pos,
            neg,
            all: pool,
            balanced,
            drawn: 0,
        })
    }

    fn draw(&mut self, rng: &mut SeededRng) -> u64 {
        let pool = if !self.balanced {
            &self.all
        } else if self.drawn.is_multiple_of(2) {
            &self.pos
        } else {
            &self.neg
        };
        self.drawn += 1;
        pool[rng.below(pool.len() as u64) as usize]
    }
}

/// Generates the dataset for `cfg`, deterministically in its seed.
///
/// Records are drawn with replacement. For single binary labels the draws
/// alternate between positive and negative concept vectors, starting with a
/// positive one, so each split is balanced within one record. The
/// out-of-distribution pool alternates the same way when it holds both
/// sides and is sampled uniformly otherwise.
pub fn generate_dataset(cfg: &TaskConfig) -> Result<Dataset, TaskError> {
    cfg.validate()?;
    let Plan { task, in_dist, ood } = plan(cfg)?;
    let k = &task.knowledge;
    let space = k.space();
    let binary = single_binary(k);
    let mut in_sampler = Sampler::new(k, in_dist, binary)?;
    if binary && !in_sampler.balanced {
        let side = if in_sampler.pos.is_empty() {
            "positive"
        } else {
            "negative"
        };
        return Err(TaskError::Generation(format!(
            "no {side} concept vector among the allowed in-distribution combinations"
        )));
    }
    let counts = SplitCounts::plan(cfg);
    let mut rng = SeededRng::new(cfg.seed);
    let mut records = Vec::with_capacity(counts.total());
    for (split, n) in [
        (Split::Train, counts.train),
        (Split::Val, counts.val),
        (Split::Test, counts.test),
    ] {
        for _ in 0..n {
            let c = space.vector_at(in_sampler.draw(&mut rng));
            records.push(DatasetRecord {
                label: k.label_of(&c)?,
                concepts: c,
                split,
            });
        }
    }
    if counts.ood > 0 {
        let mut ood_sampler = Sampler::new(k, ood, binary)?;
        for _ in 0..counts.ood {
            let c = space.vector_at(ood_sampler.draw(&mut rng));
            records.push(DatasetRecord {
                label: k.label_of(&c)?,
                concepts: c,
                split: Split::Ood,
            });
        }
    }
    Ok(Dataset {
        task: task.spec.family().to_string(),
        k: space.k(),
        b: space.b(),
        symbols: k.symbols().to_vec(),
        labels: k.label_names().to_vec(),
        seed: cfg.seed,
        records,
        knowledge: task.knowledge,
    })
}
