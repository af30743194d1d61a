//! Concept-quality metrics: confusion matrices over concept codes, concept
//! collapse, macro and mean F1, accuracies, and prediction-file parsing.
//!
//! A concept vector is reduced to the integer `Σ c_j · b^(k-1-j)` before
//! building confusion matrices. Per-class F1 with no predicted and no
//! actual positives is 0. Accuracies average per-position accuracy
//! uniformly over positions.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knowledge::{ConceptSpace, ConceptVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("ground truth has {gt} entries but predictions have {pred}")]
    LengthMismatch { gt: usize, pred: usize },
    #[error("entry {index}: widths differ ({gt} vs {pred})")]
    WidthMismatch { index: usize, gt: usize, pred: usize },
    #[error("no samples")]
    Empty,
    #[error("concept vector {0} is outside the concept space")]
    OutOfSpace(String),
    #[error("position {position} is outside width {width}")]
    BadPosition { position: usize, width: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
}

fn same_len<A, B>(gt: &[A], pred: &[B]) -> Result<(), MetricsError> {
    if gt.len() != pred.len() {
        return Err(MetricsError::LengthMismatch {
            gt: gt.len(),
            pred: pred.len(),
        });
    }
    Ok(())
}

/// Base-`b` code of the selected positions, first position most
/// significant.
pub fn concept_code(c: &[u32], b: u32, positions: &[usize]) -> u128 {
    positions
        .iter()
        .fold(0u128, |acc, &j| acc * b as u128 + c[j] as u128)
}

/// Square count matrix over the union of observed codes.
/// Rows are ground truth, columns are predictions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    labels: Vec<u128>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    /// Builds the matrix from paired codes.
    pub fn from_codes(gt: &[u128], pred: &[u128]) -> Result<Self, MetricsError> {
        same_len(gt, pred)?;
        let labels: Vec<u128> = gt
            .iter()
            .chain(pred)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<u128, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let m = labels.len();
        let mut counts = vec![vec![0u64; m]; m];
        for (g, p) in gt.iter().zip(pred) {
            counts[index[g]][index[p]] += 1;
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    pub fn labels(&self) -> &[u128] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }
}

/// Confusion matrix of whole concept vectors.
pub fn confusion_matrix(
    gt: &[ConceptVector],
    pred: &[ConceptVector],
    space: ConceptSpace,
) -> Result<ConfusionMatrix, MetricsError> {
    let all: Vec<usize> = (0..space.k()).collect();
    confusion_matrix_projected(gt, pred, space, &all)
}

/// Confusion matrix of the concept values at `positions` only, e.g. the
/// shape attributes alone.
pub fn confusion_matrix_projected(
    gt: &[ConceptVector],
    pred: &[ConceptVector],
    space: ConceptSpace,
    positions: &[usize],
) -> Result<ConfusionMatrix, MetricsError> {
    same_len(gt, pred)?;
    if let Some(&p) = positions.iter().find(|&&p| p >= space.k()) {
        return Err(MetricsError::BadPosition {
            position: p,
            width: space.k(),
        });
    }
    let code = |c: &ConceptVector| {
        if space.contains(c) {
            Ok(concept_code(c.values(), space.b(), positions))
        } else {
            Err(MetricsError::OutOfSpace(c.to_string()))
        }
    };
    let g = gt.iter().map(code).collect::<Result<Vec<_>, _>>()?;
    let p = pred.iter().map(code).collect::<Result<Vec<_>, _>>()?;
    ConfusionMatrix::from_codes(&g, &p)
}

/// `1 - p/m`, with `p` the number of columns holding any count.
pub fn collapse(cm: &ConfusionMatrix) -> Result<f64, MetricsError> {
    let m = cm.size();
    if m == 0 {
        return Err(MetricsError::Empty);
    }
    let used = (0..m).filter(|&j| cm.counts.iter().any(|r| r[j] > 0)).count();
    Ok(1.0 - used as f64 / m as f64)
}

fn f1(tp: u64, fp: u64, fn_: u64) -> f64 {
    // 2PR/(P+R) = 2tp/(2tp+fp+fn); zero when there is nothing to score
    let denom = 2 * tp + fp + fn_;
    if denom == 0 {
        0.0
    } else {
        (2 * tp) as f64 / denom as f64
    }
}

/// Binary F1 of the positive class.
pub fn binary_f1(gt: &[bool], pred: &[bool]) -> Result<f64, MetricsError> {
    same_len(gt, pred)?;
    let (mut tp, mut fp, mut fn_) = (0, 0, 0);
    for (&g, &p) in gt.iter().zip(pred) {
        match (g, p) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (true, false) => fn_ += 1,
            _ => {}
        }
    }
    Ok(f1(tp, fp, fn_))
}

/// Unweighted mean over `classes` of the one-vs-rest F1.
pub fn macro_f1<T: Eq + Hash>(gt: &[T], pred: &[T], classes: &[T]) -> Result<f64, MetricsError> {
    same_len(gt, pred)?;
    if classes.is_empty() {
        return Err(MetricsError::Empty);
    }
    let mut tally: HashMap<&T, (u64, u64, u64)> = classes.iter().map(|c| (c, (0, 0, 0))).collect();
    for (g, p) in gt.iter().zip(pred) {
        if g == p {
            if let Some(t) = tally.get_mut(g) {
                t.0 += 1;
            }
        } else {
            if let Some(t) = tally.get_mut(p) {
                t.1 += 1;
            }
            if let Some(t) = tally.get_mut(g) {
                t.2 += 1;
            }
        }
    }
    let sum: f64 = classes
        .iter()
        .map(|c| {
            let (tp, fp, fn_) = tally[c];
            f1(tp, fp, fn_)
        })
        .sum();
    Ok(sum / classes.len() as f64)
}

fn check_widths<T>(gt: &[Vec<T>], pred: &[Vec<T>]) -> Result<usize, MetricsError> {
    same_len(gt, pred)?;
    let Some(first) = gt.first() else {
        return Err(MetricsError::Empty);
    };
    let w = first.len();
    for (i, (g, p)) in gt.iter().zip(pred).enumerate() {
        if g.len() != w || p.len() != w {
            return Err(MetricsError::WidthMismatch {
                index: i,
                gt: g.len().max(w),
                pred: p.len(),
            });
        }
    }
    if w == 0 {
        return Err(MetricsError::Empty);
    }
    Ok(w)
}

/// Per-position binary F1 averaged over positions.
pub fn mean_f1(gt: &[Vec<bool>], pred: &[Vec<bool>]) -> Result<f64, MetricsError> {
    let w = check_widths(gt, pred)?;
    let mut sum = 0.0;
    for j in 0..w {
        let g: Vec<bool> = gt.iter().map(|v| v[j]).collect();
        let p: Vec<bool> = pred.iter().map(|v| v[j]).collect();
        sum += binary_f1(&g, &p)?;
    }
    Ok(sum / w as f64)
}

/// Per-position accuracy averaged over positions.
pub fn mean_accuracy<T: PartialEq>(gt: &[Vec<T>], pred: &[Vec<T>]) -> Result<f64, MetricsError> {
    let w = check_widths(gt, pred)?;
    let hits: usize = gt
        .iter()
        .zip(pred)
        .map(|(g, p)| g.iter().zip(p).filter(|(a, b)| a == b).count())
        .sum();
    Ok(hits as f64 / (w * gt.len()) as f64)
}

/// Fraction of samples predicted exactly.
pub fn exact_accuracy<T: PartialEq>(gt: &[T], pred: &[T]) -> Result<f64, MetricsError> {
    same_len(gt, pred)?;
    if gt.is_empty() {
        return Err(MetricsError::Empty);
    }
    Ok(gt.iter().zip(pred).filter(|(a, b)| a == b).count() as f64 / gt.len() as f64)
}

/// One line of a prediction file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictionRecord {
    pub gt_concepts: Vec<u32>,
    pub pred_concepts: Vec<u32>,
    #[serde(default)]
    pub gt_label: Option<Vec<i64>>,
    #[serde(default)]
    pub pred_label: Option<Vec<i64>>,
}

/// Parses JSON lines; blank lines are skipped. Errors carry 1-based line
/// numbers.
pub fn parse_predictions(text: &str) -> Result<Vec<PredictionRecord>, MetricsError> {
    let mut out = Vec::new();
    let mut width = None;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fail = |message: String| MetricsError::Parse { line: i + 1, message };
        let r: PredictionRecord = serde_json::from_str(line).map_err(|e| fail(e.to_string()))?;
        if r.gt_concepts.len() != r.pred_concepts.len() || r.gt_concepts.is_empty() {
            return Err(fail(
                "gt_concepts and pred_concepts need the same non-zero width".into(),
            ));
        }
        if r.gt_label.is_some() != r.pred_label.is_some() {
            return Err(fail("gt_label and pred_label must appear together".into()));
        }
        if let (Some(g), Some(p)) = (&r.gt_label, &r.pred_label) {
            if g.len() != p.len() {
                return Err(fail("gt_label and pred_label widths differ".into()));
            }
        }
        let w = (r.gt_concepts.len(), r.gt_label.as_ref().map(Vec::len));
        match width {
            None => width = Some(w),
            Some(prev) if prev != w => return Err(fail("record shape differs from the first record".into())),
            _ => {}
        }
        out.push(r);
    }
    if out.is_empty() {
        return Err(MetricsError::Empty);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Collapse,
    MacroF1,
    MeanF1,
    ConceptMeanF1,
    LabelAccuracy,
    ConceptAccuracy,
    Confusion,
}

impl Metric {
    pub const DEFAULT: [Metric; 5] = [
        Metric::Collapse,
        Metric::MacroF1,
        Metric::MeanF1,
        Metric::LabelAccuracy,
        Metric::ConceptAccuracy,
    ];
}

impl FromStr for Metric {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "collapse" | "cls" => Metric::Collapse,
            "macro_f1" | "macrof1" => Metric::MacroF1,
            "mean_f1" | "meanf1" | "mf1" => Metric::MeanF1,
            "concept_mean_f1" => Metric::ConceptMeanF1,
            "label_accuracy" | "macc" => Metric::LabelAccuracy,
            "concept_accuracy" => Metric::ConceptAccuracy,
            "confusion" | "confusion_matrix" => Metric::Confusion,
            _ => return Err(MetricsError::UnknownMetric(s.to_string())),
        })
    }
}

/// Requested metrics over a prediction file. Metrics that do not apply
/// (label metrics without labels, F1 over non-binary values) are absent.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MetricReport {
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapse: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub macro_f1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_f1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concept_mean_f1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label_accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concept_accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confusion: Option<ConfusionMatrix>,
}

fn as_bits<T: Copy + Into<i64>>(rows: &[Vec<T>]) -> Option<Vec<Vec<bool>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&v| match v.into() {
                    0 => Some(false),
                    1 => Some(true),
                    _ => None,
                })
                .collect()
        })
        .collect()
}

/// Computes `metrics` over parsed records. Concept codes use the smallest
/// base covering every observed value (at least 2); `positions` restricts
/// the collapse, macro-F1 and confusion metrics to those concepts.
pub fn evaluate(
    records: &[PredictionRecord],
    metrics: &[Metric],
    positions: Option<&[usize]>,
) -> Result<MetricReport, MetricsError> {
    if records.is_empty() {
        return Err(MetricsError::Empty);
    }
    let k = records[0].gt_concepts.len();
    let b = records
        .iter()
        .flat_map(|r| r.gt_concepts.iter().chain(&r.pred_concepts))
        .max()
        .map_or(2, |&m| (m + 1).max(2));
    let space = ConceptSpace::new(k, b).map_err(|_| MetricsError::Empty)?;
    let gt: Vec<ConceptVector> = records.iter().map(|r| r.gt_concepts.clone().into()).collect();
    let pred: Vec<ConceptVector> = records.iter().map(|r| r.pred_concepts.clone().into()).collect();
    let all: Vec<usize> = (0..k).collect();
    let positions = positions.unwrap_or(&all);
    let cm = confusion_matrix_projected(&gt, &pred, space, positions)?;
    let gt_rows: Vec<Vec<u32>> = records.iter().map(|r| r.gt_concepts.clone()).collect();
    let pred_rows: Vec<Vec<u32>> = records.iter().map(|r| r.pred_concepts.clone()).collect();
    let labels: Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> = records
        .iter()
        .map(|r| Some((r.gt_label.clone()?, r.pred_label.clone()?)))
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().unzip());
    let mut report = MetricReport {
        samples: records.len(),
        ..Default::default()
    };
    for m in metrics {
        match m {
            Metric::Collapse => report.collapse = Some(collapse(&cm)?),
            Metric::MacroF1 => {
                let g: Vec<u128> = gt
                    .iter()
                    .map(|c| concept_code(c.values(), b, positions))
                    .collect();
                let p: Vec<u128> = pred
                    .iter()
                    .map(|c| concept_code(c.values(), b, positions))
                    .collect();
                report.macro_f1 = Some(macro_f1(&g, &p, cm.labels())?);
            }
            Metric::MeanF1 => {
                if let Some((g, p)) = &labels {
                    if let (Some(g), Some(p)) = (as_bits(g), as_bits(p)) {
                        report.mean_f1 = Some(mean_f1(&g, &p)?);
                    }
                }
            }
            Metric::ConceptMeanF1 => {
                if let (Some(g), Some(p)) = (as_bits(&gt_rows), as_bits(&pred_rows)) {
                    report.concept_mean_f1 = Some(mean_f1(&g, &p)?);
                }
            }
            Metric::LabelAccuracy => {
                if let Some((g, p)) = &labels {
                    if !g[0].is_empty() {
                        report.label_accuracy = Some(mean_accuracy(g, p)?);
                    }
                }
            }
            Metric::ConceptAccuracy => report.concept_accuracy = Some(mean_accuracy(&gt_rows, &pred_rows)?),
            Metric::Confusion => report.confusion = Some(cm.clone()),
        }
    }
    Ok(report)
}
