//! Stratified k-fold cross-validation and confusion-matrix metrics.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::model::{LinearModel, Standardizer, TrainParams};

pub const DEFAULT_FOLDS: usize = 10;

/// Splits `0..labels.len()` into `k` folds. Each class is shuffled and dealt
/// round-robin, continuing from the fold where the previous class stopped, so
/// fold sizes and per-class counts each differ by at most one.
pub fn stratified_folds(labels: &[Label], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::Folds(format!("k must be at least 2, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for class in [Label::Male, Label::Female] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < k {
            return Err(Error::Folds(format!(
                "class {class} has {} members, fewer than k = {k}",
                members.len()
            )));
        }
        members.shuffle(&mut rng);
        for i in members {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

/// Binary confusion matrix with Male as the positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        ConfusionMatrix { tp, fp, fn_, tn }
    }

    pub fn record(&mut self, truth: Label, predicted: Label) {
        match (truth, predicted) {
            (Label::Male, Label::Male) => self.tp += 1,
            (Label::Female, Label::Male) => self.fp += 1,
            (Label::Male, Label::Female) => self.fn_ += 1,
            (Label::Female, Label::Female) => self.tn += 1,
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Label, Label)>) -> Self {
        let mut cm = ConfusionMatrix::default();
        for (t, p) in pairs {
            cm.record(t, p);
        }
        cm
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

impl std::ops::Add for ConfusionMatrix {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        ConfusionMatrix::new(self.tp + o.tp, self.fp + o.fp, self.fn_ + o.fn_, self.tn + o.tn)
    }
}

impl std::iter::Sum for ConfusionMatrix {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ConfusionMatrix::default(), |a, b| a + b)
    }
}

/// Fractions in [0, 1]; `None` where the denominator is zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision_male: Option<f64>,
    pub precision_female: Option<f64>,
    pub recall_male: Option<f64>,
    pub recall_female: Option<f64>,
    pub accuracy: Option<f64>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn metrics(cm: &ConfusionMatrix) -> Metrics {
    Metrics {
        precision_male: ratio(cm.tp, cm.tp + cm.fp),
        precision_female: ratio(cm.tn, cm.tn + cm.fn_),
        recall_male: ratio(cm.tp, cm.tp + cm.fn_),
        recall_female: ratio(cm.tn, cm.tn + cm.fp),
        accuracy: ratio(cm.tp + cm.tn, cm.total()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvConfig {
    pub k: usize,
    pub seed: u64,
    pub train: TrainParams,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            k: DEFAULT_FOLDS,
            seed: 0,
            train: TrainParams::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold: usize,
    pub test_size: usize,
    pub iterations: usize,
    pub converged: bool,
    pub matrix: ConfusionMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub k: usize,
    pub seed: u64,
    pub c: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Enabled feature families, e.g. `behavior+linguistic`.
    pub families: String,
    pub schema_fingerprint: String,
    pub n_users: usize,
    pub folds: Vec<FoldResult>,
    pub pooled: ConfusionMatrix,
    pub metrics: Metrics,
}

fn fold_seed(seed: u64, fold: usize) -> u64 {
    seed ^ (fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `cross_validate_with_hook` without instrumentation.
pub fn cross_validate(rows: &[Vec<f64>], labels: &[Label], cfg: &CvConfig) -> Result<EvalReport> {
    cross_validate_with_hook(rows, labels, cfg, |_, _| {})
}

/// Runs stratified k-fold CV. The standardizer is fitted on each training
/// fold alone; `hook` sees every fold's fitted standardizer.
pub fn cross_validate_with_hook<H>(
    rows: &[Vec<f64>],
    labels: &[Label],
    cfg: &CvConfig,
    hook: H,
) -> Result<EvalReport>
where
    H: Fn(usize, &Standardizer) + Sync,
{
    if rows.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: labels.len(),
            got: rows.len(),
        });
    }
    cfg.train.validate()?;
    let folds = stratified_folds(labels, cfg.k, cfg.seed)?;
    let mut in_test = vec![usize::MAX; rows.len()];
    for (f, idx) in folds.iter().enumerate() {
        for &i in idx {
            in_test[i] = f;
        }
    }
    let results: Vec<FoldResult> = folds
        .par_iter()
        .enumerate()
        .map(|(f, test)| {
            let train_idx: Vec<usize> = (0..rows.len()).filter(|&i| in_test[i] != f).collect();
            let train_rows: Vec<&[f64]> = train_idx.iter().map(|&i| rows[i].as_slice()).collect();
            let train_labels: Vec<Label> = train_idx.iter().map(|&i| labels[i]).collect();
            let standardizer = Standardizer::fit(&train_rows)?;
            hook(f, &standardizer);
            let params = TrainParams {
                seed: fold_seed(cfg.seed, f),
                ..cfg.train
            };
            let model = LinearModel::fit_with(standardizer, &train_rows, &train_labels, &params)?;
            let mut matrix = ConfusionMatrix::default();
            for &i in test {
                matrix.record(labels[i], model.predict(&rows[i])?);
            }
            Ok(FoldResult {
                fold: f,
                test_size: test.len(),
                iterations: model.training_meta.iterations,
                converged: model.training_meta.converged,
                matrix,
            })
        })
        .collect::<Result<_>>()?;
    let pooled: ConfusionMatrix = results.iter().map(|r| r.matrix).sum();
    Ok(EvalReport {
        k: cfg.k,
        seed: cfg.seed,
        c: cfg.train.c,
        tol: cfg.train.tol,
        max_iter: cfg.train.max_iter,
        families: String::new(),
        schema_fingerprint: String::new(),
        n_users: rows.len(),
        metrics: metrics(&pooled),
        pooled,
        folds: results,
    })
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{:.2}%", 100.0 * x))
}

impl EvalReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Predicted classes as rows, true classes as columns, precision on the
    /// right and recall along the bottom.
    pub fn to_table(&self) -> String {
        let cm = &self.pooled;
        let m = &self.metrics;
        let rows = [
            ["", "True Male", "True Female", "Precision"].map(String::from),
            [
                "Pred. Male".into(),
                cm.tp.to_string(),
                cm.fp.to_string(),
                pct(m.precision_male),
            ],
            [
                "Pred. Female".into(),
                cm.fn_.to_string(),
                cm.tn.to_string(),
                pct(m.precision_female),
            ],
            [
                "Recall".into(),
                pct(m.recall_male),
                pct(m.recall_female),
                String::new(),
            ],
        ];
        let widths: Vec<usize> = (0..4)
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in &rows {
            let mut line = format!("{:<w$}", r[0], w = widths[0]);
            for c in 1..4 {
                let _ = write!(line, "  {:>w$}", r[c], w = widths[c]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let _ = writeln!(out, "Overall accuracy = {}", pct(m.accuracy));
        let _ = writeln!(
            out,
            "k={} seed={} C={} families={}",
            self.k, self.seed, self.c, self.families
        );
        out
    }
}
