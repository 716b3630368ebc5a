//! Standardization and a soft-margin linear SVM trained by dual coordinate
//! descent on the hinge loss.
//!
//! The bias is learned as the weight of an appended constant feature and is
//! therefore regularized along with the other weights.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::features::{fingerprint_names, FeatureConfig, FeatureSchema, FeatureVector};

pub const MODEL_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Column means and population standard deviations. Constant columns
    /// get a std of 1.
    pub fn fit<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Training(format!(
                "standardizer needs at least 2 rows, got {}",
                rows.len()
            )));
        }
        let d = rows[0].as_ref().len();
        let n = rows.len() as f64;
        let mut means = vec![0.0; d];
        for r in rows {
            let r = check_row(r.as_ref(), d)?;
            for (m, x) in means.iter_mut().zip(r) {
                *m += x;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut vars = vec![0.0; d];
        for r in rows {
            for ((v, x), m) in vars.iter_mut().zip(r.as_ref()).zip(&means) {
                *v += (x - m) * (x - m);
            }
        }
        let stds = vars
            .into_iter()
            .map(|v| {
                let s = (v / n).sqrt();
                if s > 0.0 && s.is_finite() {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        Ok(Standardizer { means, stds })
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    pub fn transform(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: row.len(),
            });
        }
        Ok(row
            .iter()
            .zip(&self.means)
            .zip(&self.stds)
            .map(|((x, m), s)| (x - m) / s)
            .collect())
    }

    pub fn transform_all<R: AsRef<[f64]>>(&self, rows: &[R]) -> Result<Vec<Vec<f64>>> {
        rows.iter().map(|r| self.transform(r.as_ref())).collect()
    }
}

fn check_row(row: &[f64], d: usize) -> Result<&[f64]> {
    if row.len() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            got: row.len(),
        });
    }
    if row.iter().any(|x| !x.is_finite()) {
        return Err(Error::Training("non-finite feature value".into()));
    }
    Ok(row)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainParams {
    pub c: f64,
    pub tol: f64,
    /// Maximum number of passes over the data.
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            c: 1.0,
            tol: 1e-4,
            max_iter: 10_000,
            seed: 0,
        }
    }
}

impl TrainParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::Invalid(format!("C must be positive, got {}", self.c)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::Invalid("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpochStats {
    pub primal: f64,
    pub dual: f64,
    pub max_violation: f64,
}

/// Result of dual coordinate descent in the standardized space.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSolution {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub alphas: Vec<f64>,
    pub epochs: usize,
    pub converged: bool,
    pub history: Vec<EpochStats>,
}

impl DualSolution {
    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x) + self.bias
    }

    pub fn final_stats(&self) -> EpochStats {
        *self.history.last().expect("at least one epoch")
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn objectives(rows: &[Vec<f64>], y: &[f64], w: &[f64], b: f64, alphas: &[f64], c: f64) -> (f64, f64) {
    let norm2 = dot(w, w) + b * b;
    let hinge: f64 = rows
        .iter()
        .zip(y)
        .map(|(x, yi)| (1.0 - yi * (dot(w, x) + b)).max(0.0))
        .sum();
    let primal = 0.5 * norm2 + c * hinge;
    let dual = alphas.iter().sum::<f64>() - 0.5 * norm2;
    (primal, dual)
}

/// Minimizes `½‖w‖² + ½b² + C·Σ max(0, 1 − yᵢ(w·xᵢ + b))` over already
/// standardized rows. Labels must be ±1.
pub fn train_standardized(rows: &[Vec<f64>], y: &[f64], params: &TrainParams) -> Result<DualSolution> {
    params.validate()?;
    if rows.is_empty() {
        return Err(Error::Training("no training rows".into()));
    }
    if rows.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: rows.len(),
            got: y.len(),
        });
    }
    let d = rows[0].len();
    for r in rows {
        check_row(r, d)?;
    }
    if let Some(bad) = y.iter().find(|&&v| v != 1.0 && v != -1.0) {
        return Err(Error::Training(format!("labels must be +1 or -1, got {bad}")));
    }
    if !(y.contains(&1.0) && y.contains(&-1.0)) {
        return Err(Error::Training("both classes must be present".into()));
    }

    let n = rows.len();
    let c = params.c;
    // Diagonal of Q including the constant feature.
    let qii: Vec<f64> = rows.iter().map(|x| dot(x, x) + 1.0).collect();
    let mut alphas = vec![0.0; n];
    let mut w = vec![0.0; d];
    let mut b = 0.0;
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut history = Vec::new();
    let mut converged = false;

    for _ in 0..params.max_iter {
        order.shuffle(&mut rng);
        let mut max_pg: f64 = 0.0;
        for &i in &order {
            let x = &rows[i];
            let g = y[i] * (dot(&w, x) + b) - 1.0;
            let a = alphas[i];
            let pg = if a <= 0.0 {
                g.min(0.0)
            } else if a >= c {
                g.max(0.0)
            } else {
                g
            };
            max_pg = max_pg.max(pg.abs());
            if pg.abs() > 1e-15 {
                let new = (a - g / qii[i]).clamp(0.0, c);
                let delta = (new - a) * y[i];
                alphas[i] = new;
                for (wj, xj) in w.iter_mut().zip(x) {
                    *wj += delta * xj;
                }
                b += delta;
            }
        }
        let (primal, dual) = objectives(rows, y, &w, b, &alphas, c);
        history.push(EpochStats {
            primal,
            dual,
            max_violation: max_pg,
        });
        if max_pg < params.tol {
            converged = true;
            break;
        }
    }
    if w.iter().any(|v| !v.is_finite()) || !b.is_finite() {
        return Err(Error::Training("weights diverged".into()));
    }
    Ok(DualSolution {
        weights: w,
        bias: b,
        epochs: history.len(),
        converged,
        alphas,
        history,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub iterations: usize,
    pub converged: bool,
    pub duality_gap: f64,
    pub max_violation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub standardizer: Standardizer,
    pub c_param: f64,
    pub training_meta: TrainingMeta,
}

impl LinearModel {
    /// Fits the standardizer on `rows`, then trains on the standardized rows.
    pub fn fit<R: AsRef<[f64]>>(rows: &[R], labels: &[Label], params: &TrainParams) -> Result<Self> {
        let standardizer = Standardizer::fit(rows)?;
        Self::fit_with(standardizer, rows, labels, params)
    }

    /// Trains with a given standardizer.
    pub fn fit_with<R: AsRef<[f64]>>(
        standardizer: Standardizer,
        rows: &[R],
        labels: &[Label],
        params: &TrainParams,
    ) -> Result<Self> {
        let z = standardizer.transform_all(rows)?;
        let y: Vec<f64> = labels.iter().map(|l| l.sign()).collect();
        let sol = train_standardized(&z, &y, params)?;
        if !sol.converged {
            log::warn!(
                "training stopped after {} epochs without reaching tol {}",
                sol.epochs,
                params.tol
            );
        }
        Ok(Self::from_solution(standardizer, &sol, params.c))
    }

    pub fn from_solution(standardizer: Standardizer, sol: &DualSolution, c_param: f64) -> Self {
        let last = sol.final_stats();
        LinearModel {
            weights: sol.weights.clone(),
            bias: sol.bias,
            standardizer,
            c_param,
            training_meta: TrainingMeta {
                iterations: sol.epochs,
                converged: sol.converged,
                duality_gap: last.primal - last.dual,
                max_violation: last.max_violation,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `w · standardize(raw) + b`.
    pub fn decision_value(&self, raw: &[f64]) -> Result<f64> {
        let z = self.standardizer.transform(raw)?;
        Ok(dot(&self.weights, &z) + self.bias)
    }

    /// Sign of the decision value; exactly zero maps to Male (+1).
    pub fn predict(&self, raw: &[f64]) -> Result<Label> {
        Ok(Label::from_sign(self.decision_value(raw)?))
    }

    pub fn predict_vector(&self, v: &FeatureVector) -> Result<Label> {
        self.predict(&v.values)
    }
}

/// On-disk model: the trained model plus the schema it expects.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub version: String,
    pub schema: Vec<String>,
    pub schema_fingerprint: String,
    pub params: TrainParams,
    /// Feature settings the schema was built from.
    #[serde(default)]
    pub features: FeatureConfig,
    pub model: LinearModel,
}

impl ModelFile {
    pub fn new(
        schema: &FeatureSchema,
        features: FeatureConfig,
        params: TrainParams,
        model: LinearModel,
    ) -> Self {
        ModelFile {
            version: MODEL_VERSION.to_string(),
            schema: schema.names.clone(),
            schema_fingerprint: schema.fingerprint(),
            params,
            features,
            model,
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: ModelFile = serde_json::from_str(&text)?;
        if file.version != MODEL_VERSION {
            return Err(Error::Invalid(format!(
                "{}: unsupported model version {:?}",
                path.display(),
                file.version
            )));
        }
        if file.schema.len() != file.model.len() || file.model.standardizer.len() != file.model.len() {
            return Err(Error::Invalid(format!(
                "{}: schema and weight lengths differ",
                path.display()
            )));
        }
        if fingerprint_names(&file.schema) != file.schema_fingerprint {
            return Err(Error::Invalid(format!(
                "{}: schema fingerprint does not match schema names",
                path.display()
            )));
        }
        Ok(file)
    }

    /// Errors unless `schema` is the one the model was trained on.
    pub fn check_schema(&self, schema: &FeatureSchema) -> Result<()> {
        if schema.names != self.schema {
            return Err(Error::SchemaMismatch {
                model: self.schema_fingerprint.clone(),
                features: schema.fingerprint(),
            });
        }
        Ok(())
    }
}
