//! Python bindings for the `twgender` library.

use std::path::PathBuf;
use std::str::FromStr;

use chrono::NaiveDate;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use twgender::eval::CvConfig;
use twgender::features::{FamilyToggles, FeatureConfig};
use twgender::model::TrainParams;
use twgender::pipeline::extract_dataset;
use twgender::resources::{self, Resources};
use twgender::{Label, SyntheticConfig};

/// Feature names, rows and optional labels.
type FeatureTable = (Vec<String>, Vec<Vec<f64>>, Vec<Option<&'static str>>);

fn err(e: twgender::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn labels_from(labels: &[String]) -> PyResult<Vec<Label>> {
    labels.iter().map(|l| Label::from_str(l).map_err(err)).collect()
}

fn date(s: &str) -> PyResult<NaiveDate> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .map_err(|e| PyValueError::new_err(format!("reference date {s:?}: {e}")))
}

/// Metaphone code of an ASCII alphabetic word.
#[pyfunction]
fn metaphone(word: &str) -> PyResult<String> {
    twgender::metaphone(word).map_err(err)
}

#[pyfunction]
fn edit_distance(a: &str, b: &str) -> usize {
    twgender::edit_distance(a, b)
}

/// Tokens as `(surface, kind)` pairs.
#[pyfunction]
fn tokenize(text: &str) -> Vec<(String, String)> {
    twgender::tokenize(text)
        .into_iter()
        .map(|t| (t.surface, format!("{:?}", t.kind).to_lowercase()))
        .collect()
}

#[pyfunction]
fn split_camelcase(hashtag: &str) -> PyResult<String> {
    twgender::split_camelcase(hashtag).map_err(err)
}

/// Normalizes a tweet with the bundled dictionaries.
#[pyfunction]
fn normalize(text: &str) -> String {
    resources::normalizer().normalize(text)
}

#[pyfunction]
fn is_celebrity(followers: u64, verified: bool) -> bool {
    twgender::is_celebrity(followers, verified)
}

/// Precision, recall and accuracy (as fractions) of a male-positive matrix.
#[pyfunction]
#[pyo3(name = "metrics")]
fn py_metrics(py: Python<'_>, tp: u64, fp: u64, fn_: u64, tn: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &twgender::metrics(&twgender::ConfusionMatrix::new(tp, fp, fn_, tn)))
}

#[pyfunction]
fn stratified_folds(labels: Vec<String>, k: usize, seed: u64) -> PyResult<Vec<Vec<usize>>> {
    twgender::stratified_folds(&labels_from(&labels)?, k, seed).map_err(err)
}

/// Stratified k-fold cross-validation; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (rows, labels, k=10, seed=0, c=1.0, tol=1e-4, max_iter=10_000))]
#[allow(clippy::too_many_arguments)]
fn cross_validate(
    py: Python<'_>,
    rows: Vec<Vec<f64>>,
    labels: Vec<String>,
    k: usize,
    seed: u64,
    c: f64,
    tol: f64,
    max_iter: usize,
) -> PyResult<Bound<'_, PyAny>> {
    let cfg = CvConfig {
        k,
        seed,
        train: TrainParams { c, tol, max_iter, seed },
    };
    let labels = labels_from(&labels)?;
    let report = py
        .detach(|| twgender::cross_validate(&rows, &labels, &cfg))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyclass(name = "Lexicon", module = "twgender")]
struct PyLexicon {
    inner: twgender::Lexicon,
}

#[pymethods]
impl PyLexicon {
    /// Parses LIWC-format text.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyLexicon { inner: twgender::Lexicon::parse(text).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(PyLexicon { inner: twgender::Lexicon::load(&path).map_err(err)? })
    }

    #[staticmethod]
    fn builtin() -> Self {
        PyLexicon { inner: resources::lexicon().clone() }
    }

    fn categories(&self) -> Vec<String> {
        self.inner.categories().to_vec()
    }

    /// Category names matched by a word.
    fn lookup(&self, word: &str) -> Vec<String> {
        self.inner
            .lookup(&word.to_lowercase())
            .into_iter()
            .map(|c| self.inner.categories()[c].clone())
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyclass(name = "Dataset", module = "twgender")]
struct PyDataset {
    inner: twgender::Dataset,
}

#[pymethods]
impl PyDataset {
    #[staticmethod]
    fn load(users: PathBuf, celebrities: PathBuf, reference_date: &str) -> PyResult<Self> {
        let inner = twgender::load_dataset(&users, &celebrities, date(reference_date)?).map_err(err)?;
        Ok(PyDataset { inner })
    }

    /// A synthetic corpus with every planted effect set to `effect`.
    #[staticmethod]
    #[pyo3(signature = (seed, users_per_class=200, effect=1.0))]
    fn synthetic(seed: u64, users_per_class: usize, effect: f64) -> PyResult<Self> {
        let cfg = SyntheticConfig {
            users_per_class,
            ..SyntheticConfig::default().with_effects(effect)
        };
        Ok(PyDataset { inner: twgender::generate_synthetic(&cfg, seed).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.users.len()
    }

    #[getter]
    fn user_ids(&self) -> Vec<String> {
        self.inner.users.iter().map(|u| u.user_id.clone()).collect()
    }

    /// `"male"`, `"female"` or `None` per user.
    #[getter]
    fn labels(&self) -> Vec<Option<&'static str>> {
        self.inner.users.iter().map(|u| u.label.map(Label::as_str)).collect()
    }

    #[getter]
    fn celebrity_count(&self) -> usize {
        self.inner.celebrities.len()
    }

    /// Writes `users.jsonl` and `celebrities.tsv` into `directory`.
    fn write(&self, directory: PathBuf) -> PyResult<()> {
        let io = |e: std::io::Error| PyValueError::new_err(format!("{}: {e}", directory.display()));
        std::fs::create_dir_all(&directory).map_err(io)?;
        let users = std::fs::File::create(directory.join("users.jsonl")).map_err(io)?;
        twgender::corpus::write_users(std::io::BufWriter::new(users), &self.inner.users).map_err(err)?;
        let celebs = std::fs::File::create(directory.join("celebrities.tsv")).map_err(io)?;
        twgender::corpus::write_celebrities(std::io::BufWriter::new(celebs), self.inner.celebrities.values())
            .map_err(err)?;
        Ok(())
    }

    /// Returns `(names, rows, labels)` for every user.
    #[pyo3(signature = (families="all", cap_n=1000))]
    fn features(
        &self,
        py: Python<'_>,
        families: &str,
        cap_n: usize,
    ) -> PyResult<FeatureTable> {
        let cfg = FeatureConfig {
            cap_n,
            families: FamilyToggles::from_list(families).map_err(err)?,
            ..FeatureConfig::default()
        };
        let m = py
            .detach(|| extract_dataset(&self.inner, &Resources::builtin(), &cfg))
            .map_err(err)?;
        let labels = m.labels.iter().map(|l| l.map(Label::as_str)).collect();
        Ok((m.schema.names, m.rows, labels))
    }
}

#[pyclass(name = "LinearModel", module = "twgender")]
struct PyLinearModel {
    inner: twgender::LinearModel,
}

#[pymethods]
impl PyLinearModel {
    /// Standardizes `rows` and trains a linear SVM.
    #[staticmethod]
    #[pyo3(signature = (rows, labels, c=1.0, tol=1e-4, max_iter=10_000, seed=0))]
    fn fit(
        py: Python<'_>,
        rows: Vec<Vec<f64>>,
        labels: Vec<String>,
        c: f64,
        tol: f64,
        max_iter: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let labels = labels_from(&labels)?;
        let params = TrainParams { c, tol, max_iter, seed };
        let inner = py
            .detach(|| twgender::LinearModel::fit(&rows, &labels, &params))
            .map_err(err)?;
        Ok(PyLinearModel { inner })
    }

    fn decision_value(&self, row: Vec<f64>) -> PyResult<f64> {
        self.inner.decision_value(&row).map_err(err)
    }

    fn predict(&self, row: Vec<f64>) -> PyResult<&'static str> {
        Ok(self.inner.predict(&row).map_err(err)?.as_str())
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.inner.weights.clone()
    }

    #[getter]
    fn bias(&self) -> f64 {
        self.inner.bias
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.training_meta.iterations
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyLinearModel { inner })
    }
}

#[pymodule]
#[pyo3(name = "twgender")]
fn twgender_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(metaphone, m)?)?;
    m.add_function(wrap_pyfunction!(edit_distance, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(split_camelcase, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(is_celebrity, m)?)?;
    m.add_function(wrap_pyfunction!(py_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(stratified_folds, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_class::<PyLexicon>()?;
    m.add_class::<PyDataset>()?;
    m.add_class::<PyLinearModel>()?;
    Ok(())
}
