//! Dataset-level feature extraction.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::corpus::{Dataset, Label, UserRecord};
use crate::error::{Error, Result};
use crate::features::{format_sig9, FeatureConfig, FeatureExtractor, FeatureSchema, FeatureVector};
use crate::resources::Resources;

/// Feature rows for a set of users, in the order they were given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub schema: FeatureSchema,
    pub user_ids: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<Option<Label>>,
}

impl FeatureMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows and labels of the labeled users only.
    pub fn labeled(&self) -> (Vec<Vec<f64>>, Vec<Label>) {
        self.rows
            .iter()
            .zip(&self.labels)
            .filter_map(|(r, l)| l.map(|l| (r.clone(), l)))
            .unzip()
    }

    pub fn vectors(&self) -> Vec<(FeatureVector, Option<Label>)> {
        self.rows
            .iter()
            .zip(&self.labels)
            .map(|(r, l)| (FeatureVector { values: r.clone() }, *l))
            .collect()
    }

    /// CSV with an `id` column, the schema names, then `label` (empty when
    /// unlabeled). Values use nine significant digits.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| Error::Invalid(format!("writing features: {e}"));
        let mut header = vec!["id".to_string()];
        header.extend(self.schema.names.iter().cloned());
        header.push("label".into());
        w.write_record(&header).map_err(err)?;
        for ((id, row), label) in self.user_ids.iter().zip(&self.rows).zip(&self.labels) {
            let mut rec = vec![id.clone()];
            rec.extend(row.iter().map(|v| format_sig9(*v)));
            rec.push(label.map(|l| l.as_str().to_string()).unwrap_or_default());
            w.write_record(&rec).map_err(err)?;
        }
        w.flush().map_err(|e| Error::io("<features>", e))
    }
}

pub fn extract_users(
    dataset: &Dataset,
    users: &[UserRecord],
    resources: &Resources,
    config: &FeatureConfig,
) -> Result<FeatureMatrix> {
    let extractor =
        FeatureExtractor::new(resources, &dataset.celebrities, dataset.reference_date, *config)?;
    let vectors = extractor.extract_all(users)?;
    Ok(FeatureMatrix {
        schema: extractor.schema().clone(),
        user_ids: users.iter().map(|u| u.user_id.clone()).collect(),
        rows: vectors.into_iter().map(|v| v.values).collect(),
        labels: users.iter().map(|u| u.label).collect(),
    })
}

/// Features for every user in the dataset.
pub fn extract_dataset(
    dataset: &Dataset,
    resources: &Resources,
    config: &FeatureConfig,
) -> Result<FeatureMatrix> {
    extract_users(dataset, &dataset.users, resources, config)
}

/// Features for labeled users only; fails if there are none.
pub fn extract_labeled(
    dataset: &Dataset,
    resources: &Resources,
    config: &FeatureConfig,
) -> Result<(FeatureSchema, Vec<Vec<f64>>, Vec<Label>)> {
    let users: Vec<UserRecord> = dataset.labeled().map(|(u, _)| u.clone()).collect();
    if users.is_empty() {
        return Err(Error::Invalid("dataset has no labeled users".into()));
    }
    let m = extract_users(dataset, &users, resources, config)?;
    let (rows, labels) = m.labeled();
    Ok((m.schema, rows, labels))
}
