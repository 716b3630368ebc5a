#![allow(dead_code)]

use std::path::Path;

use twgender::corpus::{write_celebrities, write_users};
use twgender::eval::CvConfig;
use twgender::features::{FamilyToggles, FeatureConfig};
use twgender::pipeline::extract_labeled;
use twgender::resources::Resources;
use twgender::{cross_validate, Dataset, EvalReport, Label};

pub fn features_with(families: &str) -> FeatureConfig {
    FeatureConfig {
        families: FamilyToggles::from_list(families).unwrap(),
        ..FeatureConfig::default()
    }
}

/// Extracts features for `families` and runs k-fold CV.
pub fn evaluate(ds: &Dataset, families: &str, k: usize, seed: u64) -> EvalReport {
    let res = Resources::builtin();
    let (_, rows, labels) = extract_labeled(ds, &res, &features_with(families)).unwrap();
    cross_validate(&rows, &labels, &CvConfig { k, seed, ..Default::default() }).unwrap()
}

pub fn accuracy(r: &EvalReport) -> f64 {
    r.metrics.accuracy.unwrap()
}

/// Fisher-Yates with a fixed LCG so the test does not depend on rand.
pub fn shuffle_labels(labels: &mut [Label], seed: u64) {
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    for i in (1..labels.len()).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = ((s >> 33) % (i as u64 + 1)) as usize;
        labels.swap(i, j);
    }
}

pub fn write_dataset(ds: &Dataset, dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let users = dir.join("users.jsonl");
    let celebs = dir.join("celebrities.tsv");
    write_users(std::fs::File::create(&users).unwrap(), &ds.users).unwrap();
    write_celebrities(std::fs::File::create(&celebs).unwrap(), ds.celebrities.values()).unwrap();
    (users, celebs)
}
