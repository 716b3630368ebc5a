//! Run configuration read from TOML, with command-line overrides applied on top.

use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::SyntheticConfig;
use crate::error::{Error, Result};
use crate::eval::{CvConfig, DEFAULT_FOLDS};
use crate::features::FeatureConfig;
use crate::model::TrainParams;
use crate::resources::ResourcePaths;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataPaths {
    pub users: Option<PathBuf>,
    pub celebrities: Option<PathBuf>,
    /// The "now" used for celebrity ages.
    pub reference_date: Option<NaiveDate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub k: usize,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub data: DataPaths,
    pub resources: ResourcePaths,
    pub features: FeatureConfig,
    pub train: TrainSection,
    pub synth: SyntheticConfig,
}

/// Training hyperparameters; the seed comes from the top level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainSection {
    pub c: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for TrainSection {
    fn default() -> Self {
        let p = TrainParams::default();
        TrainSection {
            c: p.c,
            tol: p.tol,
            max_iter: p.max_iter,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k: DEFAULT_FOLDS,
            seed: 0,
            out_dir: None,
            data: DataPaths::default(),
            resources: ResourcePaths::default(),
            features: FeatureConfig::default(),
            train: TrainSection::default(),
            synth: SyntheticConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))
    }

    /// Reads a config file. Relative paths inside it resolve against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::parse(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        if let Some(base) = path.parent() {
            cfg.rebase(base);
        }
        Ok(cfg)
    }

    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut Option<PathBuf>| {
            if let Some(p) = p {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        };
        fix(&mut self.out_dir);
        fix(&mut self.data.users);
        fix(&mut self.data.celebrities);
        let r = &mut self.resources;
        for p in [&mut r.lexicon, &mut r.words, &mut r.shorthand, &mut r.emoticons, &mut r.famous_for] {
            fix(p);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Invalid(format!("k must be at least 2, got {}", self.k)));
        }
        self.features.validate()?;
        self.train_params().validate()
    }

    pub fn train_params(&self) -> TrainParams {
        TrainParams {
            c: self.train.c,
            tol: self.train.tol,
            max_iter: self.train.max_iter,
            seed: self.seed,
        }
    }

    pub fn cv_config(&self) -> CvConfig {
        CvConfig {
            k: self.k,
            seed: self.seed,
            train: self.train_params(),
        }
    }
}
