//! Binary gender inference for Twitter users.
//!
//! Three feature families feed a soft-margin linear SVM:
//!
//! - tweet behavior: posting, hashtag and retweet rates, tweet length,
//!   follower ratio and the share of followed accounts that are celebrities;
//! - linguistic content: per-category word rates from a LIWC-style lexicon,
//!   computed on tweets cleaned by [`normalizer`];
//! - popular neighborhood: age, gender and "famous for" composition of the
//!   celebrities a user follows.
//!
//! [`eval`] runs stratified k-fold cross-validation and reports a pooled
//! confusion matrix with per-class precision and recall.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod features;
pub mod lexicon;
pub mod model;
pub mod neighborhood;
pub mod normalizer;
pub mod pipeline;
pub mod resources;

pub use corpus::{
    generate_synthetic, is_celebrity, load_dataset, CelebrityRecord, Dataset, Label,
    SyntheticConfig, Tweet, UserRecord,
};
pub use error::{Error, Result};
pub use eval::{cross_validate, metrics, stratified_folds, ConfusionMatrix, EvalReport, Metrics};
pub use features::{FeatureConfig, FeatureFamily, FeatureSchema, FeatureVector};
pub use lexicon::Lexicon;
pub use model::{LinearModel, Standardizer, TrainParams};
pub use normalizer::{
    edit_distance, metaphone, normalize_tweet, split_camelcase, spell_correct, tokenize,
    Normalizer, SpellDictionaries, Token, TokenKind,
};
