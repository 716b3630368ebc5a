//! Users, tweets and celebrity metadata.

mod io;
mod synth;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Datelike, NaiveDate, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normalizer::{tokenize, TokenKind};

pub use io::{
    load_celebrities, load_dataset, load_dataset_with_report, load_users, write_celebrities,
    write_users, LoadReport,
};
pub use synth::{generate_synthetic, generate_synthetic_with, SyntheticConfig};

/// Longest accepted tweet text, in code points.
pub const MAX_TWEET_CHARS: usize = 10_000;

/// Follower count a non-verified account must exceed to count as a celebrity.
pub const CELEBRITY_FOLLOWERS: u64 = 10_000;

pub const MIN_BIRTH_YEAR: i32 = 1850;

/// True for accounts with more than 10,000 followers or a verified badge.
pub fn is_celebrity(followers_count: u64, verified: bool) -> bool {
    verified || followers_count > CELEBRITY_FOLLOWERS
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Male,
    Female,
}

impl Label {
    /// Male is the positive class.
    pub fn sign(self) -> f64 {
        match self {
            Label::Male => 1.0,
            Label::Female => -1.0,
        }
    }

    pub fn from_sign(value: f64) -> Label {
        if value >= 0.0 {
            Label::Male
        } else {
            Label::Female
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Male => "male",
            Label::Female => "female",
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Male => Label::Female,
            Label::Female => Label::Male,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "male" | "m" => Ok(Label::Male),
            "female" | "f" => Ok(Label::Female),
            _ => Err(Error::Invalid(format!("unknown label {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tweet {
    pub text: String,
    pub timestamp: DateTime<Utc>,
    pub is_retweet: bool,
    /// `#`-prefixed tokens of `text`, without the `#`.
    pub hashtags: Vec<String>,
}

impl Tweet {
    pub fn new(text: impl Into<String>, timestamp: DateTime<Utc>, is_retweet: bool) -> Result<Self> {
        let text = text.into();
        let len = text.chars().count();
        if len > MAX_TWEET_CHARS {
            return Err(Error::Invalid(format!(
                "tweet text has {len} characters, limit is {MAX_TWEET_CHARS}"
            )));
        }
        let hashtags = tokenize(&text)
            .into_iter()
            .filter(|t| t.kind == TokenKind::Hashtag)
            .map(|t| t.surface[1..].to_string())
            .collect();
        Ok(Tweet {
            text,
            timestamp,
            is_retweet,
            hashtags,
        })
    }

    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UserRecord {
    pub user_id: String,
    pub label: Option<Label>,
    /// Chronological, most recent last.
    pub tweets: Vec<Tweet>,
    pub followers_count: u64,
    pub friends_count: u64,
    pub followed_ids: Vec<String>,
}

impl UserRecord {
    /// Builds a record, sorting tweets by time and dropping repeated follows.
    /// Returns the record and the number of duplicate follows removed.
    pub fn new(
        user_id: impl Into<String>,
        label: Option<Label>,
        mut tweets: Vec<Tweet>,
        followers_count: u64,
        friends_count: u64,
        followed_ids: Vec<String>,
    ) -> (Self, usize) {
        tweets.sort_by_key(|t| t.timestamp);
        let mut seen = HashSet::with_capacity(followed_ids.len());
        let before = followed_ids.len();
        let followed_ids: Vec<String> = followed_ids
            .into_iter()
            .filter(|id| seen.insert(id.clone()))
            .collect();
        let removed = before - followed_ids.len();
        (
            UserRecord {
                user_id: user_id.into(),
                label,
                tweets,
                followers_count,
                friends_count,
                followed_ids,
            },
            removed,
        )
    }

    pub fn has_tweets(&self) -> bool {
        !self.tweets.is_empty()
    }

    /// The `cap` most recent tweets, oldest first.
    pub fn recent_tweets(&self, cap: usize) -> &[Tweet] {
        let start = self.tweets.len().saturating_sub(cap);
        &self.tweets[start..]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CelebrityRecord {
    pub user_id: String,
    pub followers_count: u64,
    pub verified: bool,
    pub birth_year: Option<i32>,
    pub biography: String,
    pub occupation_terms: Vec<String>,
}

impl CelebrityRecord {
    pub fn passes_gate(&self) -> bool {
        is_celebrity(self.followers_count, self.verified)
    }

    pub(crate) fn validate(&self, reference_date: NaiveDate) -> Result<()> {
        if let Some(year) = self.birth_year {
            if year < MIN_BIRTH_YEAR || year > reference_date.year() {
                return Err(Error::Invalid(format!(
                    "celebrity {}: birth year {year} outside [{MIN_BIRTH_YEAR}, {}]",
                    self.user_id,
                    reference_date.year()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub users: Vec<UserRecord>,
    pub celebrities: BTreeMap<String, CelebrityRecord>,
    /// The "now" for ages and other date-relative quantities.
    pub reference_date: NaiveDate,
}

impl Dataset {
    /// Users that carry a label, in file order.
    pub fn labeled(&self) -> impl Iterator<Item = (&UserRecord, Label)> {
        self.users
            .iter()
            .filter_map(|u| u.label.map(|label| (u, label)))
    }
}
