//! Line-delimited JSON users and tab-separated celebrity tables.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use chrono::{DateTime, NaiveDate, NaiveDateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use super::{CelebrityRecord, Dataset, Label, Tweet, UserRecord};
use crate::error::{Error, Result};

/// Counts of repairs made while loading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub duplicate_follows_removed: usize,
    pub users_resorted: usize,
    pub users_without_tweets: usize,
    pub celebrities_below_gate: usize,
}

#[derive(Serialize, Deserialize)]
struct UserLine {
    id: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    followers: u64,
    #[serde(default)]
    friends: u64,
    #[serde(default)]
    followed: Vec<String>,
    #[serde(default)]
    tweets: Vec<TweetLine>,
}

#[derive(Serialize, Deserialize)]
struct TweetLine {
    text: String,
    ts: String,
    #[serde(default)]
    rt: bool,
}

fn parse_timestamp(s: &str) -> Option<DateTime<Utc>> {
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.with_timezone(&Utc));
    }
    NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S%.f")
        .ok()
        .map(|t| t.and_utc())
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Reads users from line-delimited JSON. Blank lines are skipped.
pub fn load_users(path: &Path) -> Result<(Vec<UserRecord>, LoadReport)> {
    read_users(open(path)?, path)
}

fn read_users(reader: impl Read, path: &Path) -> Result<(Vec<UserRecord>, LoadReport)> {
    let mut report = LoadReport::default();
    let mut users = Vec::new();
    let mut ids = HashSet::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: UserLine = serde_json::from_str(&line)
            .map_err(|e| Error::parse(path, lineno, e.to_string()))?;
        let label = match raw.label.as_deref() {
            None => None,
            Some("male") => Some(Label::Male),
            Some("female") => Some(Label::Female),
            Some(other) => {
                return Err(Error::UnknownLabel {
                    line: lineno,
                    label: other.to_string(),
                })
            }
        };
        if !ids.insert(raw.id.clone()) {
            return Err(Error::DuplicateUser(raw.id));
        }
        let mut tweets = Vec::with_capacity(raw.tweets.len());
        for t in raw.tweets {
            let ts = parse_timestamp(&t.ts).ok_or_else(|| {
                Error::parse(path, lineno, format!("bad timestamp {:?}", t.ts))
            })?;
            let tweet =
                Tweet::new(t.text, ts, t.rt).map_err(|e| Error::parse(path, lineno, e.to_string()))?;
            tweets.push(tweet);
        }
        if tweets.windows(2).any(|w| w[0].timestamp > w[1].timestamp) {
            report.users_resorted += 1;
        }
        let (user, removed) =
            UserRecord::new(raw.id, label, tweets, raw.followers, raw.friends, raw.followed);
        report.duplicate_follows_removed += removed;
        if !user.has_tweets() {
            report.users_without_tweets += 1;
        }
        users.push(user);
    }
    Ok((users, report))
}

/// Writes users in the same line-delimited JSON layout `load_users` reads.
pub fn write_users(mut out: impl Write, users: &[UserRecord]) -> Result<()> {
    for u in users {
        let line = UserLine {
            id: u.user_id.clone(),
            label: u.label.map(|l| l.as_str().to_string()),
            followers: u.followers_count,
            friends: u.friends_count,
            followed: u.followed_ids.clone(),
            tweets: u
                .tweets
                .iter()
                .map(|t| TweetLine {
                    text: t.text.clone(),
                    ts: t.timestamp.to_rfc3339_opts(SecondsFormat::AutoSi, true),
                    rt: t.is_retweet,
                })
                .collect(),
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n").map_err(|e| Error::io("<output>", e))?;
    }
    Ok(())
}

const CELEBRITY_COLUMNS: [&str; 6] = ["id", "followers", "verified", "birth_year", "occupation", "bio"];

/// Reads the celebrity table. Rows that fail the celebrity gate are dropped
/// and counted in the report.
pub fn load_celebrities(
    path: &Path,
    reference_date: NaiveDate,
) -> Result<(BTreeMap<String, CelebrityRecord>, LoadReport)> {
    read_celebrities(open(path)?, path, reference_date)
}

fn read_celebrities(
    reader: impl Read,
    path: &Path,
    reference_date: NaiveDate,
) -> Result<(BTreeMap<String, CelebrityRecord>, LoadReport)> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(path, 1, e.to_string()))?
        .clone();
    let mut col = [0usize; 6];
    for (slot, name) in col.iter_mut().zip(CELEBRITY_COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::parse(path, 1, format!("missing column {name:?}")))?;
    }
    let mut report = LoadReport::default();
    let mut out = BTreeMap::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(path, line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let field = |i: usize| record.get(col[i]).unwrap_or("");
        let id = field(0).trim().to_string();
        if id.is_empty() {
            return Err(Error::parse(path, line, "empty id"));
        }
        let followers: u64 = field(1)
            .trim()
            .parse()
            .map_err(|_| Error::parse(path, line, format!("bad follower count {:?}", field(1))))?;
        let verified = match field(2).trim() {
            "1" | "true" => true,
            "0" | "false" | "" => false,
            other => return Err(Error::parse(path, line, format!("bad verified flag {other:?}"))),
        };
        let birth_year = match field(3).trim() {
            "" => None,
            s => Some(
                s.parse::<i32>()
                    .map_err(|_| Error::parse(path, line, format!("bad birth year {s:?}")))?,
            ),
        };
        let occupation_terms = field(4)
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        let celeb = CelebrityRecord {
            user_id: id.clone(),
            followers_count: followers,
            verified,
            birth_year,
            biography: field(5).to_string(),
            occupation_terms,
        };
        celeb
            .validate(reference_date)
            .map_err(|e| Error::parse(path, line, e.to_string()))?;
        if !celeb.passes_gate() {
            report.celebrities_below_gate += 1;
            continue;
        }
        if out.insert(id.clone(), celeb).is_some() {
            return Err(Error::parse(path, line, format!("duplicate celebrity id {id:?}")));
        }
    }
    Ok((out, report))
}

fn plain_field(value: &str, what: &str) -> Result<()> {
    if value.contains(['\t', '\n', '\r', '"', ';']) {
        return Err(Error::Invalid(format!("{what} {value:?} contains a reserved character")));
    }
    Ok(())
}

/// Writes the celebrity table with a header row; `bio` is always quoted.
pub fn write_celebrities<'a>(
    mut out: impl Write,
    celebrities: impl IntoIterator<Item = &'a CelebrityRecord>,
) -> Result<()> {
    let io = |e| Error::io("<output>", e);
    writeln!(out, "{}", CELEBRITY_COLUMNS.join("\t")).map_err(io)?;
    for c in celebrities {
        plain_field(&c.user_id, "celebrity id")?;
        for term in &c.occupation_terms {
            plain_field(term, "occupation term")?;
        }
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t\"{}\"",
            c.user_id,
            c.followers_count,
            u8::from(c.verified),
            c.birth_year.map(|y| y.to_string()).unwrap_or_default(),
            c.occupation_terms.join(";"),
            c.biography.replace('"', "\"\"")
        )
        .map_err(io)?;
    }
    Ok(())
}

/// Loads both files and logs any repairs.
pub fn load_dataset(
    users_path: &Path,
    celebrities_path: &Path,
    reference_date: NaiveDate,
) -> Result<Dataset> {
    let (dataset, report) = load_dataset_with_report(users_path, celebrities_path, reference_date)?;
    if report.duplicate_follows_removed > 0 {
        log::warn!(
            "removed {} duplicate followed ids",
            report.duplicate_follows_removed
        );
    }
    if report.users_resorted > 0 {
        log::warn!("re-sorted tweets of {} users", report.users_resorted);
    }
    if report.users_without_tweets > 0 {
        log::warn!("{} users have no tweets", report.users_without_tweets);
    }
    if report.celebrities_below_gate > 0 {
        log::warn!(
            "dropped {} celebrity rows below the follower/verified gate",
            report.celebrities_below_gate
        );
    }
    Ok(dataset)
}

pub fn load_dataset_with_report(
    users_path: &Path,
    celebrities_path: &Path,
    reference_date: NaiveDate,
) -> Result<(Dataset, LoadReport)> {
    let (users, mut report) = load_users(users_path)?;
    let (celebrities, celeb_report) = load_celebrities(celebrities_path, reference_date)?;
    report.celebrities_below_gate = celeb_report.celebrities_below_gate;
    Ok((
        Dataset {
            users,
            celebrities,
            reference_date,
        },
        report,
    ))
}
