//! Behavior, linguistic and neighborhood features and their assembly into
//! fixed-layout vectors.

use std::collections::{BTreeMap, HashMap};

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::{CelebrityRecord, Tweet, UserRecord};
use crate::error::{Error, Result};
use crate::lexicon::{category_counts, Lexicon};
use crate::neighborhood::{
    aggregate_neighborhood, build_profiles, famous_feature_name, gender_feature_names,
    AgeBucket, CelebrityProfile, FamousCategory,
};
use crate::normalizer::{Normalizer, TokenKind};
use crate::resources::Resources;

pub const DEFAULT_CAP_N: usize = 1000;

pub const BEHAVIOR_NAMES: [&str; 6] = [
    "tweet_frequency",
    "hashtag_frequency",
    "avg_tweet_length",
    "retweet_frequency",
    "follower_ratio",
    "celebrity_tendency",
];

pub const EMOTICON_FEATURE: &str = "lex_emoticon";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureFamily {
    Behavior,
    Linguistic,
    Neighborhood,
}

/// Denominator of the celebrity-following tendency.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CtDenominator {
    /// Celebrities followed over all accounts followed.
    #[default]
    TotalFollowed,
    /// Celebrities followed over the tweet window's day span.
    DaySpan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FamilyToggles {
    pub behavior: bool,
    pub linguistic: bool,
    pub neighborhood: bool,
    pub age: bool,
    pub gender: bool,
    pub famous: bool,
}

impl Default for FamilyToggles {
    fn default() -> Self {
        FamilyToggles {
            behavior: true,
            linguistic: true,
            neighborhood: true,
            age: true,
            gender: true,
            famous: true,
        }
    }
}

impl FamilyToggles {
    pub fn none() -> Self {
        FamilyToggles {
            behavior: false,
            linguistic: false,
            neighborhood: false,
            age: false,
            gender: false,
            famous: false,
        }
    }

    /// Parses a comma list such as `behavior,linguistic,gender`.
    /// `neighborhood` enables all three neighborhood groups.
    pub fn from_list(list: &str) -> Result<Self> {
        let mut t = FamilyToggles::none();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "behavior" => t.behavior = true,
                "linguistic" => t.linguistic = true,
                "neighborhood" => {
                    t.neighborhood = true;
                    t.age = true;
                    t.gender = true;
                    t.famous = true;
                }
                "age" => {
                    t.neighborhood = true;
                    t.age = true;
                }
                "gender" => {
                    t.neighborhood = true;
                    t.gender = true;
                }
                "famous" => {
                    t.neighborhood = true;
                    t.famous = true;
                }
                "all" => t = FamilyToggles::default(),
                other => return Err(Error::Invalid(format!("unknown feature family {other:?}"))),
            }
        }
        Ok(t)
    }

    pub fn age_on(&self) -> bool {
        self.neighborhood && self.age
    }

    pub fn gender_on(&self) -> bool {
        self.neighborhood && self.gender
    }

    pub fn famous_on(&self) -> bool {
        self.neighborhood && self.famous
    }

    pub fn any(&self) -> bool {
        self.behavior || self.linguistic || self.age_on() || self.gender_on() || self.famous_on()
    }

    /// Short label such as `behavior+linguistic+gender`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.behavior {
            parts.push("behavior");
        }
        if self.linguistic {
            parts.push("linguistic");
        }
        if self.age_on() {
            parts.push("age");
        }
        if self.gender_on() {
            parts.push("gender");
        }
        if self.famous_on() {
            parts.push("famous");
        }
        parts.join("+")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeatureConfig {
    /// Only the most recent `cap_n` tweets are used.
    pub cap_n: usize,
    pub families: FamilyToggles,
    pub ct_denominator: CtDenominator,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            cap_n: DEFAULT_CAP_N,
            families: FamilyToggles::default(),
            ct_denominator: CtDenominator::TotalFollowed,
        }
    }
}

impl FeatureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cap_n == 0 {
            return Err(Error::Invalid("cap_n must be at least 1".into()));
        }
        if !self.families.any() {
            return Err(Error::Invalid("no feature family enabled".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub names: Vec<String>,
    pub families: Vec<FeatureFamily>,
}

impl FeatureSchema {
    pub fn new(config: &FeatureConfig, lexicon: &Lexicon) -> Self {
        let mut names = Vec::new();
        let mut families = Vec::new();
        let mut push = |name: String, fam| {
            names.push(name);
            families.push(fam);
        };
        let t = &config.families;
        if t.behavior {
            for n in BEHAVIOR_NAMES {
                push(n.to_string(), FeatureFamily::Behavior);
            }
        }
        if t.linguistic {
            for c in lexicon.categories() {
                push(format!("lex_{c}"), FeatureFamily::Linguistic);
            }
            push(EMOTICON_FEATURE.to_string(), FeatureFamily::Linguistic);
        }
        if t.age_on() {
            for b in AgeBucket::KNOWN {
                push(b.feature_name().to_string(), FeatureFamily::Neighborhood);
            }
        }
        if t.gender_on() {
            for n in gender_feature_names() {
                push(n.to_string(), FeatureFamily::Neighborhood);
            }
        }
        if t.famous_on() {
            for c in FamousCategory::ALL {
                push(famous_feature_name(c), FeatureFamily::Neighborhood);
            }
        }
        FeatureSchema { names, families }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// First 16 hex digits of SHA-256 over the newline-joined names.
    pub fn fingerprint(&self) -> String {
        fingerprint_names(&self.names)
    }
}

pub fn fingerprint_names(names: &[String]) -> String {
    let digest = Sha256::digest(names.join("\n").as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Whole days between the first and last tweet of the window, at least 1.
/// `None` for an empty window.
fn day_span(window: &[Tweet]) -> Option<f64> {
    let (first, last) = (window.first()?, window.last()?);
    let days = (last.timestamp - first.timestamp).num_days();
    Some(days.max(1) as f64)
}

fn per_day(user: &UserRecord, cap_n: usize, count: impl Fn(&[Tweet]) -> usize) -> f64 {
    let window = user.recent_tweets(cap_n);
    match day_span(window) {
        None => 0.0,
        Some(days) => count(window) as f64 / days,
    }
}

/// Tweets per day over the most recent `cap_n` tweets.
pub fn tweet_frequency(user: &UserRecord, cap_n: usize) -> f64 {
    per_day(user, cap_n, <[Tweet]>::len)
}

pub fn hashtag_frequency(user: &UserRecord, cap_n: usize) -> f64 {
    per_day(user, cap_n, |w| w.iter().map(|t| t.hashtags.len()).sum())
}

pub fn retweet_frequency(user: &UserRecord, cap_n: usize) -> f64 {
    per_day(user, cap_n, |w| w.iter().filter(|t| t.is_retweet).count())
}

/// Mean raw text length in code points.
pub fn avg_tweet_length(user: &UserRecord, cap_n: usize) -> f64 {
    let window = user.recent_tweets(cap_n);
    if window.is_empty() {
        return 0.0;
    }
    window.iter().map(Tweet::char_len).sum::<usize>() as f64 / window.len() as f64
}

pub fn follower_following_ratio(user: &UserRecord) -> f64 {
    user.followers_count as f64 / user.friends_count.max(1) as f64
}

pub fn celebrity_following_tendency(
    user: &UserRecord,
    celebrities: &BTreeMap<String, CelebrityRecord>,
    denominator: CtDenominator,
    cap_n: usize,
) -> f64 {
    let famous = user
        .followed_ids
        .iter()
        .filter(|id| celebrities.get(*id).is_some_and(CelebrityRecord::passes_gate))
        .count() as f64;
    match denominator {
        CtDenominator::TotalFollowed => famous / user.followed_ids.len().max(1) as f64,
        CtDenominator::DaySpan => famous / day_span(user.recent_tweets(cap_n)).unwrap_or(1.0),
    }
}

/// Category rates over the normalized tweet window: each lexicon category's
/// hits divided by the number of word tokens, then the share of emoticon
/// tokens among all tokens. Length is `lexicon.len() + 1`.
pub fn linguistic_features(
    user: &UserRecord,
    normalizer: &Normalizer,
    lexicon: &Lexicon,
    cap_n: usize,
) -> Vec<f64> {
    let mut counts = vec![0u64; lexicon.len()];
    let (mut words, mut emoticons, mut tokens) = (0u64, 0u64, 0u64);
    for tweet in user.recent_tweets(cap_n) {
        let clean = normalizer.normalize(&tweet.text);
        let toks = normalizer.tokenizer().tokenize(&clean);
        tokens += toks.len() as u64;
        for t in &toks {
            match t.kind {
                TokenKind::Word => words += 1,
                TokenKind::Emoticon => emoticons += 1,
                _ => {}
            }
        }
        for (acc, c) in counts.iter_mut().zip(category_counts(&toks, lexicon)) {
            *acc += c;
        }
    }
    let mut out: Vec<f64> = counts
        .iter()
        .map(|&c| if words == 0 { 0.0 } else { c as f64 / words as f64 })
        .collect();
    out.push(if tokens == 0 {
        0.0
    } else {
        emoticons as f64 / tokens as f64
    });
    out
}

/// Builds feature vectors for one dataset's users against fixed resources.
#[derive(Clone, Debug)]
pub struct FeatureExtractor<'a> {
    resources: &'a Resources,
    celebrities: &'a BTreeMap<String, CelebrityRecord>,
    profiles: HashMap<String, CelebrityProfile>,
    config: FeatureConfig,
    schema: FeatureSchema,
}

impl<'a> FeatureExtractor<'a> {
    pub fn new(
        resources: &'a Resources,
        celebrities: &'a BTreeMap<String, CelebrityRecord>,
        reference_date: NaiveDate,
        config: FeatureConfig,
    ) -> Result<Self> {
        config.validate()?;
        let profiles = build_profiles(celebrities, &resources.famous_for, reference_date)?;
        let schema = FeatureSchema::new(&config, &resources.lexicon);
        Ok(FeatureExtractor {
            resources,
            celebrities,
            profiles,
            config,
            schema,
        })
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    pub fn config(&self) -> &FeatureConfig {
        &self.config
    }

    pub fn profiles(&self) -> &HashMap<String, CelebrityProfile> {
        &self.profiles
    }

    /// Concatenates behavior, linguistic and neighborhood groups in schema order.
    pub fn extract(&self, user: &UserRecord) -> Result<FeatureVector> {
        let cap = self.config.cap_n;
        let t = &self.config.families;
        let mut values = Vec::with_capacity(self.schema.len());
        if t.behavior {
            values.extend([
                tweet_frequency(user, cap),
                hashtag_frequency(user, cap),
                avg_tweet_length(user, cap),
                retweet_frequency(user, cap),
                follower_following_ratio(user),
                celebrity_following_tendency(user, self.celebrities, self.config.ct_denominator, cap),
            ]);
        }
        if t.linguistic {
            values.extend(linguistic_features(
                user,
                &self.resources.normalizer,
                &self.resources.lexicon,
                cap,
            ));
        }
        if t.age_on() || t.gender_on() || t.famous_on() {
            let n = aggregate_neighborhood(user, self.celebrities, &self.profiles)?;
            if t.age_on() {
                values.extend(n.age_props);
            }
            if t.gender_on() {
                values.extend(n.gender_props);
            }
            if t.famous_on() {
                values.extend(n.famous_props);
            }
        }
        if values.len() != self.schema.len() {
            return Err(Error::LengthMismatch {
                expected: self.schema.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!(
                "user {}: feature {} is not finite",
                user.user_id, self.schema.names[i]
            )));
        }
        Ok(FeatureVector { values })
    }

    /// Extracts every user in parallel; output order follows input order.
    pub fn extract_all(&self, users: &[UserRecord]) -> Result<Vec<FeatureVector>> {
        users.par_iter().map(|u| self.extract(u)).collect()
    }
}

/// Formats like C's `%.9g`.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed)
    } else {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label;
    use crate::normalizer::{SpellDictionaries, Tokenizer};
    use crate::resources;
    use chrono::{Duration, TimeZone, Utc};

    fn tweets(n: usize, span_days: i64, f: impl Fn(usize) -> (String, bool)) -> Vec<Tweet> {
        let start = Utc.with_ymd_and_hms(2013, 1, 1, 0, 0, 0).unwrap();
        (0..n)
            .map(|i| {
                let offset = if n > 1 {
                    Duration::seconds(span_days * 86_400 * i as i64 / (n as i64 - 1))
                } else {
                    Duration::zero()
                };
                let (text, rt) = f(i);
                Tweet::new(text, start + offset, rt).unwrap()
            })
            .collect()
    }

    fn user_with(tweets: Vec<Tweet>) -> UserRecord {
        UserRecord::new("u", Some(Label::Female), tweets, 0, 0, vec![]).0
    }

    #[test]
    fn tweet_frequency_fixtures() {
        let u = user_with(tweets(1000, 200, |_| ("x".into(), false)));
        assert_eq!(tweet_frequency(&u, 1000), 5.0);
        assert_eq!(tweet_frequency(&user_with(vec![]), 1000), 0.0);
        let burst = user_with(tweets(50, 0, |_| ("x".into(), false)));
        assert_eq!(tweet_frequency(&burst, 1000), 50.0);
    }

    #[test]
    fn cap_uses_most_recent() {
        // 1000 tweets over 200 days; the most recent 200 span 200 * 199/999 days.
        let u = user_with(tweets(1000, 200, |_| ("x".into(), false)));
        let span = (u.tweets[999].timestamp - u.tweets[800].timestamp).num_days() as f64;
        assert_eq!(tweet_frequency(&u, 200), 200.0 / span);
    }

    #[test]
    fn hashtag_frequency_fixtures() {
        let u = user_with(tweets(20, 20, |_| ("#a and #b".into(), false)));
        assert_eq!(hashtag_frequency(&u, 1000), 2.0);
        let none = user_with(tweets(20, 20, |_| ("plain".into(), false)));
        assert_eq!(hashtag_frequency(&none, 1000), 0.0);
    }

    #[test]
    fn hashtag_hand_count_fixture() {
        let texts = [
            "#monday blues", "no tags", "#a #b #c", "mail me user#1", "#", "##double",
            "end #tag.", "@x #y", "#BestDayEver!", "plain",
        ];
        // Hand count: 1 + 0 + 3 + 0 + 0 + 1 + 1 + 1 + 1 + 0 = 8 hashtags over 9 days.
        let u = user_with(tweets(10, 9, |i| (texts[i].into(), false)));
        assert_eq!(hashtag_frequency(&u, 1000), 8.0 / 9.0);
    }

    #[test]
    fn avg_length_fixtures() {
        let lens = [10, 20, 30];
        let u = user_with(tweets(3, 2, |i| ("a".repeat(lens[i]), false)));
        assert_eq!(avg_tweet_length(&u, 1000), 20.0);
        let one = user_with(tweets(1, 0, |_| ("é".repeat(140), false)));
        assert_eq!(avg_tweet_length(&one, 1000), 140.0);
        assert_eq!(avg_tweet_length(&user_with(vec![]), 1000), 0.0);
    }

    #[test]
    fn retweet_fixtures() {
        let u = user_with(tweets(10, 5, |_| ("rt".into(), true)));
        assert_eq!(retweet_frequency(&u, 1000), 2.0);
        let none = user_with(tweets(10, 5, |_| ("x".into(), false)));
        assert_eq!(retweet_frequency(&none, 1000), 0.0);
        let flags = [true, false, false, true, true, false, true, false, false, true];
        // 5 retweets over 3 days.
        let mixed = user_with(tweets(10, 3, |i| ("x".into(), flags[i])));
        assert_eq!(retweet_frequency(&mixed, 1000), 5.0 / 3.0);
    }

    #[test]
    fn follower_ratio_fixtures() {
        let mk = |f, g| UserRecord::new("u", None, vec![], f, g, vec![]).0;
        assert_eq!(follower_following_ratio(&mk(200, 100)), 2.0);
        assert_eq!(follower_following_ratio(&mk(5, 0)), 5.0);
        assert_eq!(follower_following_ratio(&mk(0, 50)), 0.0);
    }

    fn celeb(id: String, followers: u64, verified: bool) -> (String, CelebrityRecord) {
        (
            id.clone(),
            CelebrityRecord {
                user_id: id,
                followers_count: followers,
                verified,
                birth_year: None,
                biography: String::new(),
                occupation_terms: vec![],
            },
        )
    }

    #[test]
    fn celebrity_tendency_fixtures() {
        let celebs: BTreeMap<_, _> = (0..50).map(|i| celeb(format!("c{i}"), 20_000, false)).collect();
        let followed: Vec<String> = (0..50).map(|i| format!("c{i}")).chain((0..150).map(|i| format!("o{i}"))).collect();
        let u = UserRecord::new("u", None, vec![], 0, 0, followed).0;
        assert_eq!(celebrity_following_tendency(&u, &celebs, CtDenominator::TotalFollowed, 1000), 0.25);
        let nobody = UserRecord::new("u", None, vec![], 0, 0, vec![]).0;
        assert_eq!(celebrity_following_tendency(&nobody, &celebs, CtDenominator::TotalFollowed, 1000), 0.0);
    }

    #[test]
    fn celebrity_tendency_applies_gate() {
        // 20 followed: 12 known records, of which 7 pass the gate.
        let records = [
            (10_001, false), (10_000, false), (50, true), (0, false), (99_999, false), (10_000, true),
            (5, false), (20_000, true), (9_999, false), (1_000_000, false), (3, false), (12_345, false),
        ];
        let celebs: BTreeMap<_, _> = records
            .iter()
            .enumerate()
            .map(|(i, &(f, v))| celeb(format!("k{i}"), f, v))
            .collect();
        let expected = records.iter().filter(|(f, v)| crate::is_celebrity(*f, *v)).count();
        assert_eq!(expected, 7);
        let followed: Vec<String> = (0..12).map(|i| format!("k{i}")).chain((0..8).map(|i| format!("x{i}"))).collect();
        let u = UserRecord::new("u", None, vec![], 0, 0, followed).0;
        assert_eq!(celebrity_following_tendency(&u, &celebs, CtDenominator::TotalFollowed, 1000), 0.35);
    }

    #[test]
    fn celebrity_tendency_day_span_variant() {
        let celebs: BTreeMap<_, _> = (0..10).map(|i| celeb(format!("c{i}"), 20_000, false)).collect();
        let followed: Vec<String> = (0..10).map(|i| format!("c{i}")).collect();
        let u = UserRecord::new("u", None, tweets(5, 4, |_| ("x".into(), false)), 0, 0, followed).0;
        assert_eq!(celebrity_following_tendency(&u, &celebs, CtDenominator::DaySpan, 1000), 2.5);
    }

    fn toy_normalizer() -> Normalizer {
        let dicts = SpellDictionaries::new(
            ["i", "love", "mom"].map(|w| (w.to_string(), 1)),
            std::iter::empty(),
        )
        .unwrap();
        Normalizer::new(Tokenizer::new([":-)"]), dicts)
    }

    const TOY_LEX: &str = "%\n1\tfirst_person\n2\temotion\n3\tfamily\n%\ni\t1\nlove\t2\nmom\t3\n";

    #[test]
    fn linguistic_hand_accumulation() {
        let lex = Lexicon::parse(TOY_LEX).unwrap();
        let u = user_with(tweets(1, 0, |_| ("I love mom :-)".into(), false)));
        let f = linguistic_features(&u, &toy_normalizer(), &lex, 1000);
        assert_eq!(f, vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.25]);
    }

    #[test]
    fn linguistic_empty_user() {
        let lex = Lexicon::parse(TOY_LEX).unwrap();
        assert_eq!(linguistic_features(&user_with(vec![]), &toy_normalizer(), &lex, 1000), vec![0.0; 4]);
    }

    #[test]
    fn linguistic_rates_survive_duplication() {
        let n = resources::normalizer();
        let lex = resources::lexicon();
        let texts = ["idk why my mom hates mondays :(", "#BestDayEver with the fam <3", "lol so much money", "ok"];
        let base = tweets(4, 3, |i| (texts[i].into(), false));
        let mut doubled = base.clone();
        doubled.extend(base.clone());
        let a = linguistic_features(&user_with(base), n, lex, 1000);
        let b = linguistic_features(&user_with(doubled), n, lex, 1000);
        assert_eq!(a.len(), 64);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn default_schema_is_90() {
        let s = FeatureSchema::new(&FeatureConfig::default(), resources::lexicon());
        assert_eq!(s.len(), 6 + 64 + 20);
        let unique: std::collections::HashSet<_> = s.names.iter().collect();
        assert_eq!(unique.len(), s.len());
        let behavior_only = FeatureConfig {
            families: FamilyToggles::from_list("behavior").unwrap(),
            ..Default::default()
        };
        assert_eq!(FeatureSchema::new(&behavior_only, resources::lexicon()).len(), 6);
        let gender_only = FeatureConfig {
            families: FamilyToggles::from_list("gender").unwrap(),
            ..Default::default()
        };
        assert_eq!(FeatureSchema::new(&gender_only, resources::lexicon()).names, ["celeb_male", "celeb_female"]);
    }

    #[test]
    fn toggles() {
        assert!(!FamilyToggles::none().any());
        assert!(FamilyToggles::from_list("bogus").is_err());
        let t = FamilyToggles { neighborhood: false, ..FamilyToggles::none() };
        assert!(!t.any());
        assert_eq!(FamilyToggles::default().label(), "behavior+linguistic+age+gender+famous");
        let cfg = FeatureConfig { families: FamilyToggles::none(), ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = FeatureConfig { cap_n: 0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(0.0), "0");
        assert_eq!(format_sig9(5.0), "5");
        assert_eq!(format_sig9(0.25), "0.25");
        assert_eq!(format_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(format_sig9(2.0 / 3.0), "0.666666667");
        assert_eq!(format_sig9(123456789.0), "123456789");
        assert_eq!(format_sig9(1234567890.0), "1.23456789e+09");
        assert_eq!(format_sig9(0.0001), "0.0001");
        assert_eq!(format_sig9(0.00001), "1e-05");
        assert_eq!(format_sig9(-1.5), "-1.5");
    }
}
