//! Synthetic corpora with planted, tunable label signals.
//!
//! Every label-dependent choice is scaled by an effect size in [0, 1]; with
//! all effects at 0 both classes are drawn from the same distribution.

use std::collections::BTreeMap;

use chrono::{Duration, NaiveDate, TimeZone, Utc};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CelebrityRecord, Dataset, Label, Tweet, UserRecord};
use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::neighborhood::{FamousCategory, FamousForMap};
use crate::resources;

const FEMALE_CATEGORIES: [&str; 11] = [
    "family", "posemo", "i", "shehe", "cmc", "assent", "nonfl", "sad", "home", "friend", "social",
];
const MALE_CATEGORIES: [&str; 7] = ["money", "tech", "swear", "number", "achieve", "work", "anger"];
const MALE_FAMOUS: [FamousCategory; 4] = [
    FamousCategory::Sports,
    FamousCategory::ScienceTech,
    FamousCategory::Politics,
    FamousCategory::Security,
];
const FEMALE_FAMOUS: [FamousCategory; 4] = [
    FamousCategory::Music,
    FamousCategory::Acting,
    FamousCategory::Art,
    FamousCategory::Social,
];
const EMOTICONS: [&str; 8] = [":)", ":-)", ":(", ";)", ":D", "<3", ":P", "xD"];
const SHORTHAND: [(&str, &str); 8] = [
    ("you", "u"),
    ("your", "ur"),
    ("are", "r"),
    ("before", "b4"),
    ("great", "gr8"),
    ("thanks", "thx"),
    ("okay", "k"),
    ("please", "pls"),
];
/// Follow weights are `exp(FOLLOW_STRENGTH * affinity)`.
const FOLLOW_STRENGTH: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SyntheticConfig {
    pub users_per_class: usize,
    /// Inclusive range of tweets per user.
    pub tweets_per_user: (usize, usize),
    pub celebrities: usize,
    /// Inclusive range of accounts followed per user.
    pub follows_per_user: (usize, usize),
    /// Share of follows that go to ordinary accounts.
    pub noncelebrity_follow_fraction: f64,
    pub behavior_effect: f64,
    pub lexicon_effect: f64,
    pub gender_effect: f64,
    pub age_effect: f64,
    pub famous_effect: f64,
    /// Per-word probability of a typo.
    pub misspelling_rate: f64,
    /// Probability that a word with a known shorthand is written as one.
    pub shorthand_rate: f64,
    /// Per-tweet probability of a camel-cased hashtag.
    pub hashtag_rate: f64,
    pub reference_date: NaiveDate,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            users_per_class: 200,
            tweets_per_user: (40, 80),
            celebrities: 300,
            follows_per_user: (20, 60),
            noncelebrity_follow_fraction: 0.5,
            behavior_effect: 1.0,
            lexicon_effect: 1.0,
            gender_effect: 1.0,
            age_effect: 1.0,
            famous_effect: 1.0,
            misspelling_rate: 0.02,
            shorthand_rate: 0.3,
            hashtag_rate: 0.2,
            reference_date: NaiveDate::from_ymd_opt(2013, 6, 1).expect("valid date"),
        }
    }
}

impl SyntheticConfig {
    /// All planted effects set to `effect`.
    pub fn with_effects(mut self, effect: f64) -> Self {
        self.behavior_effect = effect;
        self.lexicon_effect = effect;
        self.gender_effect = effect;
        self.age_effect = effect;
        self.famous_effect = effect;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.users_per_class < 10 {
            return Err(Error::Invalid(format!(
                "at least 10 users per class are required, got {}",
                self.users_per_class
            )));
        }
        let rates = [
            ("behavior_effect", self.behavior_effect),
            ("lexicon_effect", self.lexicon_effect),
            ("gender_effect", self.gender_effect),
            ("age_effect", self.age_effect),
            ("famous_effect", self.famous_effect),
            ("misspelling_rate", self.misspelling_rate),
            ("shorthand_rate", self.shorthand_rate),
            ("hashtag_rate", self.hashtag_rate),
            ("noncelebrity_follow_fraction", self.noncelebrity_follow_fraction),
        ];
        for (name, v) in rates {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Invalid(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        for (name, (lo, hi)) in [
            ("tweets_per_user", self.tweets_per_user),
            ("follows_per_user", self.follows_per_user),
        ] {
            if lo > hi {
                return Err(Error::Invalid(format!("{name}: min {lo} exceeds max {hi}")));
            }
        }
        if self.celebrities < 2 {
            return Err(Error::Invalid("at least 2 celebrities are required".into()));
        }
        Ok(())
    }
}

/// Generates a corpus from the bundled lexicon and famous-for map.
pub fn generate_synthetic(config: &SyntheticConfig, seed: u64) -> Result<Dataset> {
    generate_synthetic_with(config, seed, resources::lexicon(), resources::famous_for())
}

struct Vocab {
    neutral: Vec<String>,
    female: Vec<String>,
    male: Vec<String>,
}

impl Vocab {
    fn new(lexicon: &Lexicon) -> Result<Self> {
        let pool = |names: &[&str]| -> Vec<String> {
            let mut words: Vec<String> = names
                .iter()
                .filter_map(|n| lexicon.category_index(n))
                .flat_map(|c| lexicon.words_in(c))
                .filter(|w| w.chars().all(|c| c.is_ascii_alphabetic()))
                .map(str::to_string)
                .collect();
            words.sort();
            words.dedup();
            words
        };
        let female = pool(&FEMALE_CATEGORIES);
        let male = pool(&MALE_CATEGORIES);
        let neutral: Vec<String> = lexicon
            .literal_words()
            .into_iter()
            .filter(|w| w.chars().all(|c| c.is_ascii_alphabetic()))
            .map(str::to_string)
            .collect();
        if neutral.is_empty() {
            return Err(Error::Invalid("lexicon has no alphabetic literal words".into()));
        }
        // A lexicon without the leaning categories still generates, just
        // without a lexical signal.
        let female = if female.is_empty() { neutral.clone() } else { female };
        let male = if male.is_empty() { neutral.clone() } else { male };
        Ok(Vocab {
            neutral,
            female,
            male,
        })
    }

    fn leaning(&self, label: Label) -> &[String] {
        match label {
            Label::Male => &self.male,
            Label::Female => &self.female,
        }
    }
}

#[derive(Clone, Copy)]
enum Gender {
    Male,
    Female,
    Neutral,
}

struct Celeb {
    record: CelebrityRecord,
    gender: Gender,
    /// Older is closer to +1; unknown age is 0.
    age_score: f64,
    famous_lean: f64,
}

fn biography(rng: &mut ChaCha8Rng, gender: Gender, topic: &str) -> String {
    let (subj, poss) = match gender {
        Gender::Male => ("He", "his"),
        Gender::Female => ("She", "her"),
        Gender::Neutral => return format!("Official account. Known for {topic}."),
    };
    let templates = [
        format!("{subj} is known for {topic}. Follow {poss} updates."),
        format!("{subj} rose to fame through {topic}; {poss} fans are everywhere."),
        format!("{subj} works in {topic} and shares {poss} thoughts here."),
    ];
    templates.choose(rng).expect("non-empty").clone()
}

fn make_celebrities(cfg: &SyntheticConfig, rng: &mut ChaCha8Rng, map: &FamousForMap) -> Vec<Celeb> {
    let ref_year = chrono::Datelike::year(&cfg.reference_date);
    (0..cfg.celebrities)
        .map(|i| {
            let gender = match rng.random_range(0..20) {
                0..=8 => Gender::Male,
                9..=17 => Gender::Female,
                _ => Gender::Neutral,
            };
            let category = *FamousCategory::ALL.choose(rng).expect("non-empty");
            let terms = map.terms_for(category);
            let term = terms.choose(rng).map(|t| t.to_string());
            let birth_year = if rng.random_bool(0.1) {
                None
            } else {
                Some(rng.random_range(ref_year - 75..=ref_year - 16))
            };
            let age_score = birth_year.map_or(0.0, |y| {
                let age = f64::from(ref_year - y);
                ((age - 16.0) / 59.0) * 2.0 - 1.0
            });
            let famous_lean = if MALE_FAMOUS.contains(&category) {
                1.0
            } else if FEMALE_FAMOUS.contains(&category) {
                -1.0
            } else {
                0.0
            };
            let verified = rng.random_bool(0.3);
            let followers = if verified && rng.random_bool(0.2) {
                rng.random_range(100..10_000)
            } else {
                rng.random_range(10_001..5_000_000)
            };
            let topic = term.clone().unwrap_or_else(|| category.name().to_lowercase());
            Celeb {
                record: CelebrityRecord {
                    user_id: format!("c{i:04}"),
                    followers_count: followers,
                    verified,
                    birth_year,
                    biography: biography(rng, gender, &topic),
                    occupation_terms: term.into_iter().collect(),
                },
                gender,
                age_score,
                famous_lean,
            }
        })
        .collect()
}

fn affinity(cfg: &SyntheticConfig, label: Label, c: &Celeb) -> f64 {
    let s = label.sign();
    let g = match c.gender {
        Gender::Male => s,
        Gender::Female => -s,
        Gender::Neutral => 0.0,
    };
    cfg.gender_effect * g + cfg.age_effect * s * c.age_score + cfg.famous_effect * s * c.famous_lean
}

fn misspell(rng: &mut ChaCha8Rng, word: &str) -> String {
    let mut chars: Vec<char> = word.chars().collect();
    let i = rng.random_range(1..chars.len() - 1);
    match rng.random_range(0..3) {
        0 => {
            chars.remove(i);
        }
        1 => chars.swap(i, i + 1),
        _ => {
            let c = chars[i];
            chars.insert(i, c);
        }
    }
    chars.into_iter().collect()
}

fn camel(words: &[&String]) -> String {
    let mut tag = String::from("#");
    for w in words {
        let mut cs = w.chars();
        if let Some(f) = cs.next() {
            tag.extend(f.to_uppercase());
            tag.push_str(cs.as_str());
        }
    }
    tag
}

fn tweet_text(cfg: &SyntheticConfig, rng: &mut ChaCha8Rng, vocab: &Vocab, label: Label) -> String {
    let s = label.sign();
    // Males write slightly shorter tweets when the behavior effect is on.
    let len_shift = (-2.0 * s * cfg.behavior_effect).round() as i64;
    let n_words = (rng.random_range(5..=12) as i64 + len_shift).max(1) as usize;
    let lean = 0.5 * cfg.lexicon_effect;
    let mut words: Vec<String> = Vec::with_capacity(n_words + 2);
    for _ in 0..n_words {
        let pool = if rng.random_bool(lean) {
            vocab.leaning(label)
        } else {
            &vocab.neutral
        };
        let mut w = pool.choose(rng).expect("non-empty pool").clone();
        if let Some((_, short)) = SHORTHAND.iter().find(|(long, _)| *long == w) {
            if rng.random_bool(cfg.shorthand_rate) {
                w = short.to_string();
            }
        } else if w.len() >= 5 && rng.random_bool(cfg.misspelling_rate) {
            w = misspell(rng, &w);
        }
        words.push(w);
    }
    if rng.random_bool(cfg.hashtag_rate) {
        let picks: Vec<&String> = vocab.neutral.choose_multiple(rng, 2).collect();
        words.push(camel(&picks));
    }
    let emoticon_p = 0.1 + 0.3 * cfg.lexicon_effect * (-s).max(0.0);
    if rng.random_bool(emoticon_p) {
        words.push(EMOTICONS.choose(rng).expect("non-empty").to_string());
    }
    words.join(" ")
}

fn make_user(
    cfg: &SyntheticConfig,
    rng: &mut ChaCha8Rng,
    vocab: &Vocab,
    celebs: &[Celeb],
    index: usize,
    label: Label,
    ordinary_pool: usize,
) -> Result<UserRecord> {
    let s = label.sign();
    let b = cfg.behavior_effect;
    let n_tweets = rng.random_range(cfg.tweets_per_user.0..=cfg.tweets_per_user.1);
    let rate = 2.0 * (0.5 * s * b).exp() * rng.random_range(0.7..1.3);
    let span_secs = ((n_tweets as f64 / rate) * 86_400.0).max(3600.0) as i64;
    let end = Utc.from_utc_datetime(&cfg.reference_date.and_hms_opt(0, 0, 0).expect("midnight"));
    let start = end - Duration::seconds(span_secs);
    let rt_p = 0.25 + 0.15 * s * b;
    let mut tweets = Vec::with_capacity(n_tweets);
    for _ in 0..n_tweets {
        let ts = start + Duration::seconds(rng.random_range(0..span_secs));
        let rt = rng.random_bool(rt_p);
        let mut text = tweet_text(cfg, rng, vocab, label);
        if rt {
            text = format!("RT {text}");
        }
        tweets.push(Tweet::new(text, ts, rt)?);
    }

    let n_follow = rng.random_range(cfg.follows_per_user.0..=cfg.follows_per_user.1);
    let n_ordinary = ((n_follow as f64) * cfg.noncelebrity_follow_fraction).round() as usize;
    let n_celeb = (n_follow - n_ordinary).min(celebs.len());
    let weighted: Vec<(usize, f64)> = celebs
        .iter()
        .enumerate()
        .map(|(i, c)| (i, (FOLLOW_STRENGTH * affinity(cfg, label, c)).exp()))
        .collect();
    let mut followed: Vec<String> = weighted
        .choose_multiple_weighted(rng, n_celeb, |(_, w)| *w)
        .map_err(|e| Error::Invalid(format!("follow sampling: {e}")))?
        .map(|(i, _)| celebs[*i].record.user_id.clone())
        .collect();
    followed.extend(
        rand::seq::index::sample(rng, ordinary_pool, n_ordinary.min(ordinary_pool))
            .into_iter()
            .map(|i| format!("a{i:05}")),
    );
    followed.shuffle(rng);

    let friends = n_follow as u64 + rng.random_range(0..200);
    let ratio = (0.4 * s * b).exp() * rng.random_range(0.5..1.5);
    let followers = (friends as f64 * ratio).round() as u64;
    Ok(UserRecord::new(format!("u{index:04}"), Some(label), tweets, followers, friends, followed).0)
}

/// Generates a corpus drawing vocabulary from `lexicon` and occupation terms
/// from `famous`. Users alternate male, female in id order.
pub fn generate_synthetic_with(
    config: &SyntheticConfig,
    seed: u64,
    lexicon: &Lexicon,
    famous: &FamousForMap,
) -> Result<Dataset> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocab = Vocab::new(lexicon)?;
    let celebs = make_celebrities(config, &mut rng, famous);
    let ordinary_pool = 5 * config.follows_per_user.1.max(1);
    let mut users = Vec::with_capacity(2 * config.users_per_class);
    for i in 0..2 * config.users_per_class {
        let label = if i % 2 == 0 { Label::Male } else { Label::Female };
        users.push(make_user(config, &mut rng, &vocab, &celebs, i, label, ordinary_pool)?);
    }
    let celebrities: BTreeMap<String, CelebrityRecord> = celebs
        .into_iter()
        .map(|c| (c.record.user_id.clone(), c.record))
        .collect();
    Ok(Dataset {
        users,
        celebrities,
        reference_date: config.reference_date,
    })
}
