//! Celebrity profiles (age bucket, gender, "famous for") and the per-user
//! proportions of followed celebrities in each group.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::corpus::{CelebrityRecord, UserRecord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AgeBucket {
    Under23,
    A23to30,
    A30to40,
    A40to50,
    Over50,
    UnknownAge,
}

impl AgeBucket {
    pub const KNOWN: [AgeBucket; 5] = [
        AgeBucket::Under23,
        AgeBucket::A23to30,
        AgeBucket::A30to40,
        AgeBucket::A40to50,
        AgeBucket::Over50,
    ];

    pub fn feature_name(self) -> &'static str {
        match self {
            AgeBucket::Under23 => "age_under23",
            AgeBucket::A23to30 => "age_23to30",
            AgeBucket::A30to40 => "age_30to40",
            AgeBucket::A40to50 => "age_40to50",
            AgeBucket::Over50 => "age_over50",
            AgeBucket::UnknownAge => "age_unknown",
        }
    }

    fn slot(self) -> Option<usize> {
        AgeBucket::KNOWN.iter().position(|b| *b == self)
    }
}

/// Age in whole years at the reference date's year. Ages on a bucket edge go
/// to the younger bucket: 30 is `A23to30`, 50 is `A40to50`.
pub fn age_bucket(birth_year: Option<i32>, reference_date: NaiveDate) -> Result<AgeBucket> {
    let Some(year) = birth_year else {
        return Ok(AgeBucket::UnknownAge);
    };
    let age = reference_date.year() - year;
    if age < 0 {
        return Err(Error::Invalid(format!(
            "birth year {year} is after reference year {}",
            reference_date.year()
        )));
    }
    Ok(match age {
        0..=22 => AgeBucket::Under23,
        23..=30 => AgeBucket::A23to30,
        31..=40 => AgeBucket::A30to40,
        41..=50 => AgeBucket::A40to50,
        _ => AgeBucket::Over50,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CelebrityGender {
    Male,
    Female,
    Neutral,
}

const MALE_PRONOUNS: [&str; 3] = ["he", "his", "him"];
const FEMALE_PRONOUNS: [&str; 3] = ["she", "her", "hers"];

/// Majority vote of he/his/him against she/her/hers in a biography.
/// Ties, including no pronouns at all, are `Neutral`.
pub fn infer_celebrity_gender(biography: &str) -> CelebrityGender {
    let (mut male, mut female) = (0usize, 0usize);
    for word in biography
        .split(|c: char| !c.is_alphabetic())
        .filter(|w| !w.is_empty())
    {
        let w = word.to_lowercase();
        if MALE_PRONOUNS.contains(&w.as_str()) {
            male += 1;
        } else if FEMALE_PRONOUNS.contains(&w.as_str()) {
            female += 1;
        }
    }
    match male.cmp(&female) {
        std::cmp::Ordering::Greater => CelebrityGender::Male,
        std::cmp::Ordering::Less => CelebrityGender::Female,
        std::cmp::Ordering::Equal => CelebrityGender::Neutral,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamousCategory {
    Acting,
    Art,
    Entertainment,
    Entrepreneur,
    Writing,
    Music,
    Politics,
    Religious,
    ScienceTech,
    Security,
    Social,
    Sports,
    Miscellaneous,
}

impl FamousCategory {
    pub const ALL: [FamousCategory; 13] = [
        FamousCategory::Acting,
        FamousCategory::Art,
        FamousCategory::Entertainment,
        FamousCategory::Entrepreneur,
        FamousCategory::Writing,
        FamousCategory::Music,
        FamousCategory::Politics,
        FamousCategory::Religious,
        FamousCategory::ScienceTech,
        FamousCategory::Security,
        FamousCategory::Social,
        FamousCategory::Sports,
        FamousCategory::Miscellaneous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamousCategory::Acting => "Acting",
            FamousCategory::Art => "Art",
            FamousCategory::Entertainment => "Entertainment",
            FamousCategory::Entrepreneur => "Entrepreneur",
            FamousCategory::Writing => "Writing",
            FamousCategory::Music => "Music",
            FamousCategory::Politics => "Politics",
            FamousCategory::Religious => "Religious",
            FamousCategory::ScienceTech => "ScienceTech",
            FamousCategory::Security => "Security",
            FamousCategory::Social => "Social",
            FamousCategory::Sports => "Sports",
            FamousCategory::Miscellaneous => "Miscellaneous",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FamousCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamousCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamousCategory::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown famous-for category {s:?}")))
    }
}

/// Occupation keyword to category table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FamousForMap {
    terms: HashMap<String, FamousCategory>,
}

impl FamousForMap {
    pub fn new(terms: impl IntoIterator<Item = (String, FamousCategory)>) -> Self {
        FamousForMap {
            terms: terms
                .into_iter()
                .map(|(t, c)| (normalize_term(&t), c))
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (term, cat) = line.split_once('\t').ok_or_else(|| {
                Error::Invalid(format!("famous-for line {}: expected `term<TAB>category`", i + 1))
            })?;
            let cat: FamousCategory = cat
                .trim()
                .parse()
                .map_err(|e| Error::Invalid(format!("famous-for line {}: {e}", i + 1)))?;
            if terms.insert(normalize_term(term), cat).is_some() {
                return Err(Error::Invalid(format!(
                    "famous-for line {}: duplicate term {:?}",
                    i + 1,
                    term.trim()
                )));
            }
        }
        Ok(FamousForMap { terms })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn get(&self, term: &str) -> Option<FamousCategory> {
        self.terms.get(&normalize_term(term)).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms mapped to `category`, sorted.
    pub fn terms_for(&self, category: FamousCategory) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .terms
            .iter()
            .filter(|(_, c)| **c == category)
            .map(|(t, _)| t.as_str())
            .collect();
        v.sort_unstable();
        v
    }
}

fn normalize_term(term: &str) -> String {
    term.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// The first mapped occupation term decides; nothing mapped is `Miscellaneous`.
pub fn famous_for(occupation_terms: &[String], mapping: &FamousForMap) -> FamousCategory {
    occupation_terms
        .iter()
        .find_map(|t| mapping.get(t))
        .unwrap_or(FamousCategory::Miscellaneous)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CelebrityProfile {
    pub age_bucket: AgeBucket,
    pub gender: CelebrityGender,
    pub famous_for: FamousCategory,
}

impl CelebrityProfile {
    pub fn from_record(
        record: &CelebrityRecord,
        mapping: &FamousForMap,
        reference_date: NaiveDate,
    ) -> Result<Self> {
        Ok(CelebrityProfile {
            age_bucket: age_bucket(record.birth_year, reference_date)?,
            gender: infer_celebrity_gender(&record.biography),
            famous_for: famous_for(&record.occupation_terms, mapping),
        })
    }
}

pub fn build_profiles(
    celebrities: &BTreeMap<String, CelebrityRecord>,
    mapping: &FamousForMap,
    reference_date: NaiveDate,
) -> Result<HashMap<String, CelebrityProfile>> {
    celebrities
        .iter()
        .map(|(id, rec)| Ok((id.clone(), CelebrityProfile::from_record(rec, mapping, reference_date)?)))
        .collect()
}

pub const AGE_DIMS: usize = 5;
pub const GENDER_DIMS: usize = 2;
pub const FAMOUS_DIMS: usize = 13;

/// Proportions of followed celebrities per group. A group whose denominator
/// is zero is all zeros.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeighborhoodFeatures {
    pub age_props: [f64; AGE_DIMS],
    /// (male, female)
    pub gender_props: [f64; GENDER_DIMS],
    pub famous_props: [f64; FAMOUS_DIMS],
}

pub fn gender_feature_names() -> [&'static str; GENDER_DIMS] {
    ["celeb_male", "celeb_female"]
}

pub fn famous_feature_name(c: FamousCategory) -> String {
    format!("famous_{}", c.name().to_lowercase())
}

fn proportions<const N: usize>(counts: [u64; N]) -> [f64; N] {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return [0.0; N];
    }
    counts.map(|c| c as f64 / total as f64)
}

/// Aggregates over the followed accounts that are known celebrities.
/// Unknown ages and neutral genders are left out of their group's denominator.
pub fn aggregate_neighborhood(
    user: &UserRecord,
    celebrities: &BTreeMap<String, CelebrityRecord>,
    profiles: &HashMap<String, CelebrityProfile>,
) -> Result<NeighborhoodFeatures> {
    let mut age = [0u64; AGE_DIMS];
    let mut gender = [0u64; GENDER_DIMS];
    let mut famous = [0u64; FAMOUS_DIMS];
    let mut missing = Vec::new();
    for id in user.followed_ids.iter().filter(|id| celebrities.contains_key(*id)) {
        let Some(p) = profiles.get(id) else {
            missing.push(id.clone());
            continue;
        };
        if let Some(slot) = p.age_bucket.slot() {
            age[slot] += 1;
        }
        match p.gender {
            CelebrityGender::Male => gender[0] += 1,
            CelebrityGender::Female => gender[1] += 1,
            CelebrityGender::Neutral => {}
        }
        famous[p.famous_for.slot()] += 1;
    }
    if !missing.is_empty() {
        missing.sort();
        return Err(Error::MissingProfiles(missing));
    }
    Ok(NeighborhoodFeatures {
        age_props: proportions(age),
        gender_props: proportions(gender),
        famous_props: proportions(famous),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;
    use proptest::prelude::*;

    fn date(y: i32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, 6, 1).unwrap()
    }

    #[test]
    fn age_buckets() {
        assert_eq!(age_bucket(Some(1994), date(2013)).unwrap(), AgeBucket::Under23);
        assert_eq!(age_bucket(Some(1963), date(2013)).unwrap(), AgeBucket::A40to50);
        assert_eq!(age_bucket(Some(1983), date(2013)).unwrap(), AgeBucket::A23to30);
        assert_eq!(age_bucket(Some(1990), date(2013)).unwrap(), AgeBucket::A23to30);
        assert_eq!(age_bucket(Some(1991), date(2013)).unwrap(), AgeBucket::Under23);
        assert_eq!(age_bucket(Some(1962), date(2013)).unwrap(), AgeBucket::Over50);
        assert_eq!(age_bucket(None, date(2013)).unwrap(), AgeBucket::UnknownAge);
        assert!(age_bucket(Some(2014), date(2013)).is_err());
    }

    #[test]
    fn age_bucket_monotone() {
        let mut last = AgeBucket::Under23;
        for age in 0..120 {
            let b = age_bucket(Some(2013 - age), date(2013)).unwrap();
            assert!(b >= last);
            last = b;
        }
    }

    #[test]
    fn gender_from_bio() {
        assert_eq!(infer_celebrity_gender("He won his third title. He retired."), CelebrityGender::Male);
        assert_eq!(infer_celebrity_gender(""), CelebrityGender::Neutral);
        assert_eq!(infer_celebrity_gender("She and her band."), CelebrityGender::Female);
        assert_eq!(infer_celebrity_gender("He met her."), CelebrityGender::Neutral);
        assert_eq!(infer_celebrity_gender("Theory helps the shelf"), CelebrityGender::Neutral);
    }

    #[test]
    fn gender_long_bio_hand_tally() {
        let bio = "Born in Leeds, he started singing early. His mother taught him piano and \
                   she still tours with her son. He said her lessons made his career; hers \
                   was the first voice he heard. Her band, her label and her studio all \
                   carry his name. She retired in 2010. Critics called the pair unique, and \
                   the family name became a brand. He moved to London where the music scene \
                   welcomed the young artist. She remains proud.";
        // Manual count: male = he(4) + his(3) + him(1) = 8; female = she(3) + her(5) + hers(1) = 9.
        assert_eq!(infer_celebrity_gender(bio), CelebrityGender::Female);
    }

    proptest! {
        #[test]
        fn gender_ignores_case_and_punctuation(words in proptest::collection::vec("(he|his|him|she|her|hers|the|and)", 0..20),
                                               upper in proptest::collection::vec(any::<bool>(), 20)) {
            let plain = words.join(" ");
            let noisy: Vec<String> = words.iter().zip(&upper).map(|(w, u)| {
                let w = if *u { w.to_uppercase() } else { w.clone() };
                format!("({w}),")
            }).collect();
            prop_assert_eq!(infer_celebrity_gender(&plain), infer_celebrity_gender(&noisy.join(" ")));
        }
    }

    #[test]
    fn famous_for_rules() {
        let map = resources::famous_for();
        assert_eq!(famous_for(&["cricketer".into()], map), FamousCategory::Sports);
        assert_eq!(famous_for(&[], map), FamousCategory::Miscellaneous);
        assert_eq!(famous_for(&["poet".into(), "actor".into()], map), FamousCategory::Writing);
        assert_eq!(famous_for(&["astrologer".into(), "Singer".into()], map), FamousCategory::Music);
    }

    #[test]
    fn famous_map_validates_categories() {
        assert!(FamousForMap::parse("singer\tMusic\n").is_ok());
        assert!(FamousForMap::parse("singer\tMusik\n").is_err());
        assert!(FamousForMap::parse("singer Music\n").is_err());
        assert!(FamousForMap::parse("singer\tMusic\nSinger\tArt\n").is_err());
    }

    fn celeb(id: &str) -> CelebrityRecord {
        CelebrityRecord {
            user_id: id.into(),
            followers_count: 50_000,
            verified: true,
            birth_year: None,
            biography: String::new(),
            occupation_terms: vec![],
        }
    }

    fn setup(profiles: &[(&str, AgeBucket, CelebrityGender, FamousCategory)]) -> (BTreeMap<String, CelebrityRecord>, HashMap<String, CelebrityProfile>) {
        let celebs = profiles.iter().map(|p| (p.0.to_string(), celeb(p.0))).collect();
        let profs = profiles
            .iter()
            .map(|&(id, age_bucket, gender, famous_for)| {
                (id.to_string(), CelebrityProfile { age_bucket, gender, famous_for })
            })
            .collect();
        (celebs, profs)
    }

    fn user(followed: &[&str]) -> UserRecord {
        UserRecord::new("u", None, vec![], 0, 0, followed.iter().map(|s| s.to_string()).collect()).0
    }

    #[test]
    fn gender_halves() {
        use AgeBucket::*;
        use CelebrityGender::*;
        use FamousCategory::*;
        let (c, p) = setup(&[
            ("a", Under23, Male, Music),
            ("b", Under23, Male, Music),
            ("c", Under23, Female, Music),
            ("d", Under23, Female, Music),
        ]);
        let f = aggregate_neighborhood(&user(&["a", "b", "c", "d", "nobody"]), &c, &p).unwrap();
        assert_eq!(f.gender_props, [0.5, 0.5]);
    }

    #[test]
    fn neutral_only_is_zero() {
        let (c, p) = setup(&[("brand", AgeBucket::UnknownAge, CelebrityGender::Neutral, FamousCategory::Entrepreneur)]);
        let f = aggregate_neighborhood(&user(&["brand"]), &c, &p).unwrap();
        assert_eq!(f.gender_props, [0.0, 0.0]);
        assert_eq!(f.age_props, [0.0; 5]);
        assert_eq!(f.famous_props[FamousCategory::Entrepreneur.slot()], 1.0);
    }

    #[test]
    fn ten_celebrity_fixture() {
        use AgeBucket::*;
        use CelebrityGender::*;
        use FamousCategory::*;
        let rows = [
            ("c0", Under23, Female, Music),
            ("c1", Under23, Female, Acting),
            ("c2", A23to30, Male, Sports),
            ("c3", A30to40, Male, Sports),
            ("c4", A40to50, Male, Politics),
            ("c5", Over50, Neutral, Miscellaneous),
            ("c6", UnknownAge, Female, Music),
            ("c7", UnknownAge, Neutral, Entrepreneur),
            ("c8", A23to30, Male, Sports),
            ("c9", Over50, Female, Writing),
        ];
        let (c, p) = setup(&rows);
        let ids: Vec<&str> = rows.iter().map(|r| r.0).collect();
        let f = aggregate_neighborhood(&user(&ids), &c, &p).unwrap();
        // Known ages: 8 (u23:2, 23-30:2, 30-40:1, 40-50:1, 50+:2).
        assert_eq!(f.age_props, [2.0 / 8.0, 2.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0, 2.0 / 8.0]);
        // Gendered: 8 (male 4, female 4).
        assert_eq!(f.gender_props, [0.5, 0.5]);
        let mut famous = [0.0; 13];
        famous[Music.slot()] = 0.2;
        famous[Acting.slot()] = 0.1;
        famous[Sports.slot()] = 0.3;
        famous[Politics.slot()] = 0.1;
        famous[Miscellaneous.slot()] = 0.1;
        famous[Entrepreneur.slot()] = 0.1;
        famous[Writing.slot()] = 0.1;
        for (a, b) in f.famous_props.iter().zip(famous) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn missing_profile_is_error() {
        let (mut c, p) = setup(&[("a", AgeBucket::Under23, CelebrityGender::Male, FamousCategory::Art)]);
        c.insert("zz".into(), celeb("zz"));
        match aggregate_neighborhood(&user(&["a", "zz"]), &c, &p) {
            Err(Error::MissingProfiles(ids)) => assert_eq!(ids, vec!["zz"]),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn groups_sum_to_one_or_zero_and_ignore_order(seed in 0u64..500, n in 0usize..30) {
            use rand::{seq::SliceRandom, Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let genders = [CelebrityGender::Male, CelebrityGender::Female, CelebrityGender::Neutral];
            let ids: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
            let rows: Vec<(&str, AgeBucket, CelebrityGender, FamousCategory)> = ids.iter().map(|id| {
                let age = [AgeBucket::Under23, AgeBucket::A23to30, AgeBucket::A30to40, AgeBucket::A40to50, AgeBucket::Over50, AgeBucket::UnknownAge][rng.random_range(0..6)];
                (id.as_str(), age, genders[rng.random_range(0..3)], FamousCategory::ALL[rng.random_range(0..13)])
            }).collect();
            let (c, p) = setup(&rows);
            let mut followed: Vec<&str> = ids.iter().map(String::as_str).collect();
            let f1 = aggregate_neighborhood(&user(&followed), &c, &p).unwrap();
            followed.shuffle(&mut rng);
            let f2 = aggregate_neighborhood(&user(&followed), &c, &p).unwrap();
            prop_assert_eq!(f1, f2);
            for group in [&f1.age_props[..], &f1.gender_props[..], &f1.famous_props[..]] {
                let s: f64 = group.iter().sum();
                prop_assert!(s == 0.0 || (s - 1.0).abs() < 1e-12);
                prop_assert!(group.iter().all(|v| (0.0..=1.0).contains(v)));
            }
        }
    }
}
