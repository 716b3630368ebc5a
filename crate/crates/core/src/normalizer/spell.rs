//! Phonetic-bucket spell correction.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use super::edit::edit_distance;
use super::metaphone::metaphone;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_EDIT: usize = 2;

/// Only words longer than this are corrected.
pub const MIN_CORRECTED_LEN: usize = 4;

/// English word list, shorthand table and the metaphone index over the words.
#[derive(Clone, Debug, Default)]
pub struct SpellDictionaries {
    words: HashMap<String, u64>,
    shorthand: HashMap<String, String>,
    metaphone_index: HashMap<String, Vec<String>>,
}

impl SpellDictionaries {
    /// Builds the dictionaries. Shorthand keys are removed from the word list
    /// so that a correction never produces a token that would later expand.
    pub fn new(
        words: impl IntoIterator<Item = (String, u64)>,
        shorthand: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self> {
        let shorthand: HashMap<String, String> = shorthand
            .into_iter()
            .map(|(k, v)| (k.to_lowercase(), v))
            .collect();
        for (key, expansion) in &shorthand {
            if let Some(w) = expansion
                .split_whitespace()
                .find(|w| shorthand.contains_key(&w.to_lowercase()))
            {
                return Err(Error::Invalid(format!(
                    "shorthand {key:?} expands to {expansion:?}, which contains shorthand {w:?}"
                )));
            }
        }
        let mut map: HashMap<String, u64> = HashMap::new();
        for (w, freq) in words {
            let w = w.to_lowercase();
            if w.is_empty() || shorthand.contains_key(&w) {
                continue;
            }
            let slot = map.entry(w).or_insert(0);
            *slot = (*slot).max(freq);
        }
        let metaphone_index = build_index(&map);
        Ok(SpellDictionaries {
            words: map,
            shorthand,
            metaphone_index,
        })
    }

    /// Parses a word list (`word [frequency]` per line) and a shorthand TSV.
    pub fn parse(words_text: &str, shorthand_text: &str) -> Result<Self> {
        Self::new(
            parse_word_list(words_text, Path::new("<words>"))?,
            parse_shorthand(shorthand_text, Path::new("<shorthand>"))?,
        )
    }

    pub fn load(words_path: &Path, shorthand_path: &Path) -> Result<Self> {
        let words = std::fs::read_to_string(words_path).map_err(|e| Error::io(words_path, e))?;
        let short =
            std::fs::read_to_string(shorthand_path).map_err(|e| Error::io(shorthand_path, e))?;
        Self::new(
            parse_word_list(&words, words_path)?,
            parse_shorthand(&short, shorthand_path)?,
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains_key(&word.to_lowercase())
    }

    pub fn frequency(&self, word: &str) -> Option<u64> {
        self.words.get(word).copied()
    }

    pub fn expand(&self, token: &str) -> Option<&str> {
        self.shorthand.get(&token.to_lowercase()).map(String::as_str)
    }

    pub fn candidates(&self, code: &str) -> &[String] {
        self.metaphone_index.get(code).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn shorthand(&self) -> impl Iterator<Item = (&str, &str)> {
        self.shorthand.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// True when the index is exactly the words grouped by metaphone code.
    pub fn index_is_consistent(&self) -> bool {
        let expected = build_index(&self.words);
        if expected.len() != self.metaphone_index.len() {
            return false;
        }
        expected.iter().all(|(code, words)| {
            let mut have = self.metaphone_index.get(code).cloned().unwrap_or_default();
            have.sort();
            let mut want = words.clone();
            want.sort();
            have == want
        })
    }
}

fn build_index(words: &HashMap<String, u64>) -> HashMap<String, Vec<String>> {
    let mut index: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for w in words.keys() {
        if let Ok(code) = metaphone(w) {
            index.entry(code).or_default().push(w.clone());
        }
    }
    index
        .into_iter()
        .map(|(code, mut ws)| {
            ws.sort();
            (code, ws)
        })
        .collect()
}

pub(crate) fn parse_word_list(text: &str, path: &Path) -> Result<Vec<(String, u64)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        let Some(word) = parts.next() else { continue };
        let freq = match parts.next() {
            None => 0,
            Some(f) => f
                .parse()
                .map_err(|_| Error::parse(path, i + 1, format!("bad frequency {f:?}")))?,
        };
        if parts.next().is_some() {
            return Err(Error::parse(path, i + 1, "expected `word [frequency]`"));
        }
        out.push((word.to_string(), freq));
    }
    Ok(out)
}

pub(crate) fn parse_shorthand(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (short, expansion) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(path, i + 1, "expected `short<TAB>expansion`"))?;
        let (short, expansion) = (short.trim(), expansion.trim());
        if short.is_empty() || expansion.is_empty() {
            return Err(Error::parse(path, i + 1, "empty shorthand or expansion"));
        }
        out.push((short.to_string(), expansion.to_string()));
    }
    Ok(out)
}

enum Case {
    Lower,
    Upper,
    Capitalized,
    Mixed,
}

fn case_of(word: &str) -> Case {
    let mut chars = word.chars();
    let first_upper = chars.next().is_some_and(char::is_uppercase);
    let rest: Vec<char> = chars.collect();
    if !first_upper && word.chars().all(|c| !c.is_uppercase()) {
        Case::Lower
    } else if first_upper && rest.iter().all(|c| c.is_uppercase()) {
        Case::Upper
    } else if first_upper && rest.iter().all(|c| !c.is_uppercase()) {
        Case::Capitalized
    } else {
        Case::Mixed
    }
}

/// Corrects one word against the dictionary.
///
/// Short words, dictionary words, mixed-case words and anything that is not
/// purely ASCII alphabetic come back unchanged. Otherwise the result is the
/// dictionary word with the same metaphone code at the smallest edit distance
/// (at most `max_edit`), preferring higher frequency and then lexicographic
/// order. Upper-case and capitalized inputs keep their shape.
pub fn spell_correct(word: &str, dicts: &SpellDictionaries, max_edit: usize) -> String {
    if word.chars().count() < MIN_CORRECTED_LEN || !word.chars().all(|c| c.is_ascii_alphabetic()) {
        return word.to_string();
    }
    let lower = word.to_ascii_lowercase();
    if dicts.words.contains_key(&lower) {
        return word.to_string();
    }
    let case = case_of(word);
    if matches!(case, Case::Mixed) {
        return word.to_string();
    }
    let Ok(code) = metaphone(&lower) else {
        return word.to_string();
    };
    let best = dicts
        .candidates(&code)
        .iter()
        .map(|cand| (edit_distance(&lower, cand), cand))
        .filter(|(d, _)| *d <= max_edit)
        .min_by(|(da, a), (db, b)| {
            da.cmp(db)
                .then_with(|| dicts.words[*b].cmp(&dicts.words[*a]))
                .then_with(|| a.cmp(b))
        });
    match best {
        None => word.to_string(),
        Some((_, cand)) => match case {
            Case::Upper => cand.to_ascii_uppercase(),
            Case::Capitalized => {
                let mut c = cand.chars();
                match c.next() {
                    Some(f) => f.to_ascii_uppercase().to_string() + c.as_str(),
                    None => String::new(),
                }
            }
            _ => cand.clone(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> SpellDictionaries {
        SpellDictionaries::new(
            [("hello", 50), ("help", 80), ("halo", 10), ("the", 1000), ("hall", 5)]
                .map(|(w, f)| (w.to_string(), f)),
            [("idk".to_string(), "I don't know".to_string())],
        )
        .unwrap()
    }

    #[test]
    fn short_words_untouched() {
        assert_eq!(spell_correct("the", &toy(), 2), "the");
        assert_eq!(spell_correct("teh", &toy(), 2), "teh");
    }

    #[test]
    fn dictionary_words_untouched() {
        assert_eq!(spell_correct("hello", &toy(), 2), "hello");
        assert_eq!(spell_correct("Hello", &toy(), 2), "Hello");
    }

    #[test]
    fn helo_against_brute_force() {
        let d = toy();
        let code = metaphone("helo").unwrap();
        // Score every dictionary word by (same code, distance, -frequency, word).
        let mut scored: Vec<(usize, i64, &str)> = ["hello", "help", "halo"]
            .into_iter()
            .filter(|w| metaphone(w).unwrap() == code)
            .map(|w| (edit_distance("helo", w), -(d.frequency(w).unwrap() as i64), w))
            .filter(|(dist, _, _)| *dist <= 2)
            .collect();
        scored.sort();
        assert_eq!(spell_correct("helo", &d, 2), scored[0].2);
        assert_eq!(spell_correct("helo", &d, 2), "hello");
    }

    #[test]
    fn case_shape_kept() {
        let d = toy();
        assert_eq!(spell_correct("HELO", &d, 2), "HELLO");
        assert_eq!(spell_correct("Helo", &d, 2), "Hello");
        assert_eq!(spell_correct("hElO", &d, 2), "hElO");
    }

    #[test]
    fn non_alphabetic_untouched() {
        let d = toy();
        for w in ["@hello", "http://helo.com", "12345", "he11o", "helo's"] {
            assert_eq!(spell_correct(w, &d, 2), w);
        }
    }

    #[test]
    fn no_candidate_within_bound() {
        assert_eq!(spell_correct("hxxxxxlo", &toy(), 2), "hxxxxxlo");
    }

    #[test]
    fn shorthand_keys_leave_word_list() {
        let d = SpellDictionaries::new(
            [("idk".to_string(), 5), ("know".to_string(), 5)],
            [("idk".to_string(), "I don't know".to_string())],
        )
        .unwrap();
        assert!(!d.contains("idk"));
        assert_eq!(d.expand("IDK"), Some("I don't know"));
        assert!(d.index_is_consistent());
    }

    #[test]
    fn recursive_shorthand_rejected() {
        let err = SpellDictionaries::new(
            std::iter::empty(),
            [
                ("u".to_string(), "you".to_string()),
                ("ily".to_string(), "I love u".to_string()),
            ],
        );
        assert!(err.is_err());
    }

    #[test]
    fn parse_formats() {
        let d = SpellDictionaries::parse("hello 10\nworld\n\n", "brb\tbe right back\n").unwrap();
        assert_eq!(d.frequency("hello"), Some(10));
        assert_eq!(d.frequency("world"), Some(0));
        assert_eq!(d.expand("brb"), Some("be right back"));
        assert!(SpellDictionaries::parse("a b c\n", "").is_err());
        assert!(SpellDictionaries::parse("", "nocolumns\n").is_err());
    }
}
