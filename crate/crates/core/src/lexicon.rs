//! LIWC-style category lexicon.
//!
//! File layout:
//!
//! ```text
//! %
//! 1 family
//! 2 posemo
//! %
//! mother 1
//! happ* 2
//! ```
//!
//! The header maps numeric ids to category names, and its order is the
//! feature order. Each entry is a literal word or a stem ending in `*`,
//! followed by one or more category ids separated by commas or whitespace.
//! Fields are usually tab-separated.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use crate::error::{Error, Result};
use crate::normalizer::{Token, TokenKind};

#[derive(Clone, Debug, PartialEq)]
pub struct Lexicon {
    categories: Vec<String>,
    literals: HashMap<String, Vec<usize>>,
    /// Stem text without the trailing `*`.
    stems: BTreeMap<String, Vec<usize>>,
}

impl Lexicon {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Lexicon(msg) => Error::Lexicon(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut categories = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut names = BTreeSet::new();
        let mut raw: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        let mut in_entries = false;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            if line.trim() == "%" {
                if !categories.is_empty() {
                    in_entries = true;
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            let head = fields.next().unwrap_or_default();
            if !in_entries {
                let name = fields.next().ok_or_else(|| {
                    Error::Lexicon(format!("line {lineno}: expected `id<TAB>category`"))
                })?;
                if fields.next().is_some() {
                    return Err(Error::Lexicon(format!("line {lineno}: category names cannot contain spaces")));
                }
                if !names.insert(name.to_string()) {
                    return Err(Error::Lexicon(format!("line {lineno}: duplicate category {name:?}")));
                }
                if ids.insert(head.to_string(), categories.len()).is_some() {
                    return Err(Error::Lexicon(format!("line {lineno}: duplicate category id {head:?}")));
                }
                categories.push(name.to_string());
                continue;
            }
            let word = head.to_lowercase();
            let star = word.find('*');
            if word == "*" || star.is_some_and(|p| p + 1 != word.len()) {
                return Err(Error::Lexicon(format!("line {lineno}: malformed stem {head:?}")));
            }
            let cats = raw.entry(word).or_default();
            let mut any = false;
            for id in fields.flat_map(|f| f.split(',')).filter(|s| !s.is_empty()) {
                let idx = ids.get(id).ok_or_else(|| {
                    Error::Lexicon(format!("line {lineno}: unknown category id {id:?}"))
                })?;
                cats.insert(*idx);
                any = true;
            }
            if !any {
                return Err(Error::Lexicon(format!("line {lineno}: entry {head:?} has no categories")));
            }
        }
        if categories.is_empty() {
            return Err(Error::Lexicon("no categories".into()));
        }
        let mut literals = HashMap::new();
        let mut stems = BTreeMap::new();
        for (word, cats) in raw {
            let cats: Vec<usize> = cats.into_iter().collect();
            match word.strip_suffix('*') {
                Some(stem) => {
                    stems.insert(stem.to_string(), cats);
                }
                None => {
                    literals.insert(word, cats);
                }
            }
        }
        if let Some(w) = literals.keys().find(|w| stems.contains_key(*w)) {
            return Err(Error::Lexicon(format!("{w:?} is listed both as a word and as a stem")));
        }
        Ok(Lexicon {
            categories,
            literals,
            stems,
        })
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn category_index(&self, name: &str) -> Option<usize> {
        self.categories.iter().position(|c| c == name)
    }

    /// Literal (non-stem) entries, sorted.
    pub fn literal_words(&self) -> Vec<&str> {
        let mut words: Vec<&str> = self.literals.keys().map(String::as_str).collect();
        words.sort_unstable();
        words
    }

    /// Literal entries belonging to `category`, sorted.
    pub fn words_in(&self, category: usize) -> Vec<&str> {
        let mut words: Vec<&str> = self
            .literals
            .iter()
            .filter(|(_, c)| c.contains(&category))
            .map(|(w, _)| w.as_str())
            .collect();
        words.sort_unstable();
        words
    }

    /// All entries as `(key, categories)` with stems written `stem*`.
    pub fn entries(&self) -> impl Iterator<Item = (String, &[usize])> {
        self.literals
            .iter()
            .map(|(w, c)| (w.clone(), c.as_slice()))
            .chain(self.stems.iter().map(|(s, c)| (format!("{s}*"), c.as_slice())))
    }

    /// Categories of a lowercase word: its literal entry plus every stem that
    /// is a prefix of it.
    pub fn lookup(&self, word: &str) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        if let Some(c) = self.literals.get(word) {
            out.extend(c.iter().copied());
        }
        for (end, _) in word.char_indices().skip(1).chain(std::iter::once((word.len(), ' '))) {
            if let Some(c) = self.stems.get(&word[..end]) {
                out.extend(c.iter().copied());
            }
        }
        out
    }
}

/// Per-category hit counts over the word tokens of `tokens`.
pub fn category_counts(tokens: &[Token], lex: &Lexicon) -> Vec<u64> {
    let mut counts = vec![0u64; lex.len()];
    for t in tokens.iter().filter(|t| t.kind == TokenKind::Word) {
        for c in lex.lookup(&t.surface.to_lowercase()) {
            counts[c] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;
    use proptest::prelude::*;

    const TOY: &str = "%\n1\tfamily\n2\tmoney\n3\tposemo\n%\nmother\t1\nhapp*\t3\nhappy\t3,2\nmoney\t2\nmon*\t2\n";

    fn words(ws: &[&str]) -> Vec<Token> {
        ws.iter().map(|w| Token::new(*w, TokenKind::Word)).collect()
    }

    #[test]
    fn literal_and_stem() {
        let lex = Lexicon::parse(TOY).unwrap();
        assert_eq!(lex.categories(), ["family", "money", "posemo"]);
        assert_eq!(lex.lookup("mother"), BTreeSet::from([0]));
        assert_eq!(lex.lookup("happiness"), BTreeSet::from([2]));
        assert_eq!(lex.lookup("happ"), BTreeSet::from([2]));
        assert_eq!(lex.lookup("hap"), BTreeSet::new());
        assert!(lex.lookup("zebra").is_empty());
    }

    #[test]
    fn union_of_literal_and_stems() {
        let lex = Lexicon::parse(TOY).unwrap();
        assert_eq!(lex.lookup("happy"), BTreeSet::from([1, 2]));
        assert_eq!(lex.lookup("money"), BTreeSet::from([1]));
    }

    #[test]
    fn errors() {
        assert!(matches!(Lexicon::parse(""), Err(Error::Lexicon(m)) if m == "no categories"));
        assert!(Lexicon::parse("%\n1\ta\n2\ta\n%\n").is_err());
        assert!(Lexicon::parse("%\n1\ta\n%\nha*ppy\t1\n").is_err());
        assert!(Lexicon::parse("%\n1\ta\n%\n*\t1\n").is_err());
        assert!(Lexicon::parse("%\n1\ta\n%\nword\t9\n").is_err());
        assert!(Lexicon::parse("%\n1\ta\n%\nword\n").is_err());
        assert!(Lexicon::parse("%\n1\ta\n%\nhapp\t1\nhapp*\t1\n").is_err());
    }

    #[test]
    fn liwc_style_tab_separated_ids() {
        let lex = Lexicon::parse("%\n10\tx\n20\ty\n%\nword\t10\t20\n").unwrap();
        assert_eq!(lex.lookup("word"), BTreeSet::from([0, 1]));
    }

    #[test]
    fn counts() {
        let lex = Lexicon::parse(TOY).unwrap();
        assert_eq!(category_counts(&[], &lex), vec![0, 0, 0]);
        assert_eq!(category_counts(&words(&["mother", "mother"]), &lex), vec![2, 0, 0]);
        let mixed = vec![
            Token::new("Happy", TokenKind::Word),
            Token::new("#mother", TokenKind::Hashtag),
            Token::new(":-)", TokenKind::Emoticon),
        ];
        assert_eq!(category_counts(&mixed, &lex), vec![0, 1, 1]);
    }

    #[test]
    fn deterministic_order() {
        let a = Lexicon::parse(resources::LEXICON).unwrap();
        let b = Lexicon::parse(resources::LEXICON).unwrap();
        assert_eq!(a.categories(), b.categories());
        assert_eq!(a, b);
    }

    fn naive_lookup(lex: &Lexicon, word: &str) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (key, cats) in lex.entries() {
            let hit = match key.strip_suffix('*') {
                Some(stem) => word.starts_with(stem),
                None => key == word,
            };
            if hit {
                out.extend(cats.iter().copied());
            }
        }
        out
    }

    #[test]
    fn lookup_matches_scan_on_random_words() {
        use rand::{Rng, SeedableRng};
        let lex = resources::lexicon();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let known: Vec<String> = lex.entries().map(|(k, _)| k.trim_end_matches('*').to_string()).collect();
        for _ in 0..10_000 {
            let word: String = if rng.random_bool(0.5) {
                let base = &known[rng.random_range(0..known.len())];
                let suffix_len = rng.random_range(0..4);
                let suffix: String = (0..suffix_len).map(|_| rng.random_range(b'a'..=b'z') as char).collect();
                format!("{base}{suffix}")
            } else {
                let len = rng.random_range(1..9);
                (0..len).map(|_| rng.random_range(b'a'..=b'z') as char).collect()
            };
            assert_eq!(lex.lookup(&word), naive_lookup(lex, &word), "{word}");
        }
    }

    proptest! {
        #[test]
        fn counts_are_additive(a in proptest::collection::vec("(mother|happy|money|moni|happen|zz)", 0..10),
                               b in proptest::collection::vec("(mother|happy|money|moni|happen|zz)", 0..10)) {
            let lex = Lexicon::parse(TOY).unwrap();
            let ta = words(&a.iter().map(String::as_str).collect::<Vec<_>>());
            let tb = words(&b.iter().map(String::as_str).collect::<Vec<_>>());
            let mut both = ta.clone();
            both.extend(tb.clone());
            let sum: Vec<u64> = category_counts(&ta, &lex).iter().zip(category_counts(&tb, &lex)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(category_counts(&both, &lex), sum);

            // Per-token accumulation.
            let mut acc = vec![0u64; lex.len()];
            for t in &both {
                for c in naive_lookup(&lex, &t.surface) {
                    acc[c] += 1;
                }
            }
            prop_assert_eq!(category_counts(&both, &lex), acc);
        }
    }
}
