//! Bundled demonstration data and loaders for user-supplied replacements.

use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::neighborhood::FamousForMap;
use crate::normalizer::{parse_shorthand, parse_word_list, Normalizer, SpellDictionaries, Tokenizer};

pub const WORDS: &str = include_str!("../data/words.txt");
pub const SHORTHAND: &str = include_str!("../data/shorthand.tsv");
pub const EMOTICONS: &str = include_str!("../data/emoticons.txt");
pub const LEXICON: &str = include_str!("../data/lexicon.txt");
pub const FAMOUS_FOR: &str = include_str!("../data/famous_for.tsv");

static TOKENIZER: LazyLock<Tokenizer> = LazyLock::new(|| Tokenizer::new(EMOTICONS.lines()));

static NORMALIZER: LazyLock<Normalizer> = LazyLock::new(|| {
    let dicts = SpellDictionaries::parse(WORDS, SHORTHAND).expect("bundled dictionaries parse");
    Normalizer::new(TOKENIZER.clone(), dicts)
});

static LEXICON_DEFAULT: LazyLock<Lexicon> =
    LazyLock::new(|| Lexicon::parse(LEXICON).expect("bundled lexicon parses"));

static FAMOUS_DEFAULT: LazyLock<FamousForMap> =
    LazyLock::new(|| FamousForMap::parse(FAMOUS_FOR).expect("bundled famous-for map parses"));

pub fn tokenizer() -> &'static Tokenizer {
    &TOKENIZER
}

pub fn normalizer() -> &'static Normalizer {
    &NORMALIZER
}

pub fn lexicon() -> &'static Lexicon {
    &LEXICON_DEFAULT
}

pub fn famous_for() -> &'static FamousForMap {
    &FAMOUS_DEFAULT
}

pub fn load_emoticons(path: &Path) -> Result<Tokenizer> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(Tokenizer::new(text.lines()))
}

/// Optional replacement files; `None` falls back to the bundled data.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResourcePaths {
    pub lexicon: Option<PathBuf>,
    pub words: Option<PathBuf>,
    pub shorthand: Option<PathBuf>,
    pub emoticons: Option<PathBuf>,
    pub famous_for: Option<PathBuf>,
}

/// Everything feature extraction reads besides the dataset itself.
#[derive(Clone, Debug)]
pub struct Resources {
    pub normalizer: Normalizer,
    pub lexicon: Lexicon,
    pub famous_for: FamousForMap,
}

impl Resources {
    pub fn builtin() -> Self {
        Resources {
            normalizer: normalizer().clone(),
            lexicon: lexicon().clone(),
            famous_for: famous_for().clone(),
        }
    }

    pub fn load(paths: &ResourcePaths) -> Result<Self> {
        let tokenizer = match &paths.emoticons {
            Some(p) => load_emoticons(p)?,
            None => tokenizer().clone(),
        };
        let dicts = match (&paths.words, &paths.shorthand) {
            (None, None) => normalizer().dictionaries().clone(),
            (words, shorthand) => {
                let (words_text, words_path) = read_or(words.as_deref(), WORDS, "<bundled words>")?;
                let (short_text, short_path) =
                    read_or(shorthand.as_deref(), SHORTHAND, "<bundled shorthand>")?;
                SpellDictionaries::new(
                    parse_word_list(&words_text, &words_path)?,
                    parse_shorthand(&short_text, &short_path)?,
                )?
            }
        };
        let normalizer = Normalizer::new(tokenizer, dicts);
        let lexicon = match &paths.lexicon {
            Some(p) => Lexicon::load(p)?,
            None => lexicon().clone(),
        };
        let famous_for = match &paths.famous_for {
            Some(p) => FamousForMap::load(p)?,
            None => famous_for().clone(),
        };
        Ok(Resources {
            normalizer,
            lexicon,
            famous_for,
        })
    }
}

fn read_or(path: Option<&Path>, fallback: &str, name: &str) -> Result<(String, PathBuf)> {
    match path {
        Some(p) => Ok((
            std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?,
            p.to_path_buf(),
        )),
        None => Ok((fallback.to_string(), PathBuf::from(name))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalizer::TokenKind;

    #[test]
    fn bundled_data_loads() {
        assert!(normalizer().dictionaries().word_count() > 10_000);
        assert!(normalizer().dictionaries().index_is_consistent());
        assert_eq!(lexicon().len(), 63);
        assert!(famous_for().len() >= 200);
    }

    #[test]
    fn shorthand_expansions_are_fixed_points() {
        let n = normalizer();
        for (_, expansion) in n.dictionaries().shorthand() {
            for t in n.tokenizer().tokenize(expansion) {
                if t.kind == TokenKind::Word && t.surface.chars().all(|c| c.is_ascii_alphabetic()) {
                    assert!(
                        t.surface.len() < 4 || n.dictionaries().contains(&t.surface),
                        "{} not in word list",
                        t.surface
                    );
                }
            }
        }
    }

    #[test]
    fn lexicon_literals_survive_normalization() {
        let n = normalizer();
        for word in lexicon().literal_words() {
            assert_eq!(n.normalize(word), word, "lexicon word changed by normalization");
        }
    }
}
