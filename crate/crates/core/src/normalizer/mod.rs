//! Tweet cleaning: tokenize, expand shorthand, split camel-cased hashtags and
//! spell-correct words through metaphone buckets.

mod edit;
mod hashtag;
mod metaphone;
mod spell;
mod tokenize;

pub use edit::edit_distance;
pub use hashtag::split_camelcase;
pub use metaphone::metaphone;
pub(crate) use spell::{parse_shorthand, parse_word_list};
pub use spell::{spell_correct, SpellDictionaries, DEFAULT_MAX_EDIT, MIN_CORRECTED_LEN};
pub use tokenize::{Token, TokenKind, Tokenizer};

use crate::resources;

/// Tokenizes with the bundled emoticon table.
pub fn tokenize(text: &str) -> Vec<Token> {
    resources::tokenizer().tokenize(text)
}

/// What one normalization pass changed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizeStats {
    pub corrected: usize,
    pub expanded: usize,
    pub split_hashtags: usize,
}

impl std::ops::AddAssign for NormalizeStats {
    fn add_assign(&mut self, rhs: Self) {
        self.corrected += rhs.corrected;
        self.expanded += rhs.expanded;
        self.split_hashtags += rhs.split_hashtags;
    }
}

#[derive(Clone, Debug)]
pub struct Normalizer {
    tokenizer: Tokenizer,
    dicts: SpellDictionaries,
    max_edit: usize,
}

impl Normalizer {
    pub fn new(tokenizer: Tokenizer, dicts: SpellDictionaries) -> Self {
        Normalizer {
            tokenizer,
            dicts,
            max_edit: DEFAULT_MAX_EDIT,
        }
    }

    pub fn with_max_edit(mut self, max_edit: usize) -> Self {
        self.max_edit = max_edit.max(1);
        self
    }

    pub fn tokenizer(&self) -> &Tokenizer {
        &self.tokenizer
    }

    pub fn dictionaries(&self) -> &SpellDictionaries {
        &self.dicts
    }

    pub fn normalize(&self, text: &str) -> String {
        self.normalize_with_stats(text).0
    }

    /// Emoticons, mentions, URLs, numbers and punctuation pass through
    /// verbatim. Hashtags are split into words, and every word (including
    /// hashtag pieces) is expanded if it is shorthand and then spell-corrected.
    pub fn normalize_with_stats(&self, text: &str) -> (String, NormalizeStats) {
        let mut stats = NormalizeStats::default();
        let mut out: Vec<String> = Vec::new();
        for token in self.tokenizer.tokenize(text) {
            match token.kind {
                TokenKind::Hashtag => {
                    let split = split_camelcase(&token.surface).unwrap_or_default();
                    if split.contains(' ') {
                        stats.split_hashtags += 1;
                    }
                    for piece in self.tokenizer.tokenize(&split) {
                        self.push_word(piece, &mut out, &mut stats);
                    }
                }
                _ => self.push_word(token, &mut out, &mut stats),
            }
        }
        (out.join(" "), stats)
    }

    fn push_word(&self, token: Token, out: &mut Vec<String>, stats: &mut NormalizeStats) {
        if token.kind != TokenKind::Word {
            out.push(token.surface);
            return;
        }
        if let Some(expansion) = self.dicts.expand(&token.surface) {
            stats.expanded += 1;
            for t in self.tokenizer.tokenize(expansion) {
                out.push(self.correct(t, stats));
            }
            return;
        }
        out.push(self.correct(token, stats));
    }

    fn correct(&self, token: Token, stats: &mut NormalizeStats) -> String {
        if token.kind != TokenKind::Word {
            return token.surface;
        }
        let fixed = spell_correct(&token.surface, &self.dicts, self.max_edit);
        if fixed != token.surface {
            stats.corrected += 1;
        }
        fixed
    }
}

/// Normalizes with the bundled emoticon table and the default edit bound.
pub fn normalize_tweet(text: &str, dicts: &SpellDictionaries) -> String {
    let normalizer = Normalizer {
        tokenizer: resources::tokenizer().clone(),
        dicts: dicts.clone(),
        max_edit: DEFAULT_MAX_EDIT,
    };
    normalizer.normalize(text)
}
