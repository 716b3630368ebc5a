//! Tweet tokenizer.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Word,
    Hashtag,
    Mention,
    Url,
    Emoticon,
    Number,
    Punct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
}

impl Token {
    pub fn new(surface: impl Into<String>, kind: TokenKind) -> Self {
        Token {
            surface: surface.into(),
            kind,
        }
    }
}

/// Splits text into tokens, recognizing emoticons from a fixed table.
#[derive(Clone, Debug)]
pub struct Tokenizer {
    whole: HashSet<String>,
    /// Emoticons grouped by first character, longest first.
    by_first: HashMap<char, Vec<Vec<char>>>,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

impl Tokenizer {
    pub fn new<I, S>(emoticons: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut whole = HashSet::new();
        let mut by_first: HashMap<char, Vec<Vec<char>>> = HashMap::new();
        for e in emoticons {
            let e = e.as_ref().trim();
            let Some(first) = e.chars().next() else {
                continue;
            };
            if !whole.insert(e.to_string()) {
                continue;
            }
            by_first.entry(first).or_default().push(e.chars().collect());
        }
        for list in by_first.values_mut() {
            list.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        }
        Tokenizer { whole, by_first }
    }

    pub fn is_emoticon(&self, s: &str) -> bool {
        self.whole.contains(s)
    }

    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        let mut out = Vec::new();
        for chunk in text.split_whitespace() {
            self.tokenize_chunk(chunk, &mut out);
        }
        out
    }

    fn tokenize_chunk(&self, chunk: &str, out: &mut Vec<Token>) {
        if self.whole.contains(chunk) {
            out.push(Token::new(chunk, TokenKind::Emoticon));
            return;
        }
        let lower = chunk.to_ascii_lowercase();
        if lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.") {
            out.push(Token::new(chunk, TokenKind::Url));
            return;
        }
        let chars: Vec<char> = chunk.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let tag_start = (c == '#' || c == '@')
                && (i == 0 || !is_word_char(chars[i - 1]))
                && chars.get(i + 1).is_some_and(|&n| is_word_char(n));
            if tag_start {
                let end = word_run(&chars, i + 1, false);
                let kind = if c == '#' { TokenKind::Hashtag } else { TokenKind::Mention };
                out.push(Token::new(chars[i..end].iter().collect::<String>(), kind));
                i = end;
            } else if is_word_char(c) {
                let end = word_run(&chars, i, true);
                let surface: String = chars[i..end].iter().collect();
                let kind = if is_number(&surface) {
                    TokenKind::Number
                } else {
                    TokenKind::Word
                };
                out.push(Token::new(surface, kind));
                i = end;
            } else if let Some(len) = self.emoticon_at(&chars, i) {
                out.push(Token::new(chars[i..i + len].iter().collect::<String>(), TokenKind::Emoticon));
                i += len;
            } else {
                out.push(Token::new(c.to_string(), TokenKind::Punct));
                i += 1;
            }
        }
    }

    fn emoticon_at(&self, chars: &[char], i: usize) -> Option<usize> {
        let candidates = self.by_first.get(&chars[i])?;
        candidates.iter().find_map(|e| {
            let end = i + e.len();
            if end > chars.len() || chars[i..end] != e[..] {
                return None;
            }
            // ":P" must not swallow the start of ":Paris".
            let last_is_word = e.last().is_some_and(|&c| is_word_char(c));
            if last_is_word && chars.get(end).is_some_and(|&c| is_word_char(c)) {
                return None;
            }
            Some(e.len())
        })
    }
}

/// End of a run of word characters starting at `start`. Apostrophes and
/// (for numbers) `.`/`,` are kept when sandwiched between word characters.
fn word_run(chars: &[char], start: usize, allow_inner: bool) -> usize {
    let mut end = start;
    while end < chars.len() {
        let c = chars[end];
        if is_word_char(c) {
            end += 1;
            continue;
        }
        let inner = allow_inner
            && end > start
            && chars.get(end + 1).is_some_and(|&n| is_word_char(n))
            && (is_apostrophe(c)
                || ((c == '.' || c == ',')
                    && chars[end - 1].is_ascii_digit()
                    && chars[end + 1].is_ascii_digit()));
        if inner {
            end += 1;
        } else {
            break;
        }
    }
    end
}

fn is_number(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_digit())
        && s.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}
