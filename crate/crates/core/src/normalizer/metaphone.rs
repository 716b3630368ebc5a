//! Philips' original Metaphone.

use crate::error::{Error, Result};

fn is_vowel(c: Option<char>) -> bool {
    matches!(c, Some('A' | 'E' | 'I' | 'O' | 'U'))
}

fn is_front_vowel(c: Option<char>) -> bool {
    matches!(c, Some('E' | 'I' | 'Y'))
}

/// Encodes an alphabetic word. Case is ignored; any non-ASCII-letter input
/// is an error. The code uses the letters `BFHJKLMNPRSTWXY` plus `0` for "th".
pub fn metaphone(word: &str) -> Result<String> {
    if word.is_empty() || !word.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(Error::Invalid(format!(
            "metaphone needs a non-empty ASCII alphabetic word, got {word:?}"
        )));
    }
    Ok(encode(word))
}

fn encode(word: &str) -> String {
    // Adjacent duplicate letters collapse, except C.
    let mut w: Vec<char> = Vec::with_capacity(word.len());
    for c in word.chars().map(|c| c.to_ascii_uppercase()) {
        if c != 'C' && w.last() == Some(&c) {
            continue;
        }
        w.push(c);
    }

    match (w.first(), w.get(1)) {
        (Some('A'), Some('E'))
        | (Some('G' | 'K' | 'P'), Some('N'))
        | (Some('W'), Some('R')) => {
            w.remove(0);
        }
        (Some('W'), Some('H')) => {
            w.remove(1);
        }
        (Some('X'), _) => w[0] = 'S',
        _ => {}
    }

    let n = w.len();
    let at = |i: usize| w.get(i).copied();
    let mut code = String::with_capacity(n);
    let mut i = 0;
    while i < n {
        let c = w[i];
        let prev = if i > 0 { at(i - 1) } else { None };
        let next = at(i + 1);
        let next2 = at(i + 2);
        let mut skip = 0;
        match c {
            'A' | 'E' | 'I' | 'O' | 'U' => {
                if i == 0 {
                    code.push(c);
                }
            }
            'B' => {
                if !(prev == Some('M') && i + 1 == n) {
                    code.push('B');
                }
            }
            'C' => {
                if next == Some('I') && next2 == Some('A') {
                    code.push('X');
                } else if next == Some('H') {
                    code.push(if prev == Some('S') { 'K' } else { 'X' });
                    skip = 1;
                } else if is_front_vowel(next) {
                    if prev != Some('S') {
                        code.push('S');
                    }
                } else {
                    code.push('K');
                }
            }
            'D' => {
                if next == Some('G') && is_front_vowel(next2) {
                    code.push('J');
                    skip = 1;
                } else {
                    code.push('T');
                }
            }
            'G' => {
                let silent_gh = next == Some('H') && !is_vowel(next2);
                let silent_gn = next == Some('N')
                    && (i + 2 == n || (i + 4 == n && next2 == Some('E') && at(i + 3) == Some('D')));
                if silent_gh || silent_gn {
                    // silent
                } else if is_front_vowel(next) && prev != Some('G') {
                    code.push('J');
                } else {
                    code.push('K');
                }
            }
            'H' => {
                if is_vowel(next) && !matches!(prev, Some('C' | 'G' | 'P' | 'S' | 'T')) {
                    code.push('H');
                }
            }
            'K' => {
                if prev != Some('C') {
                    code.push('K');
                }
            }
            'P' => {
                if next == Some('H') {
                    code.push('F');
                    skip = 1;
                } else {
                    code.push('P');
                }
            }
            'Q' => code.push('K'),
            'S' => {
                if next == Some('H') {
                    code.push('X');
                    skip = 1;
                } else if next == Some('I') && matches!(next2, Some('O' | 'A')) {
                    code.push('X');
                } else {
                    code.push('S');
                }
            }
            'T' => {
                if next == Some('I') && matches!(next2, Some('O' | 'A')) {
                    code.push('X');
                } else if next == Some('H') {
                    code.push('0');
                    skip = 1;
                } else if !(next == Some('C') && next2 == Some('H')) {
                    code.push('T');
                }
            }
            'V' => code.push('F'),
            'W' | 'Y' => {
                if is_vowel(next) {
                    code.push(c);
                }
            }
            'X' => code.push_str("KS"),
            'Z' => code.push('S'),
            other => code.push(other),
        }
        i += 1 + skip;
    }
    code
}
