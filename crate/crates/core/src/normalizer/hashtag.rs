use crate::error::{Error, Result};

/// Turns `#BestDayEver` into `Best Day Ever`.
///
/// A break goes before an uppercase letter that follows a lowercase one, and
/// before the last capital of an uppercase run when a lowercase letter follows
/// it (`#USAToday` gives `USA Today`).
pub fn split_camelcase(hashtag: &str) -> Result<String> {
    let body = hashtag
        .strip_prefix('#')
        .ok_or_else(|| Error::Invalid(format!("hashtag {hashtag:?} does not start with '#'")))?;
    let chars: Vec<char> = body.chars().collect();
    let mut out = String::with_capacity(body.len() + 4);
    for (i, &c) in chars.iter().enumerate() {
        if i > 0 && c.is_uppercase() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            if prev.is_lowercase() || (prev.is_uppercase() && next_lower) {
                out.push(' ');
            }
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        assert_eq!(split_camelcase("#BestDayEver").unwrap(), "Best Day Ever");
        assert_eq!(split_camelcase("#yolo").unwrap(), "yolo");
        assert_eq!(split_camelcase("#USAToday").unwrap(), "USA Today");
        assert_eq!(split_camelcase("#LOL").unwrap(), "LOL");
        assert_eq!(split_camelcase("#iPhone").unwrap(), "i Phone");
        assert_eq!(split_camelcase("#Top10Songs").unwrap(), "Top10Songs");
        assert_eq!(split_camelcase("#").unwrap(), "");
    }

    #[test]
    fn missing_hash() {
        assert!(split_camelcase("BestDayEver").is_err());
    }
}
