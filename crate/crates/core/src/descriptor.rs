//! Tiny helpers for the parenthesised descriptor strings used on the command
//! line (`product(cantor,exp(cantor))`, `exp(cj:0,1:2):2`, ...).

use crate::error::{Error, Result};

/// Splits on `sep` occurring outside parentheses.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Matches `name(args)rest`, returning `(args, rest)`.
pub fn call<'a>(s: &'a str, name: &str) -> Result<Option<(&'a str, &'a str)>> {
    let Some(tail) = s.strip_prefix(name).and_then(|t| t.strip_prefix('(')) else {
        return Ok(None);
    };
    let mut depth = 1i32;
    for (i, ch) in tail.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(Some((&tail[..i], &tail[i + 1..])));
                }
            }
            _ => {}
        }
    }
    Err(Error::config(format!("unbalanced parentheses in `{s}`")))
}

pub fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::config(format!("{what}: expected a number, got `{s}`")))
}

/// Comma list of coordinates; the empty string is the empty list.
pub fn parse_coords(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|c| parse_num(c, "coordinate")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_split() {
        assert_eq!(
            split_top_level("cantor,exp(product(a,b)),x", ','),
            vec!["cantor", "exp(product(a,b))", "x"]
        );
    }

    #[test]
    fn call_with_suffix() {
        assert_eq!(call("exp(cj:0,1:2):2", "exp").unwrap(), Some(("cj:0,1:2", ":2")));
        assert_eq!(call("cantor", "exp").unwrap(), None);
        assert!(call("exp(cantor", "exp").is_err());
    }
}
