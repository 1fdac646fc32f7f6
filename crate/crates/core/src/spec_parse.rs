//! Tiny shared parser for the textual spec grammars (`name`, `name:arg`,
//! `name(arg, arg, ...)`).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Term<'a> {
    Atom { name: &'a str, arg: Option<&'a str> },
    Call { name: &'a str, args: Vec<&'a str> },
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

pub(crate) fn parse_term(input: &str) -> Result<Term<'_>> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse("empty spec"));
    }
    let paren = s.find('(');
    let colon = s.find(':');
    let is_call = match (paren, colon) {
        (Some(p), Some(c)) => p < c,
        (Some(_), None) => true,
        _ => false,
    };
    if is_call {
        let p = paren.unwrap();
        let name = s[..p].trim();
        if !is_name(name) || !s.ends_with(')') {
            return Err(Error::parse(format!("malformed spec `{s}`")));
        }
        let inner = &s[p + 1..s.len() - 1];
        let args = split_top_level(inner)?;
        return Ok(Term::Call { name, args });
    }
    match colon {
        Some(c) => {
            let name = s[..c].trim();
            if !is_name(name) {
                return Err(Error::parse(format!("malformed spec `{s}`")));
            }
            Ok(Term::Atom { name, arg: Some(s[c + 1..].trim()) })
        }
        None => {
            if !is_name(s) {
                return Err(Error::parse(format!("malformed spec `{s}`")));
            }
            Ok(Term::Atom { name: s, arg: None })
        }
    }
}

/// Splits on commas that are not nested inside `()` or `[]`.
pub(crate) fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth: i32 = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(format!("unbalanced brackets in `{s}`")));
                }
            }
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(format!("unbalanced brackets in `{s}`")));
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    Ok(out)
}

pub(crate) fn parse_usize(s: Option<&str>, what: &str) -> Result<usize> {
    let s = s.ok_or_else(|| Error::parse(format!("{what} needs an integer argument")))?;
    s.parse::<usize>()
        .map_err(|_| Error::parse(format!("{what}: `{s}` is not a non-negative integer")))
}

/// Parses `[1,2,3]` or `1,2,3` into indices.
pub(crate) fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(format!("`{p}` is not an element index")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_calls() {
        assert_eq!(parse_term("trivial").unwrap(), Term::Atom { name: "trivial", arg: None });
        assert_eq!(
            parse_term("cyclic:4").unwrap(),
            Term::Atom { name: "cyclic", arg: Some("4") }
        );
        assert_eq!(
            parse_term("product(cyclic:2, product(trivial,symmetric:3))").unwrap(),
            Term::Call { name: "product", args: vec!["cyclic:2", "product(trivial,symmetric:3)"] }
        );
        assert_eq!(
            parse_term("table:/tmp/a(b).json").unwrap(),
            Term::Atom { name: "table", arg: Some("/tmp/a(b).json") }
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_term("").is_err());
        assert!(parse_term("product(a,b").is_err());
        assert!(parse_term("pro duct").is_err());
        assert!(split_top_level("a,(b").is_err());
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("[1, 2,3]").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_index_list("[]").unwrap(), Vec::<usize>::new());
        assert!(parse_index_list("[x]").is_err());
    }
}
