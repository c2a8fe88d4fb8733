//! Mapping-class words: `term ('*' term)*` with `term = NAME ('^' INTEGER)?`.

use std::collections::BTreeMap;
use std::fmt;

use torelli::surface::{pair_name, SurfaceEndo};

/// A parsed word; factors are composed left to right, `x * y = x ∘ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McWord {
    pub genus: usize,
    pub factors: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError { column: at + 1, message: message.into() }
    }

    fn name(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return Err(self.error(start, format!("expected a name, found `{c}`"))),
            None => return Err(self.error(start, format!("expected a name at the end of `{}`", self.text))),
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error(start, format!("malformed exponent `{s}`")))
    }
}

/// Checks a name against the library syntax and returns its canonical form.
fn library_name(name: &str, genus: usize) -> Result<String, String> {
    match name {
        "t_d" => return Ok(name.into()),
        "t_e" if genus >= 2 => return Ok(name.into()),
        "t_e" => return Err("t_e needs genus at least 2".into()),
        _ => {}
    }
    let Some(idx) = name.strip_prefix("t_a") else {
        return Err(format!("unknown name `{name}`"));
    };
    let num = |s: &str| -> Result<usize, String> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("unknown name `{name}`"));
        }
        s.parse().map_err(|_| format!("index out of range in `{name}`"))
    };
    let in_range = |i: usize| -> Result<usize, String> {
        if (1..=genus).contains(&i) {
            Ok(i)
        } else {
            Err(format!("index {i} in `{name}` is outside 1..={genus}"))
        }
    };
    let pair = |k: usize, l: usize| -> Result<String, String> {
        if k >= l {
            return Err(format!("indices of `{name}` must satisfy k<l"));
        }
        Ok(pair_name(genus, in_range(k)?, in_range(l)?))
    };
    match idx.split_once('_') {
        Some((k, l)) => pair(num(k)?, num(l)?),
        // below genus 10 two digits are a pair, from genus 10 on a single index
        None if idx.len() == 2 && genus < 10 => {
            let d: Vec<usize> = idx.bytes().map(|b| (b - b'0') as usize).collect();
            num(idx)?;
            pair(d[0], d[1])
        }
        None => Ok(format!("t_a{}", in_range(num(idx)?)?)),
    }
}

/// Parses `text`; names in `user` are accepted as they are.
pub fn parse_mc_word(text: &str, genus: usize, user: &BTreeMap<String, SurfaceEndo>) -> Result<McWord, ParseError> {
    let mut lx = Lexer { chars: text.chars().collect(), pos: 0, text };
    let mut factors = Vec::new();
    loop {
        let (at, name) = lx.name()?;
        let name = if user.contains_key(&name) {
            name
        } else {
            library_name(&name, genus).map_err(|m| lx.error(at, m))?
        };
        let e = lx.exponent()?;
        factors.push((name, e));
        lx.skip_ws();
        match lx.peek() {
            None => break,
            Some('*') => lx.pos += 1,
            Some(c) => return Err(lx.error(lx.pos, format!("expected `*` or the end, found `{c}`"))),
        }
    }
    Ok(McWord { genus, factors })
}

/// The composite of the factors. Library inverses are built in; user
/// entries are inverted by Nielsen reduction when a negative power asks
/// for it.
pub fn resolve(
    w: &McWord,
    library: &BTreeMap<String, SurfaceEndo>,
    user: &BTreeMap<String, SurfaceEndo>,
) -> torelli::Result<SurfaceEndo> {
    let mut acc = SurfaceEndo::identity(w.genus);
    for (name, e) in &w.factors {
        let f = if *e >= 0 {
            user.get(name).or_else(|| library.get(name)).cloned()
        } else if let Some(u) = user.get(name) {
            Some(u.inverse()?)
        } else {
            library.get(&format!("{name}^-1")).cloned()
        }
        .ok_or_else(|| torelli::Error::Malformed(format!("`{name}` is not defined in genus {}", w.genus)))?;
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&f)?;
        }
    }
    Ok(acc.with_label(
        w.factors.iter().map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") }).collect::<Vec<_>>().join(" * "),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, g: usize) -> Result<McWord, ParseError> {
        parse_mc_word(s, g, &BTreeMap::new())
    }

    #[test]
    fn examples() {
        assert_eq!(parse("t_a1", 2).unwrap().factors, vec![("t_a1".to_string(), 1)]);
        assert_eq!(parse("t_a12 * t_d^-2", 2).unwrap().factors, vec![("t_a12".to_string(), 1), ("t_d".to_string(), -2)]);
        assert_eq!(parse("  t_a1 ^ -1*t_d ", 2).unwrap().factors.len(), 2);
        assert_eq!(parse("t_a1_2", 3).unwrap().factors[0].0, "t_a12");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("t_a21", 2).unwrap_err();
        assert_eq!(e.column, 1);
        assert!(e.message.contains("k<l"), "{e}");
        let e = parse("t_a1 * t_q", 2).unwrap_err();
        assert_eq!(e.column, 8);
        let e = parse("t_a1^x", 2).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(parse("t_a1 *", 2).is_err());
        assert!(parse("", 2).is_err());
        assert!(parse("t_a1 t_d", 2).is_err());
        assert!(parse("t_a3", 2).is_err());
        assert!(parse("t_e", 1).is_err());
        assert!(parse("t_a11", 2).is_err());
    }

    #[test]
    fn large_genus_names() {
        assert_eq!(parse("t_a12", 12).unwrap().factors[0].0, "t_a12");
        assert_eq!(parse("t_a1_2", 12).unwrap().factors[0].0, "t_a1_2");
    }
}
