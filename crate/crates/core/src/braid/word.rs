use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One crossing `s_index^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub index: usize,
    pub exponent: i64,
}

impl Crossing {
    pub fn new(index: usize, exponent: i64) -> Self {
        Crossing { index, exponent }
    }
}

/// Representative of `e` modulo 10 in `(-5, 5]`.
pub fn fold_exponent(e: i64) -> i64 {
    let r = e.rem_euclid(10);
    if r > 5 {
        r - 10
    } else {
        r
    }
}

/// A braid word. The first crossing acts first on the state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub n_strands: usize,
    pub crossings: Vec<Crossing>,
}

impl BraidWord {
    pub fn new(n_strands: usize, crossings: Vec<Crossing>) -> Result<Self> {
        for c in &crossings {
            if c.index < 1 || c.index >= n_strands {
                return Err(Error::GeneratorOutOfRange { index: c.index as i64, strands: n_strands });
            }
        }
        Ok(BraidWord { n_strands, crossings })
    }

    /// Build from `(index, exponent)` pairs.
    pub fn from_pairs(n_strands: usize, pairs: &[(usize, i64)]) -> Result<Self> {
        Self::new(n_strands, pairs.iter().map(|&(i, e)| Crossing::new(i, e)).collect())
    }

    pub fn empty(n_strands: usize) -> Self {
        BraidWord { n_strands, crossings: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Number of elementary interchanges.
    pub fn length(&self) -> u64 {
        self.crossings.iter().map(|c| c.exponent.unsigned_abs()).sum()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.crossings.iter().map(|c| c.exponent).sum()
    }

    pub fn pairs(&self) -> Vec<(usize, i64)> {
        self.crossings.iter().map(|c| (c.index, c.exponent)).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.crossings.iter().all(|c| c.exponent != 0 && fold_exponent(c.exponent) == c.exponent)
            && self.crossings.windows(2).all(|w| w[0].index != w[1].index)
    }

    /// Drop zero exponents, merge neighbours on the same generator and fold exponents.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Crossing> = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let e = fold_exponent(c.exponent);
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.index == c.index => {
                    top.exponent = fold_exponent(top.exponent + e);
                    if top.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(Crossing::new(c.index, e)),
            }
        }
        BraidWord { n_strands: self.n_strands, crossings: out }
    }

    /// Reverse and negate.
    pub fn inverse(&self) -> BraidWord {
        let crossings = self.crossings.iter().rev().map(|c| Crossing::new(c.index, -c.exponent)).collect();
        BraidWord { n_strands: self.n_strands, crossings }
    }

    /// `self` followed in time by `next`.
    pub fn then(&self, next: &BraidWord) -> Result<BraidWord> {
        if self.n_strands != next.n_strands {
            return Err(Error::DimensionMismatch { left: self.n_strands, right: next.n_strands });
        }
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&next.crossings);
        Ok(BraidWord { n_strands: self.n_strands, crossings })
    }

    /// Relabel generators by `offset` into a word on `n_strands` strands.
    pub fn shifted(&self, offset: usize, n_strands: usize) -> Result<BraidWord> {
        let crossings = self.crossings.iter().map(|c| Crossing::new(c.index + offset, c.exponent)).collect();
        BraidWord::new(n_strands, crossings)
    }

    /// Text form of the word exactly as stored.
    pub fn format_raw(&self) -> String {
        let items: Vec<String> = self
            .crossings
            .iter()
            .map(|c| if c.exponent == 1 { format!("s{}", c.index) } else { format!("s{}^{}", c.index, c.exponent) })
            .collect();
        items.join(" ")
    }
}

/// Canonical text form.
pub fn format(word: &BraidWord) -> String {
    word.free_reduce().format_raw()
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_raw())
    }
}

/// Parse one word. Newlines count as whitespace and `#` starts a comment.
pub fn parse(text: &str, n_strands: usize) -> Result<BraidWord> {
    let mut crossings = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        crossings.extend(parse_line(body, line_no, n_strands)?);
    }
    BraidWord::new(n_strands, crossings)
}

/// Parse a corpus with one word per line, skipping blank and comment-only lines.
pub fn parse_lines(text: &str, n_strands: usize) -> Result<Vec<BraidWord>> {
    let mut words = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        words.push(BraidWord { n_strands, crossings: parse_line(body, line_no, n_strands)? });
    }
    Ok(words)
}

fn syntax(line_no: usize, column: usize, message: impl Into<String>) -> Error {
    let message = message.into();
    let message = if line_no == 0 { message } else { format!("line {}: {message}", line_no + 1) };
    Error::Syntax { column, message }
}

fn parse_line(line: &str, line_no: usize, n_strands: usize) -> Result<Vec<Crossing>> {
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] != b's' {
            return Err(syntax(line_no, i + 1, format!("expected 's', found {:?}", line[i..].chars().next().unwrap())));
        }
        i += 1;
        let end = digits(i);
        if end == i {
            return Err(syntax(line_no, i + 1, "expected generator index after 's'"));
        }
        let index: usize = line[i..end].parse().map_err(|_| syntax(line_no, i + 1, "generator index too large"))?;
        i = end;
        let mut exponent = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let sign_at = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            let end = digits(i);
            if end == i {
                return Err(syntax(line_no, i + 1, "expected integer exponent after '^'"));
            }
            exponent = line[sign_at..end].parse().map_err(|_| syntax(line_no, sign_at + 1, "exponent out of range"))?;
            i = end;
        }
        if i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            return Err(syntax(line_no, i + 1, "expected whitespace between crossings"));
        }
        if index < 1 || index >= n_strands {
            return Err(Error::GeneratorOutOfRange { index: index as i64, strands: n_strands });
        }
        out.push(Crossing::new(index, exponent));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_items_and_defaults() {
        let w = parse("s1^-2 s2^4 s1^2", 3).unwrap();
        assert_eq!(w.pairs(), vec![(1, -2), (2, 4), (1, 2)]);
        assert_eq!(parse("s1 s1", 3).unwrap().free_reduce().pairs(), vec![(1, 2)]);
        assert_eq!(parse("s1^7", 3).unwrap().free_reduce().pairs(), vec![(1, -3)]);
        assert_eq!(parse("  # nothing\n", 3).unwrap().crossings.len(), 0);
        assert_eq!(parse("s2^+3 # tail", 3).unwrap().pairs(), vec![(2, 3)]);
    }

    #[test]
    fn syntax_errors_carry_columns() {
        match parse("s1 x2", 3) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        match parse("s1^ s2", 3) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("s", 3), Err(Error::Syntax { column: 2, .. })));
        assert!(matches!(parse("s1s2", 3), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse("s3", 3), Err(Error::GeneratorOutOfRange { index: 3, strands: 3 })));
        assert!(matches!(parse("s0", 3), Err(Error::GeneratorOutOfRange { index: 0, .. })));
    }

    #[test]
    fn reduction_examples() {
        let r = |p: &[(usize, i64)]| BraidWord::from_pairs(3, p).unwrap().free_reduce().pairs();
        assert_eq!(r(&[(1, 1), (1, -1)]), vec![]);
        assert_eq!(r(&[(1, 2), (2, 0), (1, 3)]), vec![(1, 5)]);
        assert_eq!(r(&[(2, 6)]), vec![(2, -4)]);
        assert_eq!(r(&[(1, 1), (2, 3), (2, -3), (1, -1)]), vec![]);
        assert_eq!(r(&[(1, -5)]), vec![(1, 5)]);
    }

    #[test]
    fn format_omits_unit_exponent() {
        let w = BraidWord::from_pairs(3, &[(1, 1), (2, -1), (1, 5)]).unwrap();
        assert_eq!(format(&w), "s1 s2^-1 s1^5");
        assert_eq!(format(&BraidWord::empty(3)), "");
    }

    #[test]
    fn corpus_lines() {
        let ws = parse_lines("s1 s2\n# c\n\ns2^3\n", 3).unwrap();
        assert_eq!(ws.len(), 2);
        assert!(matches!(parse_lines("s1\ns1 q", 3), Err(Error::Syntax { column: 4, .. })));
    }
}
