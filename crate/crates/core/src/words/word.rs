use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest alphabet the toolkit supports; symbols render as the digits `0..=9`.
pub const MAX_ALPHABET: u8 = 10;

/// A finite word over a digit alphabet. Symbols are stored as their numeric value.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(bad) = symbols.iter().find(|&&s| s >= MAX_ALPHABET) {
            return Err(Error::Domain(format!("symbol {bad} is not a digit")));
        }
        Ok(Word(symbols))
    }

    /// Caller guarantees every symbol is below [`MAX_ALPHABET`].
    pub(crate) fn from_raw(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s < MAX_ALPHABET));
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn slice(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Coordinatewise exchange of the symbols 0 and 1.
    pub fn flipped(&self) -> Word {
        Word(self.0.iter().map(|&s| flip_symbol(s)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_symbol(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }
}

/// Exchanges 0 and 1; other symbols are fixed.
pub fn flip_symbol(s: u8) -> u8 {
    match s {
        0 => 1,
        1 => 0,
        other => other,
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|b| {
                if b.is_ascii_digit() {
                    Ok(b - b'0')
                } else {
                    Err(Error::Parse(format!("invalid symbol {:?} in word {s:?}", b as char)))
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{}", (b'0' + s) as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a word file: one word per line, ASCII digits, no whitespace.
pub fn parse_word_file(text: &str) -> Result<Vec<Word>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            l.parse::<Word>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

/// Renders words in the word file format (newline terminated).
pub fn format_word_file<'a>(words: impl IntoIterator<Item = &'a Word>) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        let w: Word = "0110".parse().unwrap();
        assert_eq!(w.symbols(), &[0, 1, 1, 0]);
        assert_eq!(w.to_string(), "0110");
        assert_eq!(w.flipped().to_string(), "1001");
        assert_eq!(w.reversed().to_string(), "0110");
    }

    #[test]
    fn rejects_non_digits() {
        assert!("01a".parse::<Word>().is_err());
        assert!(" 01".parse::<Word>().is_err());
        assert!(Word::new(vec![0, 10]).is_err());
    }

    #[test]
    fn word_file_format() {
        let words = parse_word_file("01\n10\n").unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(format_word_file(&words), "01\n10\n");
        assert!(parse_word_file("01\n1 0\n").is_err());
    }
}
