//! Words over the infinite generating set `{x_i^{±1}}`.
//!
//! Text form: `x<index>` with an optional `^-1`, tokens separated by
//! whitespace. The empty word prints as `1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A generator `x_index` raised to `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: u32,
    pub sign: Sign,
}

impl Letter {
    pub const fn pos(index: u32) -> Letter {
        Letter { index, sign: Sign::Plus }
    }

    pub const fn neg(index: u32) -> Letter {
        Letter { index, sign: Sign::Minus }
    }

    pub fn inverse(self) -> Letter {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Plus
    }

    /// True when `self` followed by `other` cancels freely.
    pub fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "x{}", self.index),
            Sign::Minus => write!(f, "x{}^-1", self.index),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn parse(text: &str) -> Result<Word> {
        parse_word(text)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    /// Every index is at most `p - 1`.
    pub fn is_finite_alphabet(&self, p: usize) -> bool {
        self.letters.iter().all(|l| (l.index as usize) < p)
    }

    pub fn max_index(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.index).max()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn free_reduce(&self) -> Word {
        free_reduce(self)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word { letters }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    let tokens = tokens_with_offsets(text);
    if tokens.len() == 1 && tokens[0].1 == "1" {
        return Ok(Word::empty());
    }
    let letters = tokens
        .into_iter()
        .map(|(position, token)| parse_token(token).ok_or_else(|| Error::Parse {
            token: token.to_string(),
            position,
        }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word { letters })
}

fn tokens_with_offsets(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn parse_token(token: &str) -> Option<Letter> {
    let body = token.strip_prefix('x')?;
    let (digits, sign) = match body.strip_suffix("^-1") {
        Some(d) => (d, Sign::Minus),
        None => (body, Sign::Plus),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let index = digits.parse::<u32>().ok()?;
    Some(Letter { index, sign })
}

pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> = w.letters.iter().map(Letter::to_string).collect();
    parts.join(" ")
}

/// Single stack pass cancelling adjacent `x_i^e x_i^-e`.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &letter in &w.letters {
        match stack.last() {
            Some(&top) if top.cancels(letter) => {
                stack.pop();
            }
            _ => stack.push(letter),
        }
    }
    Word { letters: stack }
}
