//! Signed generator letters and words over the alphabet `E_h ⊔ E_v`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Horizontal letters come from the first prime, vertical from the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    H,
    V,
}

impl Side {
    pub fn prefix(self) -> char {
        match self {
            Side::H => 'a',
            Side::V => 'b',
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::H => Side::V,
            Side::V => Side::H,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::H => "horizontal",
            Side::V => "vertical",
        }
    }
}

/// A generator `a_i` / `b_i` or its inverse. `index` is zero based; the
/// printed name is one based (`a1`, `b3^-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub side: Side,
    pub index: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(side: Side, index: u16, inverse: bool) -> Self {
        Letter {
            side,
            index,
            inverse,
        }
    }

    pub fn h(index: u16) -> Self {
        Letter::new(Side::H, index, false)
    }

    pub fn v(index: u16) -> Self {
        Letter::new(Side::V, index, false)
    }

    pub fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// Position among the `2·count` signed letters of one side: generator
    /// `i` at `2i`, its inverse at `2i + 1`.
    pub fn slot(self) -> usize {
        2 * self.index as usize + self.inverse as usize
    }

    pub fn from_slot(side: Side, slot: usize) -> Self {
        Letter::new(side, (slot / 2) as u16, slot % 2 == 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.prefix(), self.index + 1)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_power(s)?;
        match letters.as_slice() {
            [l] => Ok(*l),
            _ => Err(Error::Parse(format!("expected a single letter, got {s:?}"))),
        }
    }
}

/// Parses `a2`, `b1^-1`, `a1^3`, expanding the power.
fn parse_power(tok: &str) -> Result<Vec<Letter>> {
    let bad = || Error::Parse(format!("malformed letter {tok:?}"));
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, e.parse::<i32>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let mut chars = base.chars();
    let side = match chars.next() {
        Some('a') => Side::H,
        Some('b') => Side::V,
        _ => return Err(bad()),
    };
    let index: u16 = chars.as_str().parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    let letter = Letter::new(side, index - 1, exp < 0);
    Ok(vec![letter; exp.unsigned_abs() as usize])
}

/// Identifies a presentation so words built for one are not fed to another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaKey {
    pub p: u64,
    pub l: u64,
}

/// A word in the generators of a particular presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub(crate) key: GammaKey,
    pub(crate) letters: Vec<Letter>,
}

impl Word {
    pub fn new(key: GammaKey, letters: Vec<Letter>) -> Self {
        Word { key, letters }
    }

    pub fn empty(key: GammaKey) -> Self {
        Word::new(key, Vec::new())
    }

    /// Parses whitespace separated letters, e.g. `a1 b2^-1 a2^3`.
    pub fn parse(key: GammaKey, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            letters.extend(parse_power(tok)?);
        }
        Ok(Word::new(key, letters))
    }

    pub fn key(&self) -> GammaKey {
        self.key
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word::new(
            self.key,
            self.letters.iter().rev().map(|l| l.inv()).collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.key != other.key {
            return Err(Error::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word::new(self.key, letters))
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn freely_reduced(&self) -> Word {
        Word::new(self.key, free_reduce(&self.letters))
    }
}

pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match out.last() {
            Some(&last) if last == l.inv() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn format_letters(letters: &[Letter]) -> String {
    letters
        .iter()
        .map(Letter::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", format_letters(&self.letters))
        }
    }
}
