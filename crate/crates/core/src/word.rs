//! Words in the free group over the twist generators.
//!
//! Words are plain letter sequences; positions in derivation scripts
//! index letters, so no syllable compression is done. The token syntax is
//! whitespace-separated `b`, `b1`, `a3`, `c2_4`, with a `'` suffix for an
//! inverse letter.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::surface::CurveId;

/// A generator with exponent `+1` or `-1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub id: CurveId,
    pub exp: i8,
}

impl Letter {
    pub fn new(id: CurveId, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { id, exp }
    }

    pub fn pos(id: CurveId) -> Self {
        Letter { id, exp: 1 }
    }

    pub fn neg(id: CurveId) -> Self {
        Letter { id, exp: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter {
            id: self.id,
            exp: -self.exp,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.id == other.id && self.exp == -other.exp
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.id)
        } else {
            write!(f, "{}'", self.id)
        }
    }
}

impl FromStr for Letter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(base) = s.strip_suffix('\'') {
            Ok(Letter::neg(base.parse()?))
        } else {
            Ok(Letter::pos(s.parse()?))
        }
    }
}

/// A finite sequence of letters, not necessarily reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Single positive letter.
    pub fn gen(id: CurveId) -> Self {
        Word {
            letters: vec![Letter::pos(id)],
        }
    }

    /// Single inverse letter.
    pub fn gen_inv(id: CurveId) -> Self {
        Word {
            letters: vec![Letter::neg(id)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letters_mut(&mut self) -> &mut Vec<Letter> {
        &mut self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation, without reduction.
    pub fn concat(parts: &[&Word]) -> Word {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend_from_slice(&p.letters);
        }
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `w^k`, with negative `k` inverting first.
    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Free reduction: removes adjacent inverse pairs until none remain.
    pub fn reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().is_some_and(|top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word { letters: stack }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| !w[0].cancels(w[1]))
    }

    /// Exponent sum of a generator.
    pub fn exponent_sum(&self, id: CurveId) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.id == id)
            .map(|l| l.exp as i64)
            .sum()
    }

    pub fn generators(&self) -> Vec<CurveId> {
        let mut v: Vec<CurveId> = self.letters.iter().map(|l| l.id).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// The conjugate `y x y^{-1}`, freely reduced.
pub fn conjugate(y: &Word, x: &Word) -> Word {
    Word::concat(&[y, x, &y.inverse()]).reduce()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let letters = s
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { letters })
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
