//! Alphabets, words, morphic permutations, morphisms and repetition scanners.
//!
//! Letters are small integers `0..m`. Words render as digit strings when the
//! alphabet has at most ten letters; larger alphabets use a comma-delimited
//! numeric form.

mod morphism;
mod perm;
pub mod repetition;

pub use morphism::Morphism;
pub use perm::MorphicPermutation;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest alphabet that the single-digit text format can carry.
pub const MAX_TEXT_ALPHABET: usize = 10;

/// Largest alphabet accepted anywhere (letters are stored as `u8`).
pub const MAX_ALPHABET: usize = 256;

/// A finite word over `Σ_m = {0, …, m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: usize,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet: usize) -> Result<Self> {
        check_alphabet(alphabet)?;
        if let Some(&bad) = letters.iter().find(|&&a| usize::from(a) >= alphabet) {
            return Err(Error::LetterOutOfRange { letter: bad.into(), alphabet });
        }
        Ok(Word { letters, alphabet })
    }

    pub fn empty(alphabet: usize) -> Self {
        Word { letters: Vec::new(), alphabet }
    }

    /// Parses a digit string such as `0110`.
    pub fn from_digits(text: &str, alphabet: usize) -> Result<Self> {
        if alphabet > MAX_TEXT_ALPHABET {
            return Err(Error::AlphabetTooLargeForText(alphabet));
        }
        let letters = text
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as Letter).ok_or(Error::InvalidDigit(c)))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters, alphabet)
    }

    /// Parses the delimited numeric form, e.g. `0,11,3`.
    pub fn from_delimited(text: &str, alphabet: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Word::new(Vec::new(), alphabet);
        }
        let letters = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<Letter>()
                    .map_err(|_| Error::InvalidDigit(tok.chars().next().unwrap_or(',')))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters, alphabet)
    }

    /// Accepts either format: delimited if the text contains a comma,
    /// digits otherwise.
    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        if text.contains(',') {
            Word::from_delimited(text, alphabet)
        } else {
            Word::from_digits(text, alphabet)
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { expected: self.alphabet, found: other.alphabet });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters, alphabet: self.alphabet })
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { letters: self.letters[..len.min(self.len())].to_vec(), alphabet: self.alphabet }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.letters, self.alphabet))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Renders letters as digits when `alphabet <= 10`, comma-delimited otherwise.
pub fn render_letters(letters: &[Letter], alphabet: usize) -> String {
    if alphabet <= MAX_TEXT_ALPHABET {
        letters.iter().map(|&a| char::from(b'0' + a)).collect()
    } else {
        letters.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub(crate) fn check_alphabet(alphabet: usize) -> Result<()> {
    if alphabet == 0 || alphabet > MAX_ALPHABET {
        return Err(Error::InvalidConfig(format!("alphabet size {alphabet} outside 1..={MAX_ALPHABET}")));
    }
    Ok(())
}
