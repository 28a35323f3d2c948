use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{check_alphabet, Letter, Word};
use crate::error::{Error, Result};

/// A morphism `Σ_src* → Σ_dst*` given by nonempty letter images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Word>,
    target_alphabet: usize,
}

impl Morphism {
    /// `images[a]` is the image of letter `a`; every image must be nonempty
    /// and over the same target alphabet.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let target_alphabet = images.first().map(Word::alphabet).ok_or(Error::UndefinedLetter(0))?;
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::EmptyImage(a as Letter));
            }
            if img.alphabet() != target_alphabet {
                return Err(Error::AlphabetMismatch { expected: target_alphabet, found: img.alphabet() });
            }
        }
        check_alphabet(images.len())?;
        Ok(Morphism { images, target_alphabet })
    }

    /// Convenience constructor from digit strings over a common target alphabet.
    pub fn from_digit_images(images: &[&str], target_alphabet: usize) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| Word::parse(s, target_alphabet))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images)
    }

    /// Parses a JSON object mapping source letters to image strings, e.g.
    /// `{"0": "01", "1": "10"}`. Keys must be exactly `0..n`. The target
    /// alphabet defaults to one more than the largest letter used.
    pub fn from_json_value(value: &serde_json::Value, target_alphabet: Option<usize>) -> Result<Self> {
        let raw: BTreeMap<String, String> = serde_json::from_value(value.clone())?;
        let mut keyed = BTreeMap::new();
        for (key, image) in raw {
            let letter: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("morphism key {key:?} is not a letter")))?;
            keyed.insert(letter, image);
        }
        for (expected, &letter) in keyed.keys().enumerate() {
            if letter != expected {
                return Err(Error::UndefinedLetter(expected as Letter));
            }
        }
        let target = match target_alphabet {
            Some(m) => m,
            None => {
                // widest alphabet any image could need
                let parsed = keyed
                    .values()
                    .map(|s| {
                        if s.contains(',') {
                            Word::from_delimited(s, super::MAX_ALPHABET)
                        } else {
                            Word::from_digits(s, super::MAX_TEXT_ALPHABET)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                parsed.iter().flat_map(|w| w.letters().iter().copied()).max().map_or(1, |a| usize::from(a) + 1)
            }
        };
        let images = keyed.values().map(|s| Word::parse(s, target)).collect::<Result<Vec<_>>>()?;
        Morphism::new(images)
    }

    pub fn from_json_str(text: &str, target_alphabet: Option<usize>) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        Morphism::from_json_value(&value, target_alphabet)
    }

    pub fn source_alphabet(&self) -> usize {
        self.images.len()
    }

    pub fn target_alphabet(&self) -> usize {
        self.target_alphabet
    }

    pub fn image(&self, a: Letter) -> Result<&Word> {
        self.images.get(usize::from(a)).ok_or(Error::UndefinedLetter(a))
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let letters = self.apply_letters(w.letters())?;
        Ok(Word { letters, alphabet: self.target_alphabet })
    }

    pub fn apply_letters(&self, letters: &[Letter]) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for &a in letters {
            out.extend_from_slice(self.image(a)?.letters());
        }
        Ok(out)
    }

    pub fn is_prolongable(&self, seed: Letter) -> bool {
        self.source_alphabet() == self.target_alphabet
            && self.image(seed).is_ok_and(|img| img.len() >= 2 && img.letters()[0] == seed)
    }

    /// Length-`len` prefix of the fixed point of `self` starting with `seed`.
    pub fn fixed_point_prefix(&self, seed: Letter, len: usize) -> Result<Word> {
        if !self.is_prolongable(seed) {
            return Err(Error::NotProlongable(seed));
        }
        let mut current = vec![seed];
        while current.len() < len {
            let mut next = Vec::with_capacity(len);
            for &a in &current {
                next.extend_from_slice(self.images[usize::from(a)].letters());
                if next.len() >= len {
                    break;
                }
            }
            current = next;
        }
        current.truncate(len);
        Ok(Word { letters: current, alphabet: self.target_alphabet })
    }

    /// The Thue–Morse morphism `0 → 01, 1 → 10`.
    pub fn thue_morse() -> Morphism {
        Morphism::from_digit_images(&["01", "10"], 2).expect("static morphism")
    }

    /// The ternary Thue morphism `0 → 012, 1 → 02, 2 → 1`.
    pub fn ternary_thue() -> Morphism {
        Morphism::from_digit_images(&["012", "02", "1"], 3).expect("static morphism")
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.images.len()))?;
        for (a, img) in self.images.iter().enumerate() {
            map.serialize_entry(&a.to_string(), &img.to_string())?;
        }
        map.end()
    }
}
