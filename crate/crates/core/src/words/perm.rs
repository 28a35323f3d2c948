use std::fmt;

use serde::{Serialize, Serializer};

use super::{check_alphabet, render_letters, Letter, Word};
use crate::error::{Error, Result};

/// A bijection of `Σ_m`, extended letterwise to words.
///
/// `images[a]` holds the image of letter `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphicPermutation {
    images: Vec<Letter>,
}

impl MorphicPermutation {
    pub fn new(images: Vec<Letter>) -> Result<Self> {
        check_alphabet(images.len())?;
        let mut seen = vec![false; images.len()];
        for &b in &images {
            let slot = seen.get_mut(usize::from(b)).ok_or(Error::NotABijection)?;
            if *slot {
                return Err(Error::NotABijection);
            }
            *slot = true;
        }
        Ok(MorphicPermutation { images })
    }

    pub fn identity(alphabet: usize) -> Self {
        MorphicPermutation { images: (0..alphabet).map(|a| a as Letter).collect() }
    }

    /// Builds a permutation from disjoint cycles; letters not mentioned are fixed.
    pub fn from_cycles(alphabet: usize, cycles: &[&[Letter]]) -> Result<Self> {
        let mut images: Vec<Letter> = (0..alphabet).map(|a| a as Letter).collect();
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                let next = cycle[(pos + 1) % cycle.len()];
                let slot = images
                    .get_mut(usize::from(a))
                    .ok_or(Error::LetterOutOfRange { letter: a.into(), alphabet })?;
                *slot = next;
            }
        }
        MorphicPermutation::new(images)
    }

    pub fn alphabet(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Letter] {
        &self.images
    }

    #[inline]
    pub fn image(&self, a: Letter) -> Letter {
        self.images[usize::from(a)]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| usize::from(b) == a)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &MorphicPermutation) -> MorphicPermutation {
        assert_eq!(self.alphabet(), other.alphabet(), "composing permutations of different alphabets");
        MorphicPermutation { images: other.images.iter().map(|&a| self.image(a)).collect() }
    }

    pub fn inverse(&self) -> MorphicPermutation {
        let mut images = vec![0; self.alphabet()];
        for (a, &b) in self.images.iter().enumerate() {
            images[usize::from(b)] = a as Letter;
        }
        MorphicPermutation { images }
    }

    /// Orbit length of `a`: the least `n > 0` with `f^n(a) = a`.
    pub fn letter_order(&self, a: Letter) -> u64 {
        let mut n = 1;
        let mut b = self.image(a);
        while b != a {
            b = self.image(b);
            n += 1;
        }
        n
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.alphabet()];
        let mut lengths = Vec::new();
        for start in 0..self.alphabet() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                a = usize::from(self.images[a]);
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// The least `n > 0` with `f^n = id`, i.e. the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1, |acc, len| lcm(acc, len as u64))
    }

    /// `f^n`, reducing `n` modulo the order first.
    pub fn power(&self, n: u64) -> MorphicPermutation {
        let mut exp = n % self.order();
        let mut base = self.clone();
        let mut acc = MorphicPermutation::identity(self.alphabet());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != self.alphabet() {
            return Err(Error::AlphabetMismatch { expected: self.alphabet(), found: w.alphabet() });
        }
        Ok(Word { letters: self.apply_letters(w.letters()), alphabet: self.alphabet() })
    }

    pub fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        letters.iter().map(|&a| self.image(a)).collect()
    }
}

impl fmt::Display for MorphicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.images, self.alphabet()))
    }
}

impl Serialize for MorphicPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
