//! Instance detection and backtracking search.
//!
//! An *instance* is a factor `u v₁ v₂ v₃` with `|u| = |v_l|` such that some
//! permutation `f` from the configured [`PermModel`] maps `u` onto each block
//! by a power `v_l = f^{e_l}(u)`, and whose block equality structure is one of
//! the forbidden [`EqualityPattern`]s. In [`ExponentMode::Abstract`] the
//! powers are free (`1 ≤ e_l ≤ ord(f)`, which covers every power); in
//! [`ExponentMode::Fixed`] they are the pattern's own `(i, j, k)`.

mod detector;
mod dfs;
mod model;

pub use detector::Detector;
pub use dfs::longest_avoiding_word;
pub use model::{all_permutations, PermModel, MAX_MODEL_ALPHABET};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::ParamSet;
use crate::params::{EqualityPattern, PatternExponents};
use crate::words::{Letter, MorphicPermutation, Word};

/// A set of equality patterns, stored as a bit set over [`EqualityPattern::code`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Forbidden(u64);

impl Forbidden {
    pub fn from_patterns<I: IntoIterator<Item = EqualityPattern>>(patterns: I) -> Self {
        let mut f = Forbidden(0);
        for p in patterns {
            f.insert(p);
        }
        f
    }

    /// Representations of the parameters in `set`.
    pub fn from_params(set: &ParamSet) -> Self {
        Forbidden::from_patterns(set.patterns())
    }

    /// Parses comma-separated patterns such as `0012,0000`.
    pub fn parse_patterns(text: &str) -> Result<Self> {
        let patterns = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<EqualityPattern>>>()?;
        Ok(Forbidden::from_patterns(patterns))
    }

    pub fn insert(&mut self, p: EqualityPattern) {
        self.0 |= 1 << p.code();
    }

    pub fn with(mut self, p: EqualityPattern) -> Self {
        self.insert(p);
        self
    }

    pub fn union(self, other: Forbidden) -> Self {
        Forbidden(self.0 | other.0)
    }

    #[inline]
    pub fn contains(&self, p: EqualityPattern) -> bool {
        self.0 & (1 << p.code()) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(&self, other: &Forbidden) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in lexicographic order.
    pub fn patterns(&self) -> Vec<EqualityPattern> {
        EqualityPattern::all().into_iter().filter(|p| self.contains(*p)).collect()
    }
}

impl fmt::Debug for Forbidden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.patterns().iter().map(|p| p.to_string())).finish()
    }
}

impl Serialize for Forbidden {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.patterns())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentMode {
    Abstract,
    Fixed(PatternExponents),
}

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub alphabet: usize,
    pub forbidden: Forbidden,
    pub model: PermModel,
    pub mode: ExponentMode,
    pub length_cap: usize,
    pub node_budget: u64,
    /// First letter 0, new letters introduced in increasing order.
    pub symmetry_pruning: bool,
    /// Treat `uuuu` as an instance whatever the forbidden set says: the
    /// identity is a morphic permutation, so every pattern has such instances.
    pub identity_instances: bool,
    /// Depth at which the tree is cut into independent subtree tasks;
    /// 0 runs a single sequential search.
    pub split_depth: usize,
}

impl SearchConfig {
    pub fn new(alphabet: usize, forbidden: Forbidden, model: PermModel) -> Self {
        SearchConfig {
            alphabet,
            forbidden,
            model,
            mode: ExponentMode::Abstract,
            length_cap: 1000,
            node_budget: DEFAULT_NODE_BUDGET,
            symmetry_pruning: true,
            identity_instances: true,
            split_depth: 0,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.length_cap = cap;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_mode(mut self, mode: ExponentMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_pruning(mut self, pruning: bool) -> Self {
        self.symmetry_pruning = pruning;
        self
    }

    pub fn with_identity_instances(mut self, on: bool) -> Self {
        self.identity_instances = on;
        self
    }

    /// The forbidden structures the detector actually checks.
    pub fn effective_forbidden(&self) -> Forbidden {
        if self.identity_instances {
            self.forbidden.with(EqualityPattern::ALL_EQUAL)
        } else {
            self.forbidden
        }
    }

    pub fn with_split_depth(mut self, depth: usize) -> Self {
        self.split_depth = depth;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphabet < 2 || self.alphabet > MAX_MODEL_ALPHABET {
            return Err(Error::InvalidConfig(format!(
                "alphabet size must be in 2..={MAX_MODEL_ALPHABET}, got {}",
                self.alphabet
            )));
        }
        if self.forbidden.is_empty() {
            return Err(Error::InvalidConfig("forbidden pattern set is empty".into()));
        }
        if self.length_cap == 0 || self.node_budget == 0 {
            return Err(Error::InvalidConfig("length cap and node budget must be positive".into()));
        }
        Ok(())
    }
}

/// A located instance `u f^{e₁}(u) f^{e₂}(u) f^{e₃}(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceWitness {
    pub start: usize,
    pub block_len: usize,
    pub blocks: [Word; 4],
    pub permutation: MorphicPermutation,
    pub exponents: [u64; 3],
    pub pattern: EqualityPattern,
}

impl InstanceWitness {
    /// Re-checks the witness against `word` by direct application of the
    /// reported permutation powers.
    pub fn revalidate(&self, word: &[Letter]) -> bool {
        let b = self.block_len;
        let Some(factor) = word.get(self.start..self.start + 4 * b) else {
            return false;
        };
        let reconstructs = (0..4).all(|l| self.blocks[l].letters() == &factor[l * b..(l + 1) * b]);
        let u = &self.blocks[0];
        let powers_hold = (0..3).all(|l| {
            self.permutation.power(self.exponents[l]).apply(u).is_ok_and(|img| img == self.blocks[l + 1])
        });
        let letters = self.blocks.each_ref().map(|w| w.letters());
        reconstructs && powers_hold && EqualityPattern::of_blocks(letters) == self.pattern
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub max_length_found: usize,
    pub witness_word: Word,
    /// The (pruned) tree was explored completely, or a word of the length cap
    /// was found; either way the answer is conclusive up to the cap.
    pub exhausted: bool,
    pub reached_cap: bool,
    /// The node budget ran out first; the length is then only a lower bound.
    pub budget_hit: bool,
    pub nodes_visited: u64,
}

fn check_word(w: &Word, config: &SearchConfig) -> Result<()> {
    config.validate()?;
    if let Some(&a) = w.letters().iter().find(|&&a| usize::from(a) >= config.alphabet) {
        return Err(Error::LetterOutOfRange { letter: a.into(), alphabet: config.alphabet });
    }
    Ok(())
}

/// An instance occupying the whole length-`4b` suffix of `w`, for the
/// smallest block length `b` that has one.
pub fn suffix_instance(w: &Word, config: &SearchConfig) -> Result<Option<InstanceWitness>> {
    check_word(w, config)?;
    let detector = Detector::new(config)?;
    Ok(detector.suffix_instance(w.letters(), None))
}

/// First instance anywhere in `w`, scanning end positions left to right and
/// block lengths upwards.
pub fn verify_word_avoids(w: &Word, config: &SearchConfig) -> Result<Option<InstanceWitness>> {
    check_word(w, config)?;
    let detector = Detector::new(config)?;
    Ok(detector.find_in_word(w.letters(), None))
}
