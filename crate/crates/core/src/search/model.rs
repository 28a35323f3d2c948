use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{Letter, MorphicPermutation};

/// Largest alphabet for which the permutation models are tabulated.
pub const MAX_MODEL_ALPHABET: usize = 8;

/// Which permutations may replace `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermModel {
    /// A single `m`-cycle.
    FullCycle,
    /// Fixes exactly one letter and is an `(m-1)`-cycle on the rest.
    FixOnePointCycle,
    /// Any bijection of `Σ_m`.
    AllPermutations,
    /// At most one nontrivial cycle, all other letters fixed (includes the
    /// identity).
    SingleCycle,
}

impl PermModel {
    pub fn admits(&self, f: &MorphicPermutation) -> bool {
        let m = f.alphabet();
        match self {
            PermModel::AllPermutations => true,
            PermModel::SingleCycle => f.cycle_type().iter().filter(|&&c| c > 1).count() <= 1,
            PermModel::FullCycle => f.cycle_type() == [m],
            PermModel::FixOnePointCycle => {
                let mut expected = vec![m.saturating_sub(1), 1];
                expected.retain(|&c| c > 0);
                expected.sort_unstable_by(|a, b| b.cmp(a));
                f.cycle_type() == expected
            }
        }
    }

    /// The model's permutations of `Σ_m` in lexicographic order of images.
    pub fn permutations(&self, m: usize) -> Result<Vec<MorphicPermutation>> {
        if m == 0 || m > MAX_MODEL_ALPHABET {
            return Err(Error::InvalidConfig(format!(
                "permutation models are tabulated for alphabets 1..={MAX_MODEL_ALPHABET}, got {m}"
            )));
        }
        Ok(all_permutations(m).into_iter().filter(|f| self.admits(f)).collect())
    }
}

/// Every permutation of `Σ_m`, lexicographic in the image array.
pub fn all_permutations(m: usize) -> Vec<MorphicPermutation> {
    let mut images: Vec<Letter> = (0..m as Letter).collect();
    let mut out = Vec::new();
    loop {
        out.push(MorphicPermutation::new(images.clone()).expect("a rearrangement of 0..m"));
        // next lexicographic arrangement
        let Some(pivot) = (1..images.len()).rev().find(|&p| images[p - 1] < images[p]) else {
            break;
        };
        let swap_with = (pivot..images.len()).rev().find(|&q| images[q] > images[pivot - 1]).expect("exists");
        images.swap(pivot - 1, swap_with);
        images[pivot..].reverse();
    }
    out
}

impl fmt::Display for PermModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PermModel::FullCycle => "cycle",
            PermModel::FixOnePointCycle => "fixcycle",
            PermModel::AllPermutations => "all",
            PermModel::SingleCycle => "anycycle",
        })
    }
}

impl FromStr for PermModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(PermModel::FullCycle),
            "fixcycle" => Ok(PermModel::FixOnePointCycle),
            "all" => Ok(PermModel::AllPermutations),
            "anycycle" => Ok(PermModel::SingleCycle),
            other => Err(Error::InvalidConfig(format!("unknown permutation model {other:?}"))),
        }
    }
}

impl Serialize for PermModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_sizes() {
        let count = |model: PermModel, m| model.permutations(m).unwrap().len();
        assert_eq!(count(PermModel::AllPermutations, 5), 120);
        assert_eq!(count(PermModel::FullCycle, 4), 6);
        assert_eq!(count(PermModel::FullCycle, 5), 24);
        // m choices of the fixed letter, (m-2)! cycles on the rest
        assert_eq!(count(PermModel::FixOnePointCycle, 4), 8);
        assert_eq!(count(PermModel::FixOnePointCycle, 5), 30);
        assert_eq!(count(PermModel::FixOnePointCycle, 3), 3);
        // identity, 6 transpositions, 8 three-cycles, 6 four-cycles
        assert_eq!(count(PermModel::SingleCycle, 4), 21);
    }

    #[test]
    fn models_nest_inside_all_permutations() {
        let all = PermModel::AllPermutations.permutations(5).unwrap();
        for model in [PermModel::FullCycle, PermModel::FixOnePointCycle, PermModel::SingleCycle] {
            for f in model.permutations(5).unwrap() {
                assert!(all.contains(&f));
            }
        }
    }

    #[test]
    fn rejects_huge_alphabets() {
        assert!(PermModel::AllPermutations.permutations(9).is_err());
    }

    #[test]
    fn parses_names() {
        for model in [PermModel::FullCycle, PermModel::FixOnePointCycle, PermModel::AllPermutations, PermModel::SingleCycle] {
            assert_eq!(model.to_string().parse::<PermModel>().unwrap(), model);
        }
        assert!("cycles".parse::<PermModel>().is_err());
    }
}
