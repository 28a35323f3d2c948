use std::collections::HashSet;

use super::{ExponentMode, Forbidden, InstanceWitness, SearchConfig, MAX_MODEL_ALPHABET};
use crate::error::Result;
use crate::params::EqualityPattern;
use crate::words::{Letter, MorphicPermutation, Word};

/// Image array padded with fixed points up to the largest model alphabet.
type Perm = [Letter; MAX_MODEL_ALPHABET];

const UNSET: Letter = Letter::MAX;

fn pack(f: &MorphicPermutation) -> Perm {
    let mut out: Perm = std::array::from_fn(|a| a as Letter);
    out[..f.alphabet()].copy_from_slice(f.images());
    out
}

/// One permutation `f` of the model together with, for each of the three
/// blocks, the powers of `f` that may produce it (and their exponents).
#[derive(Debug)]
struct Candidate {
    generator: MorphicPermutation,
    slots: [Vec<(Perm, u64)>; 3],
}

/// Partial letter map `u → v_l`, recorded only on the letters of `u`.
#[derive(Clone, Copy)]
struct PartialMap {
    image: Perm,
}

impl PartialMap {
    fn agrees(&self, g: &Perm, domain: &[Letter]) -> bool {
        domain.iter().all(|&a| g[usize::from(a)] == self.image[usize::from(a)])
    }
}

/// Checks factors `u v₁ v₂ v₃` against a fixed configuration.
///
/// Candidates are deduplicated: in abstract mode two model permutations
/// generating the same cyclic group are interchangeable, so only the first
/// (in lexicographic order) is kept.
#[derive(Debug)]
pub struct Detector {
    alphabet: usize,
    forbidden: Forbidden,
    candidates: Vec<Candidate>,
}

impl Detector {
    pub fn new(config: &SearchConfig) -> Result<Self> {
        config.validate()?;
        let mut candidates = Vec::new();
        let mut seen: HashSet<Vec<Perm>> = HashSet::new();
        for f in config.model.permutations(config.alphabet)? {
            let (key, slots) = match config.mode {
                ExponentMode::Abstract => {
                    let powers: Vec<(Perm, u64)> = (1..=f.order()).map(|e| (pack(&f.power(e)), e)).collect();
                    let mut key: Vec<Perm> = powers.iter().map(|(g, _)| *g).collect();
                    key.sort_unstable();
                    (key, [powers.clone(), powers.clone(), powers])
                }
                ExponentMode::Fixed(e) => {
                    let slot = |x: u64| vec![(pack(&f.power(x)), x)];
                    let slots = [slot(e.i), slot(e.j), slot(e.k)];
                    let key = slots.iter().map(|s| s[0].0).collect();
                    (key, slots)
                }
            };
            if seen.insert(key) {
                candidates.push(Candidate { generator: f, slots });
            }
        }
        log::debug!("detector: {} candidate permutations after deduplication", candidates.len());
        Ok(Detector { alphabet: config.alphabet, forbidden: config.effective_forbidden(), candidates })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Core test on a factor of length `4b`: returns the candidate index,
    /// exponents and block pattern of an instance, if there is one.
    fn check_factor(&self, factor: &[Letter], b: usize) -> Option<(usize, [u64; 3], EqualityPattern)> {
        debug_assert_eq!(factor.len(), 4 * b);
        let u = &factor[..b];
        let mut maps = [PartialMap { image: [UNSET; MAX_MODEL_ALPHABET] }; 3];
        let mut domain: [Letter; MAX_MODEL_ALPHABET] = [0; MAX_MODEL_ALPHABET];
        let mut domain_len = 0;
        let mut in_domain = [false; MAX_MODEL_ALPHABET];
        for (x, &a) in u.iter().enumerate() {
            let ai = usize::from(a);
            if !in_domain[ai] {
                in_domain[ai] = true;
                domain[domain_len] = a;
                domain_len += 1;
            }
            for (l, map) in maps.iter_mut().enumerate() {
                let c = factor[(l + 1) * b + x];
                let slot = &mut map.image[ai];
                if *slot == UNSET {
                    *slot = c;
                } else if *slot != c {
                    return None;
                }
            }
        }
        let domain = &domain[..domain_len];
        // each partial map must be injective to extend to a bijection
        for map in &maps {
            let mut hit = [false; MAX_MODEL_ALPHABET];
            for &a in domain {
                let c = usize::from(map.image[usize::from(a)]);
                if hit[c] {
                    return None;
                }
                hit[c] = true;
            }
        }
        // blocks are images of u, so they are equal iff their maps agree on u's letters
        let identity = PartialMap { image: std::array::from_fn(|a| a as Letter) };
        let all = [identity, maps[0], maps[1], maps[2]];
        let pattern =
            EqualityPattern::from_equalities(|p, q| all[p].agrees(&all[q].image, domain));
        if !self.forbidden.contains(pattern) {
            return None;
        }
        'candidates: for (idx, cand) in self.candidates.iter().enumerate() {
            let mut exponents = [0u64; 3];
            for l in 0..3 {
                match cand.slots[l].iter().find(|(g, _)| maps[l].agrees(g, domain)) {
                    Some(&(_, e)) => exponents[l] = e,
                    None => continue 'candidates,
                }
            }
            return Some((idx, exponents, pattern));
        }
        None
    }

    fn witness(&self, w: &[Letter], start: usize, b: usize, found: (usize, [u64; 3], EqualityPattern)) -> InstanceWitness {
        let (idx, exponents, pattern) = found;
        let block = |l: usize| {
            Word::new(w[start + l * b..start + (l + 1) * b].to_vec(), self.alphabet).expect("letters checked")
        };
        InstanceWitness {
            start,
            block_len: b,
            blocks: [block(0), block(1), block(2), block(3)],
            permutation: self.candidates[idx].generator.clone(),
            exponents,
            pattern,
        }
    }

    /// The factor `w[start..start + 4b]` as an instance, if it is one.
    pub fn instance_at(&self, w: &[Letter], start: usize, b: usize) -> Option<InstanceWitness> {
        let factor = w.get(start..start.checked_add(4 * b)?)?;
        if b == 0 {
            return None;
        }
        self.check_factor(factor, b).map(|found| self.witness(w, start, b, found))
    }

    /// Smallest block length `b` (at most `max_block`) such that the last
    /// `4b` letters of `w` form an instance.
    pub fn suffix_instance(&self, w: &[Letter], max_block: Option<usize>) -> Option<InstanceWitness> {
        let n = w.len();
        let top = max_block.map_or(n / 4, |m| m.min(n / 4));
        (1..=top).find_map(|b| {
            let start = n - 4 * b;
            self.check_factor(&w[start..], b).map(|found| self.witness(w, start, b, found))
        })
    }

    /// Whether some suffix of `w` is an instance.
    pub fn suffix_hit(&self, w: &[Letter]) -> bool {
        let n = w.len();
        (1..=n / 4).any(|b| self.check_factor(&w[n - 4 * b..], b).is_some())
    }

    /// First instance in `w` by end position, then block length.
    pub fn find_in_word(&self, w: &[Letter], max_block: Option<usize>) -> Option<InstanceWitness> {
        (4..=w.len()).find_map(|end| self.suffix_instance(&w[..end], max_block))
    }

    /// First instance ending in `lo..=hi` (1-based end positions), used to
    /// split long scans into independent tiles.
    pub fn find_in_range(&self, w: &[Letter], ends: std::ops::RangeInclusive<usize>, max_block: Option<usize>) -> Option<InstanceWitness> {
        let (lo, hi) = (*ends.start(), (*ends.end()).min(w.len()));
        (lo.max(4)..=hi).find_map(|end| self.suffix_instance(&w[..end], max_block))
    }
}
