//! Bounded avoidance certificates for morphic words.
//!
//! A [`MorphicWordSpec`] describes `c(g^ω(s))`: the fixed point of a base
//! morphism `g` from seed `s`, optionally passed through a coding morphism
//! `c`. Prefixes are checked exhaustively with the search detector; the
//! bounds are part of every certificate, which never claims more than was
//! checked.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::search::{Detector, Forbidden, InstanceWitness, PermModel, SearchConfig};
use crate::words::repetition::is_4power_free;
use crate::words::{Letter, Morphism, Word};

/// Letter images of the coding `Σ₃ → Σ₅` applied to the ternary Thue word.
pub const H_ALPHA_IMAGES: [&str; 3] = ["0123041203410234", "0132403124302134", "0123402134201324"];

/// Default block-length bound for the `h_α` certificate (`|u| < 31`).
pub const H_ALPHA_U_MAX: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphicWordSpec {
    pub base: Morphism,
    pub seed: Letter,
    pub coding: Option<Morphism>,
    /// Alphabet of the generated word.
    pub alphabet: usize,
}

impl MorphicWordSpec {
    pub fn new(base: Morphism, seed: Letter, coding: Option<Morphism>) -> Result<Self> {
        if !base.is_prolongable(seed) {
            return Err(Error::NotProlongable(seed));
        }
        let alphabet = match &coding {
            Some(c) => {
                if c.source_alphabet() < base.target_alphabet() {
                    return Err(Error::UndefinedLetter(c.source_alphabet() as Letter));
                }
                c.target_alphabet()
            }
            None => base.target_alphabet(),
        };
        Ok(MorphicWordSpec { base, seed, coding, alphabet })
    }

    pub fn thue_morse() -> Self {
        MorphicWordSpec::new(Morphism::thue_morse(), 0, None).expect("prolongable on 0")
    }

    pub fn ternary_thue() -> Self {
        MorphicWordSpec::new(Morphism::ternary_thue(), 0, None).expect("prolongable on 0")
    }

    pub fn h_alpha() -> Self {
        let coding = Morphism::from_digit_images(&H_ALPHA_IMAGES, 5).expect("static morphism");
        MorphicWordSpec::new(Morphism::ternary_thue(), 0, Some(coding)).expect("valid spec")
    }

    /// Reads `{"base": {...}, "seed": 0, "coding": {...}, "alphabet": 5}`;
    /// `seed` defaults to 0, `coding` is optional and `alphabet`, when
    /// given, may widen the generated word's alphabet.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let field = |name: &str| value.get(name).filter(|v| !v.is_null());
        let base = field("base").ok_or_else(|| Error::InvalidConfig("spec has no \"base\" morphism".into()))?;
        let base_alphabet = field("base_alphabet").and_then(Value::as_u64).map(|m| m as usize);
        let base = Morphism::from_json_value(base, base_alphabet)?;
        let seed = match field("seed") {
            None => 0,
            Some(v) => v
                .as_u64()
                .and_then(|s| Letter::try_from(s).ok())
                .ok_or_else(|| Error::InvalidConfig(format!("bad seed {v}")))?,
        };
        let declared = field("alphabet").and_then(Value::as_u64).map(|m| m as usize);
        let coding = match field("coding") {
            None => None,
            Some(c) => Some(Morphism::from_json_value(c, declared)?),
        };
        let spec = MorphicWordSpec::new(base, seed, coding)?;
        if let Some(m) = declared {
            if m < spec.alphabet {
                return Err(Error::AlphabetMismatch { expected: m, found: spec.alphabet });
            }
            return Ok(MorphicWordSpec { alphabet: m, ..spec });
        }
        Ok(spec)
    }

    /// Length-`len` prefix of the generated word.
    pub fn prefix(&self, len: usize) -> Result<Word> {
        let Some(coding) = &self.coding else {
            let w = self.base.fixed_point_prefix(self.seed, len)?;
            return Word::new(w.into_letters(), self.alphabet);
        };
        let (base, _) = self.coded_prefix(coding, len)?;
        let mut letters = coding.apply_letters(base.letters())?;
        letters.truncate(len);
        Word::new(letters, self.alphabet)
    }

    /// Shortest base prefix whose coding has length at least `len`, plus
    /// the coded length.
    fn coded_prefix(&self, coding: &Morphism, len: usize) -> Result<(Word, usize)> {
        let shortest = coding.images().iter().map(Word::len).min().unwrap_or(1).max(1);
        let base = self.base.fixed_point_prefix(self.seed, len.div_ceil(shortest).max(1))?;
        let mut total = 0;
        let mut used = 0;
        for &a in base.letters() {
            if total >= len {
                break;
            }
            total += coding.image(a)?.len();
            used += 1;
        }
        Ok((base.prefix(used), total))
    }

    /// Positions where coding images start in the length-`len` prefix,
    /// followed by the end of the last complete image.
    pub fn image_boundaries(&self, len: usize) -> Result<Vec<usize>> {
        let mut bounds = vec![0];
        let Some(coding) = &self.coding else {
            bounds.extend(1..=len);
            return Ok(bounds);
        };
        let (base, _) = self.coded_prefix(coding, len)?;
        let mut pos = 0;
        for &a in base.letters() {
            pos += coding.image(a)?.len();
            if pos > len {
                break;
            }
            bounds.push(pos);
        }
        Ok(bounds)
    }
}

/// Length-`len` prefix of `h_α`.
pub fn h_alpha_prefix(len: usize) -> Word {
    MorphicWordSpec::h_alpha().prefix(len).expect("static spec")
}

/// Longest factor of the length-`len` prefix containing no complete coding
/// image, computed from the image boundaries `b₀ < b₁ < …`: a factor avoiding
/// full images must start after `b_{n-1}` and end before `b_{n+1}`, giving
/// `b_{n+1} − b_{n−1} − 2`; the prefix itself adds the first image minus one.
pub fn max_gap_without_full_image(spec: &MorphicWordSpec, len: usize) -> Result<usize> {
    let bounds = spec.image_boundaries(len)?;
    if bounds.len() < 2 {
        return Err(Error::InvalidConfig(format!("prefix of length {len} contains no complete image")));
    }
    let head = bounds[1] - 1;
    let inner = bounds.windows(3).map(|w| w[2] - w[0] - 2).max().unwrap_or(0);
    Ok(head.max(inner))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertificateStatus {
    /// No instance with block length ≤ `u_max` in the checked prefix.
    Clean,
    Witness { witness: InstanceWitness },
    /// The factor-check budget allowed only a shorter prefix; clean up to
    /// `checked_len`.
    Partial { checked_len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvoidanceCertificate {
    pub spec: MorphicWordSpec,
    pub prefix_len: usize,
    pub u_max: usize,
    pub forbidden: Forbidden,
    pub identity_instances: bool,
    pub model: PermModel,
    pub result: CertificateStatus,
    /// `None` when the spec has no coding.
    pub gap: Option<usize>,
}

impl AvoidanceCertificate {
    pub fn is_clean(&self) -> bool {
        self.result == CertificateStatus::Clean
    }
}

const TILE: usize = 256;

/// Number of (end position, block length) checks for a prefix.
fn checks_for(len: usize, u_max: usize) -> u64 {
    (1..=len).map(|end| (end / 4).min(u_max) as u64).sum()
}

/// Checks every factor of the length-`len` prefix with block length at most
/// `u_max` against `config` (whose alphabet must be the spec's). The search
/// budget `config.node_budget` caps the number of factor checks; if it is
/// too small, the longest affordable prefix is checked and the certificate
/// is marked partial.
pub fn verify_prefix_avoids_with(
    spec: &MorphicWordSpec,
    config: &SearchConfig,
    u_max: usize,
    len: usize,
) -> Result<AvoidanceCertificate> {
    if u_max == 0 || len == 0 {
        return Err(Error::InvalidConfig("u_max and prefix length must be positive".into()));
    }
    if config.alphabet != spec.alphabet {
        return Err(Error::AlphabetMismatch { expected: spec.alphabet, found: config.alphabet });
    }
    let detector = Detector::new(config)?;
    let mut checked_len = len;
    if checks_for(len, u_max) > config.node_budget {
        // largest prefix within budget
        let (mut lo, mut hi) = (0, len);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if checks_for(mid, u_max) <= config.node_budget {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        checked_len = lo;
    }
    let word = spec.prefix(checked_len)?;
    let letters = word.letters();
    let tiles: Vec<usize> = (0..checked_len.div_ceil(TILE)).collect();
    // first witness by end position: tiles are ordered, take the lowest hit
    let witness = tiles
        .par_iter()
        .filter_map(|&t| {
            let ends = t * TILE + 1..=((t + 1) * TILE).min(checked_len);
            detector.find_in_range(letters, ends, Some(u_max)).map(|w| (t, w))
        })
        .min_by_key(|(t, _)| *t)
        .map(|(_, w)| w);
    let result = match witness {
        Some(witness) => CertificateStatus::Witness { witness },
        None if checked_len < len => CertificateStatus::Partial { checked_len },
        None => CertificateStatus::Clean,
    };
    let gap = match spec.coding {
        Some(_) => Some(max_gap_without_full_image(spec, len)?),
        None => None,
    };
    Ok(AvoidanceCertificate {
        spec: spec.clone(),
        prefix_len: len,
        u_max,
        forbidden: config.forbidden,
        identity_instances: config.identity_instances,
        model: config.model,
        result,
        gap,
    })
}

/// [`verify_prefix_avoids_with`] in abstract exponent mode with default
/// settings.
pub fn verify_prefix_avoids(
    spec: &MorphicWordSpec,
    forbidden: Forbidden,
    model: PermModel,
    u_max: usize,
    len: usize,
) -> Result<AvoidanceCertificate> {
    let config = SearchConfig::new(spec.alphabet, forbidden, model).with_budget(u64::MAX);
    verify_prefix_avoids_with(spec, &config, u_max, len)
}

/// Whether the length-`len` prefix contains no fourth power.
pub fn four_power_free_certificate(spec: &MorphicWordSpec, len: usize) -> Result<bool> {
    Ok(is_4power_free(spec.prefix(len)?.letters()))
}
