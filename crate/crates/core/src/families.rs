//! The ten collections of minimal unavoidable parameter sets, σ, and the
//! resulting classification of a pattern.
//!
//! Every collection is described by a [`FamilyRule`]: mandatory members,
//! choice groups (pick exactly one alternative per group), restrictions and
//! explicit exclusions. One generator interprets all ten rules. The reading
//! chosen for each ambiguous rule is recorded in `RULES.md`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::params::{
    is_swapped_form_relabelled, profile, AlphaProfile, AlphaValue, EqualityPattern, PatternExponents, NUM_PARAMS,
    REPS,
};

/// A nonempty subset of `{α₁, …, α₁₄}`, stored as a bit mask over indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ParamSet(u16);

impl ParamSet {
    pub const EMPTY: ParamSet = ParamSet(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u16;
        for a in indices {
            crate::params::check_index(a)?;
            bits |= 1 << a;
        }
        Ok(ParamSet(bits))
    }

    /// For static tables; panics on an index outside `1..=14`.
    pub fn of(indices: &[usize]) -> Self {
        ParamSet::from_indices(indices.iter().copied()).expect("static parameter set")
    }

    /// All fourteen parameters.
    pub fn full() -> Self {
        ParamSet::of(&(1..=NUM_PARAMS).collect::<Vec<_>>())
    }

    /// Parses `1,2,4,6,7`.
    pub fn parse(text: &str) -> Result<Self> {
        let indices = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .trim_start_matches(['a', 'α'])
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidConfig(format!("bad parameter index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ParamSet::from_indices(indices)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=NUM_PARAMS).filter(move |&a| self.contains(a))
    }

    pub fn contains(&self, a: usize) -> bool {
        a <= NUM_PARAMS && self.0 & (1 << a) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ParamSet) -> ParamSet {
        ParamSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ParamSet) -> ParamSet {
        ParamSet(self.0 & other.0)
    }

    pub fn is_subset(&self, other: &ParamSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, a: usize) {
        assert!((1..=NUM_PARAMS).contains(&a), "parameter index {a} out of range");
        self.0 |= 1 << a;
    }

    /// Representations of the members.
    pub fn patterns(&self) -> Vec<EqualityPattern> {
        self.indices().map(|a| REPS[a - 1]).collect()
    }

    /// Largest α value among the members (∞ absorbs).
    pub fn max_alpha(&self, prof: &AlphaProfile) -> AlphaValue {
        self.indices().map(|a| prof.value(a)).max().unwrap_or(AlphaValue::Finite(0))
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.indices().collect())
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ParamSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.indices())
    }
}

/// Pick exactly one alternative.
#[derive(Clone, Debug)]
pub struct ChoiceGroup {
    pub label: &'static str,
    pub alternatives: Vec<ParamSet>,
}

impl ChoiceGroup {
    /// One member of the parameters whose representation satisfies `class`.
    fn one_of_class(label: &'static str, class: fn(&EqualityPattern) -> bool) -> Self {
        let alternatives = (1..=NUM_PARAMS)
            .filter(|&a| class(&REPS[a - 1]))
            .map(|a| ParamSet::of(&[a]))
            .collect();
        ChoiceGroup { label, alternatives }
    }

    fn one_of(label: &'static str, indices: &[usize]) -> Self {
        ChoiceGroup { label, alternatives: indices.iter().map(|&a| ParamSet::of(&[a])).collect() }
    }

    fn alternatives(label: &'static str, sets: &[&[usize]]) -> Self {
        ChoiceGroup { label, alternatives: sets.iter().map(|s| ParamSet::of(s)).collect() }
    }
}

#[derive(Clone, Debug)]
pub enum Restriction {
    /// If every member of `when_all` is present and no member of `when_none`
    /// is, then all of `then_all` must be present, and at least one member of
    /// each set in `then_any`.
    Implies { when_all: ParamSet, when_none: ParamSet, then_all: ParamSet, then_any: Vec<ParamSet> },
    /// The set must not contain all of these.
    Forbid(ParamSet),
    /// `|S ∩ left| = left_count` exactly when `|S ∩ right| = right_count`;
    /// sets meeting `unless` are exempt.
    CountIff { left: ParamSet, left_count: usize, right: ParamSet, right_count: usize, unless: ParamSet },
    /// When the square member and the gapped-square member are not swapped
    /// forms of each other (up to renaming), some cube, two-square or
    /// gapped-cube member must repeat a digit on every position pair where
    /// either of them does.
    SquareAgreement,
}

impl Restriction {
    fn implies(when_all: &[usize], then_all: &[usize], then_any: &[&[usize]]) -> Self {
        Restriction::Implies {
            when_all: ParamSet::of(when_all),
            when_none: ParamSet::EMPTY,
            then_all: ParamSet::of(then_all),
            then_any: then_any.iter().map(|s| ParamSet::of(s)).collect(),
        }
    }

    pub fn holds(&self, set: &ParamSet) -> bool {
        match self {
            Restriction::Implies { when_all, when_none, then_all, then_any } => {
                let triggered = when_all.is_subset(set) && set.intersection(*when_none).is_empty();
                !triggered || (then_all.is_subset(set) && then_any.iter().all(|any| !set.intersection(*any).is_empty()))
            }
            Restriction::Forbid(combo) => !combo.is_subset(set),
            Restriction::CountIff { left, left_count, right, right_count, unless } => {
                !set.intersection(*unless).is_empty()
                    || (set.intersection(*left).len() == *left_count) == (set.intersection(*right).len() == *right_count)
            }
            Restriction::SquareAgreement => square_agreement(set),
        }
    }
}

fn square_agreement(set: &ParamSet) -> bool {
    let members = set.patterns();
    let squares = members.iter().filter(|p| p.has_prefix_square() || p.has_suffix_square());
    let gapped: Vec<&EqualityPattern> = members.iter().filter(|p| p.has_gapped_square()).collect();
    let repeaters: Vec<&EqualityPattern> = members
        .iter()
        .filter(|p| p.contains_cube() || p.has_two_squares() || p.contains_gapped_cube())
        .collect();
    for sq in squares {
        for gs in &gapped {
            if is_swapped_form_relabelled(*sq, **gs) {
                continue;
            }
            let pairs: Vec<(usize, usize)> = sq.equal_pairs().chain(gs.equal_pairs()).collect();
            if !repeaters.iter().any(|r| r.agrees_on(&pairs)) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct FamilyRule {
    pub id: usize,
    pub mandatory: ParamSet,
    pub groups: Vec<ChoiceGroup>,
    pub restrictions: Vec<Restriction>,
    pub exclusions: Vec<ParamSet>,
    pub size: Option<usize>,
}

pub const NUM_FAMILIES: usize = 10;

fn squares() -> ChoiceGroup {
    ChoiceGroup::one_of_class("prefix or suffix square, no gapped cube", |p| {
        (p.has_prefix_square() || p.has_suffix_square()) && !p.contains_gapped_cube()
    })
}

fn gapped_squares() -> ChoiceGroup {
    ChoiceGroup::one_of_class("one gapped square", EqualityPattern::has_gapped_square)
}

fn gapped_cubes() -> ChoiceGroup {
    ChoiceGroup::one_of_class("gapped cube", EqualityPattern::contains_gapped_cube)
}

fn cubes() -> ChoiceGroup {
    ChoiceGroup::one_of_class("cube", EqualityPattern::contains_cube)
}

fn cubes_or_two_squares() -> ChoiceGroup {
    ChoiceGroup::one_of_class("cube or two squares", |p| p.contains_cube() || p.has_two_squares())
}

impl FamilyRule {
    pub fn new(id: usize) -> Result<Self> {
        let rule = |mandatory: &[usize], groups, restrictions, exclusions: &[&[usize]], size| FamilyRule {
            id,
            mandatory: ParamSet::of(mandatory),
            groups,
            restrictions,
            exclusions: exclusions.iter().map(|s| ParamSet::of(s)).collect(),
            size,
        };
        Ok(match id {
            1 => rule(
                &[1],
                vec![squares(), gapped_squares(), cubes_or_two_squares(), gapped_cubes()],
                vec![Restriction::SquareAgreement],
                &[],
                Some(5),
            ),
            2 => rule(
                &[1, 12, 13],
                vec![ChoiceGroup::one_of("square or gapped square", &[2, 3, 4]), ChoiceGroup::one_of("cube or gapped cube", &[6, 7, 9])],
                vec![Restriction::implies(&[2], &[7], &[])],
                &[],
                Some(5),
            ),
            3 => rule(
                &[1, 10],
                vec![squares(), gapped_squares(), gapped_cubes()],
                vec![Restriction::SquareAgreement],
                &[],
                Some(5),
            ),
            4 => rule(
                &[1, 2, 7],
                vec![cubes_or_two_squares(), ChoiceGroup::one_of_class("only outer items equal", EqualityPattern::has_only_outer_equal)],
                vec![],
                &[],
                Some(5),
            ),
            5 => rule(&[1, 12, 13, 14], vec![cubes()], vec![], &[], Some(5)),
            6 => rule(
                &[1, 10, 13, 14],
                vec![
                    ChoiceGroup::alternatives("both cubes", &[&[6, 9]]),
                    gapped_cubes(),
                    gapped_squares(),
                ],
                vec![Restriction::implies(&[7], &[4], &[]), Restriction::Forbid(ParamSet::of(&[4, 8]))],
                &[],
                Some(8),
            ),
            7 => rule(
                &[1, 12, 13],
                vec![squares(), gapped_squares(), gapped_cubes()],
                vec![
                    Restriction::Forbid(ParamSet::of(&[2, 4])),
                    Restriction::Forbid(ParamSet::of(&[2, 7])),
                    Restriction::SquareAgreement,
                ],
                &[],
                Some(6),
            ),
            8 => rule(&[1, 3, 5, 7, 14], vec![cubes()], vec![], &[], Some(6)),
            9 => rule(
                &[1, 10, 11],
                vec![
                    ChoiceGroup::alternatives("further squares", &[&[], &[2], &[5], &[2, 5]]),
                    ChoiceGroup::alternatives(
                        "gapped cube with outer pair, or middle/outer squares",
                        &[&[7, 14], &[8, 14], &[12], &[13], &[14], &[12, 13], &[12, 14], &[13, 14]],
                    ),
                    gapped_squares(),
                    cubes(),
                ],
                vec![
                    Restriction::CountIff {
                        left: ParamSet::of(&[2, 5, 10]),
                        left_count: 2,
                        right: ParamSet::of(&[12, 13, 14]),
                        right_count: 1,
                        unless: ParamSet::of(&[7, 8]),
                    },
                    Restriction::implies(&[2], &[3, 10], &[&[12, 13]]),
                    Restriction::implies(&[5], &[4, 10], &[&[12, 13]]),
                    Restriction::Implies {
                        when_all: ParamSet::of(&[10]),
                        when_none: ParamSet::of(&[2, 5]),
                        then_all: ParamSet::of(&[14]),
                        then_any: vec![ParamSet::of(&[3, 4]), ParamSet::of(&[7, 8, 12, 13])],
                    },
                    Restriction::implies(&[7, 14], &[3], &[]),
                    Restriction::implies(&[4, 14], &[], &[&[8, 12]]),
                    Restriction::Forbid(ParamSet::of(&[6, 10, 12, 13, 14])),
                ],
                &[&[1, 3, 6, 8, 10, 11, 14], &[1, 4, 5, 6, 10, 12, 14], &[1, 4, 6, 7, 10, 11, 14]],
                Some(7),
            ),
            10 => rule(
                &[1],
                vec![ChoiceGroup::alternatives(
                    "template",
                    &[
                        &[3, 5, 6, 10, 11, 13, 14],
                        &[3, 5, 9, 10, 11, 13, 14],
                        &[2, 4, 13, 6, 10, 11, 14],
                        &[2, 4, 13, 9, 10, 11, 14],
                    ],
                )],
                vec![],
                &[],
                Some(8),
            ),
            other => return Err(Error::InvalidFamily(other)),
        })
    }

    /// Whether `set` passes every restriction, size check and exclusion
    /// (membership in some choice combination is not checked here).
    pub fn admits(&self, set: &ParamSet) -> bool {
        self.size.is_none_or(|n| set.len() == n)
            && self.restrictions.iter().all(|r| r.holds(set))
            && !self.exclusions.contains(set)
    }

    /// Every set the rule describes, sorted by size then indices.
    pub fn generate(&self) -> Vec<ParamSet> {
        let mut partial = vec![self.mandatory];
        for group in &self.groups {
            partial = partial
                .iter()
                .flat_map(|base| group.alternatives.iter().map(move |alt| base.union(*alt)))
                .collect();
        }
        let mut out: Vec<ParamSet> = partial.into_iter().filter(|s| self.admits(s)).collect();
        out.sort_by_key(ParamSet::sort_key);
        out.dedup();
        out
    }
}

/// The collection `S_ℓ` for `1 ≤ ℓ ≤ 10`.
pub fn enumerate_family(family: usize) -> Result<Vec<ParamSet>> {
    Ok(FamilyRule::new(family)?.generate())
}

/// Every generated set tagged with the first family producing it.
pub fn all_unavoidable_sets_by_family() -> Vec<(usize, ParamSet)> {
    let mut out: Vec<(usize, ParamSet)> = Vec::new();
    for family in 1..=NUM_FAMILIES {
        for set in enumerate_family(family).expect("family index in range") {
            if !out.iter().any(|(_, s)| *s == set) {
                out.push((family, set));
            }
        }
    }
    out
}

/// Union of all ten collections, without duplicates.
pub fn all_unavoidable_sets() -> Vec<ParamSet> {
    all_unavoidable_sets_by_family().into_iter().map(|(_, s)| s).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sigma {
    pub value: AlphaValue,
    pub witness_set: ParamSet,
    pub witness_family: usize,
}

/// `σ = min over all generated sets S of max_{α ∈ S} α`, for positive,
/// pairwise distinct exponents. Ties go to the first set in family order.
pub fn sigma(e: &PatternExponents) -> Result<Sigma> {
    if !e.is_generic() {
        return Err(Error::DegenerateExponents { i: e.i, j: e.j, k: e.k });
    }
    let prof = profile(e);
    let mut best: Option<Sigma> = None;
    for (family, set) in all_unavoidable_sets_by_family() {
        let value = set.max_alpha(&prof);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Sigma { value, witness_set: set, witness_family: family });
        }
    }
    Ok(best.expect("families are nonempty"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateCase {
    None,
    /// `i = j` or `j = k`: every instance contains a square.
    AdjacentEqual,
    /// `i = k`.
    OuterEqual,
}

impl Serialize for DegenerateCase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            DegenerateCase::None => "none",
            DegenerateCase::AdjacentEqual => "i=j or j=k",
            DegenerateCase::OuterEqual => "i=k",
        })
    }
}

/// Alphabet sizes `from..=to`; `to = None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub from: u64,
    pub to: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Boundary {
    pub alphabet: u64,
    pub status: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub exponents: PatternExponents,
    pub degenerate_case: DegenerateCase,
    pub sigma: Option<AlphaValue>,
    pub witness_set: Option<ParamSet>,
    pub witness_family: Option<usize>,
    pub avoidable_interval: Interval,
    pub unavoidable_from: Option<u64>,
    pub boundary: Option<Boundary>,
    pub needs_review: bool,
    pub note: &'static str,
}

/// Every pattern of this shape is avoidable over alphabets of at most this size.
pub const ALWAYS_AVOIDABLE_UP_TO: u64 = 4;

pub fn degenerate_case(e: &PatternExponents) -> DegenerateCase {
    if e.i == e.j || e.j == e.k {
        DegenerateCase::AdjacentEqual
    } else if e.i == e.k {
        DegenerateCase::OuterEqual
    } else {
        DegenerateCase::None
    }
}

/// Classification of `x π^i(x) π^j(x) π^k(x)` over alphabets `Σ_m`, `m ≥ 2`.
pub fn classify(e: &PatternExponents) -> Result<ClassificationReport> {
    let case = degenerate_case(e);
    if case != DegenerateCase::None {
        let note = match case {
            DegenerateCase::AdjacentEqual => "every instance contains a square; avoidable over every alphabet",
            _ => "reduces to the cubic pattern with equal outer exponents; avoidable over every alphabet",
        };
        return Ok(ClassificationReport {
            exponents: *e,
            degenerate_case: case,
            sigma: None,
            witness_set: None,
            witness_family: None,
            avoidable_interval: Interval { from: 2, to: None },
            unavoidable_from: None,
            boundary: None,
            needs_review: false,
            note,
        });
    }
    let s = sigma(e)?;
    let (avoidable_interval, unavoidable_from, boundary, needs_review, note) = match s.value {
        AlphaValue::Finite(t) => {
            let status = if t <= ALWAYS_AVOIDABLE_UP_TO { "avoidable" } else { "undetermined (analyse individually)" };
            (
                Interval { from: 2, to: Some(t - 1) },
                Some(t + 1),
                Some(Boundary { alphabet: t, status }),
                false,
                "avoidable below sigma, unavoidable above sigma",
            )
        }
        AlphaValue::Infinite => (
            Interval { from: 2, to: None },
            None,
            None,
            true,
            "sigma is infinite: avoidable at every alphabet size reachable by the evidence; flagged for manual review",
        ),
    };
    Ok(ClassificationReport {
        exponents: *e,
        degenerate_case: case,
        sigma: Some(s.value),
        witness_set: Some(s.witness_set),
        witness_family: Some(s.witness_family),
        avoidable_interval,
        unavoidable_from,
        boundary,
        needs_review,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(indices: &[usize]) -> ParamSet {
        ParamSet::of(indices)
    }

    fn family(l: usize) -> Vec<ParamSet> {
        enumerate_family(l).unwrap()
    }

    #[test]
    fn worked_examples_are_generated() {
        let examples: [(usize, &[usize]); 10] = [
            (1, &[1, 2, 4, 6, 7]),
            (2, &[1, 2, 7, 12, 13]),
            (3, &[1, 2, 4, 7, 10]),
            (4, &[1, 2, 7, 10, 14]),
            (5, &[1, 9, 12, 13, 14]),
            (6, &[1, 4, 6, 7, 9, 10, 13, 14]),
            (7, &[1, 3, 5, 8, 12, 13]),
            (8, &[1, 3, 5, 7, 9, 14]),
            (9, &[1, 2, 3, 6, 10, 11, 13]),
            (10, &[1, 3, 5, 6, 10, 11, 13, 14]),
        ];
        for (l, ex) in examples {
            assert!(family(l).contains(&set(ex)), "family {l} lacks {}", set(ex));
        }
    }

    #[test]
    fn family_nine_exceptions_are_absent() {
        let f9 = family(9);
        for ex in [&[1, 3, 6, 8, 10, 11, 14][..], &[1, 4, 5, 6, 10, 12, 14], &[1, 4, 6, 7, 10, 11, 14]] {
            assert!(!f9.contains(&set(ex)));
        }
    }

    #[test]
    fn family_one_respects_digit_agreement() {
        let f1 = family(1);
        // 0012 with 0121 forces the gapped cube 0010
        assert!(f1.contains(&set(&[1, 2, 4, 9, 7])));
        assert!(!f1.iter().any(|s| s.contains(2) && s.contains(4) && s.contains(8)));
        // 0122 with 0102 forces 0100
        assert!(!f1.iter().any(|s| s.contains(5) && s.contains(3) && s.contains(7)));
        // swapped pairs are unrestricted
        assert!(f1.contains(&set(&[1, 2, 3, 6, 7])) && f1.contains(&set(&[1, 2, 3, 6, 8])));
        assert!(f1.contains(&set(&[1, 5, 4, 6, 7])) && f1.contains(&set(&[1, 5, 4, 6, 8])));
        assert_eq!(f1.len(), 18);
    }

    #[test]
    fn family_sizes() {
        let sizes: Vec<usize> = (1..=NUM_FAMILIES).map(|l| family(l).len()).collect();
        assert_eq!(sizes, [18, 7, 6, 3, 2, 2, 4, 2, 19, 4]);
    }

    #[test]
    fn declared_cardinalities_hold() {
        for l in 1..=NUM_FAMILIES {
            let rule = FamilyRule::new(l).unwrap();
            for s in rule.generate() {
                assert_eq!(Some(s.len()), rule.size);
                assert!(s.contains(1));
                assert!(s.len() >= 5);
            }
        }
    }

    #[test]
    fn families_are_antichains() {
        for l in 1..=NUM_FAMILIES {
            let sets = family(l);
            for a in &sets {
                for b in &sets {
                    assert!(a == b || !a.is_subset(b), "family {l}: {a} inside {b}");
                }
            }
        }
    }

    #[test]
    fn invalid_family() {
        assert!(matches!(enumerate_family(0), Err(Error::InvalidFamily(0))));
        assert!(matches!(enumerate_family(11), Err(Error::InvalidFamily(11))));
    }

    #[test]
    fn sigma_rejects_degenerate_triples() {
        assert!(sigma(&PatternExponents::new(1, 1, 3)).is_err());
        assert!(sigma(&PatternExponents::new(0, 1, 3)).is_err());
    }

    #[test]
    fn degenerate_classification() {
        let r = classify(&PatternExponents::new(2, 2, 5)).unwrap();
        assert_eq!(r.degenerate_case, DegenerateCase::AdjacentEqual);
        assert_eq!(r.avoidable_interval, Interval { from: 2, to: None });
        assert_eq!(r.sigma, None);
        let r = classify(&PatternExponents::new(3, 5, 3)).unwrap();
        assert_eq!(r.degenerate_case, DegenerateCase::OuterEqual);
        assert_eq!(r.avoidable_interval, Interval { from: 2, to: None });
        assert!(classify(&PatternExponents::new(0, 2, 3)).is_err());
    }

    #[test]
    fn param_set_parsing() {
        assert_eq!(ParamSet::parse("1,2,4,6,7").unwrap(), set(&[1, 2, 4, 6, 7]));
        assert_eq!(set(&[7, 1]).to_string(), "{1,7}");
        assert!(ParamSet::parse("0,2").is_err());
        assert!(ParamSet::parse("15").is_err());
        assert_eq!(serde_json::to_string(&set(&[2, 1])).unwrap(), "[1,2]");
    }
}
