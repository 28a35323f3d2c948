use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permpat_core::families::ParamSet;
use permpat_core::search::{Detector, Forbidden, PermModel, SearchConfig};
use permpat_core::verify::{verify_prefix_avoids, CertificateStatus, MorphicWordSpec};
use permpat_core::words::Letter;

fn all_but_first() -> Forbidden {
    Forbidden::from_params(&ParamSet::of(&(2..=14).collect::<Vec<_>>()))
}

/// Is there a permutation of `Σ_m` with `v_l = f^{e_l}(u)` for some
/// exponents? Independent of the library: letter maps are checked against
/// every permutation's cyclic group.
fn exponent_existence(blocks: [&[Letter]; 4], m: usize) -> bool {
    fn next_perm(p: &mut [Letter]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    let mut f: Vec<Letter> = (0..m as Letter).collect();
    loop {
        let mut power: Vec<Letter> = f.clone();
        let mut group = Vec::new();
        loop {
            group.push(power.clone());
            if power.iter().enumerate().all(|(a, &b)| a == usize::from(b)) {
                break;
            }
            power = power.iter().map(|&a| f[usize::from(a)]).collect();
        }
        let hit = (1..4).all(|l| {
            group.iter().any(|g| blocks[0].iter().zip(blocks[l]).all(|(&a, &b)| g[usize::from(a)] == b))
        });
        if hit {
            return true;
        }
        if !next_perm(&mut f) {
            return false;
        }
    }
}

#[test]
fn h_alpha_factor_sample_matches_independent_test() {
    let spec = MorphicWordSpec::h_alpha();
    let w = spec.prefix(3000).unwrap().into_letters();
    // the structure check is the library's, so forbid every structure and
    // compare only the exponent-existence part
    let every = Forbidden::from_patterns(permpat_core::params::EqualityPattern::all());
    let config = SearchConfig::new(5, every, PermModel::AllPermutations);
    let detector = Detector::new(&config).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..400 {
        let b = rng.gen_range(1..=12);
        let start = rng.gen_range(0..w.len() - 4 * b);
        let factor = &w[start..start + 4 * b];
        let blocks = [&factor[..b], &factor[b..2 * b], &factor[2 * b..3 * b], &factor[3 * b..]];
        let ours = detector.instance_at(&w, start, b);
        let expected = exponent_existence(blocks, 5);
        assert_eq!(ours.is_some(), expected, "factor at {start}, b = {b}");
    }
}

#[test]
fn certificates_are_monotone() {
    let spec = MorphicWordSpec::h_alpha();
    let big = verify_prefix_avoids(&spec, all_but_first(), PermModel::AllPermutations, 12, 1200).unwrap();
    assert!(big.is_clean());
    for (u, len) in [(4, 1200), (12, 300), (1, 50)] {
        assert!(verify_prefix_avoids(&spec, all_but_first(), PermModel::AllPermutations, u, len).unwrap().is_clean());
    }
}

#[test]
fn first_parameter_is_present_in_h_alpha() {
    let first = Forbidden::from_params(&ParamSet::of(&[1]));
    let cert = verify_prefix_avoids(&MorphicWordSpec::h_alpha(), first, PermModel::AllPermutations, 4, 64).unwrap();
    let CertificateStatus::Witness { witness } = cert.result else { panic!("expected a witness") };
    assert_eq!(witness.pattern.to_string(), "0123");
    assert!(witness.revalidate(MorphicWordSpec::h_alpha().prefix(64).unwrap().letters()));
}

#[test]
fn thue_words_certificates() {
    let powers = Forbidden::parse_patterns("0000").unwrap();
    let h = verify_prefix_avoids(&MorphicWordSpec::ternary_thue(), powers, PermModel::AllPermutations, 10, 5000).unwrap();
    assert!(h.is_clean());
    // Thue–Morse has squares, so 0011 with the identity is found quickly
    let squares = Forbidden::parse_patterns("0011").unwrap();
    let t = verify_prefix_avoids(&MorphicWordSpec::thue_morse(), squares, PermModel::FullCycle, 4, 100).unwrap();
    assert!(!t.is_clean());
}
