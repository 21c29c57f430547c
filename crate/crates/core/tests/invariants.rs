use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semiact::act::RightAct;
use semiact::catalog;
use semiact::congruence::{closure, is_large, summarize};
use semiact::enumerate::{build_atlas, canonical_form, enumerate_rees, EnumerationBounds};
use semiact::io::{self, ActJson, Document};
use semiact::random::random_act;
use semiact::{rees_matrix, FiniteSemigroup, ReesElement};

fn exhaustively_associative(s: &FiniteSemigroup) -> bool {
    let n = s.order();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| s.mul(s.mul(x, y), z) == s.mul(x, s.mul(y, z)))))
}

/// Single-row, zero-adjoined specs over groups of order at most four.
fn single_row_specs() -> Vec<semiact::ReesMatrixSpec> {
    let bounds = EnumerationBounds {
        groups: ["Z1", "Z2", "Z3", "Z4", "V4"].map(String::from).to_vec(),
        band_i: 1,
        band_lambda: 3,
        max_sandwich_samples: usize::MAX,
        ..Default::default()
    };
    enumerate_rees(&bounds, true).unwrap()
}

#[test]
fn left_cancellation_in_single_row() {
    for spec in single_row_specs() {
        let s = rees_matrix(&spec).unwrap();
        let n = s.order();
        for m in 1..n {
            for a in 1..n {
                assert_ne!(s.mul(m, a), 0, "nonzero product vanished");
                for b in 1..n {
                    assert_eq!(s.mul(m, a) == s.mul(m, b), a == b, "m={m} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn constructed_semigroups_are_associative() {
    for (name, s) in catalog::semigroups() {
        assert!(exhaustively_associative(&s), "{name}");
    }
    let bounds = EnumerationBounds {
        groups: ["Z2", "Z3", "S3"].map(String::from).to_vec(),
        band_i: 2,
        band_lambda: 2,
        max_sandwich_samples: 8,
        ..Default::default()
    };
    for with_zero in [false, true] {
        for spec in enumerate_rees(&bounds, with_zero).unwrap() {
            let s = rees_matrix(&spec).unwrap();
            if s.order() <= 30 {
                assert!(exhaustively_associative(&s));
            }
            for x in 0..s.order() {
                let back = spec.encode(spec.decode(x));
                assert_eq!(back, x);
                if let ReesElement::Triple { .. } = spec.decode(x) {
                    assert_eq!(s.label(x), spec.label(spec.decode(x)));
                }
            }
        }
    }
}

#[test]
fn cocyclic_groups_have_meeting_subgroups() {
    for name in catalog::GROUP_NAMES {
        let g = catalog::group(name).unwrap();
        let cocyclic = g.is_cocyclic().unwrap();
        let meet = g.nontrivial_subgroups_pairwise_intersect().unwrap();
        assert!(!cocyclic || meet, "{name}");
        if g.order() > 1 {
            assert_eq!(cocyclic, meet, "{name}");
        }
    }
}

#[test]
fn atlas_is_deterministic() {
    let bounds = EnumerationBounds::default();
    let a = build_atlas(2, 2, 3, &bounds).unwrap().to_json_lines();
    let b = build_atlas(2, 2, 3, &bounds).unwrap().to_json_lines();
    assert_eq!(a, b);
}

#[test]
fn uniformity_matches_full_subact_scan() {
    let pool: Vec<Arc<FiniteSemigroup>> = catalog::semigroups()
        .into_iter()
        .filter(|(_, s)| s.order() <= 6)
        .map(|(_, s)| Arc::new(s))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..300 {
        let act = random_act(pool[k % pool.len()].clone(), 7, &mut rng);
        let analysis = act.analyze().unwrap();
        let expected = analysis
            .subacts
            .iter()
            .filter(|b| b.len() >= 2)
            .all(|b| is_large(&act, b).unwrap().0);
        assert_eq!(summarize(&act).unwrap().uniform, expected, "{:?}", act.action_rows());
        assert_eq!(analysis.kernel, act.kernel());
    }
}

fn arb_act() -> impl Strategy<Value = RightAct> {
    let pool: Vec<Arc<FiniteSemigroup>> = catalog::semigroups()
        .into_iter()
        .filter(|(_, s)| s.order() <= 6)
        .map(|(_, s)| Arc::new(s))
        .collect();
    (0..pool.len(), any::<u64>(), 1usize..=6)
        .prop_map(move |(k, seed, max)| random_act(pool[k].clone(), max, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn permuted(act: &RightAct, perm: &[usize]) -> RightAct {
    let n = act.size();
    let mut inv = vec![0; n];
    for (a, &p) in perm.iter().enumerate() {
        inv[p] = a;
    }
    let rows = (0..n)
        .map(|new| (0..act.semigroup().order()).map(|s| perm[act.act(inv[new], s)]).collect())
        .collect();
    RightAct::new(act.semigroup_arc().clone(), act.states().to_vec(), rows).unwrap()
}

proptest! {
    #[test]
    fn closure_is_monotone_and_compatible(act in arb_act(), raw in prop::collection::vec((0usize..64, 0usize..64), 0..4)) {
        let n = act.size();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(a, b)| (a % n, b % n)).collect();
        let (p1, _) = pairs.split_at(pairs.len() / 2);
        let small = closure(&act, p1);
        let big = closure(&act, &pairs);
        prop_assert!(small.is_contained_in(&big));
        prop_assert!(big.is_right_compatible(&act));
        for &(a, b) in &pairs {
            prop_assert!(big.related(a, b));
        }
    }

    #[test]
    fn verdicts_form_a_chain(act in arb_act()) {
        let s = summarize(&act).unwrap();
        prop_assert!(!s.si || s.irreducible);
        prop_assert!(!s.irreducible || s.uniform);
    }

    #[test]
    fn canonical_form_ignores_relabeling(act in arb_act(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..act.size()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let other = permuted(&act, &perm);
        prop_assert_eq!(canonical_form(&act), canonical_form(&other));
        prop_assert_eq!(summarize(&act).unwrap().si, summarize(&other).unwrap().si);
    }

    #[test]
    fn acts_round_trip(act in arb_act()) {
        let text = io::to_pretty(&ActJson::from_act(&act));
        match io::parse(&text, std::path::Path::new("."), None).unwrap() {
            Document::Act { act: back, .. } => prop_assert_eq!(back, act),
            _ => prop_assert!(false, "not an act"),
        }
    }
}
