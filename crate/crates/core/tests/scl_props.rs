use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use scl_core::scl::{
    cl_upper_with_index, scl_report_with_index, scl_upper_from_power, CommutatorIndex, SclBudget, SclStatus,
};
use scl_core::{Certificate, ExtRational, FreeGroup, Letter, Rational, ReducedWord};

fn index4() -> &'static CommutatorIndex {
    static INDEX: OnceLock<CommutatorIndex> = OnceLock::new();
    INDEX.get_or_init(|| CommutatorIndex::build(2, 4).unwrap())
}

fn w(s: &str) -> ReducedWord {
    ReducedWord::parse(s, 2).unwrap()
}

fn word(max_len: usize) -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec((1..=2usize, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max_len)
        .prop_map(|l| ReducedWord::from_letters(2, l).unwrap())
}

/// Products of commutators of short words, reduced, length at most 8.
fn commutator_word() -> impl Strategy<Value = ReducedWord> {
    (word(3), word(3), word(2), word(2))
        .prop_map(|(x, y, u, v)| x.commutator(&y).unwrap().concat(&u.commutator(&v).unwrap()).unwrap())
        .prop_filter("length at most 8", |a| a.len() <= 8)
}

#[test]
fn genus_two_witness_for_cube_of_commutator() {
    let a = w("[a,b]^3");
    let index = CommutatorIndex::build(2, 6).unwrap();
    assert_eq!(cl_upper_with_index(&index, &a, 1).unwrap(), None);
    let found = cl_upper_with_index(&index, &a, 2).unwrap().unwrap();
    assert_eq!(found.genus, 2);
    assert!(found.certificate.verify(&FreeGroup { rank: 2 }));
    assert_eq!(scl_upper_from_power(&w("[a,b]"), 3, &found.certificate), Ok(Rational::new(1, 2)));
}

#[test]
fn sandwich_on_fifty_random_commutator_words() {
    let budget = SclBudget { n_max: 2, max_len: 4, max_genus: 2 };
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = commutator_word();
    let mut checked = 0;
    while checked < 50 {
        let a = strategy.new_tree(&mut runner).unwrap().current();
        let r = scl_report_with_index(&a, &budget, index4()).unwrap();
        assert!(r.lower <= r.upper, "{a}: {} > {}", r.lower, r.upper);
        if !a.is_empty() {
            // scl >= 1/2 in free groups; the report would have errored otherwise
            if let ExtRational::Finite(u) = r.upper {
                assert!(u >= Rational::new(1, 2));
            }
        }
        let mins: Vec<_> = r.attempts.iter().map(|t| t.running_min).collect();
        assert!(mins.windows(2).all(|p| p[1] <= p[0]));
        checked += 1;
    }
}

#[test]
fn status_follows_abelianization() {
    let budget = SclBudget { n_max: 1, max_len: 4, max_genus: 2 };
    for (s, status) in [("a", SclStatus::NotInCommutatorSubgroup), ("abAB", SclStatus::Bounded), ("aabAAB", SclStatus::Bounded)] {
        assert_eq!(scl_report_with_index(&w(s), &budget, index4()).unwrap().status, status, "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutated_certificates_fail(x in word(4), y in word(4), pos in any::<usize>(), code in 0u16..4) {
        let g = FreeGroup { rank: 2 };
        let target = x.commutator(&y).unwrap();
        let cert = Certificate::new(&g, vec![(x.clone(), y.clone())], target.clone()).unwrap();
        prop_assert!(cert.verify(&g));
        // change one letter of the target
        prop_assume!(!target.is_empty());
        let mut letters = target.letters().to_vec();
        let i = pos % letters.len();
        prop_assume!(letters[i] != Letter::from_code(code));
        letters[i] = Letter::from_code(code);
        let bad = ReducedWord::from_letters(2, letters).unwrap();
        prop_assume!(bad != target);
        prop_assert!(Certificate::new(&g, vec![(x, y)], bad).is_err());
    }

    #[test]
    fn found_certificates_verify(a in commutator_word()) {
        if let Some(found) = cl_upper_with_index(index4(), &a, 2).unwrap() {
            let g = FreeGroup { rank: 2 };
            prop_assert!(found.certificate.verify(&g));
            prop_assert_eq!(found.certificate.target(), &a);
        }
    }

    #[test]
    fn cl_is_subadditive_when_found(x1 in word(2), y1 in word(2), x2 in word(2), y2 in word(2)) {
        let a = x1.commutator(&y1).unwrap();
        let b = x2.commutator(&y2).unwrap();
        let ab = a.concat(&b).unwrap();
        let idx = index4();
        if let (Some(ca), Some(cb), Some(cab)) = (
            cl_upper_with_index(idx, &a, 2).unwrap(),
            cl_upper_with_index(idx, &b, 2).unwrap(),
            cl_upper_with_index(idx, &ab, 2).unwrap(),
        ) {
            prop_assert!(cab.genus <= ca.genus + cb.genus);
        }
    }
}
