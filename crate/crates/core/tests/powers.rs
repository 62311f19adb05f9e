use num_rational::Ratio;
use proptest::prelude::*;
use wordlen_core::oracles::{naive_max_exponent, naive_min_period, WordSpace};
use wordlen_core::powers::{avoids, max_factor_exponent, minimal_period, verify_tc};
use wordlen_core::word::{fractional_power, FracExponent};
use wordlen_core::Word;

#[test]
fn sweep_exponent_matches_all_factor_brute_force_to_14() {
    let space = WordSpace::new(2, 14, 1 << 20).unwrap();
    for w in space.iter() {
        let fast = max_factor_exponent(&w).unwrap();
        let (e, witness) = naive_max_exponent(&w).unwrap();
        assert_eq!(fast.exponent, e, "{w}");
        assert_eq!(fast.witness, witness, "{w}");
    }
}

#[test]
fn one_plus_avoidance_means_distinct_letters() {
    // exhaustive to length 6 over six letters, plus one ten-letter word
    let space = WordSpace::new(6, 6, 1 << 20).unwrap();
    for w in space.iter() {
        let distinct = w.distinct_letters() == w.len();
        assert_eq!(avoids(&w, Ratio::from_integer(1), true).unwrap(), distinct, "{w}");
    }
    let w = Word::new((0..10).collect());
    assert!(avoids(&w, Ratio::from_integer(1), true).unwrap());
}

#[test]
fn last_profile_entries_are_exact_when_lemmas_apply() {
    let space = WordSpace::new(2, 12, 1 << 20).unwrap();
    for w in space.iter() {
        for k in 1..=w.len() / 2 {
            if let Ok(r) = verify_tc(&w, k) {
                assert_eq!(r.lemma3_ok, Some(true), "{w} k = {k}");
            }
        }
    }
}

proptest! {
    #[test]
    fn period_matches_brute_force(letters in prop::collection::vec(0u32..3, 1..=60)) {
        let w = Word::new(letters);
        prop_assert_eq!(minimal_period(&w).unwrap(), naive_min_period(&w).unwrap());
    }

    #[test]
    fn powers_inherit_the_base_period(
        base in prop::collection::vec(0u32..3, 1..=8),
        reps in 1usize..6,
    ) {
        let base = Word::new(base);
        let p = fractional_power(&base, FracExponent::new(reps * base.len(), base.len()).unwrap())
            .unwrap();
        let period = minimal_period(&p).unwrap();
        prop_assert!(period <= base.len());
        // a single copy of `aba` has period 2; from two copies on, both
        // periods fit and their gcd is one too
        if reps >= 2 {
            prop_assert_eq!(base.len() % period, 0);
        }
    }

    #[test]
    fn avoidance_is_monotone(
        letters in prop::collection::vec(0u32..3, 1..=40),
        num in 2u64..12,
        den in 1u64..4,
        extra in 0u64..6,
    ) {
        let w = Word::new(letters);
        let d = Ratio::new(num.max(den), den);
        let d2 = d + Ratio::new(extra, den);
        for plus in [false, true] {
            if avoids(&w, d, plus).unwrap() {
                prop_assert!(avoids(&w, d2, plus).unwrap());
            }
        }
    }
}
