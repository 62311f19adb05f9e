use proptest::prelude::*;
use wordlen_core::oracles::{naive_profile, WordSpace};
use wordlen_core::word::{
    complexity_profile, count_distinct_factors, fractional_power, FracExponent,
};
use wordlen_core::Word;

#[test]
fn automaton_matches_hash_sets_on_all_binary_words_to_14() {
    let space = WordSpace::new(2, 14, 1 << 20).unwrap();
    for w in space.iter() {
        let fast = complexity_profile(&w);
        assert_eq!(fast, naive_profile(&w), "{w}");
        assert_eq!(fast.total, count_distinct_factors(&w), "{w}");
    }
}

#[test]
fn profile_drops_by_at_most_one() {
    let space = WordSpace::new(3, 9, 1 << 20).unwrap();
    for w in space.iter() {
        let f = complexity_profile(&w).counts;
        for n in 0..w.len() {
            assert!(f[n + 1] + 1 >= f[n], "{w} at n = {n}");
        }
    }
}

fn word_strategy(max_len: usize, k: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 1..=max_len).prop_map(Word::new)
}

proptest! {
    #[test]
    fn ends_of_profile(w in word_strategy(60, 4)) {
        let p = complexity_profile(&w);
        prop_assert_eq!(p.counts[0], 1);
        prop_assert_eq!(p.counts[1], w.distinct_letters());
        prop_assert_eq!(p.counts[w.len()], 1);
    }

    #[test]
    fn automaton_matches_hash_sets(w in word_strategy(200, 3)) {
        prop_assert_eq!(complexity_profile(&w), naive_profile(&w));
    }

    #[test]
    fn fractional_power_is_a_truncated_repetition(
        base in word_strategy(6, 3),
        num in 1usize..40,
    ) {
        let exp = FracExponent::new(num, base.len()).unwrap();
        let p = fractional_power(&base, exp).unwrap();
        let mut repeated = Vec::new();
        while repeated.len() < num {
            repeated.extend_from_slice(&base);
        }
        repeated.truncate(num);
        prop_assert_eq!(p.letters(), &repeated[..]);
    }
}
