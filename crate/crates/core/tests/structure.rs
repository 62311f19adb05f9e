use proptest::prelude::*;
use wordlen_core::oracles::{brute_min_qpt, WordSpace};
use wordlen_core::structure::{decompose_check, minimal_qpt, profile_shape};
use wordlen_core::Word;

#[test]
fn fast_qpt_matches_brute_force_on_all_binary_words_to_16() {
    let space = WordSpace::new(2, 16, 1 << 20).unwrap();
    for w in space.iter() {
        let fast = minimal_qpt(&w).unwrap();
        assert_eq!(fast, brute_min_qpt(&w).unwrap(), "{w}");
        assert!(decompose_check(&w, &fast).unwrap(), "{w}");
    }
}

#[test]
fn cost_one_iff_unary() {
    let space = WordSpace::new(3, 8, 1 << 20).unwrap();
    for w in space.iter() {
        let cost = minimal_qpt(&w).unwrap().cost();
        assert!(cost <= w.len());
        assert_eq!(cost == 1, w.distinct_letters() == 1, "{w}");
    }
}

#[test]
fn shape_holds_exhaustively_on_small_ternary_words() {
    let space = WordSpace::new(3, 10, 1 << 20).unwrap();
    for w in space.iter() {
        assert!(profile_shape(&w).is_ok(), "{w}");
    }
}

proptest! {
    #[test]
    fn fast_qpt_matches_brute_force_to_30(letters in prop::collection::vec(0u32..3, 1..=30)) {
        let w = Word::new(letters);
        prop_assert_eq!(minimal_qpt(&w).unwrap(), brute_min_qpt(&w).unwrap());
    }

    #[test]
    fn minimal_decomposition_is_sound(letters in prop::collection::vec(0u32..4, 1..=300)) {
        let w = Word::new(letters);
        let dec = minimal_qpt(&w).unwrap();
        prop_assert!(decompose_check(&w, &dec).unwrap());
    }
}
