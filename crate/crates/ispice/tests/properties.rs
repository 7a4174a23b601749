//! Property tests for the core invariants.

use proptest::prelude::*;

use ispice::caption::{make_fitb, Captionset};
use ispice::spice::{f1, match_tuples, MatchResult};
use ispice::token::{detokenize, tokenize, Token};
use ispice::tuples::SceneGraphTuple;
use ispice::TupleSet;

fn arb_token() -> impl Strategy<Value = Token> {
    prop_oneof![
        "[a-z][a-z]{0,7}".prop_map(Token::word),
        (1u32..40).prop_map(Token::identity),
        prop_oneof![Just('.'), Just(','), Just('!'), Just('?')].prop_map(Token::punctuation),
    ]
}

fn arb_caption_text() -> impl Strategy<Value = String> {
    proptest::collection::vec(arb_token(), 0..20).prop_map(|tokens| detokenize(&tokens))
}

fn arb_captionset() -> impl Strategy<Value = Captionset> {
    proptest::collection::vec(arb_caption_text(), 1..6)
        .prop_map(|texts| Captionset::from_texts("prop", &texts).unwrap())
}

proptest! {
    #[test]
    fn tokenize_detokenize_round_trips(tokens in proptest::collection::vec(arb_token(), 0..24)) {
        let text = detokenize(&tokens);
        prop_assert_eq!(tokenize(&text), tokens);
    }

    #[test]
    fn tokenize_is_total_and_deterministic(text in ".{0,60}") {
        prop_assert_eq!(tokenize(&text), tokenize(&text));
    }

    #[test]
    fn normalization_is_idempotent(cs in arb_captionset()) {
        let once = cs.normalize_identities();
        prop_assert_eq!(once.normalize_identities(), once);
    }

    #[test]
    fn normalization_ignores_bijective_relabeling(
        cs in arb_captionset(),
        offset in 1u32..50,
    ) {
        // Shift every id by a constant: a bijection on the labels present.
        let shifted: Vec<Vec<Token>> = cs
            .captions()
            .iter()
            .map(|caption| {
                caption
                    .iter()
                    .map(|t| match t.identity_index() {
                        Some(i) => Token::identity(i + offset),
                        None => t.clone(),
                    })
                    .collect()
            })
            .collect();
        let relabeled = Captionset::new(cs.videoset_id(), shifted).unwrap();
        prop_assert_eq!(
            relabeled.normalize_identities(),
            cs.normalize_identities()
        );
    }

    #[test]
    fn normalized_ids_are_dense_from_one(cs in arb_captionset()) {
        let normalized = cs.normalize_identities();
        let labels: Vec<u32> = normalized.identity_multiset().into_keys().collect();
        let expected: Vec<u32> = (1..=labels.len() as u32).collect();
        prop_assert_eq!(labels, expected);
    }

    #[test]
    fn fitb_round_trip_is_identity(cs in arb_captionset()) {
        prop_assume!(!cs.identity_multiset().is_empty());
        let fitb = make_fitb(&cs).unwrap();
        prop_assert_eq!(fitb.fill_blanks(fitb.gt_labels()).unwrap(), cs);
        // Blank positions strictly increase in reading order.
        for pair in fitb.blanks().windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn f1_stays_in_unit_interval(matched in 0usize..9, extra_r in 0usize..9, extra_c in 0usize..9) {
        let m = MatchResult {
            matched,
            reference_size: matched + extra_r,
            candidate_size: matched + extra_c,
        };
        let score = f1(&m);
        prop_assert!((0.0..=1.0).contains(&score));
        // Perfect overlap scores 1.
        if extra_r == 0 && extra_c == 0 && matched > 0 {
            prop_assert_eq!(score, 1.0);
        }
    }

    #[test]
    fn removing_a_matched_identity_tuple_never_raises_ispice(
        shared in proptest::collection::vec(proptest::collection::vec("p1|p2|walk|hold|door", 2..4), 1..6),
        extra in proptest::collection::vec(proptest::collection::vec("p1|p2|run|see|box", 2..4), 0..4),
    ) {
        use ispice::spice::{spice_score_from_tuples, EvalOptions};

        let cs = Captionset::from_texts("prop", &["P1 holds P2"]).unwrap();
        let reference: TupleSet = shared
            .iter()
            .map(|s| SceneGraphTuple::new(s.clone()).unwrap())
            .collect();
        let candidate: TupleSet = shared
            .iter()
            .chain(extra.iter())
            .map(|s| SceneGraphTuple::new(s.clone()).unwrap())
            .collect();
        let base = spice_score_from_tuples(&cs, &cs, &reference, &candidate, &EvalOptions::default());
        // Drop one matched identity-bearing multi-slot tuple from the candidate.
        let target = candidate
            .iter()
            .find(|t| t.len() >= 2 && t.has_identity() && reference.contains(t))
            .cloned();
        prop_assume!(target.is_some());
        let target = target.unwrap();
        let damaged: TupleSet = candidate
            .iter()
            .filter(|t| **t != target)
            .cloned()
            .collect();
        let hurt = spice_score_from_tuples(&cs, &cs, &reference, &damaged, &EvalOptions::default());
        let (base_val, hurt_val) = (
            base.ispice.unwrap().value,
            hurt.ispice.unwrap().value,
        );
        prop_assert!(hurt_val <= base_val + 1e-12, "{hurt_val} > {base_val}");
    }

    #[test]
    fn matching_is_bounded_by_set_sizes(
        ref_slots in proptest::collection::vec(proptest::collection::vec("[a-e]", 1..4), 0..8),
        cand_slots in proptest::collection::vec(proptest::collection::vec("[a-e]", 1..4), 0..8),
    ) {
        let reference: TupleSet = ref_slots
            .iter()
            .map(|s| SceneGraphTuple::new(s.clone()).unwrap())
            .collect();
        let candidate: TupleSet = cand_slots
            .iter()
            .map(|s| SceneGraphTuple::new(s.clone()).unwrap())
            .collect();
        let result = match_tuples(&reference, &candidate);
        prop_assert!(result.matched <= result.reference_size.min(result.candidate_size));
        let sym = match_tuples(&candidate, &reference);
        prop_assert_eq!(result.matched, sym.matched);
    }
}
