//! Independent brute-force implementations checked against the library.

mod common;

use std::collections::BTreeSet;

use common::{brute_force_mi, brute_force_neighborhood, brute_force_posterior};

use proptest::prelude::*;
use spamfilter::bayes::{train_naive_bayes, Smoothing};
use spamfilter::corpus::{Document, Label};
use spamfilter::features::{mutual_information, BinaryVector, TokenStats};
use spamfilter::memory_based::{build_instance_base, k_distance_neighborhood};

fn label() -> impl Strategy<Value = Label> {
    prop_oneof![Just(Label::Spam), Just(Label::Legitimate)]
}

/// Documents over a vocabulary of at most 20 tokens.
fn small_corpus() -> impl Strategy<Value = Vec<(Vec<String>, Label)>> {
    let token = (0u8..20).prop_map(|i| format!("w{i}"));
    prop::collection::vec((prop::collection::vec(token, 0..12), label()), 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mi_matches_direct_summation(docs in small_corpus()) {
        let documents: Vec<Document> = docs
            .iter()
            .map(|(tokens, label)| Document { tokens: tokens.clone(), label: *label, source_id: String::new() })
            .collect();
        let stats = TokenStats::from_documents(&documents);
        let vocab: BTreeSet<&String> = docs.iter().flat_map(|(t, _)| t).collect();
        prop_assert!(vocab.len() <= 20);
        for token in vocab {
            let counts = stats.get(token).unwrap();
            let fast = mutual_information(counts, stats.n_spam(), stats.n_legit());
            let slow = brute_force_mi(&docs, token);
            prop_assert!((fast - slow).abs() <= 1e-12, "{token}: {fast} vs {slow}");
        }
    }
}

fn nb_case() -> impl Strategy<Value = (Vec<(Vec<bool>, Label)>, Vec<Vec<bool>>)> {
    (1usize..=10).prop_flat_map(|m| {
        let vector = prop::collection::vec(any::<bool>(), m);
        let train = prop::collection::vec((vector.clone(), label()), 2..60).prop_filter(
            "both classes",
            |t| t.iter().any(|(_, l)| *l == Label::Spam) && t.iter().any(|(_, l)| *l == Label::Legitimate),
        );
        (train, prop::collection::vec(vector, 1..10))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn posterior_matches_raw_products((train, queries) in nb_case()) {
        let vectors: Vec<BinaryVector> = train.iter().map(|(v, _)| BinaryVector::from_bits(v.iter().copied())).collect();
        let model = train_naive_bayes(vectors.iter().zip(train.iter().map(|(_, l)| *l)), Smoothing::Laplace).unwrap();
        for q in &queries {
            let fast = model.posterior_spam(&BinaryVector::from_bits(q.iter().copied())).unwrap();
            let slow = brute_force_posterior(&train, q);
            prop_assert!((fast - slow).abs() <= 1e-9, "{fast} vs {slow}");
        }
    }
}

fn mb_case() -> impl Strategy<Value = (Vec<(Vec<bool>, Label)>, Vec<bool>, usize)> {
    (1usize..=80).prop_flat_map(|m| {
        let vector = prop::collection::vec(any::<bool>(), m);
        (
            prop::collection::vec((vector.clone(), label()), 1..=50),
            vector,
            1usize..8,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn neighborhood_matches_sort_based((base, query, k) in mb_case()) {
        let ib = build_instance_base(
            base.iter().map(|(v, l)| (BinaryVector::from_bits(v.iter().copied()), *l)),
        )
        .unwrap();
        let q = BinaryVector::from_bits(query.iter().copied());
        let got: BTreeSet<usize> = k_distance_neighborhood(&ib, &q, k)
            .unwrap()
            .members
            .iter()
            .map(|n| n.index)
            .collect();
        prop_assert_eq!(got, brute_force_neighborhood(&base, &query, k));
    }
}
