//! Brute-force reference implementations, written independently of the
//! library's code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use spamfilter::corpus::Label;

/// MI in bits by enumerating the joint distribution of (presence, class).
pub fn brute_force_mi(docs: &[(Vec<String>, Label)], token: &str) -> f64 {
    let n = docs.len() as f64;
    let has = |t: &Vec<String>| t.iter().any(|w| w == token);
    let mut total = 0.0;
    for x in [false, true] {
        for c in [Label::Spam, Label::Legitimate] {
            let joint = docs.iter().filter(|(t, l)| has(t) == x && *l == c).count() as f64 / n;
            let px = docs.iter().filter(|(t, _)| has(t) == x).count() as f64 / n;
            let pc = docs.iter().filter(|(_, l)| *l == c).count() as f64 / n;
            if joint > 0.0 {
                total += joint * (joint / (px * pc)).ln() / std::f64::consts::LN_2;
            }
        }
    }
    total
}

/// Naive Bayes posterior from raw probability products, with add-one
/// conditionals counted directly from the training vectors.
pub fn brute_force_posterior(train: &[(Vec<bool>, Label)], x: &[bool]) -> f64 {
    let count = |c: Label| train.iter().filter(|(_, l)| *l == c).count() as f64;
    let (ns, nl) = (count(Label::Spam), count(Label::Legitimate));
    let n = ns + nl;
    let cond = |i: usize, c: Label, n_c: f64| {
        let ones = train.iter().filter(|(v, l)| *l == c && v[i]).count() as f64;
        (ones + 1.0) / (n_c + 2.0)
    };
    let mut spam = ns / n;
    let mut legit = nl / n;
    for (i, &xi) in x.iter().enumerate() {
        let ps = cond(i, Label::Spam, ns);
        let pl = cond(i, Label::Legitimate, nl);
        spam *= if xi { ps } else { 1.0 - ps };
        legit *= if xi { pl } else { 1.0 - pl };
    }
    spam / (spam + legit)
}

/// Indices of every instance at one of the k smallest distinct distances,
/// found by computing all distances and sorting.
pub fn brute_force_neighborhood(base: &[(Vec<bool>, Label)], query: &[bool], k: usize) -> BTreeSet<usize> {
    let mut distances: Vec<(usize, usize)> = base
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v.iter().zip(query).filter(|(a, b)| a != b).count(), i))
        .collect();
    distances.sort();
    let mut distinct: Vec<usize> = distances.iter().map(|(d, _)| *d).collect();
    distinct.dedup();
    distinct.truncate(k);
    distances
        .into_iter()
        .filter(|(d, _)| distinct.contains(d))
        .map(|(_, i)| i)
        .collect()
}
