//! Mutual-information attribute selection and binary vectorization.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::corpus::{Corpus, Document, Label};
use crate::error::{Error, Result};

/// Document-level presence counts of one token.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TokenCounts {
    pub spam: usize,
    pub legit: usize,
}

/// Per-token joint counts `n(X=1, C=c)` plus class totals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStats {
    counts: HashMap<String, TokenCounts>,
    n_spam: usize,
    n_legit: usize,
}

impl TokenStats {
    pub fn from_documents<'a, I>(documents: I) -> Self
    where
        I: IntoIterator<Item = &'a Document>,
    {
        let mut stats = TokenStats::default();
        for doc in documents {
            stats.add(doc);
        }
        stats
    }

    pub fn add(&mut self, doc: &Document) {
        match doc.label {
            Label::Spam => self.n_spam += 1,
            Label::Legitimate => self.n_legit += 1,
        }
        let distinct: HashSet<&str> = doc.tokens.iter().map(String::as_str).collect();
        for token in distinct {
            let entry = match self.counts.get_mut(token) {
                Some(entry) => entry,
                None => self.counts.entry(token.to_string()).or_default(),
            };
            match doc.label {
                Label::Spam => entry.spam += 1,
                Label::Legitimate => entry.legit += 1,
            }
        }
    }

    pub fn get(&self, token: &str) -> Option<TokenCounts> {
        self.counts.get(token).copied()
    }

    pub fn n_spam(&self) -> usize {
        self.n_spam
    }

    pub fn n_legit(&self) -> usize {
        self.n_legit
    }

    pub fn vocabulary_size(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, TokenCounts)> {
        self.counts.iter().map(|(t, c)| (t.as_str(), *c))
    }

    /// MI score of every token, in arbitrary order.
    pub fn scores(&self) -> Vec<(&str, f64)> {
        self.iter()
            .map(|(t, c)| (t, mutual_information(c, self.n_spam, self.n_legit)))
            .collect()
    }
}

pub fn token_class_counts(corpus: &Corpus) -> TokenStats {
    TokenStats::from_documents(corpus.documents())
}

/// Mutual information (in bits) between a binary attribute and the class,
/// with probabilities estimated as frequency ratios and `0 log 0 = 0`.
pub fn mutual_information(counts: TokenCounts, n_spam: usize, n_legit: usize) -> f64 {
    let n = (n_spam + n_legit) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let present = (counts.spam + counts.legit) as f64;
    let cells = [
        // (n(x, c), n(x), n(c))
        (counts.spam as f64, present, n_spam as f64),
        (counts.legit as f64, present, n_legit as f64),
        ((n_spam - counts.spam) as f64, n - present, n_spam as f64),
        ((n_legit - counts.legit) as f64, n - present, n_legit as f64),
    ];
    let mut terms = cells.map(|(joint, x, c)| {
        if joint > 0.0 {
            (joint / n) * ((joint * n) / (x * c)).log2()
        } else {
            0.0
        }
    });
    // Fixed summation order keeps scores bit-identical under class relabeling.
    terms.sort_unstable_by(f64::total_cmp);
    let mi: f64 = terms.iter().sum();
    // Rounding can leave tiny negative values for independent attributes.
    mi.max(0.0)
}

/// Ranked attributes: tokens with non-increasing MI, ties in token order.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSet {
    tokens: Vec<String>,
    scores: Vec<f64>,
    index: HashMap<String, usize>,
}

impl AttributeSet {
    pub fn new(tokens: Vec<String>, scores: Vec<f64>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::ZeroAttributes);
        }
        if tokens.len() != scores.len() {
            return Err(Error::LengthMismatch {
                expected: tokens.len(),
                found: scores.len(),
            });
        }
        let index: HashMap<String, usize> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        if index.len() != tokens.len() {
            return Err(Error::Parse("duplicate attribute token".into()));
        }
        Ok(AttributeSet {
            tokens,
            scores,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn position(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    /// The top `m` attributes of this ranking.
    pub fn prefix(&self, m: usize) -> Result<AttributeSet> {
        if m == 0 {
            return Err(Error::ZeroAttributes);
        }
        if m > self.len() {
            return Err(Error::InsufficientTokens {
                requested: m,
                available: self.len(),
            });
        }
        AttributeSet::new(self.tokens[..m].to_vec(), self.scores[..m].to_vec())
    }

    /// One `token<TAB>score` line per attribute, scores to 6 decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, s) in self.tokens.iter().zip(&self.scores) {
            let _ = writeln!(out, "{t}\t{s:.6}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut scores = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (token, score) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("line {}: expected token<TAB>score", n + 1)))?;
            let score: f64 = score
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad score `{score}`", n + 1)))?;
            tokens.push(token.to_string());
            scores.push(score);
        }
        AttributeSet::new(tokens, scores)
    }
}

/// Selects the `m` tokens with the highest MI.
pub fn select_attributes(stats: &TokenStats, m: usize) -> Result<AttributeSet> {
    if m == 0 {
        return Err(Error::ZeroAttributes);
    }
    let available = stats.vocabulary_size();
    if available < m {
        return Err(Error::InsufficientTokens {
            requested: m,
            available,
        });
    }
    let mut scored = stats.scores();
    scored.sort_unstable_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    scored.truncate(m);
    let (tokens, scores) = scored
        .into_iter()
        .map(|(t, s)| (t.to_string(), s))
        .unzip();
    AttributeSet::new(tokens, scores)
}

/// Fixed-length bit vector, packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        BinaryVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BinaryVector::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The first `m` bits.
    pub fn prefix(&self, m: usize) -> BinaryVector {
        assert!(m <= self.len, "prefix {m} longer than vector {}", self.len);
        let mut words = self.words[..m.div_ceil(64)].to_vec();
        if m % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (m % 64)) - 1;
            }
        }
        BinaryVector { len: m, words }
    }

    /// Number of positions where the two vectors differ.
    pub fn hamming(&self, other: &BinaryVector) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }
}

pub fn vectorize(doc: &Document, attributes: &AttributeSet) -> BinaryVector {
    let mut v = BinaryVector::zeros(attributes.len());
    for token in &doc.tokens {
        if let Some(i) = attributes.position(token) {
            v.set(i);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(label: Label, tokens: &[&str]) -> Document {
        Document {
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            label,
            source_id: String::new(),
        }
    }

    #[test]
    fn presence_counts() {
        let docs = [
            doc(Label::Spam, &["free", "cash", "free"]),
            doc(Label::Spam, &["free"]),
            doc(Label::Legitimate, &["linguistics"]),
            doc(Label::Legitimate, &["free", "syntax"]),
        ];
        let stats = TokenStats::from_documents(&docs);
        assert_eq!(stats.get("free"), Some(TokenCounts { spam: 2, legit: 1 }));
        assert_eq!(stats.get("cash"), Some(TokenCounts { spam: 1, legit: 0 }));
        assert_eq!((stats.n_spam(), stats.n_legit()), (2, 2));
    }

    #[test]
    fn four_doc_cash_example() {
        let docs = [
            doc(Label::Spam, &["cash"]),
            doc(Label::Spam, &["cash", "now"]),
            doc(Label::Legitimate, &["paper"]),
            doc(Label::Legitimate, &["talk"]),
        ];
        let stats = TokenStats::from_documents(&docs);
        let c = stats.get("cash").unwrap();
        assert_eq!((c.spam, c.legit), (2, 0));
        assert!((mutual_information(c, 2, 2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mi_zero_cases() {
        assert_eq!(mutual_information(TokenCounts { spam: 5, legit: 20 }, 10, 40), 0.0);
        assert_eq!(mutual_information(TokenCounts { spam: 10, legit: 40 }, 10, 40), 0.0);
        assert_eq!(mutual_information(TokenCounts { spam: 0, legit: 0 }, 10, 40), 0.0);
    }

    #[test]
    fn select_orders_and_breaks_ties() {
        let mut stats = TokenStats::default();
        // a: perfectly spam, b: perfectly legit (same MI), c: weak.
        for label in [Label::Spam, Label::Spam] {
            stats.add(&doc(label, &["a", "c"]));
        }
        stats.add(&doc(Label::Legitimate, &["b", "c"]));
        stats.add(&doc(Label::Legitimate, &["b"]));
        let top = select_attributes(&stats, 3).unwrap();
        assert_eq!(top.tokens(), ["a", "b", "c"]);
        assert_eq!(top.scores()[0], top.scores()[1]);
        assert!(top.scores()[1] > top.scores()[2]);
        assert_eq!(select_attributes(&stats, 1).unwrap().tokens(), ["a"]);
    }

    #[test]
    fn select_too_many_reports_available() {
        let stats = TokenStats::from_documents(&[doc(Label::Spam, &["x", "y"])]);
        match select_attributes(&stats, 3) {
            Err(Error::InsufficientTokens {
                requested,
                available,
            }) => assert_eq!((requested, available), (3, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(select_attributes(&stats, 0), Err(Error::ZeroAttributes)));
    }

    #[test]
    fn vectorize_examples() {
        let attrs = AttributeSet::new(vec!["free".into(), "earn".into()], vec![0.5, 0.4]).unwrap();
        let v = vectorize(&doc(Label::Spam, &["free", "cash"]), &attrs);
        assert_eq!(v.iter().collect::<Vec<_>>(), [true, false]);
        assert_eq!(vectorize(&doc(Label::Spam, &[]), &attrs).count_ones(), 0);
        assert_eq!(vectorize(&doc(Label::Spam, &["earn", "free"]), &attrs).count_ones(), 2);
    }

    #[test]
    fn attribute_text_format() {
        let attrs = AttributeSet::new(vec!["free".into(), "earn".into()], vec![0.5, 0.123_456_789]).unwrap();
        assert_eq!(attrs.to_text(), "free\t0.500000\nearn\t0.123457\n");
        let back = AttributeSet::from_text(&attrs.to_text()).unwrap();
        assert_eq!(back.tokens(), attrs.tokens());
        assert!(AttributeSet::from_text("free 0.5\n").is_err());
    }

    #[test]
    fn bit_vector_prefix_and_hamming() {
        let bits: Vec<bool> = (0..130).map(|i| i % 3 == 0).collect();
        let v = BinaryVector::from_bits(bits.clone());
        let p = v.prefix(65);
        assert_eq!(p.iter().collect::<Vec<_>>(), bits[..65]);
        assert_eq!(p, BinaryVector::from_bits(bits[..65].iter().copied()));
        let a = BinaryVector::from_bits([true, false, true, false]);
        let b = BinaryVector::from_bits([true, true, true, true]);
        assert_eq!(a.hamming(&b).unwrap(), 2);
        assert!(a.hamming(&p).is_err());
    }
}
