//! Seeded synthetic corpora with class-skewed vocabularies.

use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Corpus, Document, Label, SPAM_PREFIX};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixtureParams {
    pub vocab_size: usize,
    /// Fraction of the vocabulary both classes draw from.
    pub overlap: f64,
    /// Mean fraction of a document's tokens drawn from its class-specific words.
    /// The per-document fraction is uniform on `[0, 2 * signal]`.
    pub signal: f64,
    /// Fraction of tokens drawn uniformly from the whole vocabulary.
    pub noise: f64,
    pub min_len: usize,
    pub max_len: usize,
    pub subject_len: usize,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            vocab_size: 2000,
            overlap: 0.7,
            signal: 0.06,
            noise: 0.05,
            min_len: 20,
            max_len: 120,
            subject_len: 5,
        }
    }
}

const ONSETS: &[u8] = b"bdfgkmnprtvz";
const VOWELS: &[u8] = b"aiou";

/// Deterministic word for a vocabulary index.
///
/// Words are lowercase consonant-vowel syllables ending in a vowel, so they are
/// fixed points of every normalizer configuration.
fn word(index: usize) -> String {
    let base = ONSETS.len() * VOWELS.len();
    let mut syllables = Vec::new();
    let mut n = index;
    loop {
        syllables.push(n % base);
        n /= base;
        if n == 0 {
            break;
        }
    }
    while syllables.len() < 2 {
        syllables.push(0);
    }
    let mut out = String::with_capacity(2 * syllables.len());
    for s in syllables.iter().rev() {
        out.push(ONSETS[s / VOWELS.len()] as char);
        out.push(VOWELS[s % VOWELS.len()] as char);
    }
    out
}

fn zipf(len: usize) -> Option<WeightedIndex<f64>> {
    WeightedIndex::new((0..len).map(|r| 1.0 / (r as f64 + 1.0))).ok()
}

struct Vocabulary {
    shared: Vec<usize>,
    spam_only: Vec<usize>,
    legit_only: Vec<usize>,
    shared_dist: Option<WeightedIndex<f64>>,
    spam_dist: Option<WeightedIndex<f64>>,
    legit_dist: Option<WeightedIndex<f64>>,
}

impl Vocabulary {
    fn new(params: &FixtureParams) -> Self {
        let v = params.vocab_size.max(2);
        let n_shared = ((v as f64) * params.overlap.clamp(0.0, 1.0)).round() as usize;
        let n_specific = v - n_shared;
        let n_spam = n_specific / 2;
        let shared: Vec<usize> = (0..n_shared).collect();
        let spam_only: Vec<usize> = (n_shared..n_shared + n_spam).collect();
        let legit_only: Vec<usize> = (n_shared + n_spam..v).collect();
        Vocabulary {
            shared_dist: zipf(shared.len()),
            spam_dist: zipf(spam_only.len()),
            legit_dist: zipf(legit_only.len()),
            shared,
            spam_only,
            legit_only,
        }
    }

    fn len(&self) -> usize {
        self.shared.len() + self.spam_only.len() + self.legit_only.len()
    }

    fn draw(&self, rng: &mut ChaCha8Rng, label: Label, doc_signal: f64, noise: f64) -> usize {
        let (words, dist) = match label {
            Label::Spam => (&self.spam_only, &self.spam_dist),
            Label::Legitimate => (&self.legit_only, &self.legit_dist),
        };
        let r: f64 = rng.gen();
        if r < noise {
            return rng.gen_range(0..self.len());
        }
        if r < noise + doc_signal {
            if let Some(dist) = dist {
                return words[dist.sample(rng)];
            }
        }
        match &self.shared_dist {
            Some(dist) => self.shared[dist.sample(rng)],
            None => rng.gen_range(0..self.len()),
        }
    }
}

fn source_id(label: Label, index: usize) -> String {
    match label {
        Label::Spam => format!("{SPAM_PREFIX}{index:05}.txt"),
        Label::Legitimate => format!("msg{index:05}.txt"),
    }
}

/// Generates a deterministic corpus; the same seed and parameters always
/// yield an identical corpus.
pub fn generate_fixture_corpus(
    seed: u64,
    n_legit: usize,
    n_spam: usize,
    params: &FixtureParams,
) -> Result<Corpus> {
    if n_legit + n_spam == 0 {
        return Err(Error::EmptyFixture);
    }
    let vocab = Vocabulary::new(params);
    let words: Vec<String> = (0..vocab.len()).map(word).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_len = params.min_len.max(1);
    let max_len = params.max_len.max(min_len);

    let labels = std::iter::repeat(Label::Legitimate)
        .take(n_legit)
        .chain(std::iter::repeat(Label::Spam).take(n_spam));
    let mut per_class = [0usize; 2];
    let mut documents = Vec::with_capacity(n_legit + n_spam);
    for label in labels {
        let slot = &mut per_class[label as usize];
        *slot += 1;
        let index = *slot;
        let len = rng.gen_range(min_len..=max_len);
        let doc_signal = rng.gen_range(0.0..=2.0 * params.signal);
        let tokens = (0..len)
            .map(|_| words[vocab.draw(&mut rng, label, doc_signal, params.noise)].clone())
            .collect();
        documents.push(Document {
            tokens,
            label,
            source_id: source_id(label, index),
        });
    }
    Corpus::new(documents)
}

/// Persists a corpus in the Ling-Spam directory convention, one file per
/// document at `dir/<source_id>`. The first `subject_len` tokens form the
/// subject line.
pub fn write_corpus(corpus: &Corpus, dir: &Path, subject_len: usize) -> Result<()> {
    for doc in corpus.documents() {
        let path = dir.join(&doc.source_id);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        let split = subject_len.min(doc.tokens.len());
        let (subject, body) = doc.tokens.split_at(split);
        let mut text = format!("Subject: {}\n\n", subject.join(" "));
        for line in body.chunks(12) {
            text.push_str(&line.join(" "));
            text.push('\n');
        }
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{normalize_token, NormalizerConfig, Stemming};

    #[test]
    fn words_are_distinct_and_stable() {
        let words: Vec<_> = (0..5000).map(word).collect();
        let unique: std::collections::HashSet<_> = words.iter().collect();
        assert_eq!(unique.len(), words.len());
        assert_eq!(word(0), "baba");
        assert_eq!(word(1), "babi");
    }

    #[test]
    fn words_survive_normalization() {
        let light = NormalizerConfig::with_stemming(Stemming::LightSuffix);
        for i in 0..3000 {
            let w = word(i);
            assert_eq!(normalize_token(&w, &light).as_deref(), Some(w.as_str()));
        }
    }

    #[test]
    fn same_seed_same_corpus() {
        let p = FixtureParams::default();
        let a = generate_fixture_corpus(7, 90, 10, &p).unwrap();
        let b = generate_fixture_corpus(7, 90, 10, &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_legit(), 90);
        assert_eq!(a.n_spam(), 10);
    }

    #[test]
    fn different_seed_different_tokens() {
        let p = FixtureParams::default();
        let a = generate_fixture_corpus(7, 90, 10, &p).unwrap();
        let b = generate_fixture_corpus(8, 90, 10, &p).unwrap();
        let ta: Vec<_> = a.documents().iter().map(|d| &d.tokens).collect();
        let tb: Vec<_> = b.documents().iter().map(|d| &d.tokens).collect();
        assert_ne!(ta, tb);
    }

    #[test]
    fn spam_only_fixture() {
        let c = generate_fixture_corpus(7, 0, 5, &FixtureParams::default()).unwrap();
        assert_eq!((c.n_legit(), c.n_spam()), (0, 5));
    }

    #[test]
    fn zero_documents_is_error() {
        assert!(matches!(
            generate_fixture_corpus(7, 0, 0, &FixtureParams::default()),
            Err(Error::EmptyFixture)
        ));
    }
}
