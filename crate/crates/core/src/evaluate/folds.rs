use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Label};
use crate::error::{Error, Result};

pub const DEFAULT_FOLDS: usize = 10;

/// Seeded assignment of every document to one of `k_folds` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    k_folds: usize,
    seed: u64,
    assignment: Vec<usize>,
}

impl FoldPlan {
    pub fn from_assignment(k_folds: usize, seed: u64, assignment: Vec<usize>) -> Result<Self> {
        if k_folds < 2 {
            return Err(Error::InvalidFoldPlan(format!("need at least 2 folds, got {k_folds}")));
        }
        if let Some(f) = assignment.iter().find(|&&f| f >= k_folds) {
            return Err(Error::InvalidFoldPlan(format!("fold id {f} out of range")));
        }
        Ok(FoldPlan {
            k_folds,
            seed,
            assignment,
        })
    }

    pub fn k_folds(&self) -> usize {
        self.k_folds
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn fold_of(&self, doc: usize) -> usize {
        self.assignment[doc]
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.assignment[i] == fold).collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.assignment[i] != fold).collect()
    }

    /// Per-fold `(legit, spam)` document counts.
    pub fn class_counts(&self, corpus: &Corpus) -> Vec<(usize, usize)> {
        let mut counts = vec![(0, 0); self.k_folds];
        for (doc, &fold) in corpus.documents().iter().zip(&self.assignment) {
            match doc.label {
                Label::Legitimate => counts[fold].0 += 1,
                Label::Spam => counts[fold].1 += 1,
            }
        }
        counts
    }

    pub fn check(&self, corpus: &Corpus) -> Result<()> {
        if self.len() != corpus.len() {
            return Err(Error::InvalidFoldPlan(format!(
                "plan covers {} documents, corpus has {}",
                self.len(),
                corpus.len()
            )));
        }
        Ok(())
    }
}

/// Shuffles each class with the seeded generator and deals it round-robin.
///
/// Spam is dealt first from fold 0; legitimate dealing continues where spam
/// stopped, so fold sizes also differ by at most one.
pub fn make_stratified_folds(corpus: &Corpus, k_folds: usize, seed: u64) -> Result<FoldPlan> {
    if k_folds < 2 || corpus.n_legit() < k_folds || corpus.n_spam() < k_folds {
        return Err(Error::InsufficientDocuments {
            k_folds,
            n_legit: corpus.n_legit(),
            n_spam: corpus.n_spam(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; corpus.len()];
    let mut next = 0;
    for label in [Label::Spam, Label::Legitimate] {
        let mut members: Vec<usize> = corpus
            .documents()
            .iter()
            .enumerate()
            .filter(|(_, d)| d.label == label)
            .map(|(i, _)| i)
            .collect();
        members.shuffle(&mut rng);
        for doc in members {
            assignment[doc] = next;
            next = (next + 1) % k_folds;
        }
    }
    FoldPlan::from_assignment(k_folds, seed, assignment)
}
