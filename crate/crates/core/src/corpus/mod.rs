//! Labeled e-mail corpora: loading, parsing and normalization.

mod fixture;
mod text;

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use walkdir::WalkDir;

use crate::error::{Error, Result};

pub use fixture::{generate_fixture_corpus, write_corpus, FixtureParams};
pub use text::{normalize_token, parse_message, tokenize, NormalizerConfig, RawMessage, Stemming};

/// Basename prefix marking a spam message in the Ling-Spam layout.
pub const SPAM_PREFIX: &str = "spmsg";

/// Message category. `Legitimate < Spam`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Legitimate,
    Spam,
}

impl Label {
    pub fn is_spam(self) -> bool {
        self == Label::Spam
    }

    pub fn other(self) -> Label {
        match self {
            Label::Legitimate => Label::Spam,
            Label::Spam => Label::Legitimate,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Legitimate => "legit",
            Label::Spam => "spam",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub tokens: Vec<String>,
    pub label: Label,
    pub source_id: String,
}

impl Document {
    pub fn from_message(message: &RawMessage, label: Label, config: &NormalizerConfig) -> Self {
        let text = format!("{} {}", message.subject, message.body);
        Document {
            tokens: config.tokens(&text),
            label,
            source_id: message.source_id.clone(),
        }
    }
}

/// An ordered, immutable collection of documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
    n_legit: usize,
    n_spam: usize,
}

impl Corpus {
    /// Builds a corpus, sorting documents by `source_id`.
    pub fn new(mut documents: Vec<Document>) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        documents.sort_by(|a, b| a.source_id.cmp(&b.source_id));
        let n_spam = documents.iter().filter(|d| d.label.is_spam()).count();
        Ok(Corpus {
            n_legit: documents.len() - n_spam,
            n_spam,
            documents,
        })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn n_legit(&self) -> usize {
        self.n_legit
    }

    pub fn n_spam(&self) -> usize {
        self.n_spam
    }

    pub fn labels(&self) -> Vec<Label> {
        self.documents.iter().map(|d| d.label).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Layout {
    #[default]
    LingSpam,
    Fixture,
}

impl Layout {
    pub fn as_str(self) -> &'static str {
        match self {
            Layout::LingSpam => "lingspam",
            Layout::Fixture => "fixture",
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lingspam" => Ok(Layout::LingSpam),
            "fixture" => Ok(Layout::Fixture),
            other => Err(Error::UnknownLayout(other.to_string())),
        }
    }
}

/// Label implied by a file name under the Ling-Spam convention.
pub fn label_for_path(path: &Path) -> Label {
    let spam = path
        .file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.starts_with(SPAM_PREFIX));
    if spam {
        Label::Spam
    } else {
        Label::Legitimate
    }
}

/// Loads every regular file below `dir` as one message.
///
/// Both layouts share the directory convention: a basename starting with
/// `spmsg` is spam, anything else is legitimate. Source ids are paths
/// relative to `dir`, and documents are ordered by path.
pub fn load_corpus(dir: &Path, layout: Layout, config: &NormalizerConfig) -> Result<Corpus> {
    // Both layouts share one directory convention.
    let _ = layout;
    let meta = std::fs::metadata(dir).map_err(|e| Error::io(dir, e))?;
    if !meta.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotADirectory, "not a directory"),
        ));
    }

    let mut documents = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_path_buf();
            Error::io(path, e.into())
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let path = entry.path();
        let raw = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let source_id = path
            .strip_prefix(dir)
            .unwrap_or(path)
            .to_string_lossy()
            .replace('\\', "/");
        let label = label_for_path(path);
        let document = match parse_message(&raw, source_id.clone()) {
            Ok(message) => Document::from_message(&message, label, config),
            // A zero-byte file still counts as a (token-less) message.
            Err(Error::EmptyMessage) => Document {
                tokens: Vec::new(),
                label,
                source_id,
            },
            Err(e) => return Err(e),
        };
        documents.push(document);
    }
    Corpus::new(documents)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusStats {
    pub n_legit: usize,
    pub n_spam: usize,
    pub spam_rate: f64,
    pub vocabulary_size: usize,
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "legit={} spam={} rate={:.1}% vocab={}",
            self.n_legit,
            self.n_spam,
            100.0 * self.spam_rate,
            self.vocabulary_size
        )
    }
}

pub fn corpus_stats(corpus: &Corpus) -> CorpusStats {
    let vocabulary: HashSet<&str> = corpus
        .documents()
        .iter()
        .flat_map(|d| d.tokens.iter().map(String::as_str))
        .collect();
    CorpusStats {
        n_legit: corpus.n_legit(),
        n_spam: corpus.n_spam(),
        spam_rate: corpus.n_spam() as f64 / corpus.len() as f64,
        vocabulary_size: vocabulary.len(),
    }
}
