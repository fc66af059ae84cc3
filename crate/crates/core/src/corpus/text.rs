//! Message parsing, tokenization and token normalization.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A single message before vectorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMessage {
    pub subject: String,
    pub body: String,
    pub source_id: String,
}

const SUBJECT_PREFIX: &str = "Subject:";

/// Splits raw message bytes into subject and body.
///
/// When the text starts with a `Subject:` header, everything up to the first
/// blank line is the subject (prefix stripped) and the rest is the body.
/// Without a header the whole text is body. Invalid UTF-8 is replaced lossily.
pub fn parse_message(raw: &[u8], source_id: impl Into<String>) -> Result<RawMessage> {
    if raw.is_empty() {
        return Err(Error::EmptyMessage);
    }
    let text = String::from_utf8_lossy(raw);
    let text = text.replace("\r\n", "\n");
    let source_id = source_id.into();

    let Some(header) = text.strip_prefix(SUBJECT_PREFIX) else {
        return Ok(RawMessage {
            subject: String::new(),
            body: text,
            source_id,
        });
    };

    let (subject, body) = match header.find("\n\n") {
        Some(split) => (&header[..split], &header[split + 2..]),
        None => (header, ""),
    };
    Ok(RawMessage {
        subject: subject.trim().to_string(),
        body: body.to_string(),
        source_id,
    })
}

/// Maximal runs of alphabetic characters, in order of appearance.
pub fn tokenize(text: &str) -> Vec<&str> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Stemming {
    #[default]
    None,
    LightSuffix,
}

impl Stemming {
    pub fn as_str(self) -> &'static str {
        match self {
            Stemming::None => "none",
            Stemming::LightSuffix => "light",
        }
    }
}

impl fmt::Display for Stemming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stemming {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Stemming::None),
            "light" | "light-suffix" => Ok(Stemming::LightSuffix),
            other => Err(Error::Parse(format!("unknown stemming mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalizerConfig {
    pub lowercase: bool,
    pub stemming: Stemming,
    pub min_token_length: usize,
}

impl Default for NormalizerConfig {
    fn default() -> Self {
        NormalizerConfig {
            lowercase: true,
            stemming: Stemming::None,
            min_token_length: 1,
        }
    }
}

impl NormalizerConfig {
    pub fn with_stemming(stemming: Stemming) -> Self {
        NormalizerConfig {
            stemming,
            ..Self::default()
        }
    }

    /// Tokenizes and normalizes `text`, dropping tokens the normalizer rejects.
    pub fn tokens(&self, text: &str) -> Vec<String> {
        tokenize(text)
            .into_iter()
            .filter_map(|t| normalize_token(t, self))
            .collect()
    }
}

// Longest first.
const LIGHT_SUFFIXES: [&str; 5] = ["ing", "es", "ed", "ly", "s"];
const MIN_STEM_CHARS: usize = 3;

fn strip_light_suffix(token: &str) -> Option<&str> {
    LIGHT_SUFFIXES.iter().find_map(|suffix| {
        let stem = token.strip_suffix(suffix)?;
        (stem.chars().count() >= MIN_STEM_CHARS).then_some(stem)
    })
}

/// Normalizes one token; `None` means the token is dropped.
///
/// Light suffix stripping is repeated until no rule applies, so that a
/// normalized token is a fixed point ("meetings" -> "meeting" -> "meet").
pub fn normalize_token(token: &str, config: &NormalizerConfig) -> Option<String> {
    let mut out = if config.lowercase {
        token.to_lowercase()
    } else {
        token.to_string()
    };
    if config.stemming == Stemming::LightSuffix {
        while let Some(stem) = strip_light_suffix(&out) {
            out.truncate(stem.len());
        }
    }
    if out.is_empty() || out.chars().count() < config.min_token_length {
        return None;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn light() -> NormalizerConfig {
        NormalizerConfig::with_stemming(Stemming::LightSuffix)
    }

    #[test]
    fn parse_subject_and_body() {
        let m = parse_message(b"Subject: hello\n\nworld", "a").unwrap();
        assert_eq!(m.subject, "hello");
        assert_eq!(m.body, "world");
    }

    #[test]
    fn parse_without_header() {
        let m = parse_message(b"no header at all", "a").unwrap();
        assert_eq!(m.subject, "");
        assert_eq!(m.body, "no header at all");
    }

    #[test]
    fn parse_splits_on_first_blank_line_only() {
        let m = parse_message(b"Subject: A\n\nB\n\nC", "a").unwrap();
        assert_eq!(m.subject, "A");
        assert_eq!(m.body, "B\n\nC");
    }

    #[test]
    fn parse_crlf_and_missing_body() {
        let m = parse_message(b"Subject: re : job\r\n\r\nbody text\r\n", "a").unwrap();
        assert_eq!(m.subject, "re : job");
        assert_eq!(m.body, "body text\n");

        let m = parse_message(b"Subject: only", "a").unwrap();
        assert_eq!(m.subject, "only");
        assert_eq!(m.body, "");
    }

    #[test]
    fn parse_empty_is_error() {
        let err = parse_message(b"", "a").unwrap_err();
        assert_eq!(err.to_string(), "empty message");
    }

    #[test]
    fn parse_lossy_decoding() {
        let m = parse_message(b"Subject: caf\xe9\n\nok", "a").unwrap();
        assert_eq!(m.subject, "caf\u{fffd}");
        assert_eq!(tokenize(&m.subject), vec!["caf"]);
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("Be over 21!"), vec!["Be", "over"]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("e-mail filter"), vec!["e", "mail", "filter"]);
        assert_eq!(tokenize("$$$ 100% FREE!!!"), vec!["FREE"]);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_token("EARNING", &light()).as_deref(), Some("earn"));
        assert_eq!(
            normalize_token("earn", &NormalizerConfig::default()).as_deref(),
            Some("earn")
        );
        assert_eq!(normalize_token("flies", &light()).as_deref(), Some("fli"));
    }

    #[test]
    fn light_suffix_keeps_short_stems() {
        assert_eq!(normalize_token("is", &light()).as_deref(), Some("is"));
        assert_eq!(normalize_token("bed", &light()).as_deref(), Some("bed"));
        assert_eq!(normalize_token("sing", &light()).as_deref(), Some("sing"));
        assert_eq!(normalize_token("quickly", &light()).as_deref(), Some("quick"));
        assert_eq!(normalize_token("meetings", &light()).as_deref(), Some("meet"));
    }

    #[test]
    fn no_lowercase_keeps_case() {
        let cfg = NormalizerConfig {
            lowercase: false,
            ..light()
        };
        assert_eq!(normalize_token("EARNING", &cfg).as_deref(), Some("EARNING"));
        assert_eq!(normalize_token("Earning", &cfg).as_deref(), Some("Earn"));
    }

    #[test]
    fn min_length_drops() {
        let cfg = NormalizerConfig {
            min_token_length: 3,
            ..NormalizerConfig::default()
        };
        assert_eq!(normalize_token("a", &cfg), None);
        assert_eq!(normalize_token("abc", &cfg).as_deref(), Some("abc"));
    }
}
