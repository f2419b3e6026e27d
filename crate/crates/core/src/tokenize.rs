//! Word partitioning for docstrings and signature fragments.
//!
//! Text is cut at every run of non-alphanumeric characters, each remaining
//! run is split at its internal capitalization, and the pieces are folded to
//! lowercase. The same routine serves docstrings and identifiers so the two
//! sides of the comparison always agree on what a word is.

use std::collections::BTreeSet;
use std::fmt;

/// A single lowercase alphanumeric word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(String);

impl Word {
    /// Builds a word from arbitrary text, folding case. Returns `None` if the
    /// text is empty or contains a non-alphanumeric character.
    pub fn new(text: &str) -> Option<Self> {
        if text.is_empty() || !text.chars().all(char::is_alphanumeric) {
            return None;
        }
        Some(Word(fold_case(text)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Length in characters.
    pub fn len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when `other` occurs in `self` as a contiguous substring.
    pub fn contains(&self, other: &Word) -> bool {
        self.0.contains(other.as_str())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Word {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Words that are never treated as carrying meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWordList {
    words: BTreeSet<Word>,
}

/// `and`, `or` and `is` are intentionally absent: they matter in contracts.
pub const DEFAULT_STOP_WORDS: [&str; 14] = [
    "the", "an", "of", "at", "by", "in", "it", "on", "to", "that", "had", "for", "was", "were",
];

impl Default for StopWordList {
    fn default() -> Self {
        Self::from_words(DEFAULT_STOP_WORDS)
    }
}

impl StopWordList {
    /// Entries that are not single words are partitioned first, so
    /// `"Don't"` contributes `don` and `t`.
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = words
            .into_iter()
            .flat_map(|w| partition_text(w.as_ref()))
            .collect();
        StopWordList { words }
    }

    /// Parses the one-word-per-line format. Blank lines are skipped and `#`
    /// starts a comment.
    pub fn parse(text: &str) -> Self {
        Self::from_words(
            text.lines()
                .map(|line| line.split('#').next().unwrap_or("").trim())
                .filter(|line| !line.is_empty()),
        )
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.contains(word)
    }

    /// Sorted iteration.
    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Lowercases one character at a time, keeping the string length in chars.
/// Characters whose lowercase form expands (`İ`) keep only the first char of
/// the expansion.
fn fold_case(text: &str) -> String {
    text.chars().map(fold_char).collect()
}

fn fold_char(c: char) -> char {
    c.to_lowercase().next().unwrap_or(c)
}

/// Uppercase for splitting purposes: an uppercase letter that actually folds
/// to something else. Letters like U+1D6E2 with no lowercase mapping behave
/// as caseless.
fn is_upper(c: char) -> bool {
    c.is_uppercase() && fold_char(c) != c
}

/// Splits free text into lowercase words, preserving order and duplicates.
pub fn partition_text(text: &str) -> Vec<Word> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|run| !run.is_empty())
        .flat_map(split_identifier)
        .collect()
}

/// Splits a single alphanumeric run at camelCase boundaries.
///
/// A split happens before an uppercase letter that follows a non-uppercase
/// character, and before the last capital of an uppercase run that is
/// followed by a lowercase letter (`HTTPServer` → `http`, `server`). Digits
/// never start a new word.
pub fn split_identifier(token: &str) -> Vec<Word> {
    let chars: Vec<char> = token.chars().collect();
    let mut words = Vec::new();
    let mut start = 0;
    for i in 1..chars.len() {
        let cur = chars[i];
        if !is_upper(cur) {
            continue;
        }
        let prev = chars[i - 1];
        let acronym_end = is_upper(prev) && chars.get(i + 1).is_some_and(|next| next.is_lowercase());
        if !is_upper(prev) || acronym_end {
            words.extend(word_from_chars(&chars[start..i]));
            start = i;
        }
    }
    words.extend(word_from_chars(&chars[start..]));
    words
}

fn word_from_chars(chars: &[char]) -> Option<Word> {
    let text: String = chars.iter().collect();
    Word::new(&text)
}

/// A word counts as potentially meaningful when it is longer than one
/// character and is not a stop word.
pub fn is_meaningful(word: &Word, stops: &StopWordList) -> bool {
    word.len() > 1 && !stops.contains(word)
}

/// Keeps the potentially meaningful words, preserving order and repetitions.
pub fn filter_meaningful(words: &[Word], stops: &StopWordList) -> Vec<Word> {
    words
        .iter()
        .filter(|w| is_meaningful(w, stops))
        .cloned()
        .collect()
}
