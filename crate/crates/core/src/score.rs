//! The meaningless score of a documented function.
//!
//! A docstring word is meaningless when the signature already says it: either
//! the word itself is a signature word, or some signature word (longer than
//! one character and not a stop word) appears inside it, which catches
//! abbreviations like `info` for `information`. The score is the fraction of
//! potentially meaningful docstring words that are meaningless, counted with
//! repetitions.

use crate::extract::{FunctionRecord, SignatureWordSet};
use crate::scalar::Scalar;
use crate::tokenize::{filter_meaningful, is_meaningful, partition_text, StopWordList, Word};

/// Potentially meaningful docstring words, repetitions kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocWordBag {
    words: Vec<Word>,
    source_total: usize,
}

impl DocWordBag {
    pub fn from_docstring(doc: &str, stops: &StopWordList) -> Self {
        let all = partition_text(doc);
        let words = filter_meaningful(&all, stops);
        DocWordBag {
            source_total: all.len(),
            words,
        }
    }

    /// Builds a bag directly from already-partitioned words. Words that are
    /// not meaningful under `stops` are counted in the total but dropped.
    pub fn from_words(all: Vec<Word>, stops: &StopWordList) -> Self {
        let words = filter_meaningful(&all, stops);
        DocWordBag {
            source_total: all.len(),
            words,
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Word count before filtering.
    pub fn source_total(&self) -> usize {
        self.source_total
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Why a docstring word was or was not found in the signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordClass {
    /// The word is itself a signature word.
    Direct,
    /// The signature contains a shortened form of the word.
    Shortened(Word),
    Novel,
}

impl WordClass {
    pub fn is_meaningless(&self) -> bool {
        !matches!(self, WordClass::Novel)
    }
}

/// Classifies one docstring word against the signature. When several
/// signature words are contained in `word`, the lexicographically smallest is
/// reported.
pub fn classify(word: &Word, sig: &SignatureWordSet, stops: &StopWordList) -> WordClass {
    if sig.contains(word) {
        return WordClass::Direct;
    }
    sig.iter()
        .find(|v| is_meaningful(v, stops) && word.contains(v))
        .map_or(WordClass::Novel, |v| WordClass::Shortened(v.clone()))
}

pub fn is_meaningless(word: &Word, sig: &SignatureWordSet, stops: &StopWordList) -> bool {
    classify(word, sig, stops).is_meaningless()
}

/// Counts behind one score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WordCounts {
    pub total_words: usize,
    pub meaningful_words: usize,
    pub meaningless_words: usize,
}

impl WordCounts {
    /// `meaningless_words / meaningful_words`, or `None` when the docstring
    /// has no meaningful words.
    pub fn score<T: Scalar>(&self) -> Option<T> {
        (self.meaningful_words > 0)
            .then(|| T::ratio(self.meaningless_words as u64, self.meaningful_words as u64))
    }
}

pub fn score_function(doc: &DocWordBag, sig: &SignatureWordSet, stops: &StopWordList) -> WordCounts {
    let meaningless_words = doc
        .words
        .iter()
        .filter(|w| is_meaningless(w, sig, stops))
        .count();
    WordCounts {
        total_words: doc.source_total,
        meaningful_words: doc.words.len(),
        meaningless_words,
    }
}

/// Score of one documented function, located in the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreRecord {
    pub file: String,
    pub line: usize,
    pub function: String,
    pub counts: WordCounts,
    /// Docstring the counts were computed from; used for duplicate detection.
    pub docstring: String,
}

impl ScoreRecord {
    /// Scores `rec`, or returns `None` when it has no docstring.
    pub fn for_function(rec: &FunctionRecord, stops: &StopWordList) -> Option<Self> {
        let doc = rec.docstring.as_deref()?;
        let bag = DocWordBag::from_docstring(doc, stops);
        let counts = score_function(&bag, &rec.signature_word_set(), stops);
        Some(ScoreRecord {
            file: rec.file.clone(),
            line: rec.line,
            function: rec.name.clone(),
            counts,
            docstring: doc.to_string(),
        })
    }

    pub fn meaningless<T: Scalar>(&self) -> Option<T> {
        self.counts.score()
    }

    /// True when the score is undefined (no meaningful words).
    pub fn is_undefined(&self) -> bool {
        self.counts.meaningful_words == 0
    }
}

/// Per-word trace of a scoring, in docstring order.
pub fn explain(doc: &DocWordBag, sig: &SignatureWordSet, stops: &StopWordList) -> Vec<(Word, WordClass)> {
    doc.words
        .iter()
        .map(|w| (w.clone(), classify(w, sig, stops)))
        .collect()
}
