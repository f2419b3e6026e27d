//! Brute-force reference scorer and random case generator.
//!
//! The generator builds a docstring and a signature from a known list of
//! lowercase words, then renders them with random casing and separators. The
//! oracle scores the known word lists with a naive double loop, so it never
//! touches the crate's tokenizer or scorer.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

pub const ORACLE_STOP_WORDS: [&str; 14] = [
    "the", "an", "of", "at", "by", "in", "it", "on", "to", "that", "had", "for", "was", "were",
];

/// 30 words with plenty of substring relations (info/information,
/// set/sets/setting, read/reader/thread, it/item, ...), short words and stop
/// words.
pub const ALPHABET: [&str; 30] = [
    "a", "x", "the", "of", "it", "in", "and", "is", "info", "information", "set", "sets",
    "setting", "tool", "toolbar", "tip", "text", "context", "read", "reader", "thread", "item",
    "value", "values", "path", "file", "profile", "name", "rename", "at",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCounts {
    pub total: usize,
    pub meaningful: usize,
    pub meaningless: usize,
}

fn char_len(w: &str) -> usize {
    w.chars().count()
}

fn is_stop(w: &str) -> bool {
    ORACLE_STOP_WORDS.contains(&w)
}

/// Naive substring test: compare `needle` against every window of `hay`.
fn occurs_in(needle: &str, hay: &str) -> bool {
    let n: Vec<char> = needle.chars().collect();
    let h: Vec<char> = hay.chars().collect();
    if n.len() > h.len() {
        return false;
    }
    for start in 0..=(h.len() - n.len()) {
        let mut all = true;
        for k in 0..n.len() {
            if h[start + k] != n[k] {
                all = false;
                break;
            }
        }
        if all {
            return true;
        }
    }
    false
}

/// Scores ground-truth lowercase word lists.
pub fn oracle_score(doc_words: &[&str], sig_words: &[&str]) -> OracleCounts {
    let mut meaningful = 0;
    let mut meaningless = 0;
    for w in doc_words {
        if char_len(w) <= 1 || is_stop(w) {
            continue;
        }
        meaningful += 1;
        let mut hit = false;
        for v in sig_words {
            if v == w {
                hit = true;
            }
        }
        if !hit {
            for v in sig_words {
                if char_len(v) > 1 && !is_stop(v) && occurs_in(v, w) {
                    hit = true;
                }
            }
        }
        if hit {
            meaningless += 1;
        }
    }
    OracleCounts {
        total: doc_words.len(),
        meaningful,
        meaningless,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Casing {
    Lower,
    Upper,
    Title,
}

fn render_word(w: &str, casing: Casing) -> String {
    match casing {
        Casing::Lower => w.to_string(),
        Casing::Upper => w.to_uppercase(),
        Casing::Title => {
            let mut chars = w.chars();
            match chars.next() {
                Some(first) => first.to_uppercase().chain(chars).collect(),
                None => String::new(),
            }
        }
    }
}

const SEPARATORS: [&str; 9] = [" ", "  ", "_", "-", ". ", ",\n", " (", ") ", "\t@"];

/// Renders words so that the crate's partitioning must recover exactly
/// `words`. Words are joined either by a separator or camel-style, the latter
/// only when the next word is rendered Title case and is at least two
/// characters long.
pub fn render<R: Rng>(rng: &mut R, words: &[&str]) -> String {
    let mut out = String::new();
    if rng.gen_bool(0.3) {
        out.push_str(SEPARATORS.choose(rng).unwrap());
    }
    for (i, w) in words.iter().enumerate() {
        let casing = *[Casing::Lower, Casing::Upper, Casing::Title].choose(rng).unwrap();
        if i > 0 {
            let camel = casing == Casing::Title && char_len(w) >= 2 && rng.gen_bool(0.3);
            if !camel {
                out.push_str(SEPARATORS.choose(rng).unwrap());
            }
        }
        out.push_str(&render_word(w, casing));
    }
    if rng.gen_bool(0.3) {
        out.push_str(SEPARATORS.choose(rng).unwrap());
    }
    out
}

#[derive(Debug, Clone)]
pub struct Case {
    pub doc_words: Vec<&'static str>,
    pub sig_words: Vec<&'static str>,
    pub doc_text: String,
    /// Signature split into identifier-like fragments.
    pub sig_fragments: Vec<String>,
}

pub fn random_case<R: Rng>(rng: &mut R) -> Case {
    let doc_len = rng.gen_range(0..=15);
    let doc_words: Vec<&'static str> = (0..doc_len).map(|_| *ALPHABET.choose(rng).unwrap()).collect();
    let sig_len = rng.gen_range(0..=6);
    let sig_words: Vec<&'static str> = (0..sig_len).map(|_| *ALPHABET.choose(rng).unwrap()).collect();

    let mut sig_fragments = Vec::new();
    let mut rest: &[&str] = &sig_words;
    while !rest.is_empty() {
        let take = rng.gen_range(1..=rest.len().min(3));
        let (part, tail) = rest.split_at(take);
        sig_fragments.push(render(rng, part));
        rest = tail;
    }
    let doc_text = render(rng, &doc_words);
    Case {
        doc_words,
        sig_words,
        doc_text,
        sig_fragments,
    }
}

#[test]
fn oracle_self_check() {
    // hand-traced: the tool tip example
    let doc = [
        "sets", "the", "tool", "tip", "text", "param", "text", "the", "text", "of", "the", "tool", "tip",
    ];
    let sig = ["set", "tool", "tip", "text", "string", "public", "void"];
    assert_eq!(
        oracle_score(&doc, &sig),
        OracleCounts {
            total: 13,
            meaningful: 9,
            meaningless: 8
        }
    );
    assert!(occurs_in("info", "information"));
    assert!(!occurs_in("information", "info"));
    assert!(occurs_in("", "x"));
}
