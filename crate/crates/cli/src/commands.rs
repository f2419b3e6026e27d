use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use docscore::extract::extract_from_bytes;
use docscore::report::{summary_text, DegeneracyThresholds};
use docscore::score::explain as trace_words;
use docscore::{
    scan_corpus, BigRational, CorpusConfig, CorpusReport, DocWordBag, EmitOptions, Exact, FileStats,
    ParseFailure, ScanOutput, ScoreRecord, Scalar, WordClass, WordCounts,
};

use crate::config::{load_config, resolve, Overrides, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    FailureRate,
    Usage,
}

impl From<Status> for ExitCode {
    fn from(status: Status) -> Self {
        match status {
            Status::Ok => ExitCode::SUCCESS,
            Status::FailureRate => ExitCode::from(1),
            Status::Usage => ExitCode::from(2),
        }
    }
}

fn settings(config: Option<&Path>, overrides: &Overrides) -> Result<Settings> {
    let file = load_config(config)?;
    resolve(&file, overrides)
}

fn emit_options(settings: &Settings) -> EmitOptions<Exact> {
    EmitOptions {
        svg: settings.svg,
        band_mass: Exact::ratio(4, 5),
        thresholds: DegeneracyThresholds {
            duplicate_share: settings.duplicate_threshold.clone(),
            zero_share: settings.zero_threshold.clone(),
        },
    }
}

pub fn scan(roots: &[std::path::PathBuf], config: Option<&Path>, overrides: &Overrides, deterministic: bool) -> Result<Status> {
    let settings = settings(config, overrides)?;
    let started = Instant::now();
    let cfg = CorpusConfig {
        roots: roots.to_vec(),
        exclude_markers: settings.exclude.clone(),
        file_extension: settings.extension.clone(),
        stop_words: settings.stop_words.clone(),
        follow_symlinks: settings.follow_symlinks,
        jobs: settings.jobs,
    };
    let scan = scan_corpus(&cfg)?;
    let report = CorpusReport::build(scan);
    let options = emit_options(&settings);
    let written = docscore::emit_reports(&report, &settings.out, &options)?;

    print!("{}", summary_text(&report, &options));
    println!("reports written: {} files in {}", written.len(), settings.out.display());
    if !deterministic {
        println!("elapsed: {:.2}s", started.elapsed().as_secs_f64());
    }

    let rate = report.failure_rate().unwrap_or_else(|| Exact::ratio(0, 1));
    if rate > settings.max_failure_rate {
        eprintln!(
            "error: parse failure rate {} exceeds the maximum {}",
            rate.to_fixed(4),
            settings.max_failure_rate.to_fixed(4)
        );
        return Ok(Status::FailureRate);
    }
    Ok(Status::Ok)
}

fn describe(class: &WordClass) -> String {
    match class {
        WordClass::Direct => "meaningless  appears in the signature".to_string(),
        WordClass::Shortened(v) => format!("meaningless  contains signature word \"{v}\""),
        WordClass::Novel => "meaningful   novel".to_string(),
    }
}

pub fn score_one(file: &Path, target: &str, config: Option<&Path>, overrides: &Overrides) -> Result<Status> {
    let settings = settings(config, overrides)?;
    let stops = &settings.stop_words;
    let bytes = fs::read(file).with_context(|| format!("cannot read {}", file.display()))?;
    let display = file.to_string_lossy().replace('\\', "/");
    let records = extract_from_bytes(&bytes, &display)?;
    let line: Option<usize> = target.parse().ok();
    let matches: Vec<_> = records
        .iter()
        .filter(|r| match line {
            Some(n) => r.line == n,
            None => r.name == target,
        })
        .collect();
    if matches.is_empty() {
        bail!("no function `{target}` in {display}");
    }

    let mut out = String::new();
    for (i, rec) in matches.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let sig = rec.signature_word_set();
        let _ = writeln!(out, "{}:{} {}", rec.file, rec.line, rec.name);
        let sig_words: Vec<&str> = sig.iter().map(|w| w.as_str()).collect();
        let _ = writeln!(out, "signature words: {}", sig_words.join(" "));
        let Some(doc) = rec.docstring.as_deref() else {
            let _ = writeln!(out, "no docstring");
            continue;
        };
        let bag = DocWordBag::from_docstring(doc, stops);
        let counts = docscore::score_function(&bag, &sig, stops);
        let _ = writeln!(out, "total words: {}", counts.total_words);
        let _ = writeln!(out, "meaningful words: {}", counts.meaningful_words);
        let _ = writeln!(out, "meaningless words: {}", counts.meaningless_words);
        match counts.score::<BigRational>() {
            Some(score) => {
                let _ = writeln!(out, "meaningless score: {} = {}", score, score.to_fixed(6));
            }
            None => {
                let _ = writeln!(out, "meaningless score: undefined (no meaningful words)");
            }
        }
        let traced = trace_words(&bag, &sig, stops);
        let width = traced.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
        for (word, class) in traced {
            let pad = width - word.len();
            let _ = writeln!(out, "  {word}{}  {}", " ".repeat(pad), describe(&class));
        }
    }
    print!("{out}");
    Ok(Status::Ok)
}

fn read_csv(path: &Path) -> Result<Vec<csv::StringRecord>> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("cannot read {}", path.display()))?;
    reader
        .records()
        .collect::<Result<_, _>>()
        .with_context(|| format!("malformed {}", path.display()))
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize, path: &Path) -> Result<T> {
    let text = row.get(i).unwrap_or("");
    text.parse()
        .map_err(|_| anyhow::anyhow!("{}: bad value `{text}` in column {}", path.display(), i + 1))
}

/// Rebuilds scan results from a previous run's CSV files. Docstrings are not
/// stored there, so each record gets a unique placeholder and the
/// duplicate-docstring check cannot fire.
fn load_scan(dir: &Path) -> Result<ScanOutput> {
    let functions = dir.join("functions.csv");
    let files = dir.join("files.csv");
    let failures = dir.join("failures.csv");
    let mut scan = ScanOutput::default();
    for row in read_csv(&functions)? {
        let file = row.get(0).unwrap_or("").to_string();
        let line: usize = field(&row, 1, &functions)?;
        scan.scores.push(ScoreRecord {
            docstring: format!("{file}:{line}"),
            file,
            line,
            function: row.get(2).unwrap_or("").to_string(),
            counts: WordCounts {
                total_words: field(&row, 3, &functions)?,
                meaningful_words: field(&row, 4, &functions)?,
                meaningless_words: field(&row, 5, &functions)?,
            },
        });
    }
    for row in read_csv(&files)? {
        scan.file_stats.push(FileStats {
            file: row.get(0).unwrap_or("").to_string(),
            total_functions: field(&row, 1, &files)?,
            total_empty: field(&row, 2, &files)?,
        });
    }
    for row in read_csv(&failures)? {
        scan.failures.push(ParseFailure {
            file: row.get(0).unwrap_or("").to_string(),
            reason: row.get(1).unwrap_or("").to_string(),
        });
    }
    scan.files_selected = scan.file_stats.len() + scan.failures.len();
    Ok(scan)
}

pub fn report(dir: &Path, config: Option<&Path>, overrides: &Overrides) -> Result<Status> {
    let mut overrides = overrides.clone();
    if overrides.out.is_none() {
        overrides.out = Some(dir.to_path_buf());
    }
    let settings = settings(config, &overrides)?;
    let report = CorpusReport::build(load_scan(dir)?);
    let options = emit_options(&settings);
    let written = docscore::emit_reports(&report, &settings.out, &options)?;
    print!("{}", summary_text(&report, &options));
    println!("note: duplicate-docstring detection needs docstrings and is skipped when rebuilding from CSV");
    println!("reports written: {} files in {}", written.len(), settings.out.display());
    Ok(Status::Ok)
}

const METRIC: &str = "\
For every function that has a docstring:

1. The docstring is split into words: every run of non-alphanumeric
   characters becomes a space, camelCase and snake_case names are split into
   their parts, and everything is lowercased.
2. Potentially meaningful words are those longer than one character that are
   not stop words. They form a bag (repetitions count).
3. The signature (function name, parameter names, parameter annotations and
   return annotation) is split the same way into a set of words.
4. A meaningful docstring word is meaningless when it is a signature word, or
   when it contains a signature word that is longer than one character and is
   not a stop word (so `information` is meaningless if `info` is in the
   signature).
5. The meaningless score is meaningless / meaningful words. Close to 1 means
   the docstring restates the signature. Docstrings without meaningful words
   have no score.

Files are counted per function for the undocumented fraction, which is
averaged over files rather than pooled over functions.
";

pub fn explain(config: Option<&Path>, overrides: &Overrides) -> Result<Status> {
    let settings = settings(config, overrides)?;
    let mut out = String::from(METRIC);
    let _ = writeln!(out);
    let source = settings
        .stop_words_source
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "built-in".to_string());
    let words: Vec<&str> = settings.stop_words.iter().map(|w| w.as_str()).collect();
    let _ = writeln!(out, "stop words ({}, {source}): {}", words.len(), words.join(" "));
    let _ = writeln!(out, "excluded path markers: {}", settings.exclude.join(", "));
    let _ = writeln!(out, "file extension: {}", settings.extension);
    let _ = writeln!(out, "max failure rate: {}", settings.max_failure_rate.to_fixed(4));
    let _ = writeln!(
        out,
        "degenerate project thresholds: duplicate docstrings >= {}, zero scores >= {}",
        settings.duplicate_threshold.to_fixed(2),
        settings.zero_threshold.to_fixed(2)
    );
    print!("{out}");
    Ok(Status::Ok)
}
