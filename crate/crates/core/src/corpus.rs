//! Corpus traversal and per-file scanning.
//!
//! Paths in every output are relative to a virtual "directory of projects".
//! With a single root that directory is the root itself, so its top-level
//! subdirectories are the projects. With several roots each root appears
//! under its own directory name and is therefore one project.

use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;
use walkdir::WalkDir;

use crate::extract::{extract_from_bytes, ParseFailure};
use crate::scalar::Scalar;
use crate::score::ScoreRecord;
use crate::tokenize::StopWordList;

pub const DEFAULT_EXCLUDE_MARKERS: [&str; 2] = ["test", "e2e"];
pub const DEFAULT_EXTENSION: &str = "py";

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub roots: Vec<PathBuf>,
    /// Lowercase substrings; a file whose root-relative path contains any of
    /// them (case-insensitively) is skipped.
    pub exclude_markers: Vec<String>,
    /// Extension without the leading dot.
    pub file_extension: String,
    pub stop_words: StopWordList,
    pub follow_symlinks: bool,
    /// Worker threads. `Some(1)` scans serially on the calling thread;
    /// `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

impl CorpusConfig {
    pub fn new<I, P>(roots: I) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<PathBuf>,
    {
        CorpusConfig {
            roots: roots.into_iter().map(Into::into).collect(),
            exclude_markers: DEFAULT_EXCLUDE_MARKERS.iter().map(|m| m.to_string()).collect(),
            file_extension: DEFAULT_EXTENSION.to_string(),
            stop_words: StopWordList::default(),
            follow_symlinks: false,
            jobs: None,
        }
    }

    pub fn with_exclude_markers<I, S>(mut self, markers: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.exclude_markers = markers.into_iter().map(|m| m.as_ref().to_lowercase()).collect();
        self
    }

    /// True when `rel` (root-relative, `/`-separated) should be skipped.
    pub fn is_excluded(&self, rel: &str) -> bool {
        let lower = rel.to_lowercase();
        self.exclude_markers
            .iter()
            .filter(|m| !m.is_empty())
            .any(|m| lower.contains(m.as_str()))
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("no scan roots given")]
    NoRoots,
    #[error("cannot read root {}: {source}", path.display())]
    UnreadableRoot { path: PathBuf, source: io::Error },
    #[error("root {} is not a directory", .0.display())]
    NotADirectory(PathBuf),
    #[error("roots {} and {} share the directory name {name:?}", first.display(), second.display())]
    DuplicateRootName {
        name: String,
        first: PathBuf,
        second: PathBuf,
    },
    #[error("cannot build worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// A file chosen for analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub path: PathBuf,
    /// Display path, `/`-separated.
    pub rel: String,
}

/// Project of a display path: its first component, or `.` for files at the
/// top of the projects directory.
pub fn project_of(rel: &str) -> &str {
    match rel.split_once('/') {
        Some((first, _)) => first,
        None => ".",
    }
}

fn rel_string(path: &Path) -> String {
    path.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

fn root_name(root: &Path) -> String {
    let canonical = root.canonicalize().unwrap_or_else(|_| root.to_path_buf());
    canonical
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "root".to_string())
}

/// Lists analyzable files in lexicographic order of their display paths.
pub fn select_files(cfg: &CorpusConfig) -> Result<Vec<SourceFile>, CorpusError> {
    if cfg.roots.is_empty() {
        return Err(CorpusError::NoRoots);
    }
    let multi = cfg.roots.len() > 1;
    let mut names: Vec<(String, &PathBuf)> = Vec::new();
    let mut files = Vec::new();
    for root in &cfg.roots {
        let meta = std::fs::metadata(root).map_err(|source| CorpusError::UnreadableRoot {
            path: root.clone(),
            source,
        })?;
        if !meta.is_dir() {
            return Err(CorpusError::NotADirectory(root.clone()));
        }
        std::fs::read_dir(root).map_err(|source| CorpusError::UnreadableRoot {
            path: root.clone(),
            source,
        })?;
        let prefix = if multi {
            let name = root_name(root);
            if let Some((_, first)) = names.iter().find(|(n, _)| *n == name) {
                return Err(CorpusError::DuplicateRootName {
                    name,
                    first: (*first).clone(),
                    second: root.clone(),
                });
            }
            names.push((name.clone(), root));
            Some(name)
        } else {
            None
        };

        let walker = WalkDir::new(root)
            .follow_links(cfg.follow_symlinks)
            .sort_by_file_name();
        // entries below the root that cannot be read are skipped
        for entry in walker.into_iter().filter_map(Result::ok) {
            if !entry.file_type().is_file() {
                continue;
            }
            let path = entry.path();
            if path.extension().and_then(|e| e.to_str()) != Some(cfg.file_extension.as_str()) {
                continue;
            }
            let Ok(relative) = path.strip_prefix(root) else {
                continue;
            };
            let rel = rel_string(relative);
            if cfg.is_excluded(&rel) {
                continue;
            }
            let rel = match &prefix {
                Some(name) => format!("{name}/{rel}"),
                None => rel,
            };
            files.push(SourceFile {
                path: path.to_path_buf(),
                rel,
            });
        }
    }
    files.sort_by(|a, b| a.rel.cmp(&b.rel));
    Ok(files)
}

/// Function counts of one successfully parsed file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileStats {
    pub file: String,
    pub total_functions: usize,
    /// Functions without a (non-blank) docstring.
    pub total_empty: usize,
}

impl FileStats {
    /// Undocumented fraction, undefined for files without functions.
    pub fn empty_percent<T: Scalar>(&self) -> Option<T> {
        (self.total_functions > 0)
            .then(|| T::ratio(self.total_empty as u64, self.total_functions as u64))
    }

    pub fn project(&self) -> &str {
        project_of(&self.file)
    }
}

/// Everything a scan produces, in deterministic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanOutput {
    /// Sorted by (file, line).
    pub scores: Vec<ScoreRecord>,
    /// Sorted by file; only files that parsed.
    pub file_stats: Vec<FileStats>,
    /// Sorted by file.
    pub failures: Vec<ParseFailure>,
    /// Number of files selected, parsed or not.
    pub files_selected: usize,
}

enum FileOutcome {
    Parsed(FileStats, Vec<ScoreRecord>),
    Failed(ParseFailure),
}

/// Extracts and scores one file's contents.
pub fn scan_source(bytes: &[u8], rel: &str, stops: &StopWordList) -> Result<(FileStats, Vec<ScoreRecord>), ParseFailure> {
    let records = extract_from_bytes(bytes, rel)?;
    let stats = FileStats {
        file: rel.to_string(),
        total_functions: records.len(),
        total_empty: records.iter().filter(|r| !r.is_documented()).count(),
    };
    let scores = records
        .iter()
        .filter_map(|r| ScoreRecord::for_function(r, stops))
        .collect();
    Ok((stats, scores))
}

fn scan_file(file: &SourceFile, stops: &StopWordList) -> FileOutcome {
    let bytes = match std::fs::read(&file.path) {
        Ok(bytes) => bytes,
        Err(e) => {
            return FileOutcome::Failed(ParseFailure {
                file: file.rel.clone(),
                reason: format!("read error: {e}"),
            })
        }
    };
    match scan_source(&bytes, &file.rel, stops) {
        Ok((stats, scores)) => FileOutcome::Parsed(stats, scores),
        Err(failure) => FileOutcome::Failed(failure),
    }
}

/// Selects, extracts and scores every file under the configured roots.
/// Per-file failures are collected, never fatal.
pub fn scan_corpus(cfg: &CorpusConfig) -> Result<ScanOutput, CorpusError> {
    let files = select_files(cfg)?;
    let stops = &cfg.stop_words;
    let outcomes: Vec<FileOutcome> = match cfg.jobs {
        Some(1) => files.iter().map(|f| scan_file(f, stops)).collect(),
        jobs => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()?;
            pool.install(|| files.par_iter().map(|f| scan_file(f, stops)).collect())
        }
    };

    let mut out = ScanOutput {
        files_selected: files.len(),
        ..ScanOutput::default()
    };
    for outcome in outcomes {
        match outcome {
            FileOutcome::Parsed(stats, scores) => {
                out.file_stats.push(stats);
                out.scores.extend(scores);
            }
            FileOutcome::Failed(failure) => out.failures.push(failure),
        }
    }
    out.file_stats.sort_by(|a, b| a.file.cmp(&b.file));
    out.failures.sort_by(|a, b| a.file.cmp(&b.file));
    out.scores
        .sort_by(|a, b| (a.file.as_str(), a.line).cmp(&(b.file.as_str(), b.line)));
    Ok(out)
}
