//! Aggregate statistics and report files.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::corpus::{project_of, FileStats, ScanOutput};
use crate::extract::ParseFailure;
use crate::scalar::Scalar;
use crate::score::ScoreRecord;

/// Fractional digits used for every number in the CSV reports.
pub const CSV_DIGITS: u32 = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("no data")]
    NoData,
    #[error("mass must lie strictly between 0 and 1")]
    InvalidMass,
}

/// Empirical CDF in step form: one point per distinct sample value.
#[derive(Debug, Clone, PartialEq)]
pub struct Cdf<T> {
    points: Vec<(T, T)>,
    sample_count: usize,
}

impl<T: Scalar> Cdf<T> {
    pub fn from_samples(samples: &[T]) -> Self {
        let mut sorted = samples.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("unordered sample"));
        let n = sorted.len();
        let mut points: Vec<(T, T)> = Vec::new();
        for (i, x) in sorted.iter().enumerate() {
            let is_last_of_run = sorted.get(i + 1).is_none_or(|next| next != x);
            if is_last_of_run {
                points.push((x.clone(), T::ratio(i as u64 + 1, n as u64)));
            }
        }
        Cdf {
            points,
            sample_count: n,
        }
    }

    pub fn points(&self) -> &[(T, T)] {
        &self.points
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn is_empty(&self) -> bool {
        self.sample_count == 0
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: &T) -> T {
        self.points
            .iter()
            .take_while(|(s, _)| s <= x)
            .last()
            .map_or_else(T::zero, |(_, f)| f.clone())
    }

    /// Nearest-rank quantile: the smallest sample `x` with `F(x) >= p`.
    pub fn quantile(&self, p: &T) -> Option<T> {
        self.points
            .iter()
            .find(|(_, f)| f >= p)
            .or(self.points.last())
            .map(|(s, _)| s.clone())
    }
}

pub fn compute_cdf<T: Scalar>(scores: &[T]) -> Cdf<T> {
    Cdf::from_samples(scores)
}

/// The `(1-mass)/2` and `1-(1-mass)/2` nearest-rank quantiles.
pub fn central_band<T: Scalar>(cdf: &Cdf<T>, mass: &T) -> Result<(T, T), ReportError> {
    if !(*mass > T::zero() && *mass < T::one()) {
        return Err(ReportError::InvalidMass);
    }
    let two = T::one() + T::one();
    let tail = (T::one() - mass.clone()) / two;
    let upper = T::one() - tail.clone();
    let lo = cdf.quantile(&tail).ok_or(ReportError::NoData)?;
    let hi = cdf.quantile(&upper).ok_or(ReportError::NoData)?;
    Ok((lo, hi))
}

/// Unweighted mean of the per-file undocumented fractions, skipping files
/// without functions.
pub fn avg_undocumented<T: Scalar>(stats: &[FileStats]) -> Result<T, ReportError> {
    let fractions: Vec<T> = stats.iter().filter_map(FileStats::empty_percent).collect();
    if fractions.is_empty() {
        return Err(ReportError::NoData);
    }
    let n = fractions.len() as u64;
    let sum = fractions.into_iter().fold(T::zero(), |acc, x| acc + x);
    Ok(sum * T::ratio(1, n))
}

/// Shares at or above which a project is flagged for manual review.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyThresholds<T> {
    /// Share of documented functions carrying one identical docstring.
    pub duplicate_share: T,
    /// Share of defined scores that are exactly zero.
    pub zero_share: T,
}

impl<T: Scalar> Default for DegeneracyThresholds<T> {
    fn default() -> Self {
        DegeneracyThresholds {
            duplicate_share: T::ratio(1, 2),
            zero_share: T::ratio(3, 10),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport<T> {
    pub per_project_cdfs: BTreeMap<String, Cdf<T>>,
    pub pooled_cdf: Cdf<T>,
    /// `None` when no parsed file contains a function.
    pub avg_undocumented_fraction: Option<T>,
    pub scores: Vec<ScoreRecord>,
    pub file_stats: Vec<FileStats>,
    pub failures: Vec<ParseFailure>,
    pub undefined_score_count: usize,
    pub files_selected: usize,
}

impl<T: Scalar> CorpusReport<T> {
    pub fn build(scan: ScanOutput) -> Self {
        let mut by_project: BTreeMap<String, Vec<T>> = BTreeMap::new();
        let mut pooled = Vec::new();
        let mut undefined = 0;
        for rec in &scan.scores {
            let samples = by_project.entry(project_of(&rec.file).to_string()).or_default();
            match rec.meaningless::<T>() {
                Some(score) => {
                    samples.push(score.clone());
                    pooled.push(score);
                }
                None => undefined += 1,
            }
        }
        let per_project_cdfs = by_project
            .into_iter()
            .map(|(project, samples)| (project, Cdf::from_samples(&samples)))
            .collect();
        CorpusReport {
            per_project_cdfs,
            pooled_cdf: Cdf::from_samples(&pooled),
            avg_undocumented_fraction: avg_undocumented(&scan.file_stats).ok(),
            scores: scan.scores,
            file_stats: scan.file_stats,
            failures: scan.failures,
            undefined_score_count: undefined,
            files_selected: scan.files_selected,
        }
    }

    pub fn central_band(&self, mass: &T) -> Result<(T, T), ReportError> {
        central_band(&self.pooled_cdf, mass)
    }

    /// Failed files over selected files.
    pub fn failure_rate(&self) -> Option<T> {
        (self.files_selected > 0).then(|| T::ratio(self.failures.len() as u64, self.files_selected as u64))
    }
}

/// Projects whose score distribution looks machine-generated. One entry per
/// triggered rule, ordered by project.
pub fn flag_degenerate_projects<T: Scalar>(
    report: &CorpusReport<T>,
    thresholds: &DegeneracyThresholds<T>,
) -> Vec<(String, String)> {
    let mut by_project: BTreeMap<&str, Vec<&ScoreRecord>> = BTreeMap::new();
    for rec in &report.scores {
        by_project.entry(project_of(&rec.file)).or_default().push(rec);
    }
    let mut flags = Vec::new();
    for (project, records) in by_project {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for rec in &records {
            *counts.entry(rec.docstring.as_str()).or_default() += 1;
        }
        let top = counts.values().copied().max().unwrap_or(0);
        let documented = records.len();
        if top >= 2 && T::ratio(top as u64, documented as u64) >= thresholds.duplicate_share {
            flags.push((
                project.to_string(),
                format!("dominant duplicate docstring ({top} of {documented} documented functions)"),
            ));
        }
        let defined: Vec<T> = records.iter().filter_map(|r| r.meaningless::<T>()).collect();
        let zeros = defined.iter().filter(|s| s.is_zero()).count();
        if !defined.is_empty() && T::ratio(zeros as u64, defined.len() as u64) >= thresholds.zero_share {
            flags.push((
                project.to_string(),
                format!("excess zero scores ({zeros} of {} scored functions)", defined.len()),
            ));
        }
    }
    flags
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmitOptions<T> {
    /// Also write an SVG rendering next to every CDF CSV.
    pub svg: bool,
    /// Mass of the central band printed in the summary.
    pub band_mass: T,
    pub thresholds: DegeneracyThresholds<T>,
}

impl<T: Scalar> Default for EmitOptions<T> {
    fn default() -> Self {
        EmitOptions {
            svg: false,
            band_mass: T::ratio(4, 5),
            thresholds: DegeneracyThresholds::default(),
        }
    }
}

#[derive(Debug, Error)]
#[error("{}: {source}", path.display())]
pub struct EmitError {
    pub path: PathBuf,
    #[source]
    pub source: io::Error,
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(&row).expect("in-memory write");
    }
    writer.into_inner().expect("in-memory flush")
}

/// Writes `contents` to a temporary sibling and renames it into place.
fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<(), EmitError> {
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let wrap = |path: &Path| {
        let path = path.to_path_buf();
        move |source| EmitError { path, source }
    };
    fs::write(&tmp, contents).map_err(wrap(&tmp))?;
    fs::rename(&tmp, &target).map_err(wrap(&target))
}

fn fixed<T: Scalar>(value: Option<T>) -> String {
    value.map(|v| v.to_fixed(CSV_DIGITS)).unwrap_or_default()
}

pub fn functions_csv<T: Scalar>(scores: &[ScoreRecord]) -> Vec<u8> {
    let rows = scores.iter().map(|r| {
        let score = r.meaningless::<T>();
        let flag = if score.is_none() { "no_meaningful_words" } else { "" };
        vec![
            r.file.clone(),
            r.line.to_string(),
            r.function.clone(),
            r.counts.total_words.to_string(),
            r.counts.meaningful_words.to_string(),
            r.counts.meaningless_words.to_string(),
            fixed(score),
            flag.to_string(),
        ]
    });
    csv_bytes(
        &["file", "line", "function", "total_words", "meaningful_words", "meaningless_words", "meaningless", "flag"],
        rows,
    )
}

pub fn files_csv<T: Scalar>(stats: &[FileStats]) -> Vec<u8> {
    let rows = stats.iter().map(|s| {
        vec![
            s.file.clone(),
            s.total_functions.to_string(),
            s.total_empty.to_string(),
            fixed(s.empty_percent::<T>()),
        ]
    });
    csv_bytes(&["file", "total_functions", "total_empty", "empty_percent"], rows)
}

pub fn cdf_csv<T: Scalar>(cdf: &Cdf<T>) -> Vec<u8> {
    let rows = cdf
        .points()
        .iter()
        .map(|(s, f)| vec![s.to_fixed(CSV_DIGITS), f.to_fixed(CSV_DIGITS)]);
    csv_bytes(&["score", "cumulative_fraction"], rows)
}

pub fn failures_csv(failures: &[ParseFailure]) -> Vec<u8> {
    let rows = failures.iter().map(|f| vec![f.file.clone(), f.reason.clone()]);
    csv_bytes(&["file", "reason"], rows)
}

/// Plain-text summary of a report.
pub fn summary_text<T: Scalar>(report: &CorpusReport<T>, options: &EmitOptions<T>) -> String {
    let mut out = String::new();
    let parsed = report.file_stats.len();
    let functions: usize = report.file_stats.iter().map(|s| s.total_functions).sum();
    let undocumented: usize = report.file_stats.iter().map(|s| s.total_empty).sum();
    let failure_pct = report
        .failure_rate()
        .map(|r| format!("{}%", (r * T::ratio(100, 1)).to_fixed(2)))
        .unwrap_or_else(|| "n/a".to_string());
    let _ = writeln!(out, "files selected: {}", report.files_selected);
    let _ = writeln!(out, "files parsed: {parsed}");
    let _ = writeln!(out, "parse failures: {} ({failure_pct})", report.failures.len());
    let _ = writeln!(out, "functions: {functions}");
    let _ = writeln!(out, "undocumented functions: {undocumented}");
    let _ = writeln!(out, "documented functions: {}", report.scores.len());
    let _ = writeln!(out, "undefined scores: {}", report.undefined_score_count);
    let avg = report
        .avg_undocumented_fraction
        .as_ref()
        .map(|v| v.to_fixed(CSV_DIGITS))
        .unwrap_or_else(|| "no data".to_string());
    let _ = writeln!(out, "average undocumented fraction: {avg}");
    let pct = (options.band_mass.clone() * T::ratio(100, 1)).to_fixed(0);
    let band = match report.central_band(&options.band_mass) {
        Ok((lo, hi)) => format!("{} to {}", lo.to_fixed(CSV_DIGITS), hi.to_fixed(CSV_DIGITS)),
        Err(e) => e.to_string(),
    };
    let _ = writeln!(out, "central {pct}% band: {band}");
    let _ = writeln!(out, "projects: {}", report.per_project_cdfs.len());
    let flags = flag_degenerate_projects(report, &options.thresholds);
    let _ = writeln!(out, "degenerate projects: {}", flags.len());
    for (project, diagnostic) in flags {
        let _ = writeln!(out, "  {project}: {diagnostic}");
    }
    out
}

/// Line rendering of a CDF on the unit square.
pub fn cdf_svg<T: Scalar>(cdf: &Cdf<T>, title: &str) -> String {
    const SIZE: f64 = 400.0;
    const PAD: f64 = 40.0;
    let x = |v: f64| PAD + v * SIZE;
    let y = |v: f64| PAD + (1.0 - v) * SIZE;
    let mut path = format!("{:.2},{:.2}", x(0.0), y(0.0));
    let mut prev = 0.0;
    for (s, f) in cdf.points() {
        let (s, f) = (s.to_f64(), f.to_f64());
        let _ = write!(path, " {:.2},{:.2} {:.2},{:.2}", x(s), y(prev), x(s), y(f));
        prev = f;
    }
    let _ = write!(path, " {:.2},{:.2}", x(1.0), y(prev));
    let title = title.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
    let total = SIZE + 2.0 * PAD;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n\
         <title>{title}</title>\n\
         <rect x=\"{PAD}\" y=\"{PAD}\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"none\" stroke=\"#999\"/>\n\
         <text x=\"{PAD}\" y=\"{ty}\" font-size=\"14\">{title}</text>\n\
         <text x=\"{PAD}\" y=\"{by}\" font-size=\"12\">0</text>\n\
         <text x=\"{rx}\" y=\"{by}\" font-size=\"12\">1</text>\n\
         <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"{path}\"/>\n\
         </svg>\n",
        ty = PAD - 12.0,
        by = PAD + SIZE + 16.0,
        rx = PAD + SIZE - 8.0,
    )
}

/// File-name-safe form of a project name.
fn sanitize(project: &str) -> String {
    let cleaned: String = project
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
        .collect();
    match cleaned.as_str() {
        "." => "_root".to_string(),
        ".." | "" => "_".to_string(),
        _ => cleaned,
    }
}

/// Writes every report file into `out_dir`. Returns the names written, in
/// write order.
pub fn emit_reports<T: Scalar>(
    report: &CorpusReport<T>,
    out_dir: &Path,
    options: &EmitOptions<T>,
) -> Result<Vec<String>, EmitError> {
    fs::create_dir_all(out_dir).map_err(|source| EmitError {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    let mut put = |name: String, contents: Vec<u8>| -> Result<(), EmitError> {
        write_atomic(out_dir, &name, &contents)?;
        written.push(name);
        Ok(())
    };
    put("functions.csv".into(), functions_csv::<T>(&report.scores))?;
    put("files.csv".into(), files_csv::<T>(&report.file_stats))?;
    put("failures.csv".into(), failures_csv(&report.failures))?;
    put("cdf_pooled.csv".into(), cdf_csv(&report.pooled_cdf))?;
    if options.svg {
        put("cdf_pooled.svg".into(), cdf_svg(&report.pooled_cdf, "all projects").into_bytes())?;
    }
    let mut used: HashMap<String, usize> = HashMap::new();
    for (project, cdf) in &report.per_project_cdfs {
        let base = sanitize(project);
        let n = used.entry(base.clone()).or_insert(0);
        *n += 1;
        let stem = if *n == 1 { base } else { format!("{base}_{n}") };
        put(format!("cdf_{stem}.csv"), cdf_csv(cdf))?;
        if options.svg {
            put(format!("cdf_{stem}.svg"), cdf_svg(cdf, project).into_bytes())?;
        }
    }
    put("summary.txt".into(), summary_text(report, options).into_bytes())?;
    Ok(written)
}
