//! Benchmark report rows, their serialized forms, and the log₂ exponent
//! fit used to read growth rates out of measured counts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instances::Family;
use crate::solvers::Algorithm;

/// Fixed CSV header; the column order is the field order of
/// [`BenchRecord`]. `wall_nanos` is the only nondeterministic column.
pub const REPORT_HEADER: &str =
    "algorithm,n,seed,family,solvable,elements_sorted,elements_scanned,comparisons,wall_nanos";

/// One experiment row: one algorithm run on one generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub seed: u64,
    pub family: Family,
    pub solvable: bool,
    pub elements_sorted: u64,
    pub elements_scanned: u64,
    pub comparisons: u64,
    pub wall_nanos: u64,
}

impl BenchRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.n,
            self.seed,
            self.family,
            self.solvable,
            self.elements_sorted,
            self.elements_scanned,
            self.comparisons,
            self.wall_nanos
        )
    }
}

/// A report line that did not parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("report line {line}: {reason}")]
pub struct ReportParseError {
    pub line: usize,
    pub reason: String,
}

/// Whole report in CSV form: header row, then one row per record, trailing
/// newline. Byte-deterministic apart from the wall-time column.
pub fn write_report_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.to_csv_row());
        out.push('\n');
    }
    out
}

pub fn read_report_csv(text: &str) -> Result<Vec<BenchRecord>, ReportParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == REPORT_HEADER => {}
        _ => {
            return Err(ReportParseError {
                line: 1,
                reason: format!("expected header `{REPORT_HEADER}`"),
            })
        }
    }
    let mut records = Vec::new();
    for (idx, row) in lines {
        let lineno = idx + 1;
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 9 {
            return Err(ReportParseError {
                line: lineno,
                reason: format!("expected 9 fields, found {}", fields.len()),
            });
        }
        let field = |i: usize, what: &str| -> Result<&str, ReportParseError> {
            fields.get(i).copied().ok_or_else(|| ReportParseError {
                line: lineno,
                reason: format!("missing {what}"),
            })
        };
        fn parsed<T: std::str::FromStr>(
            s: &str,
            what: &str,
            line: usize,
        ) -> Result<T, ReportParseError> {
            s.parse().map_err(|_| ReportParseError {
                line,
                reason: format!("invalid {what} `{s}`"),
            })
        }
        records.push(BenchRecord {
            algorithm: parsed(field(0, "algorithm")?, "algorithm", lineno)?,
            n: parsed(field(1, "n")?, "n", lineno)?,
            seed: parsed(field(2, "seed")?, "seed", lineno)?,
            family: parsed(field(3, "family")?, "family", lineno)?,
            solvable: parsed(field(4, "solvable")?, "solvable", lineno)?,
            elements_sorted: parsed(field(5, "elements_sorted")?, "elements_sorted", lineno)?,
            elements_scanned: parsed(field(6, "elements_scanned")?, "elements_scanned", lineno)?,
            comparisons: parsed(field(7, "comparisons")?, "comparisons", lineno)?,
            wall_nanos: parsed(field(8, "wall_nanos")?, "wall_nanos", lineno)?,
        });
    }
    Ok(records)
}

/// Alternate structured stream: one JSON object per line.
pub fn write_report_jsonl(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn read_report_jsonl(text: &str) -> Result<Vec<BenchRecord>, ReportParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.is_empty())
        .map(|(idx, line)| {
            serde_json::from_str(line).map_err(|e| ReportParseError {
                line: idx + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}

/// Which counter column a fit reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountField {
    ElementsSorted,
    ElementsScanned,
    Comparisons,
    WallNanos,
}

impl CountField {
    pub const ALL: [CountField; 4] = [
        CountField::ElementsSorted,
        CountField::ElementsScanned,
        CountField::Comparisons,
        CountField::WallNanos,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CountField::ElementsSorted => "elements_sorted",
            CountField::ElementsScanned => "elements_scanned",
            CountField::Comparisons => "comparisons",
            CountField::WallNanos => "wall_nanos",
        }
    }

    pub fn of(self, record: &BenchRecord) -> u64 {
        match self {
            CountField::ElementsSorted => record.elements_sorted,
            CountField::ElementsScanned => record.elements_scanned,
            CountField::Comparisons => record.comparisons,
            CountField::WallNanos => record.wall_nanos,
        }
    }
}

impl std::fmt::Display for CountField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for CountField {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CountField::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| {
                format!("unknown count field `{s}` (expected elements_sorted, elements_scanned, comparisons, or wall_nanos)")
            })
    }
}

/// Least-squares line through `(n, log₂ count)`: the slope is the measured
/// number of bits of growth per unit of `n`, so `2^n` data fits at 1.0 and
/// `2^(n/2)` data at 0.5.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_range: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("an exponent fit needs at least 3 distinct n values, got {got}")]
    TooFewPoints { got: usize },
}

/// Fits `log₂(count) = slope·n + intercept` over the given points. Counts
/// of zero are clamped to one so a noisy timer floor cannot poison the
/// logarithm. Repeated `n` values are allowed; at least three distinct ones
/// are required.
pub fn fit_exponent(points: &[(usize, u64)]) -> Result<FitResult, FitError> {
    let mut distinct: Vec<usize> = points.iter().map(|&(n, _)| n).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(FitError::TooFewPoints {
            got: distinct.len(),
        });
    }

    let m = points.len() as f64;
    let xs = points.iter().map(|&(n, _)| n as f64);
    let ys = points.iter().map(|&(_, c)| (c.max(1) as f64).log2());
    let sum_x: f64 = xs.clone().sum();
    let sum_y: f64 = ys.clone().sum();
    let mean_x = sum_x / m;
    let mean_y = sum_y / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.clone().zip(ys.clone()) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (x, y) in xs.zip(ys) {
        let predicted = slope * x + intercept;
        ss_res += (y - predicted) * (y - predicted);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        n_range: (distinct[0], distinct[distinct.len() - 1]),
    })
}

/// Filters a report down to one algorithm and fits the chosen column.
pub fn fit_records(
    records: &[BenchRecord],
    algorithm: Algorithm,
    field: CountField,
) -> Result<FitResult, FitError> {
    let points: Vec<(usize, u64)> = records
        .iter()
        .filter(|r| r.algorithm == algorithm)
        .map(|r| (r.n, field.of(r)))
        .collect();
    fit_exponent(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_exponentials_fit_exactly() {
        let doubling: Vec<(usize, u64)> = (10..=20).map(|n| (n, 1u64 << n)).collect();
        let fit = fit_exponent(&doubling).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.n_range, (10, 20));

        let half: Vec<(usize, u64)> = (10..=20)
            .step_by(2)
            .map(|n| (n, 1u64 << (n / 2)))
            .collect();
        let fit = fit_exponent(&half).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_distinct_points_is_an_error() {
        assert_eq!(
            fit_exponent(&[(4, 16), (4, 16), (5, 32)]),
            Err(FitError::TooFewPoints { got: 2 })
        );
    }

    #[test]
    fn constant_counts_fit_a_flat_line() {
        let fit = fit_exponent(&[(3, 8), (4, 8), (5, 8)]).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn csv_round_trip() {
        let records = vec![
            BenchRecord {
                algorithm: Algorithm::MeetInMiddle,
                n: 12,
                seed: 99,
                family: Family::ParityBlocked,
                solvable: false,
                elements_sorted: 192,
                elements_scanned: 180,
                comparisons: 181,
                wall_nanos: 1234,
            },
            BenchRecord {
                algorithm: Algorithm::PairSharedSort,
                n: 13,
                seed: 100,
                family: Family::ScanAdversarial,
                solvable: false,
                elements_sorted: 192,
                elements_scanned: 300,
                comparisons: 301,
                wall_nanos: 4321,
            },
        ];
        let text = write_report_csv(&records);
        assert!(text.starts_with(REPORT_HEADER));
        assert_eq!(read_report_csv(&text).unwrap(), records);

        let jsonl = write_report_jsonl(&records);
        assert_eq!(read_report_jsonl(&jsonl).unwrap(), records);
    }

    #[test]
    fn csv_rejects_bad_rows() {
        let text = format!("{REPORT_HEADER}\nmitm,12,0,parity_blocked,false,1,2\n");
        let err = read_report_csv(&text).unwrap_err();
        assert_eq!(err.line, 2);
    }
}
