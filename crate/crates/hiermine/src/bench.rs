//! Timing harness: sweeps minimum support and hierarchy level over one
//! dataset, repeats each cell, and reports per-repeat and mean wall-clock
//! seconds as CSV or a wide table. Only the mining call is timed; loading
//! and (by default) cleaning are excluded.

use std::fmt::Write as _;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use thiserror::Error;

use crate::clean::{clean_stream, CleaningConfig};
use crate::dataset::{read_dat, Dataset};
use crate::miner::{mine_frequent, write_itemsets, MiningConfig};
use crate::multilevel::{mine_level, project_to_level, MultilevelError};
use crate::rules::generate_rules;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("repeats must be at least 1")]
    BadRepeats,
    #[error("minsup list must be non-empty, duplicate-free and within (0, 1]")]
    BadMinsups,
    #[error("levels list must be non-empty and within 1..=3")]
    BadLevels,
    #[error(transparent)]
    Mining(#[from] MultilevelError),
    #[error("cleaning failed during a timed repeat: {0}")]
    Clean(#[from] crate::clean::CleanError),
    #[error("dataset parse failed during a timed repeat: {0}")]
    Parse(#[from] crate::dataset::DatasetError),
}

/// What to run: the sweep grid and the timing policy.
#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub levels: Vec<usize>,
    pub minsups: Vec<f64>,
    pub repeats: usize,
    pub threads: usize,
    /// Projection inside the timed region (default). Turning it off
    /// pre-projects each level once, so the timer sees mining only.
    pub time_projection: bool,
    /// Also time rule generation at the fixed confidence below.
    pub with_rules: bool,
    pub min_confidence: f64,
    /// Re-run width normalization inside the timed region. Off by default;
    /// cleaning cost is not part of the recorded running time.
    pub include_cleaning_time: bool,
    pub width: usize,
}

impl Default for BenchPlan {
    fn default() -> Self {
        BenchPlan {
            levels: vec![1, 2, 3],
            minsups: vec![0.50, 0.05, 0.03, 0.02, 0.01],
            repeats: 3,
            threads: 1,
            time_projection: true,
            with_rules: false,
            min_confidence: 0.5,
            include_cleaning_time: false,
            width: 6,
        }
    }
}

impl BenchPlan {
    fn validate(&self) -> Result<(), BenchError> {
        if self.repeats < 1 {
            return Err(BenchError::BadRepeats);
        }
        if self.minsups.is_empty()
            || self
                .minsups
                .iter()
                .any(|&m| !(m > 0.0 && m <= 1.0))
        {
            return Err(BenchError::BadMinsups);
        }
        for (i, a) in self.minsups.iter().enumerate() {
            if self.minsups[i + 1..].contains(a) {
                return Err(BenchError::BadMinsups);
            }
        }
        if self.levels.is_empty() || self.levels.iter().any(|&l| l < 1 || l > 3) {
            return Err(BenchError::BadLevels);
        }
        Ok(())
    }
}

/// One sweep cell: per-repeat seconds and their arithmetic mean.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub minsup: f64,
    pub level: usize,
    pub runs_s: Vec<f64>,
    pub mean_s: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub dataset: String,
    pub n_transactions: usize,
    pub timestamp_unix: u64,
    pub environment: String,
    pub warnings: Vec<String>,
    pub rows: Vec<BenchRow>,
}

fn timer_resolution() -> f64 {
    let start = Instant::now();
    loop {
        let d = start.elapsed();
        if !d.is_zero() {
            return d.as_secs_f64();
        }
    }
}

/// Runs the sweep on a pre-loaded dataset. Rows come out sorted by
/// descending minsup, then ascending level. When `include_cleaning_time` is
/// set and the raw file text is supplied, each timed repeat re-cleans and
/// re-parses the text before mining.
pub fn run_benchmark(
    data: &Dataset,
    raw_text: Option<&str>,
    dataset_name: &str,
    plan: &BenchPlan,
) -> Result<BenchReport, BenchError> {
    plan.validate()?;
    let mut warnings = Vec::new();
    let resolution = timer_resolution();
    if resolution > 1e-3 {
        warnings.push(format!(
            "timer resolution is {resolution:.6} s, coarser than 1 ms"
        ));
    }

    let mut minsups = plan.minsups.clone();
    minsups.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut levels = plan.levels.clone();
    levels.sort_unstable();

    let mut rows = Vec::new();
    for &minsup in &minsups {
        for &level in &levels {
            let config = MiningConfig::new(minsup)
                .with_level(level)
                .with_threads(plan.threads);
            // pre-projected variant when projection is excluded from timing
            let pre_projected = if plan.time_projection {
                None
            } else {
                Some(project_to_level(data, level, config.digits_per_level)?)
            };

            let mut runs_s = Vec::with_capacity(plan.repeats);
            let mut first_output: Option<Vec<u8>> = None;
            for _ in 0..plan.repeats {
                let start = Instant::now();
                let freq = if plan.include_cleaning_time {
                    if let Some(text) = raw_text {
                        let mut cleaned = Vec::new();
                        clean_stream(
                            text.as_bytes(),
                            &mut cleaned,
                            CleaningConfig { n: plan.width },
                        )?;
                        let d = read_dat(cleaned.as_slice())?;
                        mine_level(&d, &config)?
                    } else {
                        mine_level(data, &config)?
                    }
                } else if let Some(projected) = &pre_projected {
                    mine_frequent(projected, &config).map_err(MultilevelError::Miner)?
                } else {
                    mine_level(data, &config)?
                };
                if plan.with_rules {
                    generate_rules(&freq, plan.min_confidence)
                        .expect("mined table is downward closed");
                }
                runs_s.push(start.elapsed().as_secs_f64());

                let mut serialized = Vec::new();
                write_itemsets(&freq, &mut serialized, None, &[]).ok();
                match &first_output {
                    None => first_output = Some(serialized),
                    Some(expected) => {
                        if expected != &serialized {
                            warnings.push(format!(
                                "minsup {minsup} level {level}: repeats produced different outputs"
                            ));
                        }
                    }
                }
            }
            let mean_s = runs_s.iter().sum::<f64>() / runs_s.len() as f64;
            rows.push(BenchRow {
                minsup,
                level,
                runs_s,
                mean_s,
            });
        }
    }

    Ok(BenchReport {
        dataset: dataset_name.to_string(),
        n_transactions: data.n_transactions(),
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        environment: format!(
            "{} {}, threads={}",
            std::env::consts::OS,
            std::env::consts::ARCH,
            plan.threads
        ),
        warnings,
        rows,
    })
}

/// Lists the adjacent sweep comparisons whose means run against the expected
/// direction: time should not grow when minsup grows (level fixed) and
/// should not shrink when level grows (minsup fixed). Violations are
/// reported, not fatal; single runs are noisy.
pub fn trend_violations(report: &BenchReport) -> Vec<String> {
    let mut out = Vec::new();
    let cell = |minsup: f64, level: usize| {
        report
            .rows
            .iter()
            .find(|r| r.minsup == minsup && r.level == level)
            .map(|r| r.mean_s)
    };
    let mut minsups: Vec<f64> = report.rows.iter().map(|r| r.minsup).collect();
    minsups.sort_by(|a, b| b.partial_cmp(a).unwrap());
    minsups.dedup();
    let mut levels: Vec<usize> = report.rows.iter().map(|r| r.level).collect();
    levels.sort_unstable();
    levels.dedup();

    for &level in &levels {
        for pair in minsups.windows(2) {
            let (hi, lo) = (pair[0], pair[1]);
            if let (Some(t_hi), Some(t_lo)) = (cell(hi, level), cell(lo, level)) {
                if t_lo < t_hi {
                    out.push(format!(
                        "level {level}: mean at minsup {lo} ({t_lo:.3}s) is below mean at minsup {hi} ({t_hi:.3}s)"
                    ));
                }
            }
        }
    }
    for &minsup in &minsups {
        for pair in levels.windows(2) {
            let (shallow, deep) = (pair[0], pair[1]);
            if let (Some(t_s), Some(t_d)) = (cell(minsup, shallow), cell(minsup, deep)) {
                if t_d < t_s {
                    out.push(format!(
                        "minsup {minsup}: mean at level {deep} ({t_d:.3}s) is below mean at level {shallow} ({t_s:.3}s)"
                    ));
                }
            }
        }
    }
    out
}

/// CSV with header `dataset,minsup,level,run1_s,...,mean_s`, one row per
/// sweep cell, times with three decimals.
pub fn render_csv(report: &BenchReport) -> String {
    let repeats = report.rows.first().map(|r| r.runs_s.len()).unwrap_or(0);
    let mut out = String::from("dataset,minsup,level");
    for i in 1..=repeats {
        let _ = write!(out, ",run{i}_s");
    }
    out.push_str(",mean_s\n");
    for row in &report.rows {
        let _ = write!(out, "{},{},{}", report.dataset, row.minsup, row.level);
        for r in &row.runs_s {
            let _ = write!(out, ",{r:.3}");
        }
        let _ = writeln!(out, ",{:.3}", row.mean_s);
    }
    out
}

/// Wide layout: one row per minsup, one column of mean seconds per level.
pub fn render_table(report: &BenchReport) -> String {
    let mut minsups: Vec<f64> = report.rows.iter().map(|r| r.minsup).collect();
    minsups.sort_by(|a, b| b.partial_cmp(a).unwrap());
    minsups.dedup();
    let mut levels: Vec<usize> = report.rows.iter().map(|r| r.level).collect();
    levels.sort_unstable();
    levels.dedup();

    let mut out = format!(
        "# dataset={} n_transactions={}\nMin Support",
        report.dataset, report.n_transactions
    );
    for l in &levels {
        let _ = write!(out, "\tLevel {l}");
    }
    out.push('\n');
    for &m in &minsups {
        let _ = write!(out, "{m:.2}");
        for &l in &levels {
            let mean = report
                .rows
                .iter()
                .find(|r| r.minsup == m && r.level == l)
                .map(|r| r.mean_s);
            match mean {
                Some(s) => {
                    let _ = write!(out, "\t{s:.3}");
                }
                None => out.push_str("\t-"),
            }
        }
        out.push('\n');
    }
    out
}
