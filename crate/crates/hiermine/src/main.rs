use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand};

use hiermine::bench::{render_csv, render_table, run_benchmark, trend_violations, BenchPlan};
use hiermine::clean::{clean_stream, CleaningConfig};
use hiermine::codec::{CodeBook, CodeConfig, ItemDescription};
use hiermine::dataset::{read_dat, Dataset};
use hiermine::miner::{mine_frequent, read_itemsets, write_itemsets, MiningConfig};
use hiermine::multilevel::mine_level;
use hiermine::rules::{generate_rules, write_rules};

/// Multilevel frequent-itemset and association-rule miner for coded
/// market-basket transaction files.
#[derive(Parser)]
#[command(name = "hiermine", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The three code-table files shared by `encode` and `decode`.
#[derive(Args)]
struct CodeTables {
    /// Category table: `name<TAB>segment`
    #[arg(long)]
    categories: PathBuf,
    /// Brand table: `category_segment<TAB>name<TAB>segment`
    #[arg(long)]
    brands: PathBuf,
    /// Pack table: `category_segment<TAB>brand_segment<TAB>name<TAB>segment`
    #[arg(long)]
    packs: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Code a transactions file of item names into a `.dat` file.
    ///
    /// Input: one transaction per line, items separated by tabs, each item
    /// written `category,brand,pack`.
    Encode {
        #[command(flatten)]
        tables: CodeTables,
        #[arg(long)]
        input: PathBuf,
        /// Output `.dat` path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decode an itemsets or rules file back to item names.
    Decode {
        #[command(flatten)]
        tables: CodeTables,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Normalize every code in a transaction file to a fixed digit width.
    Clean {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Target digits per code.
        #[arg(long, default_value_t = 6)]
        width: usize,
    },
    /// Mine frequent itemsets at a hierarchy level.
    Mine {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Minimum support as a fraction of transactions.
        #[arg(long)]
        minsup: f64,
        /// Hierarchy level (1 = coarsest). Omit to mine the file as is.
        #[arg(long)]
        level: Option<usize>,
        /// Worker threads; overrides HIERMINE_THREADS.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Generate association rules, either from a mined itemsets file or
    /// end-to-end from a `.dat` file.
    Rules {
        /// Itemsets file (with --itemsets) or transaction `.dat` file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Treat the input as an itemsets file written by `mine`.
        #[arg(long, action = ArgAction::SetTrue)]
        itemsets: bool,
        /// Minimum confidence for emitted rules.
        #[arg(long, default_value_t = 0.5)]
        minconf: f64,
        /// Minimum support (end-to-end mode only).
        #[arg(long)]
        minsup: Option<f64>,
        /// Hierarchy level (end-to-end mode only).
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Sweep minsup x level over a dataset and report mean wall-clock
    /// seconds per cell.
    Bench {
        #[arg(long)]
        input: PathBuf,
        /// Report path; stdout when omitted.
        #[arg(long, alias = "out")]
        output: Option<PathBuf>,
        /// Comma-separated minimum supports.
        #[arg(long, value_delimiter = ',', default_values_t = [0.50, 0.05, 0.03, 0.02, 0.01])]
        minsup: Vec<f64>,
        /// Comma-separated hierarchy levels.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        levels: Vec<usize>,
        /// Repeats per cell; the report carries each observation and the mean.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        threads: Option<usize>,
        /// Code width the input is normalized to before mining.
        #[arg(long, default_value_t = 6)]
        width: usize,
        /// `csv` or `table`.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Also time rule generation (at --minconf) in every cell.
        #[arg(long, action = ArgAction::SetTrue)]
        with_rules: bool,
        #[arg(long, default_value_t = 0.5)]
        minconf: f64,
        /// Keep level projection inside the timed region.
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        time_projection: bool,
        /// Re-run width normalization inside the timed region.
        #[arg(long, action = ArgAction::SetTrue)]
        include_cleaning_time: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("hiermine: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Ok(Box::new(f))
        }
        None => Ok(Box::new(std::io::stdout())),
    }
}

fn resolve_threads(flag: Option<usize>) -> usize {
    if let Some(t) = flag {
        return t.max(1);
    }
    std::env::var("HIERMINE_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1usize)
        .max(1)
}

fn load_book(tables: &CodeTables) -> Result<CodeBook> {
    CodeBook::load_files(
        &tables.categories,
        &tables.brands,
        &tables.packs,
        CodeConfig::default(),
    )
    .context("loading code tables")
}

fn load_dataset(path: &Path) -> Result<Dataset> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_dat(file).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Encode {
            tables,
            input,
            output,
        } => {
            let book = load_book(&tables)?;
            let rows = parse_items_file(&input)?;
            let data = book.encode_transactions(&rows)?;
            let sink = open_output(&output)?;
            hiermine::dataset::write_dat(&data, sink)?;
            Ok(())
        }
        Command::Decode {
            tables,
            input,
            output,
        } => {
            let book = load_book(&tables)?;
            let file = File::open(&input).with_context(|| format!("opening {}", input.display()))?;
            let mut sink = open_output(&output)?;
            decode_file(&book, file, &mut sink)?;
            Ok(())
        }
        Command::Clean {
            input,
            output,
            width,
        } => {
            let src = File::open(&input).with_context(|| format!("opening {}", input.display()))?;
            let sink = open_output(&output)?;
            clean_stream(src, sink, CleaningConfig { n: width })?;
            Ok(())
        }
        Command::Mine {
            input,
            output,
            minsup,
            level,
            threads,
        } => {
            let data = load_dataset(&input)?;
            let threads = resolve_threads(threads);
            let mut config = MiningConfig::new(minsup).with_threads(threads);
            let mut headers: Vec<(&str, String)> = vec![("minsup", minsup.to_string())];
            let (freq, width) = match level {
                Some(level) => {
                    config = config.with_level(level);
                    headers.push(("level", level.to_string()));
                    let freq = mine_level(&data, &config)?;
                    (freq, Some(level * config.digits_per_level))
                }
                None => (mine_frequent(&data, &config)?, data.code_width()),
            };
            let sink = open_output(&output)?;
            write_itemsets(&freq, sink, width, &headers)?;
            Ok(())
        }
        Command::Rules {
            input,
            output,
            itemsets,
            minconf,
            minsup,
            level,
            threads,
        } => {
            let (freq, width) = if itemsets {
                let file =
                    File::open(&input).with_context(|| format!("opening {}", input.display()))?;
                read_itemsets(file)?
            } else {
                let minsup = minsup
                    .context("--minsup is required when mining rules straight from a .dat file")?;
                let data = load_dataset(&input)?;
                let mut config =
                    MiningConfig::new(minsup).with_threads(resolve_threads(threads));
                match level {
                    Some(level) => {
                        config = config.with_level(level);
                        let freq = mine_level(&data, &config)?;
                        let width = Some(level * config.digits_per_level);
                        (freq, width)
                    }
                    None => (mine_frequent(&data, &config)?, data.code_width()),
                }
            };
            let rules = generate_rules(&freq, minconf)?;
            let sink = open_output(&output)?;
            write_rules(&rules, sink, width)?;
            Ok(())
        }
        Command::Bench {
            input,
            output,
            minsup,
            levels,
            repeats,
            threads,
            width,
            format,
            with_rules,
            minconf,
            time_projection,
            include_cleaning_time,
        } => {
            let mut raw_text = String::new();
            File::open(&input)
                .with_context(|| format!("opening {}", input.display()))?
                .read_to_string(&mut raw_text)
                .with_context(|| format!("reading {}", input.display()))?;
            // normalize up front; the timed region re-cleans only when asked
            let mut cleaned = Vec::new();
            clean_stream(raw_text.as_bytes(), &mut cleaned, CleaningConfig { n: width })?;
            let data = read_dat(cleaned.as_slice())?;

            let plan = BenchPlan {
                levels,
                minsups: minsup,
                repeats,
                threads: resolve_threads(threads),
                time_projection,
                with_rules,
                min_confidence: minconf,
                include_cleaning_time,
                width,
            };
            let name = input
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| input.display().to_string());
            let report = run_benchmark(&data, Some(&raw_text), &name, &plan)?;
            for w in &report.warnings {
                eprintln!("hiermine: warning: {w}");
            }
            for v in trend_violations(&report) {
                eprintln!("hiermine: trend: {v}");
            }
            let rendered = match format.as_str() {
                "csv" => render_csv(&report),
                "table" => render_table(&report),
                other => bail!("unknown --format {other:?} (expected csv or table)"),
            };
            let mut sink = open_output(&output)?;
            sink.write_all(rendered.as_bytes())?;
            Ok(())
        }
    }
}

/// Items file: one transaction per line, items separated by tabs, item
/// fields `category,brand,pack`.
fn parse_items_file(path: &Path) -> Result<Vec<Vec<ItemDescription>>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut rows = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for item in line.split('\t').filter(|s| !s.trim().is_empty()) {
            let fields: Vec<&str> = item.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                bail!(
                    "{} line {}: item {item:?} must be `category,brand,pack`",
                    path.display(),
                    idx + 1
                );
            }
            row.push(ItemDescription::new(fields[0], fields[1], fields[2]));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn decode_token(book: &CodeBook, token: &str) -> Result<String> {
    let names = book.decode_segments(token)?;
    Ok(names.join(":"))
}

/// Rewrites itemsets or rules lines with names in place of codes. Itemset
/// lines are `codes<TAB>count`; rule lines contain ` -> `. Metadata lines
/// pass through.
fn decode_file<R: Read, W: Write>(book: &CodeBook, source: R, sink: &mut W) -> Result<()> {
    for line in BufReader::new(source).lines() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            writeln!(sink, "{line}")?;
            continue;
        }
        let mut parts = line.split('\t');
        let head = parts.next().unwrap_or("");
        let rest: Vec<&str> = parts.collect();
        let decoded_head = if let Some((lhs, rhs)) = head.split_once(" -> ") {
            format!(
                "[{}] -> [{}]",
                decode_side(book, lhs)?,
                decode_side(book, rhs)?
            )
        } else {
            format!("[{}]", decode_side(book, head)?)
        };
        if rest.is_empty() {
            writeln!(sink, "{decoded_head}")?;
        } else {
            writeln!(sink, "{decoded_head}\t{}", rest.join("\t"))?;
        }
    }
    Ok(())
}

fn decode_side(book: &CodeBook, codes: &str) -> Result<String> {
    let decoded: Result<Vec<String>> = codes
        .split_whitespace()
        .map(|t| decode_token(book, t))
        .collect();
    Ok(decoded?.join(", "))
}
