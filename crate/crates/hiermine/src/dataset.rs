//! Transaction datasets in the FIMI `.dat` text format: one transaction per
//! line, items as whitespace-separated decimal tokens.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

/// An item identifier. Coded datasets render items as fixed-width digit
/// strings, so a leading-zero code like `012345` is the integer `12345`
/// together with the dataset's [`Dataset::code_width`].
pub type Item = u64;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("line {line}, token {column}: {token:?} is not a decimal integer")]
    BadToken {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// An ordered list of transactions. The 1-based row index is the transaction
/// id. Within a transaction items are strictly increasing; duplicates in the
/// input are collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    transactions: Vec<Vec<Item>>,
    /// Digit width of every item token, when the source file was uniform
    /// (a cleaned or codec-produced file). Raw FIMI files carry `None`.
    code_width: Option<usize>,
}

impl Dataset {
    pub fn new(transactions: Vec<Vec<Item>>, code_width: Option<usize>) -> Self {
        let transactions = transactions
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        Dataset {
            transactions,
            code_width,
        }
    }

    pub fn transactions(&self) -> &[Vec<Item>] {
        &self.transactions
    }

    pub fn n_transactions(&self) -> usize {
        self.transactions.len()
    }

    pub fn code_width(&self) -> Option<usize> {
        self.code_width
    }

    pub fn with_code_width(mut self, width: Option<usize>) -> Self {
        self.code_width = width;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }
}

/// Parses a FIMI stream. Blank lines are skipped; duplicate items within a
/// line are collapsed and each transaction is sorted ascending.
///
/// The code width is inferred: if every token in the file has the same
/// character length, the dataset records that length as its fixed width.
pub fn read_dat<R: Read>(source: R) -> Result<Dataset, DatasetError> {
    let reader = BufReader::new(source);
    let mut transactions = Vec::new();
    let mut width: Option<usize> = None;
    let mut uniform = true;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| DatasetError::Io {
            path: "<stream>".into(),
            source: e,
        })?;
        let mut txn: Vec<Item> = Vec::new();
        for (col, token) in line.split_whitespace().enumerate() {
            if !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(DatasetError::BadToken {
                    line: lineno + 1,
                    column: col + 1,
                    token: token.to_string(),
                });
            }
            let item: Item = token.parse().map_err(|_| DatasetError::BadToken {
                line: lineno + 1,
                column: col + 1,
                token: token.to_string(),
            })?;
            match width {
                None => width = Some(token.len()),
                Some(w) if w != token.len() => uniform = false,
                _ => {}
            }
            txn.push(item);
        }
        if txn.is_empty() {
            continue;
        }
        txn.sort_unstable();
        txn.dedup();
        transactions.push(txn);
    }
    let code_width = if uniform { width } else { None };
    Ok(Dataset {
        transactions,
        code_width,
    })
}

pub fn read_dat_file<P: AsRef<Path>>(path: P) -> Result<Dataset, DatasetError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| DatasetError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    read_dat(file)
}

fn render_item(item: Item, width: Option<usize>, out: &mut String) {
    match width {
        Some(w) => {
            let _ = write!(out, "{item:0w$}");
        }
        None => {
            let _ = write!(out, "{item}");
        }
    }
}

/// Writes the canonical form: one line per transaction, single-space
/// separators, items ascending, trailing newline. Items are zero-padded to
/// the dataset's fixed code width when it has one.
pub fn write_dat<W: Write>(data: &Dataset, sink: W) -> Result<(), DatasetError> {
    let mut w = BufWriter::new(sink);
    let mut line = String::new();
    for txn in &data.transactions {
        line.clear();
        for (i, &item) in txn.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            render_item(item, data.code_width, &mut line);
        }
        line.push('\n');
        w.write_all(line.as_bytes()).map_err(|e| DatasetError::Io {
            path: "<stream>".into(),
            source: e,
        })?;
    }
    w.flush().map_err(|e| DatasetError::Io {
        path: "<stream>".into(),
        source: e,
    })
}

pub fn write_dat_file<P: AsRef<Path>>(data: &Dataset, path: P) -> Result<(), DatasetError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| DatasetError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    write_dat(data, file)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "102000 113001 135002\n113102 124002 146000\n102001 113101 124202\n102100 113001 135002\n102000 113001 124202\n";

    #[test]
    fn reads_sample_file() {
        let d = read_dat(FIG1.as_bytes()).unwrap();
        assert_eq!(d.n_transactions(), 5);
        assert!(d.transactions().iter().all(|t| t.len() == 3));
        assert_eq!(d.transactions()[0], vec![102000, 113001, 135002]);
        assert_eq!(d.code_width(), Some(6));
    }

    #[test]
    fn empty_input_is_empty_dataset() {
        let d = read_dat("".as_bytes()).unwrap();
        assert_eq!(d.n_transactions(), 0);
        assert_eq!(d.code_width(), None);
    }

    #[test]
    fn dedups_and_sorts_line() {
        let d = read_dat("5 5 3\n".as_bytes()).unwrap();
        assert_eq!(d.transactions()[0], vec![3, 5]);
    }

    #[test]
    fn non_numeric_token_is_located() {
        let err = read_dat("1 2\n3 x4\n".as_bytes()).unwrap_err();
        match err {
            DatasetError::BadToken { line, column, .. } => {
                assert_eq!((line, column), (2, 2));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn blank_lines_skipped() {
        let d = read_dat("1 2\n\n3\n".as_bytes()).unwrap();
        assert_eq!(d.n_transactions(), 2);
    }

    #[test]
    fn mixed_widths_clear_code_width() {
        let d = read_dat("10 1130\n".as_bytes()).unwrap();
        assert_eq!(d.code_width(), None);
    }

    #[test]
    fn write_is_canonical() {
        let d = Dataset::new(vec![vec![5, 3]], None);
        let mut out = Vec::new();
        write_dat(&d, &mut out).unwrap();
        assert_eq!(out, b"3 5\n");
    }

    #[test]
    fn write_preserves_leading_zeros() {
        let d = Dataset::new(vec![vec![12345]], Some(6));
        let mut out = Vec::new();
        write_dat(&d, &mut out).unwrap();
        assert_eq!(out, b"012345\n");
    }

    #[test]
    fn round_trip_sample() {
        let d = read_dat(FIG1.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_dat(&d, &mut out).unwrap();
        let d2 = read_dat(out.as_slice()).unwrap();
        assert_eq!(d, d2);
    }

    #[test]
    fn empty_dataset_writes_nothing() {
        let d = Dataset::new(vec![], None);
        let mut out = Vec::new();
        write_dat(&d, &mut out).unwrap();
        assert!(out.is_empty());
    }
}
