//! Width normalization of coded transaction files: every item token is
//! stretched to exactly `n` digits by repeating the token's own digits
//! cyclically. Tokens already `n` digits wide pass through unchanged; longer
//! tokens are an error rather than being truncated, since truncation would
//! silently change hierarchy levels.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CleanError {
    #[error("target width must be at least 1")]
    BadWidth,
    #[error("line {line}, token {column}: {token:?} contains a non-digit")]
    NonDigit {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}, token {column}: {token:?} is longer than {n} digits")]
    Overflow {
        line: usize,
        column: usize,
        token: String,
        n: usize,
    },
    #[error("line {line}, token {column}: empty token")]
    Empty { line: usize, column: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Target digit count for cleaned tokens. Must match the codec's code width
/// when the cleaned file feeds the miner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CleaningConfig {
    pub n: usize,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        CleaningConfig { n: 6 }
    }
}

/// Pads `raw` to exactly `n` digits by cycling its own digits from the
/// first: `"10"` becomes `"101010"` at n = 6, `"1020"` becomes `"102010"`.
pub fn clean_code(raw: &str, n: usize) -> Result<String, CleanError> {
    if n == 0 {
        return Err(CleanError::BadWidth);
    }
    if raw.is_empty() {
        return Err(CleanError::Empty { line: 0, column: 0 });
    }
    if !raw.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CleanError::NonDigit {
            line: 0,
            column: 0,
            token: raw.to_string(),
        });
    }
    if raw.len() > n {
        return Err(CleanError::Overflow {
            line: 0,
            column: 0,
            token: raw.to_string(),
            n,
        });
    }
    let bytes = raw.as_bytes();
    let mut out = String::with_capacity(n);
    for i in 0..n {
        out.push(bytes[i % bytes.len()] as char);
    }
    Ok(out)
}

fn locate(err: CleanError, line: usize, column: usize) -> CleanError {
    match err {
        CleanError::NonDigit { token, .. } => CleanError::NonDigit {
            line,
            column,
            token,
        },
        CleanError::Overflow { token, n, .. } => CleanError::Overflow {
            line,
            column,
            token,
            n,
        },
        CleanError::Empty { .. } => CleanError::Empty { line, column },
        other => other,
    }
}

/// Streams a transaction file through [`clean_code`]. Output is canonical:
/// one transaction per line, single-space separators, trailing newline.
/// Row count and per-row token count are preserved.
pub fn clean_stream<R: Read, W: Write>(
    input: R,
    output: W,
    config: CleaningConfig,
) -> Result<(), CleanError> {
    let reader = BufReader::new(input);
    let mut writer = BufWriter::new(output);
    let io_err = |e: std::io::Error| CleanError::Io {
        path: "<stream>".into(),
        source: e,
    };
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let mut first = true;
        for (col, token) in line.split_whitespace().enumerate() {
            let cleaned =
                clean_code(token, config.n).map_err(|e| locate(e, lineno + 1, col + 1))?;
            if !first {
                writer.write_all(b" ").map_err(io_err)?;
            }
            writer.write_all(cleaned.as_bytes()).map_err(io_err)?;
            first = false;
        }
        if !first {
            writer.write_all(b"\n").map_err(io_err)?;
        }
    }
    writer.flush().map_err(io_err)
}

/// [`clean_stream`] over file paths.
pub fn clean_file<P: AsRef<Path>>(
    input: P,
    output: P,
    config: CleaningConfig,
) -> Result<(), CleanError> {
    let input = input.as_ref();
    let output = output.as_ref();
    let src = File::open(input).map_err(|e| CleanError::Io {
        path: input.display().to_string(),
        source: e,
    })?;
    let dst = File::create(output).map_err(|e| CleanError::Io {
        path: output.display().to_string(),
        source: e,
    })?;
    clean_stream(src, dst, config)
}
