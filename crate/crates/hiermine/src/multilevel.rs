//! Level projection: truncating every item code to the first
//! `digits_per_level * level` digits maps a coded dataset onto one hierarchy
//! level, and mining the projected dataset yields level-L frequent itemsets.

use thiserror::Error;

use crate::dataset::{Dataset, Item};
use crate::miner::{mine_frequent, FrequentItemsets, MinerError, MiningConfig};

#[derive(Debug, Error)]
pub enum MultilevelError {
    #[error(
        "dataset has no fixed code width; run the cleaning pass first so every code has the same number of digits"
    )]
    UncleanedInput,
    #[error("level {level} needs {needed} digits but codes are {width} wide")]
    LevelTooDeep {
        level: usize,
        needed: usize,
        width: usize,
    },
    #[error("level must be at least 1")]
    LevelZero,
    #[error(transparent)]
    Miner(#[from] MinerError),
}

/// Replaces every item by its leading `digits_per_level * level` digits.
/// Items that collapse onto the same truncated code are deduplicated within
/// each transaction; transaction count and order are preserved.
pub fn project_to_level(
    data: &Dataset,
    level: usize,
    digits_per_level: usize,
) -> Result<Dataset, MultilevelError> {
    if level == 0 {
        return Err(MultilevelError::LevelZero);
    }
    let width = data.code_width().ok_or(MultilevelError::UncleanedInput)?;
    let kept = level * digits_per_level;
    if kept > width {
        return Err(MultilevelError::LevelTooDeep {
            level,
            needed: kept,
            width,
        });
    }
    if kept == width {
        return Ok(data.clone());
    }
    let divisor = 10u64.pow((width - kept) as u32);
    let projected: Vec<Vec<Item>> = data
        .transactions()
        .iter()
        .map(|txn| txn.iter().map(|&item| item / divisor).collect())
        .collect();
    Ok(Dataset::new(projected, Some(kept)))
}

/// Projects to `config.level`, then mines. At full depth this is exactly
/// `mine_frequent` on the unprojected dataset.
pub fn mine_level(
    data: &Dataset,
    config: &MiningConfig,
) -> Result<FrequentItemsets, MultilevelError> {
    let projected = project_to_level(data, config.level, config.digits_per_level)?;
    Ok(mine_frequent(&projected, config)?)
}
