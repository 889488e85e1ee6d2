//! Multilevel frequent-itemset and association-rule mining over
//! hierarchically coded market-basket data.
//!
//! Items are identified by fixed-width decimal codes whose digit pairs spell
//! a category / brand / pack concept hierarchy. Truncating every code to its
//! first `2 * L` digits projects a transaction file onto hierarchy level L,
//! and an Apriori engine built on a prefix trie mines the projected dataset.
//! The crate also ships the supporting pieces: a name-to-code codec, a
//! width-normalizing cleaning pass, FIMI `.dat` file handling, rule
//! generation, and a timing harness, all reachable from the `hiermine` CLI.
//!
//! ```
//! use hiermine::dataset::read_dat;
//! use hiermine::miner::MiningConfig;
//! use hiermine::multilevel::mine_level;
//!
//! let data = read_dat("102000 113001\n102101 113001\n".as_bytes()).unwrap();
//! let freq = mine_level(&data, &MiningConfig::new(0.5).with_level(1)).unwrap();
//! assert_eq!(freq.support_count(&[10, 11]), Some(2));
//! ```

pub mod bench;
pub mod clean;
pub mod codec;
pub mod dataset;
pub mod miner;
pub mod multilevel;
pub mod rules;

// The guide chapters under book/ double as doc-tests so their snippets stay
// compilable.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(coding, "../../../book/src/coding.md");
    chapter!(cleaning, "../../../book/src/cleaning.md");
    chapter!(datasets, "../../../book/src/datasets.md");
    chapter!(mining, "../../../book/src/mining.md");
    chapter!(levels, "../../../book/src/levels.md");
    chapter!(rules, "../../../book/src/rules.md");
    chapter!(benchmarking, "../../../book/src/benchmarking.md");
}
