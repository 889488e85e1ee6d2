//! Hierarchical item coding: category, brand and pack names map to fixed
//! two-digit segments, and an item is the concatenation of its three
//! segments. A six-digit code therefore spells a three-level concept
//! hierarchy, and truncating a code to its first `2 * level` digits projects
//! the item to that hierarchy level.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use thiserror::Error;

use crate::dataset::{Dataset, Item};

/// Shape of the coding scheme: number of hierarchy levels and digits per
/// level. The default is three levels of two digits, i.e. six-digit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeConfig {
    pub levels: usize,
    pub digits_per_level: usize,
}

impl Default for CodeConfig {
    fn default() -> Self {
        CodeConfig {
            levels: 3,
            digits_per_level: 2,
        }
    }
}

impl CodeConfig {
    pub fn code_width(&self) -> usize {
        self.levels * self.digits_per_level
    }

    /// Maximum entries per scope (100 for two-digit segments).
    pub fn scope_capacity(&self) -> usize {
        10usize.pow(self.digits_per_level as u32)
    }
}

/// A full-width item code: exactly `code_width` decimal digits, two per
/// hierarchy level, level 1 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemCode {
    digits: String,
}

impl ItemCode {
    pub fn new(digits: &str, config: &CodeConfig) -> Result<Self, CodecError> {
        let width = config.code_width();
        if digits.len() != width || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CodecError::BadCode {
                code: digits.to_string(),
                width,
            });
        }
        Ok(ItemCode {
            digits: digits.to_string(),
        })
    }

    pub fn as_str(&self) -> &str {
        &self.digits
    }

    /// The integer value of the code. Leading zeros are recovered from the
    /// dataset's fixed code width when rendering.
    pub fn to_item(&self) -> Item {
        self.digits.parse().expect("validated digits")
    }
}

impl fmt::Display for ItemCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits)
    }
}

/// A code truncated to hierarchy level L: the leftmost `2 * L` digits of an
/// item code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelCode {
    digits: String,
    level: usize,
}

impl LevelCode {
    pub fn as_str(&self) -> &str {
        &self.digits
    }

    pub fn level(&self) -> usize {
        self.level
    }
}

impl fmt::Display for LevelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits)
    }
}

/// Keeps the first `digits_per_level * level` digits of a code.
pub fn truncate_to_level(
    code: &ItemCode,
    level: usize,
    config: &CodeConfig,
) -> Result<LevelCode, CodecError> {
    if level < 1 || level > config.levels {
        return Err(CodecError::BadLevel {
            level,
            levels: config.levels,
        });
    }
    let kept = config.digits_per_level * level;
    Ok(LevelCode {
        digits: code.digits[..kept].to_string(),
        level,
    })
}

/// One item named through all three hierarchy levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemDescription {
    pub category: String,
    pub brand: String,
    pub pack: String,
}

impl ItemDescription {
    pub fn new(category: &str, brand: &str, pack: &str) -> Self {
        ItemDescription {
            category: category.to_string(),
            brand: brand.to_string(),
            pack: pack.to_string(),
        }
    }
}

/// Which hierarchy level a lookup failed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Category,
    Brand,
    Pack,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::Category => "category",
            Level::Brand => "brand",
            Level::Pack => "pack",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("{file} line {line}: expected {expected} tab-separated fields")]
    BadRecord {
        file: String,
        line: usize,
        expected: usize,
    },
    #[error("{file} line {line}: segment {segment:?} is not exactly {width} decimal digits")]
    BadSegment {
        file: String,
        line: usize,
        segment: String,
        width: usize,
    },
    #[error(
        "{file} line {line}: {kind} {value:?} conflicts with line {first_line} in the same scope"
    )]
    Conflict {
        file: String,
        line: usize,
        first_line: usize,
        kind: &'static str,
        value: String,
    },
    #[error("{file} line {line}: scope already holds {capacity} entries")]
    CapacityExceeded {
        file: String,
        line: usize,
        capacity: usize,
    },
    #[error("unknown {level} name {name:?}")]
    UnknownName { level: Level, name: String },
    #[error("unknown {level} segment {segment:?}")]
    UnknownSegment { level: Level, segment: String },
    #[error("code {code:?} is not {width} decimal digits")]
    BadCode { code: String, width: usize },
    #[error("level {level} out of range 1..={levels}")]
    BadLevel { level: usize, levels: usize },
    #[error("transaction {row}, item {item:?}: {source}")]
    AtRow {
        row: usize,
        item: String,
        source: Box<CodecError>,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// One naming scope: names of a single parent (all categories, the brands of
/// one category, the packs of one brand) mapped to two-digit segments.
/// Lookup is case-insensitive on trimmed names; the display spelling of the
/// first occurrence is kept for decoding.
#[derive(Debug, Clone, Default)]
struct Scope {
    by_name: HashMap<String, String>,
    by_segment: HashMap<String, String>,
    lines: HashMap<String, usize>,
}

fn normalize(name: &str) -> String {
    name.trim().to_lowercase()
}

impl Scope {
    fn insert(
        &mut self,
        name: &str,
        segment: &str,
        file: &str,
        line: usize,
        capacity: usize,
    ) -> Result<(), CodecError> {
        let key = normalize(name);
        if let Some(&first_line) = self.lines.get(&key) {
            return Err(CodecError::Conflict {
                file: file.to_string(),
                line,
                first_line,
                kind: "name",
                value: name.trim().to_string(),
            });
        }
        if let Some(prev) = self.by_segment.get(segment) {
            let first_line = self.lines[&normalize(prev)];
            return Err(CodecError::Conflict {
                file: file.to_string(),
                line,
                first_line,
                kind: "segment",
                value: segment.to_string(),
            });
        }
        if self.by_name.len() >= capacity {
            return Err(CodecError::CapacityExceeded {
                file: file.to_string(),
                line,
                capacity,
            });
        }
        self.by_name.insert(key.clone(), segment.to_string());
        self.by_segment
            .insert(segment.to_string(), name.trim().to_string());
        self.lines.insert(key, line);
        Ok(())
    }

    fn segment(&self, name: &str) -> Option<&str> {
        self.by_name.get(&normalize(name)).map(String::as_str)
    }

    fn name(&self, segment: &str) -> Option<&str> {
        self.by_segment.get(segment).map(String::as_str)
    }
}

/// The three code tables: categories, brands within a category, packs within
/// a brand. Immutable after loading.
#[derive(Debug, Clone, Default)]
pub struct CodeBook {
    config: CodeConfig,
    categories: Scope,
    brands: HashMap<String, Scope>,
    packs: HashMap<(String, String), Scope>,
}

struct Record {
    line: usize,
    fields: Vec<String>,
}

fn read_records<R: Read>(
    source: R,
    file: &str,
    n_fields: usize,
) -> Result<Vec<Record>, CodecError> {
    let reader = BufReader::new(source);
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| CodecError::Io {
            path: file.to_string(),
            source: e,
        })?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line.split('\t').map(|s| s.to_string()).collect();
        if fields.len() != n_fields {
            return Err(CodecError::BadRecord {
                file: file.to_string(),
                line: idx + 1,
                expected: n_fields,
            });
        }
        records.push(Record {
            line: idx + 1,
            fields,
        });
    }
    Ok(records)
}

fn check_segment(
    segment: &str,
    file: &str,
    line: usize,
    width: usize,
) -> Result<(), CodecError> {
    if segment.len() != width || !segment.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CodecError::BadSegment {
            file: file.to_string(),
            line,
            segment: segment.to_string(),
            width,
        });
    }
    Ok(())
}

impl CodeBook {
    pub fn config(&self) -> &CodeConfig {
        &self.config
    }

    /// Loads the three tab-separated code tables. Category records are
    /// `name<TAB>segment`, brand records `category_segment<TAB>name<TAB>segment`,
    /// pack records `category_segment<TAB>brand_segment<TAB>name<TAB>segment`.
    pub fn load<R1: Read, R2: Read, R3: Read>(
        category_table: R1,
        brand_table: R2,
        pack_table: R3,
        config: CodeConfig,
    ) -> Result<Self, CodecError> {
        let w = config.digits_per_level;
        let cap = config.scope_capacity();
        let mut book = CodeBook {
            config,
            ..CodeBook::default()
        };

        for rec in read_records(category_table, "categories", 2)? {
            let (name, seg) = (&rec.fields[0], &rec.fields[1]);
            check_segment(seg, "categories", rec.line, w)?;
            book.categories
                .insert(name, seg, "categories", rec.line, cap)?;
        }
        for rec in read_records(brand_table, "brands", 3)? {
            let (cat, name, seg) = (&rec.fields[0], &rec.fields[1], &rec.fields[2]);
            check_segment(cat, "brands", rec.line, w)?;
            check_segment(seg, "brands", rec.line, w)?;
            book.brands
                .entry(cat.clone())
                .or_default()
                .insert(name, seg, "brands", rec.line, cap)?;
        }
        for rec in read_records(pack_table, "packs", 4)? {
            let (cat, brand, name, seg) =
                (&rec.fields[0], &rec.fields[1], &rec.fields[2], &rec.fields[3]);
            check_segment(cat, "packs", rec.line, w)?;
            check_segment(brand, "packs", rec.line, w)?;
            check_segment(seg, "packs", rec.line, w)?;
            book.packs
                .entry((cat.clone(), brand.clone()))
                .or_default()
                .insert(name, seg, "packs", rec.line, cap)?;
        }
        Ok(book)
    }

    pub fn load_files<P: AsRef<Path>>(
        category_path: P,
        brand_path: P,
        pack_path: P,
        config: CodeConfig,
    ) -> Result<Self, CodecError> {
        let open = |p: &Path| {
            File::open(p).map_err(|e| CodecError::Io {
                path: p.display().to_string(),
                source: e,
            })
        };
        let cat = open(category_path.as_ref())?;
        let brand = open(brand_path.as_ref())?;
        let pack = open(pack_path.as_ref())?;
        CodeBook::load(cat, brand, pack, config)
    }

    pub fn is_empty(&self) -> bool {
        self.categories.by_name.is_empty()
    }

    pub fn category_segment(&self, name: &str) -> Option<&str> {
        self.categories.segment(name)
    }

    /// Concatenates the category, brand and pack segments of an item.
    pub fn encode_item(&self, item: &ItemDescription) -> Result<ItemCode, CodecError> {
        let cat = self
            .categories
            .segment(&item.category)
            .ok_or_else(|| CodecError::UnknownName {
                level: Level::Category,
                name: item.category.clone(),
            })?;
        let brand = self
            .brands
            .get(cat)
            .and_then(|s| s.segment(&item.brand))
            .ok_or_else(|| CodecError::UnknownName {
                level: Level::Brand,
                name: item.brand.clone(),
            })?;
        let pack = self
            .packs
            .get(&(cat.to_string(), brand.to_string()))
            .and_then(|s| s.segment(&item.pack))
            .ok_or_else(|| CodecError::UnknownName {
                level: Level::Pack,
                name: item.pack.clone(),
            })?;
        let digits = format!("{cat}{brand}{pack}");
        ItemCode::new(&digits, &self.config)
    }

    /// Inverse of [`CodeBook::encode_item`].
    pub fn decode_item(&self, code: &ItemCode) -> Result<ItemDescription, CodecError> {
        let names = self.decode_segments(code.as_str())?;
        Ok(ItemDescription {
            category: names[0].clone(),
            brand: names[1].clone(),
            pack: names[2].clone(),
        })
    }

    /// Decodes a full or truncated code into the names of the levels it
    /// covers: `[category]`, `[category, brand]` or `[category, brand, pack]`.
    pub fn decode_segments(&self, digits: &str) -> Result<Vec<String>, CodecError> {
        let w = self.config.digits_per_level;
        if digits.is_empty()
            || digits.len() % w != 0
            || digits.len() > self.config.code_width()
            || !digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(CodecError::BadCode {
                code: digits.to_string(),
                width: self.config.code_width(),
            });
        }
        let mut names = Vec::new();
        let cat_seg = &digits[..w];
        let cat = self
            .categories
            .name(cat_seg)
            .ok_or_else(|| CodecError::UnknownSegment {
                level: Level::Category,
                segment: cat_seg.to_string(),
            })?;
        names.push(cat.to_string());
        if digits.len() >= 2 * w {
            let brand_seg = &digits[w..2 * w];
            let brand = self
                .brands
                .get(cat_seg)
                .and_then(|s| s.name(brand_seg))
                .ok_or_else(|| CodecError::UnknownSegment {
                    level: Level::Brand,
                    segment: brand_seg.to_string(),
                })?;
            names.push(brand.to_string());
            if digits.len() >= 3 * w {
                let pack_seg = &digits[2 * w..3 * w];
                let pack = self
                    .packs
                    .get(&(cat_seg.to_string(), brand_seg.to_string()))
                    .and_then(|s| s.name(pack_seg))
                    .ok_or_else(|| CodecError::UnknownSegment {
                        level: Level::Pack,
                        segment: pack_seg.to_string(),
                    })?;
                names.push(pack.to_string());
            }
        }
        Ok(names)
    }

    /// Encodes a list of transactions into a coded dataset. Row order is
    /// preserved; the dataset carries the book's code width.
    pub fn encode_transactions(
        &self,
        transactions: &[Vec<ItemDescription>],
    ) -> Result<Dataset, CodecError> {
        let mut rows = Vec::with_capacity(transactions.len());
        for (i, txn) in transactions.iter().enumerate() {
            let mut coded = Vec::with_capacity(txn.len());
            for item in txn {
                let code = self.encode_item(item).map_err(|e| CodecError::AtRow {
                    row: i + 1,
                    item: format!("{} {} {}", item.category, item.brand, item.pack),
                    source: Box::new(e),
                })?;
                coded.push(code.to_item());
            }
            rows.push(coded);
        }
        Ok(Dataset::new(rows, Some(self.config.code_width())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Sample grocery code tables used throughout the unit tests.
    pub(crate) const CATEGORIES: &str =
        "Milk\t10\nBread\t11\nBiscuit\t12\nButter\t13\nAtta\t14\n";
    pub(crate) const BRANDS: &str =
        "10\tAmul\t20\n10\tMother Dairy\t21\n10\tSanchi\t22\n10\tParas\t23\n10\tJersey\t24\n";
    pub(crate) const PACKS: &str = "10\t20\t200ml\t00\n10\t20\t500ml\t01\n10\t20\t1000ml\t02\n10\t20\t2000ml\t03\n10\t21\t200ml\t00\n10\t21\t500ml\t01\n10\t22\t200ml\t00\n10\t23\t1000ml\t02\n10\t24\t2000ml\t03\n";

    pub(crate) fn sample_book() -> CodeBook {
        CodeBook::load(
            CATEGORIES.as_bytes(),
            BRANDS.as_bytes(),
            PACKS.as_bytes(),
            CodeConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn loads_category_table() {
        let book = sample_book();
        assert_eq!(book.category_segment("Milk"), Some("10"));
        assert_eq!(book.category_segment("Atta"), Some("14"));
    }

    #[test]
    fn empty_tables_give_empty_book() {
        let book = CodeBook::load(
            "".as_bytes(),
            "".as_bytes(),
            "".as_bytes(),
            CodeConfig::default(),
        )
        .unwrap();
        assert!(book.is_empty());
        assert!(book
            .encode_item(&ItemDescription::new("Milk", "Amul", "200ml"))
            .is_err());
    }

    #[test]
    fn duplicate_segment_conflict_names_both_rows() {
        let err = CodeBook::load(
            "Milk\t10\nBread\t10\n".as_bytes(),
            "".as_bytes(),
            "".as_bytes(),
            CodeConfig::default(),
        )
        .unwrap_err();
        match err {
            CodecError::Conflict {
                line, first_line, ..
            } => assert_eq!((first_line, line), (1, 2)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bad_segment_rejected() {
        let err = CodeBook::load(
            "Milk\t1A\n".as_bytes(),
            "".as_bytes(),
            "".as_bytes(),
            CodeConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CodecError::BadSegment { .. }));
    }

    #[test]
    fn scope_holds_at_most_hundred_entries() {
        // 100 distinct segments load fine; the 101st entry must reuse one of
        // the two-digit segments and always fails.
        let mut table = String::new();
        for i in 0..100 {
            table.push_str(&format!("name{i}\t{i:02}\n"));
        }
        assert!(CodeBook::load(
            table.as_bytes(),
            "".as_bytes(),
            "".as_bytes(),
            CodeConfig::default(),
        )
        .is_ok());

        table.push_str("name100\t37\n");
        assert!(CodeBook::load(
            table.as_bytes(),
            "".as_bytes(),
            "".as_bytes(),
            CodeConfig::default(),
        )
        .is_err());
    }

    #[test]
    fn encode_matches_published_codes() {
        let book = sample_book();
        let code = book
            .encode_item(&ItemDescription::new("Milk", "Amul", "200ml"))
            .unwrap();
        assert_eq!(code.as_str(), "102000");
        let code = book
            .encode_item(&ItemDescription::new("Milk", "Mother Dairy", "500ml"))
            .unwrap();
        assert_eq!(code.as_str(), "102101");
    }

    #[test]
    fn encode_unknown_brand_names_level() {
        let book = sample_book();
        let err = book
            .encode_item(&ItemDescription::new("Milk", "UnknownBrand", "200ml"))
            .unwrap_err();
        match err {
            CodecError::UnknownName { level, .. } => assert_eq!(level, Level::Brand),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn decode_matches_published_items() {
        let book = sample_book();
        let config = CodeConfig::default();
        let d = book
            .decode_item(&ItemCode::new("102302", &config).unwrap())
            .unwrap();
        assert_eq!(d, ItemDescription::new("Milk", "Paras", "1000ml"));
        let d = book
            .decode_item(&ItemCode::new("102000", &config).unwrap())
            .unwrap();
        assert_eq!(d, ItemDescription::new("Milk", "Amul", "200ml"));
    }

    #[test]
    fn decode_unknown_category_segment() {
        let book = sample_book();
        let err = book
            .decode_item(&ItemCode::new("990000", &CodeConfig::default()).unwrap())
            .unwrap_err();
        match err {
            CodecError::UnknownSegment { level, segment } => {
                assert_eq!(level, Level::Category);
                assert_eq!(segment, "99");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn truncation_levels() {
        let config = CodeConfig::default();
        let code = ItemCode::new("102101", &config).unwrap();
        assert_eq!(truncate_to_level(&code, 1, &config).unwrap().as_str(), "10");
        assert_eq!(
            truncate_to_level(&code, 2, &config).unwrap().as_str(),
            "1021"
        );
        assert_eq!(
            truncate_to_level(&code, 3, &config).unwrap().as_str(),
            "102101"
        );
        assert!(truncate_to_level(&code, 4, &config).is_err());
        assert!(truncate_to_level(&code, 0, &config).is_err());
    }

    #[test]
    fn truncation_prefix_consistency() {
        let config = CodeConfig::default();
        let code = ItemCode::new("135002", &config).unwrap();
        for level in 1..config.levels {
            let a = truncate_to_level(&code, level, &config).unwrap();
            let b = truncate_to_level(&code, level + 1, &config).unwrap();
            assert!(b.as_str().starts_with(a.as_str()));
        }
    }

    #[test]
    fn round_trip_every_entry() {
        let book = sample_book();
        let packs = [
            ("Amul", ["200ml", "500ml", "1000ml", "2000ml"].as_slice()),
            ("Mother Dairy", ["200ml", "500ml"].as_slice()),
            ("Sanchi", ["200ml"].as_slice()),
            ("Paras", ["1000ml"].as_slice()),
            ("Jersey", ["2000ml"].as_slice()),
        ];
        for (brand, sizes) in packs {
            for pack in sizes {
                let d = ItemDescription::new("Milk", brand, pack);
                let code = book.encode_item(&d).unwrap();
                assert_eq!(book.decode_item(&code).unwrap(), d);
                let again = book.encode_item(&book.decode_item(&code).unwrap()).unwrap();
                assert_eq!(again, code);
            }
        }
    }

    #[test]
    fn names_match_case_insensitively() {
        let book = sample_book();
        let code = book
            .encode_item(&ItemDescription::new(" milk ", "MOTHER DAIRY", "500ml"))
            .unwrap();
        assert_eq!(code.as_str(), "102101");
    }

    #[test]
    fn encode_transactions_preserves_rows() {
        let book = sample_book();
        let rows = vec![
            vec![
                ItemDescription::new("Milk", "Amul", "200ml"),
                ItemDescription::new("Milk", "Paras", "1000ml"),
            ],
            vec![ItemDescription::new("Milk", "Jersey", "2000ml")],
        ];
        let data = book.encode_transactions(&rows).unwrap();
        assert_eq!(data.n_transactions(), 2);
        assert_eq!(data.code_width(), Some(6));
        assert_eq!(data.transactions()[0], vec![102000, 102302]);
        assert_eq!(data.transactions()[1], vec![102403]);
    }

    #[test]
    fn encode_transactions_empty() {
        let book = sample_book();
        let data = book.encode_transactions(&[]).unwrap();
        assert_eq!(data.n_transactions(), 0);
    }

    #[test]
    fn encode_transactions_error_cites_row() {
        let book = sample_book();
        let rows = vec![vec![ItemDescription::new("Milk", "Nowhere", "200ml")]];
        let err = book.encode_transactions(&rows).unwrap_err();
        match err {
            CodecError::AtRow { row, .. } => assert_eq!(row, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
