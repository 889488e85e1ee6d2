//! Association-rule generation. Every frequent itemset of size k splits into
//! 2^k - 2 candidate rules (each proper nonempty subset as antecedent, the
//! complement as consequent); a rule survives when its confidence meets the
//! threshold.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::{BufWriter, Write};

use thiserror::Error;

use crate::dataset::Item;
use crate::miner::FrequentItemsets;

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("minimum confidence {0} is outside (0, 1]")]
    BadMinConfidence(f64),
    #[error("itemset {0:?} is not in the frequent table; input violates downward closure")]
    NotFrequent(Vec<Item>),
    #[error("antecedent and consequent must be disjoint and non-empty")]
    BadPartition,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// An association rule `antecedent -> consequent` with its support and
/// confidence fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedent: Vec<Item>,
    pub consequent: Vec<Item>,
    pub support: f64,
    pub confidence: f64,
}

/// support = count(A ∪ B) / n, confidence = count(A ∪ B) / count(A).
pub fn rule_metrics(
    freq: &FrequentItemsets,
    antecedent: &[Item],
    consequent: &[Item],
) -> Result<(f64, f64), RuleError> {
    if antecedent.is_empty()
        || consequent.is_empty()
        || antecedent.iter().any(|i| consequent.contains(i))
    {
        return Err(RuleError::BadPartition);
    }
    let mut union: Vec<Item> = antecedent.iter().chain(consequent).copied().collect();
    union.sort_unstable();
    union.dedup();
    let union_count = freq
        .support_count(&union)
        .ok_or(RuleError::NotFrequent(union))?;
    let ante_count = freq
        .support_count(antecedent)
        .ok_or_else(|| RuleError::NotFrequent(antecedent.to_vec()))?;
    // antecedent is frequent, so its count is at least the threshold >= 1
    assert!(ante_count > 0);
    let support = union_count as f64 / freq.n_transactions() as f64;
    let confidence = union_count as f64 / ante_count as f64;
    Ok((support, confidence))
}

fn rule_order(a: &Rule, b: &Rule) -> Ordering {
    b.confidence
        .partial_cmp(&a.confidence)
        .unwrap_or(Ordering::Equal)
        .then_with(|| b.support.partial_cmp(&a.support).unwrap_or(Ordering::Equal))
        .then_with(|| a.antecedent.cmp(&b.antecedent))
        .then_with(|| a.consequent.cmp(&b.consequent))
}

/// Emits every rule A -> B with A ∪ B frequent and confidence at or above
/// `min_confidence`, ordered by descending confidence, then descending
/// support, then lexicographically.
pub fn generate_rules(
    freq: &FrequentItemsets,
    min_confidence: f64,
) -> Result<Vec<Rule>, RuleError> {
    if !(min_confidence > 0.0 && min_confidence <= 1.0) {
        return Err(RuleError::BadMinConfidence(min_confidence));
    }
    let mut rules = Vec::new();
    for (itemset, union_count) in freq.iter() {
        let k = itemset.len();
        if k < 2 {
            continue;
        }
        for mask in 1u64..((1 << k) - 1) {
            let mut antecedent = Vec::new();
            let mut consequent = Vec::new();
            for (i, &item) in itemset.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    antecedent.push(item);
                } else {
                    consequent.push(item);
                }
            }
            let ante_count = freq
                .support_count(&antecedent)
                .ok_or_else(|| RuleError::NotFrequent(antecedent.clone()))?;
            let confidence = union_count as f64 / ante_count as f64;
            if confidence >= min_confidence {
                rules.push(Rule {
                    antecedent,
                    consequent,
                    support: union_count as f64 / freq.n_transactions() as f64,
                    confidence,
                });
            }
        }
    }
    rules.sort_by(rule_order);
    Ok(rules)
}

fn render_items(items: &[Item], width: Option<usize>) -> String {
    let mut s = String::new();
    for (i, &item) in items.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        match width {
            Some(w) => {
                let _ = write!(s, "{item:0w$}");
            }
            None => {
                let _ = write!(s, "{item}");
            }
        }
    }
    s
}

/// One rule per line: `A_items -> B_items<TAB>support<TAB>confidence`, item
/// lists space-separated ascending, ratios with six decimal places.
pub fn write_rules<W: Write>(
    rules: &[Rule],
    sink: W,
    width: Option<usize>,
) -> Result<(), RuleError> {
    let mut w = BufWriter::new(sink);
    for rule in rules {
        writeln!(
            w,
            "{} -> {}\t{:.6}\t{:.6}",
            render_items(&rule.antecedent, width),
            render_items(&rule.consequent, width),
            rule.support,
            rule.confidence
        )?;
    }
    w.flush()?;
    Ok(())
}
