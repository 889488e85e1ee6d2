//! Apriori frequent-itemset mining over a prefix trie. Candidate itemsets
//! are stored in a trie keyed by sorted item sequences; support counting is
//! a merge-style descent of each transaction through the trie, and candidate
//! generation joins frequent k-itemsets sharing a (k-1)-prefix and prunes by
//! downward closure.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};

use thiserror::Error;

use crate::dataset::{Dataset, Item};

#[derive(Debug, Error)]
pub enum MinerError {
    #[error("minimum support {0} is outside (0, 1]")]
    BadMinSupport(f64),
    #[error("dataset is empty; the support threshold is undefined")]
    EmptyDataset,
    #[error("itemsets file line {line}: {message}")]
    BadItemsetsFile { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Mining parameters. `level` and `digits_per_level` are consumed by the
/// level-projection front end; `mine_frequent` itself mines whatever dataset
/// it is handed.
#[derive(Debug, Clone)]
pub struct MiningConfig {
    pub min_support: f64,
    pub level: usize,
    pub digits_per_level: usize,
    pub max_itemset_size: Option<usize>,
    pub threads: usize,
}

impl MiningConfig {
    pub fn new(min_support: f64) -> Self {
        MiningConfig {
            min_support,
            level: 3,
            digits_per_level: 2,
            max_itemset_size: None,
            threads: 1,
        }
    }

    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_max_itemset_size(mut self, cap: Option<usize>) -> Self {
        self.max_itemset_size = cap;
        self
    }

    pub fn validate(&self) -> Result<(), MinerError> {
        if !(self.min_support > 0.0 && self.min_support <= 1.0) {
            return Err(MinerError::BadMinSupport(self.min_support));
        }
        Ok(())
    }

    /// Smallest absolute count that meets `min_support` over `n`
    /// transactions: `ceil(min_support * n)`, at least 1.
    pub fn absolute_threshold(&self, n_transactions: usize) -> u64 {
        let t = (self.min_support * n_transactions as f64).ceil() as u64;
        t.max(1)
    }
}

#[derive(Debug, Clone)]
struct Node {
    item: Item,
    count: u64,
    children: Vec<Node>,
}

/// Prefix trie of same-size candidate itemsets. Edge labels along any
/// root-to-node path are strictly increasing; a node at depth k carries the
/// support counter of the k-itemset spelled by its path.
#[derive(Debug, Clone)]
pub struct Trie {
    roots: Vec<Node>,
    depth: usize,
}

impl Trie {
    /// Builds a trie of `depth`-sized candidates with zeroed counters.
    /// Itemsets must be sorted ascending internally and supplied in
    /// lexicographic order.
    pub fn from_itemsets(itemsets: &[Vec<Item>], depth: usize) -> Trie {
        let mut roots: Vec<Node> = Vec::new();
        for set in itemsets {
            debug_assert_eq!(set.len(), depth);
            debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
            let mut nodes = &mut roots;
            for &item in set {
                if nodes.last().map(|n| n.item) != Some(item) {
                    nodes.push(Node {
                        item,
                        count: 0,
                        children: Vec::new(),
                    });
                }
                nodes = &mut nodes.last_mut().unwrap().children;
            }
        }
        Trie { roots, depth }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Number of itemsets (depth-deep nodes) in the trie.
    pub fn len(&self) -> usize {
        fn leaves(nodes: &[Node], remaining: usize) -> usize {
            if remaining == 1 {
                nodes.len()
            } else {
                nodes.iter().map(|n| leaves(&n.children, remaining - 1)).sum()
            }
        }
        if self.depth == 0 {
            0
        } else {
            leaves(&self.roots, self.depth)
        }
    }

    /// All itemsets with their counters, in lexicographic order.
    pub fn itemsets(&self) -> Vec<(Vec<Item>, u64)> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.depth);
        fn walk(
            nodes: &[Node],
            remaining: usize,
            path: &mut Vec<Item>,
            out: &mut Vec<(Vec<Item>, u64)>,
        ) {
            for n in nodes {
                path.push(n.item);
                if remaining == 1 {
                    out.push((path.clone(), n.count));
                } else {
                    walk(&n.children, remaining - 1, path, out);
                }
                path.pop();
            }
        }
        if self.depth > 0 {
            walk(&self.roots, self.depth, &mut path, &mut out);
        }
        out
    }

    pub fn contains(&self, itemset: &[Item]) -> bool {
        if itemset.len() != self.depth {
            return false;
        }
        let mut nodes = &self.roots;
        for (i, &item) in itemset.iter().enumerate() {
            match nodes.binary_search_by_key(&item, |n| n.item) {
                Ok(pos) => {
                    if i + 1 < itemset.len() {
                        nodes = &nodes[pos].children;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }

    /// Drops every itemset whose counter is below `threshold`.
    pub fn retain_frequent(&mut self, threshold: u64) {
        fn retain(nodes: &mut Vec<Node>, remaining: usize, threshold: u64) {
            if remaining == 1 {
                nodes.retain(|n| n.count >= threshold);
            } else {
                for n in nodes.iter_mut() {
                    retain(&mut n.children, remaining - 1, threshold);
                }
                nodes.retain(|n| !n.children.is_empty());
            }
        }
        if self.depth > 0 {
            retain(&mut self.roots, self.depth, threshold);
        }
    }

    fn zeroed(&self) -> Trie {
        let mut t = self.clone();
        fn zero(nodes: &mut [Node]) {
            for n in nodes {
                n.count = 0;
                zero(&mut n.children);
            }
        }
        zero(&mut t.roots);
        t
    }

    fn leaf_counts(&self) -> Vec<u64> {
        let mut out = Vec::new();
        fn walk(nodes: &[Node], remaining: usize, out: &mut Vec<u64>) {
            for n in nodes {
                if remaining == 1 {
                    out.push(n.count);
                } else {
                    walk(&n.children, remaining - 1, out);
                }
            }
        }
        if self.depth > 0 {
            walk(&self.roots, self.depth, &mut out);
        }
        out
    }

    fn add_leaf_counts(&mut self, counts: &[u64]) {
        fn walk(nodes: &mut [Node], remaining: usize, counts: &[u64], idx: &mut usize) {
            for n in nodes {
                if remaining == 1 {
                    n.count += counts[*idx];
                    *idx += 1;
                } else {
                    walk(&mut n.children, remaining - 1, counts, idx);
                }
            }
        }
        let mut idx = 0;
        if self.depth > 0 {
            walk(&mut self.roots, self.depth, counts, &mut idx);
        }
        debug_assert_eq!(idx, counts.len());
    }
}

// Both the node list and the transaction are sorted, so one merge pass
// matches every child; a match at depth 1 increments the counter, otherwise
// the descent continues on the transaction's tail.
fn count_transaction(nodes: &mut [Node], txn: &[Item], remaining: usize) {
    if txn.len() < remaining {
        return;
    }
    let mut pos = 0;
    for node in nodes {
        while pos < txn.len() && txn[pos] < node.item {
            pos += 1;
        }
        if pos == txn.len() {
            return;
        }
        if txn[pos] == node.item {
            if remaining == 1 {
                node.count += 1;
            } else {
                count_transaction(&mut node.children, &txn[pos + 1..], remaining - 1);
            }
        }
    }
}

/// Fills the counters of a candidate trie: each depth-k node ends up with
/// the number of transactions containing its itemset. With `threads > 1`
/// the transaction list is partitioned and per-worker counters are summed,
/// which yields exactly the sequential result.
pub fn count_supports(data: &Dataset, candidates: &mut Trie, threads: usize) {
    let txns = data.transactions();
    let threads = threads.max(1).min(txns.len().max(1));
    if threads == 1 || txns.len() < 1024 {
        for txn in txns {
            count_transaction(&mut candidates.roots, txn, candidates.depth);
        }
        return;
    }
    let chunk = txns.len().div_ceil(threads);
    let template = candidates.zeroed();
    let partials: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = txns
            .chunks(chunk)
            .map(|part| {
                let mut local = template.clone();
                scope.spawn(move || {
                    for txn in part {
                        count_transaction(&mut local.roots, txn, local.depth);
                    }
                    local.leaf_counts()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for counts in partials {
        candidates.add_leaf_counts(&counts);
    }
}

/// Joins frequent k-itemsets sharing their first k-1 items into (k+1)-sets
/// and keeps only those whose every k-subset is frequent.
pub fn generate_candidates(frequent: &Trie) -> Trie {
    let k = frequent.depth();
    let sets: Vec<(Vec<Item>, u64)> = frequent.itemsets();
    let known: HashSet<&[Item]> = sets.iter().map(|(s, _)| s.as_slice()).collect();
    let mut candidates: Vec<Vec<Item>> = Vec::new();

    let mut i = 0;
    while i < sets.len() {
        // group of itemsets sharing the first k-1 items; input is lex sorted
        let prefix = &sets[i].0[..k - 1];
        let mut j = i;
        while j < sets.len() && &sets[j].0[..k - 1] == prefix {
            j += 1;
        }
        for a in i..j {
            for b in a + 1..j {
                let mut cand = sets[a].0.clone();
                cand.push(sets[b].0[k - 1]);
                // the two parents cover the subsets missing position k-1 or
                // k; check the subsets missing one of the first k-1 items
                let mut all_frequent = true;
                let mut subset = Vec::with_capacity(k);
                for drop in 0..k - 1 {
                    subset.clear();
                    subset.extend(cand.iter().enumerate().filter_map(|(idx, &it)| {
                        if idx == drop {
                            None
                        } else {
                            Some(it)
                        }
                    }));
                    if !known.contains(subset.as_slice()) {
                        all_frequent = false;
                        break;
                    }
                }
                if all_frequent {
                    candidates.push(cand);
                }
            }
        }
        i = j;
    }
    Trie::from_itemsets(&candidates, k + 1)
}

/// Frequent itemsets with their absolute support counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequentItemsets {
    itemsets: BTreeMap<Vec<Item>, u64>,
    n_transactions: usize,
}

impl FrequentItemsets {
    pub fn new(n_transactions: usize) -> Self {
        FrequentItemsets {
            itemsets: BTreeMap::new(),
            n_transactions,
        }
    }

    pub fn n_transactions(&self) -> usize {
        self.n_transactions
    }

    pub fn insert(&mut self, itemset: Vec<Item>, count: u64) {
        debug_assert!(itemset.windows(2).all(|w| w[0] < w[1]));
        self.itemsets.insert(itemset, count);
    }

    pub fn support_count(&self, itemset: &[Item]) -> Option<u64> {
        self.itemsets.get(itemset).copied()
    }

    pub fn support(&self, itemset: &[Item]) -> Option<f64> {
        self.support_count(itemset)
            .map(|c| c as f64 / self.n_transactions as f64)
    }

    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Item>, u64)> {
        self.itemsets.iter().map(|(s, &c)| (s, c))
    }

    /// Itemsets ordered by size, then lexicographically — the serialization
    /// order of the itemsets file.
    pub fn sorted_by_len_then_lex(&self) -> Vec<(&Vec<Item>, u64)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }
}

/// Runs the full Apriori loop: count singletons, then alternate candidate
/// generation and counting until no candidate survives the threshold.
pub fn mine_frequent(
    data: &Dataset,
    config: &MiningConfig,
) -> Result<FrequentItemsets, MinerError> {
    config.validate()?;
    if data.is_empty() {
        return Err(MinerError::EmptyDataset);
    }
    let threshold = config.absolute_threshold(data.n_transactions());
    let mut result = FrequentItemsets::new(data.n_transactions());

    let mut singletons: Vec<Item> = data
        .transactions()
        .iter()
        .flatten()
        .copied()
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    singletons.sort_unstable();
    let singleton_sets: Vec<Vec<Item>> = singletons.into_iter().map(|i| vec![i]).collect();
    let mut frequent = Trie::from_itemsets(&singleton_sets, 1);

    loop {
        count_supports(data, &mut frequent, config.threads);
        frequent.retain_frequent(threshold);
        if frequent.is_empty() {
            break;
        }
        for (set, count) in frequent.itemsets() {
            result.insert(set, count);
        }
        if let Some(cap) = config.max_itemset_size {
            if frequent.depth() >= cap {
                break;
            }
        }
        let candidates = generate_candidates(&frequent);
        if candidates.is_empty() {
            break;
        }
        frequent = candidates;
    }
    Ok(result)
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

/// Writes the itemsets file: optional `# key=value` metadata lines, then one
/// line per itemset — items ascending and space-separated, a tab, the
/// absolute support count. Lines are ordered by itemset size, then
/// lexicographically. `# n_transactions=` is always emitted so supports can
/// be recomputed when the file is read back.
pub fn write_itemsets<W: Write>(
    freq: &FrequentItemsets,
    sink: W,
    width: Option<usize>,
    headers: &[(&str, String)],
) -> Result<(), MinerError> {
    let mut w = BufWriter::new(sink);
    for (key, value) in headers {
        writeln!(w, "# {key}={value}")?;
    }
    writeln!(w, "# n_transactions={}", freq.n_transactions())?;
    for (set, count) in freq.sorted_by_len_then_lex() {
        writeln!(w, "{}\t{count}", render_items(set, width))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an itemsets file written by [`write_itemsets`]. Returns the table
/// and the inferred item code width (when all item tokens share one length).
pub fn read_itemsets<R: Read>(source: R) -> Result<(FrequentItemsets, Option<usize>), MinerError> {
    let reader = BufReader::new(source);
    let mut n_transactions: Option<usize> = None;
    let mut sets: Vec<(Vec<Item>, u64)> = Vec::new();
    let mut width: Option<usize> = None;
    let mut uniform = true;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(meta) = trimmed.strip_prefix('#') {
            if let Some(value) = meta.trim().strip_prefix("n_transactions=") {
                n_transactions =
                    Some(value.parse().map_err(|_| MinerError::BadItemsetsFile {
                        line: lineno,
                        message: format!("bad n_transactions value {value:?}"),
                    })?);
            }
            continue;
        }
        let (items_part, count_part) =
            trimmed
                .split_once('\t')
                .ok_or_else(|| MinerError::BadItemsetsFile {
                    line: lineno,
                    message: "expected `items<TAB>count`".into(),
                })?;
        let mut items = Vec::new();
        for token in items_part.split_whitespace() {
            let item: Item = token.parse().map_err(|_| MinerError::BadItemsetsFile {
                line: lineno,
                message: format!("bad item token {token:?}"),
            })?;
            match width {
                None => width = Some(token.len()),
                Some(w) if w != token.len() => uniform = false,
                _ => {}
            }
            items.push(item);
        }
        items.sort_unstable();
        items.dedup();
        let count: u64 = count_part
            .trim()
            .parse()
            .map_err(|_| MinerError::BadItemsetsFile {
                line: lineno,
                message: format!("bad count {count_part:?}"),
            })?;
        sets.push((items, count));
    }
    let n = n_transactions.ok_or(MinerError::BadItemsetsFile {
        line: 0,
        message: "missing `# n_transactions=` header".into(),
    })?;
    let mut freq = FrequentItemsets::new(n);
    for (set, count) in sets {
        freq.insert(set, count);
    }
    Ok((freq, if uniform { width } else { None }))
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Brute-force reference: enumerate every subset of every transaction
    //! and count occurrences directly. Independent of the trie path.

    use std::collections::HashMap;

    use super::FrequentItemsets;
    use crate::dataset::{Dataset, Item};

    pub fn enumerate_supports(data: &Dataset) -> HashMap<Vec<Item>, u64> {
        let mut counts: HashMap<Vec<Item>, u64> = HashMap::new();
        for txn in data.transactions() {
            let n = txn.len();
            assert!(n <= 20, "oracle limited to small transactions");
            for mask in 1u32..(1 << n) {
                let subset: Vec<Item> = (0..n)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| txn[i])
                    .collect();
                *counts.entry(subset).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn brute_force_frequent(data: &Dataset, threshold: u64) -> FrequentItemsets {
        let mut freq = FrequentItemsets::new(data.n_transactions());
        for (set, count) in enumerate_supports(data) {
            if count >= threshold {
                freq.insert(set, count);
            }
        }
        freq
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::read_dat;
    use proptest::prelude::*;

    const FIG1: &str = "102000 113001 135002\n113102 124002 146000\n102001 113101 124202\n102100 113001 135002\n102000 113001 124202\n";

    fn fig1() -> Dataset {
        read_dat(FIG1.as_bytes()).unwrap()
    }

    #[test]
    fn threshold_uses_ceiling() {
        let c = MiningConfig::new(0.5);
        assert_eq!(c.absolute_threshold(5), 3);
        assert_eq!(c.absolute_threshold(4), 2);
        let c = MiningConfig::new(0.01);
        assert_eq!(c.absolute_threshold(5), 1);
    }

    #[test]
    fn count_singleton_candidate() {
        let data = fig1();
        let mut trie = Trie::from_itemsets(&[vec![113001]], 1);
        count_supports(&data, &mut trie, 1);
        assert_eq!(trie.itemsets(), vec![(vec![113001], 3)]);
    }

    #[test]
    fn count_pair_candidate() {
        let data = fig1();
        let mut trie = Trie::from_itemsets(&[vec![113001, 135002]], 2);
        count_supports(&data, &mut trie, 1);
        assert_eq!(trie.itemsets(), vec![(vec![113001, 135002], 2)]);
    }

    #[test]
    fn count_on_empty_dataset_is_zero() {
        let data = Dataset::new(vec![], None);
        let mut trie = Trie::from_itemsets(&[vec![1], vec![2]], 1);
        count_supports(&data, &mut trie, 1);
        assert!(trie.itemsets().iter().all(|&(_, c)| c == 0));
    }

    #[test]
    fn join_generates_all_pairs() {
        let trie = Trie::from_itemsets(&[vec![10], vec![11], vec![12]], 1);
        let cands = generate_candidates(&trie);
        let sets: Vec<Vec<Item>> = cands.itemsets().into_iter().map(|(s, _)| s).collect();
        assert_eq!(sets, vec![vec![10, 11], vec![10, 12], vec![11, 12]]);
    }

    #[test]
    fn prune_removes_unsupported_triple() {
        // {10,12} is not frequent, so {10,11,12} must be pruned
        let trie = Trie::from_itemsets(&[vec![10, 11], vec![11, 12]], 2);
        let cands = generate_candidates(&trie);
        assert!(cands.is_empty());
    }

    #[test]
    fn single_frequent_set_yields_no_candidates() {
        let trie = Trie::from_itemsets(&[vec![10]], 1);
        assert!(generate_candidates(&trie).is_empty());
    }

    #[test]
    fn mine_sample_at_half_support() {
        let data = fig1();
        let freq = mine_frequent(&data, &MiningConfig::new(0.5)).unwrap();
        assert_eq!(freq.len(), 1);
        assert_eq!(freq.support_count(&[113001]), Some(3));
    }

    #[test]
    fn mine_matches_oracle_on_sample() {
        let data = fig1();
        for minsup in [0.2, 0.4, 0.5, 0.8, 1.0] {
            let config = MiningConfig::new(minsup);
            let threshold = config.absolute_threshold(data.n_transactions());
            let mined = mine_frequent(&data, &config).unwrap();
            let oracle = oracle::brute_force_frequent(&data, threshold);
            assert_eq!(mined, oracle, "minsup {minsup}");
        }
    }

    #[test]
    fn full_support_means_every_transaction() {
        let data = read_dat("1 2 3\n1 2\n1 2 4\n".as_bytes()).unwrap();
        let freq = mine_frequent(&data, &MiningConfig::new(1.0)).unwrap();
        let sets: Vec<Vec<Item>> = freq.iter().map(|(s, _)| s.clone()).collect();
        assert_eq!(sets, vec![vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn empty_dataset_is_an_error() {
        let data = Dataset::new(vec![], None);
        assert!(matches!(
            mine_frequent(&data, &MiningConfig::new(0.5)),
            Err(MinerError::EmptyDataset)
        ));
    }

    #[test]
    fn bad_min_support_rejected() {
        let data = fig1();
        for bad in [0.0, -0.5, 1.5] {
            assert!(matches!(
                mine_frequent(&data, &MiningConfig::new(bad)),
                Err(MinerError::BadMinSupport(_))
            ));
        }
    }

    #[test]
    fn max_itemset_size_caps_depth() {
        let data = read_dat("1 2 3\n1 2 3\n".as_bytes()).unwrap();
        let freq = mine_frequent(
            &data,
            &MiningConfig::new(0.5).with_max_itemset_size(Some(2)),
        )
        .unwrap();
        assert!(freq.iter().all(|(s, _)| s.len() <= 2));
        assert_eq!(freq.support_count(&[1, 2]), Some(2));
    }

    #[test]
    fn parallel_counting_matches_sequential() {
        let txns: Vec<Vec<Item>> = (0..3000)
            .map(|i| vec![i % 7, 7 + i % 5, 12 + i % 3])
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        let data = Dataset::new(txns, None);
        let seq = mine_frequent(&data, &MiningConfig::new(0.1)).unwrap();
        let par = mine_frequent(&data, &MiningConfig::new(0.1).with_threads(4)).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn itemsets_file_round_trip() {
        let data = fig1();
        let freq = mine_frequent(&data, &MiningConfig::new(0.2)).unwrap();
        let mut buf = Vec::new();
        write_itemsets(&freq, &mut buf, Some(6), &[]).unwrap();
        let (back, width) = read_itemsets(buf.as_slice()).unwrap();
        assert_eq!(back, freq);
        assert_eq!(width, Some(6));
    }

    #[test]
    fn itemsets_file_is_sorted_by_len_then_lex() {
        let mut freq = FrequentItemsets::new(10);
        freq.insert(vec![2, 3], 4);
        freq.insert(vec![10], 5);
        freq.insert(vec![2], 6);
        let mut buf = Vec::new();
        write_itemsets(&freq, &mut buf, None, &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# n_transactions=10\n2\t6\n10\t5\n2 3\t4\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // oracle equivalence on small random datasets
        #[test]
        fn mine_matches_brute_force(
            txns in proptest::collection::vec(
                proptest::collection::vec(0u64..12, 1..8), 1..40),
            minsup in 0.05f64..0.9,
        ) {
            let data = Dataset::new(txns, None);
            let config = MiningConfig::new(minsup);
            let threshold = config.absolute_threshold(data.n_transactions());
            let mined = mine_frequent(&data, &config).unwrap();
            let oracle = oracle::brute_force_frequent(&data, threshold);
            prop_assert_eq!(mined, oracle);
        }

        // anti-monotonicity: raising minsup can only shrink the result
        #[test]
        fn higher_threshold_is_subset(
            txns in proptest::collection::vec(
                proptest::collection::vec(0u64..10, 1..6), 1..30),
            a in 0.05f64..0.5,
            delta in 0.05f64..0.5,
        ) {
            let data = Dataset::new(txns, None);
            let low = mine_frequent(&data, &MiningConfig::new(a)).unwrap();
            let high = mine_frequent(&data, &MiningConfig::new(a + delta)).unwrap();
            for (set, count) in high.iter() {
                prop_assert_eq!(low.support_count(set), Some(count));
            }
        }

        // downward closure of the output
        #[test]
        fn output_is_downward_closed(
            txns in proptest::collection::vec(
                proptest::collection::vec(0u64..10, 1..6), 1..30),
            minsup in 0.05f64..0.9,
        ) {
            let data = Dataset::new(txns, None);
            let freq = mine_frequent(&data, &MiningConfig::new(minsup)).unwrap();
            for (set, _) in freq.iter() {
                if set.len() > 1 {
                    for drop in 0..set.len() {
                        let subset: Vec<Item> = set
                            .iter()
                            .enumerate()
                            .filter_map(|(i, &x)| if i == drop { None } else { Some(x) })
                            .collect();
                        prop_assert!(freq.support_count(&subset).is_some());
                    }
                }
            }
        }
    }
}
