//! Threaded Wiener index engines and formula-versus-search validation.
//!
//! Work is always split into contiguous row ranges of the vertex order; each
//! range yields an exact integer subtotal and the subtotals are added in range
//! order, so every result is independent of the worker count.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use carpet_core::metric::{vertex_distance, vertex_trace};
use carpet_core::oracle::{bfs_into, row_sum, BfsScratch};
use carpet_core::wiener::{orbit_rows_sum, pairs_in, partition_rows, symmetry_orbits, upper_rows_sum};
use carpet_core::{
    AdjacencyGraph, DistanceTrace, Rule, VertexTable, Word, DEFAULT_ORACLE_LEVEL_CAP, DEFAULT_WORD_LEVEL_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CarpetError, Result};

/// Pairs between two progress lines on the diagnostic stream.
pub const PROGRESS_INTERVAL: u64 = 100_000_000;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "CARPET_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Formula,
    Oracle,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::Both => "both",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "formula" => Ok(Method::Formula),
            "oracle" => Ok(Method::Oracle),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub workers: usize,
    pub rule: Rule,
    /// Sum orbit representatives of the square's symmetry group only.
    pub symmetry: bool,
    pub word_level_cap: usize,
    pub oracle_level_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            workers: default_workers(),
            rule: Rule::Cases,
            symmetry: false,
            word_level_cap: DEFAULT_WORD_LEVEL_CAP,
            oracle_level_cap: DEFAULT_ORACLE_LEVEL_CAP,
        }
    }
}

/// Worker count from `CARPET_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WienerReport {
    pub level: usize,
    pub vertex_count: usize,
    /// The formula total for `Formula` and `Both`, the search total for `Oracle`.
    pub wiener: u128,
    pub method: Method,
    /// `None` for the pure search engine.
    pub rule: Option<Rule>,
    /// Search total when it was computed alongside the formula.
    pub oracle_wiener: Option<u128>,
    /// Pairs whose formula and search distances differ (`Both` only).
    pub mismatch_count: Option<u64>,
    pub elapsed: Duration,
}

impl WienerReport {
    /// `false` only for a `Both` report whose engines disagree.
    pub fn engines_agree(&self) -> bool {
        match (self.oracle_wiener, self.mismatch_count) {
            (Some(o), Some(m)) => o == self.wiener && m == 0,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    Exhaustive,
    Sample { pairs: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub word1: Word,
    pub word2: Word,
    pub formula: u64,
    pub oracle: u64,
    pub trace: DistanceTrace,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub level: usize,
    pub rule: Rule,
    pub mode: ValidationMode,
    pub pairs_checked: u64,
    pub mismatches: Vec<Mismatch>,
    pub elapsed: Duration,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

struct Progress {
    label: &'static str,
    total: u128,
    done: AtomicU64,
}

impl Progress {
    fn new(label: &'static str, total: u128) -> Self {
        Progress { label, total, done: AtomicU64::new(0) }
    }

    fn add(&self, pairs: u64) {
        let before = self.done.fetch_add(pairs, Ordering::Relaxed);
        let after = before + pairs;
        if after / PROGRESS_INTERVAL > before / PROGRESS_INTERVAL {
            let pct = after as f64 * 100.0 / self.total.max(1) as f64;
            log::info!("{}: {} of {} pairs ({pct:.1}%)", self.label, after, self.total);
        }
    }
}

/// Runs `job` over every range on up to `workers` threads and returns the
/// results in range order.
fn run_ranges<T, F>(workers: usize, ranges: &[Range<usize>], job: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync,
{
    if workers <= 1 || ranges.len() <= 1 {
        return ranges.iter().cloned().map(&job).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = std::iter::repeat_with(|| None).take(ranges.len()).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers.min(ranges.len()))
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(r) = ranges.get(i) else { break };
                        done.push((i, job(r.clone())));
                    }
                    done
                })
            })
            .collect();
        for h in handles {
            for (i, value) in h.join().expect("worker panicked") {
                slots[i] = Some(value);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("every range ran")).collect()
}

/// Number of row ranges the work is cut into, whatever the worker count.
pub const WORK_RANGES: usize = 256;

fn even_ranges(n: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.clamp(1, n.max(1));
    (0..parts).map(|k| n * k / parts..n * (k + 1) / parts).collect()
}

/// Wiener index by the word metric over canonical vertices.
pub fn wiener_formula(level: usize, config: &EngineConfig) -> Result<WienerReport> {
    let start = Instant::now();
    if config.symmetry && config.rule != Rule::Complete {
        return Err(CarpetError::SymmetryUnsupported);
    }
    let table = VertexTable::build_with_cap(level, config.word_level_cap)?;
    let wiener = formula_total(&table, config);
    Ok(WienerReport {
        level,
        vertex_count: table.count(),
        wiener,
        method: Method::Formula,
        rule: Some(config.rule),
        oracle_wiener: None,
        mismatch_count: None,
        elapsed: start.elapsed(),
    })
}

fn formula_total(table: &VertexTable, config: &EngineConfig) -> u128 {
    let n = table.count();
    let rule = config.rule;
    if config.symmetry {
        let orbits = symmetry_orbits(table);
        let progress = Progress::new("formula (symmetric)", (orbits.len() * n) as u128);
        let ranges = even_ranges(orbits.len(), WORK_RANGES);
        let parts = run_ranges(config.workers, &ranges, |r| {
            let sum = orbit_rows_sum(table, rule, &orbits[r.clone()]);
            progress.add((r.len() * n) as u64);
            sum
        });
        return parts.into_iter().sum::<u128>() / 2;
    }
    let progress = Progress::new("formula", pairs_in(n, 0..n));
    let ranges = partition_rows(n, WORK_RANGES);
    let parts = run_ranges(config.workers, &ranges, |r| {
        let sum = upper_rows_sum(table, rule, r.clone());
        progress.add(pairs_in(n, r) as u64);
        sum
    });
    parts.into_iter().sum()
}

/// Wiener index by breadth-first search from every vertex.
pub fn wiener_oracle(level: usize, config: &EngineConfig) -> Result<WienerReport> {
    let start = Instant::now();
    let graph = AdjacencyGraph::build_with_cap(level, config.oracle_level_cap)?;
    let wiener = oracle_total(&graph, config.workers);
    Ok(WienerReport {
        level,
        vertex_count: graph.vertex_count(),
        wiener,
        method: Method::Oracle,
        rule: None,
        oracle_wiener: None,
        mismatch_count: None,
        elapsed: start.elapsed(),
    })
}

/// Parallel version of [`carpet_core::oracle_wiener`].
pub fn oracle_total(graph: &AdjacencyGraph, workers: usize) -> u128 {
    let n = graph.vertex_count();
    let progress = Progress::new("oracle", (n as u128) * (n as u128));
    let ranges = even_ranges(n, WORK_RANGES);
    let parts = run_ranges(workers, &ranges, |r| {
        let mut scratch = BfsScratch::new(graph);
        let mut sum = 0u128;
        for s in r.clone() {
            sum += u128::from(row_sum(graph, s, &mut scratch));
        }
        progress.add((r.len() * n) as u64);
        sum
    });
    parts.into_iter().sum::<u128>() / 2
}

/// Both engines in one pass, comparing every pair.
pub fn wiener_both(level: usize, config: &EngineConfig) -> Result<WienerReport> {
    let start = Instant::now();
    let table = VertexTable::build_with_cap(level, config.word_level_cap)?;
    let graph = AdjacencyGraph::build_with_cap(level, config.oracle_level_cap)?;
    let n = table.count();
    let rule = config.rule;
    let progress = Progress::new("formula+oracle", pairs_in(n, 0..n));
    let ranges = partition_rows(n, WORK_RANGES);
    let parts = run_ranges(config.workers, &ranges, |r| {
        let vs = table.vertices();
        let mut scratch = BfsScratch::new(&graph);
        let (mut formula, mut oracle, mut mismatches) = (0u128, 0u128, 0u64);
        for i in r.clone() {
            let dist = bfs_into(&graph, i, &mut scratch);
            for j in i + 1..n {
                let f = vertex_distance(rule, &vs[i], &vs[j]);
                let o = u64::from(dist[j]);
                formula += u128::from(f);
                oracle += u128::from(o);
                mismatches += u64::from(f != o);
            }
        }
        progress.add(pairs_in(n, r) as u64);
        (formula, oracle, mismatches)
    });
    let (formula, oracle, mismatches) =
        parts.into_iter().fold((0u128, 0u128, 0u64), |acc, p| (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2));
    Ok(WienerReport {
        level,
        vertex_count: n,
        wiener: formula,
        method: Method::Both,
        rule: Some(rule),
        oracle_wiener: Some(oracle),
        mismatch_count: Some(mismatches),
        elapsed: start.elapsed(),
    })
}

pub fn wiener(level: usize, method: Method, config: &EngineConfig) -> Result<WienerReport> {
    match method {
        Method::Formula => wiener_formula(level, config),
        Method::Oracle => wiener_oracle(level, config),
        Method::Both => wiener_both(level, config),
    }
}

/// Formula reports for levels `1..=max_level`, cross-checked against the
/// search engine wherever the level is within the oracle cap.
pub fn make_table(max_level: usize, config: &EngineConfig) -> Result<Vec<WienerReport>> {
    (1..=max_level)
        .map(|level| {
            if level <= config.oracle_level_cap {
                wiener_both(level, config)
            } else {
                wiener_formula(level, config)
            }
        })
        .collect()
}

/// Pseudo-random vertex pairs `(i, j)`, `i < j`, determined by the seed.
pub fn sample_pairs(vertex_count: usize, pairs: u64, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(pairs as usize);
    if vertex_count < 2 {
        return out;
    }
    while (out.len() as u64) < pairs {
        let i = rng.gen_range(0..vertex_count as u32);
        let j = rng.gen_range(0..vertex_count as u32);
        if i != j {
            out.push((i.min(j), i.max(j)));
        }
    }
    out
}

/// Compares the word metric with breadth-first distances pair by pair.
pub fn validate(level: usize, mode: ValidationMode, config: &EngineConfig) -> Result<ValidationReport> {
    let start = Instant::now();
    let graph = AdjacencyGraph::build_with_cap(level, config.oracle_level_cap)?;
    let table = VertexTable::build_with_cap(level, config.word_level_cap)?;
    let n = table.count();
    let rule = config.rule;
    let vs = table.vertices();
    let mismatch = |i: usize, j: usize, oracle: u64| {
        let trace = vertex_trace(rule, &vs[i], &vs[j]);
        (trace.value != oracle).then(|| Mismatch {
            word1: vs[i].word.clone(),
            word2: vs[j].word.clone(),
            formula: trace.value,
            oracle,
            trace,
        })
    };

    let (pairs_checked, mismatches) = match mode {
        ValidationMode::Exhaustive => {
            let progress = Progress::new("validate", pairs_in(n, 0..n));
            let ranges = partition_rows(n, WORK_RANGES);
            let parts = run_ranges(config.workers, &ranges, |r| {
                let mut scratch = BfsScratch::new(&graph);
                let mut found = Vec::new();
                for i in r.clone() {
                    let dist = bfs_into(&graph, i, &mut scratch);
                    found.extend((i + 1..n).filter_map(|j| mismatch(i, j, u64::from(dist[j]))));
                }
                progress.add(pairs_in(n, r) as u64);
                found
            });
            (pairs_in(n, 0..n) as u64, parts.into_iter().flatten().collect())
        }
        ValidationMode::Sample { pairs, seed } => {
            let mut sampled = sample_pairs(n, pairs, seed);
            sampled.sort_unstable();
            // contiguous runs of equal sources share one search
            let mut runs: Vec<Range<usize>> = Vec::new();
            let mut s = 0;
            while s < sampled.len() {
                let mut e = s + 1;
                while e < sampled.len() && sampled[e].0 == sampled[s].0 {
                    e += 1;
                }
                runs.push(s..e);
                s = e;
            }
            let progress = Progress::new("validate (sampled)", (runs.len() as u128) * n as u128);
            let ranges = even_ranges(runs.len(), WORK_RANGES);
            let parts = run_ranges(config.workers, &ranges, |r| {
                let mut scratch = BfsScratch::new(&graph);
                let mut found = Vec::new();
                for run in &runs[r.clone()] {
                    let source = sampled[run.start].0 as usize;
                    let dist = bfs_into(&graph, source, &mut scratch);
                    found.extend(
                        sampled[run.clone()]
                            .iter()
                            .filter_map(|&(i, j)| mismatch(i as usize, j as usize, u64::from(dist[j as usize]))),
                    );
                }
                progress.add((r.len() * n) as u64);
                found
            });
            (sampled.len() as u64, parts.into_iter().flatten().collect())
        }
    };

    Ok(ValidationReport { level, rule, mode, pairs_checked, mismatches, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(workers: usize, rule: Rule) -> EngineConfig {
        EngineConfig { workers, rule, ..EngineConfig::default() }
    }

    #[test]
    fn run_ranges_keeps_order() {
        let ranges = even_ranges(100, 17);
        for workers in [1, 2, 5] {
            let out = run_ranges(workers, &ranges, |r| r.start);
            assert_eq!(out, ranges.iter().map(|r| r.start).collect::<Vec<_>>());
        }
    }

    #[test]
    fn even_ranges_cover() {
        for (n, parts) in [(0, 3), (1, 8), (10, 3), (41, 64)] {
            let r = even_ranges(n, parts);
            assert_eq!(r.first().unwrap().start, 0);
            assert_eq!(r.last().unwrap().end, n);
            assert!(r.windows(2).all(|w| w[0].end == w[1].start));
        }
    }

    #[test]
    fn small_levels_all_methods() {
        for (level, w) in [(1, 8u128), (2, 320), (3, 31264)] {
            for rule in [Rule::Cases, Rule::Complete] {
                let cfg = config(2, rule);
                assert_eq!(wiener_formula(level, &cfg).unwrap().wiener, w);
                let both = wiener_both(level, &cfg).unwrap();
                assert_eq!((both.wiener, both.oracle_wiener, both.mismatch_count), (w, Some(w), Some(0)));
                assert!(both.engines_agree());
            }
            assert_eq!(wiener_oracle(level, &config(3, Rule::Cases)).unwrap().wiener, w);
        }
    }

    #[test]
    fn symmetry_needs_invariant_rule() {
        let mut cfg = config(1, Rule::Cases);
        cfg.symmetry = true;
        assert!(matches!(wiener_formula(3, &cfg), Err(CarpetError::SymmetryUnsupported)));
        cfg.rule = Rule::Complete;
        assert_eq!(wiener_formula(3, &cfg).unwrap().wiener, 31264);
    }

    #[test]
    fn validation_counts() {
        let cfg = config(2, Rule::Cases);
        let r = validate(1, ValidationMode::Exhaustive, &cfg).unwrap();
        assert_eq!((r.pairs_checked, r.mismatches.len()), (6, 0));
        let r = validate(3, ValidationMode::Exhaustive, &cfg).unwrap();
        assert_eq!((r.pairs_checked, r.mismatches.len()), (4560, 0));
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_pairs(688, 1000, 42);
        assert_eq!(a, sample_pairs(688, 1000, 42));
        assert_ne!(a, sample_pairs(688, 1000, 43));
        assert!(a.iter().all(|&(i, j)| i < j && (j as usize) < 688));
        assert!(sample_pairs(1, 10, 0).is_empty());
    }

    #[test]
    fn caps_are_reported() {
        let cfg = EngineConfig::default();
        assert!(matches!(
            wiener_formula(99, &cfg),
            Err(CarpetError::Core(carpet_core::Error::LevelCap { level: 99, max: 8 }))
        ));
        assert!(matches!(
            validate(7, ValidationMode::Exhaustive, &cfg),
            Err(CarpetError::Core(carpet_core::Error::LevelCap { level: 7, max: 6 }))
        ));
    }
}
