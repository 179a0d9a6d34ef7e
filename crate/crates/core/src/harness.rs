//! Paired comparison harness: random depth-1 trees, both algorithms on each
//! tree, per-run metrics and per-size aggregates, exported as CSV and JSON.
//!
//! Randomness is pinned so that `(master_seed, config)` determines every
//! output byte. The seed of run `rep` at tree size `size` is
//! `splitmix64(master_seed ^ splitmix64(size ^ splitmix64(rep)))`, and the
//! tree for a run draws its leaf weights from a ChaCha8 stream seeded with
//! that value (`rand_chacha::ChaCha8Rng::seed_from_u64`), each weight
//! uniform over the integers `[weight_min, weight_max]`.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::fs::File;
use std::hash::{Hash, Hasher};
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::hierarchy::HierarchyNode;
use crate::metrics::{compare, LayoutMetrics, Metric, RunRecord};
use crate::plus::layout_plus;
use crate::squarified::layout_squarified;
use crate::Algorithm;

pub const PAPER_SIZES: [usize; 8] = [10, 50, 100, 500, 1000, 2000, 3000, 4000];
pub const PAPER_REPS: usize = 500;
pub const DESK_SIZES: [usize; 3] = [10, 100, 1000];
pub const DESK_REPS: usize = 200;
pub const DEFAULT_SEED: u64 = 42;
pub const WEIGHT_MIN: u32 = 1;
pub const WEIGHT_MAX: u32 = 1_000_000;

pub const RECORDS_HEADER: &str = "size,rep,seed,algo,mean_ar,weighted_mean_ar,std_dev_ar";
pub const STATS_HEADER: &str =
    "size,metric,success_rate,mean_improvement_pct,median_sq,median_plus,max_improvement_pct";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub canvas: Region,
    pub weight_min: u32,
    pub weight_max: u32,
    pub master_seed: u64,
}

impl BenchConfig {
    /// The full matrix: 8 sizes from 10 to 4000 leaves, 500 runs each.
    pub fn paper(master_seed: u64) -> Self {
        BenchConfig {
            sizes: PAPER_SIZES.to_vec(),
            reps: PAPER_REPS,
            ..Self::desk(master_seed)
        }
    }

    /// Sizes 10, 100 and 1000 with 200 runs each; seconds instead of minutes.
    pub fn desk(master_seed: u64) -> Self {
        BenchConfig {
            sizes: DESK_SIZES.to_vec(),
            reps: DESK_REPS,
            canvas: Region {
                x: 0.0,
                y: 0.0,
                width: 1920.0,
                height: 1080.0,
            },
            weight_min: WEIGHT_MIN,
            weight_max: WEIGHT_MAX,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.sizes.is_empty() {
            return bad("at least one tree size is required");
        }
        if self.sizes.contains(&0) {
            return bad("tree sizes must be at least 1");
        }
        if self.reps == 0 {
            return bad("reps must be at least 1");
        }
        if self.weight_min == 0 || self.weight_min > self.weight_max {
            return bad("weight range must satisfy 1 <= min <= max");
        }
        self.canvas.check()?;
        if self.canvas.is_degenerate() {
            return bad("canvas must have positive width and height");
        }
        Ok(())
    }
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self::desk(DEFAULT_SEED)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of run `rep` at tree size `size`.
pub fn derive_seed(master_seed: u64, size: usize, rep: usize) -> u64 {
    splitmix64(master_seed ^ splitmix64(size as u64 ^ splitmix64(rep as u64)))
}

/// A root named `root` with `size` leaves `0..size`, weights in `[1, 1e6]`.
pub fn gen_tree(size: usize, seed: u64) -> Result<HierarchyNode> {
    gen_tree_in(size, seed, WEIGHT_MIN, WEIGHT_MAX)
}

pub fn gen_tree_in(
    size: usize,
    seed: u64,
    weight_min: u32,
    weight_max: u32,
) -> Result<HierarchyNode> {
    if size == 0 {
        return Err(Error::InvalidConfig("tree size must be at least 1".into()));
    }
    if weight_min == 0 || weight_min > weight_max {
        return Err(Error::InvalidConfig(
            "weight range must satisfy 1 <= min <= max".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..size)
        .map(|_| f64::from(rng.random_range(weight_min..=weight_max)))
        .collect();
    Ok(HierarchyNode::flat("root", &weights))
}

/// Stable within one build; used to check that paired runs saw the same tree.
pub fn tree_fingerprint(tree: &HierarchyNode) -> u64 {
    fn feed(node: &HierarchyNode, h: &mut DefaultHasher) {
        node.name.hash(h);
        node.weight.map(f64::to_bits).hash(h);
        node.children.len().hash(h);
        for c in &node.children {
            feed(c, h);
        }
    }
    let mut h = DefaultHasher::new();
    feed(tree, &mut h);
    h.finish()
}

/// Generates the tree for one run and measures both algorithms on it.
pub fn run_rep(cfg: &BenchConfig, size: usize, rep: usize) -> Result<RunRecord> {
    let seed = derive_seed(cfg.master_seed, size, rep);
    let run = || -> Result<RunRecord> {
        let tree = gen_tree_in(size, seed, cfg.weight_min, cfg.weight_max)?;
        let squarified = LayoutMetrics::of(&layout_squarified(&tree, cfg.canvas)?)?;
        let plus = LayoutMetrics::of(&layout_plus(&tree, cfg.canvas)?)?;
        Ok(RunRecord {
            size,
            rep,
            seed,
            squarified,
            plus,
        })
    };
    run().map_err(|e| Error::RunFailed {
        size,
        rep,
        seed,
        source: Box::new(e),
    })
}

/// `reps` paired runs at one tree size, in rep order.
///
/// Runs execute in parallel; each depends only on its derived seed, so the
/// result equals a sequential evaluation.
pub fn run_case(size: usize, reps: usize, cfg: &BenchConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    if size == 0 || reps == 0 {
        return Err(Error::InvalidConfig(
            "size and reps must be at least 1".into(),
        ));
    }
    (0..reps)
        .into_par_iter()
        .map(|rep| run_rep(cfg, size, rep))
        .collect()
}

/// Every configured size, sizes in configuration order.
pub fn run_all(cfg: &BenchConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let mut out = Vec::with_capacity(cfg.sizes.len() * cfg.reps);
    for &size in &cfg.sizes {
        out.extend(run_case(size, cfg.reps, cfg)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricStats {
    pub metric: Metric,
    /// Fraction of runs where Squarified+ was strictly better.
    pub success_rate: f64,
    /// Mean relative improvement over all runs, failures included.
    pub mean_improvement_pct: f64,
    /// Mean relative improvement over successful runs only.
    pub mean_improvement_success_pct: Option<f64>,
    pub median_sq: f64,
    pub median_plus: f64,
    pub max_improvement_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub size: usize,
    pub reps: usize,
    pub metrics: Vec<MetricStats>,
}

impl AggregateStats {
    pub fn metric(&self, metric: Metric) -> &MetricStats {
        self.metrics
            .iter()
            .find(|m| m.metric == metric)
            .expect("aggregate covers every metric")
    }
}

/// Lower median: the element at index `(n - 1) / 2` once sorted.
pub fn lower_median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(v[(v.len() - 1) / 2])
}

/// Success rate, improvements and medians for records of a single tree size.
pub fn aggregate(records: &[RunRecord]) -> Result<AggregateStats> {
    let first = records.first().ok_or(Error::EmptyRecords)?;
    if let Some(other) = records.iter().find(|r| r.size != first.size) {
        return Err(Error::MixedSizes(first.size, other.size));
    }
    let n = records.len() as f64;
    let metrics = Metric::ALL
        .iter()
        .map(|&metric| {
            let cmp: Vec<_> = records.iter().map(|r| compare(r, metric)).collect();
            let successes: Vec<f64> = cmp
                .iter()
                .filter(|c| c.success)
                .map(|c| c.improvement_pct)
                .collect();
            let sq: Vec<f64> = records.iter().map(|r| r.squarified.get(metric)).collect();
            let plus: Vec<f64> = records.iter().map(|r| r.plus.get(metric)).collect();
            MetricStats {
                metric,
                success_rate: successes.len() as f64 / n,
                mean_improvement_pct: cmp.iter().map(|c| c.improvement_pct).sum::<f64>() / n,
                mean_improvement_success_pct: (!successes.is_empty())
                    .then(|| successes.iter().sum::<f64>() / successes.len() as f64),
                median_sq: lower_median(&sq).unwrap_or(f64::NAN),
                median_plus: lower_median(&plus).unwrap_or(f64::NAN),
                max_improvement_pct: cmp
                    .iter()
                    .map(|c| c.improvement_pct)
                    .fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();
    Ok(AggregateStats {
        size: first.size,
        reps: records.len(),
        metrics,
    })
}

/// Groups records by tree size (ascending) and aggregates each group.
pub fn aggregate_by_size(records: &[RunRecord]) -> Result<Vec<AggregateStats>> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut sizes: Vec<usize> = records.iter().map(|r| r.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|size| {
            let group: Vec<RunRecord> =
                records.iter().filter(|r| r.size == size).copied().collect();
            aggregate(&group)
        })
        .collect()
}

/// Formats `v` with `digits` significant digits, `%g` style.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn sig6(v: f64) -> String {
    fmt_sig(v, 6)
}

/// Two rows per record, ordered by size, rep, then algorithm name.
pub fn write_records_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.size, r.rep));
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(RECORDS_HEADER.split(','))?;
    let mut algos = [Algorithm::Plus, Algorithm::Squarified];
    algos.sort_by_key(|a| a.name());
    for r in sorted {
        for algo in algos {
            let m = match algo {
                Algorithm::Squarified => &r.squarified,
                Algorithm::Plus => &r.plus,
            };
            w.write_record([
                r.size.to_string(),
                r.rep.to_string(),
                r.seed.to_string(),
                algo.name().to_string(),
                sig6(m.mean_ar),
                sig6(m.weighted_mean_ar),
                sig6(m.std_dev_ar),
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Parses a records CSV back into paired records.
///
/// The leaf count of each metric set is taken to be the tree size, which
/// holds for the depth-1 trees the harness generates.
pub fn read_records_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != RECORDS_HEADER {
        return Err(Error::MalformedRecords(format!(
            "unexpected header `{}`",
            header.join(",")
        )));
    }
    type Pair = (u64, Option<LayoutMetrics>, Option<LayoutMetrics>);
    let mut pending: IndexMap<(usize, usize), Pair> = IndexMap::new();
    for row in rdr.records() {
        let row = row?;
        let field = |i: usize| row.get(i).unwrap_or_default();
        let bad = |what: &str| {
            Error::MalformedRecords(format!(
                "line {:?}: bad {what}",
                row.position().map(|p| p.line())
            ))
        };
        let size: usize = field(0).parse().map_err(|_| bad("size"))?;
        let rep: usize = field(1).parse().map_err(|_| bad("rep"))?;
        let seed: u64 = field(2).parse().map_err(|_| bad("seed"))?;
        let algo: Algorithm = field(3).parse().map_err(|_| bad("algo"))?;
        let num = |i: usize, what: &str| field(i).parse::<f64>().map_err(|_| bad(what));
        let m = LayoutMetrics {
            mean_ar: num(4, "mean_ar")?,
            weighted_mean_ar: num(5, "weighted_mean_ar")?,
            std_dev_ar: num(6, "std_dev_ar")?,
            n: size,
        };
        let slot = pending.entry((size, rep)).or_insert((seed, None, None));
        let target = match algo {
            Algorithm::Squarified => &mut slot.1,
            Algorithm::Plus => &mut slot.2,
        };
        if target.replace(m).is_some() {
            return Err(bad("duplicate algorithm row"));
        }
    }
    pending
        .into_iter()
        .map(|((size, rep), (seed, sq, plus))| match (sq, plus) {
            (Some(squarified), Some(plus)) => Ok(RunRecord {
                size,
                rep,
                seed,
                squarified,
                plus,
            }),
            _ => Err(Error::MalformedRecords(format!(
                "size {size} rep {rep} lacks one of the two algorithms"
            ))),
        })
        .collect()
}

/// One row per (size, metric), sizes ascending.
pub fn write_stats_csv<W: Write>(out: W, stats: &[AggregateStats]) -> Result<()> {
    let mut sorted: Vec<&AggregateStats> = stats.iter().collect();
    sorted.sort_by_key(|s| s.size);
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(STATS_HEADER.split(','))?;
    for s in sorted {
        for m in &s.metrics {
            w.write_record([
                s.size.to_string(),
                m.metric.name().to_string(),
                sig6(m.success_rate),
                sig6(m.mean_improvement_pct),
                sig6(m.median_sq),
                sig6(m.median_plus),
                sig6(m.max_improvement_pct),
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Csv(c) if c.is_io_error() => match c.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        },
        other => other,
    }
}

pub fn export_records_csv(path: impl AsRef<Path>, records: &[RunRecord]) -> Result<()> {
    let path = path.as_ref();
    write_records_csv(create(path)?, records).map_err(|e| with_path(path, e))
}

pub fn export_stats_csv(path: impl AsRef<Path>, stats: &[AggregateStats]) -> Result<()> {
    let path = path.as_ref();
    write_stats_csv(create(path)?, stats).map_err(|e| with_path(path, e))
}

pub fn export_stats_json(path: impl AsRef<Path>, stats: &[AggregateStats]) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, stats)?;
    w.write_all(b"\n")
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// Human-readable aggregate table, one line per (size, metric).
pub fn summary_table(stats: &[AggregateStats]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>6}  {:<17} {:>8} {:>10} {:>10} {:>9} {:>9} {:>9}",
        "size", "metric", "success", "mean imp%", "succ imp%", "median", "median+", "max imp%"
    );
    for a in stats {
        for m in &a.metrics {
            let succ = m
                .mean_improvement_success_pct
                .map(|v| format!("{v:.3}"))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                s,
                "{:>6}  {:<17} {:>7.1}% {:>10.3} {:>10} {:>9.4} {:>9.4} {:>9.3}",
                a.size,
                m.metric.name(),
                m.success_rate * 100.0,
                m.mean_improvement_pct,
                succ,
                m.median_sq,
                m.median_plus,
                m.max_improvement_pct
            );
        }
    }
    s
}
