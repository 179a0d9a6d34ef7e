//! Exit criteria for the layout engine and comparison harness.
//!
//! Each criterion prints one PASS/FAIL line; run with
//! `cargo test -p treemap-core --test acceptance -- --nocapture --test-threads=1`.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use treemap_core::harness::{self, gen_tree, AggregateStats, BenchConfig};
use treemap_core::metrics::RunRecord;
use treemap_core::{
    layout_plus, layout_plus_traced, layout_plus_with, layout_squarified, HierarchyNode,
    InversionRule, LayoutDocument, LayoutMetrics, Metric, Region,
};

use common::{random_canvas, random_tree, rng, tiling_report};

fn verdict(id: &str, title: &str, ok: bool, detail: String) {
    println!(
        "{} {id} {title}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{id} {title}: {detail}");
}

const DESK_SEED: u64 = 42;

fn desk_run() -> &'static (Vec<RunRecord>, Vec<AggregateStats>, Duration) {
    static RUN: OnceLock<(Vec<RunRecord>, Vec<AggregateStats>, Duration)> = OnceLock::new();
    RUN.get_or_init(|| {
        let cfg = BenchConfig::desk(DESK_SEED);
        let started = Instant::now();
        let records = harness::run_all(&cfg).unwrap();
        let stats = harness::aggregate_by_size(&records).unwrap();
        (records, stats, started.elapsed())
    })
}

#[test]
fn ac1_worked_example() {
    let tree = HierarchyNode::flat("root", &[6.0, 6.0, 4.0, 3.0, 2.0, 2.0, 1.0]);
    let (_, trace) = layout_plus_traced(
        &tree,
        Region::sized(6.0, 4.0).unwrap(),
        InversionRule::Improve,
    )
    .unwrap();
    let first = &trace[0];
    let second = &trace[1];
    let ok = first.row == [6.0, 6.0]
        && (first.actual_ar - 1.5).abs() <= 1e-9
        && (first.alternative_ar - 1.5).abs() <= 1e-9
        && !first.inverted
        && second.row == [4.0, 3.0]
        && second.inverted
        && (second.actual_ar - 49.0 / 27.0).abs() <= 1e-9
        && (second.alternative_ar - 64.0 / 49.0).abs() <= 1e-9;
    verdict(
        "AC1",
        "worked example rows and inversion",
        ok,
        format!(
            "row1 {:?} AR {}/{} inverted={}; row2 {:?} AR {:.6}/{:.6} inverted={}",
            first.row,
            first.actual_ar,
            first.alternative_ar,
            first.inverted,
            second.row,
            second.actual_ar,
            second.alternative_ar,
            second.inverted
        ),
    );
}

#[test]
fn ac2_equivalence_fallback() {
    let mut r = rng(2);
    let mut forced_mismatch = 0;
    let mut natural_checked = 0;
    let mut natural_mismatch = 0;
    for i in 0..1000 {
        let leaves = 1 + i % 120;
        let tree = random_tree(&mut r, "root", leaves, 1 + i % 3);
        let canvas = random_canvas(&mut r);
        let sq = layout_squarified(&tree, canvas).unwrap();
        if layout_plus_with(&tree, canvas, InversionRule::Never).unwrap() != sq {
            forced_mismatch += 1;
        }
        let (plus, trace) = layout_plus_traced(&tree, canvas, InversionRule::Improve).unwrap();
        if trace.iter().all(|d| !d.inverted) {
            natural_checked += 1;
            if plus != sq {
                natural_mismatch += 1;
            }
        }
    }
    verdict(
        "AC2",
        "plus without inversions is bit-identical to squarified",
        forced_mismatch == 0 && natural_mismatch == 0,
        format!(
            "forced: {forced_mismatch}/1000 differ; naturally inversion-free: {natural_mismatch}/{natural_checked} differ"
        ),
    );
}

#[test]
fn ac3_tiling() {
    let mut r = rng(3);
    let (mut overlap, mut area, mut contain) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..1000 {
        let leaves = 1 + (i * 7919) % 200;
        let tree = random_tree(&mut r, "root", leaves, 1 + i % 3);
        let canvas = random_canvas(&mut r);
        for layout in [
            layout_squarified(&tree, canvas).unwrap(),
            layout_plus(&tree, canvas).unwrap(),
        ] {
            let rep = tiling_report(&layout);
            overlap = overlap.max(rep.max_overlap);
            area = area.max(rep.max_area_error);
            contain = contain.max(rep.max_containment_excess);
        }
    }
    verdict(
        "AC3",
        "disjoint, area-conserving, contained",
        overlap <= 1e-6 && area <= 1e-6 && contain <= 1e-9,
        format!("max overlap {overlap:.3e} px², max area error {area:.3e} rel, max containment excess {contain:.3e}"),
    );
}

#[test]
fn ac4_table1_trends() {
    let (_, stats, elapsed) = desk_run();
    let at = |size: usize, metric: Metric| {
        stats
            .iter()
            .find(|s| s.size == size)
            .unwrap()
            .metric(metric)
            .clone()
    };
    let mut lines = Vec::new();
    let mut ok = true;

    let weighted: Vec<f64> = [10, 100, 1000]
        .map(|s| at(s, Metric::WeightedMeanAr).success_rate)
        .to_vec();
    let a = weighted.iter().all(|&r| r >= 0.99);
    lines.push(format!("(a) weighted success {weighted:?} >= 0.99: {a}"));

    let plain: Vec<f64> = [10, 100, 1000]
        .map(|s| at(s, Metric::MeanAr).success_rate)
        .to_vec();
    let b = plain[0] >= 0.90 && plain[2] >= 0.97;
    lines.push(format!(
        "(b) mean-AR success {plain:?} (size 10 >= 0.90, size 1000 >= 0.97): {b}"
    ));

    let imp: Vec<f64> = [10, 100, 1000]
        .map(|s| at(s, Metric::MeanAr).mean_improvement_pct)
        .to_vec();
    let c = imp[0] > imp[1] && imp[1] > imp[2] && (2.0..=9.0).contains(&imp[0]);
    lines.push(format!(
        "(c) mean-AR improvement % {imp:?} strictly decreasing, size 10 in [2, 9]: {c}"
    ));

    let sd: Vec<f64> = [10, 100, 1000]
        .map(|s| at(s, Metric::StdDevAr).success_rate)
        .to_vec();
    let d = sd.iter().all(|&r| r >= 0.85);
    lines.push(format!("(d) std-dev success {sd:?} >= 0.85: {d}"));

    let fast = elapsed.as_secs_f64() < 60.0;
    lines.push(format!("runtime {elapsed:.2?} < 60 s: {fast}"));
    ok &= a && b && c && d && fast;
    verdict(
        "AC4",
        "desk-scale success rates and improvement trend",
        ok,
        lines.join("; "),
    );
}

#[test]
fn ac5_table2_medians() {
    let (_, stats, _) = desk_run();
    let mut ok = true;
    let mut lines = Vec::new();
    for s in stats {
        let ar = s.metric(Metric::MeanAr);
        let sd = s.metric(Metric::StdDevAr);
        let good = ar.median_plus < ar.median_sq && sd.median_plus < sd.median_sq;
        ok &= good;
        lines.push(format!(
            "size {}: AR {:.4} -> {:.4}, SD {:.4} -> {:.4}",
            s.size, ar.median_sq, ar.median_plus, sd.median_sq, sd.median_plus
        ));
    }
    verdict(
        "AC5",
        "Squarified+ medians below Squarified",
        ok,
        lines.join("; "),
    );
}

#[test]
fn ac6_cost() {
    let canvas = Region::sized(1920.0, 1080.0).unwrap();
    let tree = gen_tree(4000, harness::derive_seed(6, 4000, 0)).unwrap();
    // warm up allocator and caches
    layout_squarified(&tree, canvas).unwrap();
    layout_plus(&tree, canvas).unwrap();
    let (mut sq, mut plus) = (Duration::ZERO, Duration::ZERO);
    let (mut sq_max, mut plus_max) = (Duration::ZERO, Duration::ZERO);
    for _ in 0..50 {
        let t = Instant::now();
        std::hint::black_box(layout_squarified(&tree, canvas).unwrap());
        let a = t.elapsed();
        let t = Instant::now();
        std::hint::black_box(layout_plus(&tree, canvas).unwrap());
        let b = t.elapsed();
        sq += a;
        plus += b;
        sq_max = sq_max.max(a);
        plus_max = plus_max.max(b);
    }
    let ratio = plus.as_secs_f64() / sq.as_secs_f64();
    let limit = Duration::from_millis(50);
    verdict(
        "AC6",
        "plus costs at most 2x squarified at n = 4000",
        ratio <= 2.0 && sq_max < limit && plus_max < limit,
        format!(
            "mean squarified {:.2?}, plus {:.2?}, ratio {ratio:.3}; slowest single runs {sq_max:.2?} / {plus_max:.2?}",
            sq / 50,
            plus / 50
        ),
    );
}

fn brute_metrics(doc: &serde_json::Value) -> (f64, f64, f64) {
    let mut ars = Vec::new();
    let mut weights = Vec::new();
    for (_, node) in doc["placements"].as_object().unwrap() {
        if !node["leaf"].as_bool().unwrap() {
            continue;
        }
        let w = node["w"].as_f64().unwrap();
        let h = node["h"].as_f64().unwrap();
        ars.push(if w > h { w / h } else { h / w });
        weights.push(node["weight"].as_f64().unwrap());
    }
    let n = ars.len() as f64;
    let mut sum = 0.0;
    for a in &ars {
        sum += a;
    }
    let mean = sum / n;
    let mut wsum = 0.0;
    let mut wtot = 0.0;
    for (a, w) in ars.iter().zip(&weights) {
        wsum += a * w;
        wtot += w;
    }
    let mut ss = 0.0;
    for a in &ars {
        ss += (a - mean).powi(2);
    }
    let sd = if ars.len() > 1 {
        (ss / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, wsum / wtot, sd)
}

#[test]
fn ac7_metric_oracles() {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let tree = random_tree(&mut r, "root", 1 + (i * 37) % 300, 1 + i % 3);
        let canvas = random_canvas(&mut r);
        let layout = if i % 2 == 0 {
            layout_plus(&tree, canvas).unwrap()
        } else {
            layout_squarified(&tree, canvas).unwrap()
        };
        let metrics = LayoutMetrics::of(&layout).unwrap();
        let json = LayoutDocument::new("any", &layout, None).to_json().unwrap();
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        let (mean, weighted, sd) = brute_metrics(&doc);
        for (got, want) in [
            (metrics.mean_ar, mean),
            (metrics.weighted_mean_ar, weighted),
            (metrics.std_dev_ar, sd),
        ] {
            worst = worst.max((got - want).abs());
        }
    }
    verdict(
        "AC7",
        "metrics match brute-force recomputation from serialized rectangles",
        worst <= 1e-9,
        format!("max abs deviation {worst:.3e}"),
    );
}

#[test]
fn ac8_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = BenchConfig::desk(DESK_SEED);
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let records = harness::run_all(&cfg).unwrap();
        harness::export_records_csv(&path, &records).unwrap();
        outputs.push(std::fs::read(&path).unwrap());
    }
    verdict(
        "AC8",
        "identical seed and config give byte-identical records.csv",
        outputs[0] == outputs[1] && !outputs[0].is_empty(),
        format!("{} and {} bytes", outputs[0].len(), outputs[1].len()),
    );
}
