#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treemap_core::{HierarchyNode, LayoutResult, Region};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A tree with exactly `leaves` leaves and at most `depth` levels below the root.
pub fn random_tree(rng: &mut ChaCha8Rng, name: &str, leaves: usize, depth: usize) -> HierarchyNode {
    if depth <= 1 || leaves == 1 || rng.random_bool(0.3) {
        let weights: Vec<f64> = (0..leaves)
            .map(|_| f64::from(rng.random_range(1..=1_000_000u32)))
            .collect();
        let mut node = HierarchyNode::flat(name, &weights);
        if depth == 0 {
            node = HierarchyNode::leaf(name, weights[0]);
        }
        return node;
    }
    let groups = rng.random_range(1..=leaves.min(5));
    let mut sizes = vec![1usize; groups];
    for _ in groups..leaves {
        let g = rng.random_range(0..groups);
        sizes[g] += 1;
    }
    let children = sizes
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            if n == 1 && rng.random_bool(0.5) {
                HierarchyNode::leaf(
                    format!("n{i}"),
                    f64::from(rng.random_range(1..=1_000_000u32)),
                )
            } else {
                random_tree(rng, &format!("n{i}"), n, depth - 1)
            }
        })
        .collect();
    HierarchyNode::internal(name, children)
}

pub fn random_canvas(rng: &mut ChaCha8Rng) -> Region {
    if rng.random_bool(0.5) {
        Region::sized(1920.0, 1080.0).unwrap()
    } else {
        Region::new(
            rng.random_range(-50.0..50.0),
            rng.random_range(-50.0..50.0),
            rng.random_range(10.0..3000.0),
            rng.random_range(10.0..3000.0),
        )
        .unwrap()
    }
}

#[derive(Debug, Default)]
pub struct TilingReport {
    pub max_overlap: f64,
    pub max_area_error: f64,
    pub max_containment_excess: f64,
    pub max_proportion_error: f64,
}

fn parent_path(path: &str) -> Option<&str> {
    path.rsplit_once('/').map(|(p, _)| p)
}

/// Worst-case violations of the tiling invariants over one layout.
pub fn tiling_report(layout: &LayoutResult) -> TilingReport {
    let mut report = TilingReport::default();
    let canvas = layout.canvas();
    let placements = layout.placements();
    let leaves: Vec<_> = layout.leaves().collect();
    for (i, a) in leaves.iter().enumerate() {
        for b in &leaves[i + 1..] {
            report.max_overlap = report.max_overlap.max(a.region.overlap_area(&b.region));
        }
    }
    let leaf_area: f64 = leaves.iter().map(|p| p.region.area()).sum();
    if !leaves.is_empty() {
        report.max_area_error = ((leaf_area - canvas.area()) / canvas.area()).abs();
    }
    let total_weight: f64 = leaves.iter().map(|p| p.weight).sum();
    for p in placements {
        if p.depth > 0 {
            let rel = (p.region.area() / canvas.area() - p.weight / total_weight).abs()
                / (p.weight / total_weight);
            report.max_proportion_error = report.max_proportion_error.max(rel);
        }
        let Some(parent) = parent_path(&p.path) else {
            continue;
        };
        let outer = layout.get(parent).unwrap().region;
        let r = p.region;
        let excess = [
            outer.x - r.x,
            outer.y - r.y,
            r.right() - outer.right(),
            r.bottom() - outer.bottom(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        report.max_containment_excess = report.max_containment_excess.max(excess);
    }
    report
}
