//! Placed layouts and the per-level recursion shared by both algorithms.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::hierarchy::{HierarchyNode, PATH_SEPARATOR};
use crate::metrics::LayoutMetrics;
use crate::squarified::normalize_areas;

/// One node of the hierarchy together with the rectangle it was given.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    /// Slash-joined names from the root, e.g. `root/src/main.rs`.
    pub path: String,
    pub depth: usize,
    /// Leaf weight, or the derived subtree weight for internal nodes.
    pub weight: f64,
    pub is_leaf: bool,
    pub region: Region,
}

/// Every node of a hierarchy mapped to its region, in pre-order with
/// children in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutResult {
    canvas: Region,
    placements: Vec<Placement>,
}

impl LayoutResult {
    pub fn new(canvas: Region, placements: Vec<Placement>) -> Self {
        LayoutResult { canvas, placements }
    }

    pub fn canvas(&self) -> Region {
        self.canvas
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Placement> {
        self.placements.iter().filter(|p| p.is_leaf)
    }

    pub fn get(&self, path: &str) -> Option<&Placement> {
        self.placements.iter().find(|p| p.path == path)
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }
}

/// Lays out one sibling set: `areas` are sorted non-increasing and sum to the
/// area of `region`; one region per area is pushed to `out`, in the same order.
pub(crate) trait LevelLayout {
    fn layout_level(&mut self, areas: &[f64], region: Region, out: &mut Vec<Region>) -> Result<()>;
}

impl<F> LevelLayout for F
where
    F: FnMut(&[f64], Region, &mut Vec<Region>) -> Result<()>,
{
    fn layout_level(&mut self, areas: &[f64], region: Region, out: &mut Vec<Region>) -> Result<()> {
        self(areas, region, out)
    }
}

/// Validates the inputs, then applies `level` to every internal node's
/// children inside the region that node was given.
pub(crate) fn layout_tree(
    tree: &HierarchyNode,
    canvas: Region,
    level: &mut impl LevelLayout,
) -> Result<LayoutResult> {
    canvas.check()?;
    if canvas.is_degenerate() {
        return Err(Error::InvalidRegion {
            x: canvas.x,
            y: canvas.y,
            width: canvas.width,
            height: canvas.height,
            reason: "canvas must have positive width and height",
        });
    }
    tree.validate()?;

    let mut placements = Vec::new();
    let mut scratch = Vec::new();
    place(
        tree,
        tree.name.clone(),
        0,
        canvas,
        level,
        &mut placements,
        &mut scratch,
    )?;
    Ok(LayoutResult { canvas, placements })
}

fn place(
    node: &HierarchyNode,
    path: String,
    depth: usize,
    region: Region,
    level: &mut impl LevelLayout,
    placements: &mut Vec<Placement>,
    scratch: &mut Vec<Region>,
) -> Result<()> {
    placements.push(Placement {
        path: path.clone(),
        depth,
        weight: node.total_weight(),
        is_leaf: node.is_leaf(),
        region,
    });
    if node.children.is_empty() {
        return Ok(());
    }

    let weights: Vec<f64> = node
        .children
        .iter()
        .map(HierarchyNode::total_weight)
        .collect();
    let areas = normalize_areas(&weights, &region)?;

    // stable: equal weights keep their input order
    let mut order: Vec<usize> = (0..areas.len()).collect();
    order.sort_by(|&a, &b| areas[b].total_cmp(&areas[a]));
    let sorted: Vec<f64> = order.iter().map(|&i| areas[i]).collect();

    scratch.clear();
    level.layout_level(&sorted, region, scratch)?;
    debug_assert_eq!(scratch.len(), sorted.len());

    let mut regions = vec![region; areas.len()];
    for (k, &i) in order.iter().enumerate() {
        regions[i] = scratch[k];
    }
    for (child, child_region) in node.children.iter().zip(regions) {
        let child_path = format!("{path}{PATH_SEPARATOR}{}", child.name);
        place(
            child,
            child_path,
            depth + 1,
            child_region,
            level,
            placements,
            scratch,
        )?;
    }
    Ok(())
}

/// Serialized form of a layout: node path to rectangle, plus optional metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutDocument {
    pub algo: String,
    pub canvas: Region,
    pub placements: IndexMap<String, PlacedNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<LayoutMetrics>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlacedNode {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
    pub weight: f64,
    pub leaf: bool,
}

impl LayoutDocument {
    pub fn new(
        algo: impl Into<String>,
        layout: &LayoutResult,
        metrics: Option<LayoutMetrics>,
    ) -> Self {
        let placements = layout
            .placements
            .iter()
            .map(|p| {
                let r = p.region;
                (
                    p.path.clone(),
                    PlacedNode {
                        x: r.x,
                        y: r.y,
                        w: r.width,
                        h: r.height,
                        weight: p.weight,
                        leaf: p.is_leaf,
                    },
                )
            })
            .collect();
        LayoutDocument {
            algo: algo.into(),
            canvas: layout.canvas,
            placements,
            metrics,
        }
    }

    /// Rebuilds the in-memory layout; depth is recovered from the path.
    pub fn to_layout(&self) -> Result<LayoutResult> {
        let mut placements = Vec::with_capacity(self.placements.len());
        for (path, n) in &self.placements {
            placements.push(Placement {
                path: path.clone(),
                depth: path.matches(PATH_SEPARATOR).count(),
                weight: n.weight,
                is_leaf: n.leaf,
                region: Region::new(n.x, n.y, n.w, n.h)?,
            });
        }
        Ok(LayoutResult {
            canvas: self.canvas,
            placements,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
