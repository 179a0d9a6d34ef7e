//! Squarified and Squarified+ treemap layouts, layout quality metrics, a
//! paired comparison harness and an SVG renderer.
//!
//! ```
//! use treemap_core::{layout_plus, HierarchyNode, Region};
//!
//! let tree = HierarchyNode::flat("root", &[6.0, 6.0, 4.0, 3.0, 2.0, 2.0, 1.0]);
//! let layout = layout_plus(&tree, Region::sized(6.0, 4.0).unwrap()).unwrap();
//! assert_eq!(layout.leaves().count(), 7);
//! ```

pub mod error;
pub mod geometry;
pub mod harness;
pub mod hierarchy;
pub mod layout;
pub mod metrics;
pub mod plus;
pub mod squarified;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{
    aspect_ratio, bigger_side, natural_direction, shrink, smaller_side, Direction, Region,
};
pub use harness::{AggregateStats, BenchConfig, MetricStats};
pub use hierarchy::HierarchyNode;
pub use layout::{LayoutDocument, LayoutResult, Placement};
pub use metrics::{LayoutMetrics, Metric, RunRecord};
pub use plus::{
    improve, layout_plus, layout_plus_traced, layout_plus_with, InversionRule, RowDecision,
};
pub use squarified::{layout_squarified, normalize_areas, worst};
pub use svg::{to_svg, ColorBy, RenderOptions};

/// The two layout algorithms under comparison.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Squarified,
    Plus,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Squarified => "squarified",
            Algorithm::Plus => "plus",
        }
    }

    pub fn layout(self, tree: &HierarchyNode, canvas: Region) -> Result<LayoutResult> {
        match self {
            Algorithm::Squarified => layout_squarified(tree, canvas),
            Algorithm::Plus => layout_plus(tree, canvas),
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "squarified" => Ok(Algorithm::Squarified),
            "plus" => Ok(Algorithm::Plus),
            other => Err(format!(
                "unknown algorithm `{other}` (expected squarified or plus)"
            )),
        }
    }
}
