//! Shared inputs for the layout benchmarks.

use treemap_core::harness::{derive_seed, gen_tree};
use treemap_core::{HierarchyNode, Region};

pub fn canvas() -> Region {
    Region::sized(1920.0, 1080.0).expect("valid canvas")
}

/// Depth-1 tree of `size` random leaves, fixed per size.
pub fn tree(size: usize) -> HierarchyNode {
    gen_tree(size, derive_seed(0xbe7c, size, 0)).expect("size >= 1")
}
