//! Classic squarified tiling: rows are grown greedily along the smaller side
//! of the free region and fixed as soon as the next item would make the
//! row's most elongated rectangle worse.

use crate::error::{Error, Result};
use crate::geometry::{natural_direction, shrink, smaller_side, Direction, Region};
use crate::hierarchy::HierarchyNode;
use crate::layout::{layout_tree, LayoutResult};

/// Scales `weights` so they sum to the area of `region`.
pub fn normalize_areas(weights: &[f64], region: &Region) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Ok(Vec::new());
    }
    if region.is_degenerate() {
        return Err(Error::DegenerateRegion {
            width: region.width,
            height: region.height,
        });
    }
    if let Some((i, &w)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !(w.is_finite() && **w > 0.0))
    {
        return Err(Error::NonPositiveWeight {
            path: format!("[{i}]"),
            weight: w,
        });
    }
    let total: f64 = weights.iter().sum();
    let scale = region.area() / total;
    Ok(weights.iter().map(|w| w * scale).collect())
}

/// Worst aspect ratio of a row of areas laid in a strip of length `w`.
///
/// An empty row is infinitely bad, so any first item improves it.
pub fn worst(row: &[f64], w: f64) -> f64 {
    let Some(&first) = row.first() else {
        return f64::INFINITY;
    };
    let (sum, max, min) = row.iter().fold((0.0, first, first), |(s, hi, lo), &a| {
        (s + a, hi.max(a), lo.min(a))
    });
    worst_of(sum, max, min, w)
}

#[inline]
fn worst_of(sum: f64, max: f64, min: f64, w: f64) -> f64 {
    let w2 = w * w;
    let s2 = sum * sum;
    (w2 * max / s2).max(s2 / (w2 * min))
}

/// Relative slack allowed between a row's area and the room left for it.
pub const ROW_FIT_TOLERANCE: f64 = 1e-6;

/// Places `row` as one strip of `region` in direction `d`, appending the item
/// rectangles to `out`, and returns the free region left behind.
///
/// With `closing` set the row is the last of its level and its strip takes
/// whatever extent is left, absorbing accumulated rounding.
pub(crate) fn layoutrow_into(
    row: &[f64],
    region: &Region,
    d: Direction,
    closing: bool,
    out: &mut Vec<Region>,
) -> Result<Region> {
    if region.is_degenerate() {
        return Err(Error::DegenerateRegion {
            width: region.width,
            height: region.height,
        });
    }
    let length = region.extent_along(d);
    let room = region.extent_across(d);
    let sum: f64 = row.iter().sum();
    let mut thickness = sum / length;
    if closing || (thickness > room && thickness <= room * (1.0 + ROW_FIT_TOLERANCE)) {
        thickness = room;
    }
    let free = shrink(region, d, thickness)?;

    let (start, end) = match d {
        Direction::TopToBottom => (region.y, region.bottom()),
        Direction::LeftToRight => (region.x, region.right()),
    };
    let mut pos = start;
    for (i, &a) in row.iter().enumerate() {
        // the last item ends exactly on the far edge
        let along = if i + 1 == row.len() {
            end - pos
        } else {
            length * (a / sum)
        };
        out.push(match d {
            Direction::TopToBottom => Region {
                x: region.x,
                y: pos,
                width: thickness,
                height: along,
            },
            Direction::LeftToRight => Region {
                x: pos,
                y: region.y,
                width: along,
                height: thickness,
            },
        });
        pos += along;
    }
    Ok(free)
}

/// Fixes `row` inside `region` in direction `d`.
///
/// Returns the item rectangles in row order and the remaining free region.
pub fn layoutrow(row: &[f64], region: &Region, d: Direction) -> Result<(Vec<Region>, Region)> {
    let mut out = Vec::with_capacity(row.len());
    let free = layoutrow_into(row, region, d, false, &mut out)?;
    Ok((out, free))
}

/// Greedy row builder.
///
/// `areas` must be sorted non-increasing and sum to the area of `region`.
/// Each row is grown while adding the next item does not raise its worst
/// aspect ratio (ties admit the item) along the smaller side of the current
/// free region; the finished row is handed to `fix_row` together with the
/// free region and whether it is the last row. `fix_row` places it and
/// returns the new free region.
pub fn squarify<F>(areas: &[f64], region: Region, mut fix_row: F) -> Result<()>
where
    F: FnMut(&[f64], Region, bool) -> Result<Region>,
{
    let mut free = region;
    let mut start = 0;
    while start < areas.len() {
        let w = smaller_side(&free);
        let first = areas[start];
        let (mut sum, mut max, mut min) = (first, first, first);
        let mut current = worst_of(sum, max, min, w);
        let mut end = start + 1;
        while let Some(&c) = areas.get(end) {
            let next = worst_of(sum + c, max.max(c), min.min(c), w);
            if next > current {
                break;
            }
            sum += c;
            max = max.max(c);
            min = min.min(c);
            current = next;
            end += 1;
        }
        free = fix_row(&areas[start..end], free, end == areas.len())?;
        start = end;
    }
    Ok(())
}

/// Lays out one sibling set, every row along the smaller side.
pub(crate) fn squarify_level(areas: &[f64], region: Region, out: &mut Vec<Region>) -> Result<()> {
    squarify(areas, region, |row, free, last| {
        layoutrow_into(row, &free, natural_direction(&free), last, out)
    })
}

/// Squarified treemap of `tree` on `canvas`.
///
/// Each internal node's children are scaled to its region, sorted by
/// decreasing weight (ties keep input order) and squarified inside it.
pub fn layout_squarified(tree: &HierarchyNode, canvas: Region) -> Result<LayoutResult> {
    layout_tree(tree, canvas, &mut squarify_level)
}
