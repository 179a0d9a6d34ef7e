//! Squarified+: before a row is fixed, the same row is evaluated along the
//! bigger side of the free region, and the drawing direction is inverted when
//! that alternative has a less elongated worst rectangle.
//!
//! Row membership is decided exactly as in [`crate::squarified`]; only the
//! placement of each finished row changes. The next row again starts from the
//! natural direction of whatever free region is left.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{bigger_side, natural_direction, smaller_side, Direction, Region, REL_EPS};
use crate::hierarchy::HierarchyNode;
use crate::layout::{layout_tree, LayoutResult};
use crate::squarified::{layoutrow_into, squarify, worst};

/// Whether the alternative worst aspect ratio beats the actual one, i.e.
/// `|actual - 1| / |alternative - 1| > 1`.
///
/// A perfectly square alternative wins against any non-square row; equal
/// values keep the current direction.
pub fn improve(actual_ar: f64, alternative_ar: f64) -> bool {
    (actual_ar - 1.0).abs() > (alternative_ar - 1.0).abs() * (1.0 + REL_EPS)
}

/// Drawing direction for the row being fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectionState {
    current: Direction,
}

impl DirectionState {
    /// Starts from the natural direction of `free`.
    pub fn new(free: &Region) -> Self {
        DirectionState {
            current: natural_direction(free),
        }
    }

    pub fn current(&self) -> Direction {
        self.current
    }

    pub fn invert_direction(&mut self) {
        self.current = self.current.inverted();
    }
}

/// How `validate` decides between the two orientations of a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InversionRule {
    /// Invert when [`improve`] says the alternative is better.
    #[default]
    Improve,
    /// Never invert. Row placement then coincides with plain squarified.
    Never,
}

/// What `validate` saw and chose for one row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowDecision {
    pub row: Vec<f64>,
    pub region: Region,
    pub actual_ar: f64,
    pub alternative_ar: f64,
    pub inverted: bool,
    pub direction: Direction,
}

#[derive(Debug, Clone, Copy)]
struct Choice {
    actual_ar: f64,
    alternative_ar: f64,
    inverted: bool,
    direction: Direction,
}

fn validate_into(
    row: &[f64],
    region: &Region,
    state: &mut DirectionState,
    rule: InversionRule,
    closing: bool,
    out: &mut Vec<Region>,
) -> Result<(Region, Choice)> {
    let actual_ar = worst(row, smaller_side(region));
    let alternative_ar = worst(row, bigger_side(region));
    let inverted = match rule {
        InversionRule::Improve => improve(actual_ar, alternative_ar),
        InversionRule::Never => false,
    };
    if inverted {
        state.invert_direction();
    }
    if rule == InversionRule::Improve {
        let (chosen, rejected) = if inverted {
            (alternative_ar, actual_ar)
        } else {
            (actual_ar, alternative_ar)
        };
        debug_assert!(
            chosen <= rejected * (1.0 + 2.0 * REL_EPS),
            "row orientation worsened: {chosen} > {rejected}"
        );
    }
    let direction = state.current();
    let free = layoutrow_into(row, region, direction, closing, out)?;
    Ok((
        free,
        Choice {
            actual_ar,
            alternative_ar,
            inverted,
            direction,
        },
    ))
}

/// Fixes a row chosen by the squarify recursion, inverting `state` first when
/// laying the row along the bigger side of `region` improves its worst
/// aspect ratio.
///
/// `state` is expected to hold the natural direction of `region`. Returns the
/// item rectangles in row order and the remaining free region.
pub fn validate(
    row: &[f64],
    region: &Region,
    state: &mut DirectionState,
) -> Result<(Vec<Region>, Region)> {
    let mut out = Vec::with_capacity(row.len());
    let (free, _) = validate_into(row, region, state, InversionRule::Improve, false, &mut out)?;
    Ok((out, free))
}

fn plus_level(
    rule: InversionRule,
    mut trace: Option<&mut Vec<RowDecision>>,
) -> impl FnMut(&[f64], Region, &mut Vec<Region>) -> Result<()> + '_ {
    move |areas, region, out| {
        squarify(areas, region, |row, free, last| {
            let mut state = DirectionState::new(&free);
            let (next, choice) = validate_into(row, &free, &mut state, rule, last, out)?;
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(RowDecision {
                    row: row.to_vec(),
                    region: free,
                    actual_ar: choice.actual_ar,
                    alternative_ar: choice.alternative_ar,
                    inverted: choice.inverted,
                    direction: choice.direction,
                });
            }
            Ok(next)
        })
    }
}

/// Squarified+ treemap of `tree` on `canvas`.
pub fn layout_plus(tree: &HierarchyNode, canvas: Region) -> Result<LayoutResult> {
    layout_plus_with(tree, canvas, InversionRule::Improve)
}

pub fn layout_plus_with(
    tree: &HierarchyNode,
    canvas: Region,
    rule: InversionRule,
) -> Result<LayoutResult> {
    layout_tree(tree, canvas, &mut plus_level(rule, None))
}

/// Like [`layout_plus_with`], also returning every row decision in the order
/// rows were fixed (levels visited in pre-order).
pub fn layout_plus_traced(
    tree: &HierarchyNode,
    canvas: Region,
    rule: InversionRule,
) -> Result<(LayoutResult, Vec<RowDecision>)> {
    let mut trace = Vec::new();
    let layout = layout_tree(tree, canvas, &mut plus_level(rule, Some(&mut trace)))?;
    Ok((layout, trace))
}
