//! Rectangle arithmetic and row direction shared by both layout algorithms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used for floating point comparisons throughout the crate.
pub const REL_EPS: f64 = 1e-9;

/// An axis-aligned rectangle: free canvas space or a placed item.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

/// The axis along which the items of a row are laid out.
///
/// `TopToBottom` rows are vertical strips flush with the left edge of the
/// free region, their items stacked downwards. `LeftToRight` rows are
/// horizontal strips flush with the top edge, items placed rightwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    LeftToRight,
    TopToBottom,
}

impl Direction {
    pub fn inverted(self) -> Self {
        match self {
            Direction::LeftToRight => Direction::TopToBottom,
            Direction::TopToBottom => Direction::LeftToRight,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::LeftToRight => "left-to-right",
            Direction::TopToBottom => "top-to-bottom",
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Region {
    /// Builds a region, rejecting negative extents and non-finite values.
    pub fn new(x: f64, y: f64, width: f64, height: f64) -> Result<Self> {
        let region = Region {
            x,
            y,
            width,
            height,
        };
        region.check()?;
        Ok(region)
    }

    /// A region anchored at the origin.
    pub fn sized(width: f64, height: f64) -> Result<Self> {
        Self::new(0.0, 0.0, width, height)
    }

    pub(crate) fn check(&self) -> Result<()> {
        let reason = if ![self.x, self.y, self.width, self.height]
            .iter()
            .all(|v| v.is_finite())
        {
            "coordinates must be finite"
        } else if self.width < 0.0 || self.height < 0.0 {
            "extents must be non-negative"
        } else {
            return Ok(());
        };
        Err(Error::InvalidRegion {
            x: self.x,
            y: self.y,
            width: self.width,
            height: self.height,
            reason,
        })
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    pub fn right(&self) -> f64 {
        self.x + self.width
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.height
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.width > 0.0 && self.height > 0.0)
    }

    /// Swaps the roles of the two axes.
    pub fn transpose(&self) -> Self {
        Region {
            x: self.y,
            y: self.x,
            width: self.height,
            height: self.width,
        }
    }

    /// Extent of the side along which a row of the given direction is laid.
    pub fn extent_along(&self, direction: Direction) -> f64 {
        match direction {
            Direction::TopToBottom => self.height,
            Direction::LeftToRight => self.width,
        }
    }

    /// Extent perpendicular to the row axis: the room available for strip thickness.
    pub fn extent_across(&self, direction: Direction) -> f64 {
        match direction {
            Direction::TopToBottom => self.width,
            Direction::LeftToRight => self.height,
        }
    }

    /// Area of the intersection of the interiors of two regions.
    pub fn overlap_area(&self, other: &Region) -> f64 {
        let w = self.right().min(other.right()) - self.x.max(other.x);
        let h = self.bottom().min(other.bottom()) - self.y.max(other.y);
        if w > 0.0 && h > 0.0 {
            w * h
        } else {
            0.0
        }
    }

    /// Whether `inner` lies inside `self`, allowing `tol` slack per coordinate.
    pub fn contains(&self, inner: &Region, tol: f64) -> bool {
        inner.x >= self.x - tol
            && inner.y >= self.y - tol
            && inner.right() <= self.right() + tol
            && inner.bottom() <= self.bottom() + tol
    }
}

/// Longest side divided by shortest side; 1 for a square.
pub fn aspect_ratio(r: &Region) -> Result<f64> {
    if r.is_degenerate() {
        return Err(Error::DegenerateRegion {
            width: r.width,
            height: r.height,
        });
    }
    Ok(bigger_side(r) / smaller_side(r))
}

pub fn smaller_side(r: &Region) -> f64 {
    r.width.min(r.height)
}

pub fn bigger_side(r: &Region) -> f64 {
    r.width.max(r.height)
}

/// Direction that lays the next row along the smaller side of `r`.
///
/// Square regions resolve to `TopToBottom`.
pub fn natural_direction(r: &Region) -> Direction {
    if r.height <= r.width {
        Direction::TopToBottom
    } else {
        Direction::LeftToRight
    }
}

/// Removes the strip of the given thickness occupied by a fixed row.
///
/// Thickness overshooting the available extent by no more than the relative
/// tolerance is clamped; accumulated rounding makes the last row land a few
/// ulps past the edge.
pub fn shrink(r: &Region, direction: Direction, thickness: f64) -> Result<Region> {
    let extent = r.extent_across(direction);
    if thickness.is_nan() || thickness < 0.0 || thickness > extent + REL_EPS * extent.max(1.0) {
        return Err(Error::ThicknessExceedsExtent { thickness, extent });
    }
    let t = thickness.min(extent);
    Ok(match direction {
        Direction::TopToBottom => Region {
            x: r.x + t,
            width: r.width - t,
            ..*r
        },
        Direction::LeftToRight => Region {
            y: r.y + t,
            height: r.height - t,
            ..*r
        },
    })
}

/// `|a - b| <= REL_EPS * max(|a|, |b|, 1)`.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_EPS * a.abs().max(b.abs()).max(1.0)
}
