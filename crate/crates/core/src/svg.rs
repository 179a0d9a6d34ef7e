//! SVG output for placed layouts (`svg`, `rect` and `text` elements only).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::layout::{LayoutResult, Placement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorBy {
    /// Lighter with increasing depth.
    Depth,
    /// Leaves darker the closer their weight is to the heaviest leaf.
    #[default]
    WeightBucket,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// Output pixels per layout unit.
    pub scale: f64,
    pub stroke_width: f64,
    /// Draw `name (weight)` on each leaf.
    pub label: bool,
    pub color_by: ColorBy,
    /// Per-depth inset applied on every side of nested rectangles, in output pixels.
    pub nest_inset: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 1.0,
            stroke_width: 1.0,
            label: false,
            color_by: ColorBy::default(),
            nest_inset: 0.0,
        }
    }
}

impl RenderOptions {
    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return bad("scale must be positive");
        }
        if !(self.stroke_width.is_finite() && self.stroke_width >= 0.0) {
            return bad("stroke width must be non-negative");
        }
        if !(self.nest_inset.is_finite() && self.nest_inset >= 0.0) {
            return bad("nest inset must be non-negative");
        }
        Ok(())
    }
}

const BUCKETS: u32 = 8;

fn gray(level: u8) -> String {
    format!("#{level:02x}{level:02x}{level:02x}")
}

fn fill(p: &Placement, max_leaf_weight: f64, color_by: ColorBy) -> String {
    if !p.is_leaf {
        return "none".into();
    }
    match color_by {
        ColorBy::None => "#ffffff".into(),
        ColorBy::Depth => gray(255u8.saturating_sub((p.depth.min(6) * 24) as u8)),
        ColorBy::WeightBucket => {
            let bucket = (max_leaf_weight / p.weight)
                .log2()
                .floor()
                .clamp(0.0, (BUCKETS - 1) as f64) as u8;
            gray(112 + bucket * 20)
        }
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Renders one `rect` per placement in pre-order.
///
/// Coordinates are taken relative to the canvas origin and multiplied by
/// `scale`; the document is `canvas × scale` pixels.
pub fn to_svg(layout: &LayoutResult, opts: &RenderOptions) -> Result<String> {
    opts.validate()?;
    let canvas = layout.canvas();
    let s = opts.scale;
    let (width, height) = (canvas.width * s, canvas.height * s);
    let max_leaf_weight = layout.leaves().map(|p| p.weight).fold(0.0, f64::max);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let mut labels = String::new();
    for p in layout.placements() {
        let inset = opts.nest_inset * p.depth as f64;
        let r = p.region;
        let w = (r.width * s - 2.0 * inset).max(0.0);
        let h = (r.height * s - 2.0 * inset).max(0.0);
        let x = (r.x - canvas.x) * s + inset.min(r.width * s / 2.0);
        let y = (r.y - canvas.y) * s + inset.min(r.height * s / 2.0);
        let _ = writeln!(
            out,
            r#"  <rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{}" stroke="black" stroke-width="{}"/>"#,
            fill(p, max_leaf_weight, opts.color_by),
            opts.stroke_width
        );
        if opts.label && p.is_leaf {
            let name = p.path.rsplit('/').next().unwrap_or(&p.path);
            let font = (w.min(h) / 3.0).clamp(1.0, 14.0);
            let _ = writeln!(
                labels,
                r#"  <text x="{}" y="{}" font-size="{font}" font-family="sans-serif" text-anchor="middle" dominant-baseline="middle">{} ({})</text>"#,
                x + w / 2.0,
                y + h / 2.0,
                escape(name),
                p.weight
            );
        }
    }
    out.push_str(&labels);
    out.push_str("</svg>\n");
    Ok(out)
}
