//! Layout quality: mean, weight-weighted mean and corrected standard
//! deviation of leaf aspect ratios, and paired comparison of two layouts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::aspect_ratio;
use crate::layout::LayoutResult;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayoutMetrics {
    pub mean_ar: f64,
    pub weighted_mean_ar: f64,
    pub std_dev_ar: f64,
    /// Number of leaf rectangles measured.
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    MeanAr,
    WeightedMeanAr,
    StdDevAr,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::MeanAr, Metric::WeightedMeanAr, Metric::StdDevAr];

    pub fn name(self) -> &'static str {
        match self {
            Metric::MeanAr => "mean_ar",
            Metric::WeightedMeanAr => "weighted_mean_ar",
            Metric::StdDevAr => "std_dev_ar",
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl LayoutMetrics {
    /// Measures the leaves of `layout`; internal nodes are not counted.
    pub fn of(layout: &LayoutResult) -> Result<Self> {
        let ars = leaf_aspect_ratios(layout)?;
        let weights = leaf_weights(layout);
        Self::from_values(&ars, &weights)
    }

    pub fn from_values(ars: &[f64], weights: &[f64]) -> Result<Self> {
        Ok(LayoutMetrics {
            mean_ar: mean(ars)?,
            weighted_mean_ar: weighted_mean(ars, weights)?,
            std_dev_ar: corrected_std_dev(ars)?,
            n: ars.len(),
        })
    }

    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::MeanAr => self.mean_ar,
            Metric::WeightedMeanAr => self.weighted_mean_ar,
            Metric::StdDevAr => self.std_dev_ar,
        }
    }
}

pub fn leaf_aspect_ratios(layout: &LayoutResult) -> Result<Vec<f64>> {
    layout.leaves().map(|p| aspect_ratio(&p.region)).collect()
}

pub fn leaf_weights(layout: &LayoutResult) -> Vec<f64> {
    layout.leaves().map(|p| p.weight).collect()
}

pub fn mean_ar(layout: &LayoutResult) -> Result<f64> {
    mean(&leaf_aspect_ratios(layout)?)
}

/// `weights` must line up with `layout.leaves()`.
pub fn weighted_mean_ar(layout: &LayoutResult, weights: &[f64]) -> Result<f64> {
    weighted_mean(&leaf_aspect_ratios(layout)?, weights)
}

pub fn std_dev_ar(layout: &LayoutResult) -> Result<f64> {
    corrected_std_dev(&leaf_aspect_ratios(layout)?)
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyLayout);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

pub fn weighted_mean(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyLayout);
    }
    if values.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: values.len(),
            actual: weights.len(),
        });
    }
    if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::NonPositiveWeight {
            path: "<leaf>".into(),
            weight: w,
        });
    }
    let total: f64 = weights.iter().sum();
    let dot: f64 = values.iter().zip(weights).map(|(v, w)| v * w).sum();
    Ok(dot / total)
}

/// Sample standard deviation with the `n - 1` denominator; zero for a single value.
pub fn corrected_std_dev(values: &[f64]) -> Result<f64> {
    let mu = mean(values)?;
    if values.len() == 1 {
        return Ok(0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mu) * (v - mu)).sum();
    Ok((ss / (values.len() - 1) as f64).sqrt())
}

/// Both algorithms measured on the same tree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Leaf count of the tree.
    pub size: usize,
    pub rep: usize,
    pub seed: u64,
    pub squarified: LayoutMetrics,
    pub plus: LayoutMetrics,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    /// Squarified+ strictly lower than squarified.
    pub success: bool,
    /// `(squarified - plus) / squarified * 100`; negative when plus is worse.
    pub improvement_pct: f64,
}

pub fn compare(rec: &RunRecord, metric: Metric) -> Comparison {
    compare_values(rec.squarified.get(metric), rec.plus.get(metric))
}

/// Compares a baseline value against a candidate where lower is better.
///
/// A zero baseline (possible only for the standard deviation) has no relative
/// change: equal values report 0 and any degradation reports -100.
pub fn compare_values(baseline: f64, candidate: f64) -> Comparison {
    let improvement_pct = if baseline == 0.0 {
        if candidate == 0.0 {
            0.0
        } else {
            -100.0
        }
    } else {
        (baseline - candidate) / baseline * 100.0
    };
    Comparison {
        success: candidate < baseline,
        improvement_pct,
    }
}
