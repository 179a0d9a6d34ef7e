//! Weighted trees of named nodes and their JSON document form.
//!
//! A leaf carries a positive weight; an internal node carries children and
//! its weight is always derived from the leaves below it. In JSON:
//!
//! ```json
//! { "name": "root", "children": [ { "name": "a", "weight": 6 }, { "name": "b", "weight": 4 } ] }
//! ```

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PATH_SEPARATOR: char = '/';

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchyNode {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<HierarchyNode>,
}

impl HierarchyNode {
    pub fn leaf(name: impl Into<String>, weight: f64) -> Self {
        HierarchyNode {
            name: name.into(),
            weight: Some(weight),
            children: Vec::new(),
        }
    }

    pub fn internal(name: impl Into<String>, children: Vec<HierarchyNode>) -> Self {
        HierarchyNode {
            name: name.into(),
            weight: None,
            children,
        }
    }

    /// A depth-1 tree whose leaves are named `0`, `1`, ... in input order.
    pub fn flat(name: impl Into<String>, weights: &[f64]) -> Self {
        Self::internal(
            name,
            weights
                .iter()
                .enumerate()
                .map(|(i, &w)| HierarchyNode::leaf(i.to_string(), w))
                .collect(),
        )
    }

    pub fn is_leaf(&self) -> bool {
        self.weight.is_some()
    }

    /// Sum of the leaf weights in this subtree.
    pub fn total_weight(&self) -> f64 {
        match self.weight {
            Some(w) => w,
            None => self.children.iter().map(HierarchyNode::total_weight).sum(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(HierarchyNode::leaf_count).sum()
        }
    }

    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| 1 + c.depth())
            .max()
            .unwrap_or(0)
    }

    /// Checks the structural invariants, reporting the offending node by path.
    ///
    /// A root without weight or children is accepted as an empty tree; any
    /// other internal node must have at least one child.
    pub fn validate(&self) -> Result<()> {
        self.validate_at(&self.name, true)
    }

    fn validate_at(&self, path: &str, is_root: bool) -> Result<()> {
        if self.name.contains(PATH_SEPARATOR) {
            return Err(Error::InvalidNode {
                path: path.to_string(),
                reason: format!("name must not contain `{PATH_SEPARATOR}`"),
            });
        }
        match self.weight {
            Some(w) => {
                if !self.children.is_empty() {
                    return Err(Error::InvalidNode {
                        path: path.to_string(),
                        reason: "a node carries either a weight or children, not both".into(),
                    });
                }
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::NonPositiveWeight {
                        path: path.to_string(),
                        weight: w,
                    });
                }
            }
            None => {
                if self.children.is_empty() && !is_root {
                    return Err(Error::InvalidNode {
                        path: path.to_string(),
                        reason: "internal node has no children and no weight".into(),
                    });
                }
                let mut seen = HashSet::with_capacity(self.children.len());
                for child in &self.children {
                    let child_path = format!("{path}{PATH_SEPARATOR}{}", child.name);
                    if !seen.insert(child.name.as_str()) {
                        return Err(Error::InvalidNode {
                            path: child_path,
                            reason: "duplicate sibling name".into(),
                        });
                    }
                    child.validate_at(&child_path, false)?;
                }
            }
        }
        Ok(())
    }

    /// Parses and validates a JSON hierarchy document.
    pub fn from_json(text: &str) -> Result<Self> {
        let node: HierarchyNode = serde_json::from_str(text)?;
        node.validate()?;
        Ok(node)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
