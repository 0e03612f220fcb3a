//! Wiring-cost comparison between inward- and outward-converging searches.
//!
//! Two mirror-image groups of concentric rings sit on the x axis, centers
//! `separation` apart. A search through each group converges on a terminal
//! state: at the group center for an inward search, or on the outermost
//! ring at the point farthest from the other group for an outward one.
//! The wiring cost sums every ring node's distance to its group's terminal
//! plus the distance between the two terminals. Inward placement always
//! wins: its terminals are closer to their own nodes and to each other.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EconomyError {
    #[error("invalid radii: {0}")]
    InvalidRadii(&'static str),
    #[error("separation must be >= 0")]
    InvalidSeparation,
    #[error("nodes per ring must be at least 1")]
    InvalidNodeCount,
}

/// Which way each group's search converges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Inward,
    Outward,
}

/// One of the two ring groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Concentric-ring geometry for the two groups. Group A is centered at
/// `(-separation/2, 0)`, group B at `(+separation/2, 0)`; B is the mirror
/// image of A, so the whole figure is symmetric about the y axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub radii: Vec<f64>,
    pub nodes_per_ring: usize,
    pub separation: f64,
    pub mode: SearchMode,
}

/// Per-layout cost breakdown: node-to-terminal sums within each group and
/// the terminal-to-terminal link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub intra_a: f64,
    pub intra_b: f64,
    pub inter: f64,
    pub total: f64,
}

// Negated comparisons reject NaN along with out-of-range values.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn build_layout(
    radii: &[f64],
    nodes_per_ring: usize,
    separation: f64,
    mode: SearchMode,
) -> Result<Layout, EconomyError> {
    if radii.is_empty() {
        return Err(EconomyError::InvalidRadii("at least one ring required"));
    }
    for r in radii {
        if !(*r > 0.0) {
            return Err(EconomyError::InvalidRadii("radii must be > 0"));
        }
    }
    for pair in radii.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(EconomyError::InvalidRadii("radii must be strictly decreasing"));
        }
    }
    if nodes_per_ring == 0 {
        return Err(EconomyError::InvalidNodeCount);
    }
    if !(separation >= 0.0) {
        return Err(EconomyError::InvalidSeparation);
    }
    Ok(Layout {
        radii: radii.to_vec(),
        nodes_per_ring,
        separation,
        mode,
    })
}

impl Layout {
    pub fn group_center(&self, group: Group) -> Point {
        let x = self.separation / 2.0;
        match group {
            Group::A => Point { x: -x, y: 0.0 },
            Group::B => Point { x, y: 0.0 },
        }
    }

    /// Terminal state of a group: the center for an inward search, or the
    /// outermost ring's far side (away from the other group) for an
    /// outward one.
    pub fn terminal(&self, group: Group) -> Point {
        let center = self.group_center(group);
        match self.mode {
            SearchMode::Inward => center,
            SearchMode::Outward => {
                let r = self.radii[0];
                let x = match group {
                    Group::A => center.x - r,
                    Group::B => center.x + r,
                };
                Point { x, y: 0.0 }
            }
        }
    }

    /// Nodes of one ring, uniformly spaced. Group A's first node points
    /// toward group B; group B mirrors group A through the y axis.
    pub fn ring_nodes(&self, group: Group, ring: usize) -> Vec<Point> {
        let center = self.group_center(group);
        let radius = self.radii[ring];
        let n = self.nodes_per_ring;
        (0..n)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                let (dx, dy) = (radius * theta.cos(), radius * theta.sin());
                match group {
                    Group::A => Point {
                        x: center.x + dx,
                        y: dy,
                    },
                    Group::B => Point {
                        x: center.x - dx,
                        y: dy,
                    },
                }
            })
            .collect()
    }

    /// All ring nodes of a group, outermost ring first.
    pub fn nodes(&self, group: Group) -> Vec<Point> {
        (0..self.radii.len())
            .flat_map(|ring| self.ring_nodes(group, ring))
            .collect()
    }
}

/// Sums Euclidean node-to-terminal distances per group plus the
/// terminal-to-terminal distance.
pub fn wiring_cost(layout: &Layout) -> CostReport {
    let intra = |group: Group| {
        let terminal = layout.terminal(group);
        layout
            .nodes(group)
            .iter()
            .map(|node| node.distance(&terminal))
            .sum::<f64>()
    };
    let intra_a = intra(Group::A);
    let intra_b = intra(Group::B);
    let inter = layout.terminal(Group::A).distance(&layout.terminal(Group::B));
    CostReport {
        intra_a,
        intra_b,
        inter,
        total: intra_a + intra_b + inter,
    }
}
