//! Griddings in the grid class `[∅, Av(21); Av(21), Av(213)]`, Hasse forests
//! of 213-avoiders and canonical decompositions of members of D and H.
//!
//! Coordinates are 1-based throughout: a [`Point`] of a permutation `σ` is
//! `(i, σ(i))`.

mod canonical;
mod forest;
mod gridding;
pub(crate) mod skeleton;
mod splitting;

pub use canonical::{canonical_gridding_d, canonical_gridding_h, Anchor, CanonicalGridding};
pub use forest::{
    hasse_forest, hasse_forest_of_points, tip, trunk, uppermost_branching_point, PlaneForest,
    TreeNode,
};
pub use gridding::{
    all_griddings, avoids_213, is_valid_gridding, render_ascii, GriddedPermutation,
};
pub use skeleton::{rebuild, Shape, Skeleton};
pub use splitting::{gridding_avoids_2143, splits, Axis};

use serde::Serialize;

/// A point `(position, value)` of a permutation plot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub pos: usize,
    pub val: usize,
}

impl Point {
    pub fn new(pos: usize, val: usize) -> Self {
        Self { pos, val }
    }

    /// Strictly below and to the left of `other`.
    pub fn lower_left_of(&self, other: &Point) -> bool {
        self.pos < other.pos && self.val < other.val
    }
}

/// The points of a permutation in position order.
pub fn points_of(perm: &crate::Permutation) -> Vec<Point> {
    perm.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| Point::new(i + 1, v as usize))
        .collect()
}
