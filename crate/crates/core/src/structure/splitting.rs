use super::{hasse_forest_of_points, GriddedPermutation, Point, TreeNode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Compare positions: how top points split trees.
    Horizontal,
    /// Compare values: how left points split trees.
    Vertical,
}

/// Strict interval test against the tree's position or value span.
pub fn splits(point: Point, tree: &TreeNode, axis: Axis) -> bool {
    match axis {
        Axis::Horizontal => {
            let (lo, hi) = tree.position_span();
            lo < point.pos && point.pos < hi
        }
        Axis::Vertical => {
            let (lo, hi) = tree.value_span();
            lo < point.val && point.val < hi
        }
    }
}

/// Decides 2143-avoidance of the underlying permutation from the gridding
/// alone:
///
/// * no left point lies strictly between a tree's root and its highest
///   non-trunk vertex in value, and
/// * if a left point splits a tree, no top point lies strictly between that
///   tree's root and tip in position.
pub fn gridding_avoids_2143(g: &GriddedPermutation) -> bool {
    let forest = hasse_forest_of_points(&g.lower_points())
        .expect("lower cell of a valid gridding avoids 213");
    let lefts = g.left_points();
    let tops = g.top_points();
    for tree in &forest.trees {
        if let Some(u) = tree.uppermost_non_trunk_vertex() {
            let lo = tree.point.val;
            let hi = u.point.val;
            if lefts.iter().any(|l| lo < l.val && l.val < hi) {
                return false;
            }
        }
        if lefts.iter().any(|&l| splits(l, tree, Axis::Vertical)) {
            let lo = tree.point.pos;
            let hi = tree.tip().point.pos;
            if tops.iter().any(|t| lo < t.pos && t.pos < hi) {
                return false;
            }
        }
    }
    true
}
