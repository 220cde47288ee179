use serde::Serialize;

use super::{points_of, Point, Shape};
use crate::error::{Error, Result};
use crate::Permutation;

/// A vertex of a Hasse tree. Children are ordered by increasing position and
/// therefore have strictly decreasing values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub point: Point,
    pub children: Vec<TreeNode>,
}

/// The Hasse graph of a 213-avoider: a skew sum of plane trees, listed from
/// the upper-left component to the lower-right one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlaneForest {
    pub trees: Vec<TreeNode>,
}

impl TreeNode {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(TreeNode::size).sum::<usize>()
    }

    pub fn preorder(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.size());
        self.walk(&mut |n| out.push(n.point));
        out
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TreeNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    /// The root followed by repeated first children.
    pub fn trunk(&self) -> Vec<&TreeNode> {
        let mut out = vec![self];
        let mut cur = self;
        while let Some(first) = cur.children.first() {
            out.push(first);
            cur = first;
        }
        out
    }

    pub fn tip(&self) -> &TreeNode {
        let mut cur = self;
        while let Some(first) = cur.children.first() {
            cur = first;
        }
        cur
    }

    /// The trunk vertex nearest the tip having at least two children.
    pub fn uppermost_branching_point(&self) -> Option<&TreeNode> {
        self.trunk()
            .into_iter()
            .rev()
            .find(|n| n.children.len() >= 2)
    }

    /// The highest vertex not on the trunk.
    pub fn uppermost_non_trunk_vertex(&self) -> Option<&TreeNode> {
        let mut best: Option<&TreeNode> = None;
        for t in self.trunk() {
            for c in t.children.iter().skip(1) {
                c.walk(&mut |n| {
                    if best.is_none_or(|b| n.point.val > b.point.val) {
                        best = Some(n);
                    }
                });
            }
        }
        best
    }

    /// Smallest and largest positions, attained at the root and at the last
    /// vertex in preorder.
    pub fn position_span(&self) -> (usize, usize) {
        let mut last = self;
        while let Some(c) = last.children.last() {
            last = c;
        }
        (self.point.pos, last.point.pos)
    }

    /// Smallest and largest values, attained at the root and at the tip.
    pub fn value_span(&self) -> (usize, usize) {
        (self.point.val, self.tip().point.val)
    }

    pub fn shape(&self) -> Shape {
        Shape {
            children: self.children.iter().map(TreeNode::shape).collect(),
        }
    }
}

pub fn trunk(tree: &TreeNode) -> Vec<&TreeNode> {
    tree.trunk()
}

pub fn tip(tree: &TreeNode) -> &TreeNode {
    tree.tip()
}

pub fn uppermost_branching_point(tree: &TreeNode) -> Option<&TreeNode> {
    tree.uppermost_branching_point()
}

impl PlaneForest {
    pub fn size(&self) -> usize {
        self.trees.iter().map(TreeNode::size).sum()
    }

    pub fn shapes(&self) -> Vec<Shape> {
        self.trees.iter().map(TreeNode::shape).collect()
    }
}

pub fn hasse_forest(perm: &Permutation) -> Result<PlaneForest> {
    hasse_forest_of_points(&points_of(perm))
}

/// Hasse forest of a point set given in increasing position order.
///
/// The parent of `v` is the highest point lower-left of `v`. The lower-left
/// set must be a chain; two incomparable members would form a 213 with `v`,
/// which is reported as a precondition failure.
pub fn hasse_forest_of_points(points: &[Point]) -> Result<PlaneForest> {
    let m = points.len();
    if points.windows(2).any(|w| w[0].pos >= w[1].pos) {
        return Err(Error::Precondition(
            "points must be listed in increasing position order".into(),
        ));
    }
    let mut parent: Vec<Option<usize>> = vec![None; m];
    for j in 0..m {
        let v = points[j];
        let below: Vec<usize> = (0..j).filter(|&i| points[i].val < v.val).collect();
        let Some(&top) = below.iter().max_by_key(|&&i| points[i].val) else {
            continue;
        };
        if let Some(&bad) = below
            .iter()
            .find(|&&i| i != top && !points[i].lower_left_of(&points[top]))
        {
            let (a, b) = if bad < top { (bad, top) } else { (top, bad) };
            return Err(Error::Precondition(format!(
                "points ({},{}), ({},{}), ({},{}) form a 213",
                points[a].pos, points[a].val, points[b].pos, points[b].val, v.pos, v.val
            )));
        }
        parent[j] = Some(top);
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut roots = Vec::new();
    for j in 0..m {
        match parent[j] {
            Some(p) => children[p].push(j),
            None => roots.push(j),
        }
    }
    fn build(i: usize, points: &[Point], children: &[Vec<usize>]) -> TreeNode {
        TreeNode {
            point: points[i],
            children: children[i]
                .iter()
                .map(|&c| build(c, points, children))
                .collect(),
        }
    }
    Ok(PlaneForest {
        trees: roots
            .into_iter()
            .map(|r| build(r, points, &children))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{iterate_class, PatternBasis};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn fig3_lower_forest() -> PlaneForest {
        let sigma = p("6,9,10,14,15,12,16,13,11,8,17,18,7,4,5,19,1,20,3,2,21");
        let pts: Vec<Point> = points_of(&sigma)
            .into_iter()
            .filter(|q| q.val <= 15)
            .collect();
        hasse_forest_of_points(&pts).unwrap()
    }

    #[test]
    fn identity_is_a_path() {
        let f = hasse_forest(&Permutation::identity(5)).unwrap();
        assert_eq!(f.trees.len(), 1);
        assert_eq!(f.trees[0].trunk().len(), 5);
        assert_eq!(f.trees[0].tip().point, Point::new(5, 5));
        assert!(f.trees[0].uppermost_branching_point().is_none());
    }

    #[test]
    fn decreasing_is_singletons() {
        let f = hasse_forest(&Permutation::decreasing(4)).unwrap();
        assert_eq!(f.trees.len(), 4);
        for t in &f.trees {
            assert!(t.children.is_empty());
            assert_eq!(t.trunk().len(), 1);
            assert_eq!(t.tip().point, t.point);
            assert!(t.uppermost_branching_point().is_none());
        }
    }

    #[test]
    fn figure_three_lower_cell() {
        let f = fig3_lower_forest();
        assert_eq!(f.trees.len(), 3);
        let upper = &f.trees[0];
        assert_eq!(upper.point, Point::new(1, 6));
        assert_eq!(
            f.trees[1].preorder(),
            vec![Point::new(14, 4), Point::new(15, 5)]
        );
        let third = &f.trees[2];
        assert_eq!(third.point, Point::new(17, 1));
        let kids: Vec<usize> = third.children.iter().map(|c| c.point.pos).collect();
        assert_eq!(kids, vec![19, 20]);

        let trunk: Vec<Point> = trunk(upper).iter().map(|n| n.point).collect();
        assert_eq!(
            trunk,
            vec![
                Point::new(1, 6),
                Point::new(2, 9),
                Point::new(3, 10),
                Point::new(4, 14),
                Point::new(5, 15)
            ]
        );
        assert_eq!(tip(upper).point, Point::new(5, 15));
        let b = uppermost_branching_point(upper).unwrap();
        assert_eq!(b.point, Point::new(3, 10));
        let b_kids: Vec<Point> = b.children.iter().map(|c| c.point).collect();
        assert_eq!(
            b_kids,
            vec![Point::new(4, 14), Point::new(6, 12), Point::new(9, 11)]
        );
        assert_eq!(upper.position_span(), (1, 13));
        assert_eq!(upper.value_span(), (6, 15));
    }

    #[test]
    fn rejects_213() {
        let err = hasse_forest(&p("213")).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn forest_invariants_on_all_213_avoiders() {
        let basis: PatternBasis = "213".parse().unwrap();
        for n in 0..=9 {
            for sigma in iterate_class(&basis, n).unwrap() {
                let f = hasse_forest(&sigma).unwrap();
                assert_eq!(f.size(), n);
                let pts = points_of(&sigma);
                // skew separation of consecutive trees
                for w in f.trees.windows(2) {
                    for a in w[0].preorder() {
                        for b in w[1].preorder() {
                            assert!(a.pos < b.pos && a.val > b.val);
                        }
                    }
                }
                for t in &f.trees {
                    t.walk(&mut |node| {
                        for c in &node.children {
                            assert!(node.point.lower_left_of(&c.point));
                        }
                        for w in node.children.windows(2) {
                            assert!(
                                w[0].point.pos < w[1].point.pos && w[0].point.val > w[1].point.val
                            );
                        }
                        // parent is the highest lower-left point, all of which form a chain
                        for c in &node.children {
                            let below: Vec<&Point> =
                                pts.iter().filter(|q| q.lower_left_of(&c.point)).collect();
                            assert_eq!(below.iter().map(|q| q.val).max(), Some(node.point.val));
                            for q in &below {
                                assert!(**q == node.point || q.lower_left_of(&node.point));
                            }
                        }
                    });
                    // positions in preorder are consecutive
                    let pre = t.preorder();
                    assert!(pre.windows(2).all(|w| w[1].pos == w[0].pos + 1));
                    let max_val = pre.iter().map(|q| q.val).max().unwrap();
                    assert_eq!(t.value_span(), (t.point.val, max_val));
                }
            }
        }
    }
}
