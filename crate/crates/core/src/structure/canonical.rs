use super::skeleton::rebuild_gridded;
use super::{hasse_forest_of_points, rebuild, GriddedPermutation, PlaneForest, Point, Skeleton};
use crate::error::{Error, Result};
use crate::perm::{avoids_all, PatternBasis};
use crate::Permutation;

/// Where a top or left point sits relative to the lower-right cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// Before every lower point (tops) or below every lower point (lefts).
    Start,
    /// Immediately after (tops) or immediately above (lefts) this lower point.
    Lower(Point),
}

/// A gridding together with its decomposition: the Hasse forest of the
/// lower-right cell and the attachment of every top and left point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalGridding {
    pub gridded: GriddedPermutation,
    pub forest: PlaneForest,
    /// Each top point with the nearest lower point strictly to its left.
    pub top_assignment: Vec<(Point, Anchor)>,
    /// Each left point with the nearest lower point strictly below it.
    pub left_assignment: Vec<(Point, Anchor)>,
}

impl CanonicalGridding {
    /// Decomposes an arbitrary valid gridding.
    pub fn decompose(gridded: GriddedPermutation) -> Self {
        let lower = gridded.lower_points();
        let forest =
            hasse_forest_of_points(&lower).expect("lower cell of a valid gridding avoids 213");
        let top_assignment = gridded
            .top_points()
            .into_iter()
            .map(|t| {
                let a = lower
                    .iter()
                    .rev()
                    .find(|q| q.pos < t.pos)
                    .map_or(Anchor::Start, |&q| Anchor::Lower(q));
                (t, a)
            })
            .collect();
        let left_assignment = gridded
            .left_points()
            .into_iter()
            .map(|l| {
                let a = lower
                    .iter()
                    .filter(|q| q.val < l.val)
                    .max_by_key(|q| q.val)
                    .map_or(Anchor::Start, |&q| Anchor::Lower(q));
                (l, a)
            })
            .collect();
        Self {
            gridded,
            forest,
            top_assignment,
            left_assignment,
        }
    }

    pub fn perm(&self) -> &Permutation {
        self.gridded.perm()
    }

    pub fn top_count(&self) -> usize {
        self.top_assignment.len()
    }

    pub fn left_count(&self) -> usize {
        self.left_assignment.len()
    }

    pub fn skeleton(&self) -> Skeleton {
        let lower = self.gridded.lower_points();
        let m = lower.len();
        let mut by_value: Vec<usize> = lower.iter().map(|q| q.val).collect();
        by_value.sort_unstable();
        let mut tops_after = vec![0; m + 1];
        for (_, a) in &self.top_assignment {
            let slot = match a {
                Anchor::Start => 0,
                Anchor::Lower(q) => {
                    1 + lower
                        .iter()
                        .position(|x| x == q)
                        .expect("anchor is a lower point")
                }
            };
            tops_after[slot] += 1;
        }
        let mut lefts_above = vec![0; m + 1];
        for (_, a) in &self.left_assignment {
            let slot = match a {
                Anchor::Start => 0,
                Anchor::Lower(q) => {
                    1 + by_value
                        .binary_search(&q.val)
                        .expect("anchor is a lower point")
                }
            };
            lefts_above[slot] += 1;
        }
        Skeleton {
            trees: self.forest.shapes(),
            tops_after,
            lefts_above,
        }
    }

    /// Rebuilds the permutation from the forest shapes and the assignments
    /// only, and checks the result reproduces this decomposition.
    pub fn rebuild(&self) -> Result<Permutation> {
        let sk = self.skeleton();
        let g = rebuild_gridded(&sk)?;
        let again = Self::decompose(g);
        if again.forest.shapes() != self.forest.shapes()
            || again.top_count() != self.top_count()
            || again.left_count() != self.left_count()
        {
            return Err(Error::Inconsistent(
                "assignments contradict the grid cells".into(),
            ));
        }
        rebuild(&sk)
    }
}

/// The gridding of a member of H with no left points and as few top points
/// as possible.
pub fn canonical_gridding_h(perm: &Permutation) -> Result<CanonicalGridding> {
    if !avoids_all(perm, &PatternBasis::class_h()) {
        return Err(Error::NotInClass {
            perm: perm.to_string(),
            class: "H",
        });
    }
    let n = perm.len();
    let r = (0..=n)
        .rev()
        .find(|&r| super::is_valid_gridding(perm, 0, r))
        .ok_or_else(|| Error::NotInClass {
            perm: perm.to_string(),
            class: "H",
        })?;
    Ok(CanonicalGridding::decompose(GriddedPermutation::new(
        perm.clone(),
        0,
        r,
    )?))
}

/// The gridding of a member of D with as few left points as possible and,
/// given those, as few top points as possible.
pub fn canonical_gridding_d(perm: &Permutation) -> Result<CanonicalGridding> {
    if !avoids_all(perm, &PatternBasis::class_d()) {
        return Err(Error::NotInClass {
            perm: perm.to_string(),
            class: "D",
        });
    }
    let n = perm.len();
    for c in 0..=n {
        if let Some(r) = (0..=n)
            .rev()
            .find(|&r| super::is_valid_gridding(perm, c, r))
        {
            return Ok(CanonicalGridding::decompose(GriddedPermutation::new(
                perm.clone(),
                c,
                r,
            )?));
        }
    }
    Err(Error::NotInClass {
        perm: perm.to_string(),
        class: "D",
    })
}
