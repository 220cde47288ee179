use std::fmt::Write as _;

use super::{points_of, Point};
use crate::error::{Error, Result};
use crate::Permutation;

/// A permutation with a column cut `c` and a row cut `r`.
///
/// Positions `1..=c` form the left column and values `1..=r` the lower row.
/// The upper-left cell is empty, the left and top cells are increasing and
/// the lower-right cell avoids 213.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GriddedPermutation {
    perm: Permutation,
    c: usize,
    r: usize,
}

impl GriddedPermutation {
    pub fn new(perm: Permutation, c: usize, r: usize) -> Result<Self> {
        if !is_valid_gridding(&perm, c, r) {
            return Err(Error::Inconsistent(format!(
                "({c}, {r}) is not a valid gridding of {perm}"
            )));
        }
        Ok(Self { perm, c, r })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn col_cut(&self) -> usize {
        self.c
    }

    pub fn row_cut(&self) -> usize {
        self.r
    }

    /// Points of the left cell, in position (equivalently value) order.
    pub fn left_points(&self) -> Vec<Point> {
        points_of(&self.perm).into_iter().take(self.c).collect()
    }

    /// Points of the top cell, in position order.
    pub fn top_points(&self) -> Vec<Point> {
        points_of(&self.perm)
            .into_iter()
            .filter(|p| p.val > self.r)
            .collect()
    }

    /// Points of the lower-right cell, in position order.
    pub fn lower_points(&self) -> Vec<Point> {
        points_of(&self.perm)
            .into_iter()
            .filter(|p| p.pos > self.c && p.val <= self.r)
            .collect()
    }
}

/// O(n²) test: for each candidate middle entry, take the smallest earlier
/// entry above it and look for any later entry above that.
pub fn avoids_213(values: &[usize]) -> bool {
    let n = values.len();
    let mut suffix_max = vec![0; n + 1];
    for i in (0..n).rev() {
        suffix_max[i] = suffix_max[i + 1].max(values[i]);
    }
    for j in 1..n {
        let mid = values[j];
        let lowest_above = values[..j].iter().copied().filter(|&v| v > mid).min();
        if let Some(a) = lowest_above {
            if suffix_max[j + 1] > a {
                return false;
            }
        }
    }
    true
}

pub fn is_valid_gridding(perm: &Permutation, c: usize, r: usize) -> bool {
    let n = perm.len();
    if c > n || r > n {
        return false;
    }
    let v = perm.values();
    let left = &v[..c];
    if left.iter().any(|&x| x as usize > r) || left.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    let top: Vec<u32> = v.iter().copied().filter(|&x| x as usize > r).collect();
    if top.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    let lower: Vec<usize> = v[c..]
        .iter()
        .map(|&x| x as usize)
        .filter(|&x| x <= r)
        .collect();
    avoids_213(&lower)
}

/// Every valid `(c, r)` pair, ordered by `c` then `r`.
pub fn all_griddings(perm: &Permutation) -> Vec<GriddedPermutation> {
    let n = perm.len();
    let mut out = Vec::new();
    for c in 0..=n {
        for r in 0..=n {
            if is_valid_gridding(perm, c, r) {
                out.push(GriddedPermutation {
                    perm: perm.clone(),
                    c,
                    r,
                });
            }
        }
    }
    out
}

/// Text plot with the highest value on the first row. Cut lines are drawn
/// between columns `c` and `c+1` and between rows `r` and `r+1`.
pub fn render_ascii(g: &GriddedPermutation) -> String {
    let n = g.perm.len();
    let v = g.perm.values();
    let mut out = String::new();
    let hline = |out: &mut String| {
        for pos in 1..=n {
            if pos == g.c + 1 && g.c > 0 {
                out.push('+');
            }
            out.push_str("--");
        }
        if g.c == n && n > 0 {
            out.push('+');
        }
        out.push('\n');
    };
    for val in (1..=n).rev() {
        if val == g.r && g.r < n {
            hline(&mut out);
        }
        for pos in 1..=n {
            if pos == g.c + 1 && g.c > 0 {
                out.push('|');
            }
            out.push_str(if v[pos - 1] as usize == val {
                " o"
            } else {
                " ."
            });
        }
        if g.c == n && n > 0 {
            out.push('|');
        }
        let _ = writeln!(out, "  {val}");
    }
    out
}
