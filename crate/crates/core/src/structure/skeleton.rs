use super::{is_valid_gridding, GriddedPermutation};
use crate::error::{Error, Result};
use crate::Permutation;

/// An unlabelled plane tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Shape {
    pub children: Vec<Shape>,
}

impl Shape {
    pub fn leaf() -> Self {
        Self::default()
    }

    /// A path on `k >= 1` vertices.
    pub fn path(k: usize) -> Self {
        let mut s = Self::leaf();
        for _ in 1..k {
            s = Self { children: vec![s] };
        }
        s
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Shape::size).sum::<usize>()
    }
}

/// The combinatorial content of a gridding: the plane forest of the
/// lower-right cell plus how top and left points interleave with it.
///
/// With `m` lower points, `tops_after[0]` counts top points before every
/// lower point and `tops_after[i]` those immediately after the `i`-th lower
/// point in position order. Likewise `lefts_above[0]` counts left points below
/// every lower point and `lefts_above[i]` those immediately above the `i`-th
/// lower point in value order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Skeleton {
    pub trees: Vec<Shape>,
    pub tops_after: Vec<usize>,
    pub lefts_above: Vec<usize>,
}

impl Skeleton {
    pub fn lower_count(&self) -> usize {
        self.trees.iter().map(Shape::size).sum()
    }

    pub fn top_count(&self) -> usize {
        self.tops_after.iter().sum()
    }

    pub fn left_count(&self) -> usize {
        self.lefts_above.iter().sum()
    }

    pub fn size(&self) -> usize {
        self.lower_count() + self.top_count() + self.left_count()
    }
}

/// Local coordinates of a forest on `m` points: positions follow preorder,
/// and within a tree the values descend through the first child's subtree,
/// then the later children's subtrees, then the vertex itself. Returns
/// `(position, value)` pairs in preorder, both 1-based.
pub(crate) fn forest_layout(trees: &[Shape]) -> Vec<(usize, usize)> {
    fn preorder(s: &Shape, next: &mut usize, out: &mut Vec<usize>, desc: &mut Vec<usize>) {
        let me = *next;
        *next += 1;
        out.push(me);
        for c in &s.children {
            preorder(c, next, out, desc);
        }
        desc.push(me);
    }
    // `desc` collects each vertex after its subtree, which lists the first
    // child's subtree, later subtrees, then the vertex: descending value order.
    let mut next = 0;
    let mut order = Vec::new();
    let mut desc = Vec::new();
    for t in trees {
        preorder(t, &mut next, &mut order, &mut desc);
    }
    let m = next;
    let mut val = vec![0; m];
    for (rank, &i) in desc.iter().enumerate() {
        val[i] = m - rank;
    }
    order.into_iter().map(|i| (i + 1, val[i])).collect()
}

/// Reassembles the permutation described by a skeleton.
pub fn rebuild(sk: &Skeleton) -> Result<Permutation> {
    let m = sk.lower_count();
    if sk.tops_after.len() != m + 1 || sk.lefts_above.len() != m + 1 {
        return Err(Error::Inconsistent(format!(
            "interleaving vectors must have length {} (forest has {m} points), got {} and {}",
            m + 1,
            sk.tops_after.len(),
            sk.lefts_above.len()
        )));
    }
    let lefts = sk.left_count();
    let tops = sk.top_count();
    let r = lefts + m;
    let n = r + tops;

    // value of the lower point of local value rank k (1-based), and of the
    // left points, interleaved bottom-up
    let mut lower_value = vec![0; m + 1];
    let mut left_values = Vec::with_capacity(lefts);
    let mut v = 0;
    for k in 0..=m {
        if k > 0 {
            v += 1;
            lower_value[k] = v;
        }
        for _ in 0..sk.lefts_above[k] {
            v += 1;
            left_values.push(v);
        }
    }

    let layout = forest_layout(&sk.trees);
    let mut values = Vec::with_capacity(n);
    values.extend(left_values.iter().map(|&x| x as u32));
    let mut next_top = r;
    let mut push_tops = |count: usize, values: &mut Vec<u32>| {
        for _ in 0..count {
            next_top += 1;
            values.push(next_top as u32);
        }
    };
    push_tops(sk.tops_after[0], &mut values);
    for (i, &(_, local_val)) in layout.iter().enumerate() {
        values.push(lower_value[local_val] as u32);
        push_tops(sk.tops_after[i + 1], &mut values);
    }
    let perm = Permutation::new(values)?;
    if !is_valid_gridding(&perm, lefts, r) {
        return Err(Error::Inconsistent(format!(
            "rebuilt {perm} is not gridded by ({lefts}, {r})"
        )));
    }
    Ok(perm)
}

/// The gridding carried by a rebuilt skeleton.
pub(crate) fn rebuild_gridded(sk: &Skeleton) -> Result<GriddedPermutation> {
    let perm = rebuild(sk)?;
    GriddedPermutation::new(perm, sk.left_count(), sk.left_count() + sk.lower_count())
}
