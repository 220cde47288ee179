//! Uniform random generation of members of D and H by the recursive method.
//!
//! Exact counts of every grammar symbol are tabulated once. A uniform rank
//! below the class count is then unranked top-down through the grammar: each
//! product is split by scanning the size of its first factor in the order
//! `0, n, 1, n−1, …`, each union by comparing with the first alternative's
//! count. The resulting structure is laid out as a [`Skeleton`] and rebuilt
//! into a permutation.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit seed. The `j`-th sample
//! of a batch uses seed `seed + j`, so batches are reproducible and
//! independent of the number of threads.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structure::skeleton::forest_layout;
use crate::structure::{rebuild, Shape, Skeleton};
use crate::Permutation;

type Table = Vec<BigInt>;

fn ones_from(start: usize, n_max: usize) -> Table {
    (0..=n_max)
        .map(|n| {
            if n >= start {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

fn product(a: &Table, b: &Table) -> Table {
    let n_max = a.len() - 1;
    (0..=n_max)
        .map(|n| (0..=n).fold(BigInt::zero(), |acc, k| acc + &a[k] * &b[n - k]))
        .collect()
}

fn sequence(x: &Table) -> Table {
    let n_max = x.len() - 1;
    let mut s: Table = vec![BigInt::one()];
    for n in 1..=n_max {
        let v = (1..=n).fold(BigInt::zero(), |acc, k| acc + &x[k] * &s[n - k]);
        s.push(v);
    }
    s
}

fn shifted(x: &Table) -> Table {
    let mut out = vec![BigInt::zero()];
    out.extend_from_slice(&x[..x.len() - 1]);
    out
}

fn sum(a: &Table, b: &Table) -> Table {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Exact counts, by size, of every symbol of the grammars of H and D.
///
/// Top and left points count towards the size like any other point.
#[derive(Clone, Debug)]
pub struct WeightTables {
    n_max: usize,
    /// `Seq⁺(Z)`: non-empty paths.
    pub p: Table,
    /// A tree vertex with its run of top points.
    v: Table,
    /// Trees whose vertices carry top points.
    pub t: Table,
    /// `Seq(T)`.
    pub f: Table,
    /// `Seq⁺(T)`.
    a: Table,
    /// `Seq(Z × F)`: a trunk below a branching point.
    w: Table,
    /// `Z × Seq⁺(T)`: a branching vertex with its extra subtrees.
    branch: Table,
    branch_w: Table,
    /// Upper trees.
    pub u: Table,
    /// The class H.
    pub h: Table,
    /// `Z × Seq(Z × Seq(ℓZ))`: paths with left points below non-lowest vertices.
    pub l: Table,
    seq_z: Table,
    la: Table,
    la_plus: Table,
    seq_la: Table,
    la_tail: Table,
    l_minus_p: Table,
    /// Split paths with their top points.
    pub q: Table,
    aw: Table,
    /// Trees split by left points.
    pub s: Table,
    ts: Table,
    block: Table,
    seq_block: Table,
    block_tail: Table,
    s_tail: Table,
    /// The class D.
    pub d: Table,
}

/// Tabulates every symbol up to size `n_max`.
pub fn build_tables(n_max: usize) -> WeightTables {
    let p = ones_from(1, n_max);
    let v = ones_from(1, n_max);
    // F = 1 + T·F with T = V·F, so T_n = Σ_{k<n} F_k
    let mut f: Table = vec![BigInt::one()];
    let mut t: Table = vec![BigInt::zero()];
    let mut prefix = BigInt::zero();
    for n in 1..=n_max {
        prefix += &f[n - 1];
        t.push(prefix.clone());
        let fv = (1..=n).fold(BigInt::zero(), |acc, k| acc + &t[k] * &f[n - k]);
        f.push(fv);
    }
    let zf = shifted(&f);
    let w = sequence(&zf);
    let mut a = f.clone();
    a[0] = BigInt::zero();
    let branch = shifted(&a);
    let branch_w = product(&branch, &w);
    let u_branched = product(&p, &branch_w);
    let u = sum(&p, &u_branched);
    let h = product(&u, &f);

    let seq_z = ones_from(0, n_max);
    let la = ones_from(1, n_max);
    let la_plus = ones_from(2, n_max);
    let seq_la = sequence(&la);
    let l = shifted(&seq_la);
    let la_tail = product(&la_plus, &seq_la);
    let path_rest = product(&seq_z, &la_tail);
    let l_minus_p = shifted(&path_rest);
    let q = product(&l_minus_p, &seq_z);
    let aw = product(&a, &w);
    let q_branched = product(&q, &aw);
    let s = sum(&q, &q_branched);
    let ts = sum(&t, &s);
    let block = product(&seq_z, &ts);
    let seq_block = sequence(&block);
    let block_tail = product(&seq_block, &seq_z);
    let s_tail = product(&s, &block_tail);
    let split = product(&h, &s_tail);
    let d = sum(&h, &split);
    WeightTables {
        n_max,
        p,
        v,
        t,
        f,
        a,
        w,
        branch,
        branch_w,
        u,
        h,
        l,
        seq_z,
        la,
        la_plus,
        seq_la,
        la_tail,
        l_minus_p,
        q,
        aw,
        s,
        ts,
        block,
        seq_block,
        block_tail,
        s_tail,
        d,
    }
}

/// The two classes that can be sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    /// `Av(4213, 2413, 2143)`.
    H,
    /// `Av(4213, 2143)`.
    D,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::H => "H",
            Class::D => "D",
        }
    }
}

impl std::str::FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "H" | "h" => Ok(Class::H),
            "D" | "d" => Ok(Class::D),
            other => Err(Error::Precondition(format!(
                "unknown class {other:?}, expected H or D"
            ))),
        }
    }
}

impl WeightTables {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of members of `class` of size `n`.
    pub fn count(&self, class: Class, n: usize) -> Result<&BigInt> {
        if n > self.n_max {
            return Err(Error::OrderTooLarge {
                requested: n,
                available: self.n_max,
            });
        }
        Ok(match class {
            Class::H => &self.h[n],
            Class::D => &self.d[n],
        })
    }
}

/// Size of the first factor and ranks within both factors of a product.
fn split(a: &Table, b: &Table, n: usize, rank: &BigInt) -> (usize, BigInt, BigInt) {
    let mut r = rank.clone();
    let mut lo = 0;
    let mut hi = n;
    let mut from_low = true;
    while lo <= hi {
        let k = if from_low { lo } else { hi };
        let block = &a[k] * &b[n - k];
        if r < block {
            let rb = &b[n - k];
            return (k, &r / rb, &r % rb);
        }
        r -= block;
        if from_low {
            lo += 1;
        } else if hi == 0 {
            break;
        } else {
            hi -= 1;
        }
        from_low = !from_low;
    }
    unreachable!("rank {rank} out of range for size {n}")
}

/// A vertex of a sampled tree, with the top points just after it and the left
/// points just below it.
#[derive(Clone, Debug, Default)]
struct Node {
    tops: usize,
    lefts_below: usize,
    children: Vec<Node>,
}

impl Node {
    fn shape(&self) -> Shape {
        Shape {
            children: self.children.iter().map(Node::shape).collect(),
        }
    }

    /// Chain whose vertices are listed from the lowest (root) upwards.
    fn chain(mut vertices: Vec<Node>) -> Node {
        let mut top = vertices.pop().expect("non-empty chain");
        while let Some(mut v) = vertices.pop() {
            v.children.insert(0, top);
            top = v;
        }
        top
    }
}

#[derive(Default)]
struct Forest {
    trees: Vec<Node>,
    /// Left points just above the highest point of the tree with that index.
    lefts_above_tree: Vec<(usize, usize)>,
    lefts_at_bottom: usize,
}

struct Unranker<'a> {
    tb: &'a WeightTables,
}

impl Unranker<'_> {
    fn seq<X>(
        &self,
        x: &Table,
        seq: &Table,
        mut n: usize,
        rank: &BigInt,
        mut f: impl FnMut(usize, BigInt) -> X,
    ) -> Vec<X> {
        let mut out = Vec::new();
        let mut r = rank.clone();
        while n > 0 {
            let (k, rx, rs) = split(x, seq, n, &r);
            out.push(f(k, rx));
            n -= k;
            r = rs;
        }
        out
    }

    fn tree(&self, n: usize, rank: &BigInt) -> Node {
        let (k, _, rf) = split(&self.tb.v, &self.tb.f, n, rank);
        Node {
            tops: k - 1,
            lefts_below: 0,
            children: self.trees(n - k, &rf),
        }
    }

    fn trees(&self, n: usize, rank: &BigInt) -> Vec<Node> {
        self.seq(&self.tb.t, &self.tb.f, n, rank, |k, r| self.tree(k, &r))
    }

    /// Trunk below a branching vertex: each element is a vertex with its
    /// extra subtrees, listed downwards.
    fn trunk(&self, n: usize, rank: &BigInt) -> Vec<Vec<Node>> {
        let zf = shifted(&self.tb.f);
        self.seq(&zf, &self.tb.w, n, rank, |k, r| self.trees(k - 1, &r))
    }

    fn hang(mut top: Node, trunk: Vec<Vec<Node>>) -> Node {
        for extra in trunk {
            let mut children = vec![top];
            children.extend(extra);
            top = Node {
                tops: 0,
                lefts_below: 0,
                children,
            };
        }
        top
    }

    fn upper(&self, n: usize, rank: &BigInt) -> Node {
        let tb = self.tb;
        if rank < &tb.p[n] {
            return Node::chain(vec![Node::default(); n]);
        }
        let r = rank - &tb.p[n];
        let (above, _, rbw) = split(&tb.p, &tb.branch_w, n, &r);
        let (kb, rb, rw) = split(&tb.branch, &tb.w, n - above, &rbw);
        let mut children = vec![Node::chain(vec![Node::default(); above])];
        children.extend(self.trees(kb - 1, &rb));
        let b = Node {
            tops: 0,
            lefts_below: 0,
            children,
        };
        Self::hang(b, self.trunk(n - above - kb, &rw))
    }

    fn h(&self, n: usize, rank: &BigInt) -> Forest {
        let (ku, ru, rf) = split(&self.tb.u, &self.tb.f, n, rank);
        let mut trees = vec![self.upper(ku, &ru)];
        trees.extend(self.trees(n - ku, &rf));
        Forest {
            trees,
            ..Forest::default()
        }
    }

    /// A path with at least one left point, listed from its lowest vertex.
    fn split_path(&self, n: usize, rank: &BigInt) -> Vec<Node> {
        let tb = self.tb;
        let mut path = vec![Node::default()];
        let (plain, _, rt) = split(&tb.seq_z, &tb.la_tail, n - 1, rank);
        path.extend(vec![Node::default(); plain]);
        let (k, _, rs) = split(&tb.la_plus, &tb.seq_la, n - 1 - plain, &rt);
        path.push(Node {
            tops: 0,
            lefts_below: k - 1,
            children: Vec::new(),
        });
        let rest = self.seq(&tb.la, &tb.seq_la, n - 1 - plain - k, &rs, |k, _| Node {
            tops: 0,
            lefts_below: k - 1,
            children: Vec::new(),
        });
        path.extend(rest);
        path
    }

    fn q(&self, n: usize, rank: &BigInt) -> Vec<Node> {
        let (kl, rl, _) = split(&self.tb.l_minus_p, &self.tb.seq_z, n, rank);
        let mut path = self.split_path(kl, &rl);
        path.last_mut().expect("non-empty path").tops = n - kl;
        path
    }

    fn s(&self, n: usize, rank: &BigInt) -> Node {
        let tb = self.tb;
        if rank < &tb.q[n] {
            return Node::chain(self.q(n, rank));
        }
        let r = rank - &tb.q[n];
        let (kq, rq, raw) = split(&tb.q, &tb.aw, n, &r);
        let mut path = self.q(kq, &rq);
        let (ka, ra, rw) = split(&tb.a, &tb.w, n - kq, &raw);
        let rest = path.split_off(1);
        let mut b = path.pop().expect("lowest vertex");
        b.children.push(Node::chain(rest));
        b.children.extend(self.trees(ka, &ra));
        Self::hang(b, self.trunk(n - kq - ka, &rw))
    }

    fn d(&self, n: usize, rank: &BigInt) -> Forest {
        let tb = self.tb;
        if rank < &tb.h[n] {
            return self.h(n, rank);
        }
        let r = rank - &tb.h[n];
        let (kh, rh, rst) = split(&tb.h, &tb.s_tail, n, &r);
        let mut forest = self.h(kh, &rh);
        let (ks, rs, rbt) = split(&tb.s, &tb.block_tail, n - kh, &rst);
        forest.trees.push(self.s(ks, &rs));
        let rest = n - kh - ks;
        let (kb, rb, _) = split(&tb.seq_block, &tb.seq_z, rest, &rbt);
        forest.lefts_at_bottom = rest - kb;
        let blocks = self.seq(&tb.block, &tb.seq_block, kb, &rb, |k, r| {
            let (lefts, _, rt) = split(&tb.seq_z, &tb.ts, k, &r);
            let size = k - lefts;
            let tree = if rt < tb.t[size] {
                self.tree(size, &rt)
            } else {
                self.s(size, &(&rt - &tb.t[size]))
            };
            (lefts, tree)
        });
        for (lefts, tree) in blocks {
            forest.lefts_above_tree.push((forest.trees.len(), lefts));
            forest.trees.push(tree);
        }
        forest
    }
}

fn tip_index(trees: &[Node], tree: usize) -> usize {
    let offset: usize = trees[..tree].iter().map(node_count).sum();
    let mut depth = 0;
    let mut cur = &trees[tree];
    while let Some(c) = cur.children.first() {
        cur = c;
        depth += 1;
    }
    // the first-child chain occupies consecutive preorder slots
    offset + depth
}

fn node_count(node: &Node) -> usize {
    1 + node.children.iter().map(node_count).sum::<usize>()
}

fn to_skeleton(forest: Forest) -> Skeleton {
    let shapes: Vec<Shape> = forest.trees.iter().map(Node::shape).collect();
    let layout = forest_layout(&shapes);
    let m = layout.len();
    let mut tops_after = vec![0; m + 1];
    let mut lefts_above = vec![0; m + 1];
    fn walk<'a>(node: &'a Node, out: &mut Vec<&'a Node>) {
        out.push(node);
        for c in &node.children {
            walk(c, out);
        }
    }
    let mut nodes = Vec::with_capacity(m);
    for t in &forest.trees {
        walk(t, &mut nodes);
    }
    for (node, &(pos, val)) in nodes.iter().zip(&layout) {
        tops_after[pos] += node.tops;
        lefts_above[val - 1] += node.lefts_below;
    }
    for &(tree, lefts) in &forest.lefts_above_tree {
        let (_, val) = layout[tip_index(&forest.trees, tree)];
        lefts_above[val] += lefts;
    }
    lefts_above[0] += forest.lefts_at_bottom;
    Skeleton {
        trees: shapes,
        tops_after,
        lefts_above,
    }
}

/// A uniform sample below `bound` from a 64-bit-seeded stream.
fn uniform_below(bound: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let excess = bytes as u64 * 8 - bits;
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        if let Some(first) = buf.first_mut() {
            *first &= 0xffu8 >> excess;
        }
        let r = BigInt::from_bytes_be(Sign::Plus, &buf);
        if &r < bound {
            return r;
        }
    }
}

/// Empirical statistics of a batch of samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleStats {
    pub class: Class,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean_top: f64,
    pub var_top: f64,
    pub se_top: f64,
    pub mean_left: f64,
    pub var_left: f64,
    pub se_left: f64,
    /// Fraction of samples with no left point, i.e. lying in H.
    pub fraction_in_h: f64,
    pub se_fraction_in_h: f64,
}

/// Mean, unbiased variance and standard error of the mean.
fn summary(xs: &[f64]) -> (f64, f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var, (var / k).sqrt())
}

/// Uniform sampler for one class, backed by precomputed tables.
#[derive(Clone, Debug)]
pub struct Sampler {
    class: Class,
    tables: WeightTables,
}

impl Sampler {
    /// Tabulates counts up to `n_max`.
    pub fn new(class: Class, n_max: usize) -> Self {
        Self {
            class,
            tables: build_tables(n_max),
        }
    }

    pub fn from_tables(class: Class, tables: WeightTables) -> Self {
        Self { class, tables }
    }

    pub fn class(&self) -> Class {
        self.class
    }

    pub fn tables(&self) -> &WeightTables {
        &self.tables
    }

    pub fn count(&self, n: usize) -> Result<&BigInt> {
        self.tables.count(self.class, n)
    }

    /// The structure with the given rank among the class members of size `n`.
    pub fn unrank(&self, n: usize, rank: &BigInt) -> Result<Skeleton> {
        let count = self.count(n)?;
        if rank.sign() == Sign::Minus || rank >= count {
            return Err(Error::Precondition(format!(
                "rank {rank} outside 0..{count}"
            )));
        }
        let u = Unranker { tb: &self.tables };
        let forest = match self.class {
            Class::H => u.h(n, rank),
            Class::D => u.d(n, rank),
        };
        Ok(to_skeleton(forest))
    }

    pub fn unrank_permutation(&self, n: usize, rank: &BigInt) -> Result<Permutation> {
        rebuild(&self.unrank(n, rank)?)
    }

    pub fn sample_skeleton(&self, n: usize, seed: u64) -> Result<Skeleton> {
        let count = self.count(n)?;
        if count.is_zero() {
            return Err(Error::ZeroCount(n));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rank = uniform_below(count, &mut rng);
        self.unrank(n, &rank)
    }

    /// A uniform member of size `n`, determined by `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Permutation> {
        rebuild(&self.sample_skeleton(n, seed)?)
    }

    /// `count` samples; sample `j` uses seed `seed + j`.
    pub fn sample_many(&self, n: usize, count: usize, seed: u64) -> Result<Vec<Permutation>> {
        (0..count)
            .into_par_iter()
            .map(|j| self.sample(n, seed.wrapping_add(j as u64)))
            .collect()
    }

    /// Top and left point statistics over `trials` samples.
    pub fn sample_stats(&self, n: usize, trials: usize, seed: u64) -> Result<SampleStats> {
        if trials == 0 {
            return Err(Error::Precondition("at least one trial is needed".into()));
        }
        let stats: Vec<(usize, usize)> = (0..trials)
            .into_par_iter()
            .map(|j| {
                let sk = self.sample_skeleton(n, seed.wrapping_add(j as u64))?;
                Ok((sk.top_count(), sk.left_count()))
            })
            .collect::<Result<_>>()?;
        let tops: Vec<f64> = stats.iter().map(|s| s.0 as f64).collect();
        let lefts: Vec<f64> = stats.iter().map(|s| s.1 as f64).collect();
        let in_h: Vec<f64> = stats
            .iter()
            .map(|s| if s.1 == 0 { 1.0 } else { 0.0 })
            .collect();
        let (mean_top, var_top, se_top) = summary(&tops);
        let (mean_left, var_left, se_left) = summary(&lefts);
        let (fraction_in_h, _, se_fraction_in_h) = summary(&in_h);
        Ok(SampleStats {
            class: self.class,
            n,
            trials,
            seed,
            mean_top,
            var_top,
            se_top,
            mean_left,
            var_left,
            se_left,
            fraction_in_h,
            se_fraction_in_h,
        })
    }
}

/// Index of `perm` among `members` as a `usize`, for frequency tables.
pub fn frequency_table(samples: &[Permutation], members: &[Permutation]) -> Vec<usize> {
    let index: std::collections::HashMap<&Permutation, usize> =
        members.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut freq = vec![0; members.len()];
    for s in samples {
        if let Some(&i) = index.get(s) {
            freq[i] += 1;
        }
    }
    freq
}

/// Pearson's statistic of observed frequencies against the uniform law.
pub fn chi_square_uniform(freq: &[usize]) -> f64 {
    let total: usize = freq.iter().sum();
    let expected = total as f64 / freq.len() as f64;
    freq.iter()
        .map(|&f| (f as f64 - expected).powi(2) / expected)
        .sum()
}
