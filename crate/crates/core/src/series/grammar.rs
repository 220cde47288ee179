//! Generating functions of the canonical-gridding grammars.
//!
//! `z` marks points, `t` top points and `ℓ` left points. Markers are passed as
//! ring elements, so the same code yields integer counts (markers 1), marker
//! polynomials, jets for moments or residues modulo a prime.
//!
//! * `P = Seq⁺(Z)`: a path.
//! * `T = Z × Seq(tZ) × Seq(T)`: a tree whose every vertex carries the run of
//!   top points just after it.
//! * `U = P + Seq⁺(Z) × (Z × Seq⁺(T)) × Seq(Z × Seq(T))`: the upper tree, split
//!   at its uppermost branching point; trunk vertices carry no top points.
//! * `H = U × Seq(T)`.
//! * `L = Z × Seq(Z × Seq(ℓZ))`: a path whose non-lowest vertices carry the
//!   left points just below them.
//! * `Q = (L − P) × Seq(tZ)`, `S = Q + Q × Seq⁺(T) × Seq(Z × Seq(T))`: a tree
//!   split by left points.
//! * `D = H + H × S × Seq(Seq(ℓZ) × (T + S)) × Seq(ℓZ)`.

use num_bigint::BigInt;

use super::fps::Series;
use super::poly::Poly;
use super::ring::Ring;
use super::system::{Expr, Solution, System};
use crate::error::Result;

/// Marker polynomials in `ℓ` nested inside polynomials in `t`:
/// `c.coeff(a).coeff(b)` is the coefficient of `t^a ℓ^b`.
pub type Trivariate = Poly<Poly<BigInt>>;

/// Every symbol of the H grammar.
#[derive(Clone, Debug)]
pub struct HSymbols<C> {
    pub p: Series<C>,
    pub t: Series<C>,
    pub f: Series<C>,
    pub u: Series<C>,
    pub h: Series<C>,
}

/// Every symbol of the D grammar.
#[derive(Clone, Debug)]
pub struct DSymbols<C> {
    pub p: Series<C>,
    pub t: Series<C>,
    pub f: Series<C>,
    pub u: Series<C>,
    pub h: Series<C>,
    pub l: Series<C>,
    pub q: Series<C>,
    pub s: Series<C>,
    pub d: Series<C>,
}

struct HExprs {
    seq_tz: Expr,
    p: Expr,
    t: Expr,
    f: Expr,
    a: Expr,
    w: Expr,
    u: Expr,
    h: Expr,
}

fn build_h<C: Ring>(sys: &mut System<C>, t_marker: &C) -> HExprs {
    let z = sys.z();
    let tz = sys.scale(t_marker.clone(), z);
    let seq_tz = sys.seq(tz);
    let seq_z = sys.seq(z);
    let p = sys.shift(seq_z);
    // T = z·Seq(tz) + T²
    let t = sys.var();
    let core = sys.shift(seq_tz);
    let tt = sys.mul(t, t);
    let t_def = sys.add(core, tt);
    sys.define(t, t_def);
    let f = sys.seq(t);
    let one = sys.one();
    let a = sys.sub(f, one);
    let branch = sys.shift(a);
    let zf = sys.shift(f);
    let w = sys.seq(zf);
    let branched = sys.mul_all(&[p, branch, w]);
    let u = sys.add(p, branched);
    let h = sys.mul(u, f);
    HExprs {
        seq_tz,
        p,
        t,
        f,
        a,
        w,
        u,
        h,
    }
}

pub fn grammar_h_with<C: Ring>(order: usize, t: &C) -> Result<HSymbols<C>> {
    let mut sys = System::new(order);
    let e = build_h(&mut sys, t);
    let sol = sys.solve()?;
    Ok(HSymbols {
        p: sol.series(e.p),
        t: sol.series(e.t),
        f: sol.series(e.f),
        u: sol.series(e.u),
        h: sol.series(e.h),
    })
}

pub fn grammar_d_with<C: Ring>(order: usize, t: &C, l: &C) -> Result<DSymbols<C>> {
    let mut sys = System::new(order);
    let e = build_h(&mut sys, t);
    let z = sys.z();
    let lz = sys.scale(l.clone(), z);
    let seq_lz = sys.seq(lz);
    let z_seq_lz = sys.shift(seq_lz);
    let inner = sys.seq(z_seq_lz);
    let lpath = sys.shift(inner);
    let lp = sys.sub(lpath, e.p);
    let q = sys.mul(lp, e.seq_tz);
    let qaw = sys.mul_all(&[q, e.a, e.w]);
    let s = sys.add(q, qaw);
    let ts = sys.add(e.t, s);
    let block = sys.mul(seq_lz, ts);
    let blocks = sys.seq(block);
    let split = sys.mul_all(&[e.h, s, blocks, seq_lz]);
    let d = sys.add(e.h, split);
    let sol: Solution<C> = sys.solve()?;
    Ok(DSymbols {
        p: sol.series(e.p),
        t: sol.series(e.t),
        f: sol.series(e.f),
        u: sol.series(e.u),
        h: sol.series(e.h),
        l: sol.series(lpath),
        q: sol.series(q),
        s: sol.series(s),
        d: sol.series(d),
    })
}

/// `H(z, t)` with coefficients in `Z[t]`.
pub fn grammar_h(order: usize) -> Result<Series<Poly<BigInt>>> {
    Ok(grammar_h_with(order, &Poly::var())?.h)
}

/// `D(z, t, ℓ)` with coefficients in `Z[t][ℓ]`.
pub fn grammar_d(order: usize) -> Result<Series<Trivariate>> {
    let t: Trivariate = Poly::var();
    let l: Trivariate = Poly::constant(Poly::var());
    Ok(grammar_d_with(order, &t, &l)?.d)
}

/// Counts `[z^n]` at unit markers for `n = 0..=order`, as `(H_n, D_n)`.
pub fn class_counts(order: usize) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let one = BigInt::from(1);
    let syms = grammar_d_with(order, &one, &one)?;
    Ok((syms.h.into_coeffs(), syms.d.into_coeffs()))
}

/// Specialises a trivariate series at `ℓ = 1`.
pub fn at_unit_left(s: &Series<Trivariate>) -> Series<Poly<BigInt>> {
    s.map(|c| c.map(Poly::sum))
}

/// Specialises a trivariate series at `ℓ = 0`.
pub fn at_zero_left(s: &Series<Trivariate>) -> Series<Poly<BigInt>> {
    s.map(|c| c.map(|inner| inner.coeff(0)))
}

/// Specialises a trivariate series at `t = 1`, leaving a series in `ℓ`.
pub fn at_unit_top(s: &Series<Trivariate>) -> Series<Poly<BigInt>> {
    s.map(Poly::sum)
}
