//! The positive polynomial system for `D(z, t)`.
//!
//! ```text
//! R1 = 1 + z·R1                 R2 = 1 + zt·R2
//! T  = z·R2 + T²                R3 = 1 + T·R3
//! R4 = 1 + z·R3·R4
//! S  = z³·R1²·R2·(1 + T·R3·R4) + z·R1·S
//! R5 = 1 + R1·(T + S)·R5
//! D  = z·R1·R3·(1 + z·T·R3·R4)·(1 + R1·S·R5)
//! ```
//!
//! Every right-hand side has non-negative coefficients, so truncations are
//! monotone and the solution is found degree by degree.

use num_bigint::BigInt;

use super::fps::Series;
use super::poly::Poly;
use super::ring::Ring;
use super::system::System;
use crate::error::Result;

/// Unknowns of the system, solved through a common order.
#[derive(Clone, Debug)]
pub struct PolySystemSolution<C> {
    pub r1: Series<C>,
    pub r2: Series<C>,
    pub t: Series<C>,
    pub r3: Series<C>,
    pub r4: Series<C>,
    pub s: Series<C>,
    pub r5: Series<C>,
    pub d: Series<C>,
}

pub fn polysystem_d_with<C: Ring>(order: usize, t_marker: &C) -> Result<PolySystemSolution<C>> {
    let mut sys = System::new(order);
    let z = sys.z();
    let one = sys.one();

    let r1 = sys.seq(z);
    let tz = sys.scale(t_marker.clone(), z);
    let r2 = sys.seq(tz);

    let t = sys.var();
    let zr2 = sys.shift(r2);
    let tt = sys.mul(t, t);
    let t_def = sys.add(zr2, tt);
    sys.define(t, t_def);

    let r3 = sys.seq(t);
    let zr3 = sys.shift(r3);
    let r4 = sys.seq(zr3);

    // 1 + T·R3·R4
    let tr3r4 = sys.mul_all(&[t, r3, r4]);
    let one_tr3r4 = sys.add(one, tr3r4);

    let s = sys.var();
    let r1r1 = sys.mul(r1, r1);
    let core = sys.mul_all(&[r1r1, r2, one_tr3r4]);
    let z1 = sys.shift(core);
    let z2 = sys.shift(z1);
    let z3 = sys.shift(z2);
    let r1s = sys.mul(r1, s);
    let zr1s = sys.shift(r1s);
    let s_def = sys.add(z3, zr1s);
    sys.define(s, s_def);

    let ts = sys.add(t, s);
    let r1ts = sys.mul(r1, ts);
    let r5 = sys.seq(r1ts);

    let ztr3r4 = sys.shift(tr3r4);
    let left = sys.add(one, ztr3r4);
    let r1sr5 = sys.mul_all(&[r1, s, r5]);
    let right = sys.add(one, r1sr5);
    let body = sys.mul_all(&[r1, r3, left, right]);
    let d = sys.shift(body);

    let sol = sys.solve()?;
    Ok(PolySystemSolution {
        r1: sol.series(r1),
        r2: sol.series(r2),
        t: sol.series(t),
        r3: sol.series(r3),
        r4: sol.series(r4),
        s: sol.series(s),
        r5: sol.series(r5),
        d: sol.series(d),
    })
}

/// `D(z, t)` over `Z[t]` from the polynomial system.
pub fn polysystem_d(order: usize) -> Result<Series<Poly<BigInt>>> {
    Ok(polysystem_d_with(order, &Poly::var())?.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::closed::closed_form_d_top;
    use crate::series::grammar::{at_unit_left, grammar_d};
    use crate::series::system::solve_tree;

    #[test]
    fn matches_grammar_and_closed_form() {
        let sys = polysystem_d(16).unwrap();
        assert_eq!(sys, at_unit_left(&grammar_d(16).unwrap()));
        assert_eq!(polysystem_d(40).unwrap(), closed_form_d_top(40).unwrap());
    }

    #[test]
    fn auxiliary_unknowns() {
        let one = BigInt::from(1);
        let sol = polysystem_d_with(12, &one).unwrap();
        let z = Series::<BigInt>::z(12);
        assert_eq!(sol.r1, z.seq().unwrap());
        assert_eq!(sol.r2, z.seq().unwrap());
        assert_eq!(sol.t, solve_tree(&z.seq_plus().unwrap()).unwrap());
        assert_eq!(sol.r3, sol.t.seq().unwrap());
    }
}
