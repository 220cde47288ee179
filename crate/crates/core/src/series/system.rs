//! Online solver for well-founded systems of power-series equations.
//!
//! Expressions are built into an arena of nodes; unknowns are introduced with
//! [`System::var`] and tied to an expression with [`System::define`]. The solver
//! advances one degree at a time: at degree `n` every coefficient below `n` is
//! final, so each product node folds its fixed inner convolution
//! `Σ_{0<k<n} a_k·b_{n−k}` once, and sweeps over the nodes only re-evaluate the
//! two boundary terms until the degree-`n` values of all unknowns stop
//! changing.

use super::fps::Series;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Handle to a node of a [`System`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Expr(usize);

#[derive(Debug)]
enum Node<C> {
    Known,
    Var,
    Lin(Vec<(C, usize)>),
    Mul(usize, usize),
    Shift(usize),
}

#[derive(Debug)]
pub struct System<C> {
    order: usize,
    nodes: Vec<Node<C>>,
    vals: Vec<Vec<C>>,
    /// `defined_by[node] = vars` assigned from that node after evaluation.
    defined_by: Vec<Vec<usize>>,
    var_count: usize,
    defined_count: usize,
}

impl<C: Ring> System<C> {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            nodes: Vec::new(),
            vals: Vec::new(),
            defined_by: Vec::new(),
            var_count: 0,
            defined_count: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn push(&mut self, node: Node<C>, vals: Vec<C>) -> Expr {
        self.nodes.push(node);
        self.vals.push(vals);
        self.defined_by.push(Vec::new());
        Expr(self.nodes.len() - 1)
    }

    fn blank(&self) -> Vec<C> {
        vec![C::zero(); self.order + 1]
    }

    /// A fully known series (truncated or padded to the system order).
    pub fn known(&mut self, s: &Series<C>) -> Expr {
        let mut v = s.coeffs().to_vec();
        v.resize(self.order + 1, C::zero());
        self.push(Node::Known, v)
    }

    pub fn constant(&mut self, c: C) -> Expr {
        let s = Series::constant(c, self.order);
        self.known(&s)
    }

    pub fn one(&mut self) -> Expr {
        self.constant(C::one())
    }

    pub fn z(&mut self) -> Expr {
        let s = Series::z(self.order);
        self.known(&s)
    }

    pub fn var(&mut self) -> Expr {
        self.var_count += 1;
        let b = self.blank();
        self.push(Node::Var, b)
    }

    pub fn define(&mut self, var: Expr, def: Expr) {
        assert!(
            matches!(self.nodes[var.0], Node::Var),
            "only unknowns can be defined"
        );
        assert!(
            self.defined_by.iter().all(|vs| !vs.contains(&var.0)),
            "unknown defined twice"
        );
        self.defined_by[def.0].push(var.0);
        self.defined_count += 1;
    }

    pub fn lin(&mut self, terms: Vec<(C, Expr)>) -> Expr {
        let b = self.blank();
        self.push(
            Node::Lin(terms.into_iter().map(|(c, e)| (c, e.0)).collect()),
            b,
        )
    }

    pub fn add(&mut self, a: Expr, b: Expr) -> Expr {
        self.lin(vec![(C::one(), a), (C::one(), b)])
    }

    pub fn sub(&mut self, a: Expr, b: Expr) -> Expr {
        self.lin(vec![(C::one(), a), (C::from_i64(-1), b)])
    }

    pub fn scale(&mut self, c: C, a: Expr) -> Expr {
        self.lin(vec![(c, a)])
    }

    pub fn mul(&mut self, a: Expr, b: Expr) -> Expr {
        let v = self.blank();
        self.push(Node::Mul(a.0, b.0), v)
    }

    pub fn mul_all(&mut self, factors: &[Expr]) -> Expr {
        let mut acc = factors[0];
        for &f in &factors[1..] {
            acc = self.mul(acc, f);
        }
        acc
    }

    /// Multiplication by `z`.
    pub fn shift(&mut self, a: Expr) -> Expr {
        let v = self.blank();
        self.push(Node::Shift(a.0), v)
    }

    /// `Seq(a) = 1 + a·Seq(a)`; `a` must have zero constant term.
    pub fn seq(&mut self, a: Expr) -> Expr {
        let f = self.var();
        let one = self.one();
        let af = self.mul(a, f);
        let def = self.add(one, af);
        self.define(f, def);
        f
    }

    /// `Seq⁺(a) = a·Seq(a)`.
    pub fn seq_plus(&mut self, a: Expr) -> Expr {
        let s = self.seq(a);
        self.mul(a, s)
    }

    /// Solves through the system order.
    pub fn solve(mut self) -> Result<Solution<C>> {
        if self.defined_count != self.var_count {
            return Err(Error::Precondition(
                "every unknown needs a definition".into(),
            ));
        }
        let cap = self.var_count + 2;
        let mut inner: Vec<C> = vec![C::zero(); self.nodes.len()];
        for n in 0..=self.order {
            for (i, node) in self.nodes.iter().enumerate() {
                if let Node::Mul(a, b) = *node {
                    let mut acc = C::zero();
                    for k in 1..n {
                        acc.add_product(&self.vals[a][k], &self.vals[b][n - k]);
                    }
                    inner[i] = acc;
                }
            }
            let mut passes = 0;
            loop {
                passes += 1;
                if passes > cap {
                    return Err(Error::NoConvergence(n));
                }
                let mut changed = false;
                for i in 0..self.nodes.len() {
                    let value = match &self.nodes[i] {
                        Node::Known | Node::Var => None,
                        Node::Lin(terms) => {
                            let mut acc = C::zero();
                            for (c, j) in terms {
                                acc.add_product(c, &self.vals[*j][n]);
                            }
                            Some(acc)
                        }
                        &Node::Mul(a, b) => {
                            let mut acc = if n == 0 { C::zero() } else { inner[i].clone() };
                            acc.add_product(&self.vals[a][0], &self.vals[b][n]);
                            if n > 0 {
                                acc.add_product(&self.vals[a][n], &self.vals[b][0]);
                            }
                            Some(acc)
                        }
                        &Node::Shift(a) => Some(if n == 0 {
                            C::zero()
                        } else {
                            self.vals[a][n - 1].clone()
                        }),
                    };
                    if let Some(v) = value {
                        self.vals[i][n] = v;
                    }
                    for k in 0..self.defined_by[i].len() {
                        let var = self.defined_by[i][k];
                        if self.vals[var][n] != self.vals[i][n] {
                            self.vals[var][n] = self.vals[i][n].clone();
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        Ok(Solution {
            order: self.order,
            vals: self.vals,
        })
    }
}

/// Coefficients of every node of a solved [`System`].
#[derive(Debug)]
pub struct Solution<C> {
    order: usize,
    vals: Vec<Vec<C>>,
}

impl<C: Ring> Solution<C> {
    pub fn series(&self, e: Expr) -> Series<C> {
        Series::from_coeffs(self.vals[e.0].clone(), self.order)
    }

    pub fn take(&mut self, e: Expr) -> Series<C> {
        Series::from_coeffs(std::mem::take(&mut self.vals[e.0]), self.order)
    }
}

/// `T` with zero constant term solving `T = core + T²`.
pub fn solve_tree<C: Ring>(core: &Series<C>) -> Result<Series<C>> {
    if !core.coeff(0).is_zero() {
        return Err(Error::Precondition(
            "tree core must have zero constant term".into(),
        ));
    }
    let mut sys = System::new(core.order());
    let c = sys.known(core);
    let t = sys.var();
    let tt = sys.mul(t, t);
    let def = sys.add(c, tt);
    sys.define(t, def);
    Ok(sys.solve()?.series(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(s: &Series<BigInt>) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn catalan_trees() {
        let t = solve_tree(&Series::<BigInt>::z(5)).unwrap();
        assert_eq!(ints(&t), vec![0, 1, 1, 2, 5, 14]);
        let zero = solve_tree(&Series::<BigInt>::zero(5)).unwrap();
        assert_eq!(zero, Series::zero(5));
        assert!(solve_tree(&Series::<BigInt>::one(3)).is_err());
    }

    #[test]
    fn core_with_collapsed_markers() {
        // core = z/(1 - z): check T = core + T² coefficientwise
        let z = Series::<BigInt>::z(12);
        let core = z.seq_plus().unwrap();
        let t = solve_tree(&core).unwrap();
        assert_eq!(t, core.add(&t.mul(&t)));
    }

    #[test]
    fn seq_matches_direct_inverse() {
        let order = 10;
        let mut sys = System::<BigInt>::new(order);
        let z = sys.z();
        let zz = sys.mul(z, z);
        let a = sys.add(z, zz);
        let s = sys.seq(a);
        let sp = sys.seq_plus(a);
        let sol = sys.solve().unwrap();
        let direct = sol.series(a).seq().unwrap();
        assert_eq!(sol.series(s), direct);
        assert_eq!(sol.series(sp), sol.series(a).seq_plus().unwrap());
        // Fibonacci numbers
        assert_eq!(ints(&direct), vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
    }

    #[test]
    fn ill_founded_system_reports_no_convergence() {
        // X = 1 + X has no solution
        let mut sys = System::<BigInt>::new(2);
        let x = sys.var();
        let one = sys.one();
        let def = sys.add(one, x);
        sys.define(x, def);
        assert!(matches!(sys.solve(), Err(Error::NoConvergence(0))));
    }

    #[test]
    fn undefined_unknown_is_rejected() {
        let mut sys = System::<BigInt>::new(2);
        sys.var();
        assert!(sys.solve().is_err());
    }
}
