//! Coset representatives, the star maps between `G/N` and `N\G`, and kernels on `G x G`.

use std::fmt;
use std::sync::Arc;

use crate::group::{GroupElement, Side};
use crate::models::plane::PlaneFunction;
use crate::models::rows::RowFunction;
use crate::C64;

/// A representative `g` of the coset `x` in `G/N`: `g e1 = x` (upper) or `g e2 = x` (lower).
pub fn column_rep(side: Side, x: [f64; 2]) -> GroupElement {
    let r2 = x[0] * x[0] + x[1] * x[1];
    match side {
        Side::Upper => GroupElement::from_raw([x[0], -x[1] / r2, x[1], x[0] / r2]),
        Side::Lower => GroupElement::from_raw([x[1] / r2, x[0], -x[0] / r2, x[1]]),
    }
}

/// A representative of the coset with row `rho` in `N\G` (second row for
/// `N+`, first row for `N-`).
pub fn row_rep(side: Side, rho: [f64; 2]) -> GroupElement {
    let r2 = rho[0] * rho[0] + rho[1] * rho[1];
    match side {
        Side::Upper => GroupElement::from_raw([rho[1] / r2, -rho[0] / r2, rho[0], rho[1]]),
        Side::Lower => GroupElement::from_raw([rho[0], rho[1], -rho[1] / r2, rho[0] / r2]),
    }
}

/// Plane point of `g N`.
pub fn column_of(side: Side, g: &GroupElement) -> [f64; 2] {
    match side {
        Side::Upper => g.column(0),
        Side::Lower => g.column(1),
    }
}

/// Plane point of the coset `y^{-1} N` for the row `rho` of `y`:
/// `(rho2, -rho1)` for `N+` and `(-rho2, rho1)` for `N-`.
pub fn inverse_row_point(side: Side, rho: [f64; 2]) -> [f64; 2] {
    match side {
        Side::Upper => [rho[1], -rho[0]],
        Side::Lower => [-rho[1], rho[0]],
    }
}

/// Row of `x^{-1}` for the plane point `x` of `g N`.
pub fn inverse_column_row(side: Side, x: [f64; 2]) -> [f64; 2] {
    match side {
        Side::Upper => [-x[1], x[0]],
        Side::Lower => [x[1], -x[0]],
    }
}

/// `h*(g N) = conj h(N g^{-1})`.
pub fn row_star(h: &RowFunction) -> PlaneFunction {
    let (h, side) = (h.clone(), h.side());
    PlaneFunction::from_fn(side, move |x| h.eval(inverse_column_row(side, x)).conj())
}

/// `h*(N g) = conj h(g^{-1} N)`.
pub fn plane_star(h: &PlaneFunction) -> RowFunction {
    let (h, side) = (h.clone(), h.side());
    RowFunction::from_fn(side, move |rho| h.eval(inverse_row_point(side, rho)).conj())
}

/// Declared invariance of a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariance {
    /// `k(g1 n, g2) = k(g1, g2)` for `n` in the unipotent subgroup of `side`.
    RightFirst(Side),
    /// `k(g1, n g2) = k(g1, g2)`.
    LeftSecond(Side),
}

type Eval = Arc<dyn Fn(&GroupElement, &GroupElement) -> C64 + Send + Sync>;

/// A function on `G x G` with its declared invariances.
#[derive(Clone)]
pub struct KernelOnGxG {
    f: Eval,
    pub invariances: Vec<Invariance>,
}

impl fmt::Debug for KernelOnGxG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KernelOnGxG({:?})", self.invariances)
    }
}

impl KernelOnGxG {
    pub fn new<F>(invariances: Vec<Invariance>, f: F) -> Self
    where
        F: Fn(&GroupElement, &GroupElement) -> C64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            invariances,
        }
    }

    pub fn eval(&self, g1: &GroupElement, g2: &GroupElement) -> C64 {
        (self.f)(g1, g2)
    }

    /// Largest violation of the declared invariances, relative to the largest
    /// sampled magnitude, over `(g1, g2, x)` samples with `n = n(x)`.
    pub fn invariance_defect(&self, samples: &[(GroupElement, GroupElement, f64)]) -> f64 {
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for (g1, g2, x) in samples {
            let base = self.eval(g1, g2);
            scale = scale.max(base.norm());
            for inv in &self.invariances {
                let moved = match *inv {
                    Invariance::RightFirst(s) => self.eval(&(*g1 * GroupElement::n(s, *x)), g2),
                    Invariance::LeftSecond(s) => self.eval(g1, &(GroupElement::n(s, *x) * *g2)),
                };
                worst = worst.max((moved - base).norm());
            }
        }
        if scale > 0.0 {
            worst / scale
        } else {
            worst
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_are_unimodular_and_hit_their_cosets() {
        let p = [0.7, -1.9];
        for side in [Side::Upper, Side::Lower] {
            let g = column_rep(side, p);
            assert!((g.det() - 1.0).abs() < 1e-14);
            assert_eq!(column_of(side, &g), p);
            let y = row_rep(side, p);
            assert!((y.det() - 1.0).abs() < 1e-14);
            assert_eq!(RowFunction::coset_row(side, &y), p);
            let yi = column_of(side, &y.inverse());
            let q = inverse_row_point(side, p);
            assert!((yi[0] - q[0]).abs() < 1e-15 && (yi[1] - q[1]).abs() < 1e-15);
            let gi = RowFunction::coset_row(side, &g.inverse());
            let q = inverse_column_row(side, p);
            assert!((gi[0] - q[0]).abs() < 1e-15 && (gi[1] - q[1]).abs() < 1e-15);
        }
    }
}
