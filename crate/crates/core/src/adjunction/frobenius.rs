//! The Frobenius pairing `<<h1, h2>>(l) = <h1, h2 l^{-1}>`, its counit and unit.

use rayon::prelude::*;

use crate::adjunction::cosets::{
    column_of, column_rep, inverse_row_point, row_rep, row_star, Invariance, KernelOnGxG,
};
use crate::group::{GroupElement, Side};
use crate::haar::{integrate_g, line_nodes, GroupBump, KnaBox};
use crate::models::levi::{LeviFunction, LeviSupport, Signs};
use crate::models::norms::{l2_inner, plane_integral};
use crate::models::plane::{act_l_right_alpha, Decay, PlaneFunction};
use crate::models::rows::RowFunction;
use crate::quadrature::QuadratureScheme;
use crate::{Error, Result, C64};

fn overlap_window(side: Side, a: (f64, f64), b: (f64, f64), cap: f64) -> (f64, f64) {
    let (lo, hi) = match side {
        // h2 l^{-1} is h2 shifted by -s in u
        Side::Upper => (b.0 - a.1, b.1 - a.0),
        Side::Lower => (a.0 - b.1, a.1 - b.0),
    };
    (lo.max(-cap), hi.min(cap))
}

/// `l -> <h1, h2 l^{-1}>` as a function on `L`.
///
/// Each evaluation is a plane integral; tabulate the result when it is
/// needed at many points.
pub fn frobenius_pairing(h1: &PlaneFunction, h2: &PlaneFunction, scheme: &QuadratureScheme) -> Result<LeviFunction> {
    if h1.side() != h2.side() {
        return Err(Error::ModelMismatch("pairing across sides".into()));
    }
    let s = overlap_window(h1.side(), h1.decay.u_support, h2.decay.u_support, 2.0 * scheme.truncation);
    let (h1, h2, sch) = (h1.clone(), h2.clone(), scheme.clone());
    Ok(LeviFunction::from_fn(
        LeviSupport {
            s,
            signs: Signs::Both,
        },
        move |sg, s| {
            let alpha_inv = sg * (-s).exp();
            let shifted = act_l_right_alpha(alpha_inv, &h2);
            l2_inner(&h1, &shifted, &sch).map(|t| t.value).unwrap_or(C64::new(f64::NAN, 0.0))
        },
    ))
}

/// `Fr(h1 (x) h2) = <<h1*, h2>>` for `h1` on `N\G` and `h2` on `G/N`.
///
/// `h1_support` is the `log|rho|` window outside which `h1` vanishes.
pub fn frobenius_counit(
    h1: &RowFunction,
    h1_support: (f64, f64),
    h2: &PlaneFunction,
    scheme: &QuadratureScheme,
) -> Result<LeviFunction> {
    if h1.side() != h2.side() {
        return Err(Error::ModelMismatch("counit across sides".into()));
    }
    let star = row_star(h1).with_decay(Decay {
        p: None,
        u_support: h1_support,
    });
    frobenius_pairing(&star, h2, scheme)
}

fn e_matrix(side: Side) -> [f64; 4] {
    match side {
        Side::Upper => [0.0, 1.0, 0.0, 0.0],
        Side::Lower => [0.0, 0.0, 1.0, 0.0],
    }
}

fn raw_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// `int_N F(a n b) dn` for a group bump.
pub fn n_fiber(f: &GroupBump, side: Side, a: &GroupElement, b: &GroupElement) -> f64 {
    let p = (*a * *b).entries();
    let d = raw_mul(raw_mul(a.entries(), e_matrix(side)), b.entries());
    f.line_integral(p, d)
}

/// `y -> int_N F(n y) dn` on `N\G`.
pub fn fiber_row(f: &GroupBump, side: Side) -> RowFunction {
    let f = *f;
    RowFunction::from_fn(side, move |rho| C64::from(n_fiber(&f, side, &GroupElement::IDENTITY, &row_rep(side, rho))))
}

/// `x -> int_N F(x n) dn` on `G/N`.
pub fn fiber_plane(f: &GroupBump, side: Side) -> PlaneFunction {
    let f = *f;
    let decay = Decay {
        p: Some(f64::INFINITY),
        u_support: log_radius_range(f.support_samples().iter().map(|g| column_of(side, g))),
    };
    PlaneFunction::from_fn(side, move |x| {
        C64::from(n_fiber(&f, side, &column_rep(side, x), &GroupElement::IDENTITY))
    })
    .with_decay(decay)
}

/// `log|rho|` window of `fiber_row(f, side)`.
pub fn fiber_row_support(f: &GroupBump, side: Side) -> (f64, f64) {
    log_radius_range(f.support_samples().iter().map(|g| RowFunction::coset_row(side, g)))
}

fn log_radius_range<I: Iterator<Item = [f64; 2]>>(it: I) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in it {
        let u = p[0].hypot(p[1]).ln();
        lo = lo.min(u);
        hi = hi.max(u);
    }
    let pad = 0.05 * (hi - lo) + 1e-6;
    (lo - pad, hi + pad)
}

/// `delta(l)^{1/2} int_N (F1 * F2)(l n) dn`: the counit computed by
/// restricting a convolution to the parabolic subgroup `P = L N`.
pub fn counit_by_restriction(
    f1: &GroupBump,
    f2: &GroupBump,
    side: Side,
    alpha: f64,
    scheme: &QuadratureScheme,
) -> Result<C64> {
    let box1 = KnaBox::enclosing(&f1.support_samples())?;
    let l = GroupElement::levi(alpha)?;
    let (a, b) = (*f1, *f2);
    let conv = |m: &GroupElement| {
        integrate_g(|z| C64::from(a.eval(z) * b.eval(&(z.inverse() * *m))), &box1, scheme).value
    };
    // support of F1 * F2 meets l N where l^{-1} m is unipotent
    let s1 = coarse_samples(f1);
    let s2 = coarse_samples(f2);
    let li = l.inverse();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &s1 {
        for q in &s2 {
            let m = (li * (*p * *q)).entries();
            let x = match side {
                Side::Upper => m[1],
                Side::Lower => m[2],
            };
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    let pad = 0.1 * (hi - lo) + 1e-6;
    let nodes = line_nodes(lo - pad, hi + pad, 64);
    let vals: Vec<C64> = nodes
        .par_iter()
        .map(|&(x, w)| conv(&(l * GroupElement::n(side, x))) * w)
        .collect();
    let delta_half = match side {
        Side::Upper => alpha.abs(),
        Side::Lower => alpha.abs().recip(),
    };
    Ok(vals.into_iter().sum::<C64>() * delta_half)
}

fn coarse_samples(f: &GroupBump) -> Vec<GroupElement> {
    f.support_samples().into_iter().step_by(7).collect()
}

/// `k_f(g1, g2) = int_N f(g1 n g2) dn`, right-N-invariant in `g1` and
/// left-N-invariant in `g2`.
pub fn frobenius_unit_kernel(f: &GroupBump, side: Side) -> KernelOnGxG {
    UnitKernel::new(*f, side).kernel()
}

/// `k_f(x, y) = int_N f(x n y) dn` for `x` in `G/N` and `y` in `N\G`.
#[derive(Debug, Clone, Copy)]
pub struct UnitKernel {
    pub f: GroupBump,
    pub side: Side,
}

impl UnitKernel {
    pub fn new(f: GroupBump, side: Side) -> Self {
        Self { f, side }
    }

    /// Value on plane point `x` and row `rho`.
    pub fn eval(&self, x: [f64; 2], rho: [f64; 2]) -> f64 {
        n_fiber(&self.f, self.side, &column_rep(self.side, x), &row_rep(self.side, rho))
    }

    /// As a kernel on `G x G`, right-N-invariant in the first slot and
    /// left-N-invariant in the second.
    pub fn kernel(&self) -> KernelOnGxG {
        let (f, side) = (self.f, self.side);
        KernelOnGxG::new(
            vec![Invariance::RightFirst(side), Invariance::LeftSecond(side)],
            move |g1, g2| C64::from(n_fiber(&f, side, g1, g2)),
        )
    }

    /// `log|rho|` window where `k_f(x, .)` can be nonzero.
    fn row_window(&self, x: [f64; 2]) -> (f64, f64) {
        let gi = column_rep(self.side, x).inverse();
        let side = self.side;
        log_radius_range(
            self.f
                .support_samples()
                .iter()
                .map(|h| RowFunction::coset_row(side, &(gi * *h))),
        )
    }

    /// `int_{N\G} k_f(x, y) h(y^{-1}) dy`, which reproduces `(f h)(x)`.
    pub fn apply(&self, h: &PlaneFunction, x: [f64; 2], scheme: &QuadratureScheme) -> Result<C64> {
        if h.side() != self.side {
            return Err(Error::ModelMismatch("unit kernel side".into()));
        }
        let (lo, hi) = self.row_window(x);
        let side = self.side;
        Ok(plane_integral(
            |rho| self.eval(x, rho) * h.eval(inverse_row_point(side, rho)),
            lo,
            hi,
            scheme,
        ))
    }
}
