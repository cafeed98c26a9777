//! The Bernstein unit: a function on `L` extended to `G` through the big cell
//! `Nbar L N`, then spread into a kernel on `G x G`.

use std::sync::Arc;

use crate::adjunction::cosets::KernelOnGxG;
use crate::haar::{integrate_nln, nln_coordinates, GroupBump, NlnBox};
use crate::models::group_fn::GroupFunction;
use crate::models::levi::LeviFunction;
use crate::quadrature::QuadratureScheme;
use crate::{Error, GroupElement, Result, C64};

/// Gaussian of unit mass on a line, cut off at 9 widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineBump {
    pub center: f64,
    pub width: f64,
}

impl LineBump {
    pub const CUTOFF: f64 = 9.0;

    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0 && center.is_finite()) {
            return Err(Error::InvalidGrid("line bump needs a positive width".into()));
        }
        Ok(Self { center, width })
    }

    pub fn support(&self) -> (f64, f64) {
        let r = Self::CUTOFF * self.width;
        (self.center - r, self.center + r)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let d = (x - self.center) / self.width;
        if d.abs() > Self::CUTOFF {
            return 0.0;
        }
        (-0.5 * d * d).exp() / (self.width * (2.0 * std::f64::consts::PI).sqrt())
    }
}

/// Cutoffs `u` on `G` and `v`, `vbar` on `N+`, `N-`, each of total integral 1.
#[derive(Debug, Clone)]
pub struct BumpSpec {
    pub u: GroupFunction,
    pub v: LineBump,
    pub vbar: LineBump,
}

impl BumpSpec {
    pub fn new(u_center: GroupElement, u_width: f64, v: LineBump, vbar: LineBump, scheme: &QuadratureScheme) -> Result<Self> {
        let u = GroupFunction::unit_mass_bump(GroupBump::new(u_center, u_width)?, scheme)?;
        Ok(Self { u, v, vbar })
    }
}

/// `f0(nbar l n) = vbar(nbar) f(l) delta(l)^{-1/2} v(n)` extended by zero,
/// and the kernel `k0(g1, g2) = u(g1) f0(g1 g2)`.
#[derive(Clone)]
pub struct BernsteinUnit {
    f: LeviFunction,
    pub bumps: BumpSpec,
    f0: Arc<dyn Fn(&GroupElement) -> C64 + Send + Sync>,
}

impl std::fmt::Debug for BernsteinUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BernsteinUnit({:?}, {:?})", self.f, self.bumps)
    }
}

pub fn bernstein_unit(f: &LeviFunction, bumps: &BumpSpec) -> BernsteinUnit {
    let (fl, v, vbar) = (f.clone(), bumps.v, bumps.vbar);
    let f0 = move |g: &GroupElement| match nln_coordinates(g) {
        Some((y, alpha, x)) => {
            let a = vbar.eval(y) * v.eval(x);
            if a == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                fl.eval_alpha(alpha) * (a / alpha.abs())
            }
        }
        None => C64::new(0.0, 0.0),
    };
    BernsteinUnit {
        f: f.clone(),
        bumps: bumps.clone(),
        f0: Arc::new(f0),
    }
}

impl BernsteinUnit {
    pub fn f0(&self, g: &GroupElement) -> C64 {
        (self.f0)(g)
    }

    pub fn kernel(&self) -> KernelOnGxG {
        let (u, f0) = (self.bumps.u.clone(), self.f0.clone());
        KernelOnGxG::new(Vec::new(), move |g1, g2| {
            let a = u.eval(g1);
            if a == C64::new(0.0, 0.0) {
                a
            } else {
                a * f0(&(*g1 * *g2))
            }
        })
    }

    /// `int int k0(g1, g2) psi((g1 g2)_11) dg1 dg2`, a functional that only
    /// sees the kernel through the balanced tensor product and is blind to
    /// `Nbar` on the left and `N` on the right.
    pub fn functional<P>(&self, psi: P, scheme: &QuadratureScheme) -> Result<C64>
    where
        P: Fn(f64) -> C64 + Sync,
    {
        // substitute g2 = g1^{-1} g: the inner integral does not depend on g1
        let mass = self.bumps.u.integral(scheme).value;
        let mut inner = C64::new(0.0, 0.0);
        for &sign in self.f.support.signs.list() {
            let bx = NlnBox {
                y: self.bumps.vbar.support(),
                s: self.f.support.s,
                x: self.bumps.v.support(),
                sign,
            };
            let part = integrate_nln(|g| self.f0(g) * psi(g.entries()[0]), &bx, scheme);
            if part.truncation_warning {
                return Err(Error::SupportOverflow("f0 reaches the edge of its box".into()));
            }
            inner += part.value;
        }
        Ok(mass * inner)
    }
}

/// `int_L f(l) |alpha| psi(alpha) dl`, the value every Bernstein functional
/// must take regardless of the bumps.
pub fn bernstein_functional_reference<P>(f: &LeviFunction, psi: P, scheme: &QuadratureScheme) -> C64
where
    P: Fn(f64) -> C64 + Sync,
{
    f.nodes(scheme)
        .into_iter()
        .map(|(sg, s, w)| {
            let alpha = sg * s.exp();
            f.eval(sg, s) * psi(alpha) * (alpha.abs() * w)
        })
        .sum()
}
