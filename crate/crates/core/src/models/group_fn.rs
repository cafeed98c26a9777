//! Compactly supported functions on `G` and their action on the plane models.

use std::sync::Arc;

use crate::group::{group_norm, GroupElement};
use crate::haar::{from_kna, integrate_g, GroupBump, HaarIntegral, KnaBox};
use crate::models::levi::Truncated;
use crate::models::plane::PlaneFunction;
use crate::models::rows::RowFunction;
use crate::quadrature::QuadratureScheme;
use crate::{Result, C64};

type Eval = Arc<dyn Fn(&GroupElement) -> C64 + Send + Sync>;

/// A function on `G` supported in `left * B * right` for a box `B` in
/// `(theta, x, t)` coordinates.
///
/// Haar measure is two-sided invariant, so integrals run over `B` with the
/// integrand translated back. Keeping `B` near the identity keeps the box
/// tight for narrow functions.
#[derive(Clone)]
pub struct GroupFunction {
    f: Eval,
    pub support: KnaBox,
    pub left: GroupElement,
    pub right: GroupElement,
    /// Points covering the support, before framing.
    samples: Arc<Vec<GroupElement>>,
}

impl std::fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupFunction({} {:?} {})", self.left, self.support, self.right)
    }
}

impl GroupFunction {
    pub fn from_fn<F>(support: KnaBox, f: F) -> Self
    where
        F: Fn(&GroupElement) -> C64 + Send + Sync + 'static,
    {
        Self::framed(GroupElement::IDENTITY, support, GroupElement::IDENTITY, f)
    }

    pub fn framed<F>(left: GroupElement, support: KnaBox, right: GroupElement, f: F) -> Self
    where
        F: Fn(&GroupElement) -> C64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            support,
            left,
            right,
            samples: Arc::new(box_samples(&support)),
        }
    }

    fn with_samples(mut self, samples: Vec<GroupElement>) -> Self {
        self.samples = Arc::new(samples);
        self
    }

    pub fn from_bump(bump: GroupBump) -> Result<Self> {
        let ci = bump.center.inverse();
        let local: Vec<GroupElement> = bump.support_samples().iter().map(|g| ci * *g).collect();
        let support = KnaBox::enclosing(&local)?;
        Ok(Self::framed(bump.center, support, GroupElement::IDENTITY, move |g| {
            C64::from(bump.eval(g))
        })
        .with_samples(local))
    }

    /// The bump scaled to unit mass.
    pub fn unit_mass_bump(bump: GroupBump, scheme: &QuadratureScheme) -> Result<Self> {
        let raw = Self::from_bump(bump)?;
        let m = raw.integral(scheme).value;
        Ok(raw.scale(m.inv()))
    }

    pub fn eval(&self, g: &GroupElement) -> C64 {
        (self.f)(g)
    }

    pub fn scale(&self, a: C64) -> Self {
        let f = self.f.clone();
        Self::framed(self.left, self.support, self.right, move |g| a * f(g))
            .with_samples(self.samples.to_vec())
    }

    /// `int_G self(g) F(g) dg`.
    pub fn integrate<F>(&self, f: F, scheme: &QuadratureScheme) -> HaarIntegral
    where
        F: Fn(&GroupElement) -> C64 + Sync,
    {
        let (l, r) = (self.left, self.right);
        integrate_g(
            |h| {
                let g = l * *h * r;
                let v = self.eval(&g);
                if v == C64::new(0.0, 0.0) {
                    v
                } else {
                    v * f(&g)
                }
            },
            &self.support,
            scheme,
        )
    }

    pub fn integral(&self, scheme: &QuadratureScheme) -> HaarIntegral {
        self.integrate(|_| C64::new(1.0, 0.0), scheme)
    }

    /// `phi^v(g) = phi(g^{-1})`.
    pub fn check(&self) -> Result<Self> {
        let inv: Vec<GroupElement> = self.samples.iter().map(|g| g.inverse()).collect();
        let f = self.f.clone();
        Ok(Self::framed(
            self.right.inverse(),
            KnaBox::enclosing(&inv)?,
            self.left.inverse(),
            move |g| f(&g.inverse()),
        )
        .with_samples(inv))
    }

    /// `phi*(g) = conj phi(g^{-1})`.
    pub fn star(&self) -> Result<Self> {
        let c = self.check()?;
        let f = c.f.clone();
        Ok(Self::framed(c.left, c.support, c.right, move |g| f(g).conj()).with_samples(c.samples.to_vec()))
    }

    /// Upper bound for `log |g|` over the support.
    pub fn log_norm_bound(&self) -> f64 {
        self.samples
            .iter()
            .map(|g| group_norm(&(self.left * *g * self.right)).ln())
            .fold(0.0, f64::max)
    }
}

fn box_samples(b: &KnaBox) -> Vec<GroupElement> {
    let m = 8usize;
    let at = |r: (f64, f64), i: usize| r.0 + (r.1 - r.0) * i as f64 / m as f64;
    let mut out = Vec::with_capacity((m + 1).pow(3));
    for i in 0..=m {
        for j in 0..=m {
            for k in 0..=m {
                out.push(from_kna(at(b.theta, i), at(b.x, j), at(b.t, k)));
            }
        }
    }
    out
}

/// `(phi h)(x) = int_G phi(g) h(g^{-1} x) dg`.
///
/// The truncation flag reports whether `phi` is visibly nonzero on the
/// boundary of its declared box.
pub fn act_sc_g(phi: &GroupFunction, h: &PlaneFunction, scheme: &QuadratureScheme) -> Truncated<PlaneFunction> {
    let warn = phi.integral(scheme).truncation_warning;
    let mut decay = h.decay;
    let lg = phi.log_norm_bound();
    decay.u_support = (decay.u_support.0 - lg, decay.u_support.1 + lg);
    let (phi, inner, sch) = (phi.clone(), h.clone(), scheme.clone());
    let out = PlaneFunction::from_fn(h.side(), move |x| {
        phi.integrate(|g| inner.eval(g.inverse().apply(x)), &sch).value
    })
    .with_decay(decay);
    Truncated {
        value: out,
        truncation_warning: warn,
    }
}

/// `(k phi)(y) = int_G phi(g) k(y g) dg` on a row model.
pub fn act_sc_g_row(phi: &GroupFunction, k: &RowFunction, scheme: &QuadratureScheme) -> RowFunction {
    let (phi, inner, sch) = (phi.clone(), k.clone(), scheme.clone());
    RowFunction::from_fn(k.side(), move |r| phi.integrate(|g| inner.eval(g.apply_row(r)), &sch).value)
}
