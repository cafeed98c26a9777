//! Functions on the punctured plane, which models both `G/N+` (first column
//! of `g`) and `G/N-` (second column of `g`). Left translation is the linear
//! action on column vectors in both cases.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::{GroupElement, Side};
use crate::{Error, Result, C64};

/// Angle offset identifying the plane angle with the K-angle on `side`:
/// `k_phi e1` has angle `phi`, `k_phi e2` has angle `phi + pi/2`.
pub fn k_angle_offset(side: Side) -> f64 {
    match side {
        Side::Upper => 0.0,
        Side::Lower => FRAC_PI_2,
    }
}

/// `r^{-1-i mu} e^{i j theta}` (upper) or `r^{-1+i mu} e^{i j (theta - pi/2)}` (lower).
///
/// These are the K-type vectors of the principal series realized on each side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousAtom {
    pub mu: C64,
    pub j: i32,
}

impl HomogeneousAtom {
    /// `r h(r, theta)` at `u = log r`.
    pub fn eval_log_polar(&self, side: Side, u: f64, theta: f64) -> C64 {
        let radial = match side {
            Side::Upper => (-C64::i() * self.mu * u).exp(),
            Side::Lower => (C64::i() * self.mu * u).exp(),
        };
        radial * C64::from_polar(1.0, self.j as f64 * (theta - k_angle_offset(side)))
    }
}

/// `A r^{-1} exp(-(u-u0)^2 / (2 sigma^2)) exp(kappa cos(theta - theta0)) e^{i j theta}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogPolarBump {
    pub u0: f64,
    pub sigma: f64,
    pub theta0: f64,
    pub kappa: f64,
    #[serde(default)]
    pub j: i32,
    pub amplitude: C64,
}

impl LogPolarBump {
    /// Bump of unit L2 norm.
    pub fn normalized(u0: f64, sigma: f64, theta0: f64, kappa: f64) -> Self {
        let mut b = Self {
            u0,
            sigma,
            theta0,
            kappa,
            j: 0,
            amplitude: C64::from(1.0),
        };
        b.amplitude = C64::from(1.0 / b.l2_norm_squared().sqrt());
        b
    }

    pub fn with_k_type(mut self, j: i32) -> Self {
        self.j = j;
        self
    }

    pub fn eval_log_polar(&self, u: f64, theta: f64) -> C64 {
        let d = (u - self.u0) / self.sigma;
        let mag = (-0.5 * d * d + self.kappa * (theta - self.theta0).cos()).exp();
        self.amplitude * C64::from_polar(mag, self.j as f64 * theta)
    }

    /// `|A|^2 sigma sqrt(pi) 2 pi I0(2 kappa)`.
    pub fn l2_norm_squared(&self) -> f64 {
        self.amplitude.norm_sqr() * self.sigma * PI.sqrt() * 2.0 * PI * bessel_i0(2.0 * self.kappa)
    }
}

/// Modified Bessel function `I0` by its power series (moderate arguments).
pub fn bessel_i0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k * k) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Samples of `H(u, theta) = r h(r, theta)` on a uniform log-polar grid.
///
/// Evaluation uses four-point Lagrange interpolation in each variable,
/// periodic in `theta`, and is zero outside the `u` range.
#[derive(Debug, Clone, PartialEq)]
pub struct LogPolarGrid {
    pub u0: f64,
    pub du: f64,
    pub nu: usize,
    pub ntheta: usize,
    /// Row-major in `(u, theta)`.
    pub values: Vec<C64>,
}

impl LogPolarGrid {
    pub fn new(u0: f64, du: f64, nu: usize, ntheta: usize, values: Vec<C64>) -> Result<Self> {
        if nu < 4 || ntheta < 4 || !(du > 0.0) || values.len() != nu * ntheta {
            return Err(Error::InvalidGrid(format!(
                "grid needs nu, ntheta >= 4 and nu*ntheta values (nu={nu}, ntheta={ntheta}, len={})",
                values.len()
            )));
        }
        Ok(Self {
            u0,
            du,
            nu,
            ntheta,
            values,
        })
    }

    /// Samples `f(u, theta) = r h` on the grid.
    pub fn sample<F: Fn(f64, f64) -> C64>(u0: f64, du: f64, nu: usize, ntheta: usize, f: F) -> Result<Self> {
        let mut values = Vec::with_capacity(nu * ntheta);
        for a in 0..nu {
            let u = u0 + a as f64 * du;
            for b in 0..ntheta {
                values.push(f(u, Self::theta_at(ntheta, b)));
            }
        }
        Self::new(u0, du, nu, ntheta, values)
    }

    pub fn theta_at(ntheta: usize, b: usize) -> f64 {
        2.0 * PI * b as f64 / ntheta as f64
    }

    pub fn u_range(&self) -> (f64, f64) {
        (self.u0, self.u0 + (self.nu - 1) as f64 * self.du)
    }

    pub fn node(&self, a: usize, b: usize) -> C64 {
        self.values[a * self.ntheta + b]
    }

    pub fn eval_log_polar(&self, u: f64, theta: f64) -> C64 {
        let (lo, hi) = self.u_range();
        if u < lo || u > hi {
            return C64::new(0.0, 0.0);
        }
        let pu = (u - self.u0) / self.du;
        let base_u = (pu.floor() as isize - 1).clamp(0, self.nu as isize - 4) as usize;
        let wu = lagrange4(pu - base_u as f64);
        let dth = 2.0 * PI / self.ntheta as f64;
        let pt = theta.rem_euclid(2.0 * PI) / dth;
        let base_t = pt.floor() as isize - 1;
        let wt = lagrange4(pt - base_t as f64);
        let mut acc = C64::new(0.0, 0.0);
        for (i, wi) in wu.iter().enumerate() {
            let row = (base_u + i) * self.ntheta;
            for (k, wk) in wt.iter().enumerate() {
                let b = (base_t + k as isize).rem_euclid(self.ntheta as isize) as usize;
                acc += self.values[row + b] * (wi * wk);
            }
        }
        acc
    }
}

/// Weights of the cubic through nodes 0, 1, 2, 3 at position `x`.
fn lagrange4(x: f64) -> [f64; 4] {
    let (a, b, c, d) = (x, x - 1.0, x - 2.0, x - 3.0);
    [
        -b * c * d / 6.0,
        a * c * d / 2.0,
        -a * b * d / 2.0,
        a * b * c / 6.0,
    ]
}

type Evaluator = Arc<dyn Fn([f64; 2]) -> C64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Atom(HomogeneousAtom),
    Bump(LogPolarBump),
    Grid(Arc<LogPolarGrid>),
    Func(Evaluator),
}

/// Declared decay: the Harish-Chandra exponent `p` (if any) and the `u`
/// window outside of which the function is negligible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decay {
    pub p: Option<f64>,
    pub u_support: (f64, f64),
}

impl Default for Decay {
    fn default() -> Self {
        Self {
            p: None,
            u_support: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

/// A function on the plane model of `G/N` for one side.
#[derive(Clone)]
pub struct PlaneFunction {
    side: Side,
    repr: Repr,
    pub decay: Decay,
}

impl fmt::Debug for PlaneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Atom(a) => format!("{a:?}"),
            Repr::Bump(b) => format!("{b:?}"),
            Repr::Grid(g) => format!("grid {}x{}", g.nu, g.ntheta),
            Repr::Func(_) => "closure".to_string(),
        };
        write!(f, "PlaneFunction({}, {kind})", self.side.as_str())
    }
}

/// Tag describing how a plane function is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    ClosedForm,
    Grid,
    Derived,
}

impl PlaneFunction {
    pub fn atom(side: Side, atom: HomogeneousAtom) -> Self {
        Self {
            side,
            repr: Repr::Atom(atom),
            decay: Decay::default(),
        }
    }

    pub fn bump(side: Side, bump: LogPolarBump) -> Self {
        let w = 12.0 * bump.sigma;
        Self {
            side,
            repr: Repr::Bump(bump),
            decay: Decay {
                p: Some(f64::INFINITY),
                u_support: (bump.u0 - w, bump.u0 + w),
            },
        }
    }

    pub fn grid(side: Side, grid: LogPolarGrid) -> Self {
        let u_support = grid.u_range();
        Self {
            side,
            repr: Repr::Grid(Arc::new(grid)),
            decay: Decay {
                p: Some(f64::INFINITY),
                u_support,
            },
        }
    }

    pub fn from_fn<F>(side: Side, f: F) -> Self
    where
        F: Fn([f64; 2]) -> C64 + Send + Sync + 'static,
    {
        Self {
            side,
            repr: Repr::Func(Arc::new(f)),
            decay: Decay::default(),
        }
    }

    /// The function given in log-polar form `H(u, theta) = r h(r, theta)`.
    pub fn from_log_polar<F>(side: Side, f: F) -> Self
    where
        F: Fn(f64, f64) -> C64 + Send + Sync + 'static,
    {
        Self::from_fn(side, move |x| {
            let r = x[0].hypot(x[1]);
            f(r.ln(), x[1].atan2(x[0])) / r
        })
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = decay;
        self
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn representation(&self) -> Representation {
        match self.repr {
            Repr::Atom(_) | Repr::Bump(_) => Representation::ClosedForm,
            Repr::Grid(_) => Representation::Grid,
            Repr::Func(_) => Representation::Derived,
        }
    }

    pub fn as_atom(&self) -> Option<HomogeneousAtom> {
        match self.repr {
            Repr::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_grid(&self) -> Option<&LogPolarGrid> {
        match &self.repr {
            Repr::Grid(g) => Some(g),
            _ => None,
        }
    }

    /// `h(x)`; the origin evaluates to zero.
    pub fn eval(&self, x: [f64; 2]) -> C64 {
        let r = x[0].hypot(x[1]);
        if r == 0.0 {
            return C64::new(0.0, 0.0);
        }
        match &self.repr {
            Repr::Func(f) => f(x),
            _ => self.eval_log_polar(r.ln(), x[1].atan2(x[0])) / r,
        }
    }

    /// `r h(r, theta)` at `u = log r`.
    pub fn eval_log_polar(&self, u: f64, theta: f64) -> C64 {
        match &self.repr {
            Repr::Atom(a) => a.eval_log_polar(self.side, u, theta),
            Repr::Bump(b) => b.eval_log_polar(u, theta),
            Repr::Grid(g) => g.eval_log_polar(u, theta),
            Repr::Func(f) => {
                let r = u.exp();
                let (s, c) = theta.sin_cos();
                f([r * c, r * s]) * r
            }
        }
    }

    pub fn scale(&self, a: C64) -> Self {
        let h = self.clone();
        Self::from_fn(self.side, move |x| a * h.eval(x)).with_decay(self.decay)
    }

    /// `sum_i a_i h_i`; all terms must share a side.
    pub fn linear_combination(terms: &[(C64, PlaneFunction)]) -> Result<Self> {
        let side = terms
            .first()
            .map(|t| t.1.side)
            .ok_or_else(|| Error::ModelMismatch("empty linear combination".into()))?;
        if terms.iter().any(|t| t.1.side != side) {
            return Err(Error::ModelMismatch("terms live on different sides".into()));
        }
        let lo = terms.iter().map(|t| t.1.decay.u_support.0).fold(f64::INFINITY, f64::min);
        let hi = terms.iter().map(|t| t.1.decay.u_support.1).fold(f64::NEG_INFINITY, f64::max);
        let p = terms
            .iter()
            .map(|t| t.1.decay.p)
            .try_fold(f64::INFINITY, |acc, p| p.map(|p| acc.min(p)));
        let terms = terms.to_vec();
        Ok(Self::from_fn(side, move |x| terms.iter().map(|(a, h)| a * h.eval(x)).sum())
            .with_decay(Decay { p, u_support: (lo, hi) }))
    }

    /// Resamples onto a uniform log-polar grid.
    pub fn to_grid(&self, u0: f64, du: f64, nu: usize, ntheta: usize) -> Result<LogPolarGrid> {
        LogPolarGrid::sample(u0, du, nu, ntheta, |u, t| self.eval_log_polar(u, t))
    }
}

/// `Xi_{G/N}(x) = 1/|x|` on either side.
pub fn xi_gmodn(x: [f64; 2], _side: Side) -> Result<f64> {
    let r = x[0].hypot(x[1]);
    if r == 0.0 {
        return Err(Error::Origin);
    }
    Ok(r.recip())
}

/// `|x| = max(r, 1/r)` on either side.
pub fn norm_gmodn(x: [f64; 2], _side: Side) -> Result<f64> {
    let r = x[0].hypot(x[1]);
    if r == 0.0 {
        return Err(Error::Origin);
    }
    Ok(r.max(r.recip()))
}

/// Left translation `(g h)(x) = h(g^{-1} x)`.
pub fn act_g_left(g: &GroupElement, h: &PlaneFunction) -> PlaneFunction {
    let gi = g.inverse();
    let inner = h.clone();
    let mut decay = h.decay;
    // |g^{-1} x| lies within a factor |g| of |x|.
    let lg = crate::group::group_norm(g).ln();
    decay.u_support = (decay.u_support.0 - lg, decay.u_support.1 + lg);
    PlaneFunction::from_fn(h.side, move |x| inner.eval(gi.apply(x))).with_decay(decay)
}

/// Right action of `l = diag(alpha, 1/alpha)`.
///
/// Upper: `(h l)(v) = |alpha|^{-1} h(v/alpha)`. Lower: `(h l)(w) = |alpha| h(alpha w)`.
/// Both preserve Lebesgue L2 norms.
pub fn act_l_right(l: &GroupElement, h: &PlaneFunction) -> Result<PlaneFunction> {
    if !l.is_diagonal(1e-14) {
        return Err(Error::NotDiagonal);
    }
    let alpha = l.entries()[0];
    Ok(act_l_right_alpha(alpha, h))
}

pub(crate) fn act_l_right_alpha(alpha: f64, h: &PlaneFunction) -> PlaneFunction {
    let inner = h.clone();
    let mut decay = h.decay;
    let la = alpha.abs().ln();
    let (scale, factor, shift) = match h.side {
        Side::Upper => (alpha.recip(), alpha.abs().recip(), la),
        Side::Lower => (alpha, alpha.abs(), -la),
    };
    decay.u_support = (decay.u_support.0 + shift, decay.u_support.1 + shift);
    PlaneFunction::from_fn(h.side, move |x| inner.eval([scale * x[0], scale * x[1]]) * factor)
        .with_decay(decay)
}

/// Plane quadrature nodes `(u, theta, weight)` for `int H(u,theta) du dtheta` over `[lo, hi]`.
pub(crate) fn plane_nodes(lo: f64, hi: f64, panels_per_unit: usize, ntheta: usize) -> (Vec<(f64, f64)>, Vec<f64>) {
    let n = (((hi - lo) * panels_per_unit as f64).ceil() as usize).max(1) * 16;
    let us = crate::haar::line_nodes(lo, hi, n);
    let th = (0..ntheta).map(|b| LogPolarGrid::theta_at(ntheta, b)).collect();
    (us, th)
}
