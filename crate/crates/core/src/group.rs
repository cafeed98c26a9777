//! Structure theory of SL(2,R): elements, Iwasawa and Cartan factorizations,
//! modular characters, the group norm and the Harish-Chandra Xi function.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use rayon::prelude::*;

use crate::quadrature::{gauss_legendre, QuadratureScheme};
use crate::{Error, Result};

const DET_EXACT_TOL: f64 = 1e-12;
const DET_RENORM_TOL: f64 = 1e-8;

/// Which unipotent subgroup: upper (N+) or lower (N-) triangular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" | "plus" | "+" => Ok(Side::Upper),
            "lower" | "minus" | "-" => Ok(Side::Lower),
            other => Err(Error::Parse(format!("unknown side `{other}`"))),
        }
    }
}

/// A 2x2 real matrix of determinant one, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    m: [f64; 4],
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        m: [1.0, 0.0, 0.0, 1.0],
    };

    /// Validates the determinant; inputs within 1e-8 of unimodular are
    /// rescaled by `1/sqrt(det)`.
    pub fn new(m: [f64; 4]) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = m[0] * m[3] - m[1] * m[2];
        let dev = (det - 1.0).abs();
        if dev <= DET_EXACT_TOL {
            Ok(Self { m })
        } else if dev < DET_RENORM_TOL {
            let s = det.sqrt().recip();
            Ok(Self {
                m: [m[0] * s, m[1] * s, m[2] * s, m[3] * s],
            })
        } else {
            Err(Error::NotUnimodular {
                det,
                tol: DET_RENORM_TOL,
            })
        }
    }

    /// Builds without the determinant check; callers guarantee det = 1 up to rounding.
    pub(crate) fn from_raw(m: [f64; 4]) -> Self {
        Self { m }
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn det(&self) -> f64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { m: [c, -s, s, c] }
    }

    /// `diag(e^t, e^-t)`.
    pub fn a(t: f64) -> Self {
        Self {
            m: [t.exp(), 0.0, 0.0, (-t).exp()],
        }
    }

    /// `diag(alpha, 1/alpha)` for nonzero real alpha (an element of L).
    pub fn levi(alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::NotUnimodular {
                det: 0.0,
                tol: DET_RENORM_TOL,
            });
        }
        Ok(Self {
            m: [alpha, 0.0, 0.0, alpha.recip()],
        })
    }

    /// Upper unipotent `[[1, x], [0, 1]]`.
    pub fn n_upper(x: f64) -> Self {
        Self {
            m: [1.0, x, 0.0, 1.0],
        }
    }

    /// Lower unipotent `[[1, 0], [y, 1]]`.
    pub fn n_lower(y: f64) -> Self {
        Self {
            m: [1.0, 0.0, y, 1.0],
        }
    }

    pub fn n(side: Side, x: f64) -> Self {
        match side {
            Side::Upper => Self::n_upper(x),
            Side::Lower => Self::n_lower(x),
        }
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self { m: [d, -b, -c, a] }
    }

    pub fn transpose(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self { m: [a, c, b, d] }
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.m[0] * v[0] + self.m[1] * v[1],
            self.m[2] * v[0] + self.m[3] * v[1],
        ]
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, r: [f64; 2]) -> [f64; 2] {
        [
            r[0] * self.m[0] + r[1] * self.m[2],
            r[0] * self.m[1] + r[1] * self.m[3],
        ]
    }

    pub fn column(&self, i: usize) -> [f64; 2] {
        [self.m[i], self.m[2 + i]]
    }

    pub fn row(&self, i: usize) -> [f64; 2] {
        [self.m[2 * i], self.m[2 * i + 1]]
    }

    /// Frobenius distance between entries.
    pub fn frobenius_distance(&self, other: &GroupElement) -> f64 {
        self.m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.m[1].abs() <= tol && self.m[2].abs() <= tol
    }

    /// Angle of a rotation matrix.
    pub fn rotation_angle(&self) -> f64 {
        self.m[2].atan2(self.m[0])
    }

    /// Iwasawa factorization `g = k a n` with `n` in the unipotent subgroup of `side`.
    pub fn iwasawa(&self, side: Side) -> IwasawaFactors {
        match side {
            Side::Upper => {
                let v = self.column(0);
                let r = v[0].hypot(v[1]);
                let theta = v[1].atan2(v[0]);
                let w = self.column(1);
                let x = (v[0] * w[0] + v[1] * w[1]) / (r * r);
                IwasawaFactors {
                    k: Self::rotation(theta),
                    a: Self::from_raw([r, 0.0, 0.0, r.recip()]),
                    n: Self::n_upper(x),
                    side,
                    theta,
                    t: r.ln(),
                    x,
                }
            }
            Side::Lower => {
                let w = self.column(1);
                let rw = w[0].hypot(w[1]);
                // k e2 = (-sin theta, cos theta) = w / |w|
                let theta = (-w[0]).atan2(w[1]);
                let v = self.column(0);
                // g e1 = k a (e1 + y e2) = alpha k e1 + (y/alpha) k e2
                let k = Self::rotation(theta);
                let ke2 = k.column(1);
                let alpha = rw.recip();
                let y = alpha * (v[0] * ke2[0] + v[1] * ke2[1]);
                IwasawaFactors {
                    k,
                    a: Self::from_raw([alpha, 0.0, 0.0, rw]),
                    n: Self::n_lower(y),
                    side,
                    theta,
                    t: alpha.ln(),
                    x: y,
                }
            }
        }
    }

    /// Cartan factorization `g = k1 a k2` with `a11 >= 1` and the angle of
    /// `k1` in `[0, pi)`.
    pub fn cartan(&self) -> CartanFactors {
        let [a, b, c, d] = self.m;
        let e = 0.5 * (a + d);
        let f = 0.5 * (a - d);
        let g = 0.5 * (c + b);
        let h = 0.5 * (c - b);
        let q = e.hypot(h);
        let r = f.hypot(g);
        let sigma = q + r;
        let (mut phi, mut psi);
        if r < 1e-15 * q {
            // g is a rotation
            phi = 0.0;
            psi = h.atan2(e);
        } else {
            let a1 = g.atan2(f);
            let a2 = h.atan2(e);
            psi = 0.5 * (a2 - a1);
            phi = 0.5 * (a2 + a1);
        }
        phi = phi.rem_euclid(2.0 * PI);
        if phi >= PI {
            phi -= PI;
            psi += PI;
        }
        psi = wrap_angle(psi);
        CartanFactors {
            k1: Self::rotation(phi),
            a: Self::from_raw([sigma, 0.0, 0.0, sigma.recip()]),
            k2: Self::rotation(psi),
            phi,
            psi,
            t: sigma.ln(),
        }
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, o: GroupElement) -> GroupElement {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = o.m;
        GroupElement {
            m: [
                a * e + b * g,
                a * f + b * h,
                c * e + d * g,
                c * f + d * h,
            ],
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0], self.m[1], self.m[2], self.m[3]
        )
    }
}

impl std::str::FromStr for GroupElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let vals: std::result::Result<Vec<f64>, _> =
            s.split(',').map(|p| p.trim().parse::<f64>()).collect();
        let vals = vals.map_err(|e| Error::Parse(format!("bad matrix `{s}`: {e}")))?;
        if vals.len() != 4 {
            return Err(Error::Parse(format!("expected 4 entries, got {}", vals.len())));
        }
        GroupElement::new([vals[0], vals[1], vals[2], vals[3]])
    }
}

pub(crate) fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// `g = k a n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaFactors {
    pub k: GroupElement,
    pub a: GroupElement,
    pub n: GroupElement,
    pub side: Side,
    /// Rotation angle of `k`.
    pub theta: f64,
    /// `a = diag(e^t, e^-t)`.
    pub t: f64,
    /// Off-diagonal entry of `n`.
    pub x: f64,
}

impl IwasawaFactors {
    pub fn product(&self) -> GroupElement {
        self.k * self.a * self.n
    }
}

/// `g = k1 a k2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanFactors {
    pub k1: GroupElement,
    pub a: GroupElement,
    pub k2: GroupElement,
    pub phi: f64,
    pub psi: f64,
    /// `a = diag(e^t, e^-t)`, `t >= 0`.
    pub t: f64,
}

impl CartanFactors {
    pub fn product(&self) -> GroupElement {
        self.k1 * self.a * self.k2
    }
}

/// The modular character of the Iwasawa A-part: `a11^2` (upper) or `a11^-2` (lower).
pub fn modular_delta(g: &GroupElement, side: Side) -> f64 {
    match side {
        Side::Upper => {
            let v = g.column(0);
            v[0] * v[0] + v[1] * v[1]
        }
        Side::Lower => {
            let w = g.column(1);
            w[0] * w[0] + w[1] * w[1]
        }
    }
}

/// `max(sigma, 1/sigma)` for the Cartan A-part, i.e. the spectral norm.
pub fn group_norm(g: &GroupElement) -> f64 {
    g.cartan().a.entries()[0].max(1.0)
}

/// Value of the Xi function together with its refinement check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiValue {
    pub value: f64,
    /// Change under panel doubling.
    pub refinement_shift: f64,
    pub underresolved: bool,
}

/// `(1/2pi) int_K delta(g k)^{-1/2} dk` using the modular character of `side`.
pub fn xi_with_side(g: &GroupElement, side: Side, scheme: &QuadratureScheme) -> XiValue {
    let coarse = k_average_inverse_length(g, side, scheme.k_panels);
    let fine = k_average_inverse_length(g, side, 2 * scheme.k_panels);
    let shift = (fine - coarse).abs() / fine.abs().max(f64::MIN_POSITIVE);
    XiValue {
        value: fine,
        refinement_shift: shift,
        underresolved: shift > scheme.xi_tolerance,
    }
}

/// Harish-Chandra Xi function.
pub fn xi(g: &GroupElement, scheme: &QuadratureScheme) -> XiValue {
    xi_with_side(g, Side::Upper, scheme)
}

/// Xi without the refinement pass.
pub fn xi_value(g: &GroupElement, scheme: &QuadratureScheme) -> f64 {
    k_average_inverse_length(g, Side::Upper, 2 * scheme.k_panels)
}

/// `(1/2pi) int_K f(k) dk` on the periodic trapezoid rule with `n` nodes.
pub fn k_average<F: Fn(&GroupElement) -> f64 + Sync>(f: F, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    // collect before summing so the result does not depend on the thread count
    let vals: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| f(&GroupElement::rotation(k as f64 * h)))
        .collect();
    vals.iter().sum::<f64>() / n as f64
}

/// `(1/2pi) int_0^{2pi} |g k_theta e|^{-1} dtheta` where `e = e1` (upper) or `e2` (lower).
///
/// The integrand concentrates around the two directions that `g` shortens
/// most, with width `e^{-2t}`. Each quarter arc from a peak is integrated in
/// the graded variable `phi = eps * sinh(tau)`, `eps = e^{-2t}`, which makes
/// the integrand flat near the peak.
pub(crate) fn k_average_inverse_length(g: &GroupElement, _side: Side, panels: usize) -> f64 {
    // |g k_theta e| = |a k_{theta + psi} e|, and measured from the shortest
    // direction the length is sqrt(e^{2t} sin^2 phi + e^{-2t} cos^2 phi) for
    // either choice of e. Evaluating it in phi avoids cancellation near the peak.
    let t = g.cartan().t;
    let (et, emt) = (t.exp(), (-t).exp());
    let eps = emt * emt;
    let tau_max = (0.5 * PI / eps).asinh();
    let rule = gauss_legendre(16);
    let len = |phi: f64| (et * phi.sin()).hypot(emt * phi.cos());
    let h = tau_max / panels as f64;
    let mut quarter = 0.0;
    for p in 0..panels {
        let lo = p as f64 * h;
        quarter += rule.integrate(lo, lo + h, |tau| {
            let phi = eps * tau.sinh();
            eps * tau.cosh() / len(phi)
        });
    }
    // four congruent quarter arcs
    quarter * 2.0 / PI
}
