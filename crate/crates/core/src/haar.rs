//! Haar integration on SL(2,R).
//!
//! The measure is `dtheta dx dt` in the coordinates `g = k_theta n_x a_t`
//! (angle in `[0, 2pi)`). Equivalently it is `da db dc / |a|`, the Leray
//! measure of `det = 1`, and in the big cell `g = nbar_y l_alpha n_x` it is
//! `alpha^2 ds dx dy` with `alpha = sign * e^s`. No normalizing constants
//! separate the three descriptions.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::group::{wrap_angle, GroupElement};
use crate::quadrature::{gauss_legendre, QuadratureScheme};
use crate::{Error, Result, C64};

/// Ratio of boundary to peak magnitude above which a truncation warning is raised.
pub const TRUNCATION_RATIO: f64 = 1e-10;

const FACE_SAMPLES: usize = 9;

/// Coordinates `g = k_theta n_x a_t`.
pub fn kna_coordinates(g: &GroupElement) -> (f64, f64, f64) {
    let f = g.iwasawa(crate::Side::Upper);
    (f.theta, f.x * (2.0 * f.t).exp(), f.t)
}

pub fn from_kna(theta: f64, x: f64, t: f64) -> GroupElement {
    GroupElement::rotation(theta) * GroupElement::n_upper(x) * GroupElement::a(t)
}

/// Coordinates `g = nbar_y l_alpha n_x`; `None` off the big cell (`g11 = 0`).
pub fn nln_coordinates(g: &GroupElement) -> Option<(f64, f64, f64)> {
    let [a, b, c, _] = g.entries();
    if a == 0.0 {
        return None;
    }
    Some((c / a, a, b / a))
}

pub fn from_nln(y: f64, alpha: f64, x: f64) -> GroupElement {
    GroupElement::from_raw([alpha, alpha * x, alpha * y, alpha * x * y + alpha.recip()])
}

/// Integration box in `(theta, x, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnaBox {
    pub theta: (f64, f64),
    pub x: (f64, f64),
    pub t: (f64, f64),
}

impl KnaBox {
    /// Box covering all of `K` and a square in `(x, t)`.
    pub fn full_k(x: f64, t: f64) -> Self {
        Self {
            theta: (0.0, 2.0 * PI),
            x: (-x, x),
            t: (-t, t),
        }
    }

    /// Smallest box (plus 5% margin) containing the given points.
    pub fn enclosing(points: &[GroupElement]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::SupportOverflow("no support samples".into()))?;
        let theta0 = kna_coordinates(first).0;
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for g in points {
            let (th, x, t) = kna_coordinates(g);
            let c = [theta0 + wrap_angle(th - theta0), x, t];
            for i in 0..3 {
                lo[i] = lo[i].min(c[i]);
                hi[i] = hi[i].max(c[i]);
            }
        }
        let m = with_margin(lo, hi);
        if m[0].1 - m[0].0 >= 2.0 * PI {
            return Ok(Self {
                theta: (theta0 - PI, theta0 + PI),
                x: m[1],
                t: m[2],
            });
        }
        Ok(Self {
            theta: m[0],
            x: m[1],
            t: m[2],
        })
    }
}

/// Integration box in `(y, s, x)` for `g = nbar_y l_alpha n_x`, `alpha = sign * e^s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NlnBox {
    pub y: (f64, f64),
    pub s: (f64, f64),
    pub x: (f64, f64),
    pub sign: f64,
}

impl NlnBox {
    pub fn enclosing(points: &[GroupElement]) -> Result<Self> {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        let mut sign = 0.0;
        for g in points {
            let (y, alpha, x) = nln_coordinates(g)
                .ok_or_else(|| Error::SupportOverflow("support meets g11 = 0".into()))?;
            if sign == 0.0 {
                sign = alpha.signum();
            } else if alpha.signum() != sign {
                return Err(Error::SupportOverflow(
                    "support straddles g11 = 0; split the integrand".into(),
                ));
            }
            let c = [y, alpha.abs().ln(), x];
            for i in 0..3 {
                lo[i] = lo[i].min(c[i]);
                hi[i] = hi[i].max(c[i]);
            }
        }
        if sign == 0.0 {
            return Err(Error::SupportOverflow("no support samples".into()));
        }
        let m = with_margin(lo, hi);
        Ok(Self {
            y: m[0],
            s: m[1],
            x: m[2],
            sign,
        })
    }
}

fn with_margin(lo: [f64; 3], hi: [f64; 3]) -> [(f64, f64); 3] {
    let mut out = [(0.0, 0.0); 3];
    for i in 0..3 {
        let pad = 0.05 * (hi[i] - lo[i]) + 1e-9;
        out[i] = (lo[i] - pad, hi[i] + pad);
    }
    out
}

/// Result of a Haar integral with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaarIntegral {
    pub value: C64,
    /// Largest boundary magnitude relative to the largest interior sample.
    pub boundary_ratio: f64,
    pub truncation_warning: bool,
}

/// Composite 16-point Gauss-Legendre nodes with about `n` nodes in total.
pub(crate) fn line_nodes(lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(16);
    let panels = n.div_ceil(16).max(1);
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(panels * 16);
    for p in 0..panels {
        let a = lo + p as f64 * h;
        out.extend(rule.on(a, a + h));
    }
    out
}

fn periodic_nodes(lo: f64, n: usize) -> Vec<(f64, f64)> {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|i| (lo + i as f64 * h, h)).collect()
}

fn product_integral<M, F>(ranges: [Vec<(f64, f64)>; 3], map: M, phi: F, density: impl Fn(f64, f64, f64) -> f64 + Sync) -> (C64, f64)
where
    M: Fn(f64, f64, f64) -> GroupElement + Sync,
    F: Fn(&GroupElement) -> C64 + Sync,
{
    let [r0, r1, r2] = ranges;
    let partial: Vec<(C64, f64)> = r0
        .par_iter()
        .map(|&(u, wu)| {
            let mut acc = C64::new(0.0, 0.0);
            let mut peak = 0.0f64;
            for &(v, wv) in &r1 {
                for &(w, ww) in &r2 {
                    let val = phi(&map(u, v, w));
                    peak = peak.max(val.norm());
                    acc += val * (wu * wv * ww * density(u, v, w));
                }
            }
            (acc, peak)
        })
        .collect();
    partial
        .into_iter()
        .fold((C64::new(0.0, 0.0), 0.0), |(a, p), (b, q)| (a + b, p.max(q)))
}

fn boundary_peak<M, F>(ranges: [(f64, f64); 3], periodic_first: bool, map: M, phi: F) -> f64
where
    M: Fn(f64, f64, f64) -> GroupElement,
    F: Fn(&GroupElement) -> C64,
{
    let lin = |r: (f64, f64), i: usize| r.0 + (r.1 - r.0) * i as f64 / (FACE_SAMPLES - 1) as f64;
    let mut peak = 0.0f64;
    for axis in 0..3 {
        if axis == 0 && periodic_first {
            continue;
        }
        for end in [0usize, FACE_SAMPLES - 1] {
            for i in 0..FACE_SAMPLES {
                for j in 0..FACE_SAMPLES {
                    let mut c = [0.0; 3];
                    let (p, q) = match axis {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    c[axis] = lin(ranges[axis], end);
                    c[p] = lin(ranges[p], i);
                    c[q] = lin(ranges[q], j);
                    peak = peak.max(phi(&map(c[0], c[1], c[2])).norm());
                }
            }
        }
    }
    peak
}

fn finish(value: C64, interior: f64, boundary: f64) -> HaarIntegral {
    let ratio = if interior > 0.0 { boundary / interior } else { 0.0 };
    HaarIntegral {
        value,
        boundary_ratio: ratio,
        truncation_warning: ratio > TRUNCATION_RATIO,
    }
}

/// `int_G phi(g) dg` over a box in `(theta, x, t)` coordinates.
pub fn integrate_g<F>(phi: F, bx: &KnaBox, scheme: &QuadratureScheme) -> HaarIntegral
where
    F: Fn(&GroupElement) -> C64 + Sync,
{
    let n = scheme.group_nodes;
    let full = bx.theta.1 - bx.theta.0 >= 2.0 * PI - 1e-12;
    let th = if full {
        periodic_nodes(bx.theta.0, n)
    } else {
        line_nodes(bx.theta.0, bx.theta.1, n)
    };
    let ranges = [th, line_nodes(bx.x.0, bx.x.1, n), line_nodes(bx.t.0, bx.t.1, n)];
    let (value, interior) = product_integral(ranges, from_kna, &phi, |_, _, _| 1.0);
    let boundary = boundary_peak([bx.theta, bx.x, bx.t], full, from_kna, &phi);
    finish(value, interior, boundary)
}

/// `int int int phi(nbar l n) delta_+(l) dnbar dl dn` over a box in `(y, s, x)`.
pub fn integrate_nln<F>(phi: F, bx: &NlnBox, scheme: &QuadratureScheme) -> HaarIntegral
where
    F: Fn(&GroupElement) -> C64 + Sync,
{
    let n = scheme.group_nodes;
    let sign = bx.sign;
    let map = move |y: f64, s: f64, x: f64| from_nln(y, sign * s.exp(), x);
    let ranges = [line_nodes(bx.y.0, bx.y.1, n), line_nodes(bx.s.0, bx.s.1, n), line_nodes(bx.x.0, bx.x.1, n)];
    let (value, interior) = product_integral(ranges, map, &phi, |_, s, _| (2.0 * s).exp());
    let boundary = boundary_peak([bx.y, bx.s, bx.x], false, map, &phi);
    finish(value, interior, boundary)
}

/// `int_G f(t(g)) dg` for a bi-K-invariant function given on the Cartan
/// coordinate `t >= 0`: `4 pi^2 int_0^T f(t) sinh(2t) dt`.
pub fn integrate_bi_invariant<F>(f: F, t_max: f64, scheme: &QuadratureScheme) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    let nodes = line_nodes(0.0, t_max, scheme.group_nodes.max(16) * (t_max.ceil() as usize).max(1));
    let s: Vec<f64> = nodes.par_iter().map(|&(t, w)| w * f(t) * (2.0 * t).sinh()).collect();
    4.0 * PI * PI * s.iter().sum::<f64>()
}

/// Smooth bump `exp(-|c^{-1} g - I|_F^2 / (2 w^2))`, cut off at distance `7w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupBump {
    pub center: GroupElement,
    pub width: f64,
    center_inv: GroupElement,
}

impl GroupBump {
    pub const CUTOFF: f64 = 7.0;

    pub fn new(center: GroupElement, width: f64) -> Result<Self> {
        if !(width > 0.0 && width * Self::CUTOFF < 0.9) {
            return Err(Error::SupportOverflow(format!(
                "bump width {width} must lie in (0, {})",
                0.9 / Self::CUTOFF
            )));
        }
        Ok(Self {
            center,
            width,
            center_inv: center.inverse(),
        })
    }

    pub fn radius(&self) -> f64 {
        Self::CUTOFF * self.width
    }

    pub fn eval(&self, g: &GroupElement) -> f64 {
        let d = (self.center_inv * *g).frobenius_distance(&GroupElement::IDENTITY);
        if d >= self.radius() {
            0.0
        } else {
            (-0.5 * (d / self.width).powi(2)).exp()
        }
    }

    /// Points covering the support, including its boundary region.
    pub fn support_samples(&self) -> Vec<GroupElement> {
        let r = self.radius();
        let m = 12;
        let mut out = Vec::new();
        for i in 0..=m {
            for j in 0..=m {
                for k in 0..=m {
                    let e = |l: usize| -r + 2.0 * r * l as f64 / m as f64;
                    let (a, b, c) = (1.0 + e(i), e(j), e(k));
                    let d = (1.0 + b * c) / a;
                    let h = [a - 1.0, b, c, d - 1.0];
                    if h.iter().map(|x| x * x).sum::<f64>().sqrt() > r * 1.02 {
                        continue;
                    }
                    out.push(self.center * GroupElement::from_raw([a, b, c, d]));
                }
            }
        }
        out
    }

    /// `int phi(p + x d) dx` along an affine line of unimodular matrices
    /// (such as `x -> g n_x h`). The squared distance to the center is
    /// quadratic in `x`, so the support is an explicit interval.
    pub fn line_integral(&self, p: [f64; 4], d: [f64; 4]) -> f64 {
        let ci = self.center_inv.entries();
        let mul = |m: [f64; 4]| {
            [
                ci[0] * m[0] + ci[1] * m[2],
                ci[0] * m[1] + ci[1] * m[3],
                ci[2] * m[0] + ci[3] * m[2],
                ci[2] * m[1] + ci[3] * m[3],
            ]
        };
        let (mut a, b) = (mul(p), mul(d));
        a[0] -= 1.0;
        a[3] -= 1.0;
        let qa: f64 = b.iter().map(|x| x * x).sum();
        let qb: f64 = 2.0 * a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>();
        let qc: f64 = a.iter().map(|x| x * x).sum();
        let r2 = self.radius() * self.radius();
        if qa == 0.0 {
            return 0.0;
        }
        let disc = qb * qb - 4.0 * qa * (qc - r2);
        if disc <= 0.0 {
            return 0.0;
        }
        let sq = disc.sqrt();
        let (x0, x1) = ((-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa));
        let w2 = 2.0 * self.width * self.width;
        let mid = -qb / (2.0 * qa);
        let rule = gauss_legendre(32);
        let f = |x: f64| (-((qa * x + qb) * x + qc) / w2).exp();
        rule.integrate(x0, mid, f) + rule.integrate(mid, x1, f)
    }

    /// Support samples of `g -> phi(l g r)`, i.e. `l^{-1} supp r^{-1}`.
    pub fn translated_samples(&self, l: &GroupElement, r: &GroupElement) -> Vec<GroupElement> {
        let (li, ri) = (l.inverse(), r.inverse());
        self.support_samples().into_iter().map(|g| li * g * ri).collect()
    }
}
