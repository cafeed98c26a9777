//! Plancherel densities and the wave-packet pairing
//! `B(g) = int <H1(mu), c^{-1}(mu) pi_mu(g^{-1}) H2(mu)> dmu`.

use std::f64::consts::PI;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::group::{xi_value, GroupElement, Side};
use crate::intertwiners::{c_function, c_function_inverse};
use crate::models::plane::k_angle_offset;
use crate::models::spectral::{KSeries, SpectralFunction};
use crate::quadrature::{gauss_legendre, QuadratureScheme};
use crate::{Error, Result, C64};

/// The constant in `alpha(mu) = kappa / |c(mu)|^2`.
pub const PLANCHEREL_KAPPA: f64 = 1.0;

/// Principal series parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(j: i32) -> Self {
        if j % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("parity must be even or odd, got {s:?}"))),
        }
    }
}

/// `kappa / |c^{(j0)}(mu)|^2` with `j0 = 0` (even) or `1` (odd); zero at the even pole.
pub fn plancherel_density(parity: Parity, mu: f64) -> f64 {
    let j = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    match c_function(Side::Upper, j, C64::from(mu)) {
        Ok(c) => PLANCHEREL_KAPPA / c.norm_sqr(),
        Err(_) => 0.0,
    }
}

/// Largest `|j|` carrying a coefficient above `1e-15` of the largest.
fn effective_jmax(s: &KSeries) -> usize {
    let peak = s.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    s.j_range()
        .filter(|&j| s.get(j).norm() > 1e-15 * peak)
        .map(|j| j.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}

/// `sum_{|j| <= jm} c_j z^j` for `|z| = 1`.
fn series_at(s: &KSeries, jm: usize, z: C64) -> C64 {
    let mut acc = s.get(0);
    let (mut zp, mut zm) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0));
    let zc = z.conj();
    for j in 1..=jm as i32 {
        zp *= z;
        zm *= zc;
        acc += s.get(j) * zp + s.get(-j) * zm;
    }
    acc
}

/// `<a, pi_mu(g^{-1}) b>_K`, where `pi_mu(g^{-1}) b` is the restriction to
/// `K` of `x -> B(g x)` and `B` is the homogeneous extension of `b` on `side`.
///
/// The integral over `K` is split at the two directions where `|g k e|` is
/// smallest and graded towards them, since the integrand concentrates there
/// at scale `e^{-2t}` for `g = k1 a_t k2`.
pub fn matrix_coefficient(side: Side, mu: f64, a: &KSeries, b: &KSeries, g: &GroupElement) -> C64 {
    let cf = g.cartan();
    let (phi1, psi2, t) = (cf.k1.rotation_angle(), cf.k2.rotation_angle(), cf.t);
    let off = k_angle_offset(side);
    let s = match side {
        Side::Upper => 1.0,
        Side::Lower => -1.0,
    };
    let (ja, jb) = (effective_jmax(a), effective_jmax(b));
    let (et, emt) = (t.exp(), (-t).exp());
    let eps = emt * emt;
    let tau_max = (0.5 * PI / eps).asinh();
    let omega = mu.abs().max((ja + jb) as f64).max(1.0);
    let width = (0.5f64).min(2.5 / omega);
    let panels = (tau_max / width).ceil().max(1.0) as usize;
    let h = tau_max / panels as f64;
    let rule = gauss_legendre(12);
    let mut total = C64::new(0.0, 0.0);
    for sigma in [1.0f64, -1.0] {
        let peak = sigma * 0.5 * PI;
        for dir in [1.0f64, -1.0] {
            for p in 0..panels {
                let lo = p as f64 * h;
                for (tau, w) in rule.on(lo, lo + h) {
                    let phi = dir * eps * tau.sinh();
                    let dphi = eps * tau.cosh();
                    let (sp, cp) = phi.sin_cos();
                    let len = (et * sp).hypot(emt * cp);
                    // x' = a (cos v, sin v) with v = peak + phi
                    let ang = phi1 + (sigma * emt * cp).atan2(-sigma * et * sp);
                    let u = peak + phi - psi2 - off;
                    let av = series_at(a, ja, C64::from_polar(1.0, u)).conj();
                    let bv = series_at(b, jb, C64::from_polar(1.0, ang - off));
                    let radial = C64::from_polar(1.0 / len, -s * mu * len.ln());
                    total += av * bv * radial * (w * dphi);
                }
            }
        }
    }
    total / (2.0 * PI)
}

fn trapezoid_weight(k: usize, n: usize, dmu: f64) -> f64 {
    if k == 0 || k + 1 == n {
        0.5 * dmu
    } else {
        dmu
    }
}

/// `int <H1(mu), pi_mu(g^{-1}) H2(mu)> dmu` on the trapezoid rule, with the
/// action taken on the side of `H2`. Nodes where either input is negligible
/// are skipped.
pub fn spectral_matrix_pairing(h1: &SpectralFunction, h2: &SpectralFunction, g: &GroupElement) -> Result<C64> {
    if !h1.same_grid(h2) {
        return Err(Error::GridMismatch);
    }
    let n = h1.series.len();
    let scale = h1.sup() * h2.sup();
    if scale == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let side = h2.side;
    let terms: Vec<C64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (&h1.series[k], &h2.series[k]);
            if a.norm_sqr().sqrt() * b.norm_sqr().sqrt() <= 1e-17 * scale {
                return C64::new(0.0, 0.0);
            }
            matrix_coefficient(side, h1.mu(k), a, b, g) * trapezoid_weight(k, n, h1.dmu)
        })
        .collect();
    // summed in grid order for reproducibility
    Ok(terms.into_iter().sum())
}

/// `B(g) = int <H1(mu), c^{-1}(mu) pi_mu(g^{-1}) H2(mu)> dmu` for `H2` on one
/// side and `H1` on the opposite side, with `c` the intertwiner constant of
/// `H2`'s side.
pub fn wave_packet_b(h1: &SpectralFunction, h2: &SpectralFunction, g: &GroupElement) -> Result<C64> {
    if h1.side != h2.side.opposite() {
        return Err(Error::ModelMismatch("wave packet takes inputs on opposite sides".into()));
    }
    let side = h2.side;
    // <H1, c^{-1} X> = <conj(c^{-1}) H1, X> since c is diagonal on K-types
    let mut weighted = h1.map(|mu, s| {
        s.map_coeffs(|j, c| {
            if c == C64::new(0.0, 0.0) {
                return c;
            }
            c * c_function_inverse(side, j, C64::from(mu)).unwrap_or(C64::new(0.0, 0.0)).conj()
        })
    });
    weighted.side = side;
    spectral_matrix_pairing(&weighted, h2, g)
}

/// Multiplies each parity part by `alpha^e` (`e = 1` or `-1`); coefficients
/// that are zero stay zero even where `alpha` vanishes.
pub fn plancherel_weight(hs: &SpectralFunction, exponent: i32) -> SpectralFunction {
    hs.map(|mu, s| {
        s.map_coeffs(|j, c| {
            if c == C64::new(0.0, 0.0) {
                return c;
            }
            c * plancherel_density(Parity::of(j), mu).powi(exponent)
        })
    })
}

/// Report of the Harish-Chandra condition check on a wave packet.
#[derive(Debug, Clone, Serialize)]
pub struct WaveConditionReport {
    pub order_first: u32,
    pub order_second: u32,
    pub p: f64,
    /// `sup_t |B(a_t)| (1+t)^p / Xi(a_t)` over the sampled `t`.
    pub seminorm: f64,
    /// Same supremum over the first and second halves of the sampled range.
    pub head: f64,
    pub tail: f64,
    pub samples: Vec<(f64, f64)>,
}

impl WaveConditionReport {
    /// The tail does not outgrow the head, the sampled form of finiteness.
    pub fn bounded(&self) -> bool {
        self.seminorm.is_finite() && self.tail <= self.head
    }
}

/// Order (0, 1 or at least 2) to which the even K-types vanish at `mu = 0`,
/// read from the value and the central difference at the middle node.
pub fn vanishing_order(hs: &SpectralFunction) -> u32 {
    let k0 = hs.half;
    let scale = hs.sup().max(f64::MIN_POSITIVE);
    let tol = 1e-9 * scale;
    let at = |k: usize| &hs.series[k];
    let value = at(k0).coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if value > tol {
        return 0;
    }
    if k0 == 0 {
        return 2;
    }
    let slope = at(k0 + 1)
        .coeffs
        .iter()
        .zip(&at(k0 - 1).coeffs)
        .map(|(p, m)| (p - m).norm() / (2.0 * hs.dmu))
        .fold(0.0, f64::max);
    // a slope of order one per unit mu shows as about dmu * scale
    if slope * hs.dmu > tol {
        1
    } else {
        2
    }
}

/// Checks that `H1, H2` (even K-types only) vanish at `mu = 0` in the
/// required way, then samples the Harish-Chandra seminorm of `t -> B(a_t)` on `ts`.
///
/// `H1` is read on the side opposite to `H2`.
pub fn hc_wave_condition_check(
    h1: &SpectralFunction,
    h2: &SpectralFunction,
    p: f64,
    ts: &[f64],
    scheme: &QuadratureScheme,
) -> Result<WaveConditionReport> {
    for h in [h1, h2] {
        if h.odd_part().sup() > 0.0 {
            return Err(Error::Hypothesis("inputs must carry even K-types only".into()));
        }
    }
    let (o1, o2) = (vanishing_order(h1), vanishing_order(h2));
    if !((o1 >= 1 && o2 >= 1) || o1 >= 2 || o2 >= 2) {
        return Err(Error::Hypothesis(format!(
            "vanishing orders {o1} and {o2} at mu = 0: need both at least 1 or one at least 2"
        )));
    }
    let mut a = h1.clone();
    a.side = h2.side.opposite();
    let mut samples = Vec::with_capacity(ts.len());
    for &t in ts {
        let g = GroupElement::a(t);
        let b = wave_packet_b(&a, h2, &g)?;
        samples.push((t, b.norm() * (1.0 + t).powf(p) / xi_value(&g, scheme)));
    }
    let (head, tail) = halves(&samples);
    Ok(WaveConditionReport {
        order_first: o1,
        order_second: o2,
        p,
        seminorm: head.max(tail),
        head,
        tail,
        samples,
    })
}

fn halves(samples: &[(f64, f64)]) -> (f64, f64) {
    let (t0, t1) = match (samples.first(), samples.last()) {
        (Some(a), Some(b)) => (a.0, b.0),
        _ => return (0.0, 0.0),
    };
    let mid = 0.5 * (t0 + t1);
    let sup = |keep: &dyn Fn(f64) -> bool| {
        samples
            .iter()
            .filter(|s| keep(s.0))
            .map(|s| s.1)
            .fold(0.0, f64::max)
    };
    (sup(&|t| t <= mid), sup(&|t| t > mid))
}
