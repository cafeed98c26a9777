//! Seminorm estimators and the L2 inner product on the plane models.

use rayon::prelude::*;

use crate::group::GroupElement;
use crate::models::levi::Truncated;
use crate::models::plane::{plane_nodes, LogPolarGrid, PlaneFunction};
use crate::quadrature::QuadratureScheme;
use crate::{Error, Result, C64};

const SEMINORM_DU: f64 = 0.05;

/// Grid estimate of a Harish-Chandra seminorm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seminorm {
    /// Supremum over the sample grid.
    pub value: f64,
    /// Set when the weighted profile at the edge of the grid exceeds its value
    /// at three quarters of the range, i.e. the supremum is not attained.
    pub diverges: bool,
}

fn weighted_profile<F: Fn(f64, f64) -> f64 + Sync>(p: f64, u_max: f64, ntheta: usize, mag: F) -> Vec<(f64, f64)> {
    let n = (2.0 * u_max / SEMINORM_DU).round() as usize;
    (0..=n)
        .into_par_iter()
        .map(|a| {
            let u = -u_max + a as f64 * (2.0 * u_max / n as f64);
            let m = (0..ntheta)
                .map(|b| mag(u, LogPolarGrid::theta_at(ntheta, b)))
                .fold(0.0, f64::max);
            (u, m * (1.0 + u.abs()).powf(p))
        })
        .collect()
}

fn summarize(profile: &[(f64, f64)], u_max: f64) -> Seminorm {
    let value = profile.iter().map(|x| x.1).fold(0.0, f64::max);
    let at = |target: f64| {
        profile
            .iter()
            .min_by(|x, y| (x.0 - target).abs().total_cmp(&(y.0 - target).abs()))
            .map(|x| x.1)
            .unwrap_or(0.0)
    };
    let edge = at(u_max).max(at(-u_max));
    let inner = at(0.75 * u_max).max(at(-0.75 * u_max));
    Seminorm {
        value,
        diverges: edge > inner * (1.0 + 1e-9) && edge > 0.0,
    }
}

/// `sup |h(x)| (1 + log|x|)^p / Xi(x)` over `|log r| <= truncation`.
pub fn hc_seminorm(h: &PlaneFunction, p: u32, scheme: &QuadratureScheme) -> Seminorm {
    let u_max = scheme.truncation;
    let prof = weighted_profile(p as f64, u_max, scheme.theta_nodes, |u, t| h.eval_log_polar(u, t).norm());
    summarize(&prof, u_max)
}

/// First-order seminorm: the maximum of the order-zero seminorm over `h`,
/// its derivatives along the left action of `H`, `E`, `F` and along the right
/// action of `L`, each by central differences.
pub fn hc_seminorm_first_order(h: &PlaneFunction, p: u32, scheme: &QuadratureScheme) -> Seminorm {
    let eps = 1e-5;
    let gens: [fn(f64) -> GroupElement; 3] = [GroupElement::a, GroupElement::n_upper, GroupElement::n_lower];
    let mut best = hc_seminorm(h, p, scheme);
    let point = |u: f64, t: f64| {
        let r = u.exp();
        [r * t.cos(), r * t.sin()]
    };
    let mut consider = |d: &(dyn Fn(f64, f64) -> f64 + Sync)| {
        let prof = weighted_profile(p as f64, scheme.truncation, scheme.theta_nodes, d);
        let s = summarize(&prof, scheme.truncation);
        best.value = best.value.max(s.value);
        best.diverges |= s.diverges;
    };
    for gen in gens {
        let (gp, gm) = (gen(-eps), gen(eps));
        consider(&|u, t| {
            let x = point(u, t);
            let r = u.exp();
            ((h.eval(gp.apply(x)) - h.eval(gm.apply(x))) * (r / (2.0 * eps))).norm()
        });
    }
    let dil = |s: f64| crate::models::plane::act_l_right_alpha(s.exp(), h);
    let (hp, hm) = (dil(eps), dil(-eps));
    consider(&|u, t| ((hp.eval_log_polar(u, t) - hm.eval_log_polar(u, t)) / (2.0 * eps)).norm());
    best
}

/// `int conj(h1) h2 dx` with Lebesgue measure, which is the invariant measure
/// on both plane models.
pub fn l2_inner(h1: &PlaneFunction, h2: &PlaneFunction, scheme: &QuadratureScheme) -> Result<Truncated<C64>> {
    if h1.side() != h2.side() {
        return Err(Error::ModelMismatch("inner product across sides".into()));
    }
    let t = scheme.truncation;
    let lo = h1.decay.u_support.0.max(h2.decay.u_support.0).max(-t);
    let hi = h1.decay.u_support.1.min(h2.decay.u_support.1).min(t);
    if lo >= hi {
        return Ok(Truncated {
            value: C64::new(0.0, 0.0),
            truncation_warning: false,
        });
    }
    let (us, th) = plane_nodes(lo, hi, scheme.plane_panels_per_unit, scheme.theta_nodes);
    let dth = 2.0 * std::f64::consts::PI / th.len() as f64;
    let parts: Vec<(C64, f64)> = us
        .par_iter()
        .map(|&(u, w)| {
            let mut acc = C64::new(0.0, 0.0);
            let mut peak = 0.0f64;
            for &theta in &th {
                let a = h1.eval_log_polar(u, theta);
                let b = h2.eval_log_polar(u, theta);
                peak = peak.max(a.norm() * b.norm());
                acc += a.conj() * b;
            }
            (acc * (w * dth), peak)
        })
        .collect();
    let value: C64 = parts.iter().map(|p| p.0).sum();
    let peak = parts.iter().map(|p| p.1).fold(0.0, f64::max);
    let edge = |u: f64| {
        th.iter()
            .map(|&theta| h1.eval_log_polar(u, theta).norm() * h2.eval_log_polar(u, theta).norm())
            .fold(0.0, f64::max)
    };
    let boundary = edge(lo).max(edge(hi));
    Ok(Truncated {
        value,
        truncation_warning: peak > 0.0 && boundary > crate::haar::TRUNCATION_RATIO * peak,
    })
}

/// `int f(x) dx` over the annulus `lo <= log|x| <= hi` with Lebesgue measure.
pub fn plane_integral<F>(f: F, lo: f64, hi: f64, scheme: &QuadratureScheme) -> C64
where
    F: Fn([f64; 2]) -> C64 + Sync,
{
    let (us, th) = plane_nodes(lo, hi, scheme.plane_panels_per_unit, scheme.theta_nodes);
    let dth = 2.0 * std::f64::consts::PI / th.len() as f64;
    let parts: Vec<C64> = us
        .par_iter()
        .map(|&(u, w)| {
            let r = u.exp();
            let acc: C64 = th.iter().map(|&t| f([r * t.cos(), r * t.sin()])).sum();
            acc * (w * dth * r * r)
        })
        .collect();
    parts.into_iter().sum()
}

pub fn l2_norm(h: &PlaneFunction, scheme: &QuadratureScheme) -> Result<f64> {
    Ok(l2_inner(h, h, scheme)?.value.re.max(0.0).sqrt())
}
