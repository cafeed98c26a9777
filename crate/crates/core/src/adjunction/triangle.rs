//! Sampled triangle identities for the adjunction between the `L`-modules of
//! the two plane models: the composite `h -> J+ I+ h` must commute with the
//! `L`-action, and the row-side composite reduces to it through the star maps.

use std::collections::BTreeMap;

use crate::adjunction::cosets::{inverse_row_point, row_star};
use crate::fourier::FourierConfig;
use crate::group::{GroupElement, Side};
use crate::intertwiners::{intertwine_i, intertwine_j, intertwine_j_numeric_with};
use crate::models::levi::{act_l_module, act_l_module_row, LeviFunction};
use crate::models::plane::{Decay, PlaneFunction};
use crate::models::rows::RowFunction;
use crate::quadrature::{QuadratureScheme, SinhSinh};
use crate::report::ResidualReport;
use crate::{Error, Result, C64};

/// A report together with the truncation flag of the spectral round trip.
#[derive(Debug, Clone)]
pub struct TriangleOutcome {
    pub report: ResidualReport,
    pub truncation_warning: bool,
}

fn grid_params(cfg: &FourierConfig, scheme: &QuadratureScheme) -> BTreeMap<String, f64> {
    [
        ("dmu", cfg.mu_grid.dmu),
        ("mu-cutoff", cfg.mu_grid.dmu * cfg.mu_grid.half as f64),
        ("jmax", cfg.jmax as f64),
        ("du", cfg.du),
        ("u-max", cfg.u_max),
        ("inverse-du", cfg.inverse_du),
        ("line-step", scheme.line.step),
        ("line-t-max", scheme.line.t_max),
        ("gl-order", scheme.gl_order as f64),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// `J I h` on the side of `h`, carrying the decay data of `h`.
fn round_trip(h: &PlaneFunction, cfg: &FourierConfig, scheme: &QuadratureScheme) -> Result<(PlaneFunction, bool)> {
    let side = h.side();
    let ih = intertwine_i(side, h, cfg)?;
    let jih = intertwine_j(side, &ih.value, scheme)?.with_decay(h.decay);
    Ok((jih, ih.truncation_warning))
}

fn plane_point(side: Side, g: &GroupElement) -> [f64; 2] {
    match side {
        Side::Upper => g.column(0),
        Side::Lower => g.column(1),
    }
}

fn require(h: &PlaneFunction, side: Side) -> Result<()> {
    if h.side() != side {
        return Err(Error::ModelMismatch(format!("expected a {}-side input", side.as_str())));
    }
    Ok(())
}

/// `(J+ I+ h) f` against `h f` at the points `g e1`, for `h` on `G/N+`.
pub fn verify_triangle_first(
    h: &PlaneFunction,
    f: &LeviFunction,
    samples: &[GroupElement],
    cfg: &FourierConfig,
    scheme: &QuadratureScheme,
    tolerance: f64,
) -> Result<TriangleOutcome> {
    require(h, Side::Upper)?;
    let (jih, warn) = round_trip(h, cfg, scheme)?;
    let lhs = act_l_module(&jih, f, scheme);
    let rhs = act_l_module(h, f, scheme);
    let pts: Vec<[f64; 2]> = samples.iter().map(|g| plane_point(Side::Upper, g)).collect();
    let got: Vec<C64> = pts.iter().map(|&v| lhs.value.eval(v)).collect();
    let want: Vec<C64> = pts.iter().map(|&v| rhs.value.eval(v)).collect();
    Ok(TriangleOutcome {
        report: ResidualReport::compare("triangle-first", grid_params(cfg, scheme), &got, &want, tolerance),
        truncation_warning: warn || lhs.truncation_warning,
    })
}

/// `(f k)` against the star reduction `((J- I- k*) f*)*` at the rows of the
/// samples, for `k` on `N-\G` vanishing outside the `log|rho|` window
/// `k_support`.
pub fn verify_triangle_second(
    k: &RowFunction,
    k_support: (f64, f64),
    f: &LeviFunction,
    samples: &[GroupElement],
    cfg: &FourierConfig,
    scheme: &QuadratureScheme,
    tolerance: f64,
) -> Result<TriangleOutcome> {
    if k.side() != Side::Lower {
        return Err(Error::ModelMismatch("expected a row function on the lower side".into()));
    }
    let ks = row_star(k).with_decay(Decay {
        p: None,
        u_support: k_support,
    });
    let (jik, warn) = round_trip(&ks, cfg, scheme)?;
    let g = act_l_module(&jik, &f.star(), scheme);
    let direct = act_l_module_row(k, f, scheme);
    let rows: Vec<[f64; 2]> = samples.iter().map(|s| RowFunction::coset_row(Side::Lower, s)).collect();
    let got: Vec<C64> = rows
        .iter()
        .map(|&r| g.value.eval(inverse_row_point(Side::Lower, r)).conj())
        .collect();
    let want: Vec<C64> = rows.iter().map(|&r| direct.eval(r)).collect();
    Ok(TriangleOutcome {
        report: ResidualReport::compare("triangle-second", grid_params(cfg, scheme), &got, &want, tolerance),
        truncation_warning: warn || g.truncation_warning,
    })
}

/// Relative bound `w^2 sup |F''(0)| / sup |F(0)|` for `F(s) = (h l_s)(v)` over
/// the sample points, where `l_s` has `alpha = e^s`: the error of replacing
/// `h f` by `h` for a unit-mass Gaussian `f` of width `w` is about half of it.
pub fn narrow_bump_bound(h: &PlaneFunction, width: f64, points: &[[f64; 2]]) -> f64 {
    let side = h.side();
    let at = |v: [f64; 2], s: f64| {
        // upper: |alpha|^{-1} h(v / alpha); lower: |alpha| h(alpha v)
        let m = match side {
            Side::Upper => (-s).exp(),
            Side::Lower => s.exp(),
        };
        h.eval([v[0] * m, v[1] * m]) * m
    };
    let d = 0.02;
    let (mut c, mut scale) = (0.0f64, 0.0f64);
    for &v in points {
        let f0 = at(v, 0.0);
        let second = (at(v, d) - f0 * 2.0 + at(v, -d)) / (d * d);
        c = c.max(second.norm());
        scale = scale.max(f0.norm());
    }
    if scale == 0.0 {
        0.0
    } else {
        width * width * c / scale
    }
}

/// `(J+ I+ h) f` against `h` itself for a narrow unit-mass `f` centred at the
/// identity. Passes when the residual is within the bump-width bound plus
/// `tolerance`, which absorbs the round-trip error.
pub fn verify_triangle_narrow(
    h: &PlaneFunction,
    width: f64,
    samples: &[GroupElement],
    cfg: &FourierConfig,
    scheme: &QuadratureScheme,
    tolerance: f64,
) -> Result<TriangleOutcome> {
    require(h, Side::Upper)?;
    let f = LeviFunction::bump(0.0, width, 1.0)?;
    let (jih, warn) = round_trip(h, cfg, scheme)?;
    let lhs = act_l_module(&jih, &f, scheme);
    let pts: Vec<[f64; 2]> = samples.iter().map(|g| plane_point(Side::Upper, g)).collect();
    let bound = narrow_bump_bound(h, width, &pts);
    let got: Vec<C64> = pts.iter().map(|&v| lhs.value.eval(v)).collect();
    let want: Vec<C64> = pts.iter().map(|&v| h.eval(v)).collect();
    let mut params = grid_params(cfg, scheme);
    params.insert("bump-width".into(), width);
    params.insert("bump-bound".into(), bound);
    Ok(TriangleOutcome {
        report: ResidualReport::compare("triangle-narrow", params, &got, &want, bound + tolerance),
        truncation_warning: warn || lhs.truncation_warning,
    })
}

/// `(J+ I+ h) f` as an iterated integral over `L` and the line of `J+`, on a
/// coarse line rule independent of the scheme, against `h f`.
pub fn spot_check_triangle_first(
    h: &PlaneFunction,
    f: &LeviFunction,
    samples: &[GroupElement],
    cfg: &FourierConfig,
    scheme: &QuadratureScheme,
    tolerance: f64,
) -> Result<ResidualReport> {
    require(h, Side::Upper)?;
    let ih = intertwine_i(Side::Upper, h, cfg)?.value;
    let coarse = SinhSinh {
        step: 1.0 / 16.0,
        t_max: 4.5,
    };
    let nodes: Vec<(f64, C64)> = f
        .nodes(scheme)
        .into_iter()
        .map(|(sg, s, w)| (sg * s.exp(), f.eval(sg, s) * w))
        .filter(|(_, v)| *v != C64::new(0.0, 0.0))
        .collect();
    let rhs = act_l_module(h, f, scheme).value;
    let mut got = Vec::with_capacity(samples.len());
    let mut want = Vec::with_capacity(samples.len());
    for g in samples {
        let v = plane_point(Side::Upper, g);
        let mut acc = C64::new(0.0, 0.0);
        for &(alpha, wv) in &nodes {
            let x = [v[0] / alpha, v[1] / alpha];
            let line = intertwine_j_numeric_with(Side::Upper, &ih, x, &coarse, 0.0)?;
            acc += line.value * (wv / alpha.abs());
        }
        got.push(acc);
        want.push(rhs.eval(v));
    }
    let mut params = grid_params(cfg, scheme);
    params.insert("line-step".into(), coarse.step);
    params.insert("line-t-max".into(), coarse.t_max);
    Ok(ResidualReport::compare("triangle-first-unreduced", params, &got, &want, tolerance))
}
