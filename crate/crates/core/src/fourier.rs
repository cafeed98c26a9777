//! Fourier transform along `A` on the plane models.
//!
//! With `H(u, theta) = r h(r, theta)` and `u = log r`,
//!
//! * upper side: `h^(mu)(k) = int H(u, k) e^{+i mu u} du`, homogeneous of degree `-1 - i mu`;
//! * lower side: `h^(mu)(k) = int H(u, k) e^{-i mu u} du`, homogeneous of degree `-1 + i mu`.
//!
//! The K-variable is the angle `phi` of `k = k_phi`: the plane angle itself on
//! the upper side and the plane angle minus `pi/2` on the lower side. With
//! these conventions the transform is unitary,
//! `|h|^2_{L2(R^2)} = int sum_j |h^_j(mu)|^2 dmu`.

use std::f64::consts::PI;
use std::io::{Read, Write};

use rayon::prelude::*;

use crate::group::Side;
use crate::models::plane::{k_angle_offset, LogPolarGrid, PlaneFunction};
use crate::models::spectral::{KSeries, MuGrid, SpectralFunction};
use crate::{Error, Result, C64};

/// Grids for the forward and inverse transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierConfig {
    pub mu_grid: MuGrid,
    pub jmax: usize,
    /// Forward `u` step and half-width.
    pub du: f64,
    pub u_max: f64,
    /// Inverse reconstruction grid.
    pub inverse_du: f64,
    pub inverse_ntheta: usize,
    /// Relative size of the edge coefficients that triggers a resolution warning.
    pub tail_tolerance: f64,
}

impl Default for FourierConfig {
    fn default() -> Self {
        Self {
            mu_grid: MuGrid::default(),
            jmax: 16,
            du: 0.05,
            u_max: 12.0,
            inverse_du: 0.025,
            inverse_ntheta: 256,
            tail_tolerance: 1e-8,
        }
    }
}

impl FourierConfig {
    pub fn ntheta(&self) -> usize {
        2 * self.jmax + 2
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.du > 0.0 && self.u_max > 0.0 && self.inverse_du > 0.0) || self.inverse_ntheta < 4 {
            return Err(Error::InvalidGrid("fourier grids need positive steps".into()));
        }
        Ok(())
    }
}

/// A transform together with its resolution diagnostics.
#[derive(Debug, Clone)]
pub struct FourierResult {
    pub spectral: SpectralFunction,
    /// Largest `|h^_j|` at `|j| = jmax`, relative to the overall maximum.
    pub tail_j: f64,
    /// Largest `|h^_j|` at `|mu| = cutoff`, relative to the overall maximum.
    pub tail_mu: f64,
    pub resolution_warning: bool,
}

fn exp_sign(side: Side) -> f64 {
    match side {
        Side::Upper => 1.0,
        Side::Lower => -1.0,
    }
}

/// K-type coefficients of `H(u, .)` at each `u` node.
fn angular_profile(h: &PlaneFunction, cfg: &FourierConfig) -> (Vec<f64>, Vec<KSeries>) {
    let n = (cfg.u_max / cfg.du).round() as isize;
    let us: Vec<f64> = (-n..=n).map(|a| a as f64 * cfg.du).collect();
    let nt = cfg.ntheta();
    let off = k_angle_offset(h.side());
    let rows = us
        .par_iter()
        .map(|&u| KSeries::from_fn(cfg.jmax, nt, |phi| h.eval_log_polar(u, phi + off)))
        .collect();
    (us, rows)
}

/// `h^(mu)` on the configured `mu` grid and K-types `|j| <= jmax`.
pub fn fourier_a(h: &PlaneFunction, cfg: &FourierConfig) -> Result<FourierResult> {
    cfg.validate()?;
    let (us, rows) = angular_profile(h, cfg);
    let sgn = exp_sign(h.side());
    let grid = cfg.mu_grid;
    let series: Vec<KSeries> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let mu = grid.mu(k);
            let step = C64::from_polar(1.0, sgn * mu * cfg.du);
            let mut ph = C64::from_polar(1.0, sgn * mu * us[0]);
            let mut out = KSeries::zeros(cfg.jmax);
            for row in &rows {
                for (c, a) in out.coeffs.iter_mut().zip(&row.coeffs) {
                    *c += a * ph;
                }
                ph *= step;
            }
            out.scale(C64::from(cfg.du))
        })
        .collect();
    let spectral = SpectralFunction::new(h.side(), grid.dmu, grid.half, series)?;
    Ok(diagnose(spectral, cfg.tail_tolerance))
}

fn diagnose(spectral: SpectralFunction, tol: f64) -> FourierResult {
    let sup = spectral.sup();
    let jm = spectral.jmax() as i32;
    let tail_j = spectral
        .series
        .iter()
        .map(|s| s.get(jm).norm().max(s.get(-jm).norm()))
        .fold(0.0, f64::max);
    let ends = [&spectral.series[0], &spectral.series[spectral.series.len() - 1]];
    let tail_mu = ends
        .iter()
        .flat_map(|s| s.coeffs.iter().map(|c| c.norm()))
        .fold(0.0, f64::max);
    let (tail_j, tail_mu) = if sup > 0.0 {
        (tail_j / sup, tail_mu / sup)
    } else {
        (0.0, 0.0)
    };
    FourierResult {
        resolution_warning: tail_j > tol || tail_mu > tol,
        spectral,
        tail_j,
        tail_mu,
    }
}

/// Inverse transform, resampled onto a log-polar grid.
pub fn inverse_fourier_a(hs: &SpectralFunction, cfg: &FourierConfig) -> Result<PlaneFunction> {
    cfg.validate()?;
    let side = hs.side;
    let sgn = -exp_sign(side);
    let n = (cfg.u_max / cfg.inverse_du).round() as isize;
    let nu = (2 * n + 1) as usize;
    let nt = cfg.inverse_ntheta;
    let off = k_angle_offset(side);
    let jmax = hs.jmax();
    let last = hs.series.len() - 1;
    let phases: Vec<Vec<C64>> = (0..nt)
        .map(|b| {
            let th = LogPolarGrid::theta_at(nt, b) - off;
            (-(jmax as i32)..=jmax as i32)
                .map(|j| C64::from_polar(1.0, j as f64 * th))
                .collect()
        })
        .collect();
    let rows: Vec<Vec<C64>> = (0..nu)
        .into_par_iter()
        .map(|a| {
            let u = (a as isize - n) as f64 * cfg.inverse_du;
            let mut coef = KSeries::zeros(jmax);
            for (k, s) in hs.series.iter().enumerate() {
                let w = if k == 0 || k == last { 0.5 } else { 1.0 };
                let e = C64::from_polar(w, sgn * hs.mu(k) * u);
                for j in s.j_range() {
                    let i = (j + jmax as i32) as usize;
                    coef.coeffs[i] += s.get(j) * e;
                }
            }
            let scale = hs.dmu / (2.0 * PI);
            phases
                .iter()
                .map(|ph| ph.iter().zip(&coef.coeffs).map(|(p, c)| p * c).sum::<C64>() * scale)
                .collect()
        })
        .collect();
    let values = rows.into_iter().flatten().collect();
    let grid = LogPolarGrid::new(-(n as f64) * cfg.inverse_du, cfg.inverse_du, nu, nt, values)?;
    Ok(PlaneFunction::grid(side, grid))
}

/// The homogeneous function on the `side` model with K-restriction `c`:
/// `r^{-1-i mu} c(theta)` (upper) or `r^{-1+i mu} c(theta - pi/2)` (lower).
pub fn extend_homogeneous(mu: C64, c: &KSeries, side: Side) -> PlaneFunction {
    let c = c.clone();
    let off = k_angle_offset(side);
    let s = -exp_sign(side);
    PlaneFunction::from_log_polar(side, move |u, theta| (C64::i() * s * mu * u).exp() * c.eval(theta - off))
}

/// `phi -> h(k_phi e)` as a K-series, `e = e1` (upper) or `e2` (lower).
pub fn restrict_to_k(h: &PlaneFunction, jmax: usize) -> KSeries {
    let off = k_angle_offset(h.side());
    KSeries::from_fn(jmax, 4 * jmax + 4, |phi| h.eval_log_polar(0.0, phi + off))
}

/// `(even, odd)` K-type parts.
pub fn parity_split(hs: &SpectralFunction) -> (SpectralFunction, SpectralFunction) {
    (hs.even_part(), hs.odd_part())
}

/// Writes `mu, j, re, im` rows.
pub fn write_spectral_csv<W: Write>(hs: &SpectralFunction, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["mu", "j", "re", "im"]).map_err(csv_err)?;
    for (k, s) in hs.series.iter().enumerate() {
        for j in s.j_range() {
            let c = s.get(j);
            wr.write_record(&[
                format!("{}", hs.mu(k)),
                j.to_string(),
                format!("{:e}", c.re),
                format!("{:e}", c.im),
            ])
            .map_err(csv_err)?;
        }
    }
    wr.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Reads the format of [`write_spectral_csv`]; the grid must be uniform and symmetric.
pub fn read_spectral_csv<R: Read>(side: Side, r: R) -> Result<SpectralFunction> {
    let mut rd = csv::Reader::from_reader(r);
    let mut rows: Vec<(f64, i32, C64)> = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let p = |i: usize| -> Result<f64> {
            rec.get(i)
                .ok_or_else(|| Error::Parse("short row".into()))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(e.to_string()))
        };
        rows.push((p(0)?, p(1)? as i32, C64::new(p(2)?, p(3)?)));
    }
    let mut mus: Vec<f64> = rows.iter().map(|r| r.0).collect();
    mus.sort_by(f64::total_cmp);
    mus.dedup();
    if mus.len() < 2 || mus.len() % 2 == 0 {
        return Err(Error::InvalidGrid("mu grid must have an odd number of nodes".into()));
    }
    let dmu = mus[1] - mus[0];
    let half = mus.len() / 2;
    let jmax = rows.iter().map(|r| r.1.unsigned_abs() as usize).max().unwrap_or(0);
    let mut series = vec![KSeries::zeros(jmax); mus.len()];
    for (mu, j, c) in rows {
        let k = ((mu / dmu).round() as isize + half as isize) as usize;
        if k >= series.len() || (mu - (k as f64 - half as f64) * dmu).abs() > 1e-9 * dmu.max(1.0) {
            return Err(Error::InvalidGrid(format!("mu = {mu} is off the uniform grid")));
        }
        series[k].set(j, c);
    }
    SpectralFunction::new(side, dmu, half, series)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}
