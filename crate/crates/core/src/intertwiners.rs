//! Standard intertwining integrals, their c-functions, the inverses
//! `I = F^{-1} c^{-1} F` and the normalized involution `W`.
//!
//! `J+` maps lower-side functions to upper-side functions,
//! `(J+ k)(v) = int k(w + s v) ds` with `det[v, w] = 1`, and `J-` is the mirror
//! image. On K-type atoms `J+` is multiplication by `c+^{(j)}(mu)` where the
//! line integral converges, namely for `Im mu > 0`; `J-` needs `Im mu < 0`.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use crate::fourier::{fourier_a, inverse_fourier_a, FourierConfig};
use crate::gamma::gamma;
use crate::group::Side;
use crate::models::levi::Truncated;
use crate::models::plane::PlaneFunction;
use crate::models::spectral::{KSeries, MuGrid, SpectralFunction};
use crate::quadrature::{QuadratureScheme, SinhSinh};
use crate::{Error, Result, C64};

/// Tail decay exponent below which the line integral is reported as divergent.
pub const DIVERGENCE_EXPONENT: f64 = 1.05;

fn z_of(side: Side, mu: C64) -> C64 {
    let s = match side {
        Side::Upper => -1.0,
        Side::Lower => 1.0,
    };
    0.5 * (1.0 + s * C64::i() * mu)
}

/// `c^{(j)}(mu) = pi^{1/2} G(z - 1/2) G(z) / (G(z + j/2) G(z - j/2))`
/// with `z = (1 - i mu)/2` (upper) or `(1 + i mu)/2` (lower).
///
/// Evaluated in reduced form: the even quotient is `c^{(0)}` times a rational
/// function of `z`, the odd one `c^{(1)}` times a rational function of
/// `z + 1/2`. This avoids cancelling poles in the raw quotient and is symmetric
/// in `j`.
pub fn c_function(side: Side, j: i32, mu: C64) -> Result<C64> {
    let z = z_of(side, mu);
    let m = (j.unsigned_abs() / 2) as i32;
    if j % 2 == 0 {
        if mu == C64::new(0.0, 0.0) {
            return Err(Error::CFunctionPole { j });
        }
        let base = PI.sqrt() * gamma(z - 0.5)? / gamma(z)?;
        let mut r = C64::from(1.0);
        for k in 0..m {
            r *= (z - (k + 1) as f64) / (z + k as f64);
        }
        Ok(base * r)
    } else {
        let w = z + 0.5;
        let base = PI.sqrt() * gamma(z)? / gamma(w)?;
        let mut r = C64::from(1.0);
        for k in 0..m {
            r *= (w - 1.0 - (k + 1) as f64) / (w + k as f64);
        }
        Ok(base * r)
    }
}

/// `1 / c^{(j)}(mu)`, with the limit `0` at the even-j pole.
pub fn c_function_inverse(side: Side, j: i32, mu: C64) -> Result<C64> {
    match c_function(side, j, mu) {
        Err(Error::CFunctionPole { .. }) => Ok(C64::new(0.0, 0.0)),
        r => r.map(|c| c.inv()),
    }
}

/// `lim (c(eps) + c(-eps))/2` at `mu = 0`: the finite part of an even-j
/// c-function, which is what a principal-value pairing sees at the pole.
pub fn c_function_finite_part(side: Side, j: i32) -> Result<C64> {
    let eps = 1e-4;
    let a = c_function(side, j, C64::from(eps))?;
    let b = c_function(side, j, C64::from(-eps))?;
    let c = c_function(side, j, C64::from(2.0 * eps))?;
    let d = c_function(side, j, C64::from(-2.0 * eps))?;
    // Richardson on the O(eps^2) error of the symmetric mean
    Ok((4.0 * 0.5 * (a + b) - 0.5 * (c + d)) / 3.0)
}

/// Tabulated c-function on a `mu` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CFunctionTable {
    pub side: Side,
    pub jmax: usize,
    pub grid: MuGrid,
    /// `values[k][j + jmax]`; `None` at the even-j pole.
    pub values: Vec<Vec<Option<C64>>>,
}

impl CFunctionTable {
    pub fn build(side: Side, jmax: usize, grid: MuGrid) -> Result<Self> {
        let values = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let mu = C64::from(grid.mu(k));
                (-(jmax as i32)..=jmax as i32)
                    .map(|j| match c_function(side, j, mu) {
                        Ok(c) => Ok(Some(c)),
                        Err(Error::CFunctionPole { .. }) => Ok(None),
                        Err(e) => Err(e),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            side,
            jmax,
            grid,
            values,
        })
    }

    pub fn get(&self, k: usize, j: i32) -> Option<C64> {
        self.values[k][(j + self.jmax as i32) as usize]
    }

    /// `side, j, mu, re, im, pole` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let err = |e: csv::Error| Error::Parse(e.to_string());
        wr.write_record(["side", "j", "mu", "re", "im", "pole"]).map_err(err)?;
        let tag = match self.side {
            Side::Upper => "plus",
            Side::Lower => "minus",
        };
        for j in -(self.jmax as i32)..=self.jmax as i32 {
            for k in 0..self.grid.len() {
                let (re, im, pole) = match self.get(k, j) {
                    Some(c) => (format!("{:e}", c.re), format!("{:e}", c.im), "0"),
                    None => ("nan".into(), "nan".into(), "1"),
                };
                wr.write_record([tag, &j.to_string(), &format!("{}", self.grid.mu(k)), &re, &im, pole])
                    .map_err(err)?;
            }
        }
        wr.flush().map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Value of a numeric line integral and its tail diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegral {
    pub value: C64,
    /// Observed decay exponent `|f(s)| ~ |s|^{-p}` in the far tail (infinite if it vanishes).
    pub tail_exponent: f64,
    pub divergent: bool,
}

/// `a, b` with `det[a, b] = 1`: the completion of `x` to a unimodular basis
/// on the given side.
fn dual_vector(side: Side, x: [f64; 2]) -> [f64; 2] {
    let r2 = x[0] * x[0] + x[1] * x[1];
    match side {
        // x = v is the first column; w = (-v2, v1)/|v|^2
        Side::Upper => [-x[1] / r2, x[0] / r2],
        // x = w is the second column; v = (w2, -w1)/|w|^2
        Side::Lower => [x[1] / r2, -x[0] / r2],
    }
}

/// `int h(y + s x) ds` over the line through the dual vector `y` of `x`,
/// optionally shifted along the line by `shift`. `side` is the output side;
/// `h` must live on the opposite one.
pub fn intertwine_j_numeric_with(
    side: Side,
    h: &PlaneFunction,
    x: [f64; 2],
    rule: &SinhSinh,
    shift: f64,
) -> Result<LineIntegral> {
    if h.side() != side.opposite() {
        return Err(Error::ModelMismatch(format!(
            "J on the {} side takes {}-side input",
            side.as_str(),
            side.opposite().as_str()
        )));
    }
    let r2 = x[0] * x[0] + x[1] * x[1];
    if r2 == 0.0 {
        return Err(Error::Origin);
    }
    let d = dual_vector(side, x);
    let y = [d[0] + shift * x[0], d[1] + shift * x[1]];
    let f = |s: f64| h.eval([y[0] + s * x[0], y[1] + s * x[1]]);
    let scale = 1.0 / r2;
    let value = rule.integrate(scale, f);
    let tail_exponent = tail_exponent(&f, scale, rule);
    Ok(LineIntegral {
        value,
        tail_exponent,
        divergent: tail_exponent < DIVERGENCE_EXPONENT,
    })
}

fn tail_exponent<F: Fn(f64) -> C64>(f: &F, scale: f64, rule: &SinhSinh) -> f64 {
    // compare |f| at two far points on each ray
    let far = scale * (0.5 * PI * (0.6 * rule.t_max).sinh()).sinh();
    let farther = far * 1e3;
    let mut worst = f64::INFINITY;
    for sgn in [1.0, -1.0] {
        let (a, b) = (f(sgn * far).norm(), f(sgn * farther).norm());
        if a == 0.0 {
            continue;
        }
        let p = if b == 0.0 { f64::INFINITY } else { -(b / a).ln() / 1e3f64.ln() };
        worst = worst.min(p);
    }
    worst
}

/// `(J h)(x)` with the scheme's line rule.
pub fn intertwine_j_numeric(side: Side, h: &PlaneFunction, x: [f64; 2], scheme: &QuadratureScheme) -> Result<LineIntegral> {
    intertwine_j_numeric_with(side, h, x, &scheme.line, 0.0)
}

/// `J h` as a plane function on the output side.
pub fn intertwine_j(side: Side, h: &PlaneFunction, scheme: &QuadratureScheme) -> Result<PlaneFunction> {
    if h.side() != side.opposite() {
        return Err(Error::ModelMismatch("J input on the wrong side".into()));
    }
    let (h, rule) = (h.clone(), scheme.line);
    Ok(PlaneFunction::from_fn(side, move |x| {
        intertwine_j_numeric_with(side, &h, x, &rule, 0.0)
            .map(|l| l.value)
            .unwrap_or(C64::new(0.0, 0.0))
    }))
}

/// Multiplies the `j`-th coefficient at `mu` by `1/c^{(j)}(mu)`; the even
/// K-types vanish at `mu = 0`.
pub fn apply_c_inverse(hs: &SpectralFunction, side: Side) -> Result<SpectralFunction> {
    multiply(hs, |j, mu| c_function_inverse(side, j, C64::from(mu)))
}

/// Multiplies by `c^{(j)}(mu)`. At the even-j pole the node receives the
/// finite part of `c` times the coefficient: on a symmetric grid the odd
/// `1/mu` part cancels between `mu` and `-mu`, which is the principal-value
/// reading of the product.
pub fn apply_c(hs: &SpectralFunction, side: Side) -> Result<SpectralFunction> {
    multiply(hs, |j, mu| match c_function(side, j, C64::from(mu)) {
        Err(Error::CFunctionPole { .. }) => c_function_finite_part(side, j),
        r => r,
    })
}

fn multiply<F: Fn(i32, f64) -> Result<C64> + Sync>(hs: &SpectralFunction, m: F) -> Result<SpectralFunction> {
    let series = hs
        .series
        .par_iter()
        .enumerate()
        .map(|(k, s)| {
            let mu = hs.mu(k);
            let mut out = KSeries::zeros(s.jmax);
            for j in s.j_range() {
                let c = s.get(j);
                if c != C64::new(0.0, 0.0) {
                    out.set(j, c * m(j, mu)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralFunction::new(hs.side, hs.dmu, hs.half, series)
}

/// `I+ h = F_lower^{-1}(c+^{-1} F_upper h)` for upper-side `h` (and the mirror
/// image for `I-`), a right inverse of `J+`.
pub fn intertwine_i(side: Side, h: &PlaneFunction, cfg: &FourierConfig) -> Result<Truncated<PlaneFunction>> {
    if h.side() != side {
        return Err(Error::ModelMismatch(format!(
            "I on the {} side takes {}-side input",
            side.as_str(),
            side.as_str()
        )));
    }
    let f = fourier_a(h, cfg)?;
    let mut hs = apply_c_inverse(&f.spectral, side)?;
    hs.side = side.opposite();
    Ok(Truncated {
        value: inverse_fourier_a(&hs, cfg)?,
        truncation_warning: f.resolution_warning,
    })
}

/// Scalar of the normalized involution on the K-type `j`:
/// `i^j c+^{(j)}/c+^{(0)}` for even `j` and `i^{j-1} c+^{(j)}/c+^{(1)}` for odd `j`.
///
/// Both are rational in `mu`, unimodular on the real line and satisfy
/// `w_j(mu) w_j(-mu) = 1`. At `mu = 0` the even family is `1`; the odd
/// family is `sign(j)`, acting as `+1` and `-1` on the two halves into which
/// the odd series splits there.
pub fn w_scalar(j: i32, mu: f64) -> C64 {
    let z = z_of(Side::Upper, C64::from(mu));
    let m = (j.unsigned_abs() / 2) as i32;
    let mut r = C64::from(1.0);
    if j % 2 == 0 {
        for k in 0..m {
            r *= (z - (k + 1) as f64) / (z + k as f64);
        }
        r * C64::i().powi(j.abs())
    } else {
        let w = z + 0.5;
        for k in 0..m {
            r *= (w - 1.0 - (k + 1) as f64) / (w + k as f64);
        }
        r * C64::i().powi(j - 1)
    }
}

/// `(W H)_j(mu) = w_j(mu) H_j(-mu)`.
pub fn normalized_w(hs: &SpectralFunction) -> SpectralFunction {
    let refl = hs.reflected();
    refl.map(|mu, s| s.map_coeffs(|j, c| w_scalar(j, mu) * c))
}

/// `(H + W H)/2`.
pub fn symmetric_part(hs: &SpectralFunction) -> SpectralFunction {
    let w = normalized_w(hs);
    hs.add(&w).expect("same grid").scale(C64::from(0.5))
}

/// `(H - W H)/2`.
pub fn antisymmetric_part(hs: &SpectralFunction) -> SpectralFunction {
    let w = normalized_w(hs).scale(C64::from(-1.0));
    hs.add(&w).expect("same grid").scale(C64::from(0.5))
}

/// `c^{(j)}(mu)` straight from the Gamma quotient, for cross-checks.
pub fn c_function_raw(side: Side, j: i32, mu: C64) -> Result<C64> {
    let s = match side {
        Side::Upper => -1.0,
        Side::Lower => 1.0,
    };
    let im = s * C64::i() * mu;
    let num = gamma(0.5 * im)? * gamma(0.5 * (1.0 + im))?;
    let den = gamma(0.5 * (1.0 + im + j as f64))? * gamma(0.5 * (1.0 + im - j as f64))?;
    Ok(PI.sqrt() * num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let c1 = c_function(Side::Upper, 1, C64::new(0.0, 0.0)).unwrap();
        assert!((c1 - C64::from(PI)).norm() < 1e-12);
        let v = c_function(Side::Upper, 0, C64::from(0.01)).unwrap() * 0.01;
        assert!((v - C64::new(0.0, 2.0)).norm() <= 2e-2);
        assert!(matches!(
            c_function(Side::Upper, 2, C64::new(0.0, 0.0)),
            Err(Error::CFunctionPole { j: 2 })
        ));
    }

    #[test]
    fn reduced_form_matches_raw_quotient() {
        for j in -7..=7 {
            for &mu in &[C64::new(0.37, 0.0), C64::new(-2.1, 0.0), C64::new(1.0, 0.5), C64::new(5.3, -0.2)] {
                for side in [Side::Upper, Side::Lower] {
                    let a = c_function(side, j, mu).unwrap();
                    let b = c_function_raw(side, j, mu).unwrap();
                    assert!((a - b).norm() < 1e-11 * b.norm(), "j={j} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn w_is_unimodular_and_involutive() {
        for j in -6..=6 {
            for &mu in &[0.0, 0.3, -1.7, 9.0] {
                let w = w_scalar(j, mu);
                assert!((w.norm() - 1.0).abs() < 1e-14);
                assert!((w * w_scalar(j, -mu) - 1.0).norm() < 1e-14);
            }
            let at0 = if j % 2 == 0 { 1.0 } else { f64::from(j.signum()) };
            assert!((w_scalar(j, 0.0) - at0).norm() < 1e-15);
        }
        assert_eq!(w_scalar(0, 3.0), C64::from(1.0));
    }

    #[test]
    fn finite_part_is_regular_value() {
        // c+^{(0)}(mu) = 2i/mu + r0 + O(mu); the finite part is r0
        let fp = c_function_finite_part(Side::Upper, 0).unwrap();
        let e = 1e-3;
        let approx = c_function(Side::Upper, 0, C64::from(e)).unwrap() - C64::new(0.0, 2.0) / e;
        assert!((fp - approx).norm() < 1e-2);
    }
}
