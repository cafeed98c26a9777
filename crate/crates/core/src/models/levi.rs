//! Functions on the Levi factor `L = {diag(alpha, 1/alpha)}`, identified with
//! `R^x` and parametrized by `alpha = sign * e^s`. Haar measure is `ds` on each
//! sign component.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::models::plane::{act_l_right_alpha, PlaneFunction};
use crate::models::rows::RowFunction;
use crate::quadrature::QuadratureScheme;
use crate::{Error, Result, C64};

/// Which sign components of `R^x` carry the function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signs {
    Positive,
    Negative,
    Both,
}

impl Signs {
    pub fn list(self) -> &'static [f64] {
        match self {
            Signs::Positive => &[1.0],
            Signs::Negative => &[-1.0],
            Signs::Both => &[1.0, -1.0],
        }
    }

    fn product(self, other: Signs) -> Signs {
        use Signs::*;
        match (self, other) {
            (Both, _) | (_, Both) => Both,
            (a, b) if a == b => Positive,
            _ => Negative,
        }
    }

    fn contains(self, sign: f64) -> bool {
        match self {
            Signs::Both => true,
            Signs::Positive => sign > 0.0,
            Signs::Negative => sign < 0.0,
        }
    }
}

/// Support window in `s = log|alpha|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeviSupport {
    pub s: (f64, f64),
    pub signs: Signs,
}

type Eval = Arc<dyn Fn(f64, f64) -> C64 + Send + Sync>;

/// A function on `L`, evaluated at `(sign, s)`.
#[derive(Clone)]
pub struct LeviFunction {
    f: Eval,
    pub support: LeviSupport,
    /// Number of continuous derivatives (`usize::MAX` for smooth).
    pub smoothness: usize,
}

impl fmt::Debug for LeviFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeviFunction({:?})", self.support)
    }
}

/// A value together with a truncation flag.
#[derive(Debug, Clone)]
pub struct Truncated<T> {
    pub value: T,
    pub truncation_warning: bool,
}

impl LeviFunction {
    pub fn from_fn<F>(support: LeviSupport, f: F) -> Self
    where
        F: Fn(f64, f64) -> C64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            support,
            smoothness: usize::MAX,
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(
            LeviSupport {
                s: (0.0, 0.0),
                signs: Signs::Positive,
            },
            |_, _| C64::new(0.0, 0.0),
        )
    }

    /// Gaussian in `s` of unit mass on one sign component, cut off at 9 widths.
    pub fn bump(s0: f64, width: f64, sign: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidGrid("bump width must be positive".into()));
        }
        let norm = 1.0 / (width * (2.0 * std::f64::consts::PI).sqrt());
        let signs = if sign > 0.0 { Signs::Positive } else { Signs::Negative };
        let r = 9.0 * width;
        Ok(Self::from_fn(
            LeviSupport {
                s: (s0 - r, s0 + r),
                signs,
            },
            move |sg, s| {
                if !signs.contains(sg) || (s - s0).abs() > r {
                    return C64::new(0.0, 0.0);
                }
                let d = (s - s0) / width;
                C64::from(norm * (-0.5 * d * d).exp())
            },
        ))
    }

    pub fn eval(&self, sign: f64, s: f64) -> C64 {
        (self.f)(sign, s)
    }

    /// Value at `alpha`.
    pub fn eval_alpha(&self, alpha: f64) -> C64 {
        self.eval(alpha.signum(), alpha.abs().ln())
    }

    pub fn scale(&self, a: C64) -> Self {
        let f = self.f.clone();
        Self::from_fn(self.support, move |sg, s| a * f(sg, s))
    }

    /// Samples on a uniform `s` grid per sign, interpolated by cubics.
    ///
    /// Useful when one evaluation is expensive and many are needed.
    pub fn tabulate(&self, step: f64) -> Result<Self> {
        let (lo, hi) = self.support.s;
        let n = (((hi - lo) / step).ceil() as usize).max(3) + 1;
        let h = (hi - lo) / (n - 1) as f64;
        let signs = self.support.signs;
        let tables: Vec<(f64, Vec<C64>)> = signs
            .list()
            .iter()
            .map(|&sg| {
                let vals: Vec<C64> = (0..n)
                    .into_par_iter()
                    .map(|i| self.eval(sg, lo + i as f64 * h))
                    .collect();
                (sg, vals)
            })
            .collect();
        Ok(Self::from_fn(self.support, move |sg, s| {
            if s < lo || s > hi {
                return C64::new(0.0, 0.0);
            }
            let Some((_, v)) = tables.iter().find(|t| t.0 == sg) else {
                return C64::new(0.0, 0.0);
            };
            let p = (s - lo) / h;
            let b = (p.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
            let x = p - b as f64;
            let (a0, a1, a2, a3) = (x, x - 1.0, x - 2.0, x - 3.0);
            let w = [
                -a1 * a2 * a3 / 6.0,
                a0 * a2 * a3 / 2.0,
                -a0 * a1 * a3 / 2.0,
                a0 * a1 * a2 / 6.0,
            ];
            (0..4).map(|k| v[b + k] * w[k]).sum()
        }))
    }

    /// Quadrature nodes `(sign, s, weight)` covering the support.
    pub fn nodes(&self, scheme: &QuadratureScheme) -> Vec<(f64, f64, f64)> {
        let (lo, hi) = self.support.s;
        let n = (((hi - lo) * scheme.plane_panels_per_unit as f64).ceil() as usize).max(1) * 16;
        let line = crate::haar::line_nodes(lo, hi, n);
        let mut out = Vec::with_capacity(line.len() * 2);
        for &sg in self.support.signs.list() {
            out.extend(line.iter().map(|&(s, w)| (sg, s, w)));
        }
        out
    }

    /// `int_L f(l) dl`.
    pub fn integral(&self, scheme: &QuadratureScheme) -> C64 {
        self.nodes(scheme)
            .into_iter()
            .map(|(sg, s, w)| self.eval(sg, s) * w)
            .sum()
    }

    /// `f*(l) = conj f(l^{-1})`.
    pub fn star(&self) -> Self {
        let f = self.f.clone();
        let (lo, hi) = self.support.s;
        Self::from_fn(
            LeviSupport {
                s: (-hi, -lo),
                signs: self.support.signs,
            },
            move |sg, s| f(sg, -s).conj(),
        )
    }

    /// `(f1 * f2)(l) = int f1(m) f2(m^{-1} l) dm`.
    pub fn convolve(&self, other: &LeviFunction, scheme: &QuadratureScheme) -> Self {
        let nodes = self.nodes(scheme);
        let (a, b) = (self.clone(), other.clone());
        let support = LeviSupport {
            s: (
                self.support.s.0 + other.support.s.0,
                self.support.s.1 + other.support.s.1,
            ),
            signs: self.support.signs.product(other.support.signs),
        };
        Self::from_fn(support, move |sg, s| {
            nodes
                .iter()
                .map(|&(sm, t, w)| a.eval(sm, t) * b.eval(sm * sg, s - t) * w)
                .sum()
        })
    }

    /// Largest magnitude at the ends of the support relative to the interior peak.
    pub fn boundary_ratio(&self, scheme: &QuadratureScheme) -> f64 {
        let peak = self
            .nodes(scheme)
            .into_iter()
            .map(|(sg, s, _)| self.eval(sg, s).norm())
            .fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let (lo, hi) = self.support.s;
        self.support
            .signs
            .list()
            .iter()
            .flat_map(|&sg| [self.eval(sg, lo).norm(), self.eval(sg, hi).norm()])
            .fold(0.0, f64::max)
            / peak
    }
}

/// `(h f)(x) = int_L f(l) (h l)(x) dl`.
pub fn act_l_module(h: &PlaneFunction, f: &LeviFunction, scheme: &QuadratureScheme) -> Truncated<PlaneFunction> {
    let weighted: Vec<(PlaneFunction, C64)> = f
        .nodes(scheme)
        .into_iter()
        .filter_map(|(sg, s, w)| {
            let v = f.eval(sg, s) * w;
            (v != C64::new(0.0, 0.0)).then(|| (act_l_right_alpha(sg * s.exp(), h), v))
        })
        .collect();
    let mut decay = h.decay;
    let (lo, hi) = f.support.s;
    decay.u_support = match h.side() {
        crate::Side::Upper => (decay.u_support.0 + lo, decay.u_support.1 + hi),
        crate::Side::Lower => (decay.u_support.0 - hi, decay.u_support.1 - lo),
    };
    let out = PlaneFunction::from_fn(h.side(), move |x| {
        weighted.iter().map(|(hl, v)| hl.eval(x) * v).sum()
    })
    .with_decay(decay);
    Truncated {
        value: out,
        truncation_warning: f.boundary_ratio(scheme) > crate::haar::TRUNCATION_RATIO,
    }
}

/// `(f k)(y) = int_L f(l) (l k)(y) dl` on a row model, with the unitary left
/// action `(l k)(N y) = |alpha|^{-+1} k(N l^{-1} y)`: rows scale by `1/alpha`
/// on `N-\G` and by `alpha` on `N+\G`.
pub fn act_l_module_row(k: &RowFunction, f: &LeviFunction, scheme: &QuadratureScheme) -> RowFunction {
    let side = k.side();
    let weighted: Vec<(f64, C64)> = f
        .nodes(scheme)
        .into_iter()
        .filter_map(|(sg, s, w)| {
            let v = f.eval(sg, s) * w;
            (v != C64::new(0.0, 0.0)).then(|| (sg * s.exp(), v))
        })
        .collect();
    let k = k.clone();
    RowFunction::from_fn(side, move |r| {
        weighted
            .iter()
            .map(|&(alpha, v)| {
                let m = match side {
                    crate::Side::Lower => alpha.recip(),
                    crate::Side::Upper => alpha,
                };
                k.eval([r[0] * m, r[1] * m]) * (v * m.abs())
            })
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_has_unit_mass() {
        let f = LeviFunction::bump(0.3, 0.2, -1.0).unwrap();
        let m = f.integral(&QuadratureScheme::default());
        assert!((m.re - 1.0).abs() < 1e-12);
        assert_eq!(f.eval(1.0, 0.3), C64::new(0.0, 0.0));
    }

    #[test]
    fn convolution_of_gaussians() {
        let s = QuadratureScheme::default();
        let a = LeviFunction::bump(0.2, 0.3, 1.0).unwrap();
        let b = LeviFunction::bump(-0.5, 0.4, -1.0).unwrap();
        let c = a.convolve(&b, &s);
        // masses multiply; the result sits on the negative component at s = -0.3
        let w = 0.5f64;
        let expect = 1.0 / (w * (2.0 * std::f64::consts::PI).sqrt());
        assert!((c.eval(-1.0, -0.3).re - expect).abs() < 1e-10);
        assert!(c.eval(1.0, -0.3).norm() < 1e-15);
    }
}
