//! Fourier series on `K = SO(2)` and families of them over a `mu` grid.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::group::Side;
use crate::{Error, Result, C64};

/// Coefficients `c_j`, `|j| <= jmax`, of `sum_j c_j e^{i j u}`.
///
/// Inner products use the normalized measure `du / 2pi` on `K`, so that
/// `<f, g> = sum_j conj(a_j) b_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KSeries {
    pub jmax: usize,
    pub coeffs: Vec<C64>,
}

impl KSeries {
    pub fn zeros(jmax: usize) -> Self {
        Self {
            jmax,
            coeffs: vec![C64::new(0.0, 0.0); 2 * jmax + 1],
        }
    }

    /// Series with a single nonzero coefficient.
    pub fn basis(jmax: usize, j: i32, c: C64) -> Self {
        let mut s = Self::zeros(jmax);
        s.set(j, c);
        s
    }

    /// Coefficients from `n >= 2 jmax + 2` equispaced samples of a function on `K`.
    pub fn from_fn<F: Fn(f64) -> C64>(jmax: usize, n: usize, f: F) -> Self {
        let n = n.max(2 * jmax + 2);
        let samples: Vec<C64> = (0..n).map(|k| f(2.0 * PI * k as f64 / n as f64)).collect();
        Self::from_samples(jmax, &samples)
    }

    pub fn from_samples(jmax: usize, samples: &[C64]) -> Self {
        let n = samples.len();
        let mut s = Self::zeros(jmax);
        for j in -(jmax as i32)..=jmax as i32 {
            let mut acc = C64::new(0.0, 0.0);
            for (k, v) in samples.iter().enumerate() {
                acc += v * C64::from_polar(1.0, -(j as f64) * 2.0 * PI * k as f64 / n as f64);
            }
            s.set(j, acc / n as f64);
        }
        s
    }

    pub fn j_range(&self) -> std::ops::RangeInclusive<i32> {
        -(self.jmax as i32)..=self.jmax as i32
    }

    pub fn get(&self, j: i32) -> C64 {
        if j.unsigned_abs() as usize > self.jmax {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[(j + self.jmax as i32) as usize]
        }
    }

    pub fn set(&mut self, j: i32, c: C64) {
        assert!(j.unsigned_abs() as usize <= self.jmax, "K-type {j} beyond jmax {}", self.jmax);
        let i = (j + self.jmax as i32) as usize;
        self.coeffs[i] = c;
    }

    pub fn eval(&self, u: f64) -> C64 {
        self.j_range()
            .map(|j| self.get(j) * C64::from_polar(1.0, j as f64 * u))
            .sum()
    }

    pub fn map_coeffs<F: Fn(i32, C64) -> C64>(&self, f: F) -> Self {
        let mut s = Self::zeros(self.jmax);
        for j in self.j_range() {
            s.set(j, f(j, self.get(j)));
        }
        s
    }

    pub fn even_part(&self) -> Self {
        self.map_coeffs(|j, c| if j % 2 == 0 { c } else { C64::new(0.0, 0.0) })
    }

    pub fn odd_part(&self) -> Self {
        self.map_coeffs(|j, c| if j % 2 != 0 { c } else { C64::new(0.0, 0.0) })
    }

    pub fn inner(&self, other: &KSeries) -> C64 {
        let jm = self.jmax.min(other.jmax) as i32;
        (-jm..=jm).map(|j| self.get(j).conj() * other.get(j)).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn add(&self, other: &KSeries) -> Self {
        let jmax = self.jmax.max(other.jmax);
        let mut s = Self::zeros(jmax);
        for j in s.j_range() {
            s.set(j, self.get(j) + other.get(j));
        }
        s
    }

    pub fn scale(&self, a: C64) -> Self {
        self.map_coeffs(|_, c| a * c)
    }
}

/// One K-series per node of a symmetric uniform `mu` grid
/// `mu_k = (k - half) dmu`, `k = 0..=2 half`.
///
/// `side` records which homogeneity the family represents: upper-side
/// functions transform by `r^{-1-i mu}`, lower-side ones by `r^{-1+i mu}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralFunction {
    pub side: Side,
    pub dmu: f64,
    pub half: usize,
    pub series: Vec<KSeries>,
}

impl SpectralFunction {
    pub fn new(side: Side, dmu: f64, half: usize, series: Vec<KSeries>) -> Result<Self> {
        if !(dmu > 0.0) || series.len() != 2 * half + 1 {
            return Err(Error::InvalidGrid(format!(
                "need dmu > 0 and {} series, got dmu={dmu}, {}",
                2 * half + 1,
                series.len()
            )));
        }
        Ok(Self {
            side,
            dmu,
            half,
            series,
        })
    }

    /// Builds from a coefficient function `(mu, j) -> c`.
    pub fn from_fn<F: Fn(f64, i32) -> C64>(side: Side, grid: MuGrid, jmax: usize, f: F) -> Self {
        let series = grid
            .nodes()
            .map(|mu| KSeries::zeros(jmax).map_coeffs(|j, _| f(mu, j)))
            .collect();
        Self {
            side,
            dmu: grid.dmu,
            half: grid.half,
            series,
        }
    }

    pub fn grid(&self) -> MuGrid {
        MuGrid {
            dmu: self.dmu,
            half: self.half,
        }
    }

    pub fn mu(&self, k: usize) -> f64 {
        self.grid().mu(k)
    }

    pub fn cutoff(&self) -> f64 {
        self.half as f64 * self.dmu
    }

    pub fn jmax(&self) -> usize {
        self.series.iter().map(|s| s.jmax).max().unwrap_or(0)
    }

    pub fn same_grid(&self, other: &SpectralFunction) -> bool {
        self.half == other.half && (self.dmu - other.dmu).abs() <= 1e-15 * self.dmu
    }

    /// `int sum_j conj(a_j) b_j dmu` (trapezoid rule).
    pub fn inner(&self, other: &SpectralFunction) -> Result<C64> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        let n = self.series.len();
        Ok(self
            .series
            .iter()
            .zip(&other.series)
            .enumerate()
            .map(|(k, (a, b))| {
                let w = if k == 0 || k + 1 == n { 0.5 } else { 1.0 };
                a.inner(b) * (w * self.dmu)
            })
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.inner(self).map(|c| c.re).unwrap_or(f64::NAN)
    }

    pub fn map<F: Fn(f64, &KSeries) -> KSeries>(&self, f: F) -> Self {
        let series = self
            .series
            .iter()
            .enumerate()
            .map(|(k, s)| f(self.mu(k), s))
            .collect();
        Self {
            series,
            ..self.clone()
        }
    }

    pub fn even_part(&self) -> Self {
        self.map(|_, s| s.even_part())
    }

    pub fn odd_part(&self) -> Self {
        self.map(|_, s| s.odd_part())
    }

    /// `(mu, K-series) -> (-mu, K-series)`.
    pub fn reflected(&self) -> Self {
        let mut series = self.series.clone();
        series.reverse();
        Self {
            series,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &SpectralFunction) -> Result<Self> {
        if !self.same_grid(other) || self.side != other.side {
            return Err(Error::GridMismatch);
        }
        let series = self
            .series
            .iter()
            .zip(&other.series)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Self {
            series,
            ..self.clone()
        })
    }

    pub fn scale(&self, a: C64) -> Self {
        self.map(|_, s| s.scale(a))
    }

    /// Largest coefficient magnitude.
    pub fn sup(&self) -> f64 {
        self.series
            .iter()
            .flat_map(|s| s.coeffs.iter().map(|c| c.norm()))
            .fold(0.0, f64::max)
    }
}

/// Symmetric uniform grid `mu_k = (k - half) dmu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuGrid {
    pub dmu: f64,
    pub half: usize,
}

impl MuGrid {
    pub fn new(dmu: f64, cutoff: f64) -> Result<Self> {
        if !(dmu > 0.0) || !(cutoff >= 0.0) {
            return Err(Error::InvalidGrid("mu grid needs dmu > 0, cutoff >= 0".into()));
        }
        Ok(Self {
            dmu,
            half: (cutoff / dmu).round() as usize,
        })
    }

    pub fn len(&self) -> usize {
        2 * self.half + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mu(&self, k: usize) -> f64 {
        (k as f64 - self.half as f64) * self.dmu
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.mu(k))
    }
}

impl Default for MuGrid {
    fn default() -> Self {
        Self {
            dmu: 0.05,
            half: 400,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_recover_coefficients() {
        let s = KSeries::from_fn(4, 16, |u| C64::from_polar(2.0, 3.0 * u) + C64::from((-2.0 * u).cos()));
        assert!((s.get(3) - C64::from(2.0)).norm() < 1e-14);
        assert!((s.get(-2) - C64::from(0.5)).norm() < 1e-14);
        assert!(s.get(1).norm() < 1e-14);
        let e = s.even_part();
        assert_eq!(e.get(3), C64::new(0.0, 0.0));
        assert_eq!(e.get(2), s.get(2));
    }

    #[test]
    fn default_grid_shape() {
        let g = MuGrid::default();
        assert_eq!(g.len(), 801);
        assert_eq!(g.mu(0), -20.0);
        assert_eq!(g.mu(400), 0.0);
    }
}
