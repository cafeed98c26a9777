//! Shared fixtures for the benchmarks.

use sl2harm::models::{KSeries, LogPolarBump, MuGrid, PlaneFunction, SpectralFunction};
use sl2harm::{GroupElement, Side, C64};

/// A smooth bump on `G/N+` of the size used by the verification suites.
pub fn upper_bump() -> PlaneFunction {
    PlaneFunction::bump(Side::Upper, LogPolarBump::normalized(0.1, 0.5, 0.3, 1.5))
}

/// A Gaussian spectral profile on K-types 0 and 2.
pub fn spectral_profile(side: Side) -> SpectralFunction {
    let grid = MuGrid::new(0.05, 7.0).expect("valid grid");
    SpectralFunction::from_fn(side, grid, 4, |mu, j| match j {
        0 => C64::from((-mu * mu / 2.0).exp()),
        2 => C64::new(0.3, 0.1) * (-mu * mu / 2.0).exp(),
        _ => C64::new(0.0, 0.0),
    })
}

/// A K-series with a few nonzero coefficients.
pub fn k_series() -> KSeries {
    let mut s = KSeries::zeros(4);
    s.set(0, C64::new(1.0, 0.2));
    s.set(2, C64::new(-0.3, 0.5));
    s.set(-3, C64::new(0.2, 0.0));
    s
}

/// A generic element away from `K` and `A`.
pub fn generic_element() -> GroupElement {
    GroupElement::rotation(0.4) * GroupElement::a(0.6) * GroupElement::rotation(-1.1)
}
