//! Numerical harmonic analysis on SL(2,R) along the parabolic subgroups
//! `P+- = L N+-`: Fourier transform along `A`, the standard intertwining
//! operators and the Frobenius adjunction between parabolic induction and
//! restriction.

pub mod adjunction;
pub mod error;
pub mod fourier;
pub mod gamma;
pub mod group;
pub mod haar;
pub mod intertwiners;
pub mod models;
pub mod quadrature;
pub mod report;

pub use error::{Error, Result};
pub use group::{
    group_norm, k_average, modular_delta, xi, xi_value, xi_with_side, CartanFactors, GroupElement,
    IwasawaFactors, Side, XiValue,
};
pub use num_complex::Complex64;
pub use quadrature::{QuadratureScheme, SinhSinh};

/// Short alias used throughout the crate.
pub type C64 = Complex64;
