//! The Frobenius adjunction between parabolic induction and restriction.

pub mod bernstein;
pub mod cosets;
pub mod frobenius;
pub mod triangle;
pub mod wave;

pub use cosets::{
    column_of, column_rep, inverse_column_row, inverse_row_point, plane_star, row_rep, row_star,
    Invariance, KernelOnGxG,
};
pub use frobenius::{
    counit_by_restriction, fiber_plane, fiber_row, fiber_row_support, frobenius_counit,
    frobenius_pairing, frobenius_unit_kernel, n_fiber, UnitKernel,
};
pub use bernstein::{bernstein_functional_reference, bernstein_unit, BernsteinUnit, BumpSpec, LineBump};
pub use wave::{
    hc_wave_condition_check, matrix_coefficient, plancherel_density, plancherel_weight, spectral_matrix_pairing,
    vanishing_order, wave_packet_b, Parity, WaveConditionReport, PLANCHEREL_KAPPA,
};
pub use triangle::{
    narrow_bump_bound, spot_check_triangle_first, verify_triangle_first, verify_triangle_narrow, verify_triangle_second,
    TriangleOutcome,
};
