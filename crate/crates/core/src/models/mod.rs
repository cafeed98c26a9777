//! Realizations of the function spaces on `G/N`, `N\G` and `L`.

pub mod group_fn;
pub mod levi;
pub mod norms;
pub mod plane;
pub mod rows;
pub mod spectral;

pub use group_fn::{act_sc_g, act_sc_g_row, GroupFunction};
pub use levi::{act_l_module, act_l_module_row, LeviFunction, LeviSupport, Signs, Truncated};
pub use norms::{hc_seminorm, hc_seminorm_first_order, l2_inner, l2_norm, plane_integral, Seminorm};
pub use plane::{
    act_g_left, act_l_right, k_angle_offset, norm_gmodn, xi_gmodn, Decay, HomogeneousAtom,
    LogPolarBump, LogPolarGrid, PlaneFunction, Representation,
};
pub use rows::RowFunction;
pub use spectral::{KSeries, MuGrid, SpectralFunction};
