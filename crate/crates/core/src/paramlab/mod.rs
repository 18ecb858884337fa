//! Bifurcation constants, fixed points, 2-cycles, singular values and the
//! parameter regime map.

pub mod constants;
pub mod fixed_points;
pub mod regime;
pub mod singular;

/// Tolerance for deciding that `λ` equals a ladder value.
pub const REGIME_TOL: f64 = 1e-9;

pub use constants::{compute_constants, constants, refine_pair, BifurcationConstants};
pub use fixed_points::{
    find_critical_point, imag_fixed_points, imag_two_cycles, invariant_disk_radius,
    real_fixed_points, FixedPointRecord, Location, Stability,
};
pub use regime::{regime, regime_id, RegimeDescriptor, RegimeId};
pub use singular::{singular_values, RealCritical, SingularValueCatalog, DEFAULT_N_MAX};
