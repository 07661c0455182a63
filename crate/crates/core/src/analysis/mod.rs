//! Verification and visualization computations on top of the maps:
//! level-curve tracing, Laurent normalization probes, phase portraits,
//! a greedy transfinite-diameter capacity estimate, and structured
//! verification reports.

mod contour;
mod leja;
mod portrait;
mod probe;
mod verify;

pub use contour::{trace_green_level, trace_level_curve, Curve, Window};
pub use leja::leja_capacity;
pub use portrait::{
    detect_phase_singularities, render_phase_portrait, render_phase_portrait_serial,
    PhaseGrid, PhaseSingularity,
};
pub use probe::{decay_exponent, normalization_probe};
pub use verify::{run_verification, Check, VerificationReport};
