//! Conformal maps from multiply connected exterior domains onto
//! lemniscatic domains {|U(w)| > mu}, U(w) = prod (w - a_j)^{m_j}.
//!
//! The crate builds the maps in closed form for three families — rotated
//! radial slits, polynomial pre-images of simply connected sets given by
//! their exterior Riemann map, and pairs of equal disks — together with a
//! doubly connected generalization, the exact transformation wrappers
//! (linear, conjugation, rotation), and the verification machinery around
//! them: Green's functions and their level curves, normalization probes,
//! phase portraits, and a transfinite-diameter capacity oracle.
//!
//! Batch evaluations (rasterization, grids, point sweeps) run in parallel
//! under the default `parallel` feature and sequentially without it; both
//! paths produce bit-identical results.

pub mod analysis;
mod branch;
pub mod domain;
pub mod elliptic;
mod error;
pub mod maps;
mod parallel;
pub mod riemann;

pub use branch::{principal_root, sector_index};
pub use error::{Error, Result};
pub use num_complex::Complex64;
