//! Numerical information-geometry laboratory.
//!
//! Computes Fisher-Rao metrics of parametric probability families —
//! centrally, the family induced by the on-shell energy density of a
//! localized massive scalar-field solution — and verifies by independent
//! numerical routes (adaptive quadrature, tensor quadrature, seeded Monte
//! Carlo, finite-difference scores) that the emergent metric is flat,
//! Euclidean, and equal to its closed form (4m²/(D−2))·δ_ab.
//!
//! Organization:
//!
//! * [`family`] — the family abstraction (density, score, sampling), the
//!   concrete families, and a name registry for runtime selection.
//! * [`field_theory`] — the scalar-field model behind the central family.
//! * [`integrate`] — quadrature and Monte Carlo substrate.
//! * [`fisher`] — metric estimators (also name-registered), moments, and
//!   metric transforms.
//! * [`geometry`] — curvature diagnostics over metric fields.

pub mod error;
pub mod family;
pub mod field_theory;
pub mod fisher;
pub mod geometry;
pub mod integrate;

pub use error::{Error, Result};

// metric matrices in the public API are nalgebra types
pub use nalgebra;
