//! Field-noise response functions above a planar diffusive metal.
//!
//! The crate evaluates the reflected-field response of a half-space metal to
//! an oscillating dipole at height `z0`, for three electrodynamic models of
//! the induced charge:
//!
//! * `Local` — ordinary local conductor, ε(ω) = 1 + 4πiσ/ω,
//! * `ChargeLayer` — all induced charge in a surface sheet with lateral
//!   diffusion constant `D_s`,
//! * `ContinuousCharge` — induced charge extending into the bulk with
//!   diffusion constant `D` and decay constant `v1`.
//!
//! The imaginary parts of the response tensors set the thermal field-noise
//! spectra (and ion/atom heating rates) through the fluctuation-dissipation
//! theorem. Internally everything is Gaussian-CGS and, wherever possible,
//! dimensionless: wave vectors in units of 1/δ (δ the skin depth), distances
//! in units of δ, diffusion through D0 = D_s/(ωδ²).
//!
//! Module map:
//! * [`scales`] — parameter validation, unit conversion, derived scales
//! * [`kernels`] — decay constants, reflection coefficients, integrand brackets
//! * [`quadrature`] — adaptive semi-infinite integration with the 1/v0 light-line
//!   singularity handled by substitution, plus a fixed-grid Simpson oracle
//! * [`response`] — the assembled response integrals and FDT conversion
//! * [`asymptotics`] — closed-form limits and the regime classifier
//! * [`fit`] — log-log power-law fitting and pointwise slopes
//! * [`sweep`] — grid sweeps, figure presets, CSV/JSON tables

pub mod asymptotics;
pub mod fit;
pub mod kernels;
pub mod quadrature;
pub mod response;
pub mod scales;
pub mod sweep;

pub use scales::{DerivedScales, DimensionlessSpec, MediumSpec, Model, ProbeSpec};
