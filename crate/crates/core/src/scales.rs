//! Material/probe parameters, unit conversion and derived length scales.
//!
//! Internal unit system is Gaussian-CGS: conductivity σ in 1/s, diffusion
//! constants in cm²/s, lengths in cm, ω in rad/s. SI values are accepted only
//! at the input boundary (`MediumSpec::from_si`, `ProbeSpec::from_si`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Speed of light, cm/s.
pub const C_CGS: f64 = 2.997_924_58e10;
/// Converts conductivity from S/m to Gaussian 1/s (numerically 1/(4πε₀) in SI).
pub const SIGMA_SI_TO_CGS: f64 = 8.987_551_787_368_176_4e9;
/// ħ in erg·s.
pub const HBAR_CGS: f64 = 1.054_571_817e-27;
/// Boltzmann constant in erg/K.
pub const KB_CGS: f64 = 1.380_649e-16;

#[derive(Debug, Error)]
pub enum ScaleError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
}

fn require_positive(name: &'static str, value: f64) -> Result<f64, ScaleError> {
    if !value.is_finite() {
        return Err(ScaleError::NonFinite { name, value });
    }
    if value <= 0.0 {
        return Err(ScaleError::NonPositive { name, value });
    }
    Ok(value)
}

fn require_non_negative(name: &'static str, value: f64) -> Result<f64, ScaleError> {
    if !value.is_finite() {
        return Err(ScaleError::NonFinite { name, value });
    }
    if value < 0.0 {
        return Err(ScaleError::Negative { name, value });
    }
    Ok(value)
}

/// Electrodynamic model of the induced charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Local,
    ChargeLayer,
    ContinuousCharge,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Local => "local",
            Model::ChargeLayer => "charge_layer",
            Model::ContinuousCharge => "continuous_charge",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "local" => Ok(Model::Local),
            "charge_layer" | "charge-layer" | "cl" => Ok(Model::ChargeLayer),
            "continuous_charge" | "continuous-charge" | "continuous" | "cc" => {
                Ok(Model::ContinuousCharge)
            }
            other => Err(format!(
                "unknown model '{other}' (expected local | charge_layer | continuous_charge)"
            )),
        }
    }
}

/// Material parameters in Gaussian units.
///
/// For `Model::Local` the stored diffusion constants are ignored (the model
/// behaves as if D = D_s = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSpec {
    /// Conductivity σ, 1/s.
    pub sigma: f64,
    /// Bulk diffusion constant D, cm²/s.
    pub diffusion_bulk: f64,
    /// Surface diffusion constant D_s, cm²/s.
    pub diffusion_surface: f64,
    pub model: Model,
}

impl MediumSpec {
    pub fn new(
        sigma: f64,
        diffusion_bulk: f64,
        diffusion_surface: f64,
        model: Model,
    ) -> Result<Self, ScaleError> {
        Ok(Self {
            sigma: require_positive("sigma", sigma)?,
            diffusion_bulk: require_non_negative("diffusion_bulk", diffusion_bulk)?,
            diffusion_surface: require_non_negative("diffusion_surface", diffusion_surface)?,
            model,
        })
    }

    /// SI boundary: σ in S/m, diffusion constants in m²/s.
    pub fn from_si(
        sigma_si: f64,
        diffusion_bulk_si: f64,
        diffusion_surface_si: f64,
        model: Model,
    ) -> Result<Self, ScaleError> {
        Self::new(
            sigma_si * SIGMA_SI_TO_CGS,
            diffusion_bulk_si * 1e4,
            diffusion_surface_si * 1e4,
            model,
        )
    }

    /// Effective bulk diffusion after the Local-model override.
    pub fn effective_diffusion_bulk(&self) -> f64 {
        match self.model {
            Model::Local => 0.0,
            _ => self.diffusion_bulk,
        }
    }

    /// Effective surface diffusion after the Local-model override.
    pub fn effective_diffusion_surface(&self) -> f64 {
        match self.model {
            Model::Local => 0.0,
            _ => self.diffusion_surface,
        }
    }
}

/// Observation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSpec {
    /// Angular frequency ω, rad/s.
    pub omega: f64,
    /// Observation distance z0 above the surface, cm.
    pub z0: f64,
    /// Temperature in K, used only by the FDT conversion.
    pub temperature: Option<f64>,
}

impl ProbeSpec {
    pub fn new(omega: f64, z0: f64, temperature: Option<f64>) -> Result<Self, ScaleError> {
        if let Some(t) = temperature {
            require_positive("temperature", t)?;
        }
        Ok(Self {
            omega: require_positive("omega", omega)?,
            z0: require_positive("z0", z0)?,
            temperature,
        })
    }

    /// SI boundary: z0 in metres.
    pub fn from_si(omega: f64, z0_m: f64, temperature: Option<f64>) -> Result<Self, ScaleError> {
        Self::new(omega, z0_m * 100.0, temperature)
    }
}

/// Secondary scales derived from a (medium, probe) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    /// Skin depth δ = c/√(2πσω), cm.
    pub skin_depth: f64,
    /// Vacuum wavelength λ = 2πc/ω, cm.
    pub wavelength: f64,
    /// Screening length a0 = √(D/4πσ), cm.
    pub screening_length: f64,
    /// Surface analog a0s = √(D_s/4πσ), cm.
    pub screening_length_surface: f64,
    /// Dimensionless surface diffusion D0 = D_s/(ωδ²) = 2πσD_s/c².
    pub d0_surface: f64,
    /// Dimensionless bulk diffusion D/(ωδ²); parameterizes v1.
    pub d0_bulk: f64,
    /// Transverse permittivity ε(ω) = 1 + 4πiσ/ω.
    pub eps: Complex64,
    /// ωδ/c = 2πδ/λ.
    pub omega_delta_over_c: f64,
}

/// Derive all secondary scales. The diffusion constants are taken through the
/// model override (Local ⇒ D = D_s = 0).
pub fn derive_scales(medium: &MediumSpec, probe: &ProbeSpec) -> Result<DerivedScales, ScaleError> {
    let sigma = require_positive("sigma", medium.sigma)?;
    let omega = require_positive("omega", probe.omega)?;
    let d = medium.effective_diffusion_bulk();
    let ds = medium.effective_diffusion_surface();

    let delta = C_CGS / (2.0 * std::f64::consts::PI * sigma * omega).sqrt();
    let lambda = 2.0 * std::f64::consts::PI * C_CGS / omega;
    let a0 = (d / (4.0 * std::f64::consts::PI * sigma)).sqrt();
    let a0s = (ds / (4.0 * std::f64::consts::PI * sigma)).sqrt();
    Ok(DerivedScales {
        skin_depth: delta,
        wavelength: lambda,
        screening_length: a0,
        screening_length_surface: a0s,
        d0_surface: ds / (omega * delta * delta),
        d0_bulk: d / (omega * delta * delta),
        eps: Complex64::new(1.0, 4.0 * std::f64::consts::PI * sigma / omega),
        omega_delta_over_c: omega * delta / C_CGS,
    })
}

/// Dimensionless parameterization used by the figure sweeps: everything is
/// fixed by ωδ/c and the diffusion numbers, with δ normalized to 1 cm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessSpec {
    pub omega_delta_over_c: f64,
    pub d0_surface: f64,
    pub d0_bulk: f64,
    pub z0_over_delta: f64,
    pub model: Model,
}

impl DimensionlessSpec {
    pub fn new(
        omega_delta_over_c: f64,
        d0_surface: f64,
        d0_bulk: f64,
        z0_over_delta: f64,
        model: Model,
    ) -> Result<Self, ScaleError> {
        Ok(Self {
            omega_delta_over_c: require_positive("omega_delta_over_c", omega_delta_over_c)?,
            d0_surface: require_non_negative("d0_surface", d0_surface)?,
            d0_bulk: require_non_negative("d0_bulk", d0_bulk)?,
            z0_over_delta: require_positive("z0_over_delta", z0_over_delta)?,
            model,
        })
    }
}

/// Materialize a physical (medium, probe) pair with δ = 1 cm.
///
/// Round-trip property: `derive_scales` on the output reproduces
/// `omega_delta_over_c` and the diffusion numbers to relative 1e-12.
pub fn from_dimensionless(spec: &DimensionlessSpec) -> Result<(MediumSpec, ProbeSpec), ScaleError> {
    let delta = 1.0; // cm
    let w = spec.omega_delta_over_c;
    let omega = w * C_CGS / delta;
    // δ = c/√(2πσω) with δ = 1 fixes σ.
    let sigma = C_CGS * C_CGS / (2.0 * std::f64::consts::PI * omega * delta * delta);
    let ds = spec.d0_surface * omega * delta * delta;
    let d = spec.d0_bulk * omega * delta * delta;
    let medium = MediumSpec::new(sigma, d, ds, spec.model)?;
    let probe = ProbeSpec::new(omega, spec.z0_over_delta * delta, None)?;
    Ok((medium, probe))
}

/// Regime-of-applicability warning. These never abort a calculation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidityWarning {
    /// a0/z0 ≥ 0.1: screening length not small against the observation distance.
    ScreeningLengthComparable { ratio: f64 },
    /// z0/λ ≥ 0.1: observation distance approaches the vacuum wavelength.
    NearWavelength { ratio: f64 },
    /// Dω/c² ≥ 0.01: bulk-diffusion correction to the wave equation not small.
    BulkDiffusionCorrection { value: f64 },
    /// D_sω/c² ≥ 0.01: surface-diffusion correction to the wave equation not small.
    SurfaceDiffusionCorrection { value: f64 },
}

impl std::fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidityWarning::ScreeningLengthComparable { ratio } => {
                write!(f, "a0/z0 = {ratio:.3e} >= 0.1: quasi-local treatment of screening marginal")
            }
            ValidityWarning::NearWavelength { ratio } => {
                write!(f, "z0/lambda = {ratio:.3e} >= 0.1: near-field assumption marginal")
            }
            ValidityWarning::BulkDiffusionCorrection { value } => {
                write!(f, "D*omega/c^2 = {value:.3e} >= 0.01: bulk diffusion term in the wave equation not negligible")
            }
            ValidityWarning::SurfaceDiffusionCorrection { value } => {
                write!(f, "D_s*omega/c^2 = {value:.3e} >= 0.01: surface diffusion term in the wave equation not negligible")
            }
        }
    }
}

/// Check the asymptotic-regime assumptions; one warning per violation.
pub fn validity_report(
    medium: &MediumSpec,
    probe: &ProbeSpec,
) -> Result<Vec<ValidityWarning>, ScaleError> {
    let scales = derive_scales(medium, probe)?;
    let mut warnings = Vec::new();
    let a0_ratio = scales.screening_length / probe.z0;
    if a0_ratio >= 0.1 {
        warnings.push(ValidityWarning::ScreeningLengthComparable { ratio: a0_ratio });
    }
    let lam_ratio = probe.z0 / scales.wavelength;
    if lam_ratio >= 0.1 {
        warnings.push(ValidityWarning::NearWavelength { ratio: lam_ratio });
    }
    let dwc = medium.effective_diffusion_bulk() * probe.omega / (C_CGS * C_CGS);
    if dwc >= 0.01 {
        warnings.push(ValidityWarning::BulkDiffusionCorrection { value: dwc });
    }
    let dswc = medium.effective_diffusion_surface() * probe.omega / (C_CGS * C_CGS);
    if dswc >= 0.01 {
        warnings.push(ValidityWarning::SurfaceDiffusionCorrection { value: dswc });
    }
    Ok(warnings)
}
