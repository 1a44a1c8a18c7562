//! Assembled response functions and the FDT conversion to noise spectra.
//!
//! Electric channels (response to a unit dipole at height z0):
//!   α_zz = ∫₀^∞ dk k³ r_p(k) e^{−2v0 z0}/v0,
//!   α_xx = ∫₀^∞ dk k  B(k)  e^{−2v0 z0}/v0,
//! with r_p the model's TM_z reflection coefficient and B the x-channel
//! bracket. Magnetic channels (response to a unit magnetic moment):
//!   B_zz  = ∫₀^∞ dk (k³/c v0)(v0−v)/(v0+v) e^{−2v0 z0},
//!   ΔB_xx = the surface-diffusion-induced part of B_xx (charge layer).
//!
//! Scaled outputs use the convention (8πσ/ω)·δ³·Im α for electric channels,
//! which makes the local short-distance limit exactly (δ/z0)³, and c·δ³·Im B
//! for magnetic ones. Integrals always keep the full complex v0 in both the
//! exponent and the measure; closed-form limits live in [`crate::asymptotics`].

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::kernels::{DimensionlessMedium, KernelError};
use crate::quadrature::{self, QuadFlags, QuadSpec};
use crate::scales::{
    derive_scales, MediumSpec, Model, ProbeSpec, ScaleError, C_CGS, HBAR_CGS, KB_CGS,
};

#[derive(Debug, Error)]
pub enum ResponseError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Quad(#[from] quadrature::QuadError),
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error("channel {0:?} is not defined for model {1:?}")]
    ChannelUndefined(Channel, Model),
}

/// Response channel tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    AlphaZz,
    AlphaXx,
    Bzz,
    DeltaBxx,
}

impl Channel {
    pub fn name(&self) -> &'static str {
        match self {
            Channel::AlphaZz => "alpha_zz",
            Channel::AlphaXx => "alpha_xx",
            Channel::Bzz => "b_zz",
            Channel::DeltaBxx => "delta_b_xx",
        }
    }

    pub fn is_electric(&self) -> bool {
        matches!(self, Channel::AlphaZz | Channel::AlphaXx)
    }
}

impl std::str::FromStr for Channel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha_zz" | "zz" => Ok(Channel::AlphaZz),
            "alpha_xx" | "xx" => Ok(Channel::AlphaXx),
            "b_zz" | "bzz" => Ok(Channel::Bzz),
            "delta_b_xx" | "dbxx" => Ok(Channel::DeltaBxx),
            other => Err(format!(
                "unknown channel '{other}' (expected alpha_zz | alpha_xx | b_zz | delta_b_xx)"
            )),
        }
    }
}

/// Quadrature bookkeeping attached to a response value.
#[derive(Debug, Clone, Copy)]
pub struct QuadDiagnostics {
    pub rel_error: f64,
    pub subdivisions: usize,
    pub flags: QuadFlags,
}

/// One evaluated response component.
#[derive(Debug, Clone, Copy)]
pub struct ResponseValue {
    pub channel: Channel,
    pub model: Model,
    /// cm
    pub z0: f64,
    /// rad/s
    pub omega: f64,
    /// Raw Gaussian value: cm⁻³ for α, s·cm⁻⁴ for the magnetic channels.
    pub value: Complex64,
    /// (8πσ/ω)δ³·Im α (electric) or c·δ³·Im B (magnetic).
    pub im_scaled: f64,
    pub quad: QuadDiagnostics,
}

fn validate_channel(channel: Channel, med: &DimensionlessMedium) -> Result<(), ResponseError> {
    match channel {
        Channel::AlphaZz | Channel::AlphaXx if med.model == Model::ContinuousCharge => {
            if med.d0_bulk <= 0.0 {
                return Err(ResponseError::Kernel(KernelError::UndefinedV1 {
                    model: med.model,
                }));
            }
        }
        Channel::DeltaBxx if med.model == Model::ContinuousCharge => {
            return Err(ResponseError::ChannelUndefined(channel, med.model));
        }
        _ => {}
    }
    Ok(())
}

/// Dimensionless response integral I(ζ) for one channel; the regular kernel
/// part is integrated against e^{−2 v0 ζ}/v0 in skin-depth units.
pub fn dimensionless_integral(
    channel: Channel,
    med: &DimensionlessMedium,
    zeta: f64,
    spec: &QuadSpec,
) -> Result<(Complex64, QuadDiagnostics), ResponseError> {
    validate_channel(channel, med)?;
    let m = *med;
    let result = match channel {
        Channel::AlphaZz => quadrature::integrate_response(
            move |kd| kd * kd * kd * m.reflect_tm_z(kd).expect("validated"),
            m.w,
            zeta,
            spec,
        )?,
        Channel::AlphaXx => quadrature::integrate_response(
            move |kd| kd * m.tm_x_bracket(kd).expect("validated"),
            m.w,
            zeta,
            spec,
        )?,
        Channel::Bzz => {
            quadrature::integrate_response(move |kd| m.bzz_regular(kd), m.w, zeta, spec)?
        }
        Channel::DeltaBxx => quadrature::integrate_response(
            move |kd| m.dbxx_regular(kd).expect("validated"),
            m.w,
            zeta,
            spec,
        )?,
    };
    Ok((
        result.value,
        QuadDiagnostics {
            rel_error: result.rel_error,
            subdivisions: result.subdivisions,
            flags: result.flags,
        },
    ))
}

/// Scaled Im of the response in dimensionless form; the unit-free quantity
/// plotted in the distance sweeps.
pub fn scaled_im(
    channel: Channel,
    med: &DimensionlessMedium,
    zeta: f64,
    spec: &QuadSpec,
) -> Result<(f64, QuadDiagnostics), ResponseError> {
    let (value, diag) = dimensionless_integral(channel, med, zeta, spec)?;
    let scale = if channel.is_electric() {
        4.0 / (med.w * med.w)
    } else {
        1.0
    };
    Ok((scale * value.im, diag))
}

/// Surface-diffusion-induced part of the scaled xx response (exact product
/// form, usable where the full difference would be lost to cancellation).
pub fn xx_diffusion_correction_scaled(
    med: &DimensionlessMedium,
    zeta: f64,
    spec: &QuadSpec,
) -> Result<(f64, QuadDiagnostics), ResponseError> {
    if med.model == Model::ContinuousCharge && med.d0_bulk <= 0.0 {
        return Err(ResponseError::Kernel(KernelError::UndefinedV1 {
            model: med.model,
        }));
    }
    let m = *med;
    let r = quadrature::integrate_response(
        move |kd| kd * m.xx_correction_bracket(kd).expect("validated"),
        m.w,
        zeta,
        spec,
    )?;
    Ok((
        4.0 / (med.w * med.w) * r.value.im,
        QuadDiagnostics {
            rel_error: r.rel_error,
            subdivisions: r.subdivisions,
            flags: r.flags,
        },
    ))
}

fn assemble(
    channel: Channel,
    medium: &MediumSpec,
    probe: &ProbeSpec,
    spec: &QuadSpec,
) -> Result<ResponseValue, ResponseError> {
    let scales = derive_scales(medium, probe)?;
    let med = DimensionlessMedium::from_scales(medium.model, &scales);
    let delta = scales.skin_depth;
    let zeta = probe.z0 / delta;
    let (integral, quad) = dimensionless_integral(channel, &med, zeta, spec)?;
    let d3 = delta * delta * delta;
    let (value, im_scaled) = if channel.is_electric() {
        (integral / d3, 4.0 / (med.w * med.w) * integral.im)
    } else {
        (integral / (C_CGS * d3), integral.im)
    };
    Ok(ResponseValue {
        channel,
        model: medium.model,
        z0: probe.z0,
        omega: probe.omega,
        value,
        im_scaled,
        quad,
    })
}

/// Im α_zz response (z-polarized dipole).
pub fn alpha_zz(
    medium: &MediumSpec,
    probe: &ProbeSpec,
    spec: &QuadSpec,
) -> Result<ResponseValue, ResponseError> {
    assemble(Channel::AlphaZz, medium, probe, spec)
}

/// Im α_xx response (x-polarized dipole).
pub fn alpha_xx(
    medium: &MediumSpec,
    probe: &ProbeSpec,
    spec: &QuadSpec,
) -> Result<ResponseValue, ResponseError> {
    assemble(Channel::AlphaXx, medium, probe, spec)
}

/// Magnetic zz response; independent of the surface diffusion for every model.
pub fn b_zz(
    medium: &MediumSpec,
    probe: &ProbeSpec,
    spec: &QuadSpec,
) -> Result<ResponseValue, ResponseError> {
    assemble(Channel::Bzz, medium, probe, spec)
}

/// Surface-diffusion-induced correction to the magnetic xx response
/// (charge-layer model; identically zero at D_s = 0).
pub fn delta_b_xx(
    medium: &MediumSpec,
    probe: &ProbeSpec,
    spec: &QuadSpec,
) -> Result<ResponseValue, ResponseError> {
    assemble(Channel::DeltaBxx, medium, probe, spec)
}

/// FDT output: thermal spectra and the two-level heating factor.
#[derive(Debug, Clone, Copy)]
pub struct NoiseResult {
    /// 2ħ·n̄·Im α — quantum absorption spectral density (see note below).
    pub spectral_density: f64,
    /// (2k_BT/ω)·Im α — classical (Rayleigh-Jeans) limit, reported alongside.
    pub spectral_density_classical: f64,
    /// 2·n̄·Im α — transition rate per squared dipole, in units of 1/ħ².
    pub heating_factor: f64,
    /// Bose occupation n̄ = 1/(e^{ħω/k_BT} − 1).
    pub bose_occupation: f64,
    pub temperature: f64,
}

/// Convert a response value to thermal noise via the absorption Bose factor.
///
/// Bookkeeping convention: the transition-rate form 2n̄·Im α is exact per
/// squared dipole over ħ²; the spectral density is reported as S = 2ħn̄·Im α
/// with the classical limit S_cl = (2k_BT/ω)·Im α alongside (they agree for
/// ħω ≪ k_BT). Spontaneous emission (T = 0 vacuum noise) is excluded.
pub fn fdt_noise(resp: &ResponseValue, temperature: f64) -> Result<NoiseResult, ResponseError> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(ResponseError::NonPositiveTemperature(temperature));
    }
    let x = HBAR_CGS * resp.omega / (KB_CGS * temperature);
    let bose = 1.0 / x.exp_m1();
    let im = resp.value.im;
    Ok(NoiseResult {
        spectral_density: 2.0 * HBAR_CGS * bose * im,
        spectral_density_classical: 2.0 * KB_CGS * temperature / resp.omega * im,
        heating_factor: 2.0 * bose * im,
        bose_occupation: bose,
        temperature,
    })
}
