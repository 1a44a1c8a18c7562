//! Wave-vector-resolved kernels: decay constants, reflection coefficients and
//! the integrand brackets of the response integrals.
//!
//! All kernels are evaluated in dimensionless form: transverse wave number as
//! kd = k·δ, frequency as w = ωδ/c, diffusion through D0 = D_s/(ωδ²) and its
//! bulk analog. In these units ε = 1 + 2i/w², v·δ = √(kd² − w² − 2i) exactly,
//! which keeps the huge Gaussian magnitudes (σ ~ 1e17 1/s) out of the float
//! arithmetic.
//!
//! Branch choices are constructed explicitly rather than trusted from the
//! library square root:
//! * v0: Re v0 ≥ 0 and Im v0 ≤ 0 (outgoing above the light line),
//! * v:  Re v > 0 (transmitted wave decays into the metal),
//! * v1: Re v1 > 0 (bulk charge decays into the metal).

use num_complex::Complex64;
use thiserror::Error;

use crate::scales::{derive_scales, DerivedScales, MediumSpec, Model, ProbeSpec, ScaleError};

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("v1 is undefined for D = 0 (model {model:?})")]
    UndefinedV1 { model: Model },
    #[error("operation requires the charge-layer model, got {model:?}")]
    NotChargeLayer { model: Model },
    #[error("wave number must be non-negative and finite, got {k}")]
    BadWaveNumber { k: f64 },
    #[error(transparent)]
    Scale(#[from] ScaleError),
}

/// Principal square root with the sign flipped onto the Re > 0 sheet.
fn sqrt_decaying(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.re < 0.0 || (r.re == 0.0 && r.im < 0.0) {
        -r
    } else {
        r
    }
}

/// (a − b)/(a + b) by components:
///   Re = (|a|² − |b|²)/|a+b|²,  Im = 2·Im(a·conj(b))/|a+b|².
///
/// The naive complex division loses the imaginary part to cross-product
/// cancellation once |a| ≫ |b| with both components of `a` large (the
/// charge-layer case at D_s k²/ω ~ 1, where ε̃ has comparable real and
/// imaginary parts of order |ε|). In the decomposed form the two products of
/// Im(a·conj(b)) carry the same sign for a passive medium, so Im keeps full
/// relative precision.
fn fresnel_ratio(a: Complex64, b: Complex64) -> Complex64 {
    let den = (a + b).norm_sqr();
    Complex64::new(
        (a.norm_sqr() - b.norm_sqr()) / den,
        2.0 * (a.im * b.re - a.re * b.im) / den,
    )
}

/// Model parameters with the frequency folded in; the natural argument of
/// every kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessMedium {
    pub model: Model,
    /// w = ωδ/c.
    pub w: f64,
    /// D0 = D_s/(ωδ²).
    pub d0_surface: f64,
    /// D/(ωδ²).
    pub d0_bulk: f64,
    /// ε(ω) = 1 + 2i/w².
    pub eps: Complex64,
}

impl DimensionlessMedium {
    pub fn new(model: Model, w: f64, d0_surface: f64, d0_bulk: f64) -> Self {
        let (d0s, d0b) = match model {
            Model::Local => (0.0, 0.0),
            _ => (d0_surface, d0_bulk),
        };
        Self {
            model,
            w,
            d0_surface: d0s,
            d0_bulk: d0b,
            eps: Complex64::new(1.0, 2.0 / (w * w)),
        }
    }

    pub fn from_scales(model: Model, scales: &DerivedScales) -> Self {
        Self::new(
            model,
            scales.omega_delta_over_c,
            scales.d0_surface,
            scales.d0_bulk,
        )
    }

    pub fn from_physical(medium: &MediumSpec, probe: &ProbeSpec) -> Result<Self, KernelError> {
        let scales = derive_scales(medium, probe)?;
        Ok(Self::from_scales(medium.model, &scales))
    }

    /// Vacuum decay constant v0·δ. Purely real for kd ≥ w, purely imaginary
    /// with Im < 0 below the light line.
    pub fn v0(&self, kd: f64) -> Complex64 {
        if kd >= self.w {
            Complex64::new(((kd - self.w) * (kd + self.w)).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, -((self.w - kd) * (self.w + kd)).sqrt())
        }
    }

    /// Transmitted decay constant v·δ = √(kd² − w² − 2i), Re > 0.
    pub fn v(&self, kd: f64) -> Complex64 {
        sqrt_decaying(Complex64::new((kd - self.w) * (kd + self.w), -2.0))
    }

    /// Bulk charge decay constant v1·δ, Re > 0. Defined only for D > 0.
    pub fn v1(&self, kd: f64) -> Result<Complex64, KernelError> {
        if self.d0_bulk <= 0.0 {
            return Err(KernelError::UndefinedV1 { model: self.model });
        }
        // v1^2 δ^2 = (4πσ − iω)δ²/D + kd² = (2/w² − i)/D0b + kd²
        let z = Complex64::new(2.0 / (self.w * self.w), -1.0) / self.d0_bulk
            + Complex64::new(kd * kd, 0.0);
        Ok(sqrt_decaying(z))
    }

    /// D_s k²/ω in dimensionless form.
    fn ds_k2_over_omega(&self, kd: f64) -> f64 {
        self.d0_surface * kd * kd
    }

    /// Effective permittivity of the charge-layer model,
    /// ε̃ = (ε + iD_sk²/ω)/(1 + iD_sk²/ω).
    pub fn eps_tilde(&self, kd: f64) -> Complex64 {
        let x = Complex64::new(0.0, self.ds_k2_over_omega(kd));
        (self.eps + x) / (Complex64::new(1.0, 0.0) + x)
    }

    /// TM (p-polarized) reflection coefficient of the z-channel.
    pub fn reflect_tm_z(&self, kd: f64) -> Result<Complex64, KernelError> {
        let v0 = self.v0(kd);
        let v = self.v(kd);
        match self.model {
            Model::Local => Ok(fresnel_ratio(self.eps * v0, v)),
            Model::ChargeLayer => Ok(fresnel_ratio(self.eps_tilde(kd) * v0, v)),
            Model::ContinuousCharge => {
                let q = (self.eps - 1.0) * kd * kd / self.v1(kd)?;
                Ok(fresnel_ratio(self.eps * v0, v + q))
            }
        }
    }

    /// TE (s-polarized) reflection coefficient, common to all three models:
    /// the charge layer carries no transverse current at this order.
    pub fn reflect_te(&self, kd: f64) -> Complex64 {
        fresnel_ratio(self.v0(kd), self.v(kd))
    }

    /// Local x-channel bracket in the combined (cancellation-free) form:
    /// (1/2)·[v0²·r_p − w²·(v−v0)/(v+v0)].
    fn tm_x_local(&self, kd: f64) -> Complex64 {
        let v0 = self.v0(kd);
        let v = self.v(kd);
        let rp = fresnel_ratio(self.eps * v0, v);
        let rs = fresnel_ratio(v, v0);
        0.5 * (v0 * v0 * rp - self.w * self.w * rs)
    }

    /// Surface-diffusion correction to the x-channel bracket (charge layer).
    ///
    /// Exact rearrangement of the difference between the charge-layer and
    /// local brackets into a product form, free of the ±i/4 cancellation that
    /// makes the as-printed difference unusable in f64 at small ωδ/c:
    ///   Δ = −i·kd²·v0²·(ε−1)·(D_sk²/ω) / (F1·F2),
    ///   F2 = εv0 + v,  F1 = F2 + i(D_sk²/ω)(v0+v).
    pub fn xx_correction_bracket(&self, kd: f64) -> Result<Complex64, KernelError> {
        match self.model {
            Model::Local => Ok(Complex64::new(0.0, 0.0)),
            Model::ChargeLayer => {
                let v0 = self.v0(kd);
                let v = self.v(kd);
                let ds = self.ds_k2_over_omega(kd);
                let f2 = self.eps * v0 + v;
                let f1 = f2 + Complex64::new(0.0, ds) * (v0 + v);
                Ok(-Complex64::i() * kd * kd * v0 * v0 * (self.eps - 1.0) * ds / (f1 * f2))
            }
            Model::ContinuousCharge => {
                // Same rearrangement for the bulk-charge model:
                //   Δ = −ε·v0³·kd²·(ε−1) / (v1·F2·Dc),  Dc = F2 + (ε−1)kd²/v1.
                let v0 = self.v0(kd);
                let v = self.v(kd);
                let v1 = self.v1(kd)?;
                let f2 = self.eps * v0 + v;
                let dc = f2 + (self.eps - 1.0) * kd * kd / v1;
                Ok(-self.eps * v0 * v0 * v0 * kd * kd * (self.eps - 1.0) / (v1 * f2 * dc))
            }
        }
    }

    /// Full x-channel bracket (excludes the dk·k measure and e^{−2v0 z0}/v0).
    pub fn tm_x_bracket(&self, kd: f64) -> Result<Complex64, KernelError> {
        Ok(self.tm_x_local(kd) + self.xx_correction_bracket(kd)?)
    }

    /// x-channel bracket assembled term-by-term as printed in the boundary
    /// value solutions. Algebraically identical to [`Self::tm_x_bracket`] but
    /// suffers strong cancellation at small ωδ/c; kept for equivalence tests.
    pub fn tm_x_bracket_literal(&self, kd: f64) -> Result<Complex64, KernelError> {
        let v0 = self.v0(kd);
        let v = self.v(kd);
        let w2 = self.w * self.w;
        match self.model {
            Model::Local => {
                let rs = (v - v0) / (v + v0);
                Ok(0.5 * v0 * v0 * rs
                    + kd * kd * v0 * v0 * (self.eps - 1.0)
                        / ((v + v0) * (self.eps * v0 + v))
                    - 0.5 * w2 * rs)
            }
            Model::ChargeLayer => {
                let x = Complex64::new(1.0, self.ds_k2_over_omega(kd));
                let et = self.eps_tilde(kd);
                Ok(0.5 * (v0 * v0 - w2) * (v - v0) / (v + v0)
                    + kd * kd * v0 * v0 * (self.eps - 1.0)
                        / (x * (v + v0) * (et * v0 + v)))
            }
            Model::ContinuousCharge => {
                let v1 = self.v1(kd)?;
                let dc = self.eps * v0 + v + (self.eps - 1.0) * kd * kd / v1;
                Ok(0.5 * (v0 * v0 - w2) * (v - v0) / (v + v0)
                    + kd * kd * v0 * v0 * (self.eps - 1.0) * (v1 - v) / ((v + v0) * v1 * dc))
            }
        }
    }

    /// Regular part of the zz magnetic kernel: kd³·(v0−v)/(v0+v).
    /// The response measure e^{−2v0 z0}/v0 is supplied by the quadrature.
    /// Independent of the surface diffusion for every model.
    pub fn bzz_regular(&self, kd: f64) -> Complex64 {
        kd * kd * kd * self.reflect_te(kd)
    }

    /// Regular part of the diffusion-induced xx magnetic kernel (charge layer):
    /// kd³·(iD_sk²/ω)/(v+v0) · [−v·v0·(εv+v0)] / [(εv0+v(1+iD_sk²/ω))(εv0+v)].
    /// Identically zero at D_s = 0.
    pub fn dbxx_regular(&self, kd: f64) -> Result<Complex64, KernelError> {
        match self.model {
            Model::ChargeLayer | Model::Local => {}
            Model::ContinuousCharge => {
                return Err(KernelError::NotChargeLayer { model: self.model })
            }
        }
        let ds = self.ds_k2_over_omega(kd);
        if ds == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let v0 = self.v0(kd);
        let v = self.v(kd);
        let ids = Complex64::new(0.0, ds);
        let num = -v * v0 * (self.eps * v + v0);
        let den = (self.eps * v0 + v * (1.0 + ids)) * (self.eps * v0 + v);
        Ok(kd * kd * kd * ids / (v + v0) * num / den)
    }
}

/// Complex decay constants at a physical wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveTriple {
    /// Transverse wave number, 1/cm.
    pub k: f64,
    /// Vacuum decay constant v0 = √(k² − ω²/c²), 1/cm.
    pub v0: Complex64,
    /// Transmitted decay constant v = √(k² − (ω²/c²)ε), 1/cm.
    pub v: Complex64,
    /// Bulk charge decay constant; `None` when D = 0.
    pub v1: Option<Complex64>,
}

/// Evaluate the decay constants with the enforced branch choices.
pub fn wave_triple(k: f64, omega: f64, medium: &MediumSpec) -> Result<WaveTriple, KernelError> {
    if !k.is_finite() || k < 0.0 {
        return Err(KernelError::BadWaveNumber { k });
    }
    let probe = ProbeSpec::new(omega, 1.0, None)?;
    let scales = derive_scales(medium, &probe)?;
    let delta = scales.skin_depth;
    let dm = DimensionlessMedium::from_scales(medium.model, &scales);
    let kd = k * delta;
    let v1 = if medium.effective_diffusion_bulk() > 0.0 {
        Some(dm.v1(kd)? / delta)
    } else {
        None
    };
    Ok(WaveTriple {
        k,
        v0: dm.v0(kd) / delta,
        v: dm.v(kd) / delta,
        v1,
    })
}

/// ε̃(k, ω) for the charge-layer model, physical arguments.
pub fn effective_permittivity(
    k: f64,
    omega: f64,
    medium: &MediumSpec,
) -> Result<Complex64, KernelError> {
    if !k.is_finite() || k < 0.0 {
        return Err(KernelError::BadWaveNumber { k });
    }
    let eps = Complex64::new(1.0, 4.0 * std::f64::consts::PI * medium.sigma / omega);
    let x = Complex64::new(
        0.0,
        medium.effective_diffusion_surface() * k * k / omega,
    );
    Ok((eps + x) / (Complex64::new(1.0, 0.0) + x))
}

/// Induced surface charge density γ(k) = iσ/(ω + iD_sk²)·E_z_in.
pub fn surface_charge(
    k: f64,
    omega: f64,
    medium: &MediumSpec,
    ez_in: Complex64,
) -> Result<Complex64, KernelError> {
    if medium.model != Model::ChargeLayer {
        return Err(KernelError::NotChargeLayer {
            model: medium.model,
        });
    }
    if !k.is_finite() || k < 0.0 {
        return Err(KernelError::BadWaveNumber { k });
    }
    let den = Complex64::new(omega, medium.effective_diffusion_surface() * k * k);
    Ok(Complex64::new(0.0, medium.sigma) / den * ez_in)
}

/// Polarization / channel tag of a reflection coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    /// E_z channel of the TM response.
    TmZ,
    /// E_x channel of the TM response (mixed bracket).
    TmX,
    Te,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionValue {
    pub model: Model,
    pub polarization: Polarization,
    pub k: f64,
    pub r: Complex64,
}

/// TM_z reflection coefficient at physical arguments.
pub fn reflect_tm_z(
    k: f64,
    omega: f64,
    medium: &MediumSpec,
) -> Result<ReflectionValue, KernelError> {
    if !k.is_finite() || k < 0.0 {
        return Err(KernelError::BadWaveNumber { k });
    }
    let probe = ProbeSpec::new(omega, 1.0, None)?;
    let scales = derive_scales(medium, &probe)?;
    let dm = DimensionlessMedium::from_scales(medium.model, &scales);
    Ok(ReflectionValue {
        model: medium.model,
        polarization: Polarization::TmZ,
        k,
        r: dm.reflect_tm_z(k * scales.skin_depth)?,
    })
}

/// TE reflection coefficient at physical arguments.
pub fn reflect_te(k: f64, omega: f64, medium: &MediumSpec) -> Result<ReflectionValue, KernelError> {
    if !k.is_finite() || k < 0.0 {
        return Err(KernelError::BadWaveNumber { k });
    }
    let probe = ProbeSpec::new(omega, 1.0, None)?;
    let scales = derive_scales(medium, &probe)?;
    let dm = DimensionlessMedium::from_scales(medium.model, &scales);
    Ok(ReflectionValue {
        model: medium.model,
        polarization: Polarization::Te,
        k,
        r: dm.reflect_te(k * scales.skin_depth),
    })
}

/// Full x-channel bracket at physical arguments, units 1/cm².
pub fn tm_x_kernel(k: f64, omega: f64, medium: &MediumSpec) -> Result<Complex64, KernelError> {
    if !k.is_finite() || k < 0.0 {
        return Err(KernelError::BadWaveNumber { k });
    }
    let probe = ProbeSpec::new(omega, 1.0, None)?;
    let scales = derive_scales(medium, &probe)?;
    let dm = DimensionlessMedium::from_scales(medium.model, &scales);
    let delta = scales.skin_depth;
    Ok(dm.tm_x_bracket(k * delta)? / (delta * delta))
}

/// Magnetic kernels at physical arguments (per unit c), units 1/cm²:
/// zz kernel (k³/v0)(v0−v)/(v0+v) and the diffusion-induced xx kernel.
pub fn magnetic_kernels(
    k: f64,
    omega: f64,
    medium: &MediumSpec,
) -> Result<(Complex64, Complex64), KernelError> {
    if !k.is_finite() || k < 0.0 {
        return Err(KernelError::BadWaveNumber { k });
    }
    let probe = ProbeSpec::new(omega, 1.0, None)?;
    let scales = derive_scales(medium, &probe)?;
    let dm = DimensionlessMedium::from_scales(medium.model, &scales);
    let delta = scales.skin_depth;
    let kd = k * delta;
    let v0 = dm.v0(kd);
    let bzz = dm.bzz_regular(kd) / v0 / (delta * delta);
    let dbxx = match medium.model {
        Model::ContinuousCharge => Complex64::new(0.0, 0.0),
        _ => dm.dbxx_regular(kd)? / v0 / (delta * delta),
    };
    Ok((bzz, dbxx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn dm(model: Model, w: f64, d0s: f64, d0b: f64) -> DimensionlessMedium {
        DimensionlessMedium::new(model, w, d0s, d0b)
    }

    #[test]
    fn v0_pure_propagating_limit() {
        // k = 0, omega/c = 1 => v0 = -i (physically; here in delta units with w = kd scale)
        let m = dm(Model::Local, 0.5, 0.0, 0.0);
        let v0 = m.v0(0.0);
        assert!((v0 - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        // physical-units route
        let medium = MediumSpec::new(1e17, 0.0, 0.0, Model::Local).unwrap();
        let omega = crate::scales::C_CGS; // omega/c = 1 cm^-1
        let t = wave_triple(0.0, omega, &medium).unwrap();
        assert!((t.v0 - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn v_limits() {
        let m = dm(Model::Local, 1e-6, 0.0, 0.0);
        // kd << 1: v ≈ (1 - i)/delta
        let v = m.v(1e-4);
        assert!((v - Complex64::new(1.0, -1.0)).norm() < 1e-4);
        // kd >> 1: v ≈ kd (1 - i/kd^2)
        let kd = 300.0;
        let v = m.v(kd);
        let expect = Complex64::new(kd, -1.0 / kd);
        assert!((v - expect).norm() / expect.norm() < 1e-5);
    }

    #[test]
    fn branch_continuity_across_light_line() {
        let m = dm(Model::ContinuousCharge, 0.37, 0.0, 2.0);
        let w = m.w;
        let eps_step = 1e-9 * w;
        // |v0| ~ sqrt(2 w step) near the light line, so compare on that scale
        let below = m.v0(w - eps_step);
        let above = m.v0(w + eps_step);
        let scale = (2.0 * w * eps_step).sqrt();
        assert!(
            (below - above).norm() < 2.0 * scale,
            "v0 jump at light line: {below} vs {above}"
        );
        let below = m.v(w - eps_step);
        let above = m.v(w + eps_step);
        assert!((below - above).norm() < 1e-8 * below.norm());
        let below = m.v1(w - eps_step).unwrap();
        let above = m.v1(w + eps_step).unwrap();
        assert!((below - above).norm() < 1e-8 * below.norm());
    }

    #[test]
    fn v1_requires_bulk_diffusion() {
        let m = dm(Model::ChargeLayer, 0.1, 1.0, 0.0);
        assert!(m.v1(1.0).is_err());
        let medium = MediumSpec::new(1e17, 0.0, 1.0, Model::ChargeLayer).unwrap();
        let t = wave_triple(1.0, 1e7, &medium).unwrap();
        assert!(t.v1.is_none());
    }

    #[test]
    fn eps_tilde_limits() {
        let m = dm(Model::ChargeLayer, 0.02, 3.0, 0.0);
        // k = 0 => eps_tilde = eps
        assert!((m.eps_tilde(0.0) - m.eps).norm() < 1e-12 * m.eps.norm());
        // D_s = 0 => eps_tilde = eps
        let m0 = dm(Model::ChargeLayer, 0.02, 0.0, 0.0);
        assert!((m0.eps_tilde(5.0) - m0.eps).norm() == 0.0);
        // kd = 1: D_s k^2/omega = D0 so eps_tilde = (eps + iD0)/(1 + iD0)
        let expect = (m.eps + Complex64::new(0.0, 3.0)) / Complex64::new(1.0, 3.0);
        assert!((m.eps_tilde(1.0) - expect).norm() < 1e-14 * expect.norm());
        // large k: eps_tilde -> 1
        assert!((m.eps_tilde(1e9) - Complex64::new(1.0, 0.0)).norm() < 1e-2);
    }

    #[test]
    fn surface_charge_limits_and_consistency() {
        let medium = MediumSpec::new(2e17, 0.0, 1e3, Model::ChargeLayer).unwrap();
        let omega = 6.6e6;
        // gamma ~ sigma/(D_s k^2) -> 0 as D_s k^2/omega grows
        let g = surface_charge(1e12, omega, &medium, Complex64::new(1.0, 0.0)).unwrap();
        assert!(g.norm() < 1e-6, "gamma = {g}");
        // 4 pi gamma + E_in = eps_tilde E_in (jump condition + constitutive identity)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let k = 10f64.powf(rng.gen_range(-2.0..6.0));
            let ez = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let g = surface_charge(k, omega, &medium, ez).unwrap();
            let et = effective_permittivity(k, omega, &medium).unwrap();
            let lhs = 4.0 * std::f64::consts::PI * g + ez;
            let rhs = et * ez;
            assert!(
                (lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1e-30),
                "jump identity failed at k = {k}"
            );
        }
    }

    #[test]
    fn tm_z_degeneracies() {
        // charge layer with D_s = 0 equals local at every k
        let w = 0.02;
        let loc = dm(Model::Local, w, 0.0, 0.0);
        let cl = dm(Model::ChargeLayer, w, 0.0, 0.0);
        for kd in [1e-3, 0.019, 0.021, 0.5, 3.0, 80.0, 2e3] {
            let a = loc.reflect_tm_z(kd).unwrap();
            let b = cl.reflect_tm_z(kd).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm());
        }
        // continuous charge approaches local as a0 k -> 0
        let cc = dm(Model::ContinuousCharge, w, 0.0, 1e-10);
        for kd in [0.1, 1.0, 10.0] {
            let a = loc.reflect_tm_z(kd).unwrap();
            let b = cc.reflect_tm_z(kd).unwrap();
            assert!(
                (a - b).norm() <= 1e-4 * a.norm(),
                "cc vs local at kd={kd}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn tm_z_large_k_plateau() {
        // local, k >> max(1/delta, omega/c): Im eps * Im r -> 2
        let m = dm(Model::Local, 0.02, 0.0, 0.0);
        let r = m.reflect_tm_z(500.0).unwrap();
        let val = m.eps.im * r.im;
        assert!((val - 2.0).abs() < 0.01, "plateau value {val}");
    }

    #[test]
    fn fig1_shape_enhancement_and_suppression() {
        let w = 0.02;
        let loc = dm(Model::Local, w, 0.0, 0.0);
        let cl = dm(Model::ChargeLayer, w, 1.0, 0.0);
        let cc = dm(Model::ContinuousCharge, w, 0.0, 1.0);
        let ime = loc.eps.im;
        // enhancement bump at intermediate k
        let kd = 1.0;
        let r_loc = ime * loc.reflect_tm_z(kd).unwrap().im;
        let r_cl = ime * cl.reflect_tm_z(kd).unwrap().im;
        assert!(r_cl > r_loc, "no enhancement: cl {r_cl} vs local {r_loc}");
        // continuous charge suppressed at large kd
        let kd = 100.0;
        let r_loc = ime * loc.reflect_tm_z(kd).unwrap().im;
        let r_cc = ime * cc.reflect_tm_z(kd).unwrap().im;
        assert!(r_cc < r_loc, "no suppression: cc {r_cc} vs local {r_loc}");
    }

    #[test]
    fn te_limits() {
        // eps = 1 would need sigma = 0 which MediumSpec forbids; check via the
        // dimensionless identity instead: r_te -> 0 as the contrast vanishes,
        // approximated by enormous w (eps -> 1).
        let m = dm(Model::Local, 1e6, 0.0, 0.0);
        assert!(m.reflect_te(3.0).norm() < 1e-9);
        // perfect-conductor limit: |eps| -> infinity at fixed k gives r -> -1
        let m = dm(Model::Local, 1e-9, 0.0, 0.0);
        let r = m.reflect_te(1e-3);
        assert!((r + Complex64::new(1.0, 0.0)).norm() < 1e-2, "r = {r}");
    }

    #[test]
    fn te_at_k_zero_matches_direct_substitution() {
        // r(0) = (-iw - w sqrt(-eps)) / (-iw + w sqrt(-eps)) on the Re v > 0 branch
        let w = 0.02;
        let m = dm(Model::ChargeLayer, w, 5.0, 0.0);
        let minus_eps = -m.eps;
        let mut root = minus_eps.sqrt();
        if root.re < 0.0 {
            root = -root;
        }
        let v0 = Complex64::new(0.0, -w);
        let expect = (v0 - w * root) / (v0 + w * root);
        let got = m.reflect_te(0.0);
        assert!((got - expect).norm() <= 1e-12 * expect.norm());
    }

    #[test]
    fn boundary_condition_reconstruction_charge_layer() {
        // With E_z^i = 1: E_z^r = r, E_z^t = 2 v0/(et v0 + v). Then both
        // et E_z^t = 1 + E_z^r and v E_z^t = v0 (1 - E_z^r) must hold.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let w = 10f64.powf(rng.gen_range(-5.0..-1.0));
            let d0 = 10f64.powf(rng.gen_range(-2.0..2.0));
            let m = dm(Model::ChargeLayer, w, d0, 0.0);
            let kd = 10f64.powf(rng.gen_range(-3.0..3.0));
            let v0 = m.v0(kd);
            let v = m.v(kd);
            let et = m.eps_tilde(kd);
            let r = m.reflect_tm_z(kd).unwrap();
            let t = 2.0 * v0 / (et * v0 + v);
            let lhs1 = et * t;
            let rhs1 = Complex64::new(1.0, 0.0) + r;
            assert!((lhs1 - rhs1).norm() <= 1e-10 * rhs1.norm().max(1.0));
            let lhs2 = v * t;
            let rhs2 = v0 * (Complex64::new(1.0, 0.0) - r);
            assert!((lhs2 - rhs2).norm() <= 1e-10 * rhs2.norm().max(v0.norm()));
        }
    }

    #[test]
    fn a16_identity_random_draws() {
        // (v-v0)/(v+v0) + 2k^2(eps-1)/((v+v0)(eps v0+v)) = (eps v0-v)/(eps v0+v)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..1000 {
            let w = 10f64.powf(rng.gen_range(-6.0..-0.5));
            let m = dm(Model::Local, w, 0.0, 0.0);
            let kd = 10f64.powf(rng.gen_range(-4.0..4.0));
            let v0 = m.v0(kd);
            let v = m.v(kd);
            let eps = m.eps;
            let lhs = (v - v0) / (v + v0)
                + 2.0 * kd * kd * (eps - 1.0) / ((v + v0) * (eps * v0 + v));
            let rhs = (eps * v0 - v) / (eps * v0 + v);
            assert!(
                (lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-12),
                "A16 identity failed at w={w}, kd={kd}"
            );
        }
    }

    #[test]
    fn x_bracket_stable_equals_literal_at_moderate_w() {
        // the literal and rearranged forms are the same function; compare at
        // omega delta/c large enough that the literal form is still accurate
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..1000 {
            let w = 10f64.powf(rng.gen_range(-2.0..-0.7));
            let d0 = 10f64.powf(rng.gen_range(-2.0..2.0));
            let model = match rng.gen_range(0..3) {
                0 => Model::Local,
                1 => Model::ChargeLayer,
                _ => Model::ContinuousCharge,
            };
            let m = dm(model, w, d0, d0.max(0.1));
            let kd = 10f64.powf(rng.gen_range(-2.0..2.0));
            let stable = m.tm_x_bracket(kd).unwrap();
            let literal = m.tm_x_bracket_literal(kd).unwrap();
            assert!(
                (stable - literal).norm() <= 1e-10 * stable.norm().max(1e-12),
                "bracket mismatch model={model:?} w={w} kd={kd}: {stable} vs {literal}"
            );
        }
    }

    #[test]
    fn x_bracket_charge_layer_degenerates_to_local() {
        let w = 0.003;
        let loc = dm(Model::Local, w, 0.0, 0.0);
        let cl = dm(Model::ChargeLayer, w, 0.0, 0.0);
        for kd in [1e-3, 0.1, 1.0, 30.0, 900.0] {
            let a = loc.tm_x_bracket(kd).unwrap();
            let b = cl.tm_x_bracket(kd).unwrap();
            // D_s = 0 makes the correction identically zero
            assert_eq!(a, b);
        }
    }

    #[test]
    fn magnetic_kernel_properties() {
        let w = 0.02;
        // D_s = 0 => dbxx = 0 exactly
        let m0 = dm(Model::ChargeLayer, w, 0.0, 0.0);
        assert_eq!(m0.dbxx_regular(1.3).unwrap(), Complex64::new(0.0, 0.0));
        // bzz independent of D_s
        let a = dm(Model::ChargeLayer, w, 0.0, 0.0).bzz_regular(0.7);
        let b = dm(Model::ChargeLayer, w, 100.0, 0.0).bzz_regular(0.7);
        assert_eq!(a, b);
        // the no-metal limit: eps -> 1 kills the zz kernel; for dbxx the
        // physical limit also sends D0 = 2 pi sigma D_s/c^2 -> 0 with sigma
        let m1 = dm(Model::ChargeLayer, 1e6, 1e-12, 0.0);
        assert!(m1.bzz_regular(2.0).norm() < 1e-6);
        assert!(m1.dbxx_regular(2.0).unwrap().norm() < 1e-6);
    }

    #[test]
    fn physical_wrappers_roundtrip() {
        let medium = MediumSpec::new(3e17, 50.0, 80.0, Model::ChargeLayer).unwrap();
        let omega = 2e7;
        let t = wave_triple(3.0, omega, &medium).unwrap();
        assert!(t.v0.re >= 0.0 && t.v0.im <= 0.0);
        assert!(t.v.re > 0.0);
        assert!(t.v1.unwrap().re > 0.0);
        let r = reflect_tm_z(3.0, omega, &medium).unwrap();
        assert!(r.r.is_finite());
        let b = tm_x_kernel(3.0, omega, &medium).unwrap();
        assert!(b.is_finite());
        let (bzz, dbxx) = magnetic_kernels(3.0, omega, &medium).unwrap();
        assert!(bzz.is_finite() && dbxx.is_finite());
    }
}
