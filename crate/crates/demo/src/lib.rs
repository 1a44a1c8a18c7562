//! Browser bindings for interactive exploration of the surface-noise curves.
//!
//! Three operations are exposed to JavaScript:
//! * [`reflection_curve`] — Im ε·Im r_p vs kδ (the reflection-spectrum plot),
//! * [`noise_curve`] — scaled Im α vs z0/δ with the pointwise log-slope,
//! * [`regime_info`] — regime classification and asymptotic values at a point.
//!
//! Curves come back as flat interleaved arrays to keep the JS side trivial.
//! The compute paths live in plain functions returning `Result<_, String>`
//! so they stay testable on native targets; the `#[wasm_bindgen]` wrappers
//! only translate errors to `JsValue`.

use wasm_bindgen::prelude::*;

use surfnoise::asymptotics::{asymptotic_alpha, classify_regime, RegimeLabel};
use surfnoise::fit::local_slopes;
use surfnoise::kernels::DimensionlessMedium;
use surfnoise::quadrature::QuadSpec;
use surfnoise::response::{scaled_im, Channel};
use surfnoise::scales::{derive_scales, from_dimensionless, DimensionlessSpec, Model};

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn medium_for(model: Model, w: f64, d0: f64) -> DimensionlessMedium {
    match model {
        Model::Local => DimensionlessMedium::new(model, w, 0.0, 0.0),
        Model::ChargeLayer => DimensionlessMedium::new(model, w, d0, 0.0),
        Model::ContinuousCharge => DimensionlessMedium::new(model, w, 0.0, d0.max(1e-12)),
    }
}

fn reflection_curve_impl(
    model: &str,
    w: f64,
    d0: f64,
    kd_min: f64,
    kd_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let model: Model = model.parse()?;
    if !(w > 0.0 && kd_min > 0.0 && kd_max > kd_min) {
        return Err("need 0 < kd_min < kd_max and w > 0".into());
    }
    let med = medium_for(model, w, d0);
    let mut out = Vec::with_capacity(2 * points);
    for kd in log_grid(kd_min, kd_max, points) {
        let r = med.reflect_tm_z(kd).map_err(|e| e.to_string())?;
        out.push(kd);
        out.push(med.eps.im * r.im);
    }
    Ok(out)
}

fn noise_curve_impl(
    model: &str,
    channel: &str,
    w: f64,
    d0: f64,
    zeta_min: f64,
    zeta_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let model: Model = model.parse()?;
    let channel: Channel = channel.parse()?;
    if !(w > 0.0 && zeta_min > 0.0 && zeta_max > zeta_min) {
        return Err("need 0 < zeta_min < zeta_max and w > 0".into());
    }
    let med = medium_for(model, w, d0);
    // interactive tolerance: plenty for pixels, noticeably faster
    let spec = QuadSpec {
        rel_tol: 1e-7,
        ..QuadSpec::default()
    };
    let zetas = log_grid(zeta_min, zeta_max, points);
    let mut values = Vec::with_capacity(zetas.len());
    for &z in &zetas {
        let (v, _) = scaled_im(channel, &med, z, &spec).map_err(|e| e.to_string())?;
        values.push(v);
    }
    let slopes = local_slopes(&zetas, &values);
    let mut out = Vec::with_capacity(3 * zetas.len());
    for i in 0..zetas.len() {
        out.push(zetas[i]);
        out.push(values[i]);
        out.push(slopes[i]);
    }
    Ok(out)
}

fn regime_info_impl(w: f64, d0: f64, zeta: f64) -> Result<String, String> {
    let spec = DimensionlessSpec::new(w, d0, 0.0, zeta, Model::ChargeLayer)
        .map_err(|e| e.to_string())?;
    let (medium, probe) = from_dimensionless(&spec).map_err(|e| e.to_string())?;
    let scales = derive_scales(&medium, &probe).map_err(|e| e.to_string())?;
    let regime = classify_regime(&scales, probe.z0);
    let label = match regime.label {
        RegimeLabel::SubSkin => "sub_skin",
        RegimeLabel::SkinToWavelength => "skin_to_wavelength",
        RegimeLabel::Crossover => "crossover",
    };
    let asym = asymptotic_alpha(Channel::AlphaZz, Model::ChargeLayer, &scales, probe.z0)
        .map(|a| a.scaled)
        .ok();
    let med = DimensionlessMedium::new(Model::ChargeLayer, w, d0, 0.0);
    let (numeric, _) = scaled_im(
        Channel::AlphaZz,
        &med,
        zeta,
        &QuadSpec {
            rel_tol: 1e-7,
            ..QuadSpec::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let asym_json = match asym {
        Some(v) => format!("{v:e}"),
        None => "null".to_string(),
    };
    Ok(format!(
        concat!(
            "{{\"label\":\"{}\",\"z0_over_delta\":{:e},\"z0_over_lambda\":{:e},",
            "\"z0_over_diffusion_length\":{:e},\"in_z4_window\":{},",
            "\"asymptotic_scaled_alpha_zz\":{},\"numeric_scaled_alpha_zz\":{:e}}}"
        ),
        label,
        regime.z0_over_delta,
        regime.z0_over_lambda,
        regime.z0_over_diffusion_length,
        regime.in_z4_window,
        asym_json,
        numeric
    ))
}

/// Im ε · Im r_p against kδ; returns interleaved [kd, value, kd, value, ...].
/// `d0` feeds the surface diffusion for the charge layer and the bulk
/// diffusion for the continuous-charge model.
#[wasm_bindgen]
pub fn reflection_curve(
    model: &str,
    omega_delta_over_c: f64,
    d0: f64,
    kd_min: f64,
    kd_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    reflection_curve_impl(model, omega_delta_over_c, d0, kd_min, kd_max, points)
        .map_err(|e| JsValue::from_str(&e))
}

/// Scaled Im α vs z0/δ; returns interleaved [zeta, value, slope, ...].
#[wasm_bindgen]
pub fn noise_curve(
    model: &str,
    channel: &str,
    omega_delta_over_c: f64,
    d0: f64,
    zeta_min: f64,
    zeta_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    noise_curve_impl(
        model,
        channel,
        omega_delta_over_c,
        d0,
        zeta_min,
        zeta_max,
        points,
    )
    .map_err(|e| JsValue::from_str(&e))
}

/// Regime classification at one (w, D0, zeta) point, as a JSON string:
/// label, scale ratios, the z0⁻⁴ window flag, the asymptotic scaled value
/// where one exists, and the numeric scaled value.
#[wasm_bindgen]
pub fn regime_info(omega_delta_over_c: f64, d0: f64, zeta: f64) -> Result<String, JsValue> {
    regime_info_impl(omega_delta_over_c, d0, zeta).map_err(|e| JsValue::from_str(&e))
}
