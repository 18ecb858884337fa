//! Browser bindings: basin images, bifurcation samples and single-orbit
//! classification for `f(z) = sin z / (z² + λ)`.
//!
//! The plain functions are target independent; the `#[wasm_bindgen]`
//! exports wrap them and turn errors into JS exceptions.

use merosin::orbitlab::{bifurcation_scan, Axis, Classifier, ScanRequest};
use merosin::paramlab::{constants, regime};
use merosin::render::{render_grid, Palette, RenderOptions, Window};
use merosin::{Complex64, ParamPoint, Result};
use wasm_bindgen::prelude::*;

/// RGBA pixels, top row first, for the basin plot of `λ` over the window.
#[allow(clippy::too_many_arguments)]
pub fn basin_rgba(
    lambda: f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    width: usize,
    height: usize,
    max_iter: usize,
) -> Result<Vec<u8>> {
    let p = ParamPoint::new(lambda)?;
    let w = Window::new(x0, x1, y0, y1, width, height)?;
    let opts = RenderOptions { threads: None, max_iter: (max_iter > 0).then_some(max_iter) };
    let g = render_grid(&p, &w, &opts)?;
    let palette = Palette::default();
    let mut out = Vec::with_capacity(4 * g.labels.len());
    for &l in &g.labels {
        out.extend_from_slice(&palette.color(l));
        out.push(255);
    }
    Ok(out)
}

/// Bifurcation samples flattened as `[λ₀, v₀, λ₁, v₁, …]`.
pub fn bifurcation_pairs(imag: bool, lo: f64, hi: f64, steps: usize, transient: usize, keep: usize) -> Result<Vec<f64>> {
    let req = ScanRequest {
        axis: if imag { Axis::Imag } else { Axis::Real },
        lambda_lo: lo,
        lambda_hi: hi,
        n_lambda: steps,
        n_transient: transient,
        n_keep: keep,
    };
    Ok(bifurcation_scan(&req)?.samples().flat_map(|(l, v)| [l, v]).collect())
}

/// One-line JSON fate of the seed `re + i·im`.
pub fn classify_json(lambda: f64, re: f64, im: f64) -> Result<String> {
    let p = ParamPoint::new(lambda)?;
    let o = Classifier::new(&p)?.classify(Complex64::new(re, im));
    let r = regime(&p, constants()?)?;
    Ok(format!(
        "{{\"status\":\"{}\",\"iterations\":{},\"final\":[{},{}],\"regime\":\"{:?}\"}}",
        status_name(&o.status),
        o.iterations,
        o.final_value.re, o.final_value.im, r.regime_id
    ))
}

fn status_name(s: &merosin::orbitlab::OrbitStatus) -> &'static str {
    use merosin::orbitlab::{AttractorId, OrbitStatus};
    match s {
        OrbitStatus::ConvergedTo(AttractorId::Origin) => "origin",
        OrbitStatus::ConvergedTo(AttractorId::RealFixedPlus) => "+x_lambda",
        OrbitStatus::ConvergedTo(AttractorId::RealFixedMinus) => "-x_lambda",
        OrbitStatus::ConvergedTo(AttractorId::ImagTwoCycle) => "imaginary 2-cycle",
        OrbitStatus::Escaped => "escaped",
        OrbitStatus::PoleHit => "pole hit",
        OrbitStatus::Undecided => "undecided",
    }
}

/// The bifurcation ladder as JSON.
pub fn ladder_json() -> Result<String> {
    let c = constants()?;
    Ok(format!(
        "{{\"lambda_2star\":{},\"lambda_star\":{},\"lambda_hat\":{},\"lambda_1\":{},\"lambda_2\":{}}}",
        c.lambda_2star, c.lambda_star, c.lambda_hat, c.lambda_1, c.lambda_2
    ))
}

fn js(e: merosin::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn render_basins(
    lambda: f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    width: usize,
    height: usize,
    max_iter: usize,
) -> std::result::Result<Vec<u8>, JsError> {
    basin_rgba(lambda, x0, x1, y0, y1, width, height, max_iter).map_err(js)
}

#[wasm_bindgen]
pub fn bifurcation(
    imag: bool,
    lo: f64,
    hi: f64,
    steps: usize,
    transient: usize,
    keep: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    bifurcation_pairs(imag, lo, hi, steps, transient, keep).map_err(js)
}

#[wasm_bindgen]
pub fn classify_point(lambda: f64, re: f64, im: f64) -> std::result::Result<String, JsError> {
    classify_json(lambda, re, im).map_err(js)
}

#[wasm_bindgen]
pub fn constants_json() -> std::result::Result<String, JsError> {
    ladder_json().map_err(js)
}
