//! Cycle integrals of `E_2^*` and winding numbers of `Delta` along closed
//! geodesics of SL(2, Z).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::geodesic::{geodesic_data, GeodesicData};
use super::modular::{e2, log_delta_mod};
use super::quadrature::integrate;
use super::AnalyticError;
use crate::group::{is_primitive, Element};
use crate::symbols;

fn check_23(el: &Element) -> Result<GeodesicData, AnalyticError> {
    let params = el.params();
    if (params.p(), params.q()) != (2, 3) {
        return Err(AnalyticError::Domain(format!(
            "the (2, 3) series are not available for ({}, {})",
            params.p(),
            params.q()
        )));
    }
    geodesic_data(el)
}

fn check_23_primitive(el: &Element) -> Result<GeodesicData, AnalyticError> {
    let geo = check_23(el)?;
    if !is_primitive(el)? {
        return Err(AnalyticError::Domain("element is not primitive".into()));
    }
    Ok(geo)
}

/// `z(y) = M(iy)`.
fn point_on_geodesic(geo: &GeodesicData, y: f64) -> Complex64 {
    let iy = Complex64::new(0.0, y);
    (iy * geo.w + geo.w_prime) / (iy + 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CycleIntegral {
    /// Real part of the integral of `E_2^*` over one period.
    pub value: f64,
    /// Imaginary part, zero in exact arithmetic.
    pub imaginary_residual: f64,
    /// `|value - psi|` against the exact symbol.
    pub deviation: f64,
    pub psi: i64,
    pub quadrature_error: f64,
    pub intervals: usize,
}

/// Integral of `E_2 - 3/(pi Im z)` along `M(iy)`, `1 <= y <= xi^2`.
///
/// Only the holomorphic part is integrated numerically, in the variable
/// `t = log(y)/2`. The part from `1/Im z` is `-2i log j(gamma, M i)`.
pub fn cycle_integral_23(el: &Element, tol: f64) -> Result<CycleIntegral, AnalyticError> {
    let geo = check_23_primitive(el)?;
    let dw = geo.w - geo.w_prime;
    let point_tol = (tol * 1e-3).max(1e-15);
    let integrand = |t: f64| {
        let y = (2.0 * t).exp();
        let iy1 = Complex64::new(1.0, y);
        let dz_dy = Complex64::new(0.0, dw) / (iy1 * iy1);
        e2(point_on_geodesic(&geo, y), point_tol) * dz_dy * (2.0 * y)
    };
    let quad = integrate(integrand, 0.0, geo.xi.ln(), tol / 10.0, 20_000)
        .ok_or_else(|| AnalyticError::Numeric("cycle-integral quadrature did not converge within 20000 panels".into()))?;
    let [[_, _], [c, d]] = el.matrix().to_f64();
    let j = point_on_geodesic(&geo, 1.0) * c + d;
    let total = quad.value + Complex64::new(0.0, 6.0 / PI) * j.ln();
    let psi = symbols::psi(el);
    Ok(CycleIntegral {
        value: total.re,
        imaginary_residual: total.im.abs(),
        deviation: (total.re - psi as f64).abs(),
        psi,
        quadrature_error: quad.error_estimate,
        intervals: quad.intervals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Winding {
    /// Rounded winding index.
    pub index: i64,
    /// Total phase change over `2 pi`, before rounding.
    pub raw: f64,
    /// `|raw - index|`.
    pub residual: f64,
    pub samples_used: usize,
}

/// Largest phase step accepted between consecutive samples. True steps up
/// to `pi` would be recovered correctly; half of that leaves room for the
/// phase to vary between samples.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

/// Largest accepted gap between a principal phase step and the trapezoid
/// estimate from the phase rate at its ends.
const MAX_RATE_MISMATCH: f64 = PI / 4.0;

/// Refinement budget, in multiples of the initial sample count.
const REFINEMENT_FACTOR: usize = 256;

/// Winding of `j(g, i)^-12 Delta(g i)` around 0 along
/// `g(t) = M diag(e^t, e^-t)`, `0 <= t <= log xi`.
///
/// `samples` sets the initial uniform grid. An interval is bisected until
/// its principal phase step and the rate-based estimate
/// `dt (phi'(t0) + phi'(t1)) / 2` are both at most `MAX_PHASE_STEP` and
/// agree to `pi/4`; the rate comes from `d log Delta = 2 pi i E_2 dz`. This
/// catches whole turns that a bare principal-step check would miss near the
/// cusps. Exceeding `REFINEMENT_FACTOR * samples` evaluations is reported
/// as undersampling.
pub fn winding_number_23(el: &Element, samples: usize) -> Result<Winding, AnalyticError> {
    check_23_primitive(el)?;
    geodesic_winding_23(el, samples)
}

/// Same winding without the primitivity requirement; for `gamma^n` the
/// path covers the closed geodesic `n` times.
pub fn geodesic_winding_23(el: &Element, samples: usize) -> Result<Winding, AnalyticError> {
    let geo = check_23(el)?;
    if samples < 2 {
        return Err(AnalyticError::Domain("winding number needs at least 2 samples".into()));
    }
    let dw = geo.w - geo.w_prime;
    let inv_sqrt = 1.0 / dw.sqrt();
    // (phase, d phase / dt)
    let sample = |t: f64| {
        let y = (2.0 * t).exp();
        let z = point_on_geodesic(&geo, y);
        // j(g, i) = (i e^t + e^-t) / sqrt(w - w')
        let (et, emt) = (t.exp(), (-t).exp());
        let j = Complex64::new(emt, et) * inv_sqrt;
        let phase = (log_delta_mod(z, 1e-14) - 12.0 * j.ln()).im;
        let iy1 = Complex64::new(1.0, y);
        let dz_dt = Complex64::new(0.0, dw) / (iy1 * iy1) * (2.0 * y);
        let dlogj = Complex64::new(-emt, et) / Complex64::new(emt, et);
        let rate = (Complex64::new(0.0, 2.0 * PI) * e2(z, 1e-12) * dz_dt - 12.0 * dlogj).im;
        (phase, rate)
    };
    let principal = |x: f64| x - 2.0 * PI * ((x + PI) / (2.0 * PI)).floor();
    let end = geo.xi.ln();
    let budget = REFINEMENT_FACTOR * samples;
    let mut used = samples + 1;
    let mut total = 0.0;
    let mut prev_t = 0.0;
    let mut prev = sample(0.0);
    for k in 1..=samples {
        let t1 = end * k as f64 / samples as f64;
        // refine [prev_t, t1] with an explicit stack
        let mut stack = vec![(t1, sample(t1))];
        while let Some(&(t, v)) = stack.last() {
            let step = principal(v.0 - prev.0);
            let predicted = 0.5 * (t - prev_t) * (v.1 + prev.1);
            if step.abs() <= MAX_PHASE_STEP
                && predicted.abs() <= MAX_PHASE_STEP
                && (step - predicted).abs() <= MAX_RATE_MISMATCH
            {
                total += step;
                prev_t = t;
                prev = v;
                stack.pop();
                continue;
            }
            if used >= budget {
                return Err(AnalyticError::Numeric(format!(
                    "winding undersampled: phase step {step:.3} (rate estimate {predicted:.3}) still too large after {used} samples"
                )));
            }
            let mid = 0.5 * (prev_t + t);
            stack.push((mid, sample(mid)));
            used += 1;
        }
    }
    let raw = total / (2.0 * PI);
    let index = raw.round() as i64;
    Ok(Winding {
        index,
        raw,
        residual: (raw - index as f64).abs(),
        samples_used: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupParams, Matrix2};

    fn sl2z(m: [[i64; 2]; 2]) -> Element {
        let g = GroupParams::new(2, 3).unwrap();
        Element::from_matrix(&g, &Matrix2::from_integers(g.field(), m).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let a = cycle_integral_23(&sl2z([[2, 1], [1, 1]]), 1e-8).unwrap();
        assert!(a.value.abs() < 1e-6 && a.imaginary_residual < 1e-6, "{a:?}");
        let b = cycle_integral_23(&sl2z([[3, 2], [1, 1]]), 1e-8).unwrap();
        assert!((b.value - 1.0).abs() < 1e-6, "{b:?}");
        assert!(cycle_integral_23(&sl2z([[1, 1], [0, 1]]), 1e-8).is_err());
        let g = GroupParams::new(2, 5).unwrap();
        let h = Element::u_power(&g, 2).mul(&Element::s(&g)).neg();
        assert!(matches!(cycle_integral_23(&h, 1e-8), Err(AnalyticError::Domain(_))));
    }

    #[test]
    fn winding_examples() {
        let a = winding_number_23(&sl2z([[2, 1], [1, 1]]), 64).unwrap();
        assert_eq!(a.index, 0);
        let b = winding_number_23(&sl2z([[3, 2], [1, 1]]), 64).unwrap();
        assert_eq!(b.index, 1);
        assert!(b.residual < 1e-6);
        let el = sl2z([[5, 2], [2, 1]]);
        let w = winding_number_23(&el, 64).unwrap();
        assert_eq!(w.index, symbols::psi(&el));
    }

    #[test]
    fn winding_of_a_square() {
        let el = sl2z([[3, 2], [1, 1]]);
        let sq = el.pow(2);
        assert!(matches!(winding_number_23(&sq, 64), Err(AnalyticError::Domain(_))));
        let w = geodesic_winding_23(&sq, 64).unwrap();
        assert_eq!(w.index, 2 * symbols::psi(&el));
    }
}
