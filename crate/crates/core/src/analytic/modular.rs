//! q-expansions of `log Delta` and `E_2` for SL(2, Z), with reduction to
//! the standard fundamental domain for points close to the real axis.

use std::f64::consts::PI;

use num_complex::Complex64;

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Smallest `N` with `exp(-2 pi N y_min) < tol / 100`.
pub fn truncation_for(y_min: f64, tol: f64) -> usize {
    let n = (100.0 / tol).ln() / (2.0 * PI * y_min);
    (n.ceil().max(1.0) as usize) + 1
}

/// `sigma_k(n)` for `n` in `0..=n_max` with `k = 1` or `k = -1`, the latter
/// as `sum_{d | n} 1/d`.
fn divisor_sums(n_max: usize, k: i32) -> Vec<f64> {
    let mut s = vec![0.0; n_max + 1];
    for d in 1..=n_max {
        let term = if k == 1 { d as f64 } else { 1.0 / d as f64 };
        for m in (d..=n_max).step_by(d) {
            s[m] += term;
        }
    }
    s
}

fn q_series(z: Complex64, coeffs: &[f64]) -> Complex64 {
    let q = (TWO_PI_I * z).exp();
    // Horner in q, constant term excluded
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        acc = (acc + c) * q;
    }
    acc
}

/// `2 pi i z - 24 sum_{n <= N} sigma_{-1}(n) q^n`. The tail is
/// `O(exp(-2 pi N Im z))`.
pub fn log_delta_23(z: Complex64, n: usize) -> Complex64 {
    TWO_PI_I * z - 24.0 * q_series(z, &divisor_sums(n.max(1), -1))
}

/// `1 - 24 sum_{n <= N} sigma_1(n) q^n`.
pub fn e2_series(z: Complex64, n: usize) -> Complex64 {
    Complex64::new(1.0, 0.0) - 24.0 * q_series(z, &divisor_sums(n.max(1), 1))
}

/// `Delta(z) = q prod (1 - q^n)^24`, truncated at `N` factors.
pub fn delta_product(z: Complex64, n: usize) -> Complex64 {
    let q = (TWO_PI_I * z).exp();
    let mut acc = q;
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        qn *= q;
        acc *= (Complex64::new(1.0, 0.0) - qn).powi(24);
    }
    acc
}

/// `z = h z0` with `z0` in the closed standard fundamental domain and `h`
/// an integer matrix of determinant one.
#[derive(Clone, Copy, Debug)]
pub struct Reduced {
    pub z0: Complex64,
    pub h: [[f64; 2]; 2],
}

impl Reduced {
    /// `c z0 + d` for the bottom row of `h`.
    pub fn automorphy(&self) -> Complex64 {
        self.z0 * self.h[1][0] + self.h[1][1]
    }
}

/// Reduction by `z -> z - n` and `z -> -1/z`. The matrix entries are exact
/// integers held in `f64` while below `2^53`.
pub fn reduce(z: Complex64) -> Reduced {
    // g with z0 = g z; h = g^-1 is tracked directly
    let mut z0 = z;
    let mut h = [[1.0, 0.0], [0.0, 1.0]];
    for _ in 0..10_000 {
        let n = z0.re.round();
        if n != 0.0 {
            z0.re -= n;
            // h <- h T^n
            h[0][1] += n * h[0][0];
            h[1][1] += n * h[1][0];
        }
        if z0.norm_sqr() < 1.0 - 1e-15 {
            z0 = -z0.inv();
            // h <- h S^-1 with S^-1 = (0 1; -1 0)
            h = [[-h[0][1], h[0][0]], [-h[1][1], h[1][0]]];
        } else {
            break;
        }
    }
    Reduced { z0, h }
}

/// `E_2(z)` through the reduction and the quasi-modular law
/// `E_2(h z0) = (c z0 + d)^2 E_2(z0) - (6i/pi) c (c z0 + d)`.
pub fn e2(z: Complex64, tol: f64) -> Complex64 {
    let red = reduce(z);
    let n = truncation_for(red.z0.im.min(0.86), tol);
    let j = red.automorphy();
    j * j * e2_series(red.z0, n) - Complex64::new(0.0, 6.0 / PI) * red.h[1][0] * j
}

/// `log Delta(z)` modulo `2 pi i`, from `Delta(h z0) = (c z0 + d)^12 Delta(z0)`.
pub fn log_delta_mod(z: Complex64, tol: f64) -> Complex64 {
    let red = reduce(z);
    let n = truncation_for(red.z0.im.min(0.86), tol);
    log_delta_23(red.z0, n) + 12.0 * red.automorphy().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn periodicity() {
        let z = Complex64::new(0.3, 0.7);
        let shift = log_delta_23(z + 1.0, 60) - log_delta_23(z, 60);
        assert!(close(shift, TWO_PI_I, 1e-12));
    }

    #[test]
    fn product_oracle() {
        let z = Complex64::new(0.0, 1.0);
        let a = log_delta_23(z, 50).exp();
        let b = delta_product(z, 50);
        assert!(((a - b) / b).norm() < 1e-10);
        let z = Complex64::new(0.21, 0.4);
        let a = log_delta_23(z, 200).exp();
        let b = delta_product(z, 200);
        assert!(((a - b) / b).norm() < 1e-10);
    }

    #[test]
    fn modularity_gap_at_2i() {
        let z = Complex64::new(0.0, 2.0);
        let w = -z.inv();
        let gap = log_delta_23(w, 200) - log_delta_23(z, 200) - 12.0 * ((z / Complex64::i()).ln() + Complex64::i().ln());
        assert!(close(gap, TWO_PI_I * -3.0, 1e-9), "{gap}");
    }

    #[test]
    fn e2_quasi_modular() {
        let tol = 1e-13;
        for z in [Complex64::new(0.1, 1.2), Complex64::new(-0.4, 0.95), Complex64::new(0.37, 0.02)] {
            let lhs = e2(-z.inv(), tol);
            let rhs = z * z * e2(z, tol) - Complex64::new(0.0, 6.0 / PI) * z;
            assert!(((lhs - rhs) / rhs).norm() < 1e-9, "{z}: {lhs} vs {rhs}");
        }
        // direct series where it converges fast
        let z = Complex64::new(0.2, 1.5);
        assert!(close(e2(z, 1e-14), e2_series(z, 40), 1e-12));
    }

    #[test]
    fn e2_is_log_derivative() {
        let z = Complex64::new(0.13, 0.05);
        let h = 1e-6;
        let dz = Complex64::new(h, 0.0);
        let deriv = (log_delta_mod(z + dz, 1e-14) - log_delta_mod(z - dz, 1e-14)) / (2.0 * h);
        let expected = TWO_PI_I * e2(z, 1e-14);
        assert!(((deriv - expected) / expected).norm() < 1e-5, "{deriv} vs {expected}");
    }

    #[test]
    fn reduction_lands_in_domain() {
        for z in [Complex64::new(3.7, 0.001), Complex64::new(-0.49, 0.3), Complex64::new(0.0, 5.0)] {
            let red = reduce(z);
            assert!(red.z0.re.abs() <= 0.5 + 1e-12 && red.z0.norm() >= 1.0 - 1e-12);
            let [[a, b], [c, d]] = red.h;
            assert_eq!(a * d - b * c, 1.0);
            let back = (red.z0 * a + b) / (red.z0 * c + d);
            assert!(close(back, z, 1e-9));
        }
    }
}
