//! Fixed points, multiplier and scaling matrix of a hyperbolic element.

use serde::Serialize;

use super::AnalyticError;
use crate::group::{Classification, Element};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeodesicData {
    /// Attracting fixed point.
    pub w: f64,
    /// Repelling fixed point, `w_prime < w`.
    pub w_prime: f64,
    /// Multiplier `xi = c w + d > 1`.
    pub xi: f64,
    /// `M = (w w'; 1 1) / sqrt(w - w')` with `M^-1 gamma M = diag(xi, 1/xi)`.
    pub m: [[f64; 2]; 2],
    /// `2 log xi`.
    pub length: f64,
}

/// Checks exactly that `el` is hyperbolic with `tr > 2` and `c > 0`.
pub fn check_positive_hyperbolic(el: &Element) -> Result<(), AnalyticError> {
    let class = el.classify();
    if class != Classification::Hyperbolic {
        return Err(AnalyticError::Domain(format!("element is {class}, not hyperbolic")));
    }
    if el.trace_sign() <= 0 {
        return Err(AnalyticError::Domain("trace is not > 2".into()));
    }
    if el.matrix().c().signum() <= 0 {
        return Err(AnalyticError::Domain("lower-left entry c is not > 0".into()));
    }
    Ok(())
}

pub fn geodesic_data(el: &Element) -> Result<GeodesicData, AnalyticError> {
    check_positive_hyperbolic(el)?;
    let [[a, _], [c, d]] = el.matrix().to_f64();
    let t = a + d;
    let root = ((t - 2.0) * (t + 2.0)).sqrt();
    // xi from the larger root of x^2 - t x + 1, the other as 1/xi
    let xi = 0.5 * (t + root);
    let w = (xi - d) / c;
    let w_prime = (1.0 / xi - d) / c;
    let s = (w - w_prime).sqrt();
    Ok(GeodesicData {
        w,
        w_prime,
        xi,
        m: [[w / s, w_prime / s], [1.0 / s, 1.0 / s]],
        length: 2.0 * xi.ln(),
    })
}

impl GeodesicData {
    /// Max-norm of `M^-1 gamma M - diag(xi, 1/xi)`, evaluated with
    /// compensated dot products so that only the error in `M` shows.
    pub fn diagonalization_residual(&self, gamma: [[f64; 2]; 2]) -> f64 {
        let [[m00, m01], [m10, m11]] = self.m;
        let det = dot2(&[(m00, m11), (-m01, m10)]);
        let inv = [[m11 / det, -m01 / det], [-m10 / det, m00 / det]];
        let target = [[self.xi, 0.0], [0.0, 1.0 / self.xi]];
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                // sum_{k,l} inv[i][k] gamma[k][l] m[l][j]
                let mut terms = Vec::with_capacity(8);
                for k in 0..2 {
                    for l in 0..2 {
                        let (hi, lo) = two_prod(inv[i][k], gamma[k][l]);
                        terms.push((hi, self.m[l][j]));
                        terms.push((lo, self.m[l][j]));
                    }
                }
                terms.push((-target[i][j], 1.0));
                worst = worst.max(dot2(&terms).abs());
            }
        }
        worst
    }
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

/// Dot product in twice the working precision.
fn dot2(pairs: &[(f64, f64)]) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for &(x, y) in pairs {
        let (p, e) = two_prod(x, y);
        let (t, f) = two_sum(s, p);
        s = t;
        c += e + f;
    }
    s + c
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
    fn golden_example() {
        let el = sl2z([[2, 1], [1, 1]]);
        let g = geodesic_data(&el).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((g.w - phi).abs() < 1e-14);
        assert!((g.xi - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!(g.w > g.w_prime);
        assert!(g.diagonalization_residual(el.matrix().to_f64()) < 1e-12);
        let g2 = geodesic_data(&el.pow(2)).unwrap();
        assert!((g2.length - 2.0 * g.length).abs() < 1e-12 * g2.length);
    }

    #[test]
    fn preconditions() {
        assert!(geodesic_data(&sl2z([[1, 1], [0, 1]])).is_err());
        assert!(geodesic_data(&sl2z([[-2, -1], [-1, -1]])).is_err());
        assert!(geodesic_data(&sl2z([[1, -1], [-1, 2]])).is_err());
    }

    #[test]
    fn large_traces() {
        for n in [10i64, 1000, 100_000, 499_999] {
            let el = sl2z([[n, n * n - 1], [1, n]]);
            let g = geodesic_data(&el).unwrap();
            assert!(g.diagonalization_residual(el.matrix().to_f64()) < 1e-10, "trace {}", 2 * n);
        }
    }

    #[test]
    fn general_pair() {
        let g = GroupParams::new(3, 4).unwrap();
        let el = Element::u(&g).mul(&Element::s_power(&g, -1));
        let geo = geodesic_data(&el).unwrap();
        assert!(geo.diagonalization_residual(el.matrix().to_f64()) < 1e-12);
        let ell = geodesic_data(&el.pow(3)).unwrap().length;
        assert!((ell - 3.0 * geo.length).abs() < 1e-12 * ell);
    }
}
