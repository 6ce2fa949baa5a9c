use num_complex::Complex64;
use rademacher::analytic::{
    enumerate_classes_23_by_trace, geodesic_data, log_delta_23, numeric_checks_23, positive_representative,
};
use rademacher::group::{Element, GroupParams};
use rademacher::symbols;

#[test]
fn cycle_integral_and_winding_on_trace_bounded_classes() {
    let table = enumerate_classes_23_by_trace(100).unwrap();
    assert!(table.entries.len() > 100);
    let rows = numeric_checks_23(&table, 101.0, 1e-7, 32).unwrap();
    assert_eq!(rows.len(), table.entries.len());
    for row in &rows {
        assert!(row.passes(1e-5, 1e-6), "{row:?}");
        assert!(row.imaginary_residual < 1e-5, "{row:?}");
    }
}

#[test]
fn length_is_additive_under_powers() {
    let g = GroupParams::new(2, 3).unwrap();
    let table = enumerate_classes_23_by_trace(12).unwrap();
    for e in &table.entries {
        for n in 2..5 {
            let power = e.element.pow(n);
            let ell = geodesic_data(&power).unwrap().length;
            assert!((ell - n as f64 * e.length).abs() <= 1e-12 * ell, "{} ^ {n}", e.word);
        }
    }
    let _ = g;
}

#[test]
fn representatives_for_other_pairs() {
    for (p, q) in [(2, 5), (3, 4), (4, 5)] {
        let g = GroupParams::new(p, q).unwrap();
        let gamma = symbols::psi_one_element(&g).0;
        for h in [gamma.clone(), gamma.inverse(), gamma.pow(2).neg(), gamma.conjugate_by(&Element::u(&g))] {
            let rep = positive_representative(&h).unwrap();
            assert_eq!(symbols::psi(&rep), symbols::rademacher_psi(&h));
            let geo = geodesic_data(&rep).unwrap();
            assert!(geo.diagonalization_residual(rep.matrix().to_f64()) < 1e-10);
        }
    }
}

#[test]
fn log_delta_truncation_bound() {
    // the tail after N terms is below exp(-2 pi N y) up to a polynomial factor
    let z = Complex64::new(0.1, 0.8);
    let reference = log_delta_23(z, 200);
    for n in [5, 10, 20] {
        let err = (log_delta_23(z, n) - reference).norm();
        let q = (-2.0 * std::f64::consts::PI * z.im).exp();
        // sigma_{-1}(m) <= 1 + ln m, and the rest is geometric
        let bound = 24.0 * (1.0 + ((n + 1) as f64).ln()) * q.powi(n as i32 + 1) / (1.0 - q);
        assert!(err <= bound, "N = {n}: {err} > {bound}");
    }
}
