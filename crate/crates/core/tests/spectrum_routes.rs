use std::f64::consts::PI;

use qtree_core::spectrum::{direct_spectrum_with, EdgeOrientation, ScanOptions};
use qtree_core::{
    closed_form_spectrum, direct_spectrum, enumerate_trees, BoundaryConfig, SpectrumSample, Tree,
};

const X_MAX: f64 = 6.0 * PI;

fn assert_agree(closed: &SpectrumSample, direct: &SpectrumSample, tol: f64) {
    let c: Vec<(f64, usize)> = closed
        .eigenvalues
        .iter()
        .map(|e| (e.x, e.multiplicity))
        .collect();
    let d: Vec<(f64, usize)> = direct
        .eigenvalues
        .iter()
        .map(|e| (e.x, e.multiplicity))
        .collect();
    assert_eq!(c.len(), d.len(), "closed {c:?}\ndirect {d:?}");
    for (a, b) in c.iter().zip(&d) {
        assert_eq!(
            a.1, b.1,
            "multiplicity at x = {}: closed {c:?}\ndirect {d:?}",
            a.0
        );
        assert!((a.0 - b.0).abs() < tol, "location {} vs {}", a.0, b.0);
    }
    assert_eq!(closed.zero_multiplicity, direct.zero_multiplicity);
}

#[test]
fn closed_and_direct_agree_for_small_trees() {
    let mut checked = 0;
    for p in 2..=6 {
        for (t, _) in enumerate_trees(p).iter() {
            let b = BoundaryConfig::all_dirichlet(t);
            let closed = closed_form_spectrum(t, &b, 1.0, X_MAX).unwrap();
            let direct = direct_spectrum(t, &b, 1.0, X_MAX).unwrap();
            assert_agree(&closed, &direct, 1e-7);
            checked += 1;
        }
    }
    assert_eq!(checked, 13);
}

#[test]
fn closed_and_direct_agree_with_mixed_boundaries() {
    let cases: Vec<(Tree, Vec<usize>)> = vec![
        (Tree::star(3), vec![1]),
        (Tree::star(3), vec![1, 2]),
        (Tree::path(4), vec![0]),
        (Tree::path(3), vec![]),
        (Tree::spider(&[1, 2, 2]), vec![3, 5]),
        (Tree::double_star(2, 2), vec![2]),
    ];
    for (t, dirichlet) in cases {
        let b = BoundaryConfig::new(&t, dirichlet).unwrap();
        let closed = closed_form_spectrum(&t, &b, 1.0, X_MAX).unwrap();
        let direct = direct_spectrum(&t, &b, 1.0, X_MAX).unwrap();
        assert_agree(&closed, &direct, 1e-7);
    }
}

#[test]
fn all_neumann_path_has_zero_eigenvalue_and_double_lattice_roots() {
    let t = Tree::path(4);
    let b = BoundaryConfig::all_neumann();
    let closed = closed_form_spectrum(&t, &b, 1.0, X_MAX).unwrap();
    assert_eq!(closed.zero_multiplicity, 1);
    let direct = direct_spectrum(&t, &b, 1.0, X_MAX).unwrap();
    assert_agree(&closed, &direct, 1e-7);
}

#[test]
fn orientation_does_not_change_the_spectrum() {
    let t = Tree::spider(&[1, 1, 2]);
    let b = BoundaryConfig::all_dirichlet(&t);
    let base = direct_spectrum(&t, &b, 1.0, X_MAX).unwrap();
    for mask in [0b0001usize, 0b0110, 0b1111] {
        let orient = EdgeOrientation::with_flips(&t, |e| mask >> e & 1 == 1);
        let flipped =
            direct_spectrum_with(&t, &b, &orient, 1.0, X_MAX, ScanOptions::default()).unwrap();
        assert_agree(&base, &flipped, 1e-9);
    }
}

#[test]
fn eigenvalues_scale_with_inverse_square_length() {
    for t in [Tree::path(5), Tree::star(4), Tree::spider(&[2, 2, 1])] {
        let b = BoundaryConfig::all_dirichlet(&t);
        let unit = closed_form_spectrum(&t, &b, 1.0, X_MAX).unwrap();
        for l in [0.5, 2.0, 3.7] {
            let scaled = closed_form_spectrum(&t, &b, l, X_MAX).unwrap();
            for (a, s) in unit.lambdas().iter().zip(scaled.lambdas()) {
                assert!((s - a / (l * l)).abs() <= 1e-10 * s);
            }
        }
    }
}

#[test]
fn p3_and_p4_analytic_values() {
    let p3 = Tree::path(3);
    let s = closed_form_spectrum(&p3, &BoundaryConfig::all_dirichlet(&p3), 1.0, 5.0 * PI).unwrap();
    let lambdas = s.lambdas();
    for k in 1..=10 {
        let exact = (k as f64 * PI / 2.0).powi(2);
        assert!((lambdas[k - 1] - exact).abs() < 1e-9 * exact);
    }
    let p4 = Tree::path(4);
    let d = direct_spectrum(&p4, &BoundaryConfig::all_dirichlet(&p4), 1.0, PI).unwrap();
    assert!((d.eigenvalues[0].x - PI / 3.0).abs() < 1e-9);
}
