use num_bigint::BigInt;
use qtree_core::sturm::{all_roots_in_open_unit_interval, count_real_roots_with_multiplicity};
use qtree_core::{
    dirichlet_poly, dirichlet_poly_interpolated, enumerate_trees, normalize, BoundaryConfig,
    IntPoly, Tree,
};

fn trees(max_p: usize) -> impl Iterator<Item = Tree> {
    (3..=max_p).flat_map(|p| enumerate_trees(p).trees.into_iter().map(|(t, _)| t))
}

fn all_dirichlet(t: &Tree) -> IntPoly {
    dirichlet_poly(t, &BoundaryConfig::all_dirichlet(t)).unwrap()
}

#[test]
fn elimination_and_interpolation_agree() {
    for t in trees(9) {
        let b = BoundaryConfig::all_dirichlet(&t);
        assert_eq!(
            dirichlet_poly(&t, &b).unwrap(),
            dirichlet_poly_interpolated(&t, &b).unwrap()
        );
        let one = BoundaryConfig::new(&t, [t.pendant_vertices()[0]]).unwrap();
        assert_eq!(
            dirichlet_poly(&t, &one).unwrap(),
            dirichlet_poly_interpolated(&t, &one).unwrap()
        );
    }
}

#[test]
fn degree_and_leading_coefficient() {
    for t in trees(9) {
        let q = all_dirichlet(&t);
        assert_eq!(q.degree(), Some(t.vertex_count() - t.pendant_count()));
        let product: BigInt = t
            .degrees()
            .into_iter()
            .filter(|&d| d > 1)
            .map(BigInt::from)
            .product();
        assert_eq!(q.leading(), Some(&product));
    }
}

#[test]
fn roots_are_real_and_inside_the_unit_interval() {
    for t in trees(10) {
        let q = all_dirichlet(&t);
        assert_eq!(count_real_roots_with_multiplicity(&q), q.degree().unwrap());
        assert!(all_roots_in_open_unit_interval(&q), "{q}");
    }
}

#[test]
fn parity_follows_degree() {
    // the interior of a tree is bipartite, so P(−z) = ±P(z)
    for t in trees(9) {
        let q = all_dirichlet(&t);
        assert!(q.has_definite_parity());
        let n = q.degree().unwrap();
        for (k, c) in q.coeffs().iter().enumerate() {
            if (n - k) % 2 == 1 {
                assert_eq!(*c, BigInt::from(0));
            }
        }
    }
}

#[test]
fn normalization_is_invariant_under_relabeling() {
    for t in trees(7) {
        let p = t.vertex_count();
        let perm: Vec<usize> = (0..p).rev().collect();
        let r = t.relabel(&perm).unwrap();
        assert_eq!(
            normalize(&all_dirichlet(&t)).unwrap(),
            normalize(&all_dirichlet(&r)).unwrap()
        );
    }
}
