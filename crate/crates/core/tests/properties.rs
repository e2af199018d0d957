use exspectra_core::canon::{canonical_code, is_isomorphic, small_canonical_form};
use exspectra_core::charpoly::{charpoly_forest, charpoly_oracle, matrix_root_bound, DegreeLabeledForest};
use exspectra_core::enumeration::prufer_decode;
use exspectra_core::exmatrix::{self, extended_adjacency, weight, FloatSymMatrix};
use exspectra_core::extremal::BoundTally;
use exspectra_core::rational::{self, int};
use exspectra_core::spectra::{eta1, full_spectrum, lambda1, spectral_radius};
use exspectra_core::{largest_root, Graph};
use proptest::prelude::*;

/// Connected graph: a random spanning tree plus random extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..n, n - 2),
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
        )
            .prop_map(move |(seq, extra)| {
                let tree = prufer_decode(n, &seq).unwrap();
                let mut edges = tree.edges().to_vec();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if extra[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edge_list(n, edges).unwrap()
            })
    })
}

fn random_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| prufer_decode(n, &seq).unwrap())
    })
}

fn with_permutation(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let perm: Vec<usize> = (0..g.order()).collect();
    (Just(g), Just(perm).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_sum_is_twice_size(g in connected_graph(10)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
    }

    #[test]
    fn spectral_radii_are_relabel_invariant((g, perm) in connected_graph(9).prop_flat_map(with_permutation)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert!((eta1(&g).unwrap() - eta1(&h).unwrap()).abs() < 1e-9);
        prop_assert!((lambda1(&g).unwrap() - lambda1(&h).unwrap()).abs() < 1e-9);
        prop_assert_eq!(small_canonical_form(&g).unwrap(), small_canonical_form(&h).unwrap());
        prop_assert!(is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn tree_codes_are_relabel_invariant((t, perm) in random_tree(16).prop_flat_map(with_permutation)) {
        let u = t.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&t).unwrap(), canonical_code(&u).unwrap());
    }

    #[test]
    fn delete_vertex_drops_neighbour_degrees(g in connected_graph(9), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.order());
        let h = g.delete_vertex(v).unwrap();
        prop_assert_eq!(h.order(), g.order() - 1);
        prop_assert_eq!(h.size(), g.size() - g.degree(v));
        for w in 0..g.order() {
            if w == v {
                continue;
            }
            let shifted = if w > v { w - 1 } else { w };
            let expected = g.degree(w) - usize::from(g.has_edge(v, w));
            prop_assert_eq!(h.degree(shifted), expected);
        }
    }

    #[test]
    fn weight_is_symmetric_and_at_least_one(a in 1usize..60, b in 1usize..60) {
        let w = weight(a, b).unwrap();
        prop_assert_eq!(&w, &weight(b, a).unwrap());
        prop_assert!(w >= int(1));
        prop_assert_eq!(w == int(1), a == b);
    }

    #[test]
    fn power_iteration_matches_jacobi(g in connected_graph(9)) {
        let m = FloatSymMatrix::extended_adjacency(&g).unwrap();
        let power = spectral_radius(&m, 1e-12, 100_000).unwrap();
        let jacobi = full_spectrum(&m, 1e-12).unwrap();
        prop_assert!((power.value - jacobi.largest()).abs() < 1e-9);
        prop_assert!(power.vector.iter().all(|&x| x > 0.0));
        // sum of squared eigenvalues equals trace(A^2) = 2 * sum of squared weights
        let squares: f64 = jacobi.eigenvalues.iter().map(|l| l * l).sum();
        let exact = rational::to_f64(&extended_adjacency(&g).unwrap().trace_of_square());
        prop_assert!((squares - exact).abs() < 1e-9 * exact.max(1.0));
        let weights: f64 = g
            .edges()
            .iter()
            .map(|&(u, v)| rational::to_f64(&weight(g.degree(u), g.degree(v)).unwrap()).powi(2))
            .sum();
        prop_assert!((2.0 * weights - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn sandwich_bounds_hold(g in connected_graph(9)) {
        let mut t = BoundTally::default();
        t.observe(&g, eta1(&g).unwrap(), lambda1(&g).unwrap(), || "g".into());
        prop_assert!(t.holds(), "{:?}", t);
        let fm1 = rational::to_f64(&exmatrix::eta_lower_bound_fm1(&g).unwrap());
        prop_assert!(fm1 <= eta1(&g).unwrap() + 1e-9);
    }

    #[test]
    fn forest_recursion_matches_oracle(t in random_tree(16)) {
        let f = DegreeLabeledForest::from_tree(&t).unwrap();
        prop_assert_eq!(charpoly_forest(&f), charpoly_oracle(&extended_adjacency(&t).unwrap()));
    }

    #[test]
    fn induced_forest_matches_principal_submatrix(t in random_tree(14), keep in proptest::collection::vec(any::<bool>(), 14)) {
        let vertices: Vec<usize> = (0..t.order()).filter(|&v| keep[v]).collect();
        prop_assume!(!vertices.is_empty());
        let f = DegreeLabeledForest::induced(&t, &vertices).unwrap();
        let sub = extended_adjacency(&t).unwrap().principal_submatrix(&vertices);
        prop_assert_eq!(f.matrix(), sub.clone());
        prop_assert_eq!(charpoly_forest(&f), charpoly_oracle(&sub));
    }

    #[test]
    fn largest_root_matches_eigensolver(t in random_tree(12)) {
        let m = extended_adjacency(&t).unwrap();
        let phi = charpoly_forest(&DegreeLabeledForest::from_tree(&t).unwrap());
        let root = largest_root(&phi, 0.0, matrix_root_bound(&m), 1e-10).unwrap();
        prop_assert!((root - eta1(&t).unwrap()).abs() < 1e-9);
    }
}
