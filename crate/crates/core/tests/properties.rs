use fyforge_core::building::{is_building_set, maximal_building_set, minimal_building_set};
use fyforge_core::fy::{classical_normal_monomial_counts, h_to_x, hilbert_x, x_to_h};
use fyforge_core::{built_lattice_of_graph, Graph, GeometricLattice, Polynomial};
use proptest::prelude::*;

/// Connected: a random spanning tree plus extra edges.
fn graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_v)
        .prop_flat_map(|v| {
            let parents: Vec<BoxedStrategy<usize>> = (1..v).map(|i| (0..i).boxed()).collect();
            (Just(v), parents, proptest::collection::vec(any::<bool>(), v * (v - 1) / 2))
        })
        .prop_map(move |(v, parents, keep)| {
            let mut edges: Vec<[usize; 2]> = parents.iter().enumerate().map(|(i, &p)| [p, i + 1]).collect();
            let extra = (0..v).flat_map(|a| (a + 1..v).map(move |b| [a, b])).zip(keep).filter(|(_, k)| *k).map(|(e, _)| e);
            for e in extra {
                if edges.len() < max_e.max(v - 1) && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            edges.sort();
            Graph { vertices: v, edges }
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn lattice_is_semimodular(g in graph(6, 8)) {
        let l = GeometricLattice::from_matroid(&g.matroid().unwrap()).unwrap();
        l.check_invariants().unwrap();
        for x in l.ids() {
            for y in l.ids() {
                prop_assert!(l.rank(x) + l.rank(y) >= l.rank(l.join(x, y)) + l.rank(l.meet(x, y)));
            }
        }
    }

    #[test]
    fn extreme_building_sets(g in graph(5, 7)) {
        let l = GeometricLattice::from_matroid(&g.matroid().unwrap()).unwrap();
        prop_assert!(is_building_set(&l, &minimal_building_set(&l)));
        prop_assert!(is_building_set(&l, &maximal_building_set(&l)));
    }

    #[test]
    fn chordal_graphs_are_supersolvable(g in graph(6, 8)) {
        let l = GeometricLattice::from_matroid(&g.matroid().unwrap()).unwrap();
        if g.is_chordal() {
            prop_assert!(l.supersolvable_witness().is_some());
        }
    }

    #[test]
    fn hilbert_is_palindromic(g in graph(5, 6)) {
        let bl = built_lattice_of_graph(&g).unwrap();
        let h = hilbert_x(&bl);
        let mut r = h.clone();
        r.reverse();
        prop_assert_eq!(h[0], 1);
        prop_assert_eq!(&h, &r);
        prop_assert_eq!(classical_normal_monomial_counts(&bl), h);
    }

    #[test]
    fn change_of_variables_round_trip(g in graph(4, 5), a in 0usize..64, b in 0usize..64, c in -3i64..4) {
        let bl = built_lattice_of_graph(&g).unwrap();
        let n = bl.building().len();
        let p = Polynomial::var(a % n).mul(&Polynomial::var(b % n)).add(&Polynomial::constant(c.into()));
        prop_assert_eq!(x_to_h(&bl, &h_to_x(&bl, &p)), p.clone());
        prop_assert_eq!(h_to_x(&bl, &x_to_h(&bl, &p)), p);
    }
}
