use std::collections::BTreeSet;

use clusterlab::models::double_wiring::{
    all_double_wiring_diagrams, double_wiring_cluster_graph, random_double_wiring, DoubleWiringDiagram,
};
use clusterlab::models::triangulation::{enumerate_triangulations, Triangulation};
use clusterlab::models::wiring::{reduced_words, WiringDiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn flips_are_mutations() {
    for m in 4..=8 {
        for t in enumerate_triangulations(m) {
            let q = t.quiver();
            for (k, &d) in t.diagonals().iter().enumerate() {
                let t2 = t.flip(d).unwrap();
                let mut order = t.diagonals().to_vec();
                order[k] = t.flipped_diagonal(d).unwrap();
                assert_eq!(t2.quiver_ordered(&order).unwrap(), q.mutate(k).unwrap(), "{t} at {k}");
            }
        }
    }
}

#[test]
fn flips_connect_all_triangulations() {
    for m in 4..=8 {
        let all = enumerate_triangulations(m);
        let mut seen = BTreeSet::new();
        let mut stack = vec![all[0].clone()];
        seen.insert(all[0].clone());
        while let Some(t) = stack.pop() {
            for &d in t.diagonals() {
                let t2 = t.flip(d).unwrap();
                if seen.insert(t2.clone()) {
                    stack.push(t2);
                }
            }
        }
        assert_eq!(seen.len(), all.len());
    }
}

/// Two quivers agree after relabeling mutable vertices, frozen vertices fixed.
fn same_up_to_mutable_relabeling(a: &clusterlab::Quiver, b: &clusterlab::Quiver) -> bool {
    use clusterlab::canon::canonical_labeling;
    let cells = |q: &clusterlab::Quiver| {
        let mut c = vec![(0..q.n()).collect::<Vec<_>>()];
        c.extend((q.n()..q.m()).map(|v| vec![v]));
        c
    };
    a.m() == b.m()
        && a.n() == b.n()
        && canonical_labeling(a.net_matrix(), cells(a)).1 == canonical_labeling(b.net_matrix(), cells(b)).1
}

#[test]
fn q3_flips_are_mutation_sequences() {
    for m in 4..=6 {
        for t in enumerate_triangulations(m) {
            let q = t.q3_quiver();
            for &d in t.diagonals() {
                let target = t.flip(d).unwrap().q3_quiver();
                let verts = t.q3_flip_vertices(d).unwrap();
                let mut found = None;
                let mut frontier = vec![(q.clone(), None::<usize>)];
                for depth in 1..=4 {
                    let mut next = Vec::new();
                    for (p, last) in &frontier {
                        for &v in &verts {
                            if Some(v) == *last {
                                continue;
                            }
                            let r = p.mutate(v).unwrap();
                            if found.is_none() && same_up_to_mutable_relabeling(&r, &target) {
                                found = Some(depth);
                            }
                            next.push((r, Some(v)));
                        }
                    }
                    frontier = next;
                }
                // No single mutation works; four at the two diagonal points and
                // the two triangle centers always do.
                assert_eq!(found, Some(4), "{t} at {d:?}");
            }
        }
    }
}

#[test]
fn braid_moves_are_mutations() {
    for n in 3..=5 {
        let words = reduced_words(n);
        let words = if n == 5 { words[..100].to_vec() } else { words };
        for w in words {
            let d = WiringDiagram::new(n, w).unwrap();
            let cs = d.vertex_chambers();
            let labels: Vec<Vec<usize>> = cs.iter().map(|c| c.label.clone()).collect();
            let q = d.quiver();
            for mv in d.braid_moves() {
                let k = labels.iter().position(|l| *l == mv.removed).unwrap();
                assert!(k < q.n());
                let mut order = labels.clone();
                order[k] = mv.added.clone();
                assert_eq!(mv.result.quiver_by_labels(&order).unwrap(), q.mutate(k).unwrap(), "{d}");
            }
            for e in d.commutation_moves() {
                assert_eq!(e.quiver_by_labels(&labels).unwrap(), q);
            }
        }
    }
}

#[test]
fn braid_moves_connect_reduced_words() {
    for n in 2..=4 {
        let all = reduced_words(n);
        let start = WiringDiagram::new(n, all[0].clone()).unwrap();
        let mut seen = BTreeSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(d) = stack.pop() {
            let next: Vec<WiringDiagram> = d
                .braid_moves()
                .into_iter()
                .map(|m| m.result)
                .chain(d.commutation_moves())
                .collect();
            for e in next {
                if seen.insert(e.clone()) {
                    stack.push(e);
                }
            }
        }
        assert_eq!(seen.len(), all.len());
    }
}

#[test]
fn local_moves_are_mutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut diagrams = all_double_wiring_diagrams(3);
    for n in 4..=5 {
        diagrams.extend((0..30).map(|_| random_double_wiring(n, &mut rng)));
    }
    for d in diagrams {
        let cs = d.vertex_chambers();
        assert_eq!(cs.len(), d.n() * d.n());
        let labels: Vec<_> = cs.iter().map(|c| c.label.clone()).collect();
        let q = d.quiver();
        for mv in d.local_moves() {
            let k = labels.iter().position(|l| *l == mv.removed).unwrap();
            assert!(k < q.n());
            let mut order = labels.clone();
            order[k] = mv.added.clone();
            let after: BTreeSet<_> = mv.result.cluster_labels();
            let mut expected: BTreeSet<_> = d.cluster_labels();
            expected.remove(&mv.removed);
            expected.insert(mv.added.clone());
            assert_eq!(after, expected);
            assert_eq!(mv.result.quiver_by_labels(&order).unwrap(), q.mutate(k).unwrap(), "{d} {:?}", mv.kind);
        }
        for e in d.commutation_moves() {
            assert_eq!(e.quiver_by_labels(&labels).unwrap(), q);
        }
    }
}

#[test]
fn double_wiring_clusters_for_three_strands() {
    let d = DoubleWiringDiagram::parse_text("2t,1T,2T,1t,2t,1T").unwrap();
    let g = double_wiring_cluster_graph(&d);
    assert_eq!(g.diagrams, 80);
    assert_eq!(g.clusters.len(), 34);
    let profile: Vec<(usize, usize)> = g.degree_profile().into_iter().collect();
    assert_eq!(profile, vec![(3, 16), (4, 18)]);
}

#[test]
fn triangulation_format() {
    let t: Triangulation = "6; 1-3, 1-4, 1-5".parse().unwrap();
    assert_eq!(t, Triangulation::fan(6, 0).unwrap());
}

#[test]
fn flips_mutate_y_seeds() {
    use clusterlab::models::triangulation::{triangulation_y_seed, triangulation_y_seed_ordered};
    use num_rational::BigRational;
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 4..=7 {
        for _ in 0..3 {
            // distinct points of the projective line
            let mut pts: Vec<(BigRational, BigRational)> = Vec::new();
            while pts.len() < m {
                let p = (
                    BigRational::from_integer(rng.gen_range(-30..=30).into()),
                    BigRational::from_integer(rng.gen_range(1..=30).into()),
                );
                if pts.iter().all(|q| &q.0 * &p.1 != &p.0 * &q.1) {
                    pts.push(p);
                }
            }
            for t in enumerate_triangulations(m) {
                let ys = triangulation_y_seed(&t, &pts).unwrap();
                for (k, &d) in t.diagonals().iter().enumerate() {
                    let mut order = t.diagonals().to_vec();
                    order[k] = t.flipped_diagonal(d).unwrap();
                    let flipped = triangulation_y_seed_ordered(&t.flip(d).unwrap(), &order, &pts).unwrap();
                    assert_eq!(flipped, ys.mutate(k).unwrap(), "{t} at {d:?}");
                }
            }
        }
    }
}
