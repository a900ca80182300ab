use std::collections::BTreeSet;

use clusterlab::models::double_wiring::{all_double_wiring_diagrams, random_double_wiring, DoubleWiringDiagram};
use clusterlab::models::triangulation::enumerate_triangulations;
use clusterlab::models::wiring::{reduced_words, WiringDiagram};
use clusterlab::search::ExplorationLimits;
use clusterlab::tp::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn test_sizes_match_dimension_counts() {
    for m in 4..=7 {
        for t in enumerate_triangulations(m) {
            assert_eq!(triangulation_test_minors(&t).len(), 2 * m - 3);
        }
    }
    for n in 3..=4 {
        for w in reduced_words(n) {
            let d = WiringDiagram::new(n, w).unwrap();
            assert_eq!(wiring_test_minors(&d).len(), (n - 1) * (n + 2) / 2);
        }
    }
    for d in all_double_wiring_diagrams(3) {
        assert_eq!(double_wiring_test_minors(&d).len(), 9);
    }
}

#[test]
fn chevalley_products_pass_every_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let doubles3 = all_double_wiring_diagrams(3);
    for n in 3..=4 {
        let wirings: Vec<WiringDiagram> = reduced_words(n).into_iter().map(|w| WiringDiagram::new(n, w).unwrap()).collect();
        for trial in 0..100 {
            let z = random_tp_matrix(n, &mut rng);
            assert!(all_minors_positive(&z));
            assert!(tp_test_solid(&z).unwrap());
            for d in &wirings {
                assert!(tp_test_wiring(&z, d).unwrap());
            }
            if n == 3 {
                for d in &doubles3 {
                    assert!(tp_test_double_wiring(&z, d).unwrap());
                }
            } else if trial % 10 == 0 {
                for _ in 0..20 {
                    assert!(tp_test_double_wiring(&z, &random_double_wiring(n, &mut rng)).unwrap());
                }
            }
        }
    }
}

/// A TP matrix with one entry pushed down, or a matrix of random signed entries.
fn perturbed<R: Rng>(n: usize, rng: &mut R) -> RationalMatrix {
    let mut z = random_tp_matrix(n, rng);
    if rng.gen_bool(0.5) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let v = z.get(i, j) * BigRational::new(rng.gen_range(0..=12).into(), 10.into());
        z.set(i, j, v);
    } else {
        for i in 0..n {
            for j in 0..n {
                z.set(i, j, BigRational::new(rng.gen_range(-3..=9).into(), rng.gen_range(1..=4).into()));
            }
        }
    }
    z
}

#[test]
fn tests_agree_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let doubles3 = all_double_wiring_diagrams(3);
    for n in 2..=4 {
        let mut positives = 0;
        for _ in 0..100 {
            let z = perturbed(n, &mut rng);
            let oracle = all_minors_positive(&z);
            positives += oracle as usize;
            assert_eq!(tp_test_solid(&z).unwrap(), oracle, "{z}");
            if n == 3 {
                for d in &doubles3 {
                    assert_eq!(tp_test_double_wiring(&z, d).unwrap(), oracle);
                }
            }
            if n >= 3 {
                let flags = all_flag_minors_positive(&z);
                for w in reduced_words(n) {
                    let d = WiringDiagram::new(n, w).unwrap();
                    // a passing test forces every flag minor to be positive
                    if tp_test_wiring(&z, &d).unwrap() {
                        assert!(flags);
                    }
                }
            }
        }
        assert!(positives > 0 && positives < 100);
    }
}

#[test]
fn triangulation_tests_agree_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 4..=7 {
        let ts = enumerate_triangulations(m);
        for trial in 0..40 {
            let mut z = random_positive_2xm(m, &mut rng);
            if trial % 2 == 1 {
                let j = rng.gen_range(0..m);
                let v = -z.get(0, j).clone();
                z.set(0, j, v);
                let v = -z.get(1, j).clone();
                z.set(1, j, v);
            }
            let oracle = all_pluckers_positive(&z);
            assert_eq!(oracle, trial % 2 == 0);
            for t in &ts {
                assert_eq!(tp_test_triangulation(&z, t).unwrap(), oracle);
            }
        }
    }
}

#[test]
fn braid_moves_satisfy_muir_flag_identities() {
    for n in 3..=4 {
        let mut checked = BTreeSet::new();
        for w in reduced_words(n) {
            let d = WiringDiagram::new(n, w).unwrap();
            let labels: BTreeSet<Vec<usize>> = d.chambers().into_iter().map(|c| c.label).collect();
            for mv in d.braid_moves() {
                let (p, q, r, s) = braid_move_data(&mv.removed, &mv.added).unwrap();
                let with = |extra: &[usize]| {
                    let mut v: Vec<usize> = s.iter().chain(extra).copied().collect();
                    v.sort_unstable();
                    v
                };
                for other in [with(&[p]), with(&[q, r]), with(&[p, q]), with(&[r])] {
                    assert!(labels.contains(&other), "{d}: {other:?}");
                }
                let id = braid_identity(p, q, r, &s).unwrap();
                if checked.insert(id.to_string()) {
                    assert!(verify_identity(&id, n), "{id}");
                }
            }
        }
        assert!(!checked.is_empty());
    }
}

#[test]
fn muir_extensions_of_plucker_relations_hold() {
    for (i, j, k, l) in [(0, 1, 2, 3), (0, 2, 3, 4), (1, 2, 3, 4)] {
        let id = grassmann_plucker_identity(i, j, k, l).unwrap();
        assert!(verify_identity(&id, 5));
        assert!(verify_identity(&muir_extend(&id, &[2], &[5]).unwrap(), 6));
    }
    assert!(verify_identity(&lewis_carroll_identity(), 3));
}

#[test]
fn k_and_l_are_cluster_variables() {
    let d = DoubleWiringDiagram::parse_text("2t,1T,2T,1t,2t,1T").unwrap();
    let alg = double_wiring_algebra(&d, ExplorationLimits::new(1000, 50).unwrap()).unwrap();
    assert_eq!(alg.graph.len(), 50);
    assert_eq!(alg.graph.regular_degree(), Some(4));
    assert_eq!(alg.variables.len(), 16);
    let mut minors = std::collections::HashSet::new();
    for k in 1..=3 {
        for i in subsets(3, k) {
            for j in subsets(3, k) {
                minors.insert(generic_minor(3, &i, &j));
            }
        }
    }
    let (kf, lf) = kl_functions();
    let as_minor = alg.variables.iter().filter(|v| minors.contains(v)).count();
    assert_eq!(as_minor, 14);
    assert!(alg.variables.contains(&kf));
    assert!(alg.variables.contains(&lf));
    assert!(alg.variables.iter().all(|v| v.is_polynomial()));
}
