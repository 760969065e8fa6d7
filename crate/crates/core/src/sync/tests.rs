use std::collections::{BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::perm::Permutation;

/// Every element of the semigroup generated by `maps`, by closing under
/// right multiplication.
fn semigroup_closure(maps: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let mut seen: HashSet<Vec<usize>> = maps.iter().cloned().collect();
    let mut stack: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(s) = stack.pop() {
        for m in maps {
            let t: Vec<usize> = s.iter().map(|&x| m[x]).collect();
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    seen
}

fn maps_of(group: &PermGroup, f: &Transformation) -> Vec<Vec<usize>> {
    let mut maps: Vec<Vec<usize>> = group.generators().iter().map(|g| g.images().to_vec()).collect();
    maps.push(f.images().to_vec());
    maps
}

fn oracle_min_rank(elems: &HashSet<Vec<usize>>) -> usize {
    elems.iter().map(|e| e.iter().collect::<BTreeSet<_>>().len()).min().unwrap()
}

fn oracle_collapsible(n: usize, elems: &HashSet<Vec<usize>>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if elems.iter().any(|e| e[a] == e[b]) {
                out.push((a, b));
            }
        }
    }
    out
}

fn block_example() -> (PermGroup, Transformation) {
    // C6 with blocks {0,3},{1,4},{2,5}; f collapses each block onto {0,1,2}
    let f = Transformation::new(vec![0, 1, 2, 0, 1, 2]).unwrap();
    (PermGroup::cyclic(6), f)
}

#[test]
fn two_transitive_groups_synchronize() {
    let s5 = PermGroup::symmetric(5);
    let f = Transformation::new(vec![0, 0, 2, 3, 4]).unwrap();
    assert!(synchronizes(&s5, &f).unwrap());
    assert!(graph_of(&s5, &f).unwrap().is_null());
    assert_eq!(min_rank(&s5, &f, &SearchOptions::default()).unwrap(), 1);
}

#[test]
fn block_kernel_is_not_synchronized() {
    let (g, f) = block_example();
    assert!(!synchronizes(&g, &f).unwrap());
    let elems = semigroup_closure(&maps_of(&g, &f));
    assert_eq!(oracle_min_rank(&elems), 3);
    assert_eq!(min_rank(&g, &f, &SearchOptions::default()).unwrap(), 3);
    let closure = PairClosure::for_group_and_map(&g, &f).unwrap();
    assert_eq!(closure.collapsible_pairs(), oracle_collapsible(6, &elems));
    let gr = closure.graph();
    assert_eq!(gr.edge_count(), 15 - 3);
    for (a, b) in [(0, 3), (1, 4), (2, 5)] {
        assert!(!gr.has_edge(a, b));
    }
}

#[test]
fn errors() {
    let g = PermGroup::cyclic(4);
    assert_eq!(synchronizes(&g, &Transformation::identity(4)).unwrap_err(), Error::IsPermutation);
    assert!(matches!(
        synchronizes(&g, &Transformation::constant(3, 0).unwrap()),
        Err(Error::DegreeMismatch { .. })
    ));
    assert!(graph_of(&g, &Transformation::constant(4, 1).unwrap()).unwrap().is_null());
}

#[test]
fn gr_s_invariants() {
    let (g, f) = block_example();
    let gr = graph_of(&g, &f).unwrap();
    for p in g.generators() {
        assert!(gr.is_automorphism(p.images()));
    }
    assert!(search::is_endomorphism(&gr, &f).unwrap());
}

#[test]
fn gr_of_endomorphism_monoid_is_gr() {
    let (g, f) = block_example();
    let gr = graph_of(&g, &f).unwrap();
    let ends = search::enumerate_endomorphisms(&gr, &SearchOptions::default()).unwrap();
    let maps: Vec<Transformation> = ends.homomorphisms.iter().map(|h| h.to_transformation().unwrap()).collect();
    assert_eq!(graph_of_maps(6, &maps).unwrap(), gr);
}

#[test]
fn derived_graphs() {
    let triangle_with_pendant = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
    let d = derived_graph(&triangle_with_pendant).unwrap();
    assert_eq!(d.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    let mut k4_minus_edge = Graph::complete(4);
    k4_minus_edge.remove_edge(0, 1);
    assert_eq!(derived_graph(&k4_minus_edge).unwrap(), k4_minus_edge);
    assert_eq!(derived_graph(&Graph::empty(3)).unwrap_err(), Error::NullGraph);
}

#[test]
fn neighbourhood_bounds() {
    assert!(!neighbourhood_bound_check(&Graph::complete(4)).unwrap());
    assert!(!neighbourhood_bound_check(&Graph::cycle(6)).unwrap());
    assert!(neighbourhood_bound_check(&Graph::petersen()).unwrap());
    assert_eq!(neighbourhood_bound_check(&Graph::path(3)).unwrap_err(), Error::NotRegular);
}

#[test]
fn g_sections() {
    let (g, f) = block_example();
    let kernel = f.kernel();
    assert!(is_g_section(&g, &[0, 1, 2], &kernel, DEFAULT_ORBIT_BUDGET).unwrap());
    assert!(!is_g_section(&g, &[0, 3, 1], &kernel, DEFAULT_ORBIT_BUDGET).unwrap());
    let p = vec![vec![0, 1], vec![2, 3]];
    assert!(!is_g_section(&PermGroup::cyclic(4), &[0, 1], &p, DEFAULT_ORBIT_BUDGET).unwrap());
    assert!(matches!(is_g_section(&g, &[0], &kernel, 10), Err(Error::SizeMismatch(_))));
    let s6 = PermGroup::symmetric(6);
    assert_eq!(
        is_g_section(&s6, &[0, 1, 2], &[vec![0, 3], vec![1, 4], vec![2, 5]], 2),
        Err(Error::OrbitBudgetExceeded(2))
    );
}

#[test]
fn random_maps_have_requested_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..30 {
        for r in 1..=n {
            assert_eq!(random_map_of_rank(n, r, &mut rng).unwrap().rank(), r);
        }
    }
    assert!(random_map_of_rank(4, 5, &mut rng).is_err());
}

#[test]
fn random_maps_are_uniform_on_small_domain() {
    // rank-2 maps on 3 points: S(3,2) * 3 * 2 = 18 of them
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut counts = std::collections::HashMap::new();
    let trials = 36_000;
    for _ in 0..trials {
        *counts.entry(random_map_of_rank(3, 2, &mut rng).unwrap()).or_insert(0usize) += 1;
    }
    assert_eq!(counts.len(), 18);
    for &c in counts.values() {
        assert!((1500..2500).contains(&c), "{c}");
    }
}

#[test]
fn rank_scan() {
    let s6 = PermGroup::symmetric(6);
    let ranks: BTreeSet<usize> = [3, 4, 5].into();
    let rep = synchronization_rank_scan(&s6, 20, &ranks, 0).unwrap();
    assert!(rep.all_synchronized());
    let again = synchronization_rank_scan(&s6, 20, &ranks, 0).unwrap();
    assert_eq!(serde_json_like(&rep), serde_json_like(&again));

    let d6 = PermGroup::dihedral(6);
    assert_eq!(synchronization_rank_scan(&d6, 1, &ranks, 0).unwrap_err(), Error::NotPrimitive);
    assert!(matches!(synchronization_rank_scan(&s6, 1, &[6].into(), 0), Err(Error::BadParameter(_))));
}

#[test]
fn imprimitive_group_has_non_synchronized_uniform_map() {
    let d6 = PermGroup::dihedral(6);
    let (_, f) = block_example();
    assert!(!synchronizes(&d6, &f).unwrap());
    let gr = graph_of(&d6, &f).unwrap();
    assert!(!gr.is_null());
    assert!(search::is_endomorphism(&gr, &f).unwrap());
}

fn serde_json_like(r: &RankScanReport) -> Vec<(usize, usize, Vec<Vec<usize>>)> {
    r.entries
        .iter()
        .map(|e| (e.rank, e.synchronized, e.witnesses.iter().map(|w| w.images().to_vec()).collect()))
        .collect()
}

#[test]
fn random_instances_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let n = rng.gen_range(2..=6);
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<Permutation> = (0..ngens)
            .map(|_| {
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(&mut rng);
                Permutation::from_images(v).unwrap()
            })
            .collect();
        let group = PermGroup::new(gens).unwrap();
        let rank = rng.gen_range(1..n);
        let f = random_map_of_rank(n, rank, &mut rng).unwrap();
        let elems = semigroup_closure(&maps_of(&group, &f));
        let oracle_min = oracle_min_rank(&elems);
        assert_eq!(synchronizes(&group, &f).unwrap(), oracle_min == 1);
        assert_eq!(min_rank(&group, &f, &SearchOptions::default()).unwrap(), oracle_min);
        let closure = PairClosure::for_group_and_map(&group, &f).unwrap();
        assert_eq!(closure.collapsible_pairs(), oracle_collapsible(n, &elems));
    }
}
