use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::generators::{make_oracle, GeneratorSpec};

fn family(spec: &str, radius: u32) -> (FiniteGraph, Truncation) {
    let oracle = make_oracle(&spec.parse::<GeneratorSpec>().unwrap()).unwrap();
    materialize(&*oracle, &oracle.default_root().unwrap(), radius).unwrap()
}

fn idx(g: &FiniteGraph, c: &[i64]) -> u32 {
    g.index_of(&VertexId::coords(c)).unwrap()
}

/// Independent all-pairs distances by Floyd–Warshall, for small graphs.
fn floyd(g: &FiniteGraph) -> Vec<Vec<u32>> {
    let n = g.len();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &w in g.neighbors(v as u32) {
            d[v][w as usize] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

#[test]
fn materialize_sizes() {
    // 3·2^r − 2
    for r in 0..=5u32 {
        assert_eq!(family("tree:3", r).0.len(), 3 * (1 << r) - 2);
    }
    // 2r² + 2r + 1
    for r in 0..=5usize {
        assert_eq!(family("grid:2", r as u32).0.len(), 2 * r * r + 2 * r + 1);
    }
    let (g, t) = family("lamplighter", 0);
    assert_eq!(g.len(), 1);
    assert_eq!(t.dist(0), 0);
}

#[test]
fn materialize_is_idempotent() {
    let a = family("lamplighter", 5);
    let b = family("lamplighter", 5);
    assert_eq!(a, b);
}

#[test]
fn materialize_respects_cap() {
    let oracle = make_oracle(&GeneratorSpec::RegularTree(3)).unwrap();
    let res = materialize_around(
        &*oracle,
        &[oracle.default_root().unwrap()],
        10,
        MaterializeOptions { max_vertices: 100 },
    );
    assert!(matches!(res, Err(crate::Error::ResourceLimit { limit: 100 })));
}

#[test]
fn frontier_vertices_are_open_and_interior_is_complete() {
    let (g, t) = family("tree:3", 3);
    for v in 0..g.len() as u32 {
        assert!(t.dist(v) <= 3);
        assert_eq!(t.is_open(v), t.dist(v) == 3);
        if t.dist(v) < 3 {
            assert_eq!(g.degree(v), 3);
        }
    }
    let (_, t) = family("cycle:9", 100);
    assert!(t.is_complete());
}

#[test]
fn ball_sizes_examples() {
    let (g, t) = family("tree:3", 6);
    assert_eq!(ball_sizes(&g, &t, t.root(), 3).unwrap(), vec![1, 4, 10, 22]);
    assert_eq!(ball_sizes(&g, &t, t.root(), 0).unwrap(), vec![1]);
    let (g, t) = family("grid:1", 8);
    assert_eq!(ball_sizes(&g, &t, t.root(), 5).unwrap()[5], 11);
    // Margin: a vertex at distance 2 with r_max 5 would reach past R_t = 6.
    let (g, t) = family("tree:3", 6);
    let v = idx(&g, &[0, 0]);
    assert!(ball_sizes(&g, &t, v, 4).is_ok());
    assert!(matches!(ball_sizes(&g, &t, v, 5), Err(crate::Error::Margin(_))));
}

#[test]
fn boundary_examples() {
    let (g, t) = family("path:5", 10);
    let b = boundary(&g, &t, &VertexSet::singleton(idx(&g, &[2]))).unwrap();
    assert_eq!(b.as_slice(), &[idx(&g, &[1]), idx(&g, &[3])]);
    assert!(boundary(&g, &t, &VertexSet::new()).unwrap().is_empty());

    let (g, t) = family("tree:3", 4);
    let frontier = (0..g.len() as u32).find(|&v| t.dist(v) == 4).unwrap();
    assert!(matches!(
        boundary(&g, &t, &VertexSet::singleton(frontier)),
        Err(crate::Error::Margin(_))
    ));
}

/// Brute force: all connected 4-subsets of the 3-regular tree ball have 6
/// boundary vertices (n + 2 by the handshake count on trees).
#[test]
fn tree_connected_four_sets_have_boundary_six() {
    let (g, t) = family("tree:3", 3);
    let interior: Vec<u32> = (0..g.len() as u32).filter(|&v| t.dist(v) <= 2).collect();
    let n = interior.len();
    let mut checked = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != 4 {
            continue;
        }
        let set: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| interior[i]).collect();
        if !is_connected(&g, &set) {
            continue;
        }
        let b = boundary(&g, &t, &VertexSet::from_indices(set)).unwrap();
        assert_eq!(b.len(), 6);
        checked += 1;
    }
    assert!(checked > 0);
}

fn is_connected(g: &FiniteGraph, set: &[u32]) -> bool {
    let mut seen = vec![set[0]];
    let mut stack = vec![set[0]];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if set.contains(&w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

#[test]
fn histogram_examples() {
    let (g, t) = family("path:8", 100);
    let a = VertexSet::from_indices([0, 1, 2].map(|i| idx(&g, &[i])));
    let h = distance_histogram(&g, &t, &a, idx(&g, &[3])).unwrap();
    assert_eq!(h, BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
    let u = idx(&g, &[5]);
    assert_eq!(distance_histogram(&g, &t, &VertexSet::singleton(u), u).unwrap(), BTreeMap::from([(0, 1)]));

    // B(v, 2) in the 3-regular tree, u just outside a leaf of A.
    let (g, t) = family("tree:3", 9);
    let a = t.ball(2);
    assert_eq!(a.len(), 10);
    let u = idx(&g, &[0, 0, 0]);
    let h = distance_histogram(&g, &t, &a, u).unwrap();
    assert_eq!(h.get(&1), Some(&1));
    assert_eq!(h.values().sum::<usize>(), 10);
    // s = 3 needs R_t >= 9.
    let (g, t) = family("tree:3", 8);
    let u = idx(&g, &[0, 0, 0]);
    assert!(matches!(distance_histogram(&g, &t, &t.ball(2), u), Err(crate::Error::Margin(_))));
}

#[test]
fn interior_check_examples() {
    let (g, t) = family("tree:3", 3);
    let o = VertexSet::singleton(t.root());
    assert!(interior_check(&t, &o, MarginMode::Certificate));
    let frontier = (0..g.len() as u32).find(|&v| t.dist(v) == 3).unwrap();
    assert!(!interior_check(&t, &VertexSet::singleton(frontier), MarginMode::Boundary));
    let (_, t) = family("tree:3", 9);
    assert!(interior_check(&t, &t.ball(3), MarginMode::Certificate));
    assert!(!interior_check(&t, &t.ball(4), MarginMode::Certificate));
    assert!(interior_check(&t, &VertexSet::new(), MarginMode::Boundary));
}

#[test]
fn histogram_agrees_with_all_pairs_distances() {
    let (g, t) = family("lamplighter", 6);
    assert!(g.len() <= 200);
    let d = floyd(&g);
    let a = t.ball(1);
    for u in boundary(&g, &t, &a).unwrap().iter() {
        let h = distance_histogram(&g, &t, &a, u).unwrap();
        let mut expect = BTreeMap::new();
        for v in a.iter() {
            *expect.entry(d[v as usize][u as usize]).or_insert(0usize) += 1;
        }
        assert_eq!(h, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_properties(seed in prop::collection::vec(0u32..200, 1..12)) {
        let (g, t) = family("grid:2", 10);
        let interior: Vec<u32> = (0..g.len() as u32).filter(|&v| t.dist(v) < 10).collect();
        let a = VertexSet::from_indices(seed.iter().map(|&i| interior[i as usize % interior.len()]));
        let b = boundary(&g, &t, &a).unwrap();
        for u in b.iter() {
            prop_assert!(!a.contains(u));
            prop_assert!(g.neighbors(u).iter().any(|&w| a.contains(w)));
        }
        for w in 0..g.len() as u32 {
            if !a.contains(w) && g.neighbors(w).iter().any(|&x| a.contains(x)) {
                prop_assert!(b.contains(w));
            }
        }
    }

    #[test]
    fn ball_growth_properties(v in 0u32..46, r in 0u32..4) {
        let (g, t) = family("tree:3", 8);
        let v = v % g.len() as u32;
        prop_assume!(t.ball_exact(v, r + 1));
        let s = ball_sizes(&g, &t, v, r + 1).unwrap();
        prop_assert_eq!(s[0], 1);
        for w in s.windows(2) {
            prop_assert!(w[0] <= w[1] && w[1] <= w[0] * 4);
        }
    }
}
