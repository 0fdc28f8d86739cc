use std::collections::VecDeque;

use cycpres_core::abelian::{abelianisation, abelianisation_of, betti_via_polynomial_gcd, order_via_determinant};
use cycpres_core::params::{conditions, normalize, NormalizationKind};
use cycpres_core::stargraph::{build_star_graph, girth, heawood_check, StarGraph};
use cycpres_core::GroupParams;
use proptest::prelude::*;

fn any_standard(max_n: usize) -> impl Strategy<Value = GroupParams> {
    (3usize..=max_n).prop_flat_map(|n| prop::sample::select(GroupParams::all_standard(n).collect::<Vec<_>>()))
}

/// Girth by deleting each edge in turn and finding the shortest detour.
/// Vertex `i < n` is `x_i`, vertex `n + j` is `x_j^-1`.
fn girth_by_detours(g: &StarGraph) -> Option<usize> {
    let (n, v) = (g.n(), g.vertex_count());
    let mut adj = vec![Vec::new(); v];
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        adj[a].push((n + b, id));
        adj[n + b].push((a, id));
    }
    let mut best: Option<usize> = None;
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        let b = n + b;
        let mut dist = vec![usize::MAX; v];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if e != id && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[b] != usize::MAX {
            let len = dist[b] + 1;
            best = Some(best.map_or(len, |c| c.min(len)));
        }
    }
    best
}

#[test]
fn free_products_add_up() {
    for n in 3..=40usize {
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                let norm = normalize(n as i64, k, l).unwrap();
                if let NormalizationKind::FreeProduct { inner, .. } = &norm.kind {
                    if inner.is_standard() {
                        assert_eq!(abelianisation_of(&norm), abelianisation(&norm.params), "({n},{k},{l})");
                    }
                }
            }
        }
    }
}

#[test]
fn star_graph_sweep() {
    for n in 3..=40 {
        for p in GroupParams::all_standard(n) {
            let g = build_star_graph(&p).unwrap();
            let cv = conditions(&p).unwrap();
            let found = girth(&g).map(|r| r.girth);
            assert_eq!(found, girth_by_detours(&g), "{p}");
            let gi = found.unwrap();
            assert!(gi <= 6, "{p}");
            assert_eq!(gi >= 6, !(cv.b || cv.c || cv.d), "{p}");
            assert_eq!(heawood_check(&g), n == 7 && gi == 6, "{p}");
        }
    }
}

proptest! {
    #[test]
    fn betti_routes_agree(p in any_standard(64)) {
        let inv = abelianisation(&p);
        prop_assert_eq!(inv.betti, betti_via_polynomial_gcd(&p).unwrap());
        if conditions(&p).unwrap().a {
            prop_assert_eq!(inv.betti, 2);
        }
    }

    #[test]
    fn determinant_matches_snf_order(p in any_standard(48)) {
        prop_assert_eq!(order_via_determinant(&p).unwrap(), abelianisation(&p).order());
    }

    #[test]
    fn girth_witness_is_a_cycle(p in any_standard(60)) {
        let g = build_star_graph(&p).unwrap();
        let r = girth(&g).unwrap();
        prop_assert!(g.is_cycle(&r.witness));
        prop_assert_eq!(r.witness.len(), r.girth + 1);
    }
}
