//! The star graph `Λ_n(k,l)` and the small-cancellation conditions it
//! decides.
//!
//! `Λ_n(k,l)` is bipartite on `x_0..x_{n-1}` and `x_0^-1..x_{n-1}^-1`, with
//! edges `(x_i, x_{i+k}^-1)`, `(x_i, x_{i+l-k}^-1)`, `(x_i, x_{i-l}^-1)`. A
//! presentation with relators of length three is C(3)-T(q), `q > 4`, exactly
//! when the star graph has no cycle shorter than `q`. Parallel edges count
//! as cycles of length two.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{violation, Result};
use crate::params::{conditions, GroupParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// `x_i`
    Pos(usize),
    /// `x_i^-1`
    Inv(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Pos(i) => write!(f, "x{i}"),
            Vertex::Inv(i) => write!(f, "x{i}^-1"),
        }
    }
}

/// Bipartite multigraph with edges stored as `(positive index, inverse index)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl StarGraph {
    /// Edges in generation order: for each `i`, the `k`, `l-k`, `-l` edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    fn vertex(&self, id: usize) -> Vertex {
        if id < self.n {
            Vertex::Pos(id)
        } else {
            Vertex::Inv(id - self.n)
        }
    }

    /// `adj[v]` lists `(neighbour, edge index)`.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::with_capacity(3); 2 * self.n];
        for (e, &(i, j)) in self.edges.iter().enumerate() {
            adj[i].push((self.n + j, e));
            adj[self.n + j].push((i, e));
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| v == Vertex::Pos(i) || v == Vertex::Inv(j))
            .count()
    }

    /// Number of edges joining `a` and `b`.
    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> usize {
        let (i, j) = match (a, b) {
            (Vertex::Pos(i), Vertex::Inv(j)) | (Vertex::Inv(j), Vertex::Pos(i)) => (i, j),
            _ => return 0,
        };
        self.edges.iter().filter(|&&e| e == (i, j)).count()
    }

    pub fn is_simple(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Whether `walk` is a closed walk (first vertex repeated at the end)
    /// that alternates sides and uses no edge more often than it occurs.
    pub fn is_cycle(&self, walk: &[Vertex]) -> bool {
        if walk.len() < 3 || walk.first() != walk.last() {
            return false;
        }
        let mut used: Vec<(usize, usize)> = Vec::with_capacity(walk.len());
        for w in walk.windows(2) {
            let e = match (w[0], w[1]) {
                (Vertex::Pos(i), Vertex::Inv(j)) | (Vertex::Inv(j), Vertex::Pos(i)) => (i, j),
                _ => return false,
            };
            used.push(e);
        }
        used.sort_unstable();
        let mut idx = 0;
        while idx < used.len() {
            let e = used[idx];
            let times = used[idx..].iter().take_while(|&&x| x == e).count();
            if times > self.multiplicity(Vertex::Pos(e.0), Vertex::Inv(e.1)) {
                return false;
            }
            idx += times;
        }
        // No repeated vertex apart from the closing one.
        let mut inner: Vec<Vertex> = walk[..walk.len() - 1].to_vec();
        inner.sort_unstable();
        inner.windows(2).all(|w| w[0] != w[1])
    }
}

/// Builds `Λ_n(k,l)` for a standard triple.
pub fn build_star_graph(p: &GroupParams) -> Result<StarGraph> {
    p.require_standard()?;
    let n = p.n();
    let (k, l) = (p.k() as i64, p.l() as i64);
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        for off in [k, l - k, -l] {
            edges.push((i, p.add(i, off)));
        }
    }
    Ok(StarGraph { n, edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthReport {
    pub girth: usize,
    /// Closed walk of length `girth`, first vertex repeated at the end.
    pub witness: Vec<Vertex>,
}

/// Exact girth with a witness cycle; `None` for a forest.
pub fn girth(g: &StarGraph) -> Option<GirthReport> {
    let mut sorted: Vec<_> = g.edges.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        let (i, j) = w[0];
        let witness = vec![Vertex::Pos(i), Vertex::Inv(j), Vertex::Pos(i)];
        return Some(GirthReport { girth: 2, witness });
    }
    let adj = g.adjacency();
    let size = g.vertex_count();
    let mut best: Option<GirthReport> = None;
    let mut dist = vec![usize::MAX; size];
    let mut parent = vec![(usize::MAX, usize::MAX); size];
    for root in 0..size {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            // Any cycle closed from depth d has length at least 2d.
            if best.as_ref().is_some_and(|b| 2 * dist[u] >= b.girth) {
                break;
            }
            for &(w, e) in &adj[u] {
                if e == parent[u].1 {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = (u, e);
                    queue.push_back(w);
                    continue;
                }
                let len = dist[u] + dist[w] + 1;
                if best.as_ref().is_some_and(|b| len >= b.girth) {
                    continue;
                }
                let walk = close_walk(g, root, u, w, &parent);
                if g.is_cycle(&walk) {
                    best = Some(GirthReport { girth: len, witness: walk });
                    break 'bfs;
                }
            }
        }
        parent.iter_mut().for_each(|p| *p = (usize::MAX, usize::MAX));
    }
    best
}

/// `root → … → u`, then `w → … → root`.
fn close_walk(
    g: &StarGraph,
    root: usize,
    u: usize,
    w: usize,
    parent: &[(usize, usize)],
) -> Vec<Vertex> {
    let path = |mut v: usize| {
        let mut out = vec![v];
        while v != root {
            v = parent[v].0;
            out.push(v);
        }
        out.reverse();
        out
    };
    let mut walk = path(u);
    let mut back = path(w);
    back.reverse();
    walk.extend(back);
    walk.into_iter().map(|id| g.vertex(id)).collect()
}

/// Small-cancellation status of `P_n(k,l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallCancStatus {
    pub c3t6: bool,
    /// Largest `q ≤ 6` for which T(q) holds, i.e. `min(girth, 6)`.
    pub max_t: usize,
    pub special: bool,
    pub girth: usize,
}

/// Decides C(3)-T(6) twice, from the girth and from the conditions, and
/// specialness twice, from a Heawood isomorphism test and from `n = 7`.
pub fn smallcanc_status(p: &GroupParams) -> Result<SmallCancStatus> {
    let cv = conditions(p)?;
    let g = build_star_graph(p)?;
    let report = girth(&g).ok_or_else(|| violation!("star graph of {p} has no cycle"))?;
    let by_girth = report.girth >= 6;
    if by_girth != cv.bcd_free() {
        return Err(violation!(
            "{p}: girth {} but conditions {cv} disagree on C(3)-T(6)",
            report.girth
        ));
    }
    if report.girth > 6 {
        return Err(violation!("{p}: girth {} exceeds 6", report.girth));
    }
    let special = by_girth && heawood_check(&g);
    if special != (p.n() == 7 && cv.bcd_free()) {
        return Err(violation!("{p}: Heawood test says special={special}"));
    }
    Ok(SmallCancStatus { c3t6: by_girth, max_t: report.girth.min(6), special, girth: report.girth })
}

/// Isomorphism with the Heawood graph, by trying every bijection of one
/// side onto the points of the Fano plane.
pub fn heawood_check(g: &StarGraph) -> bool {
    if g.n != 7 || g.edges.len() != 21 || !g.is_simple() {
        return false;
    }
    let lines: Vec<u8> = (0..7).map(|i| (1 << i) | (1 << ((i + 1) % 7)) | (1 << ((i + 3) % 7))).collect();
    let mut pos_nbrs = [0u8; 7];
    let mut inv_nbrs = [0u8; 7];
    for &(i, j) in &g.edges {
        pos_nbrs[i] |= 1 << j;
        inv_nbrs[j] |= 1 << i;
    }
    // Either side may play the role of the points.
    [inv_nbrs, pos_nbrs].iter().any(|blocks| {
        Permutations::new().any(|perm| {
            let mut seen = 0u8;
            blocks.iter().all(|&b| {
                let image = (0..7).filter(|i| b & (1 << i) != 0).fold(0u8, |acc, i| acc | (1 << perm[i]));
                match lines.iter().position(|&l| l == image) {
                    Some(idx) if seen & (1 << idx) == 0 => {
                        seen |= 1 << idx;
                        true
                    }
                    _ => false,
                }
            })
        })
    })
}

/// Lexicographic permutations of `0..7`.
struct Permutations {
    next: Option<[usize; 7]>,
}

impl Permutations {
    fn new() -> Self {
        Self { next: Some([0, 1, 2, 3, 4, 5, 6]) }
    }
}

impl Iterator for Permutations {
    type Item = [usize; 7];

    fn next(&mut self) -> Option<[usize; 7]> {
        let cur = self.next?;
        let mut a = cur;
        self.next = match (0..6).rev().find(|&i| a[i] < a[i + 1]) {
            None => None,
            Some(i) => {
                let j = (i + 1..7).rev().find(|&j| a[j] > a[i]).expect("successor exists");
                a.swap(i, j);
                a[i + 1..].reverse();
                Some(a)
            }
        };
        Some(cur)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemplateKind {
    /// `x_0, x_k^-1, x_{2k-l}, x_{2k-2l}^-1`, used when (B) holds.
    Four,
    /// The four-step walk continued by `x_{k-2l}, x_{-l}^-1`, when (B) fails.
    Six,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub kind: TemplateKind,
    /// The template walk, closed.
    pub template: Vec<Vertex>,
    /// True when the template is not a cycle of `Λ` and `cycle` comes from
    /// the girth search instead.
    pub degenerate: bool,
    /// A validated cycle of length at most 6.
    pub cycle: Vec<Vertex>,
}

/// Short cycles certifying that T(7) fails.
pub fn cycle_witnesses(p: &GroupParams) -> Result<CycleWitness> {
    let cv = conditions(p)?;
    let g = build_star_graph(p)?;
    let (k, l) = (p.k() as i64, p.l() as i64);
    let at = |x: i64| p.add(0, x);
    let mut template = vec![
        Vertex::Pos(0),
        Vertex::Inv(at(k)),
        Vertex::Pos(at(2 * k - l)),
        Vertex::Inv(at(2 * k - 2 * l)),
    ];
    let kind = if cv.b {
        TemplateKind::Four
    } else {
        template.extend([Vertex::Pos(at(k - 2 * l)), Vertex::Inv(at(-l))]);
        TemplateKind::Six
    };
    template.push(Vertex::Pos(0));
    if g.is_cycle(&template) {
        return Ok(CycleWitness { kind, cycle: template.clone(), template, degenerate: false });
    }
    if kind == TemplateKind::Six {
        return Err(violation!("{p}: six-step template is not a cycle of the star graph"));
    }
    let report = girth(&g).ok_or_else(|| violation!("star graph of {p} has no cycle"))?;
    if report.girth > 4 || !g.is_cycle(&report.witness) {
        return Err(violation!("{p}: (B) holds but the shortest cycle has length {}", report.girth));
    }
    Ok(CycleWitness { kind, template, degenerate: true, cycle: report.witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, k: i64, l: i64) -> GroupParams {
        GroupParams::standard(n, k, l).unwrap()
    }

    fn graph(n: usize, k: i64, l: i64) -> StarGraph {
        build_star_graph(&gp(n, k, l)).unwrap()
    }

    #[test]
    fn shape() {
        let g = graph(7, 1, 3);
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.edges().len(), 21);
        for i in 0..7 {
            assert_eq!(g.degree(Vertex::Pos(i)), 3);
            assert_eq!(g.degree(Vertex::Inv(i)), 3);
        }
        assert!(!graph(5, 1, 4).is_simple());
        assert_eq!(graph(5, 1, 4).multiplicity(Vertex::Pos(0), Vertex::Inv(1)), 2);
        assert!(graph(10, 1, 5).is_simple());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&graph(7, 1, 3)).unwrap().girth, 6);
        assert_eq!(girth(&graph(10, 1, 5)).unwrap().girth, 6);
        let r = girth(&graph(5, 1, 4)).unwrap();
        assert_eq!(r.girth, 2);
        assert!(graph(5, 1, 4).is_cycle(&r.witness));
    }

    #[test]
    fn status_examples() {
        let s = smallcanc_status(&gp(7, 1, 3)).unwrap();
        assert!(s.c3t6 && s.special);
        let s = smallcanc_status(&gp(8, 1, 4)).unwrap();
        assert!(s.c3t6 && !s.special);
        assert_eq!(s.max_t, 6);
        assert!(!smallcanc_status(&gp(8, 1, 3)).unwrap().c3t6);
    }

    #[test]
    fn heawood_examples() {
        assert!(heawood_check(&graph(7, 1, 3)));
        assert!(heawood_check(&graph(7, 1, 5)));
        assert!(!heawood_check(&graph(8, 1, 4)));
        assert!(!heawood_check(&graph(7, 1, 2)));
        assert_eq!(Permutations::new().count(), 5040);
    }

    #[test]
    fn witness_examples() {
        let w = cycle_witnesses(&gp(10, 1, 5)).unwrap();
        assert_eq!(w.kind, TemplateKind::Six);
        assert!(!w.degenerate);
        let want = [
            Vertex::Pos(0),
            Vertex::Inv(1),
            Vertex::Pos(7),
            Vertex::Inv(2),
            Vertex::Pos(1),
            Vertex::Inv(5),
            Vertex::Pos(0),
        ];
        assert_eq!(w.cycle, want);
        let w = cycle_witnesses(&gp(9, 1, 8)).unwrap();
        assert_eq!(w.kind, TemplateKind::Four);
        assert!(w.cycle.len() <= 5);
        assert!(cycle_witnesses(&gp(7, 1, 3)).unwrap().cycle.len() == 7);
    }

    #[test]
    fn walk_validation_rejects_bad_walks() {
        let g = graph(7, 1, 3);
        assert!(!g.is_cycle(&[Vertex::Pos(0), Vertex::Inv(1)]));
        assert!(!g.is_cycle(&[Vertex::Pos(0), Vertex::Inv(1), Vertex::Pos(0)]));
        assert!(!g.is_cycle(&[Vertex::Pos(0), Vertex::Pos(1), Vertex::Pos(0)]));
    }
}
