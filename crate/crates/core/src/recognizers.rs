//! Structural predicates: bipartiteness, odd girth, induced paths and cycles,
//! class membership and domination by a non-neighbour.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Default node budget for the exhaustive induced-subgraph searches.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search node budget of {0} expansions exhausted")]
    BudgetExceeded(u64),
    #[error("t must be odd and at least 9, got {0}")]
    InvalidT(usize),
}

/// Returns a proper 2-colouring with values in `{1, 2}`, or `None` if the
/// graph has an odd cycle.
pub fn is_bipartite(g: &Graph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut side = vec![0u8; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if side[s] != 0 {
            continue;
        }
        side[s] = 1;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if side[w] == 0 {
                    side[w] = 3 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// A shortest odd cycle, as an ordered vertex list, or `None` for bipartite
/// graphs. The cycle is always induced.
///
/// Runs a BFS over the bipartite double cover from every vertex `s`, looking
/// for the first time `(s, odd)` is reached. Searches are cut off once they
/// cannot beat the best cycle found so far, and each root is deleted after
/// its search: a shortest odd cycle is found from whichever of its vertices
/// comes first. Roots go in order of decreasing degree so that hubs are
/// deleted early, which keeps later searches local on sparse periphery.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut dist = vec![u32::MAX; 2 * n];
    let mut parent = vec![usize::MAX; 2 * n];
    let mut touched: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    let mut best: Option<Vec<Vertex>> = None;
    let mut best_len = u32::MAX;
    let mut deleted = vec![false; n];
    let mut roots: Vec<Vertex> = g.vertices().collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    for s in roots {
        if best_len == 3 {
            break;
        }
        for &st in &touched {
            dist[st] = u32::MAX;
            parent[st] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[2 * s] = 0;
        touched.push(2 * s);
        queue.push_back(2 * s);
        let target = 2 * s + 1;
        'bfs: while let Some(st) = queue.pop_front() {
            let d = dist[st];
            if d + 1 >= best_len {
                break;
            }
            let (v, parity) = (st / 2, st % 2);
            for &w in g.neighbours(v) {
                let next = 2 * w + (1 - parity);
                if deleted[w] || dist[next] != u32::MAX {
                    continue;
                }
                dist[next] = d + 1;
                parent[next] = st;
                touched.push(next);
                if next == target {
                    let mut walk = Vec::with_capacity(d as usize + 1);
                    let mut cur = parent[target];
                    while cur != 2 * s {
                        walk.push(cur / 2);
                        cur = parent[cur];
                    }
                    walk.push(s);
                    walk.reverse();
                    best_len = d + 1;
                    best = Some(walk);
                    break 'bfs;
                }
                queue.push_back(next);
            }
        }
        deleted[s] = true;
    }
    best
}

/// Depth-first search over partial induced paths.
///
/// `blocked[v]` counts the path vertices other than the current endpoint
/// whose closed neighbourhood contains `v`; a neighbour of the endpoint can
/// extend the path exactly when its count is zero.
struct InducedSearch<'g> {
    g: &'g Graph,
    k: usize,
    path: Vec<Vertex>,
    blocked: Vec<u32>,
    expansions: u64,
    budget: u64,
}

impl<'g> InducedSearch<'g> {
    fn new(g: &'g Graph, k: usize, budget: u64) -> Self {
        InducedSearch {
            g,
            k,
            path: Vec::with_capacity(k),
            blocked: vec![0; g.vertex_count()],
            expansions: 0,
            budget,
        }
    }

    fn tick(&mut self) -> Result<(), SearchError> {
        self.expansions += 1;
        if self.expansions > self.budget {
            Err(SearchError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    fn block(&mut self, v: Vertex, delta: i32) {
        let apply = |c: &mut u32| {
            if delta > 0 {
                *c += 1
            } else {
                *c -= 1
            }
        };
        apply(&mut self.blocked[v]);
        for &w in self.g.neighbours(v) {
            apply(&mut self.blocked[w]);
        }
    }

    fn path_from(&mut self, start: Vertex) -> Result<bool, SearchError> {
        self.path.clear();
        self.path.push(start);
        self.extend_path()
    }

    fn extend_path(&mut self) -> Result<bool, SearchError> {
        if self.path.len() == self.k {
            return Ok(true);
        }
        let g = self.g;
        let last = *self.path.last().unwrap();
        for &w in g.neighbours(last) {
            if self.blocked[w] != 0 {
                continue;
            }
            self.tick()?;
            self.block(last, 1);
            self.path.push(w);
            if self.extend_path()? {
                return Ok(true);
            }
            self.path.pop();
            self.block(last, -1);
        }
        Ok(false)
    }

    /// Cycles are searched with `start` as their smallest vertex. The start's
    /// neighbourhood is not blocked; instead adjacency to `start` is allowed
    /// only at the closing position.
    fn cycle_from(&mut self, start: Vertex) -> Result<bool, SearchError> {
        self.path.clear();
        self.path.push(start);
        self.extend_cycle()
    }

    fn extend_cycle(&mut self) -> Result<bool, SearchError> {
        let start = self.path[0];
        let pos = self.path.len();
        let g = self.g;
        let last = *self.path.last().unwrap();
        for &w in g.neighbours(last) {
            if w <= start || self.blocked[w] != 0 {
                continue;
            }
            if pos >= 2 && g.has_edge(w, start) != (pos == self.k - 1) {
                continue;
            }
            self.tick()?;
            if pos == self.k - 1 {
                self.path.push(w);
                return Ok(true);
            }
            if pos >= 2 {
                self.block(last, 1);
            }
            self.path.push(w);
            if self.extend_cycle()? {
                return Ok(true);
            }
            self.path.pop();
            if pos >= 2 {
                self.block(last, -1);
            }
        }
        Ok(false)
    }
}

/// Finds `k` vertices inducing exactly a path, or proves none exist.
pub fn find_induced_path(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<Option<Vec<Vertex>>, SearchError> {
    assert!(k >= 1, "k must be positive");
    let mut search = InducedSearch::new(g, k, budget);
    for s in g.vertices() {
        if search.path_from(s)? {
            return Ok(Some(search.path));
        }
    }
    Ok(None)
}

/// Finds `k` vertices inducing exactly a cycle `C_k`, listed in cycle order.
pub fn find_induced_cycle(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<Option<Vec<Vertex>>, SearchError> {
    assert!(k >= 3, "cycles have at least three vertices");
    let mut search = InducedSearch::new(g, k, budget);
    for s in g.vertices() {
        if search.cycle_from(s)? {
            return Ok(Some(search.path));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum Violation {
    InducedPath(Vec<Vertex>),
    ShortOddCycle(Vec<Vertex>),
}

impl Violation {
    pub fn vertices(&self) -> &[Vertex] {
        match self {
            Violation::InducedPath(v) | Violation::ShortOddCycle(v) => v,
        }
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Violation {
        match self {
            Violation::InducedPath(v) => Violation::InducedPath(v.iter().map(|&x| f(x)).collect()),
            Violation::ShortOddCycle(v) => {
                Violation::ShortOddCycle(v.iter().map(|&x| f(x)).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub t: usize,
    pub is_member: bool,
    pub violation: Option<Violation>,
}

pub fn check_t(t: usize) -> Result<(), SearchError> {
    if t < 9 || t.is_multiple_of(2) {
        Err(SearchError::InvalidT(t))
    } else {
        Ok(())
    }
}

/// Decides membership in the class of `P_t`-free graphs with odd girth at
/// least `t - 2`. Odd girth is checked first since it is cheap.
pub fn in_class(g: &Graph, t: usize, budget: u64) -> Result<ClassReport, SearchError> {
    check_t(t)?;
    let violation = match shortest_odd_cycle(g) {
        Some(c) if c.len() <= t - 4 => Some(Violation::ShortOddCycle(c)),
        _ => find_induced_path(g, t, budget)?.map(Violation::InducedPath),
    };
    Ok(ClassReport {
        t,
        is_member: violation.is_none(),
        violation,
    })
}

/// A non-neighbour `w` of `v` with `N(v) ⊆ N(w)`, restricted to vertices
/// flagged in `alive`. `degree` holds the alive-degree of every vertex.
pub(crate) fn dominator_of(
    g: &Graph,
    v: Vertex,
    alive: &[bool],
    degree: &[usize],
) -> Option<Vertex> {
    let mut pivot: Option<Vertex> = None;
    let mut nbrs = Vec::with_capacity(degree[v]);
    for &u in g.neighbours(v) {
        if alive[u] {
            nbrs.push(u);
            if pivot.is_none_or(|p| degree[u] < degree[p]) {
                pivot = Some(u);
            }
        }
    }
    let Some(pivot) = pivot else {
        return g.vertices().find(|&w| w != v && alive[w]);
    };
    g.neighbours(pivot)
        .iter()
        .copied()
        .filter(|&w| w != v && alive[w] && !g.has_edge(v, w) && degree[w] >= nbrs.len())
        .find(|&w| nbrs.iter().all(|&x| g.has_edge(w, x)))
}

/// Some pair `(v, w)` where `w` is a non-neighbour of `v` with `N(v) ⊆ N(w)`.
pub fn find_dominated_vertex(g: &Graph) -> Option<(Vertex, Vertex)> {
    let alive = vec![true; g.vertex_count()];
    let degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    g.vertices()
        .find_map(|v| dominator_of(g, v, &alive, &degree).map(|w| (v, w)))
}

/// True if the listed vertices, in order, induce exactly a path.
pub fn is_induced_path(g: &Graph, p: &[Vertex]) -> bool {
    let mut seen = std::collections::HashSet::new();
    if !p.iter().all(|v| seen.insert(*v)) {
        return false;
    }
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| g.has_edge(p[i], p[j]) == (j == i + 1)))
}

/// True if the listed vertices, in order, induce exactly a cycle.
pub fn is_induced_cycle(g: &Graph, c: &[Vertex]) -> bool {
    let k = c.len();
    if k < 3 {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !c.iter().all(|v| seen.insert(*v)) {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| g.has_edge(c[i], c[j]) == (j == i + 1 || (i == 0 && j == k - 1)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    const B: u64 = DEFAULT_NODE_BUDGET;

    #[test]
    fn bipartite_examples() {
        let c4 = is_bipartite(&cycle(4)).unwrap();
        assert_eq!(c4, vec![1, 2, 1, 2]);
        assert!(is_bipartite(&cycle(7)).is_none());
        assert_eq!(is_bipartite(&Graph::empty(1)), Some(vec![1]));
    }

    #[test]
    fn odd_girth_examples() {
        assert_eq!(shortest_odd_cycle(&complete(3)).unwrap().len(), 3);
        let c9 = shortest_odd_cycle(&cycle(9)).unwrap();
        assert_eq!(c9.len(), 9);
        assert!(is_induced_cycle(&cycle(9), &c9));
        assert!(shortest_odd_cycle(&cycle(6)).is_none());
        assert_eq!(shortest_odd_cycle(&petersen()).unwrap().len(), 5);
    }

    #[test]
    fn induced_path_examples() {
        assert!(find_induced_path(&path(9), 9, B).unwrap().is_some());
        assert!(find_induced_path(&cycle(9), 9, B).unwrap().is_none());
        assert_eq!(
            find_induced_path(&cycle(9), 8, B).unwrap().unwrap().len(),
            8
        );
        assert!(find_induced_path(&complete(3), 3, B).unwrap().is_none());
        assert_eq!(
            find_induced_path(&Graph::empty(1), 1, B).unwrap(),
            Some(vec![0])
        );
    }

    #[test]
    fn induced_cycle_examples() {
        let c9 = find_induced_cycle(&cycle(9), 9, B).unwrap().unwrap();
        assert!(is_induced_cycle(&cycle(9), &c9));
        assert!(find_induced_cycle(&cycle(9), 7, B).unwrap().is_none());

        let mut edges: Vec<_> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        edges.push((0, 4));
        let chord = Graph::from_edge_list(9, &edges).unwrap();
        let c5 = find_induced_cycle(&chord, 5, B).unwrap().unwrap();
        let mut sorted = c5.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
        assert!(find_induced_cycle(&complete(3), 3, B).unwrap().is_some());
    }

    #[test]
    fn budget_is_reported() {
        assert_eq!(
            find_induced_path(&cycle(30), 25, 10),
            Err(SearchError::BudgetExceeded(10))
        );
    }

    #[test]
    fn class_examples() {
        let r = in_class(&cycle(9), 9, B).unwrap();
        assert!(r.is_member && r.violation.is_none());
        let r = in_class(&complete(3), 9, B).unwrap();
        assert!(matches!(r.violation, Some(Violation::ShortOddCycle(ref c)) if c.len() == 3));
        let r = in_class(&petersen(), 9, B).unwrap();
        assert!(matches!(r.violation, Some(Violation::ShortOddCycle(ref c)) if c.len() == 5));
        let r = in_class(&path(9), 9, B).unwrap();
        assert!(
            matches!(r.violation, Some(Violation::InducedPath(ref p)) if is_induced_path(&path(9), p))
        );
        assert_eq!(in_class(&path(3), 8, B), Err(SearchError::InvalidT(8)));
        assert_eq!(in_class(&path(3), 7, B), Err(SearchError::InvalidT(7)));
    }

    #[test]
    fn domination_examples() {
        let (v, w) = find_dominated_vertex(&star(3)).unwrap();
        assert!(v != 0 && w != 0 && v != w);
        assert!(find_dominated_vertex(&cycle(7)).is_none());
        assert!(find_dominated_vertex(&path(2)).is_none());
    }

    #[test]
    fn c7_has_no_dominated_pair_exhaustively() {
        let g = cycle(7);
        for v in 0..7 {
            for w in 0..7 {
                if v != w && !g.has_edge(v, w) {
                    let dominated = g.neighbours(v).iter().all(|&x| g.has_edge(w, x));
                    assert!(!dominated);
                }
            }
        }
    }
}
