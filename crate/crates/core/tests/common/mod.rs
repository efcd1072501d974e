//! Strategies and naive oracles shared by the property tests.

#![allow(dead_code)]

use proptest::prelude::*;
use tricol::{ColourList, Graph, Palette, Vertex};

/// A graph on `lo..=hi` vertices with each edge present with probability
/// about `density`.
pub fn graph(lo: usize, hi: usize, density: f64) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::bool::weighted(density), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

/// A graph together with a palette on its vertices; lists drawn from
/// `bits` (subsets of `{1,2,3}` encoded as masks).
pub fn graph_with_lists(
    lo: usize,
    hi: usize,
    density: f64,
    bits: &'static [u8],
) -> impl Strategy<Value = (Graph, Palette)> {
    graph(lo, hi, density).prop_flat_map(move |g| {
        let n = g.vertex_count();
        proptest::collection::vec(proptest::sample::select(bits), n).prop_map(move |ls| {
            let lists = ls.into_iter().map(ColourList::from_bits).collect();
            (g.clone(), Palette::from_lists(lists))
        })
    })
}

fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
    fn go(
        n: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<Vertex>,
        f: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            cur.push(v);
            if go(n, k, v + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(n, k, 0, &mut Vec::new(), f)
}

fn induced_degrees(g: &Graph, s: &[Vertex]) -> (Vec<usize>, usize) {
    let deg: Vec<usize> = s
        .iter()
        .map(|&u| s.iter().filter(|&&v| g.has_edge(u, v)).count())
        .collect();
    let edges = deg.iter().sum::<usize>() / 2;
    (deg, edges)
}

fn connected(g: &Graph, s: &[Vertex]) -> bool {
    let mut seen = vec![false; s.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..s.len() {
            if !seen[j] && g.has_edge(s[i], s[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Does some `k`-subset induce a path? Checked over all subsets.
pub fn naive_has_induced_path(g: &Graph, k: usize) -> bool {
    subsets(g.vertex_count(), k, &mut |s| {
        let (deg, edges) = induced_degrees(g, s);
        edges + 1 == k && deg.iter().all(|&d| d <= 2) && connected(g, s)
    })
}

/// Length of the shortest odd cycle, by testing odd subsets for inducing a
/// cycle (a shortest odd cycle is always induced).
pub fn naive_odd_girth(g: &Graph) -> Option<usize> {
    (3..=g.vertex_count()).step_by(2).find(|&k| {
        subsets(g.vertex_count(), k, &mut |s| {
            let (deg, _) = induced_degrees(g, s);
            deg.iter().all(|&d| d == 2) && connected(g, s)
        })
    })
}
