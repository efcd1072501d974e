use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::palette::Colour;
use crate::recognizers::dominator_of;

/// The graph left after repeatedly deleting vertices dominated by a
/// non-neighbour, with enough bookkeeping to colour them back in.
#[derive(Debug, Clone, Serialize)]
pub struct PreprocessedGraph {
    #[serde(skip)]
    pub graph: Graph,
    /// `map[v]` is the input id of reduced vertex `v`.
    pub map: Vec<Vertex>,
    /// Removal records `(v, w)` in input ids, in removal order.
    pub stack: Vec<(Vertex, Vertex)>,
    pub input_vertex_count: usize,
}

pub fn preprocess(g: &Graph) -> PreprocessedGraph {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut stack = Vec::new();
    let mut queued = vec![true; n];
    let mut queue: VecDeque<Vertex> = g.vertices().collect();

    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if !alive[v] {
            continue;
        }
        let Some(w) = dominator_of(g, v, &alive, &degree) else {
            continue;
        };
        alive[v] = false;
        stack.push((v, w));
        // only a shrinking neighbourhood can create a new dominated vertex
        for &u in g.neighbours(v) {
            if alive[u] {
                degree[u] -= 1;
                if !queued[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    let keep: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    let (graph, map) = g.induced_subgraph(&keep);
    PreprocessedGraph {
        graph,
        map,
        stack,
        input_vertex_count: n,
    }
}

/// Lifts a colouring of the reduced graph back to the input graph, giving
/// each removed vertex the colour of its dominator, latest removal first.
pub fn restore_colouring(pre: &PreprocessedGraph, colouring: &[Colour]) -> Vec<Colour> {
    let mut out = vec![0; pre.input_vertex_count];
    for (v, &c) in colouring.iter().enumerate() {
        out[pre.map[v]] = c;
    }
    for &(v, w) in pre.stack.iter().rev() {
        out[v] = out[w];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn proper(g: &Graph, c: &[Colour]) -> bool {
        c.iter().all(|&x| (1..=3).contains(&x)) && g.edges().all(|(u, v)| c[u] != c[v])
    }

    #[test]
    fn star_loses_two_leaves() {
        let g = star(3);
        let pre = preprocess(&g);
        assert_eq!(pre.stack.len(), 2);
        assert_eq!(pre.graph.vertex_count(), 2);
        assert_eq!(pre.graph.edge_count(), 1);
        let restored = restore_colouring(&pre, &[1, 2]);
        assert!(proper(&g, &restored));
        let surviving_leaf = pre.map.iter().copied().find(|&v| v != 0).unwrap();
        for leaf in 1..=3 {
            assert_eq!(restored[leaf], restored[surviving_leaf]);
        }
    }

    #[test]
    fn c7_is_a_fixpoint() {
        let pre = preprocess(&cycle(7));
        assert!(pre.stack.is_empty());
        assert_eq!(pre.graph, cycle(7));
    }

    #[test]
    fn isolated_vertex_is_removed() {
        let g = Graph::from_edge_list(3, &[(1, 2)]).unwrap();
        let pre = preprocess(&g);
        assert!(pre.stack.iter().any(|&(v, _)| v == 0));
    }

    #[test]
    fn empty_stack_restores_identity() {
        let pre = preprocess(&cycle(5));
        let c = vec![1, 2, 1, 2, 3];
        assert_eq!(restore_colouring(&pre, &c), c);
    }

    #[test]
    fn chained_removals_restore_properly() {
        // path 0-1-2-3-4: leaves are dominated, and removals cascade
        let g = path(5);
        let pre = preprocess(&g);
        assert!(pre.stack.len() >= 2);
        let k = pre.graph.vertex_count();
        let c: Vec<Colour> = (0..k).map(|v| 1 + (v % 2) as Colour).collect();
        assert!(proper(&pre.graph, &c));
        assert!(proper(&g, &restore_colouring(&pre, &c)));
    }
}
