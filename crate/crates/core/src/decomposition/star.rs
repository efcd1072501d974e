//! Blocks around `Y*` vertices: for `t > 9` a vertex of `Y` may see both
//! `D_i` and `D_{i+4}`. Such vertices, together with a bounded region around
//! them, are coloured in three blocks determined by the cycle colours.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::cycle::{CycleCase, CycleContext};
use super::{sorted_dedup, StructureError};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarBlock {
    pub index: usize,
    pub y_star: Vec<Vertex>,
    pub d_star_i: Vec<Vertex>,
    pub d_star_i4: Vec<Vertex>,
    /// `D^+_j` for `j = i, i+1, i+3, i+4`, in that order.
    pub d_plus: [Vec<Vertex>; 4],
    pub d_plus_plus_i: Vec<Vertex>,
    pub d_plus_plus_i4: Vec<Vertex>,
    pub z1: Vec<Vertex>,
    pub z2: Vec<Vertex>,
    pub z3: Vec<Vertex>,
    /// The whole region coloured by this block, sorted.
    pub f: Vec<Vertex>,
}

impl StarBlock {
    /// `(k, vertices)`: the vertices receive the colour of `c_{i+k}`.
    pub fn colour_groups(&self) -> [(usize, Vec<Vertex>); 3] {
        let join = |parts: &[&Vec<Vertex>]| {
            sorted_dedup(parts.iter().flat_map(|p| p.iter().copied()).collect())
        };
        [
            (1, join(&[&self.d_plus[0], &self.d_plus_plus_i, &self.z1])),
            (
                2,
                join(&[&self.d_plus[1], &self.d_plus[2], &self.y_star, &self.z2]),
            ),
            (3, join(&[&self.d_plus[3], &self.d_plus_plus_i4, &self.z3])),
        ]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StarContext {
    pub blocks: Vec<StarBlock>,
    #[serde(skip)]
    star_index: BTreeMap<Vertex, usize>,
}

impl StarContext {
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The `i` with `y ∈ Y*_i`, if any.
    pub fn star_index_of(&self, y: Vertex) -> Option<usize> {
        self.star_index.get(&y).copied()
    }

    /// Every vertex in some `F(Y*_i)`, sorted.
    pub fn coloured_region(&self) -> Vec<Vertex> {
        sorted_dedup(
            self.blocks
                .iter()
                .flat_map(|b| b.f.iter().copied())
                .collect(),
        )
    }
}

pub fn compute_star(g: &Graph, ctx: &CycleContext) -> Result<StarContext, StructureError> {
    let mut out = StarContext::default();
    if ctx.t <= 9 || ctx.case != CycleCase::Short {
        return Ok(out);
    }
    let n = g.vertex_count();
    let len = ctx.len() as isize;
    let d_of = |y: Vertex, i: isize| -> Vec<Vertex> {
        let i = ctx.idx(i);
        g.neighbours(y)
            .iter()
            .copied()
            .filter(|&w| ctx.d_index(w) == Some(i))
            .collect()
    };
    let violation =
        |index: usize, reason: String| StructureError::StarStructureViolation { index, reason };

    let mut owner: Vec<Option<usize>> = vec![None; n];
    for i in 0..len {
        let y_star: Vec<Vertex> = ctx
            .y
            .iter()
            .copied()
            .filter(|&y| !d_of(y, i).is_empty() && !d_of(y, i + 4).is_empty())
            .collect();
        if y_star.is_empty() {
            continue;
        }
        let iu = ctx.idx(i);
        for off in [-2isize, 2, 6] {
            if !ctx.d_at(i + off).is_empty() {
                return Err(violation(
                    iu,
                    format!("D_{} is not empty", ctx.idx(i + off)),
                ));
            }
        }
        let d_star_i = sorted_dedup(y_star.iter().flat_map(|&y| d_of(y, i)).collect());
        let d_star_i4 = sorted_dedup(y_star.iter().flat_map(|&y| d_of(y, i + 4)).collect());

        // components of G[D_i ∪ D_{i+1} ∪ D_{i+3} ∪ D_{i+4}] meeting D*
        let window = [iu, ctx.idx(i + 1), ctx.idx(i + 3), ctx.idx(i + 4)];
        let in_window = |v: Vertex| ctx.d_index(v).is_some_and(|j| window.contains(&j));
        let mut reached = vec![false; n];
        let mut queue: VecDeque<Vertex> = d_star_i.iter().chain(&d_star_i4).copied().collect();
        for &v in &queue {
            reached[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if !reached[w] && in_window(w) {
                    reached[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let d_plus: [Vec<Vertex>; 4] =
            window.map(|j| ctx.d[j].iter().copied().filter(|&v| reached[v]).collect());
        let plus_at = |v: Vertex, slot: usize| d_plus[slot].binary_search(&v).is_ok();

        let mut z1 = Vec::new();
        let mut z2 = Vec::new();
        let mut z3 = Vec::new();
        for &z in &ctx.y {
            if y_star.binary_search(&z).is_ok() || !g.neighbours(z).iter().any(|&w| reached[w]) {
                continue;
            }
            let mut nd = Vec::new();
            let mut nt = Vec::new();
            for &w in g.neighbours(z) {
                if ctx.is_y(w) {
                    return Err(violation(
                        iu,
                        format!("vertex {z} near D+ has a Y-neighbour {w}"),
                    ));
                } else if ctx.d_index(w).is_some() {
                    nd.push(w);
                } else if let Some(j) = ctx.t_index(w) {
                    nt.push(j);
                }
            }
            let t_within = |allowed: &[isize]| {
                nt.iter()
                    .all(|&j| allowed.iter().any(|&a| ctx.idx(i + a) == j))
            };
            let outer = nd
                .iter()
                .all(|&w| matches!(ctx.d_index(w), Some(j) if j == iu || j == window[3]));
            let outer_plus = nd.iter().any(|&w| plus_at(w, 0) || plus_at(w, 3));
            let inner = nd.iter().all(|&w| plus_at(w, 1) || plus_at(w, 2));
            if outer && outer_plus && t_within(&[0, 2]) {
                z2.push(z);
            } else if inner && t_within(&[-1, 1]) {
                z1.push(z);
            } else if inner && t_within(&[1, 3]) {
                z3.push(z);
            } else {
                return Err(violation(iu, format!("vertex {z} fits no Z* window")));
            }
        }

        let near_z2 = |j: usize, slot: usize| -> Vec<Vertex> {
            ctx.d[j]
                .iter()
                .copied()
                .filter(|&v| !plus_at(v, slot) && z2.iter().any(|&z| g.has_edge(z, v)))
                .collect()
        };
        let d_plus_plus_i = near_z2(iu, 0);
        let d_plus_plus_i4 = near_z2(window[3], 3);

        let f = sorted_dedup(
            y_star
                .iter()
                .chain(z1.iter().chain(&z2).chain(&z3))
                .chain(d_plus.iter().flatten())
                .chain(&d_plus_plus_i)
                .chain(&d_plus_plus_i4)
                .copied()
                .collect(),
        );
        for &v in &f {
            if let Some(other) = owner[v] {
                return Err(violation(
                    iu,
                    format!("vertex {v} also lies in the block of index {other}"),
                ));
            }
            owner[v] = Some(iu);
        }
        for &y in &y_star {
            out.star_index.insert(y, iu);
        }
        out.blocks.push(StarBlock {
            index: iu,
            y_star,
            d_star_i,
            d_star_i4,
            d_plus,
            d_plus_plus_i,
            d_plus_plus_i4,
            z1,
            z2,
            z3,
            f,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::classify;

    /// C9 with d0 on c0, d4 on c4 and y adjacent to both.
    fn gadget() -> Graph {
        let mut e: Vec<(Vertex, Vertex)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        e.extend([(0, 9), (4, 10), (9, 11), (10, 11)]);
        Graph::from_edge_list(12, &e).unwrap()
    }

    #[test]
    fn gadget_block() {
        let g = gadget();
        let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 11).unwrap();
        let star = compute_star(&g, &ctx).unwrap();
        assert_eq!(star.blocks.len(), 1);
        let b = &star.blocks[0];
        assert_eq!(b.index, 0);
        assert_eq!(b.y_star, vec![11]);
        assert_eq!(b.d_star_i, vec![9]);
        assert_eq!(b.d_star_i4, vec![10]);
        assert_eq!(b.f, vec![9, 10, 11]);
        assert_eq!(star.star_index_of(11), Some(0));
        for off in [-2isize, 2, 6] {
            assert!(ctx.d_at(off).is_empty());
        }
    }

    #[test]
    fn empty_for_t9() {
        let g = gadget();
        let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 11).unwrap();
        let mut ctx9 = ctx.clone();
        ctx9.t = 9;
        assert!(compute_star(&g, &ctx9).unwrap().is_empty());
    }

    #[test]
    fn populated_d2_is_a_violation() {
        let mut e: Vec<(Vertex, Vertex)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        e.extend([(0, 9), (4, 10), (9, 11), (10, 11), (2, 12)]);
        let g = Graph::from_edge_list(13, &e).unwrap();
        let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 11).unwrap();
        assert!(matches!(
            compute_star(&g, &ctx),
            Err(StructureError::StarStructureViolation { .. })
        ));
    }
}
