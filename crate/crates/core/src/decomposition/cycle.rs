use serde::Serialize;

use super::StructureError;
use crate::graph::{Graph, Vertex};
use crate::recognizers::shortest_odd_cycle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleCase {
    /// `|C| = t - 2`.
    Short,
    /// `|C| = t`.
    Long,
}

/// Position of a vertex relative to the base cycle. Indices are cycle
/// positions, so `D(i)` means "adjacent to `c_i` only".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "index")]
pub enum VertexClass {
    Cycle(usize),
    D(usize),
    T(usize),
    #[serde(rename = "T'")]
    TPrime(usize),
    S(usize),
    Y,
}

/// A component of `G[Y]` with its bipartition; `side1` holds the smallest
/// vertex. Trivial components have an empty `side2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YComponent {
    pub vertices: Vec<Vertex>,
    pub side1: Vec<Vertex>,
    pub side2: Vec<Vertex>,
}

impl YComponent {
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn side(&self, j: usize) -> &[Vertex] {
        if j == 1 {
            &self.side1
        } else {
            &self.side2
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleContext {
    pub t: usize,
    pub case: CycleCase,
    pub cycle: Vec<Vertex>,
    #[serde(skip)]
    pub class: Vec<VertexClass>,
    pub d: Vec<Vec<Vertex>>,
    #[serde(rename = "t_sets")]
    pub tt: Vec<Vec<Vertex>>,
    #[serde(rename = "t_prime")]
    pub tp: Vec<Vec<Vertex>>,
    pub s: Vec<Vec<Vertex>>,
    pub y: Vec<Vertex>,
    pub y_components: Vec<YComponent>,
    /// For each vertex of `Y`, the index of its component in `y_components`.
    #[serde(skip)]
    pub y_component_of: Vec<Option<usize>>,
}

impl CycleContext {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Cycle index `i` reduced into `0..|C|`.
    pub fn idx(&self, i: isize) -> usize {
        i.rem_euclid(self.cycle.len() as isize) as usize
    }

    pub fn c(&self, i: isize) -> Vertex {
        self.cycle[self.idx(i)]
    }

    pub fn d_at(&self, i: isize) -> &[Vertex] {
        &self.d[self.idx(i)]
    }

    pub fn t_at(&self, i: isize) -> &[Vertex] {
        &self.tt[self.idx(i)]
    }

    pub fn tp_at(&self, i: isize) -> &[Vertex] {
        &self.tp[self.idx(i)]
    }

    pub fn s_at(&self, i: isize) -> &[Vertex] {
        &self.s[self.idx(i)]
    }

    pub fn is_y(&self, v: Vertex) -> bool {
        self.class[v] == VertexClass::Y
    }

    pub fn in_cycle(&self, v: Vertex) -> bool {
        matches!(self.class[v], VertexClass::Cycle(_))
    }

    /// Neighbour of the cycle (not on it, not in `Y`).
    pub fn in_nc(&self, v: Vertex) -> bool {
        !self.in_cycle(v) && !self.is_y(v)
    }

    pub fn d_index(&self, v: Vertex) -> Option<usize> {
        match self.class[v] {
            VertexClass::D(i) => Some(i),
            _ => None,
        }
    }

    pub fn t_index(&self, v: Vertex) -> Option<usize> {
        match self.class[v] {
            VertexClass::T(i) => Some(i),
            _ => None,
        }
    }

    /// Index `i` for a vertex of `T'_i ∪ S_i`.
    pub fn tps_index(&self, v: Vertex) -> Option<usize> {
        match self.class[v] {
            VertexClass::TPrime(i) | VertexClass::S(i) => Some(i),
            _ => None,
        }
    }

    pub fn cycle_index(&self, v: Vertex) -> Option<usize> {
        match self.class[v] {
            VertexClass::Cycle(i) => Some(i),
            _ => None,
        }
    }
}

/// Anchors `g` on a shortest odd cycle and classifies every vertex around it.
pub fn find_base_cycle(g: &Graph, t: usize) -> Result<CycleContext, StructureError> {
    let cycle = shortest_odd_cycle(g).ok_or(StructureError::Bipartite)?;
    if cycle.len() != t - 2 && cycle.len() != t {
        return Err(StructureError::UnexpectedOddGirth { len: cycle.len() });
    }
    classify(g, &cycle, t)
}

/// Classifies all vertices relative to the induced odd cycle `cycle`.
pub fn classify(g: &Graph, cycle: &[Vertex], t: usize) -> Result<CycleContext, StructureError> {
    let len = cycle.len();
    let case = if len == t - 2 {
        CycleCase::Short
    } else if len == t {
        CycleCase::Long
    } else {
        return Err(StructureError::UnexpectedOddGirth { len });
    };
    let n = g.vertex_count();
    let mut class: Vec<Option<VertexClass>> = vec![None; n];
    for (i, &c) in cycle.iter().enumerate() {
        class[c] = Some(VertexClass::Cycle(i));
    }

    let mut d = vec![Vec::new(); len];
    let mut tt = vec![Vec::new(); len];
    let mut tp = vec![Vec::new(); len];
    let mut s = vec![Vec::new(); len];
    for v in 0..n {
        if class[v].is_some() {
            continue;
        }
        let mut on_cycle: Vec<usize> = g
            .neighbours(v)
            .iter()
            .filter_map(|&w| match class[w] {
                Some(VertexClass::Cycle(i)) => Some(i),
                _ => None,
            })
            .collect();
        if on_cycle.is_empty() {
            continue;
        }
        on_cycle.sort_unstable();
        let found = match_pattern(&on_cycle, len, case)
            .ok_or(StructureError::UnclassifiableNeighbour { vertex: v })?;
        match found {
            VertexClass::D(i) => d[i].push(v),
            VertexClass::T(i) => tt[i].push(v),
            VertexClass::TPrime(i) => tp[i].push(v),
            VertexClass::S(i) => s[i].push(v),
            _ => unreachable!(),
        }
        class[v] = Some(found);
    }

    let mut y = Vec::new();
    for v in 0..n {
        if class[v].is_some() {
            continue;
        }
        let near = g.neighbours(v).iter().any(|&w| {
            matches!(
                class[w],
                Some(
                    VertexClass::D(_)
                        | VertexClass::T(_)
                        | VertexClass::TPrime(_)
                        | VertexClass::S(_)
                )
            )
        });
        if !near {
            return Err(StructureError::DistanceThreeVertex { vertex: v });
        }
        y.push(v);
    }
    for &v in &y {
        class[v] = Some(VertexClass::Y);
    }
    let class: Vec<VertexClass> = class.into_iter().map(|c| c.unwrap()).collect();

    // every indexed set must be stable
    for v in 0..n {
        if matches!(class[v], VertexClass::Cycle(_) | VertexClass::Y) {
            continue;
        }
        if let Some(&w) = g.neighbours(v).iter().find(|&&w| class[w] == class[v]) {
            return Err(StructureError::UnstableClass { u: v, v: w });
        }
    }

    let mut ctx = CycleContext {
        t,
        case,
        cycle: cycle.to_vec(),
        class,
        d,
        tt,
        tp,
        s,
        y,
        y_components: Vec::new(),
        y_component_of: vec![None; n],
    };
    build_y_components(g, &mut ctx)?;
    Ok(ctx)
}

fn match_pattern(idx: &[usize], len: usize, case: CycleCase) -> Option<VertexClass> {
    let diff = |a: usize, b: usize| (b + len - a) % len;
    match (idx, case) {
        (&[i], CycleCase::Short) => Some(VertexClass::D(i)),
        (&[a, b], _) => {
            let d = diff(a, b);
            match case {
                _ if d == 2 => Some(VertexClass::T(a)),
                _ if d == len - 2 => Some(VertexClass::T(b)),
                CycleCase::Long if d == 4 => Some(VertexClass::TPrime(a)),
                CycleCase::Long if d == len - 4 => Some(VertexClass::TPrime(b)),
                _ => None,
            }
        }
        (&[_, _, _], CycleCase::Long) => idx.iter().copied().find_map(|i| {
            let mut want = [i, (i + 2) % len, (i + 4) % len];
            want.sort_unstable();
            (want == idx).then_some(VertexClass::S(i))
        }),
        _ => None,
    }
}

/// Components of `G[Y]`, their bipartitions, and the check that each side
/// sees a single neighbourhood outside `Y`.
fn build_y_components(g: &Graph, ctx: &mut CycleContext) -> Result<(), StructureError> {
    let n = g.vertex_count();
    let mut side = vec![0u8; n];
    for si in 0..ctx.y.len() {
        let s = ctx.y[si];
        if side[s] != 0 {
            continue;
        }
        let comp_id = ctx.y_components.len();
        side[s] = 1;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            ctx.y_component_of[v] = Some(comp_id);
            for &w in g.neighbours(v) {
                if !ctx.is_y(w) {
                    continue;
                }
                if side[w] == 0 {
                    side[w] = 3 - side[v];
                    comp.push(w);
                } else if side[w] == side[v] {
                    return Err(StructureError::NonBipartiteYComponent { vertex: v });
                }
            }
        }
        comp.sort_unstable();
        let (side1, side2): (Vec<Vertex>, Vec<Vertex>) =
            comp.iter().partition(|&&v| side[v] == side[s]);
        for part in [&side1, &side2] {
            if let Some((&first, rest)) = part.split_first() {
                let base = outside_y(g, ctx, first);
                if let Some(&other) = rest.iter().find(|&&v| outside_y(g, ctx, v) != base) {
                    return Err(StructureError::SideNeighbourhoodMismatch { u: first, v: other });
                }
            }
        }
        ctx.y_components.push(YComponent {
            vertices: comp,
            side1,
            side2,
        });
    }
    Ok(())
}

fn outside_y<'a>(g: &'a Graph, ctx: &'a CycleContext, v: Vertex) -> Vec<Vertex> {
    g.neighbours(v)
        .iter()
        .copied()
        .filter(|&w| !ctx.is_y(w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn with_extra(base: usize, extra: &[(Vertex, Vertex)], added: usize) -> Graph {
        let mut edges: Vec<(Vertex, Vertex)> = (0..base).map(|i| (i, (i + 1) % base)).collect();
        edges.extend_from_slice(extra);
        Graph::from_edge_list(base + added, &edges).unwrap()
    }

    #[test]
    fn c7_is_short() {
        let ctx = find_base_cycle(&cycle(7), 9).unwrap();
        assert_eq!(ctx.case, CycleCase::Short);
        assert_eq!(ctx.cycle.len(), 7);
        assert!(ctx.y.is_empty());
    }

    #[test]
    fn c9_is_long() {
        assert_eq!(find_base_cycle(&cycle(9), 9).unwrap().case, CycleCase::Long);
    }

    #[test]
    fn c5_has_wrong_girth() {
        assert_eq!(
            find_base_cycle(&cycle(5), 9).unwrap_err(),
            StructureError::UnexpectedOddGirth { len: 5 }
        );
    }

    #[test]
    fn pendant_is_d() {
        let g = with_extra(7, &[(0, 7)], 1);
        let ctx = classify(&g, &[0, 1, 2, 3, 4, 5, 6], 9).unwrap();
        assert_eq!(ctx.class[7], VertexClass::D(0));
        assert_eq!(ctx.d[0], vec![7]);
    }

    #[test]
    fn two_apart_is_t() {
        let g = with_extra(7, &[(0, 7), (2, 7)], 1);
        let ctx = classify(&g, &[0, 1, 2, 3, 4, 5, 6], 9).unwrap();
        assert_eq!(ctx.class[7], VertexClass::T(0));
        // wrapping: neighbours c5 and c0 give T_5
        let g = with_extra(7, &[(5, 7), (0, 7)], 1);
        let ctx = classify(&g, &[0, 1, 2, 3, 4, 5, 6], 9).unwrap();
        assert_eq!(ctx.class[7], VertexClass::T(5));
    }

    #[test]
    fn consecutive_neighbours_rejected() {
        let g = with_extra(7, &[(0, 7), (1, 7)], 1);
        assert_eq!(
            classify(&g, &[0, 1, 2, 3, 4, 5, 6], 9).unwrap_err(),
            StructureError::UnclassifiableNeighbour { vertex: 7 }
        );
    }

    #[test]
    fn long_patterns() {
        let g = with_extra(9, &[(0, 9), (4, 9), (1, 10), (3, 10), (5, 10)], 2);
        let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 9).unwrap();
        assert_eq!(ctx.class[9], VertexClass::TPrime(0));
        assert_eq!(ctx.class[10], VertexClass::S(1));
        // a pendant on the long cycle is not a legal pattern
        let g = with_extra(9, &[(0, 9)], 1);
        assert!(classify(&g, &(0..9).collect::<Vec<_>>(), 9).is_err());
    }

    #[test]
    fn y_and_distance_three() {
        let g = with_extra(7, &[(0, 7), (7, 8)], 2);
        let ctx = classify(&g, &(0..7).collect::<Vec<_>>(), 9).unwrap();
        assert_eq!(ctx.y, vec![8]);
        assert_eq!(ctx.y_components.len(), 1);
        let g = with_extra(7, &[(0, 7), (7, 8), (8, 9)], 3);
        assert_eq!(
            classify(&g, &(0..7).collect::<Vec<_>>(), 9).unwrap_err(),
            StructureError::DistanceThreeVertex { vertex: 9 }
        );
    }
}
