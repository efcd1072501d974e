//! Colour lists over `{1, 2, 3}`, the update fixpoint, and reductions of
//! components of the list-size-3 subgraph.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

pub type Colour = u8;

/// A subset of `{1, 2, 3}` stored as a 3-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColourList(u8);

impl ColourList {
    pub const FULL: ColourList = ColourList(0b111);
    pub const EMPTY: ColourList = ColourList(0);

    pub fn single(c: Colour) -> ColourList {
        debug_assert!((1..=3).contains(&c));
        ColourList(1 << (c - 1))
    }

    pub fn from_colours(cs: &[Colour]) -> ColourList {
        cs.iter().fold(ColourList::EMPTY, |acc, &c| acc.with(c))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_bits(bits: u8) -> ColourList {
        ColourList(bits & 0b111)
    }

    #[inline]
    pub fn contains(self, c: Colour) -> bool {
        self.0 & (1 << (c - 1)) != 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn without(self, c: Colour) -> ColourList {
        ColourList(self.0 & !(1 << (c - 1)))
    }

    #[inline]
    pub fn with(self, c: Colour) -> ColourList {
        ColourList(self.0 | (1 << (c - 1)))
    }

    pub fn intersect(self, other: ColourList) -> ColourList {
        ColourList(self.0 & other.0)
    }

    pub fn union(self, other: ColourList) -> ColourList {
        ColourList(self.0 | other.0)
    }

    pub fn is_subset(self, other: ColourList) -> bool {
        self.0 & !other.0 == 0
    }

    /// The colour of a singleton list.
    #[inline]
    pub fn singleton(self) -> Option<Colour> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as Colour + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        (1..=3).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColourList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColourList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Palette {
    lists: Vec<ColourList>,
}

impl Palette {
    /// Every vertex gets `{1, 2, 3}`.
    pub fn full(n: usize) -> Palette {
        Palette {
            lists: vec![ColourList::FULL; n],
        }
    }

    pub fn from_lists(lists: Vec<ColourList>) -> Palette {
        Palette { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> ColourList {
        self.lists[v]
    }

    #[inline]
    pub fn set(&mut self, v: Vertex, l: ColourList) {
        self.lists[v] = l;
    }

    pub fn lists(&self) -> &[ColourList] {
        &self.lists
    }

    /// No vertex has an empty list.
    pub fn feasible(&self) -> bool {
        self.lists.iter().all(|l| !l.is_empty())
    }

    pub fn is_subpalette_of(&self, other: &Palette) -> bool {
        self.lists.len() == other.lists.len()
            && self
                .lists
                .iter()
                .zip(&other.lists)
                .all(|(a, b)| a.is_subset(*b))
    }

    /// Vertices whose list still holds all three colours.
    pub fn v3(&self) -> Vec<Vertex> {
        (0..self.len())
            .filter(|&v| self.lists[v].len() == 3)
            .collect()
    }

    pub fn max_list_len(&self) -> usize {
        self.lists.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// The colouring, if every list is a singleton.
    pub fn as_colouring(&self) -> Option<Vec<Colour>> {
        self.lists.iter().map(|l| l.singleton()).collect()
    }
}

/// `{1,2,3}` on every vertex of `g`.
pub fn full_palette(g: &Graph) -> Palette {
    Palette::full(g.vertex_count())
}

/// Propagates singleton lists into neighbours' lists until nothing changes.
pub fn update(g: &Graph, l: &Palette) -> Palette {
    let mut out = l.clone();
    update_in_place(g, &mut out);
    out
}

pub fn update_in_place(g: &Graph, l: &mut Palette) {
    let seeds: Vec<Vertex> = (0..l.len()).filter(|&v| l.get(v).len() == 1).collect();
    propagate(g, l, seeds);
}

/// Worklist propagation starting from `seeds`. The palette is assumed to be
/// updated everywhere except around the seeds.
pub fn propagate(g: &Graph, l: &mut Palette, seeds: impl IntoIterator<Item = Vertex>) {
    let mut queue: VecDeque<Vertex> = seeds.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        let Some(c) = l.get(v).singleton() else {
            continue;
        };
        for &w in g.neighbours(v) {
            let lw = l.get(w);
            if lw.contains(c) {
                let next = lw.without(c);
                l.set(w, next);
                if next.len() == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
}

/// Restricts `v` to colour `c` and propagates. Returns false if the result is
/// infeasible; the palette is then left in an unspecified infeasible state.
pub fn assign(g: &Graph, l: &mut Palette, v: Vertex, c: Colour) -> bool {
    let cur = l.get(v);
    if !cur.contains(c) {
        l.set(v, ColourList::EMPTY);
        return false;
    }
    l.set(v, ColourList::single(c));
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        let Some(cx) = l.get(x).singleton() else {
            continue;
        };
        for &w in g.neighbours(x) {
            let lw = l.get(w);
            if lw.contains(cx) {
                let next = lw.without(cx);
                if next.is_empty() {
                    l.set(w, next);
                    return false;
                }
                l.set(w, next);
                if next.len() == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    true
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PaletteError {
    #[error("vertex set is not a component of the list-size-3 subgraph")]
    NotAComponent,
    #[error("component containing vertex {0} is not bipartite")]
    NonBipartiteComponent(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionKind {
    Vertex {
        vertex: Vertex,
        colour: Colour,
    },
    Bipartite {
        side1: Vec<Vertex>,
        side2: Vec<Vertex>,
        colours: (Colour, Colour),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionPlan {
    pub component: VertexSet,
    pub kind: ReductionKind,
}

impl ReductionPlan {
    /// Checks the defining condition of a reducible vertex or bipartite
    /// subgraph against `l`.
    pub fn is_valid_for(&self, g: &Graph, l: &Palette) -> bool {
        match &self.kind {
            ReductionKind::Vertex { vertex, colour } => {
                l.get(*vertex).contains(*colour)
                    && g.neighbours(*vertex)
                        .iter()
                        .all(|&w| !l.get(w).contains(*colour))
            }
            ReductionKind::Bipartite {
                side1,
                side2,
                colours,
            } => {
                let (a1, a2) = *colours;
                a1 != a2 && side_ok(g, l, side1, side2, a1) && side_ok(g, l, side2, side1, a2)
            }
        }
    }
}

/// `alpha` is in every list of `side` and in no list of `N(side) \ other`.
fn side_ok(g: &Graph, l: &Palette, side: &[Vertex], other: &[Vertex], alpha: Colour) -> bool {
    let in_side = |v: Vertex| side.binary_search(&v).is_ok();
    let in_other = |v: Vertex| other.binary_search(&v).is_ok();
    side.iter().all(|&u| l.get(u).contains(alpha))
        && side.iter().all(|&u| {
            g.neighbours(u)
                .iter()
                .filter(|&&w| !in_side(w) && !in_other(w))
                .all(|&w| !l.get(w).contains(alpha))
        })
}

/// A reduction plan for `k`, a component of `G[V_3]`, if `k` is reducible.
///
/// Trivial components get the smallest qualifying colour, bipartite ones the
/// lexicographically smallest qualifying pair.
pub fn find_reduction(
    g: &Graph,
    l: &Palette,
    k: &VertexSet,
) -> Result<Option<ReductionPlan>, PaletteError> {
    if k.is_empty() || k.iter().any(|v| v >= l.len() || l.get(v).len() != 3) {
        return Err(PaletteError::NotAComponent);
    }
    // closed under V_3-adjacency, and connected
    for v in k.iter() {
        if g.neighbours(v)
            .iter()
            .any(|&w| l.get(w).len() == 3 && !k.contains(w))
        {
            return Err(PaletteError::NotAComponent);
        }
    }
    let side = two_colour_within(g, k)?;

    if k.len() == 1 {
        let v = k.as_slice()[0];
        return Ok((1..=3)
            .find(|&c| g.neighbours(v).iter().all(|&w| !l.get(w).contains(c)))
            .map(|colour| ReductionPlan {
                component: k.clone(),
                kind: ReductionKind::Vertex { vertex: v, colour },
            }));
    }

    let (side1, side2): (Vec<Vertex>, Vec<Vertex>) = {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, v) in k.iter().enumerate() {
            if side[i] == 1 {
                a.push(v)
            } else {
                b.push(v)
            }
        }
        (a, b)
    };
    for a1 in 1..=3 {
        if !side_ok(g, l, &side1, &side2, a1) {
            continue;
        }
        for a2 in (1..=3).filter(|&c| c != a1) {
            if side_ok(g, l, &side2, &side1, a2) {
                return Ok(Some(ReductionPlan {
                    component: k.clone(),
                    kind: ReductionKind::Bipartite {
                        side1,
                        side2,
                        colours: (a1, a2),
                    },
                }));
            }
        }
    }
    Ok(None)
}

/// BFS 2-colouring of `G[k]`, indexed by position in `k`. Errors if `G[k]`
/// is disconnected (not a component) or has an odd cycle.
fn two_colour_within(g: &Graph, k: &VertexSet) -> Result<Vec<u8>, PaletteError> {
    let pos = |v: Vertex| k.as_slice().binary_search(&v).ok();
    let mut side = vec![0u8; k.len()];
    side[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        let v = k.as_slice()[i];
        for &w in g.neighbours(v) {
            if let Some(j) = pos(w) {
                if side[j] == 0 {
                    side[j] = 3 - side[i];
                    reached += 1;
                    queue.push_back(j);
                } else if side[j] == side[i] {
                    return Err(PaletteError::NonBipartiteComponent(v));
                }
            }
        }
    }
    if reached != k.len() {
        return Err(PaletteError::NotAComponent);
    }
    Ok(side)
}

/// Sets the listed vertices to their planned singleton lists.
pub fn apply_reduction(l: &Palette, plan: &ReductionPlan) -> Palette {
    apply_reductions(l, std::slice::from_ref(plan))
}

pub fn apply_reductions(l: &Palette, plans: &[ReductionPlan]) -> Palette {
    let mut out = l.clone();
    for plan in plans {
        match &plan.kind {
            ReductionKind::Vertex { vertex, colour } => {
                out.set(*vertex, ColourList::single(*colour))
            }
            ReductionKind::Bipartite {
                side1,
                side2,
                colours,
            } => {
                for &u in side1 {
                    out.set(u, ColourList::single(colours.0));
                }
                for &u in side2 {
                    out.set(u, ColourList::single(colours.1));
                }
            }
        }
    }
    out
}

/// Components of `G[V_3(G, L)]`, each sorted, ordered by smallest vertex.
pub fn v3_components(g: &Graph, l: &Palette) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let in_v3 = |v: Vertex| l.get(v).len() == 3;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || !in_v3(s) {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbours(v) {
                if !seen[w] && in_v3(w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn lists(ls: &[&[Colour]]) -> Palette {
        Palette::from_lists(ls.iter().map(|c| ColourList::from_colours(c)).collect())
    }

    #[test]
    fn colour_list_basics() {
        let l = ColourList::from_colours(&[1, 3]);
        assert_eq!(l.len(), 2);
        assert!(l.contains(3) && !l.contains(2));
        assert_eq!(l.without(1).singleton(), Some(3));
        assert_eq!(ColourList::FULL.iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn full_palette_examples() {
        let p = full_palette(&complete(3));
        assert!(p.lists().iter().all(|&l| l == ColourList::FULL));
        assert!(full_palette(&Graph::empty(0)).is_empty());
    }

    #[test]
    fn update_path_example() {
        let g = path(4);
        let l = lists(&[&[1], &[1, 2], &[1, 2], &[1, 2]]);
        let u = update(&g, &l);
        assert_eq!(u.as_colouring(), Some(vec![1, 2, 1, 2]));
    }

    #[test]
    fn update_without_singletons_is_identity() {
        let g = cycle(5);
        let l = full_palette(&g);
        assert_eq!(update(&g, &l), l);
    }

    #[test]
    fn update_conflict_empties_list() {
        let g = path(2);
        let u = update(&g, &lists(&[&[1], &[1]]));
        assert!(!u.feasible());
    }

    #[test]
    fn assign_detects_conflict() {
        let g = cycle(3);
        let mut l = lists(&[&[1, 2], &[1, 2], &[1, 2, 3]]);
        assert!(assign(&g, &mut l, 2, 3));
        assert!(!assign(&g, &mut l.clone(), 2, 1));
        let mut m = lists(&[&[1, 2], &[1, 2], &[1, 2]]);
        assert!(!assign(&g, &mut m, 0, 1));
    }

    #[test]
    fn vertex_reduction() {
        // star centre 0 with leaves missing colour 2
        let g = star(3);
        let l = lists(&[&[1, 2, 3], &[1, 3], &[1, 3], &[3]]);
        let plan = find_reduction(&g, &l, &vec![0].into()).unwrap().unwrap();
        assert_eq!(
            plan.kind,
            ReductionKind::Vertex {
                vertex: 0,
                colour: 2
            }
        );
        assert!(plan.is_valid_for(&g, &l));
        let r = apply_reduction(&l, &plan);
        assert_eq!(r.get(0), ColourList::single(2));
        assert_eq!(r.get(1), l.get(1));
    }

    #[test]
    fn bipartite_reduction() {
        // 0 - 1 is the component; 2 hangs off 0 and lacks 1, 3 hangs off 1 and lacks 2
        let g = Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let l = lists(&[&[1, 2, 3], &[1, 2, 3], &[2, 3], &[1, 3]]);
        let plan = find_reduction(&g, &l, &vec![0, 1].into()).unwrap().unwrap();
        assert_eq!(
            plan.kind,
            ReductionKind::Bipartite {
                side1: vec![0],
                side2: vec![1],
                colours: (1, 2)
            }
        );
        let r = apply_reduction(&l, &plan);
        assert_eq!(
            (r.get(0), r.get(1)),
            (ColourList::single(1), ColourList::single(2))
        );
    }

    #[test]
    fn irreducible_vertex() {
        let g = path(3);
        let l = lists(&[&[1, 2], &[1, 2, 3], &[3]]);
        assert_eq!(find_reduction(&g, &l, &vec![1].into()).unwrap(), None);
    }

    #[test]
    fn reduction_errors() {
        let g = cycle(3);
        let l = full_palette(&g);
        assert_eq!(
            find_reduction(&g, &l, &vec![0].into()),
            Err(PaletteError::NotAComponent)
        );
        assert!(matches!(
            find_reduction(&g, &l, &vec![0, 1, 2].into()),
            Err(PaletteError::NonBipartiteComponent(_))
        ));
        let p = Graph::empty(2);
        assert_eq!(
            find_reduction(&p, &full_palette(&p), &vec![0, 1].into()),
            Err(PaletteError::NotAComponent)
        );
    }

    #[test]
    fn empty_plan_set_is_identity() {
        let l = full_palette(&cycle(4));
        assert_eq!(apply_reductions(&l, &[]), l);
    }

    #[test]
    fn v3_components_of_path() {
        let g = path(5);
        let l = lists(&[&[1, 2, 3], &[1, 2, 3], &[1], &[1, 2, 3], &[1, 2, 3]]);
        let comps = v3_components(&g, &l);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].as_slice(), &[3, 4]);
    }
}
