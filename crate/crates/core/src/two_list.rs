//! List colouring with lists of size at most two, via 2-SAT.

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::palette::{Colour, Palette};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoListError {
    #[error("vertex {0} has a list with three colours")]
    ListTooLarge(Vertex),
    #[error("vertex {0} has an empty list")]
    EmptyList(Vertex),
}

/// A literal: variable index plus polarity. Node `2v` of the implication
/// graph is `!x_v`, node `2v + 1` is `x_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit(2 * var as u32 + 1)
    }
    pub fn neg(var: usize) -> Lit {
        Lit(2 * var as u32)
    }
    pub fn var(self) -> usize {
        (self.0 / 2) as usize
    }
    pub fn is_pos(self) -> bool {
        self.0 & 1 == 1
    }
    #[must_use]
    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }
    fn node(self) -> usize {
        self.0 as usize
    }
}

/// What a variable stands for: `vertex` takes `first` when true and `second`
/// when false.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarMeaning {
    pub vertex: Vertex,
    pub first: Colour,
    pub second: Colour,
}

#[derive(Debug, Clone, Default)]
pub struct TwoSatInstance {
    pub var_count: usize,
    pub clauses: Vec<(Lit, Lit)>,
    pub meaning: Vec<Option<VarMeaning>>,
}

impl TwoSatInstance {
    pub fn new_var(&mut self, meaning: Option<VarMeaning>) -> usize {
        self.var_count += 1;
        self.meaning.push(meaning);
        self.var_count - 1
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        self.clauses.push((a, b));
    }

    /// Checks a model against every clause.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        let val = |l: Lit| model[l.var()] == l.is_pos();
        self.clauses.iter().all(|&(a, b)| val(a) || val(b))
    }
}

/// How a vertex's colour is represented in the instance.
#[derive(Clone, Copy)]
enum Slot {
    Fixed(Colour),
    Var(usize, Colour, Colour),
}

impl Slot {
    /// The literal meaning "this vertex takes colour `c`": `None` if it never
    /// can, `Some(None)` if it always does.
    fn takes(self, c: Colour) -> Option<Option<Lit>> {
        match self {
            Slot::Fixed(f) => (f == c).then_some(None),
            Slot::Var(v, a, _) if a == c => Some(Some(Lit::pos(v))),
            Slot::Var(v, _, b) if b == c => Some(Some(Lit::neg(v))),
            Slot::Var(..) => None,
        }
    }
}

/// Encodes the list-colouring instance `(g, l)` as 2-SAT. One variable per
/// two-colour list, true meaning the smaller colour.
pub fn encode(g: &Graph, l: &Palette) -> Result<TwoSatInstance, TwoListError> {
    let mut inst = TwoSatInstance::default();
    let mut slots = Vec::with_capacity(l.len());
    for v in 0..l.len() {
        let list = l.get(v);
        let slot = match list.len() {
            0 => return Err(TwoListError::EmptyList(v)),
            1 => Slot::Fixed(list.singleton().unwrap()),
            2 => {
                let mut it = list.iter();
                let (first, second) = (it.next().unwrap(), it.next().unwrap());
                let var = inst.new_var(Some(VarMeaning {
                    vertex: v,
                    first,
                    second,
                }));
                Slot::Var(var, first, second)
            }
            _ => return Err(TwoListError::ListTooLarge(v)),
        };
        slots.push(slot);
    }
    let mut contradiction = false;
    for (u, v) in g.edges() {
        for c in l.get(u).intersect(l.get(v)).iter() {
            let (Some(a), Some(b)) = (slots[u].takes(c), slots[v].takes(c)) else {
                continue;
            };
            match (a, b) {
                (Some(a), Some(b)) => inst.add_clause(a.negate(), b.negate()),
                (Some(a), None) | (None, Some(a)) => inst.add_clause(a.negate(), a.negate()),
                // two equal singletons on an edge: add one unsatisfiable variable
                (None, None) if !contradiction => {
                    contradiction = true;
                    let z = inst.new_var(None);
                    inst.add_clause(Lit::pos(z), Lit::pos(z));
                    inst.add_clause(Lit::neg(z), Lit::neg(z));
                }
                (None, None) => {}
            }
        }
    }
    Ok(inst)
}

/// Implication-graph SCC decision procedure. Returns a model if the instance
/// is satisfiable. Tarjan's algorithm runs with an explicit stack.
pub fn solve_two_sat(inst: &TwoSatInstance) -> Option<Vec<bool>> {
    let nodes = 2 * inst.var_count;
    // CSR adjacency: clause (a or b) gives !a -> b and !b -> a
    let mut deg = vec![0u32; nodes + 1];
    for &(a, b) in &inst.clauses {
        deg[a.negate().node()] += 1;
        deg[b.negate().node()] += 1;
    }
    let mut start = vec![0usize; nodes + 1];
    for i in 0..nodes {
        start[i + 1] = start[i] + deg[i] as usize;
    }
    let mut fill = start.clone();
    let mut succ = vec![0u32; start[nodes]];
    for &(a, b) in &inst.clauses {
        let from = a.negate().node();
        succ[fill[from]] = b.node() as u32;
        fill[from] += 1;
        let from = b.negate().node();
        succ[fill[from]] = a.node() as u32;
        fill[from] += 1;
    }

    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; nodes];
    let mut low = vec![0u32; nodes];
    let mut comp = vec![UNSEEN; nodes];
    let mut on_stack = vec![false; nodes];
    let mut scc_stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_comp = 0u32;

    for root in 0..nodes {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root as u32, start[root]));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        scc_stack.push(root as u32);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            let v = v as usize;
            if *edge < start[v + 1] {
                let w = succ[*edge] as usize;
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    scc_stack.push(w as u32);
                    on_stack[w] = true;
                    call.push((w as u32, start[w]));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    let p = parent as usize;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = scc_stack.pop().unwrap() as usize;
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }

    // Tarjan numbers components in reverse topological order, so a literal
    // is true when its component comes earlier than its negation's.
    let mut model = Vec::with_capacity(inst.var_count);
    for var in 0..inst.var_count {
        let (f, t) = (comp[Lit::neg(var).node()], comp[Lit::pos(var).node()]);
        if f == t {
            return None;
        }
        model.push(t < f);
    }
    Some(model)
}

/// A colouring of `g` choosing from the lists of `l`, if one exists.
pub fn two_list_colour(g: &Graph, l: &Palette) -> Result<Option<Vec<Colour>>, TwoListError> {
    let inst = encode(g, l)?;
    let Some(model) = solve_two_sat(&inst) else {
        return Ok(None);
    };
    let mut colours: Vec<Colour> = (0..l.len())
        .map(|v| l.get(v).singleton().unwrap_or(0))
        .collect();
    for (var, m) in inst.meaning.iter().enumerate() {
        if let Some(m) = m {
            colours[m.vertex] = if model[var] { m.first } else { m.second };
        }
    }
    Ok(Some(colours))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::palette::ColourList;

    fn uniform(n: usize, cs: &[Colour]) -> Palette {
        Palette::from_lists(vec![ColourList::from_colours(cs); n])
    }

    fn proper(g: &Graph, c: &[Colour]) -> bool {
        g.edges().all(|(u, v)| c[u] != c[v])
    }

    #[test]
    fn encode_edge_two_lists() {
        let inst = encode(&path(2), &uniform(2, &[1, 2])).unwrap();
        assert_eq!(inst.var_count, 2);
        assert_eq!(inst.clauses.len(), 2);
    }

    #[test]
    fn encode_isolated_singleton() {
        let inst = encode(&Graph::empty(1), &uniform(1, &[3])).unwrap();
        assert_eq!(inst.var_count, 0);
        assert_eq!(solve_two_sat(&inst), Some(vec![]));
    }

    #[test]
    fn encode_conflicting_singletons_unsat() {
        let inst = encode(&path(2), &uniform(2, &[1])).unwrap();
        assert_eq!(solve_two_sat(&inst), None);
    }

    #[test]
    fn encode_errors() {
        assert_eq!(
            encode(&path(2), &uniform(2, &[1, 2, 3])).unwrap_err(),
            TwoListError::ListTooLarge(0)
        );
        assert_eq!(
            encode(&path(2), &uniform(2, &[])).unwrap_err(),
            TwoListError::EmptyList(0)
        );
    }

    #[test]
    fn contradictory_unit_clauses() {
        let mut inst = TwoSatInstance::default();
        let x = inst.new_var(None);
        inst.add_clause(Lit::pos(x), Lit::pos(x));
        inst.add_clause(Lit::neg(x), Lit::neg(x));
        assert_eq!(solve_two_sat(&inst), None);
    }

    #[test]
    fn empty_instance_all_false() {
        let mut inst = TwoSatInstance::default();
        for _ in 0..4 {
            inst.new_var(None);
        }
        assert_eq!(solve_two_sat(&inst), Some(vec![false; 4]));
    }

    #[test]
    fn implication_chain() {
        let mut inst = TwoSatInstance::default();
        let (x, y, z) = (inst.new_var(None), inst.new_var(None), inst.new_var(None));
        inst.add_clause(Lit::neg(x), Lit::pos(y));
        inst.add_clause(Lit::neg(y), Lit::pos(z));
        inst.add_clause(Lit::pos(x), Lit::pos(x));
        assert_eq!(solve_two_sat(&inst), Some(vec![true, true, true]));
    }

    #[test]
    fn c4_alternates() {
        let g = cycle(4);
        let c = two_list_colour(&g, &uniform(4, &[1, 2])).unwrap().unwrap();
        assert!(proper(&g, &c));
    }

    #[test]
    fn odd_cycle_two_lists() {
        let g = cycle(7);
        assert_eq!(two_list_colour(&g, &uniform(7, &[1, 2])).unwrap(), None);
        let mut l = uniform(7, &[1, 2]);
        l.set(3, ColourList::single(3));
        let c = two_list_colour(&g, &l).unwrap().unwrap();
        assert!(proper(&g, &c));
        assert_eq!(c[3], 3);
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let g = path(n);
        let mut l = uniform(n, &[1, 2]);
        l.set(0, ColourList::single(1));
        let c = two_list_colour(&g, &l).unwrap().unwrap();
        assert!(proper(&g, &c));
    }
}
