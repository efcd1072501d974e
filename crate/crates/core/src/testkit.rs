//! Oracles and instance generators used for cross-validation.
//!
//! The oracles are deliberately independent of the structural solver: plain
//! backtracking over colours, with no knowledge of cycles or palettes beyond
//! list membership.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::palette::{assign, Colour, ColourList, Palette};
use crate::recognizers::{in_class, DEFAULT_NODE_BUDGET};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TestkitError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    GraphTooLarge { n: usize, cap: usize },
}

/// Exact list 3-colouring by backtracking in degeneracy order, propagating
/// singleton lists after every choice. `lists` defaults to `{1,2,3}`.
pub fn brute_force_colour(
    g: &Graph,
    lists: Option<&Palette>,
) -> Result<Option<Vec<Colour>>, TestkitError> {
    brute_force_colour_capped(g, lists, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_colour_capped(
    g: &Graph,
    lists: Option<&Palette>,
    cap: usize,
) -> Result<Option<Vec<Colour>>, TestkitError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(TestkitError::GraphTooLarge { n, cap });
    }
    let mut start = lists.cloned().unwrap_or_else(|| Palette::full(n));
    // singletons given up front must be consistent
    for v in 0..n {
        if let Some(c) = start.get(v).singleton() {
            if !assign(g, &mut start, v, c) {
                return Ok(None);
            }
        }
    }
    if !start.feasible() {
        return Ok(None);
    }
    let order = degeneracy_order(g);
    Ok(backtrack(g, &order, 0, start).and_then(|p| p.as_colouring()))
}

fn backtrack(g: &Graph, order: &[Vertex], depth: usize, l: Palette) -> Option<Palette> {
    let Some(&v) = order.get(depth) else {
        return Some(l);
    };
    for c in l.get(v).iter() {
        let mut next = l.clone();
        if assign(g, &mut next, v, c) {
            if let Some(done) = backtrack(g, order, depth + 1, next) {
                return Some(done);
            }
        }
    }
    None
}

/// Reverse smallest-last order: high-core vertices first.
pub fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// Every proper colouring of `g` from the lists of `l`, by naive enumeration
/// in vertex order. Exponential; meant for `n <= 12`.
pub fn all_list_colourings(g: &Graph, l: &Palette) -> Vec<Vec<Colour>> {
    fn go(g: &Graph, l: &Palette, cur: &mut Vec<Colour>, out: &mut Vec<Vec<Colour>>) {
        let v = cur.len();
        if v == l.len() {
            out.push(cur.clone());
            return;
        }
        for c in l.get(v).iter() {
            if g.neighbours(v).iter().all(|&w| w >= v || cur[w] != c) {
                cur.push(c);
                go(g, l, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, l, &mut Vec::with_capacity(l.len()), &mut out);
    out
}

/// Whether some proper colouring from the lists exists, by the same naive
/// enumeration as [`all_list_colourings`] but stopping at the first hit.
pub fn list_colourable(g: &Graph, l: &Palette) -> bool {
    fn go(g: &Graph, l: &Palette, cur: &mut Vec<Colour>) -> bool {
        let v = cur.len();
        if v == l.len() {
            return true;
        }
        for c in l.get(v).iter() {
            if g.neighbours(v).iter().all(|&w| w >= v || cur[w] != c) {
                cur.push(c);
                if go(g, l, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    go(g, l, &mut Vec::with_capacity(l.len()))
}

/// A uniformly random palette: each list a random non-empty subset with
/// probability `1 - p_full`, the full list otherwise.
pub fn random_palette(rng: &mut impl Rng, n: usize, p_full: f64) -> Palette {
    Palette::from_lists(
        (0..n)
            .map(|_| {
                if rng.gen_bool(p_full) {
                    ColourList::FULL
                } else {
                    ColourList::from_bits(rng.gen_range(1..=7))
                }
            })
            .collect(),
    )
}

/// `G(n, p)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("generated edges are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Random,
    StructuredCyclePendants,
    StructuredTVertices,
    StarGadget,
}

impl GenKind {
    pub const ALL: [GenKind; 4] = [
        GenKind::Random,
        GenKind::StructuredCyclePendants,
        GenKind::StructuredTVertices,
        GenKind::StarGadget,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Random => "random",
            GenKind::StructuredCyclePendants => "cycle-pendants",
            GenKind::StructuredTVertices => "t-vertices",
            GenKind::StarGadget => "star-gadget",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<GenKind, String> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown generator kind `{s}`"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorConfig {
    /// Vertex budget; structured kinds stay at or below it.
    pub n: usize,
    /// Edge probability for `Random`; decoration density for the others.
    pub p: f64,
    pub t: usize,
    pub seed: u64,
    pub max_attempts: u32,
    pub kind: GenKind,
    /// Edges always present in `Random` samples.
    pub seed_edges: Vec<(Vertex, Vertex)>,
    pub node_budget: u64,
}

impl GeneratorConfig {
    pub fn new(kind: GenKind, n: usize, t: usize, seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            n,
            p: 0.3,
            t,
            seed,
            max_attempts: 200,
            kind,
            seed_edges: Vec::new(),
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub attempt: u32,
}

/// The PRNG stream for one attempt.
pub fn attempt_rng(seed: u64, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    rng
}

/// Samples candidates until one lies in the class, or attempts run out.
pub fn gen(config: &GeneratorConfig) -> Option<Generated> {
    (0..config.max_attempts).find_map(|attempt| {
        let mut rng = attempt_rng(config.seed, attempt);
        let g = candidate(config, &mut rng)?;
        let report = in_class(&g, config.t, config.node_budget).ok()?;
        report.is_member.then_some(Generated { graph: g, attempt })
    })
}

fn candidate(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Option<Graph> {
    match config.kind {
        GenKind::Random => {
            let mut b = Builder::new(config.n);
            for &(u, v) in &config.seed_edges {
                b.edge(u, v);
            }
            for u in 0..config.n {
                for v in u + 1..config.n {
                    if rng.gen_bool(config.p) {
                        b.edge(u, v);
                    }
                }
            }
            let g = b.build();
            let largest = g
                .components()
                .into_iter()
                .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))?;
            Some(g.induced_subgraph(&largest).0)
        }
        GenKind::StructuredCyclePendants => {
            let long = rng.gen_bool(0.3);
            Some(cycle_pendants(config, long, rng))
        }
        GenKind::StructuredTVertices => Some(t_vertices(config, rng)),
        GenKind::StarGadget => (config.t > 9).then(|| star_gadget(config, rng)),
    }
}

/// Incremental edge collection.
pub struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    pub fn new(n: usize) -> Builder {
        Builder {
            n,
            edges: Vec::new(),
        }
    }

    pub fn cycle(len: usize) -> Builder {
        let mut b = Builder::new(len);
        for i in 0..len {
            b.edge(i, (i + 1) % len);
        }
        b
    }

    pub fn vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    pub fn edge(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u, v));
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn build(&self) -> Graph {
        Graph::from_edge_list(self.n, &self.edges).expect("builder edges are valid")
    }
}

/// Base cycle of length `t - 2` or `t` with depth-limited trees hanging off
/// classified attachment vertices.
fn cycle_pendants(config: &GeneratorConfig, long: bool, rng: &mut ChaCha8Rng) -> Graph {
    let t = config.t;
    let len = if long { t } else { t - 2 };
    let mut b = Builder::cycle(len);
    let target = rng.gen_range(len..=config.n.max(len));
    let mut attach: Vec<Vertex> = Vec::new();
    while b.len() < target {
        let i = rng.gen_range(0..len);
        let a = b.vertex();
        if long {
            // a D-vertex would close an induced P_t along the cycle
            let pattern: &[usize] = [&[0, 2][..], &[0, 4], &[0, 2, 4]].choose(rng).unwrap();
            for &off in pattern {
                b.edge(a, (i + off) % len);
            }
        } else {
            b.edge(a, i);
            if rng.gen_bool(0.3) {
                b.edge(a, (i + 2) % len);
            }
        }
        attach.push(a);
        if b.len() >= target || !rng.gen_bool(config.p.clamp(0.05, 0.95)) {
            continue;
        }
        let y = b.vertex();
        b.edge(y, a);
        // sometimes share the second-level vertex between two attachments
        if attach.len() > 1 && rng.gen_bool(0.5) {
            let other = *attach[..attach.len() - 1].choose(rng).unwrap();
            b.edge(y, other);
        }
        // rarely go one level deeper so that preprocessing has work to do
        if b.len() < target && rng.gen_bool(0.05) {
            let z = b.vertex();
            b.edge(z, y);
        }
    }
    b.build()
}

/// Base cycle plus vertices seeing two or three cycle vertices, with some
/// second-level vertices joined to them and to each other.
fn t_vertices(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Graph {
    let t = config.t;
    let long = rng.gen_bool(0.5);
    let len = if long { t } else { t - 2 };
    let mut b = Builder::cycle(len);
    let target = rng.gen_range(len..=config.n.max(len));
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    while b.len() < target {
        if firsts.is_empty() || rng.gen_bool(0.6) {
            let i = rng.gen_range(0..len);
            let pattern: &[usize] = if long {
                [&[0, 2][..], &[0, 4], &[0, 2, 4]].choose(rng).unwrap()
            } else if rng.gen_bool(0.8) {
                &[0, 2]
            } else {
                &[0]
            };
            let v = b.vertex();
            for &off in pattern {
                b.edge(v, (i + off) % len);
            }
            firsts.push(v);
        } else {
            let y = b.vertex();
            let k = rng.gen_range(1..=2.min(firsts.len()));
            for &a in firsts.choose_multiple(rng, k) {
                b.edge(y, a);
            }
            if let Some(&other) = seconds.choose(rng) {
                if rng.gen_bool(config.p.clamp(0.0, 1.0)) {
                    b.edge(y, other);
                }
            }
            seconds.push(y);
        }
    }
    b.build()
}

/// A cycle of length `t - 2` with a vertex seeing both `D_i` and `D_{i+4}`,
/// decorated at random up to a size drawn from `[t + 1, n]`. With
/// `n = t + 1` no decoration fits and the result is the bare gadget.
fn star_gadget(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Graph {
    let len = config.t - 2;
    let mut b = Builder::cycle(len);
    let i = rng.gen_range(0..len);
    let at = |k: isize| (i as isize + k).rem_euclid(len as isize) as usize;
    let d0 = b.vertex();
    b.edge(d0, i);
    let d4 = b.vertex();
    b.edge(d4, at(4));
    let y = b.vertex();
    b.edge(y, d0);
    b.edge(y, d4);

    let mut di = vec![d0];
    let mut di4 = vec![d4];
    let mut inner = Vec::new();
    let target = rng.gen_range(b.len()..=config.n.max(b.len()));
    while b.len() < target {
        match rng.gen_range(0..6) {
            // another Y* vertex over the existing D* vertices
            0 => {
                let v = b.vertex();
                b.edge(v, *di.choose(rng).unwrap());
                b.edge(v, *di4.choose(rng).unwrap());
            }
            // another D_i or D_{i+4} vertex, sometimes with its own Y* vertex
            1 => {
                let side = rng.gen_bool(0.5);
                let d = b.vertex();
                b.edge(d, if side { i } else { at(4) });
                if side {
                    di.push(d)
                } else {
                    di4.push(d)
                }
                if b.len() < target && rng.gen_bool(0.5) {
                    let v = b.vertex();
                    b.edge(v, d);
                    b.edge(v, *if side { &di4 } else { &di }.choose(rng).unwrap());
                }
            }
            // a D_{i+1} / D_{i+3} vertex adjacent to a D* vertex
            2 => {
                let (k, pool) = if rng.gen_bool(0.5) {
                    (3, &di)
                } else {
                    (1, &di4)
                };
                let v = b.vertex();
                b.edge(v, at(k));
                b.edge(v, *pool.choose(rng).unwrap());
                inner.push(v);
            }
            // a second-level vertex over inner D vertices
            3 if !inner.is_empty() => {
                let v = b.vertex();
                b.edge(v, *inner.choose(rng).unwrap());
            }
            // a T_i or T_{i+2} vertex, sometimes joined to Y*
            4 => {
                let k = *[0isize, 2].choose(rng).unwrap();
                let v = b.vertex();
                b.edge(v, at(k));
                b.edge(v, at(k + 2));
                if rng.gen_bool(config.p.clamp(0.0, 1.0)) {
                    b.edge(v, y);
                }
            }
            // a pendant elsewhere on the cycle
            _ => {
                let v = b.vertex();
                b.edge(v, rng.gen_range(0..len));
            }
        }
    }
    b.build()
}

/// A large pendant-tree instance for scaling runs: copies of small trees
/// hung off a `C_{t-2}`. An induced path meets at most two trees hanging from
/// the same cycle vertex, so checking class membership with two copies of
/// each tree covers every expansion. Returns `None` if no verified template
/// turns up.
///
/// Everything hanging off a single cycle vertex is dominated by it, so these
/// graphs collapse onto the cycle during preprocessing; see
/// [`scaling_instance_crowns`] for a family that keeps its structure.
pub fn scaling_instance(n: usize, t: usize, seed: u64) -> Option<Graph> {
    let len = t - 2;
    for attempt in 0..1000u32 {
        let mut rng = attempt_rng(seed, attempt);
        // one tree per cycle vertex at most, as (depth-1 count, depth-2 per child)
        let trees: Vec<Option<(usize, usize)>> = (0..len)
            .map(|_| {
                rng.gen_bool(0.5)
                    .then(|| (rng.gen_range(1..=2), rng.gen_range(0..=2)))
            })
            .collect();
        if trees.iter().all(Option::is_none) {
            continue;
        }
        let template = expand(len, &trees, 2);
        if !in_class(&template, t, DEFAULT_NODE_BUDGET).ok()?.is_member {
            continue;
        }
        let tree_size: usize = trees.iter().flatten().map(|&(a, b)| a * (1 + b)).sum();
        let copies = (n.saturating_sub(len) / tree_size).max(2);
        return Some(expand(len, &trees, copies));
    }
    None
}

fn expand(len: usize, trees: &[Option<(usize, usize)>], copies: usize) -> Graph {
    let mut b = Builder::cycle(len);
    for (i, tree) in trees.iter().enumerate() {
        let Some((kids, grandkids)) = *tree else {
            continue;
        };
        for _ in 0..copies {
            for _ in 0..kids {
                let a = b.vertex();
                b.edge(a, i);
                for _ in 0..grandkids {
                    let y = b.vertex();
                    b.edge(y, a);
                }
            }
        }
    }
    b.build()
}

/// A large instance with no dominated vertices: `C_{t-2}`, a vertex `x1`
/// seeing `c_0, c_2` and a vertex `x2` seeing `c_3, c_5`, and `k` disjoint
/// 6-cycles at distance two from the cycle, one side joined to `x1` and the
/// other to `x2`.
///
/// Copies meet only in `x1` and `x2`, so an induced path visits at most three
/// of them and a short odd cycle at most two; membership checked with three
/// copies therefore holds for every `k`. Returns `None` if that check fails.
pub fn scaling_instance_crowns(n: usize, t: usize) -> Option<Graph> {
    let build = |k: usize| {
        let len = t - 2;
        let mut b = Builder::cycle(len);
        let (x1, x2) = (b.vertex(), b.vertex());
        b.edge(x1, 0);
        b.edge(x1, 2);
        b.edge(x2, 3);
        b.edge(x2, 5);
        for _ in 0..k {
            let ring: Vec<Vertex> = (0..6).map(|_| b.vertex()).collect();
            for j in 0..6 {
                b.edge(ring[j], ring[(j + 1) % 6]);
                b.edge(ring[j], if j % 2 == 0 { x1 } else { x2 });
            }
        }
        b.build()
    };
    if !in_class(&build(3), t, DEFAULT_NODE_BUDGET).ok()?.is_member {
        return None;
    }
    Some(build((n.saturating_sub(t) / 6).max(3)))
}

/// Metadata written next to each corpus instance.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceMeta {
    pub name: String,
    pub kind: GenKind,
    pub t: usize,
    pub seed: u64,
    pub attempt: u32,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

/// Writes `<name>.col` and `<name>.json` into `dir`.
pub fn write_instance(dir: &Path, g: &Graph, meta: &InstanceMeta) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{}.col", meta.name)), g.to_dimacs())?;
    let json = serde_json::to_string_pretty(meta).map_err(io::Error::other)?;
    fs::write(dir.join(format!("{}.json", meta.name)), json + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn oracle_examples() {
        assert!(brute_force_colour(&complete(3), None).unwrap().is_some());
        assert!(brute_force_colour(&complete(4), None).unwrap().is_none());
        let two = Palette::from_lists(vec![ColourList::from_colours(&[1, 2]); 7]);
        assert!(brute_force_colour(&cycle(7), Some(&two)).unwrap().is_none());
        assert_eq!(
            brute_force_colour(&Graph::empty(41), None),
            Err(TestkitError::GraphTooLarge { n: 41, cap: 40 })
        );
    }

    #[test]
    fn enumeration_counts_c7() {
        // chromatic polynomial of C_7 at 3
        assert_eq!(all_list_colourings(&cycle(7), &Palette::full(7)).len(), 126);
    }

    #[test]
    fn random_seeded_c9() {
        let mut cfg = GeneratorConfig::new(GenKind::Random, 9, 9, 1);
        cfg.p = 0.0;
        cfg.seed_edges = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        assert_eq!(gen(&cfg).unwrap().graph, cycle(9));
    }

    #[test]
    fn bare_star_gadget() {
        let cfg = GeneratorConfig::new(GenKind::StarGadget, 12, 11, 5);
        let g = gen(&cfg).unwrap().graph;
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 13);
    }

    #[test]
    fn generation_is_deterministic() {
        for kind in GenKind::ALL {
            let t = if kind == GenKind::StarGadget { 11 } else { 9 };
            let cfg = GeneratorConfig::new(kind, 20, t, 42);
            let a = gen(&cfg).map(|g| g.graph);
            let b = gen(&cfg).map(|g| g.graph);
            assert_eq!(a, b, "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in GenKind::ALL {
            assert_eq!(k.name().parse::<GenKind>().unwrap(), k);
        }
        assert!("nope".parse::<GenKind>().is_err());
    }
}
