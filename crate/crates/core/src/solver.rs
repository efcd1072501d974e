//! End-to-end decision procedure: per connected component, remove dominated
//! vertices, anchor on a base cycle, enumerate precoloured palettes, reduce
//! the list-size-3 part and finish with 2-SAT.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{
    classify, compute_star, compute_x_long, compute_x_short, preprocess, restore_colouring,
    BoundCheck, CycleContext, StarContext, StructureError, XReport,
};
use crate::graph::{Graph, Vertex};
use crate::palette::{
    apply_reductions, assign, find_reduction, propagate, update, update_in_place, v3_components,
    Colour, ColourList, Palette,
};
use crate::recognizers::{
    check_t, find_induced_cycle, in_class, is_bipartite, shortest_odd_cycle, SearchError,
    Violation, DEFAULT_NODE_BUDGET,
};
use crate::two_list::two_list_colour;

/// Why a graph is outside the class the algorithm is guaranteed for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// An odd cycle of length at most `t - 4`.
    ShortOddCycle { vertices: Vec<Vertex> },
    /// An induced path on `t` vertices.
    InducedPath { vertices: Vec<Vertex> },
    /// A structural property failed and no concrete witness was extracted.
    Structural { reason: String },
}

impl From<Violation> for Certificate {
    fn from(v: Violation) -> Certificate {
        match v {
            Violation::ShortOddCycle(vertices) => Certificate::ShortOddCycle { vertices },
            Violation::InducedPath(vertices) => Certificate::InducedPath { vertices },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum SolveResult {
    ThreeColourable(Vec<Colour>),
    NotThreeColourable,
    OutOfClass(Certificate),
    /// Every component is bipartite; the colouring uses colours 1 and 2.
    Bipartite(Vec<Colour>),
}

impl SolveResult {
    pub fn colouring(&self) -> Option<&[Colour]> {
        match self {
            SolveResult::ThreeColourable(c) | SolveResult::Bipartite(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_colourable(&self) -> bool {
        self.colouring().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pipeline {
    Short,
    Long,
    Star,
}

/// Whether short-cycle instances with `t > 9` use the block-colouring
/// enumeration even when no `Y*` vertex exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StarMode {
    #[default]
    Auto,
    Always,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub t: usize,
    /// Worker threads for palette evaluation; 1 runs everything inline.
    pub jobs: usize,
    pub node_budget: u64,
    /// Evaluate every palette instead of stopping at the first success, and
    /// check the emission contract on each.
    pub audit: bool,
    pub star_mode: StarMode,
}

impl SolveOptions {
    pub fn new(t: usize) -> SolveOptions {
        SolveOptions {
            t,
            jobs: 1,
            node_budget: DEFAULT_NODE_BUDGET,
            audit: false,
            star_mode: StarMode::Auto,
        }
    }
}

/// Counters gathered while solving one connected component.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ComponentStats {
    pub vertices: usize,
    pub removed_dominated: usize,
    pub bipartite: bool,
    pub cycle_length: Option<usize>,
    pub pipeline: Option<Pipeline>,
    /// The short pipeline failed and the long one was started afresh.
    pub restarted: bool,
    pub palettes_emitted: usize,
    pub base_cycle_colourings: usize,
    pub irreducible_events: usize,
    pub nice_reduction_checks: usize,
    pub nice_reduction_violations: usize,
    /// Emitted palettes that were infeasible or not update-closed (audit only).
    pub emission_failures: usize,
    pub bounds: Vec<BoundCheck>,
    pub structural_errors: Vec<String>,
}

impl ComponentStats {
    pub fn violated_bounds(&self) -> impl Iterator<Item = &BoundCheck> {
        self.bounds.iter().filter(|b| !b.holds())
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SolveStats {
    pub components: Vec<ComponentStats>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Solution {
    pub result: SolveResult,
    pub stats: SolveStats,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("component {0:?} of the list-size-3 subgraph is not reducible")]
    IrreducibleComponent(Vec<Vertex>),
    #[error("block colouring at index {index} is not a nice reduction: {reason}")]
    NiceReductionViolated { index: usize, reason: String },
}

/// True iff `colouring` is a proper colouring of `g` with colours in `{1,2,3}`.
pub fn validate_colouring(g: &Graph, colouring: &[Colour]) -> bool {
    colouring.len() == g.vertex_count()
        && colouring.iter().all(|c| (1..=3).contains(c))
        && g.edges().all(|(u, v)| colouring[u] != colouring[v])
}

/// Solves with default options. Errors only for invalid `t`.
pub fn solve(g: &Graph, t: usize) -> Result<SolveResult, SearchError> {
    solve_with(g, &SolveOptions::new(t)).map(|s| s.result)
}

pub fn solve_with(g: &Graph, opts: &SolveOptions) -> Result<Solution, SearchError> {
    check_t(opts.t)?;
    let pool = (opts.jobs > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool construction")
    });
    let runner = Runner {
        opts,
        pool: pool.as_ref(),
    };

    let n = g.vertex_count();
    let mut colouring = vec![0 as Colour; n];
    let mut stats = SolveStats::default();
    let mut not_colourable = false;
    let mut out_of_class: Option<Certificate> = None;
    let mut all_bipartite = true;

    for comp in g.components() {
        let (h, map) = g.induced_subgraph(&comp);
        let (outcome, cstats) = runner.component(&h);
        all_bipartite &= cstats.bipartite;
        stats.components.push(cstats);
        match outcome {
            Outcome::Coloured(c) => {
                for (v, col) in c.into_iter().enumerate() {
                    colouring[map[v]] = col;
                }
            }
            Outcome::NotColourable => not_colourable = true,
            Outcome::OutOfClass(cert) => {
                let cert = match cert {
                    Certificate::ShortOddCycle { vertices } => Certificate::ShortOddCycle {
                        vertices: vertices.into_iter().map(|v| map[v]).collect(),
                    },
                    Certificate::InducedPath { vertices } => Certificate::InducedPath {
                        vertices: vertices.into_iter().map(|v| map[v]).collect(),
                    },
                    s => s,
                };
                out_of_class.get_or_insert(cert);
            }
        }
    }

    let result = if let Some(cert) = out_of_class {
        SolveResult::OutOfClass(cert)
    } else if not_colourable {
        SolveResult::NotThreeColourable
    } else {
        assert!(
            validate_colouring(g, &colouring),
            "solver produced an improper colouring"
        );
        if all_bipartite {
            SolveResult::Bipartite(colouring)
        } else {
            SolveResult::ThreeColourable(colouring)
        }
    };
    Ok(Solution { result, stats })
}

enum Outcome {
    Coloured(Vec<Colour>),
    NotColourable,
    OutOfClass(Certificate),
}

struct Runner<'a> {
    opts: &'a SolveOptions,
    pool: Option<&'a rayon::ThreadPool>,
}

impl Runner<'_> {
    /// Solves a connected graph.
    fn component(&self, h: &Graph) -> (Outcome, ComponentStats) {
        let t = self.opts.t;
        let mut st = ComponentStats {
            vertices: h.vertex_count(),
            ..Default::default()
        };
        if let Some(sides) = is_bipartite(h) {
            st.bipartite = true;
            return (Outcome::Coloured(sides), st);
        }

        let pre = preprocess(h);
        st.removed_dominated = pre.stack.len();
        let g = &pre.graph;
        let to_input =
            |vs: Vec<Vertex>| -> Vec<Vertex> { vs.into_iter().map(|v| pre.map[v]).collect() };
        let cycle = shortest_odd_cycle(g).expect("dominated-vertex removal keeps an odd cycle");
        st.cycle_length = Some(cycle.len());
        if cycle.len() <= t - 4 {
            let cert = Certificate::ShortOddCycle {
                vertices: to_input(cycle),
            };
            return (Outcome::OutOfClass(cert), st);
        }
        if cycle.len() > t {
            // an induced cycle this long contains an induced P_t
            let cert = Certificate::InducedPath {
                vertices: to_input(cycle[..t].to_vec()),
            };
            return (Outcome::OutOfClass(cert), st);
        }

        let mut attempt = if cycle.len() == t - 2 {
            self.short_pipeline(g, &cycle, &mut st)
        } else {
            self.long_pipeline(g, &cycle, &mut st)
        };
        if let Err(e) = &attempt {
            st.structural_errors.push(e.to_string());
            if cycle.len() == t - 2 {
                match find_induced_cycle(g, t, self.opts.node_budget) {
                    Ok(Some(long_cycle)) => {
                        st.restarted = true;
                        attempt = self.long_pipeline(g, &long_cycle, &mut st);
                        if let Err(e) = &attempt {
                            st.structural_errors.push(e.to_string());
                        }
                    }
                    Ok(None) => {}
                    Err(e) => st.structural_errors.push(e.to_string()),
                }
            }
        }

        let outcome = match attempt {
            Ok(Some(c)) => Outcome::Coloured(restore_colouring(&pre, &c)),
            Ok(None) => Outcome::NotColourable,
            Err(e) => Outcome::OutOfClass(self.certify(h, e)),
        };
        (outcome, st)
    }

    /// Tries to replace a structural failure by a concrete class violation.
    fn certify(&self, h: &Graph, e: PipelineError) -> Certificate {
        match in_class(h, self.opts.t, self.opts.node_budget) {
            Ok(report) => match report.violation {
                Some(v) => v.into(),
                None => Certificate::Structural {
                    reason: format!("{e} (class membership not refuted)"),
                },
            },
            Err(search) => Certificate::Structural {
                reason: format!("{e} ({search})"),
            },
        }
    }

    fn short_pipeline(
        &self,
        g: &Graph,
        cycle: &[Vertex],
        st: &mut ComponentStats,
    ) -> Result<Option<Vec<Colour>>, PipelineError> {
        let t = self.opts.t;
        let ctx = classify(g, cycle, t)?;
        let star = compute_star(g, &ctx)?;
        let xrep = compute_x_short(g, &ctx, Some(&star))?;
        st.bounds.extend(xrep.bounds.iter().cloned());
        let use_star = t > 9 && (!star.is_empty() || self.opts.star_mode == StarMode::Always);
        let pipeline = if use_star {
            Pipeline::Star
        } else {
            Pipeline::Short
        };
        self.run_family(g, &ctx, &xrep, use_star.then_some(&star), pipeline, st)
    }

    fn long_pipeline(
        &self,
        g: &Graph,
        cycle: &[Vertex],
        st: &mut ComponentStats,
    ) -> Result<Option<Vec<Colour>>, PipelineError> {
        let ctx = classify(g, cycle, self.opts.t)?;
        let xrep = compute_x_long(g, &ctx)?;
        st.bounds.extend(xrep.bounds.iter().cloned());
        self.run_family(g, &ctx, &xrep, None, Pipeline::Long, st)
    }

    fn run_family(
        &self,
        g: &Graph,
        ctx: &CycleContext,
        xrep: &XReport,
        star: Option<&StarContext>,
        pipeline: Pipeline,
        st: &mut ComponentStats,
    ) -> Result<Option<Vec<Colour>>, PipelineError> {
        st.pipeline = Some(pipeline);
        let t = self.opts.t;
        let mut family = enumerate_palettes(g, ctx, xrep, star);
        let batch_size = if self.pool.is_some() {
            16 * self.opts.jobs
        } else {
            1
        };
        let mut found: Option<Vec<Colour>> = None;
        let mut irreducible: Option<Vec<Vertex>> = None;

        let result = loop {
            let mut batch = Vec::with_capacity(batch_size);
            for item in family.by_ref() {
                match item {
                    Ok(p) => batch.push(p),
                    Err(_) => {
                        st.nice_reduction_violations += 1;
                        break;
                    }
                }
                if batch.len() == batch_size {
                    break;
                }
            }
            if let Some(e) = family.error.take() {
                break Err(e);
            }
            if batch.is_empty() {
                break Ok(());
            }
            let audit = self.opts.audit;
            let eval = |p: &Palette| {
                let contract = !audit || (p.feasible() && &update(g, p) == p);
                (evaluate(g, p), contract)
            };
            let outcomes: Vec<(PaletteOutcome, bool)> = match self.pool {
                Some(pool) => pool.install(|| batch.par_iter().map(eval).collect()),
                None => batch.iter().map(eval).collect(),
            };
            for (outcome, contract) in outcomes {
                if !contract {
                    st.emission_failures += 1;
                }
                match outcome {
                    PaletteOutcome::Coloured(c) if found.is_none() => found = Some(c),
                    PaletteOutcome::Irreducible(k) => {
                        st.irreducible_events += 1;
                        irreducible.get_or_insert(k);
                    }
                    _ => {}
                }
            }
            if found.is_some() && !audit {
                break Ok(());
            }
        };

        st.palettes_emitted = family.emitted;
        st.base_cycle_colourings = family.base_cycle_colourings;
        st.nice_reduction_checks = family.nice_checks;
        let base_bound = 3usize.saturating_mul(pow2(ctx.len() - 1));
        match pipeline {
            Pipeline::Star => st.bounds.push(BoundCheck::new(
                "base-cycle colourings",
                family.base_cycle_colourings,
                3usize.saturating_mul(pow2(t - 3)),
            )),
            _ => st.bounds.push(BoundCheck::new(
                "palettes emitted",
                family.emitted,
                3usize.saturating_mul(pow2(4 * t - 1)),
            )),
        }
        debug_assert!(family.base_cycle_colourings <= base_bound);

        result?;
        match (found, irreducible) {
            (Some(c), _) => Ok(Some(c)),
            (None, Some(k)) => Err(PipelineError::IrreducibleComponent(k)),
            (None, None) => Ok(None),
        }
    }
}

fn pow2(e: usize) -> usize {
    if e >= usize::BITS as usize {
        usize::MAX
    } else {
        1usize << e
    }
}

/// Result of processing one palette of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaletteOutcome {
    Coloured(Vec<Colour>),
    /// No colouring extends this palette.
    Infeasible,
    /// A component of the list-size-3 subgraph admits no reduction.
    Irreducible(Vec<Vertex>),
}

/// Reduces every component of `G[V_3]` and updates. `Ok(None)` means the
/// reduced palette turned out infeasible.
pub fn check_and_reduce(g: &Graph, l: &Palette) -> Result<Option<Palette>, PipelineError> {
    let mut plans = Vec::new();
    for k in v3_components(g, l) {
        match find_reduction(g, l, &k) {
            Ok(Some(plan)) => plans.push(plan),
            _ => return Err(PipelineError::IrreducibleComponent(k.into_vec())),
        }
    }
    let mut reduced = apply_reductions(l, &plans);
    update_in_place(g, &mut reduced);
    Ok(reduced.feasible().then_some(reduced))
}

pub fn evaluate(g: &Graph, l: &Palette) -> PaletteOutcome {
    match check_and_reduce(g, l) {
        Err(PipelineError::IrreducibleComponent(k)) => PaletteOutcome::Irreducible(k),
        Err(_) => unreachable!("check_and_reduce only reports irreducible components"),
        Ok(None) => PaletteOutcome::Infeasible,
        Ok(Some(reduced)) => match two_list_colour(g, &reduced) {
            Ok(Some(c)) => PaletteOutcome::Coloured(c),
            _ => PaletteOutcome::Infeasible,
        },
    }
}

/// The lazily enumerated palette family: every proper precolouring of the
/// base cycle followed by `X`, each updated, in lexicographic order of
/// `(colour(c_0), colour(c_1), …, colours of X by vertex id)`. Prefixes whose
/// update empties a list are pruned, which is the same as discarding
/// infeasible palettes at the end.
///
/// With a [`StarContext`], the block colouring is applied as soon as the cycle
/// is coloured; a block that is not a nice reduction stops the iteration with
/// an error (also left in [`PaletteFamily::error`]).
pub struct PaletteFamily<'a> {
    g: &'a Graph,
    cycle: &'a [Vertex],
    order: Vec<Vertex>,
    star: Option<&'a StarContext>,
    region: Vec<bool>,
    stack: Vec<Frame>,
    pub emitted: usize,
    pub base_cycle_colourings: usize,
    pub nice_checks: usize,
    pub error: Option<PipelineError>,
}

struct Frame {
    palette: Palette,
    depth: usize,
    next: Colour,
}

pub fn enumerate_palettes<'a>(
    g: &'a Graph,
    ctx: &'a CycleContext,
    xrep: &XReport,
    star: Option<&'a StarContext>,
) -> PaletteFamily<'a> {
    let mut order = ctx.cycle.clone();
    order.extend(xrep.x.iter().copied().filter(|&v| !ctx.in_cycle(v)));
    let mut region = vec![false; g.vertex_count()];
    if let Some(s) = star {
        for v in s.coloured_region() {
            region[v] = true;
        }
    }
    PaletteFamily {
        g,
        cycle: &ctx.cycle,
        order,
        star,
        region,
        stack: vec![Frame {
            palette: Palette::full(g.vertex_count()),
            depth: 0,
            next: 1,
        }],
        emitted: 0,
        base_cycle_colourings: 0,
        nice_checks: 0,
        error: None,
    }
}

impl PaletteFamily<'_> {
    /// Colours every block of the star context and checks the result is a
    /// nice reduction of `before`.
    fn apply_blocks(&mut self, before: Palette) -> Result<Palette, PipelineError> {
        let Some(star) = self.star else {
            return Ok(before);
        };
        self.nice_checks += 1;
        let len = self.cycle.len();
        let alpha = |k: usize| {
            before
                .get(self.cycle[k % len])
                .singleton()
                .expect("cycle coloured")
        };
        let mut after = before.clone();
        let mut seeds = Vec::new();
        for block in &star.blocks {
            for (k, vs) in block.colour_groups() {
                let col = alpha(block.index + k);
                for v in vs {
                    if !before.get(v).contains(col) {
                        return Err(PipelineError::NiceReductionViolated {
                            index: block.index,
                            reason: format!("colour {col} is not available at vertex {v}"),
                        });
                    }
                    after.set(v, ColourList::single(col));
                    seeds.push(v);
                }
            }
        }
        propagate(self.g, &mut after, seeds);
        if !after.feasible() {
            return Err(PipelineError::NiceReductionViolated {
                index: star.blocks[0].index,
                reason: "block colouring is improper".into(),
            });
        }
        if let Some(v) =
            (0..after.len()).find(|&v| !self.region[v] && after.get(v) != before.get(v))
        {
            let index = star
                .blocks
                .iter()
                .find(|b| b.f.iter().any(|&u| self.g.has_edge(u, v)))
                .map_or(0, |b| b.index);
            return Err(PipelineError::NiceReductionViolated {
                index,
                reason: format!("list of vertex {v} outside the blocks shrank"),
            });
        }
        Ok(after)
    }
}

impl Iterator for PaletteFamily<'_> {
    type Item = Result<Palette, PipelineError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.error.is_some() {
            return None;
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.depth == self.order.len() {
                let frame = self.stack.pop().unwrap();
                self.emitted += 1;
                return Some(Ok(frame.palette));
            }
            let v = self.order[frame.depth];
            let list = frame.palette.get(v);
            let Some(c) = (frame.next..=3).find(|&c| list.contains(c)) else {
                self.stack.pop();
                continue;
            };
            frame.next = c + 1;
            let depth = frame.depth + 1;
            let mut p = frame.palette.clone();
            if !assign(self.g, &mut p, v, c) {
                continue;
            }
            if depth == self.cycle.len() {
                self.base_cycle_colourings += 1;
                if self.star.is_some() {
                    match self.apply_blocks(p) {
                        Ok(q) => p = q,
                        Err(e) => {
                            self.error = Some(e.clone());
                            return Some(Err(e));
                        }
                    }
                }
            }
            self.stack.push(Frame {
                palette: p,
                depth,
                next: 1,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{find_base_cycle, CycleCase};
    use crate::graph::named::*;
    use crate::graph::VertexSet;

    #[test]
    fn validate_examples() {
        assert!(validate_colouring(&complete(3), &[1, 2, 3]));
        assert!(!validate_colouring(&path(2), &[1, 1]));
        assert!(!validate_colouring(&cycle(7), &[1, 2, 1, 2, 1, 2, 1]));
    }

    #[test]
    fn c7_family_has_126_palettes() {
        let g = cycle(7);
        let ctx = find_base_cycle(&g, 9).unwrap();
        assert_eq!(ctx.case, CycleCase::Short);
        let xrep = compute_x_short(&g, &ctx, None).unwrap();
        let all: Vec<Palette> = enumerate_palettes(&g, &ctx, &xrep, None)
            .map(Result::unwrap)
            .collect();
        assert_eq!(all.len(), 126);
        assert!(all
            .iter()
            .all(|p| p.feasible() && p.as_colouring().is_some()));
        assert!(all.iter().all(|p| update(&g, p) == *p));
    }

    #[test]
    fn small_verdicts() {
        let r = solve(&cycle(7), 9).unwrap();
        assert!(matches!(&r, SolveResult::ThreeColourable(c) if validate_colouring(&cycle(7), c)));
        assert!(solve(&cycle(9), 9).unwrap().is_colourable());
        match solve(&petersen(), 9).unwrap() {
            SolveResult::OutOfClass(Certificate::ShortOddCycle { vertices }) => {
                assert_eq!(vertices.len(), 5)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_t_rejected() {
        assert_eq!(solve(&cycle(7), 8), Err(SearchError::InvalidT(8)));
        assert_eq!(solve(&cycle(7), 7), Err(SearchError::InvalidT(7)));
    }

    #[test]
    fn bipartite_and_empty() {
        assert_eq!(
            solve(&Graph::empty(0), 9).unwrap(),
            SolveResult::Bipartite(vec![])
        );
        assert!(matches!(
            solve(&cycle(6), 9).unwrap(),
            SolveResult::Bipartite(_)
        ));
    }

    #[test]
    fn fully_coloured_palette_is_unchanged_by_reduction() {
        let g = cycle(7);
        let l = Palette::from_lists([1, 2, 1, 2, 1, 2, 3].map(ColourList::single).to_vec());
        assert_eq!(check_and_reduce(&g, &l).unwrap(), Some(l));
    }

    #[test]
    fn pendant_path_reduces_via_cycle_colour() {
        // C7 + p on c0 + y on p: after the family colours C, y keeps three
        // colours and is reducible
        let mut e: Vec<(Vertex, Vertex)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        e.extend([(0, 7), (7, 8)]);
        let g = Graph::from_edge_list(9, &e).unwrap();
        let ctx = classify(&g, &(0..7).collect::<Vec<_>>(), 9).unwrap();
        let xrep = compute_x_short(&g, &ctx, None).unwrap();
        let first = enumerate_palettes(&g, &ctx, &xrep, None)
            .next()
            .unwrap()
            .unwrap();
        assert_eq!(first.get(8).len(), 3);
        let k: VertexSet = vec![8].into();
        let plan = find_reduction(&g, &first, &k).unwrap().unwrap();
        assert!(plan.is_valid_for(&g, &first));
    }
}
