//! Dominating set and component classification when the base cycle has
//! length `t - 2`.

use super::cycle::{CycleContext, YComponent};
use super::star::StarContext;
use super::{
    sorted_dedup, BoundCheck, ClassifiedComponent, ComponentTag, StructureError, XParts, XReport,
};
use crate::graph::{Graph, Vertex};

/// Per-vertex index sets of `D`- and `T`-neighbours.
pub(super) struct NeighbourIndex {
    pub d: Vec<Vec<usize>>,
    pub t: Vec<Vec<usize>>,
}

impl NeighbourIndex {
    pub fn new(g: &Graph, ctx: &CycleContext) -> NeighbourIndex {
        let n = g.vertex_count();
        let mut d = vec![Vec::new(); n];
        let mut t = vec![Vec::new(); n];
        for &y in &ctx.y {
            d[y] = sorted_dedup(
                g.neighbours(y)
                    .iter()
                    .filter_map(|&w| ctx.d_index(w))
                    .collect(),
            );
            t[y] = sorted_dedup(
                g.neighbours(y)
                    .iter()
                    .filter_map(|&w| ctx.t_index(w))
                    .collect(),
            );
        }
        NeighbourIndex { d, t }
    }
}

/// `N(y) ∩ set`, sorted.
fn nbrs_in(g: &Graph, y: Vertex, set: &[Vertex]) -> Vec<Vertex> {
    g.neighbours(y)
        .iter()
        .copied()
        .filter(|w| set.binary_search(w).is_ok())
        .collect()
}

/// Vertex minimising `key` (then vertex id) among `pool`.
fn argmin_by_len(
    pool: impl Iterator<Item = Vertex>,
    key: impl Fn(Vertex) -> usize,
) -> Option<Vertex> {
    pool.min_by_key(|&y| (key(y), y))
}

pub fn compute_x_short(
    g: &Graph,
    ctx: &CycleContext,
    star: Option<&StarContext>,
) -> Result<XReport, StructureError> {
    let t = ctx.t;
    let len = ctx.len() as isize;
    let idx = NeighbourIndex::new(g, ctx);
    let has_d = |y: Vertex, i: isize| idx.d[y].binary_search(&ctx.idx(i)).is_ok();
    let has_t = |y: Vertex, i: isize| idx.t[y].binary_search(&ctx.idx(i)).is_ok();

    // Q: only needed when t = 9; for larger t these vertices are Y*.
    let mut q = Vec::new();
    if t == 9 {
        for i in 0..len {
            let yp: Vec<Vertex> = ctx
                .y
                .iter()
                .copied()
                .filter(|&y| has_d(y, i) && has_d(y, i + 4))
                .collect();
            if yp.is_empty() {
                continue;
            }
            let (di, di4) = (ctx.d_at(i), ctx.d_at(i + 4));
            let yi = argmin_by_len(yp.iter().copied(), |y| nbrs_in(g, y, di).len()).unwrap();
            let yi2 = argmin_by_len(yp.iter().copied(), |y| nbrs_in(g, y, di4).len()).unwrap();
            q.push(nbrs_in(g, yi, di)[0]);
            q.push(nbrs_in(g, yi2, di4)[0]);
        }
    }
    let q = sorted_dedup(q);

    let in_w = |y: Vertex| {
        idx.t[y].iter().any(|&i| {
            let i = i as isize;
            has_d(y, i - 2)
                || has_d(y, i + 4)
                || g.neighbours(y)
                    .iter()
                    .any(|&z| ctx.is_y(z) && (has_t(z, i - 3) || has_t(z, i + 3)))
        })
    };
    let w: Vec<Vertex> = ctx.y.iter().copied().filter(|&y| in_w(y)).collect();

    let mut r = Vec::new();
    for i in 0..len {
        let ti = ctx.t_at(i);
        if ti.is_empty() {
            continue;
        }
        let pool = w.iter().copied().filter(|&y| has_t(y, i));
        let Some(y) = argmin_by_len(pool, |y| nbrs_in(g, y, ti).len()) else {
            continue;
        };
        r.push(nbrs_in(g, y, ti)[0]);
        if let Some(&b) = g
            .neighbours(y)
            .iter()
            .filter(|&&v| ctx.d_index(v).is_some())
            .min()
        {
            r.push(b);
        }
    }
    let r = sorted_dedup(r);
    let x = sorted_dedup(q.iter().chain(&r).copied().collect());

    let dominated = dominated_by(g, &x);
    let mut components = Vec::with_capacity(ctx.y_components.len());
    for k in &ctx.y_components {
        let tag = classify_component(g, ctx, k, &dominated, star).ok_or_else(|| {
            StructureError::ComponentUnclassifiable {
                vertices: k.vertices.clone(),
            }
        })?;
        components.push(ClassifiedComponent {
            vertices: k.vertices.clone(),
            side1: k.side1.clone(),
            side2: k.side2.clone(),
            tag,
        });
    }

    let bounds = vec![
        BoundCheck::new("|Q|", q.len(), 14),
        BoundCheck::new("|R|", r.len(), 2 * t - 4),
        BoundCheck::new("|X| short", x.len(), 2 * t + 10),
    ];
    Ok(XReport {
        x,
        parts: XParts::Short { q, r, w },
        components,
        bounds,
    })
}

/// Membership flags for `N(x)`.
pub(super) fn dominated_by(g: &Graph, x: &[Vertex]) -> Vec<bool> {
    let mut out = vec![false; g.vertex_count()];
    for &v in x {
        for &w in g.neighbours(v) {
            out[w] = true;
        }
    }
    out
}

/// `N(side) \ Y`, sorted.
pub(super) fn outside_nbrs(g: &Graph, ctx: &CycleContext, side: &[Vertex]) -> Vec<Vertex> {
    sorted_dedup(
        side.iter()
            .flat_map(|&u| g.neighbours(u).iter().copied())
            .filter(|&w| !ctx.is_y(w))
            .collect(),
    )
}

/// First cycle position `k` with `set ⊆ N(c_k)`.
pub(super) fn cycle_dominator(g: &Graph, ctx: &CycleContext, set: &[Vertex]) -> Option<usize> {
    (0..ctx.len()).find(|&k| set.iter().all(|&w| g.has_edge(ctx.cycle[k], w)))
}

fn classify_component(
    g: &Graph,
    ctx: &CycleContext,
    k: &YComponent,
    dominated: &[bool],
    star: Option<&StarContext>,
) -> Option<ComponentTag> {
    if k.vertices.iter().all(|&v| dominated[v]) {
        return Some(ComponentTag::I);
    }
    if k.is_trivial() {
        let y = k.vertices[0];
        if let Some(i) = cycle_dominator(g, ctx, g.neighbours(y)) {
            return Some(ComponentTag::II {
                cycle_index: i,
                c: ctx.cycle[i],
            });
        }
        return star
            .and_then(|s| s.star_index_of(y))
            .map(|star_index| ComponentTag::IIPrime { star_index });
    }

    let nu1 = outside_nbrs(g, ctx, &k.side1);
    let nu2 = outside_nbrs(g, ctx, &k.side2);
    let b1 = cycle_dominator(g, ctx, &nu1)?;
    let b2 = cycle_dominator(g, ctx, &nu2)?;
    let touches = |c: Vertex, set: &[Vertex]| set.iter().any(|&w| g.has_edge(c, w));
    let (x1, x2) = ctx.cycle.iter().find_map(|&x1| {
        if !touches(x1, &nu1) {
            return None;
        }
        ctx.cycle
            .iter()
            .copied()
            .find(|&x2| g.has_edge(x1, x2) && touches(x2, &nu2))
            .map(|x2| (x1, x2))
    })?;
    let complete = nu1.iter().all(|&a| nu2.iter().all(|&b| g.has_edge(a, b)));
    complete.then_some(ComponentTag::IIIShort {
        b1: ctx.cycle[b1],
        b2: ctx.cycle[b2],
        x1,
        x2,
    })
}
