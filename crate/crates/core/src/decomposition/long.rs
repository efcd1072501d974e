//! Dominating set and component classification when the base cycle has
//! length `t`.

use super::cycle::{CycleContext, YComponent};
use super::short::{cycle_dominator, dominated_by, outside_nbrs};
use super::{
    sorted_dedup, BoundCheck, ClassifiedComponent, ComponentTag, LongSubcase, StructureError,
    XParts, XReport,
};
use crate::graph::{Graph, Vertex};

pub fn compute_x_long(g: &Graph, ctx: &CycleContext) -> Result<XReport, StructureError> {
    let t = ctx.t;
    let len = ctx.len() as isize;
    let n = g.vertex_count();

    for &y in &ctx.y {
        if let Some(&tv) = g.neighbours(y).iter().find(|&&w| ctx.t_index(w).is_some()) {
            return Err(StructureError::YTEdge { y, t: tv });
        }
    }

    // indices i with y ∈ N(T'_i ∪ S_i)
    let mut tps = vec![Vec::new(); n];
    for &y in &ctx.y {
        tps[y] = sorted_dedup(
            g.neighbours(y)
                .iter()
                .filter_map(|&w| ctx.tps_index(w))
                .collect(),
        );
    }
    let has = |y: Vertex, i: isize| tps[y].binary_search(&ctx.idx(i)).is_ok();
    let y_nbrs = |y: Vertex| g.neighbours(y).iter().copied().filter(|&z| ctx.is_y(z));

    let m: Vec<Vertex> = (0..len)
        .filter_map(|i| ctx.tp_at(i).first().copied())
        .collect();
    let m = sorted_dedup(m);

    // y at index i with a Y-neighbour at index i ± 3
    let paired_at =
        |y: Vertex, i: isize| has(y, i) && y_nbrs(y).any(|z| has(z, i + 3) || has(z, i - 3));
    let mut in_w = vec![false; n];
    for &y in &ctx.y {
        for z in y_nbrs(y) {
            if tps[y]
                .iter()
                .any(|&i| has(z, i as isize + 3) || has(z, i as isize - 3))
            {
                in_w[y] = true;
                in_w[z] = true;
            }
        }
    }
    let w: Vec<Vertex> = ctx.y.iter().copied().filter(|&y| in_w[y]).collect();

    let mut b = Vec::new();
    for i in 0..len {
        let side: Vec<Vertex> =
            sorted_dedup(ctx.tp_at(i).iter().chain(ctx.s_at(i)).copied().collect());
        if side.is_empty() {
            continue;
        }
        let nbrs_in = |y: Vertex| -> Vec<Vertex> {
            g.neighbours(y)
                .iter()
                .copied()
                .filter(|v| side.binary_search(v).is_ok())
                .collect()
        };
        let best = w
            .iter()
            .copied()
            .filter(|&y| paired_at(y, i))
            .min_by_key(|&y| (nbrs_in(y).len(), y));
        if let Some(y) = best {
            b.push(nbrs_in(y)[0]);
        }
    }
    let b = sorted_dedup(b);

    let x_prime = sorted_dedup(m.iter().chain(&b).copied().collect());
    let near_x_prime = dominated_by(g, &x_prime);
    let mut augmented = Vec::new();
    for &x in &x_prime {
        let ny: Vec<Vertex> = y_nbrs(x).collect();
        let Some(&first) = ny.first() else {
            continue;
        };
        let comp = ctx.y_component_of[first].unwrap();
        let k = &ctx.y_components[comp];
        if k.is_trivial() || ny.iter().any(|&y| ctx.y_component_of[y] != Some(comp)) {
            continue;
        }
        let j = if k.side1.binary_search(&first).is_ok() {
            1
        } else {
            2
        };
        if !ny.iter().all(|y| k.side(j).binary_search(y).is_ok()) {
            continue;
        }
        let other = k.side(3 - j);
        if other.iter().any(|&u| near_x_prime[u]) {
            continue;
        }
        if let Some(&v) = outside_nbrs(g, ctx, other).first() {
            augmented.push(v);
        }
    }
    let augmented = sorted_dedup(augmented);
    let x = sorted_dedup(x_prime.iter().chain(&augmented).copied().collect());

    let dominated = dominated_by(g, &x);
    let mut components = Vec::with_capacity(ctx.y_components.len());
    for k in &ctx.y_components {
        let tag = classify_component(g, ctx, k, &dominated, &x, &tps).ok_or_else(|| {
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
        BoundCheck::new("|M|", m.len(), 2 * t),
        BoundCheck::new("|B|", b.len(), t),
        BoundCheck::new("|X| long", x.len(), 3 * t),
    ];
    Ok(XReport {
        x,
        parts: XParts::Long { m, b, w, augmented },
        components,
        bounds,
    })
}

fn classify_component(
    g: &Graph,
    ctx: &CycleContext,
    k: &YComponent,
    dominated: &[bool],
    x: &[Vertex],
    tps: &[Vec<usize>],
) -> Option<ComponentTag> {
    if k.vertices.iter().all(|&v| dominated[v]) {
        return Some(ComponentTag::I);
    }
    if k.is_trivial() {
        // try c_{i+2} for each index i of y first, then any cycle vertex
        let y = k.vertices[0];
        let covers = |c: usize| g.neighbours(y).iter().all(|&w| g.has_edge(ctx.cycle[c], w));
        return tps[y]
            .iter()
            .map(|&i| ctx.idx(i as isize + 2))
            .find(|&c| covers(c))
            .or_else(|| cycle_dominator(g, ctx, g.neighbours(y)))
            .map(|i| ComponentTag::II {
                cycle_index: i,
                c: ctx.cycle[i],
            });
    }

    let nu = [
        outside_nbrs(g, ctx, &k.side1),
        outside_nbrs(g, ctx, &k.side2),
    ];
    for j in 0..2 {
        let (mine, other) = (&nu[j], &nu[1 - j]);
        let other_on_cycle: Vec<Vertex> = ctx
            .cycle
            .iter()
            .copied()
            .filter(|&c| other.iter().any(|&o| g.has_edge(c, o)))
            .collect();
        for &w in mine {
            if other.iter().any(|&o| g.has_edge(w, o)) {
                continue;
            }
            if x.binary_search(&w).is_ok() {
                return None;
            }
            let side = k.side(j + 1);
            let ok = g
                .neighbours(w)
                .iter()
                .filter(|z| side.binary_search(z).is_err())
                .all(|&z| other_on_cycle.iter().any(|&c| g.has_edge(z, c)));
            if !ok {
                return None;
            }
        }
    }

    let len = ctx.len() as isize;
    let within =
        |set: &[Vertex], cs: &[Vertex]| set.iter().all(|&w| cs.iter().any(|&c| g.has_edge(c, w)));
    for k0 in 0..len {
        for d in [1isize, -1] {
            let (c, c1) = (ctx.c(k0), ctx.c(k0 + d));
            if within(&nu[0], &[c]) && within(&nu[1], &[c1]) {
                return Some(ComponentTag::IIILong {
                    subcase: LongSubcase::C,
                    swapped: false,
                    c,
                    c_prime: c1,
                    c_double_prime: None,
                });
            }
        }
    }
    for (a, swapped) in [(0usize, false), (1, true)] {
        let (nua, nub) = (&nu[a], &nu[1 - a]);
        for k0 in 0..len {
            for d in [1isize, -1] {
                let (c, c1, c2) = (ctx.c(k0), ctx.c(k0 + d), ctx.c(k0 + 2 * d));
                if !(within(nua, &[c, c2]) && within(nub, &[c1])) {
                    continue;
                }
                let hit = |cc: Vertex| {
                    nua.iter()
                        .any(|&v| g.has_edge(cc, v) && x.binary_search(&v).is_ok())
                };
                if hit(c) && hit(c2) {
                    return Some(ComponentTag::IIILong {
                        subcase: LongSubcase::D,
                        swapped,
                        c,
                        c_prime: c1,
                        c_double_prime: Some(c2),
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::classify;

    #[test]
    fn bare_c9() {
        let g = crate::graph::named::cycle(9);
        let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 9).unwrap();
        let rep = compute_x_long(&g, &ctx).unwrap();
        assert!(rep.x.is_empty());
    }

    #[test]
    fn s_vertex_with_pendant() {
        // v adjacent to c0, c2, c4; y adjacent only to v
        let mut e: Vec<(Vertex, Vertex)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        e.extend([(0, 9), (2, 9), (4, 9), (9, 10)]);
        let g = Graph::from_edge_list(11, &e).unwrap();
        let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 9).unwrap();
        let rep = compute_x_long(&g, &ctx).unwrap();
        assert_eq!(rep.components.len(), 1);
        assert_eq!(
            rep.components[0].tag,
            ComponentTag::II {
                cycle_index: 2,
                c: 2
            }
        );
    }
}
