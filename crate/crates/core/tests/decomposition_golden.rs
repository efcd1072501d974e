//! Decomposition dumps compared against checked-in JSON. Set
//! `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

use std::path::PathBuf;

use tricol::decomposition::{classify, compute_star, compute_x_long, compute_x_short, dump};
use tricol::recognizers::DEFAULT_NODE_BUDGET;
use tricol::{in_class, Graph, Vertex};

fn cycle_plus(len: usize, n: usize, extra: &[(Vertex, Vertex)]) -> Graph {
    let mut e: Vec<(Vertex, Vertex)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    e.extend_from_slice(extra);
    Graph::from_edge_list(n, &e).unwrap()
}

fn assert_member(g: &Graph, t: usize) {
    let report = in_class(g, t, DEFAULT_NODE_BUDGET).unwrap();
    assert!(report.is_member, "{:?}", report.violation);
}

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        actual.trim_end(),
        expected.trim_end(),
        "golden file {name} differs"
    );
}

/// C7 with a D_0 vertex (7), a T_2 vertex (8) and a Y vertex (9) on both.
#[test]
fn short_cycle_with_t_vertex() {
    let g = cycle_plus(7, 10, &[(0, 7), (2, 8), (4, 8), (7, 9), (8, 9)]);
    assert_member(&g, 9);
    let ctx = classify(&g, &(0..7).collect::<Vec<_>>(), 9).unwrap();
    let x = compute_x_short(&g, &ctx, None).unwrap();
    check("short_t_vertex", &dump::to_json(&ctx, Some(&x), None));
}

/// C9 with an S_0 vertex (9) carrying a pendant Y vertex (10) and a T'_3
/// vertex (11).
#[test]
fn long_cycle_with_s_vertex() {
    let g = cycle_plus(9, 12, &[(0, 9), (2, 9), (4, 9), (9, 10), (3, 11), (7, 11)]);
    assert_member(&g, 9);
    let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 9).unwrap();
    let x = compute_x_long(&g, &ctx).unwrap();
    check("long_s_vertex", &dump::to_json(&ctx, Some(&x), None));
}

/// The smallest star gadget at t = 11.
#[test]
fn star_gadget() {
    let g = cycle_plus(9, 12, &[(0, 9), (4, 10), (9, 11), (10, 11)]);
    assert_member(&g, 11);
    let ctx = classify(&g, &(0..9).collect::<Vec<_>>(), 11).unwrap();
    let star = compute_star(&g, &ctx).unwrap();
    let x = compute_x_short(&g, &ctx, Some(&star)).unwrap();
    check("star_gadget", &dump::to_json(&ctx, Some(&x), Some(&star)));
}
