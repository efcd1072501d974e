//! Solver verdicts against the exhaustive colourer on generated instances.

use tricol::solver::{SolveOptions, StarMode};
use tricol::testkit::{brute_force_colour, gen, GenKind, GeneratorConfig};
use tricol::{solve_with, validate_colouring, SolveResult};

#[derive(Default, Debug)]
struct Tally {
    instances: usize,
    colourable: usize,
    non_bipartite: usize,
    not_colourable: usize,
    out_of_class: usize,
    mismatches: Vec<String>,
}

fn run(kind: GenKind, n: usize, t: usize, seeds: std::ops::Range<u64>, p: f64) -> Tally {
    run_with(kind, n, t, seeds, p, &[])
}

fn run_with(
    kind: GenKind,
    n: usize,
    t: usize,
    seeds: std::ops::Range<u64>,
    p: f64,
    seed_edges: &[(usize, usize)],
) -> Tally {
    let mut tally = Tally::default();
    for seed in seeds {
        let mut cfg = GeneratorConfig::new(kind, n, t, seed);
        cfg.p = p;
        cfg.seed_edges = seed_edges.to_vec();
        let Some(inst) = gen(&cfg) else { continue };
        let g = inst.graph;
        tally.instances += 1;
        let truth = brute_force_colour(&g, None).unwrap();
        let sol = solve_with(&g, &SolveOptions::new(t)).unwrap();
        match (&sol.result, &truth) {
            (SolveResult::ThreeColourable(c) | SolveResult::Bipartite(c), Some(_)) => {
                assert!(validate_colouring(&g, c));
                tally.colourable += 1;
                tally.non_bipartite +=
                    usize::from(matches!(sol.result, SolveResult::ThreeColourable(_)));
            }
            (SolveResult::NotThreeColourable, None) => tally.not_colourable += 1,
            (SolveResult::OutOfClass(cert), _) => {
                tally.out_of_class += 1;
                tally.mismatches.push(format!(
                    "{kind} seed {seed}: member reported out of class: {cert:?}"
                ));
            }
            (r, t) => tally.mismatches.push(format!(
                "{kind} seed {seed}: solver {r:?}, brute force {:?}",
                t.is_some()
            )),
        }
    }
    tally
}

#[test]
fn random_t9() {
    let t = run(GenKind::Random, 20, 9, 0..60, 0.12);
    assert!(t.instances >= 30, "{t:?}");
    assert!(t.mismatches.is_empty(), "{:#?}", t.mismatches);
}

#[test]
fn random_around_a_seeded_cycle() {
    let c7: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    let t = run_with(GenKind::Random, 18, 9, 0..60, 0.08, &c7);
    assert!(t.instances >= 20, "{t:?}");
    assert!(t.non_bipartite > t.instances / 2, "{t:?}");
    assert!(t.mismatches.is_empty(), "{:#?}", t.mismatches);
}

#[test]
fn structured_t9() {
    for kind in [
        GenKind::StructuredCyclePendants,
        GenKind::StructuredTVertices,
    ] {
        let t = run(kind, 24, 9, 0..40, 0.3);
        assert!(t.instances >= 20, "{t:?}");
        assert!(t.mismatches.is_empty(), "{:#?}", t.mismatches);
    }
}

#[test]
fn star_gadget_t11() {
    let t = run(GenKind::StarGadget, 30, 11, 0..30, 0.3);
    assert!(t.instances >= 15, "{t:?}");
    assert!(t.mismatches.is_empty(), "{:#?}", t.mismatches);
}

#[test]
fn forced_star_path_agrees_with_plain_short_path() {
    for seed in 0..20 {
        let Some(inst) = gen(&GeneratorConfig::new(
            GenKind::StructuredCyclePendants,
            24,
            11,
            seed,
        )) else {
            continue;
        };
        let g = inst.graph;
        let plain = solve_with(&g, &SolveOptions::new(11)).unwrap();
        let forced = solve_with(
            &g,
            &SolveOptions {
                star_mode: StarMode::Always,
                ..SolveOptions::new(11)
            },
        )
        .unwrap();
        assert_eq!(
            plain.result.is_colourable(),
            forced.result.is_colourable(),
            "seed {seed}"
        );
        if let Some(c) = forced.result.colouring() {
            assert!(validate_colouring(&g, c));
        }
    }
}

#[test]
fn parallel_evaluation_gives_identical_results() {
    for (kind, t) in [(GenKind::StructuredTVertices, 9), (GenKind::StarGadget, 11)] {
        for seed in 0..15 {
            let Some(inst) = gen(&GeneratorConfig::new(kind, 30, t, seed)) else {
                continue;
            };
            let one = solve_with(&inst.graph, &SolveOptions::new(t)).unwrap();
            let four = solve_with(
                &inst.graph,
                &SolveOptions {
                    jobs: 4,
                    ..SolveOptions::new(t)
                },
            )
            .unwrap();
            assert_eq!(one.result, four.result, "{kind} seed {seed}");
        }
    }
}
