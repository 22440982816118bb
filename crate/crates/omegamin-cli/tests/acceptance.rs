//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p omegamin-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines. Every tolerance and scale is pinned
//! here; the runtime budgets are asserted, not just observed.

use omegamin::canonical::{check_canonicity, minimise_hd_cobuchi};
use omegamin::gencobuchi::{build_general, build_prefix_independent, size_profile};
use omegamin::games::{
    contains_hd, gr1_region_via_parity, hd_verdict_letter_game, is_history_deterministic,
    solve_gr1, strategy_violation,
};
use omegamin::hardness::{
    colouring_to_automaton, exact_colour_min_one_state, exact_minimise, exp_family,
    graph_colouring, graph_language_reference, Colouring, ExactMinMode, ExactMinOutcome,
    ExactMinQuery, Graph,
};
use omegamin::io::{parse_native, serialise_native};
use omegamin::language::det_equivalent;
use omegamin::lasso::lasso_accepts;
use omegamin::transforms::recolour_greedy;
use omegamin::{fixtures, random, Automaton};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_omegamin")
}

fn write_fixture(dir: &Path, name: &str, aut: &Automaton) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serialise_native(aut)).unwrap();
    path
}

fn run_minimize(input: &Path, mode: &str) -> Automaton {
    let out = Command::new(binary())
        .args(["minimize", "--mode", mode])
        .arg(input)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "minimize {mode} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    parse_native(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

fn assert_budget(start: Instant, budget: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{what} took {elapsed:?}, over the {budget:?} budget"
    );
}

/// Criterion 1: the three-letter doubled-factor language end to end.
#[test]
fn criterion_1_factor_xx_end_to_end() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let t3 = fixtures::factor_xx_det3();
    let t3_path = write_fixture(dir.path(), "t3.aut", &t3);

    let cobuchi = run_minimize(&t3_path, "hd-cobuchi");
    assert_eq!(cobuchi.states(), 6, "canonical coBüchi size");

    let gencobuchi = run_minimize(&t3_path, "hd-gencobuchi");
    assert_eq!(gencobuchi.states(), 2, "generalised coBüchi size");
    assert_eq!(gencobuchi.acceptance().colours, 3, "colour count");

    for out in [&cobuchi, &gencobuchi] {
        assert!(is_history_deterministic(out).unwrap());
        assert!(contains_hd(out, &t3).unwrap());
        assert!(contains_hd(&t3, out).unwrap());
    }
    assert_budget(start, Duration::from_secs(5), "criterion 1");
    println!("criterion 1 (factor-xx end-to-end, 6 and 2+3 states): PASS in {:?}", start.elapsed());
}

/// Criterion 2: "finitely many b or finitely many c".
#[test]
fn criterion_2_fin_b_or_c() {
    let start = Instant::now();
    let input = fixtures::fin_b_or_c_hd3();
    let canon = minimise_hd_cobuchi(&input).unwrap();
    assert_eq!(canon.automaton.states(), 2, "canonical coBüchi size");

    let out = build_prefix_independent(&canon.automaton).unwrap();
    assert_eq!(out.automaton.states(), 1, "generalised coBüchi size");
    assert_eq!(out.automaton.acceptance().colours, 2, "colour count");

    // One state is optimal for the generalised automaton (zero-state
    // automata do not exist), witnessed by the search finding it.
    match exact_minimise(&out.automaton, &ExactMinQuery::new(1, 2, ExactMinMode::Hd)).unwrap() {
        ExactMinOutcome::Found(a) => assert_eq!(a.states(), 1),
        ExactMinOutcome::Infeasible => panic!("one state must be feasible"),
    }
    // Two states are optimal in the single-colour model: one is not enough.
    assert!(matches!(
        exact_minimise(&canon.automaton, &ExactMinQuery::new(1, 1, ExactMinMode::Hd)).unwrap(),
        ExactMinOutcome::Infeasible
    ));
    assert!(matches!(
        exact_minimise(&canon.automaton, &ExactMinQuery::new(2, 1, ExactMinMode::Hd)).unwrap(),
        ExactMinOutcome::Found(_)
    ));
    assert_budget(start, Duration::from_secs(5), "criterion 2");
    println!("criterion 2 (fin-b-or-c, 2 and 1+2 states): PASS in {:?}", start.elapsed());
}

/// Criterion 3: canonicity suite over 100 random deterministic coBüchi
/// automata, with exact minimality checks for the small outputs.
#[test]
fn criterion_3_canonicity_suite() {
    let start = Instant::now();
    let mut rng = random::rng(1009);
    let mut small_outputs = 0;
    for i in 0..100 {
        let (states, letters) = if i % 3 == 0 { (5, 3) } else { (6, 2) };
        let input = random::det_cobuchi(&mut rng, states, letters);
        let canon = minimise_hd_cobuchi(&input).unwrap();
        let report = check_canonicity(&canon.automaton).unwrap();
        assert!(report.all(), "input {i}: {report:?}");
        assert!(is_history_deterministic(&canon.automaton).unwrap(), "input {i}");
        assert!(contains_hd(&canon.automaton, &input).unwrap(), "input {i}");
        assert!(contains_hd(&input, &canon.automaton).unwrap(), "input {i}");
        let m = canon.automaton.states();
        if (2..=4).contains(&m) {
            small_outputs += 1;
            assert!(
                matches!(
                    exact_minimise(
                        &canon.automaton,
                        &ExactMinQuery::new(m - 1, 1, ExactMinMode::Hd)
                    )
                    .unwrap(),
                    ExactMinOutcome::Infeasible
                ),
                "input {i}: {m}-state output not minimal"
            );
        }
    }
    assert!(small_outputs >= 20, "the sample must exercise small outputs");
    assert_budget(start, Duration::from_secs(600), "criterion 3");
    println!(
        "criterion 3 (canonicity suite, 100 automata, {small_outputs} minimality checks): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 4: exact size laws of the generalised construction.
#[test]
fn criterion_4_size_laws() {
    let start = Instant::now();
    let fixtures: Vec<Automaton> = vec![
        fixtures::factor_xx_det3(),
        fixtures::factor_xx_canonical6(),
        fixtures::fin_b_or_c_det2(),
        fixtures::fin_b_or_c_hd3(),
        fixtures::factor_xx_transient_init(),
        fixtures::factor_xx_two_letters(),
        fixtures::factor_xx_two_letters_transient(),
    ];
    let mut rng = random::rng(401);
    let randoms: Vec<Automaton> = (0..40)
        .map(|i| random::det_cobuchi(&mut rng, 4 + i % 3, 2 + i % 2))
        .collect();
    for input in fixtures.iter().chain(&randoms) {
        let canon = minimise_hd_cobuchi(input).unwrap();
        let profile = size_profile(&canon.automaton).unwrap();
        let out = build_general(&canon.automaton).unwrap();
        assert_eq!(out.automaton.states(), profile.total, "Σ n_j law");
        assert_eq!(
            out.automaton.acceptance().colours,
            canon.safe.components.len(),
            "colour count = number of safe components"
        );
        if canon.partition.classes == 1 {
            let pi = build_prefix_independent(&canon.automaton).unwrap();
            assert_eq!(pi.automaton.states(), profile.n_max, "n_max law");
            assert_eq!(pi.automaton, out.automaton, "single-class agreement");
        }
    }
    println!("criterion 4 (size laws on {} inputs): PASS in {:?}", 7 + 40, start.elapsed());
}

/// Criterion 5: history-determinism verdicts, cross-validated against the
/// independent letter-game oracle.
#[test]
fn criterion_5_hd_checking() {
    let start = Instant::now();
    for det in [
        fixtures::fin_b_or_c_det2(),
        fixtures::factor_xx_det3(),
        fixtures::factor_xx_canonical6(),
        fixtures::accept_all_1(),
    ] {
        assert!(is_history_deterministic(&det).unwrap());
    }
    let canon = minimise_hd_cobuchi(&fixtures::factor_xx_det3()).unwrap();
    let gcb2 = build_prefix_independent(&canon.automaton).unwrap();
    assert!(is_history_deterministic(&gcb2.automaton).unwrap());
    assert!(!is_history_deterministic(&fixtures::fin_a_or_b_nonhd3()).unwrap());

    let mut rng = random::rng(509);
    let mut positives = 0;
    for round in 0..50 {
        let aut = random::automaton(
            &mut rng,
            random::AutomatonShape {
                states: 2 + round % 4,
                letters: 2,
                acceptance: omegamin::Acceptance::cobuchi(1 + round % 2),
                deterministic: false,
                colour_density: 0.35,
            },
        );
        let primary = is_history_deterministic(&aut).unwrap();
        let oracle = hd_verdict_letter_game(&aut).unwrap();
        assert_eq!(primary, oracle, "round {round}");
        positives += primary as usize;
    }
    assert!(positives > 0 && positives < 50, "sample must mix verdicts");
    assert_budget(start, Duration::from_secs(300), "criterion 5");
    println!(
        "criterion 5 (hd checking, fixtures + 50 random cross-validated): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 6: the GR(1) fixpoint solver versus the counter/parity
/// oracle, with exhaustive strategy validation.
#[test]
fn criterion_6_game_solver_cross_validation() {
    let start = Instant::now();
    let mut rng = random::rng(601);
    for round in 0..200 {
        let positions = 2 + round % 7;
        let ka = 1 + round % 2;
        let kg = 1 + (round / 2) % 2;
        let arena = random::arena(&mut rng, positions, ka, kg);
        let (region, strategy) = solve_gr1(&arena);
        assert_eq!(region, gr1_region_via_parity(&arena), "round {round}");
        assert!(
            strategy_violation(&arena, &strategy).is_none(),
            "round {round}: strategy admits a violating play"
        );
    }
    assert_budget(start, Duration::from_secs(120), "criterion 6");
    println!("criterion 6 (200 arenas, two solvers + strategy validation): PASS in {:?}", start.elapsed());
}

/// Criterion 7: graph-colouring correspondence on every triangle-full
/// 4-clique-free graph with at most 5 vertices.
#[test]
fn criterion_7_gadget_correspondence() {
    let start = Instant::now();
    let classes = triangle_full_4cf_classes();
    assert!(!classes.is_empty());
    for g in &classes {
        let reference = graph_language_reference(g).unwrap();
        let colourable = graph_colouring(g, 3).is_some();
        let feasible = matches!(
            exact_minimise(
                &reference,
                &ExactMinQuery::new(3, g.vertices(), ExactMinMode::Det)
            )
            .unwrap(),
            ExactMinOutcome::Found(_)
        );
        assert_eq!(colourable, feasible, "graph {:?}", g);
        for k in 1..=g.vertices() {
            if let Some(col) = graph_colouring(g, k) {
                let aut = colouring_to_automaton(g, &col).unwrap();
                assert!(det_equivalent(&aut, &reference).unwrap());
            }
        }
    }
    assert_budget(start, Duration::from_secs(900), "criterion 7");
    println!(
        "criterion 7 (gadget correspondence on {} graph classes): PASS in {:?}",
        classes.len(),
        start.elapsed()
    );
}

/// All triangle-full 4-clique-free graphs with 3..=5 vertices, up to
/// isomorphism.
fn triangle_full_4cf_classes() -> Vec<Graph> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    fn canon(g: &Graph) -> Vec<(usize, usize)> {
        let mut best: Option<Vec<(usize, usize)>> = None;
        for p in permutations(g.vertices()) {
            let mut edges: Vec<(usize, usize)> = g
                .edges()
                .map(|(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                best = Some(edges);
            }
        }
        best.unwrap()
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for n in 3..=5usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        for code in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            if edges.is_empty() {
                continue;
            }
            let g = Graph::new(n, edges).unwrap();
            if g.is_triangle_full()
                && !g.has_clique(4)
                && (0..n).all(|v| g.degree(v) > 0)
                && seen.insert(canon(&g))
            {
                out.push(g);
            }
        }
    }
    out
}

/// Criterion 8: the exponential colour family.
#[test]
fn criterion_8_exponential_colour_family() {
    let start = Instant::now();
    for n in 1..=3usize {
        let aut = exp_family(n).unwrap();
        assert_eq!(aut.states(), n + 1);
        assert_eq!(
            exact_colour_min_one_state(&aut).unwrap(),
            1 << n,
            "2^{n} colours required"
        );
    }
    assert_budget(start, Duration::from_secs(120), "criterion 8");
    println!("criterion 8 (one-state colour minimum = 2^n for n=1..3): PASS in {:?}", start.elapsed());
}

/// Criterion 9: duality on sampled lassos and greedy recolouring.
#[test]
fn criterion_9_duality_and_recolouring() {
    let start = Instant::now();
    for fixture in [
        fixtures::fin_b_or_c_det2(),
        fixtures::factor_xx_det3(),
        fixtures::factor_xx_canonical6(),
        fixtures::accept_all_1(),
    ] {
        let dual = fixture.dualise().unwrap();
        let sigma = fixture.alphabet().len();
        let mut rng = random::rng(907);
        for _ in 0..1000 {
            let lasso = random::lasso(&mut rng, sigma, 3, 4);
            let a = lasso_accepts(&fixture, &lasso).unwrap();
            let b = lasso_accepts(&dual, &lasso).unwrap();
            assert!(a ^ b, "duality violated on {}", lasso.display(fixture.alphabet()));
        }
    }
    let mut rng = random::rng(911);
    for _ in 0..100 {
        let aut = random::det_gen_buchi(&mut rng, 5, 2, 3);
        let reduced = recolour_greedy(&aut).unwrap();
        assert!(reduced.acceptance().colours <= aut.acceptance().colours);
        assert!(det_equivalent(&aut, &reduced).unwrap());
        assert_eq!(recolour_greedy(&reduced).unwrap(), reduced, "idempotence");
    }
    assert_budget(start, Duration::from_secs(120), "criterion 9");
    println!("criterion 9 (duality ×4000 lassos, recolouring ×100): PASS in {:?}", start.elapsed());
}

/// Identity colouring of K3 versus the trivial graph reference, driven
/// through the CLI equivalence check.
#[test]
fn cli_equivalence_of_colouring_automata() {
    let dir = tempfile::tempdir().unwrap();
    let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let reference = graph_language_reference(&g).unwrap();
    let coloured = colouring_to_automaton(&g, &Colouring(vec![0, 1, 2])).unwrap();
    let a = write_fixture(dir.path(), "a.aut", &reference);
    let b = write_fixture(dir.path(), "b.aut", &coloured);
    let out = Command::new(binary())
        .args(["equiv"])
        .arg(&a)
        .arg(&b)
        .args(["--mode", "det"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("equivalent: yes"));
}
