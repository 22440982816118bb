//! Cross-checks of lasso membership and emptiness against independently
//! written naive oracles.

use omegamin::emptiness::{emptiness_witness, is_empty};
use omegamin::lasso::{lasso_accepts, Lasso};
use omegamin::random::{self, AutomatonShape};
use omegamin::{Acceptance, AcceptanceFamily, Automaton, ColourSet};

/// Naive membership oracle: builds the (state, position) product with
/// per-pair reachability computed by repeated scans (no shared SCC code),
/// then looks for a self-reaching pair whose mutual-reachability class
/// satisfies the acceptance condition.
fn naive_accepts(aut: &Automaton, lasso: &Lasso) -> bool {
    let period = lasso.stem.len() + lasso.cycle.len();
    let n = aut.states() * period;
    let node = |q: usize, pos: usize| q * period + pos;
    let next_pos = |pos: usize| if pos + 1 < period { pos + 1 } else { lasso.stem.len() };
    let mut edges: Vec<(usize, usize, ColourSet)> = Vec::new();
    for q in 0..aut.states() {
        for pos in 0..period {
            for t in aut.on(q, lasso.letter_at(pos)) {
                edges.push((node(q, pos), node(t.dst, next_pos(pos)), t.colours));
            }
        }
    }
    // Floyd–Warshall-style boolean closure, optionally restricted.
    let closure = |allowed: &dyn Fn(ColourSet) -> bool| -> Vec<Vec<bool>> {
        let mut reach = vec![vec![false; n]; n];
        for &(f, t, c) in &edges {
            if allowed(c) {
                reach[f][t] = true;
            }
        }
        for mid in 0..n {
            for a in 0..n {
                if reach[a][mid] {
                    for b in 0..n {
                        if reach[mid][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
        }
        reach
    };
    let any = closure(&|_| true);
    let start = node(aut.initial(), 0);
    let reachable = |v: usize| v == start || any[start][v];
    let k = aut.acceptance().colours;
    match aut.acceptance().family {
        AcceptanceFamily::GeneralisedCoBuchi => {
            if k == 0 {
                return false;
            }
            (0..k).any(|c| {
                let sub = closure(&|cols| !cols.contains(c));
                (0..n).any(|v| reachable(v) && sub[v][v])
            })
        }
        AcceptanceFamily::GeneralisedBuchi => {
            // Some mutually-reachable cluster must cover every colour.
            (0..n).any(|v| {
                if !reachable(v) || !any[v][v] {
                    return false;
                }
                let mut cover = ColourSet::EMPTY;
                for &(f, t, c) in &edges {
                    let in_cluster = (f == v || (any[v][f] && any[f][v]))
                        && (t == v || (any[v][t] && any[t][v]));
                    if in_cluster {
                        cover = cover.union(c);
                    }
                }
                ColourSet::all(k).is_subset(cover)
            })
        }
    }
}

#[test]
fn membership_matches_naive_oracle_on_random_automata() {
    let mut rng = random::rng(101);
    for round in 0..120 {
        let family = if round % 2 == 0 {
            AcceptanceFamily::GeneralisedBuchi
        } else {
            AcceptanceFamily::GeneralisedCoBuchi
        };
        let aut = random::automaton(
            &mut rng,
            AutomatonShape {
                states: 4,
                letters: 3,
                acceptance: Acceptance { family, colours: 2 },
                deterministic: false,
                colour_density: 0.4,
            },
        );
        for _ in 0..25 {
            let lasso = random::lasso(&mut rng, 3, 4, 4);
            assert_eq!(
                lasso_accepts(&aut, &lasso).unwrap(),
                naive_accepts(&aut, &lasso),
                "{} on {:?}",
                lasso.display(aut.alphabet()),
                aut
            );
        }
    }
}

#[test]
fn emptiness_agrees_with_exhaustive_lasso_search() {
    let mut rng = random::rng(103);
    // Witnesses of 4-state automata have stems no longer than the state
    // count and covering cycles within one component, so stems up to 4 and
    // cycles up to 8 are exhaustive for this shape.
    let lassos = random::all_lassos(2, 4, 8);
    for round in 0..40 {
        let family = if round % 2 == 0 {
            AcceptanceFamily::GeneralisedBuchi
        } else {
            AcceptanceFamily::GeneralisedCoBuchi
        };
        let aut = random::automaton(
            &mut rng,
            AutomatonShape {
                states: 4,
                letters: 2,
                acceptance: Acceptance { family, colours: 2 },
                deterministic: false,
                colour_density: 0.35,
            },
        );
        let empty = is_empty(&aut);
        if let Some(witness) = emptiness_witness(&aut) {
            assert!(lasso_accepts(&aut, &witness).unwrap());
        }
        // A 4-state automaton with 2 colours has an accepted lasso with
        // stem and cycle of length at most 8 whenever it is non-empty.
        let found = lassos.iter().any(|l| lasso_accepts(&aut, l).unwrap());
        assert_eq!(!empty, found);
    }
}
