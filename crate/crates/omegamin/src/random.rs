//! Seeded random generators for automata, lassos and game arenas. Used by
//! the test suites and benchmarks; all generators are deterministic in the
//! seed.

use crate::colours::{Acceptance, AcceptanceFamily, ColourSet};
use crate::games::{GameArena, GameMove, Gr1Objective, Player};
use crate::lasso::Lasso;
use crate::{Alphabet, Automaton, AutomatonBuilder};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Shape of a random automaton.
#[derive(Clone, Copy, Debug)]
pub struct AutomatonShape {
    /// Number of states.
    pub states: usize,
    /// Number of letters (named `a`, `b`, ...).
    pub letters: usize,
    /// Acceptance condition.
    pub acceptance: Acceptance,
    /// Whether the result must be deterministic (and complete).
    pub deterministic: bool,
    /// Probability that a transition carries each colour.
    pub colour_density: f64,
}

/// A fresh deterministic RNG for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn letter_names(n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|i| {
        char::from_u32('a' as u32 + i as u32)
            .expect("at most 26 letters")
            .to_string()
    }))
    .expect("non-empty")
}

/// Samples an automaton of the given shape. Deterministic automata are
/// complete; nondeterministic ones have zero to two successors per letter
/// and may be incomplete, but every state keeps at least one outgoing
/// transition so the trimmed part stays meaningful.
pub fn automaton(rng: &mut ChaCha8Rng, shape: AutomatonShape) -> Automaton {
    let alphabet = letter_names(shape.letters);
    let k = shape.acceptance.colours;
    let mut b = AutomatonBuilder::new(alphabet, shape.acceptance, shape.states);
    for q in 0..shape.states {
        let mut has_edge = false;
        for a in 0..shape.letters {
            let succs: usize = if shape.deterministic {
                1
            } else {
                // Skip some letters entirely, sometimes branch.
                match rng.gen_range(0..10) {
                    0..=2 => 0,
                    3..=7 => 1,
                    _ => 2,
                }
            };
            let mut targets = Vec::new();
            for _ in 0..succs {
                let dst = rng.gen_range(0..shape.states);
                if !targets.contains(&dst) {
                    targets.push(dst);
                }
            }
            for dst in targets {
                let mut colours = ColourSet::EMPTY;
                for c in 0..k {
                    if rng.gen_bool(shape.colour_density) {
                        colours = colours.with(c);
                    }
                }
                b = b.transition(q, a, dst, colours);
                has_edge = true;
            }
        }
        if !has_edge {
            let a = rng.gen_range(0..shape.letters);
            let dst = rng.gen_range(0..shape.states);
            b = b.transition(q, a, dst, ColourSet::EMPTY);
        }
    }
    b.build().expect("random automaton is valid")
}

/// Convenience shape: random deterministic complete coBüchi automaton.
pub fn det_cobuchi(rng: &mut ChaCha8Rng, states: usize, letters: usize) -> Automaton {
    automaton(
        rng,
        AutomatonShape {
            states,
            letters,
            acceptance: Acceptance::cobuchi(1),
            deterministic: true,
            colour_density: 0.3,
        },
    )
}

/// Convenience shape: random deterministic complete generalised Büchi.
pub fn det_gen_buchi(rng: &mut ChaCha8Rng, states: usize, letters: usize, colours: usize) -> Automaton {
    automaton(
        rng,
        AutomatonShape {
            states,
            letters,
            acceptance: Acceptance::buchi(colours),
            deterministic: true,
            colour_density: 0.35,
        },
    )
}

/// Samples a lasso with stem and cycle lengths in the given ranges.
pub fn lasso(rng: &mut ChaCha8Rng, letters: usize, max_stem: usize, max_cycle: usize) -> Lasso {
    let stem_len = rng.gen_range(0..=max_stem);
    let cycle_len = rng.gen_range(1..=max_cycle.max(1));
    let stem = (0..stem_len).map(|_| rng.gen_range(0..letters)).collect();
    let cycle = (0..cycle_len).map(|_| rng.gen_range(0..letters)).collect();
    Lasso::new(stem, cycle).expect("cycle non-empty")
}

/// All lassos with `|stem| ≤ max_stem` and `1 ≤ |cycle| ≤ max_cycle`.
pub fn all_lassos(letters: usize, max_stem: usize, max_cycle: usize) -> Vec<Lasso> {
    fn words(letters: usize, max_len: usize, include_empty: bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if include_empty {
            out.push(Vec::new());
        }
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..letters {
                    let mut w2 = w.clone();
                    w2.push(l);
                    out.push(w2.clone());
                    next.push(w2);
                }
            }
            layer = next;
        }
        out
    }
    let stems = words(letters, max_stem, true);
    let cycles: Vec<Vec<usize>> = words(letters, max_cycle, false);
    let mut lassos = Vec::new();
    for s in &stems {
        for c in &cycles {
            lassos.push(Lasso::new(s.clone(), c.clone()).unwrap());
        }
    }
    lassos
}

/// Samples a complete game arena with the given number of positions and a
/// GR(1) objective with `assumptions`/`guarantees` colours.
pub fn arena(
    rng: &mut ChaCha8Rng,
    positions: usize,
    assumptions: usize,
    guarantees: usize,
) -> GameArena {
    let owners: Vec<Player> = (0..positions)
        .map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam })
        .collect();
    let mut moves = Vec::new();
    for p in 0..positions {
        let deg = rng.gen_range(1..=3);
        for _ in 0..deg {
            let to = rng.gen_range(0..positions);
            let mut premise = ColourSet::EMPTY;
            let mut conclusion = ColourSet::EMPTY;
            for c in 0..assumptions {
                if rng.gen_bool(0.4) {
                    premise = premise.with(c);
                }
            }
            for c in 0..guarantees {
                if rng.gen_bool(0.4) {
                    conclusion = conclusion.with(c);
                }
            }
            moves.push(GameMove {
                from: p,
                to,
                premise,
                conclusion,
            });
        }
    }
    GameArena::new(
        owners,
        moves,
        0,
        Gr1Objective {
            assumptions,
            guarantees,
        },
    )
    .expect("random arena is complete")
}

/// Samples an automaton whose family is chosen by the coin in `shape`;
/// exists mainly so callers can sweep both families with one helper.
pub fn either_family(rng: &mut ChaCha8Rng, states: usize, letters: usize, colours: usize) -> Automaton {
    let family = if rng.gen_bool(0.5) {
        AcceptanceFamily::GeneralisedBuchi
    } else {
        AcceptanceFamily::GeneralisedCoBuchi
    };
    automaton(
        rng,
        AutomatonShape {
            states,
            letters,
            acceptance: Acceptance {
                family,
                colours,
            },
            deterministic: false,
            colour_density: 0.3,
        },
    )
}
