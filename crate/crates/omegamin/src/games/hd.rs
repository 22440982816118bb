//! History-determinism checks.
//!
//! The primary route completes the automaton, builds the two-token game
//! and solves its GR(1) objective with the nested fixpoint. Two
//! independent oracles cross-validate the verdicts in tests: the same
//! arena handed to the counter/parity route, and — for generalised
//! coBüchi automata — the letter game played against a breakpoint
//! determinisation, also solved through the parity reduction.

use super::arena::{GameArena, GameMove, Gr1Objective, Player};
use super::gr1::solve_gr1;
use super::parity::gr1_region_via_parity;
use super::token::build_two_token_game;
use crate::automaton::Automaton;
use crate::colours::{AcceptanceFamily, ColourSet};
use crate::transforms::{breakpoint_determinise, degeneralise};
use crate::{Error, Result};

/// Decides history-determinism: Eve wins the two-token game from the
/// diagonal initial position. The automaton is completed first; the added
/// rejecting sink never changes the verdict because it recognises the
/// empty residual.
pub fn is_history_deterministic(aut: &Automaton) -> Result<bool> {
    let complete = aut.complete();
    let arena = build_two_token_game(&complete)?;
    let (region, _) = solve_gr1(&arena);
    Ok(region.contains(arena.initial()))
}

/// Same verdict as [`is_history_deterministic`] but with the two-token
/// arena solved by the counter/parity oracle instead of the fixpoint.
pub fn hd_verdict_token_parity(aut: &Automaton) -> Result<bool> {
    let complete = aut.complete();
    let arena = build_two_token_game(&complete)?;
    let region = gr1_region_via_parity(&arena);
    Ok(region.contains(arena.initial()))
}

/// The letter-game oracle for generalised coBüchi automata: Adam spells a
/// word, a breakpoint-determinised reference tracks membership, and Eve
/// must produce an accepting run whenever the reference accepts. Eve wins
/// iff the automaton is history-deterministic. The arena and solving
/// algorithm are both independent of the primary route.
pub fn hd_verdict_letter_game(aut: &Automaton) -> Result<bool> {
    if aut.acceptance().family != AcceptanceFamily::GeneralisedCoBuchi {
        return Err(Error::Contract(
            "the letter-game oracle tracks membership deterministically and only supports generalised coBüchi automata".into(),
        ));
    }
    let aut = aut.complete();
    let reference = breakpoint_determinise(&degeneralise(&aut)?)?;
    let k = aut.acceptance().colours;
    let n = aut.states();
    let nd = reference.states();
    let sigma = aut.alphabet().len();

    // Positions: (d, q) awaiting a letter, then (d', q, a) awaiting Eve.
    let l0 = |d: usize, q: usize| d * n + q;
    let l1 = |d: usize, q: usize, a: usize| nd * n + (d * n + q) * sigma + a;
    let positions = nd * n + nd * n * sigma;
    let mut owners = vec![Player::Adam; positions];
    for i in nd * n..positions {
        owners[i] = Player::Eve;
    }
    // In `l1(d, q, a)` the reference has already taken its step: the first
    // index is the post-step reference state.
    let mut moves = Vec::new();
    for d in 0..nd {
        for q in 0..n {
            for a in 0..sigma {
                let td = reference.on(d, a)[0];
                // The reference's colour is the single guarantee: the
                // objective in contrapositive form reads "if Eve's run
                // sees all colours forever, the reference must too".
                moves.push(GameMove {
                    from: l0(d, q),
                    to: l1(td.dst, q, a),
                    premise: ColourSet::EMPTY,
                    conclusion: td.colours,
                });
                for t in aut.on(q, a) {
                    moves.push(GameMove {
                        from: l1(d, q, a),
                        to: l0(d, t.dst),
                        premise: t.colours,
                        conclusion: ColourSet::EMPTY,
                    });
                }
            }
        }
    }
    let arena = GameArena::new(
        owners,
        moves,
        l0(reference.initial(), aut.initial()),
        Gr1Objective {
            assumptions: k,
            guarantees: 1,
        },
    )?;
    let region = gr1_region_via_parity(&arena);
    Ok(region.contains(arena.initial()))
}
