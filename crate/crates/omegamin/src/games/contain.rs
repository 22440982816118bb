//! Language containment and equivalence.
//!
//! `contains_hd(a, b)` decides `L(a) ⊆ L(b)` through a simulation game
//! when `b` is history-deterministic: Adam extends a run of `a` letter by
//! letter, Eve answers inside `b`, and Eve must accept whenever Adam does.
//! Soundness needs nothing from `b`; completeness holds because a resolver
//! for `b` realises the containment move by move.

use super::arena::{GameArena, GameMove, Gr1Objective, Player};
use super::gr1::solve_gr1;
use crate::automaton::Automaton;
use crate::colours::{AcceptanceFamily, ColourSet};
use crate::language::det_equivalent;
use crate::{Error, Result};

/// Decides `L(a) ⊆ L(b)` for history-deterministic `b` over the same
/// alphabet and acceptance family.
pub fn contains_hd(a: &Automaton, b: &Automaton) -> Result<bool> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::Contract("containment needs a shared alphabet".into()));
    }
    if a.acceptance().family != b.acceptance().family {
        return Err(Error::Contract(
            "containment needs matching acceptance families".into(),
        ));
    }
    let family = a.acceptance().family;
    let a = a.complete();
    let b = b.complete();
    let (ka, kb) = (a.acceptance().colours, b.acceptance().colours);
    let na = a.states();
    let nb = b.states();
    let sigma = a.alphabet().len();

    let c0 = |pa: usize, qb: usize| pa * nb + qb;
    let c1 = |pa: usize, qb: usize, letter: usize| na * nb + (pa * nb + qb) * sigma + letter;
    let positions = na * nb + na * nb * sigma;
    let mut owners = vec![Player::Adam; positions];
    for i in na * nb..positions {
        owners[i] = Player::Eve;
    }

    // genB:  Acc_a ⇒ Acc_b is directly GR(1) (assumptions = a's colours).
    // genCoB: the contrapositive ¬Acc_b ⇒ ¬Acc_a is GR(1) with b's colours
    // as assumptions and a's as guarantees.
    let mut moves = Vec::new();
    for pa in 0..na {
        for qb in 0..nb {
            for ta in a.from_state(pa) {
                let (premise, conclusion) = match family {
                    AcceptanceFamily::GeneralisedBuchi => (ta.colours, ColourSet::EMPTY),
                    AcceptanceFamily::GeneralisedCoBuchi => (ColourSet::EMPTY, ta.colours),
                };
                moves.push(GameMove {
                    from: c0(pa, qb),
                    to: c1(ta.dst, qb, ta.letter),
                    premise,
                    conclusion,
                });
            }
        }
    }
    for pa_dst in 0..na {
        for qb in 0..nb {
            for letter in 0..sigma {
                for tb in b.on(qb, letter) {
                    let (premise, conclusion) = match family {
                        AcceptanceFamily::GeneralisedBuchi => (ColourSet::EMPTY, tb.colours),
                        AcceptanceFamily::GeneralisedCoBuchi => (tb.colours, ColourSet::EMPTY),
                    };
                    moves.push(GameMove {
                        from: c1(pa_dst, qb, letter),
                        to: c0(pa_dst, tb.dst),
                        premise,
                        conclusion,
                    });
                }
            }
        }
    }
    let objective = match family {
        AcceptanceFamily::GeneralisedBuchi => Gr1Objective {
            assumptions: ka,
            guarantees: kb,
        },
        AcceptanceFamily::GeneralisedCoBuchi => Gr1Objective {
            assumptions: kb,
            guarantees: ka,
        },
    };
    let arena = GameArena::new(owners, moves, c0(a.initial(), b.initial()), objective)?;
    let (region, _) = solve_gr1(&arena);
    Ok(region.contains(arena.initial()))
}

/// Equivalence mode for [`equivalent`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquivMode {
    /// Both automata deterministic; decided by difference products.
    Det,
    /// Both automata history-deterministic; decided by two containment games.
    Hd,
}

/// Exact language equivalence under the given mode.
pub fn equivalent(a: &Automaton, b: &Automaton, mode: EquivMode) -> Result<bool> {
    match mode {
        EquivMode::Det => det_equivalent(a, b),
        EquivMode::Hd => Ok(contains_hd(a, b)? && contains_hd(b, a)?),
    }
}
