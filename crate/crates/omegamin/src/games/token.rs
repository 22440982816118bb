//! The two-token game: Adam spells a word and moves two tokens along runs
//! of the automaton, Eve builds her own run one transition at a time. Eve
//! wins when her run accepts or both of Adam's reject. Winning this game
//! characterises history-determinism for generalised Büchi and coBüchi
//! automata, and the objective folds into a GR(1) condition.

use super::arena::{GameArena, GameMove, Gr1Objective, Player};
use crate::automaton::Automaton;
use crate::colours::{AcceptanceFamily, ColourSet};
use crate::{Error, Result};

/// Builds the two-token arena for a complete automaton.
///
/// Round structure from `(p, q1, q2)`: Adam picks a letter, Eve picks a
/// transition `p → p'`, Adam picks transitions for both tokens. For
/// coBüchi acceptance the objective is used in contrapositive form —
/// assumptions are Eve's own colours, guarantees the tokens' colours. For
/// Büchi acceptance the disjunction over the two tokens is expanded into
/// pairwise colour unions, giving `k²` assumption colours.
pub fn build_two_token_game(aut: &Automaton) -> Result<GameArena> {
    if !aut.is_complete() {
        return Err(Error::Contract("two-token game needs a complete automaton".into()));
    }
    let n = aut.states();
    let sigma = aut.alphabet().len();
    let k = aut.acceptance().colours;
    let family = aut.acceptance().family;
    if family == AcceptanceFamily::GeneralisedBuchi && k > 8 {
        return Err(Error::Contract(
            "two-token game for generalised Büchi supports at most 8 colours (k² expansion)".into(),
        ));
    }

    let triple = |p: usize, q1: usize, q2: usize| (p * n + q1) * n + q2;
    let stage0 = |p: usize, q1: usize, q2: usize| triple(p, q1, q2);
    let stage1 = |p: usize, q1: usize, q2: usize, a: usize| n * n * n + triple(p, q1, q2) * sigma + a;
    let stage2 =
        |p: usize, q1: usize, q2: usize, a: usize| n * n * n * (1 + sigma) + triple(p, q1, q2) * sigma + a;
    let positions = n * n * n * (1 + 2 * sigma);

    let mut owners = vec![Player::Adam; positions];
    for p in 0..n {
        for q1 in 0..n {
            for q2 in 0..n {
                for a in 0..sigma {
                    owners[stage1(p, q1, q2, a)] = Player::Eve;
                }
            }
        }
    }

    let buchi_pair = |c1: ColourSet, c2: ColourSet| {
        // Pair colour (i, j) fires when token 1 emits i or token 2 emits j.
        let mut set = ColourSet::EMPTY;
        for i in 0..k {
            for j in 0..k {
                if c1.contains(i) || c2.contains(j) {
                    set = set.with(i * k + j);
                }
            }
        }
        set
    };

    let mut moves = Vec::new();
    for p in 0..n {
        for q1 in 0..n {
            for q2 in 0..n {
                for a in 0..sigma {
                    // Adam announces the letter.
                    moves.push(GameMove {
                        from: stage0(p, q1, q2),
                        to: stage1(p, q1, q2, a),
                        premise: ColourSet::EMPTY,
                        conclusion: ColourSet::EMPTY,
                    });
                    // Eve extends her run.
                    for te in aut.on(p, a) {
                        let (premise, conclusion) = match family {
                            AcceptanceFamily::GeneralisedCoBuchi => (te.colours, ColourSet::EMPTY),
                            AcceptanceFamily::GeneralisedBuchi => (ColourSet::EMPTY, te.colours),
                        };
                        moves.push(GameMove {
                            from: stage1(p, q1, q2, a),
                            to: stage2(te.dst, q1, q2, a),
                            premise,
                            conclusion,
                        });
                    }
                    // Adam extends both tokens.
                    for t1 in aut.on(q1, a) {
                        for t2 in aut.on(q2, a) {
                            let (premise, conclusion) = match family {
                                AcceptanceFamily::GeneralisedCoBuchi => {
                                    let mut concl = t1.colours;
                                    for c in t2.colours.iter() {
                                        concl = concl.with(k + c);
                                    }
                                    (ColourSet::EMPTY, concl)
                                }
                                AcceptanceFamily::GeneralisedBuchi => {
                                    (buchi_pair(t1.colours, t2.colours), ColourSet::EMPTY)
                                }
                            };
                            moves.push(GameMove {
                                from: stage2(p, q1, q2, a),
                                to: stage0(p, t1.dst, t2.dst),
                                premise,
                                conclusion,
                            });
                        }
                    }
                }
            }
        }
    }

    let objective = match family {
        AcceptanceFamily::GeneralisedCoBuchi => Gr1Objective {
            assumptions: k,
            guarantees: 2 * k,
        },
        AcceptanceFamily::GeneralisedBuchi => Gr1Objective {
            assumptions: k * k,
            guarantees: k,
        },
    };
    let init = aut.initial();
    GameArena::new(owners, moves, stage0(init, init, init), objective)
}
