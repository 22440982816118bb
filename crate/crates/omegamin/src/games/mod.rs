//! Finite-arena games with GR(1)-style implication objectives, the
//! two-token game characterising history-determinism, and containment
//! games for history-deterministic automata.
//!
//! Two independent solvers are provided: a three-nested fixpoint for GR(1)
//! arenas ([`solve_gr1`]) and a reduction to a three-priority parity game
//! via round-robin colour counters solved by Zielonka's recursive
//! decomposition ([`gr1_region_via_parity`]). They cross-validate each
//! other in the test suites.

mod arena;
mod contain;
mod gr1;
mod hd;
mod parity;
mod token;

pub use arena::{GameArena, GameMove, Gr1Objective, Player, Strategy};
pub use contain::{contains_hd, equivalent, EquivMode};
pub use gr1::{solve_gr1, strategy_violation};
pub use hd::{hd_verdict_letter_game, hd_verdict_token_parity, is_history_deterministic};
pub use parity::{gr1_region_via_parity, zielonka_eve_region, ParityGame};
pub use token::build_two_token_game;
