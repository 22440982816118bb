//! Minimisation toolkit for ω-automata with transition-based generalised
//! (co)Büchi acceptance.
//!
//! The crate provides:
//!
//! - a carrier [`Automaton`] type with acceptance evaluation on ultimately
//!   periodic words, emptiness, duality and residual analysis,
//! - structural transforms: condition automata, cascade composition,
//!   degeneralisation, breakpoint determinisation and greedy recolouring,
//! - finite-arena game solving (GR(1) fixpoint and a parity-game oracle),
//!   the two-token game and history-determinism checks,
//! - the canonical minimal history-deterministic coBüchi automaton and the
//!   state-minimal history-deterministic generalised coBüchi construction,
//! - graph-colouring gadget automata and a brute-force exact minimiser used
//!   as a cross-checking oracle.
//!
//! Everything is plain data: automata, arenas and strategies are immutable
//! after construction and all operations are pure functions.

pub mod alphabet;
pub mod automaton;
pub mod canonical;
pub mod colours;
pub mod emptiness;
pub mod fixtures;
pub mod games;
pub mod gencobuchi;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod language;
pub mod lasso;
pub mod random;
pub mod residual;
pub mod safety;
pub mod transforms;

pub use alphabet::Alphabet;
pub use automaton::{Automaton, AutomatonBuilder, Transition};
pub use colours::{Acceptance, AcceptanceFamily, ColourSet};
pub use lasso::Lasso;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A structural invariant of an automaton was violated at construction.
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    /// An operation was called outside its contract.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A parse error in one of the text formats, with a 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse {
        /// 1-based line of the offending token.
        line: usize,
        /// Description of the problem.
        message: String,
    },
    /// The HOA input uses a feature outside the supported subset.
    #[error("unsupported HOA feature: {0}")]
    UnsupportedHoa(String),
    /// An exhaustive search exceeded its node budget.
    #[error("search budget exceeded: explored {explored} nodes (budget {budget})")]
    BudgetExceeded {
        /// Nodes explored before giving up.
        explored: u64,
        /// The configured budget.
        budget: u64,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
