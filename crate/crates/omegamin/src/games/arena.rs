//! Game arenas with colour-labelled moves and implication objectives.

use crate::colours::ColourSet;
use crate::graph::BitSet;
use crate::{Error, Result};

/// The two players. Eve resolves nondeterminism, Adam provides input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Player {
    /// The protagonist; wins when the implication objective holds.
    Eve,
    /// The antagonist.
    Adam,
}

impl Player {
    /// The other player.
    pub fn other(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }
}

/// A move between positions, labelled with premise colours (assumptions)
/// and conclusion colours (guarantees).
#[derive(Clone, Copy, Debug)]
pub struct GameMove {
    /// Source position.
    pub from: usize,
    /// Target position.
    pub to: usize,
    /// Assumption colours emitted by the move.
    pub premise: ColourSet,
    /// Guarantee colours emitted by the move.
    pub conclusion: ColourSet,
}

/// Implication objective: Eve wins a play iff every assumption colour
/// occurring infinitely often implies every guarantee colour does — that
/// is, (all assumptions recur) ⇒ (all guarantees recur).
#[derive(Clone, Copy, Debug)]
pub struct Gr1Objective {
    /// Number of assumption colours.
    pub assumptions: usize,
    /// Number of guarantee colours.
    pub guarantees: usize,
}

/// A finite arena. Every position has at least one outgoing move.
pub struct GameArena {
    owners: Vec<Player>,
    moves: Vec<GameMove>,
    move_start: Vec<usize>,
    initial: usize,
    objective: Gr1Objective,
}

impl GameArena {
    /// Validates completeness and builds the arena.
    pub fn new(
        owners: Vec<Player>,
        mut moves: Vec<GameMove>,
        initial: usize,
        objective: Gr1Objective,
    ) -> Result<Self> {
        let n = owners.len();
        if initial >= n {
            return Err(Error::Contract("arena initial position out of range".into()));
        }
        for m in &moves {
            if m.from >= n || m.to >= n {
                return Err(Error::Contract("arena move out of range".into()));
            }
        }
        moves.sort_by_key(|m| m.from);
        let mut move_start = vec![0usize; n + 1];
        for m in &moves {
            move_start[m.from + 1] += 1;
        }
        for p in 0..n {
            move_start[p + 1] += move_start[p];
        }
        for p in 0..n {
            if move_start[p] == move_start[p + 1] {
                return Err(Error::Contract(format!(
                    "arena position {p} has no outgoing move"
                )));
            }
        }
        Ok(GameArena {
            owners,
            moves,
            move_start,
            initial,
            objective,
        })
    }

    /// Number of positions.
    pub fn positions(&self) -> usize {
        self.owners.len()
    }

    /// Owner of position `p`.
    pub fn owner(&self, p: usize) -> Player {
        self.owners[p]
    }

    /// All moves, grouped by source position.
    pub fn moves(&self) -> &[GameMove] {
        &self.moves
    }

    /// Moves leaving position `p`, as indices into [`GameArena::moves`].
    pub fn moves_from(&self, p: usize) -> std::ops::Range<usize> {
        self.move_start[p]..self.move_start[p + 1]
    }

    /// The initial position.
    pub fn initial(&self) -> usize {
        self.initial
    }

    /// The objective.
    pub fn objective(&self) -> Gr1Objective {
        self.objective
    }

    /// Premise colours of a move under the zero-assumption normalisation:
    /// with no assumption colours the premise is vacuously true, which is
    /// equivalent to a single pseudo-assumption emitted by every move.
    pub(crate) fn premise_of(&self, m: &GameMove) -> ColourSet {
        if self.objective.assumptions == 0 {
            ColourSet::singleton(0)
        } else {
            m.premise
        }
    }

    /// Assumption count under the same normalisation.
    pub(crate) fn norm_assumptions(&self) -> usize {
        self.objective.assumptions.max(1)
    }
}

/// A finite-memory strategy for Eve: the memory tracks which guarantee is
/// currently being chased, advancing (cyclically) whenever a move emits
/// it. [`Strategy::choose`] yields Eve's move for winning positions.
pub struct Strategy {
    pub(crate) memories: usize,
    pub(crate) region: BitSet,
    pub(crate) choice: Vec<usize>,
    pub(crate) guarantees: usize,
}

impl Strategy {
    /// Number of memory states.
    pub fn memories(&self) -> usize {
        self.memories
    }

    /// The initial memory state.
    pub fn initial_memory(&self) -> usize {
        0
    }

    /// Eve's winning region.
    pub fn region(&self) -> &BitSet {
        &self.region
    }

    /// The chosen move index at an Eve position inside the region.
    pub fn choose(&self, position: usize, memory: usize) -> Option<usize> {
        let c = self.choice[position * self.memories + memory];
        (c != usize::MAX).then_some(c)
    }

    /// Memory update after observing a move.
    pub fn update(&self, memory: usize, mv: &GameMove) -> usize {
        if self.guarantees == 0 {
            return memory;
        }
        if mv.conclusion.contains(memory) {
            (memory + 1) % self.guarantees
        } else {
            memory
        }
    }
}
