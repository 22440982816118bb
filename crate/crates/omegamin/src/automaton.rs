//! The automaton carrier type.
//!
//! An automaton is a finite set of states over a named alphabet, a set of
//! transitions labelled with colour sets, an initial state and a
//! generalised (co)Büchi acceptance condition. Transitions are stored
//! sorted by `(source, letter, target)` and duplicate triples are merged by
//! colour-set union, so equality of automata is structural equality of the
//! canonical form.

use crate::alphabet::Alphabet;
use crate::colours::{Acceptance, AcceptanceFamily, ColourSet, MAX_COLOURS};
use crate::graph::{reachable, BitSet};
use crate::{Error, Result};

/// A single transition: `src --letter : colours--> dst`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Transition {
    /// Source state index.
    pub src: usize,
    /// Letter index into the automaton's alphabet.
    pub letter: usize,
    /// Target state index.
    pub dst: usize,
    /// Output colours emitted by the transition.
    pub colours: ColourSet,
}

/// An ω-automaton with transition-based generalised (co)Büchi acceptance.
#[derive(Clone, PartialEq, Eq)]
pub struct Automaton {
    name: Option<String>,
    alphabet: Alphabet,
    acceptance: Acceptance,
    states: usize,
    initial: usize,
    transitions: Vec<Transition>,
    // transitions[state_start[q]..state_start[q+1]] are those leaving q.
    state_start: Vec<usize>,
    state_names: Option<Vec<String>>,
}

/// Incremental constructor for [`Automaton`].
pub struct AutomatonBuilder {
    name: Option<String>,
    alphabet: Alphabet,
    acceptance: Acceptance,
    states: usize,
    initial: usize,
    transitions: Vec<Transition>,
    state_names: Option<Vec<String>>,
}

impl AutomatonBuilder {
    /// Starts a builder for `states` states over `alphabet`.
    pub fn new(alphabet: Alphabet, acceptance: Acceptance, states: usize) -> Self {
        AutomatonBuilder {
            name: None,
            alphabet,
            acceptance,
            states,
            initial: 0,
            transitions: Vec::new(),
            state_names: None,
        }
    }

    /// Sets the automaton name.
    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Sets the initial state (default 0).
    pub fn initial(mut self, q: usize) -> Self {
        self.initial = q;
        self
    }

    /// Sets per-state labels; length must match the state count.
    pub fn state_names(mut self, names: Vec<String>) -> Self {
        self.state_names = Some(names);
        self
    }

    /// Adds a transition. Duplicate `(src, letter, dst)` triples are merged
    /// by colour-set union at build time.
    pub fn transition(mut self, src: usize, letter: usize, dst: usize, colours: ColourSet) -> Self {
        self.transitions.push(Transition {
            src,
            letter,
            dst,
            colours,
        });
        self
    }

    /// Adds a transition identified by letter name.
    pub fn transition_named(
        self,
        src: usize,
        letter: &str,
        dst: usize,
        colours: ColourSet,
    ) -> Result<Self> {
        let l = self.alphabet.require(letter)?;
        Ok(self.transition(src, l, dst, colours))
    }

    /// Validates and finishes the automaton.
    pub fn build(self) -> Result<Automaton> {
        let AutomatonBuilder {
            name,
            alphabet,
            acceptance,
            states,
            initial,
            mut transitions,
            state_names,
        } = self;
        if states == 0 {
            return Err(Error::InvalidAutomaton("automaton needs at least one state".into()));
        }
        if acceptance.colours > MAX_COLOURS {
            return Err(Error::InvalidAutomaton(format!(
                "colour count {} above supported width {MAX_COLOURS}",
                acceptance.colours
            )));
        }
        if initial >= states {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range ({states} states)"
            )));
        }
        if let Some(names) = &state_names {
            if names.len() != states {
                return Err(Error::InvalidAutomaton(
                    "state name list length does not match state count".into(),
                ));
            }
        }
        let all = ColourSet::all(acceptance.colours);
        for t in &transitions {
            if t.src >= states || t.dst >= states {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({}, {}, {}) out of state range {states}",
                    t.src, t.letter, t.dst
                )));
            }
            if t.letter >= alphabet.len() {
                return Err(Error::InvalidAutomaton(format!(
                    "letter index {} out of range ({} letters)",
                    t.letter,
                    alphabet.len()
                )));
            }
            if !t.colours.is_subset(all) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition colours {} exceed colour count {}",
                    t.colours, acceptance.colours
                )));
            }
        }
        transitions.sort_by_key(|t| (t.src, t.letter, t.dst));
        transitions.dedup_by(|next, prev| {
            if (prev.src, prev.letter, prev.dst) == (next.src, next.letter, next.dst) {
                prev.colours = prev.colours.union(next.colours);
                true
            } else {
                false
            }
        });
        let mut state_start = vec![0usize; states + 1];
        for t in &transitions {
            state_start[t.src + 1] += 1;
        }
        for q in 0..states {
            state_start[q + 1] += state_start[q];
        }
        Ok(Automaton {
            name,
            alphabet,
            acceptance,
            states,
            initial,
            transitions,
            state_start,
            state_names,
        })
    }
}

impl Automaton {
    /// Optional automaton name.
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The input alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The acceptance condition.
    pub fn acceptance(&self) -> Acceptance {
        self.acceptance
    }

    /// Number of states.
    pub fn states(&self) -> usize {
        self.states
    }

    /// The initial state.
    pub fn initial(&self) -> usize {
        self.initial
    }

    /// All transitions, sorted by `(src, letter, dst)`.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Optional per-state labels.
    pub fn state_names(&self) -> Option<&[String]> {
        self.state_names.as_deref()
    }

    /// Transitions leaving state `q`.
    pub fn from_state(&self, q: usize) -> &[Transition] {
        &self.transitions[self.state_start[q]..self.state_start[q + 1]]
    }

    /// Transitions leaving `q` on letter `a`.
    pub fn on(&self, q: usize, a: usize) -> &[Transition] {
        let out = self.from_state(q);
        let lo = out.partition_point(|t| t.letter < a);
        let hi = out.partition_point(|t| t.letter <= a);
        &out[lo..hi]
    }

    /// True when every state has at most one transition per letter.
    pub fn is_deterministic(&self) -> bool {
        (0..self.states).all(|q| (0..self.alphabet.len()).all(|a| self.on(q, a).len() <= 1))
    }

    /// True when every state has at least one transition per letter.
    pub fn is_complete(&self) -> bool {
        (0..self.states).all(|q| (0..self.alphabet.len()).all(|a| !self.on(q, a).is_empty()))
    }

    /// Adjacency list of the underlying digraph (ignoring letters).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.states];
        for t in &self.transitions {
            adj[t.src].push(t.dst);
        }
        adj
    }

    /// States reachable from the initial state.
    pub fn reachable_states(&self) -> BitSet {
        reachable(&self.adjacency(), self.initial)
    }

    /// A copy of the automaton re-rooted at `q`. Used to talk about the
    /// language recognised by an individual state.
    pub fn rooted_at(&self, q: usize) -> Automaton {
        let mut a = self.clone();
        assert!(q < a.states);
        a.initial = q;
        a
    }

    /// Restriction to the reachable part, preserving the canonical state
    /// order. Returns the trimmed automaton and the old-to-new state map.
    pub fn trim_with_map(&self) -> (Automaton, Vec<Option<usize>>) {
        let keep = self.reachable_states();
        let mut map = vec![None; self.states];
        let mut next = 0usize;
        for q in 0..self.states {
            if keep.contains(q) {
                map[q] = Some(next);
                next += 1;
            }
        }
        let mut b = AutomatonBuilder::new(self.alphabet.clone(), self.acceptance, next)
            .initial(map[self.initial].unwrap());
        if let Some(name) = &self.name {
            b = b.name(name.clone());
        }
        if let Some(names) = &self.state_names {
            let kept: Vec<String> = (0..self.states)
                .filter(|&q| keep.contains(q))
                .map(|q| names[q].clone())
                .collect();
            b = b.state_names(kept);
        }
        for t in &self.transitions {
            if let (Some(s), Some(d)) = (map[t.src], map[t.dst]) {
                b = b.transition(s, t.letter, d, t.colours);
            }
        }
        (b.build().expect("trim preserves validity"), map)
    }

    /// Restriction to the reachable part.
    pub fn trim(&self) -> Automaton {
        self.trim_with_map().0
    }

    /// Completion: if some `(state, letter)` has no transition, a fresh sink
    /// state is added whose loops are rejecting for the automaton's own
    /// acceptance, so the language is unchanged. Generalised Büchi automata
    /// with zero colours accept every run, so they are first lifted to one
    /// colour carried by every existing transition (which also preserves
    /// the language) to make a rejecting sink expressible.
    pub fn complete(&self) -> Automaton {
        let mut base = self.clone();
        if self.acceptance.family == AcceptanceFamily::GeneralisedBuchi
            && self.acceptance.colours == 0
            && !self.is_complete()
        {
            let mut b = AutomatonBuilder::new(self.alphabet.clone(), Acceptance::buchi(1), self.states)
                .initial(self.initial);
            if let Some(name) = &self.name {
                b = b.name(name.clone());
            }
            if let Some(names) = &self.state_names {
                b = b.state_names(names.clone());
            }
            for t in &self.transitions {
                b = b.transition(t.src, t.letter, t.dst, ColourSet::singleton(0));
            }
            base = b.build().expect("lift preserves validity");
        }
        if base.is_complete() {
            return base;
        }
        let sink = base.states;
        let sink_colours = match base.acceptance.family {
            // No colour ever produced: some colour (there is at least one
            // after the lift) is missed, so the run rejects.
            AcceptanceFamily::GeneralisedBuchi => ColourSet::EMPTY,
            // All colours produced forever: no colour is avoided.
            AcceptanceFamily::GeneralisedCoBuchi => ColourSet::all(base.acceptance.colours),
        };
        let mut b = AutomatonBuilder::new(base.alphabet.clone(), base.acceptance, base.states + 1)
            .initial(base.initial);
        if let Some(name) = &base.name {
            b = b.name(name.clone());
        }
        if let Some(names) = &base.state_names {
            let mut names = names.clone();
            names.push("sink".into());
            b = b.state_names(names);
        }
        for t in &base.transitions {
            b = b.transition(t.src, t.letter, t.dst, t.colours);
        }
        for q in 0..base.states {
            for a in 0..base.alphabet.len() {
                if base.on(q, a).is_empty() {
                    b = b.transition(q, a, sink, sink_colours);
                }
            }
        }
        for a in 0..base.alphabet.len() {
            b = b.transition(sink, a, sink, sink_colours);
        }
        b.build().expect("completion preserves validity")
    }

    /// Duality: flips the acceptance family, keeping the structure. On a
    /// deterministic automaton this recognises the complement language;
    /// the automaton is completed first so no word is lost to missing runs.
    pub fn dualise(&self) -> Result<Automaton> {
        if !self.is_deterministic() {
            return Err(Error::Contract(
                "dualisation requires a deterministic automaton".into(),
            ));
        }
        let mut out = self.complete();
        out.acceptance = out.acceptance.dual();
        Ok(out)
    }

    /// Relabels every transition's colour set via `f`, optionally changing
    /// the acceptance condition.
    pub fn recoloured(&self, acceptance: Acceptance, f: impl Fn(&Transition) -> ColourSet) -> Automaton {
        let mut b = AutomatonBuilder::new(self.alphabet.clone(), acceptance, self.states)
            .initial(self.initial);
        if let Some(name) = &self.name {
            b = b.name(name.clone());
        }
        if let Some(names) = &self.state_names {
            b = b.state_names(names.clone());
        }
        for t in &self.transitions {
            b = b.transition(t.src, t.letter, t.dst, f(t));
        }
        b.build().expect("recolouring preserves validity")
    }
}

impl std::fmt::Debug for Automaton {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "Automaton({} states, initial {}, {:?} with {} colours)",
            self.states, self.initial, self.acceptance.family, self.acceptance.colours
        )?;
        for t in &self.transitions {
            writeln!(
                f,
                "  {} --{}:{}--> {}",
                t.src,
                self.alphabet.name(t.letter),
                t.colours,
                t.dst
            )?;
        }
        Ok(())
    }
}
