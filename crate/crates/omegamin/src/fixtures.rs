//! Small example automata used throughout the documentation and tests.
//!
//! The languages:
//!
//! - `fin_b_or_c_*`: words over `{a,b,c}` containing `b` or `c` only
//!   finitely often,
//! - `factor_xx_*`: words over `{a,b,c}` in which some doubled letter
//!   factor `xx` appears only finitely often,
//! - `fin_a_or_b_nonhd3`: a 3-state automaton for "finitely many `a` or
//!   finitely many `b`" whose initial nondeterminism cannot be resolved
//!   on the fly.

use crate::colours::{Acceptance, ColourSet};
use crate::{Alphabet, Automaton, AutomatonBuilder};

fn abc() -> Alphabet {
    Alphabet::of_chars("abc").unwrap()
}

/// Deterministic 2-state coBüchi automaton for "finitely many `b` or
/// finitely many `c`". State 0 waits out the `b`s, state 1 the `c`s;
/// switching sides costs the single colour.
pub fn fin_b_or_c_det2() -> Automaton {
    let dot = ColourSet::singleton(0);
    AutomatonBuilder::new(abc(), Acceptance::cobuchi(1), 2)
        .name("fin-b-or-c-det")
        .transition(0, 0, 0, ColourSet::EMPTY)
        .transition(0, 2, 0, ColourSet::EMPTY)
        .transition(0, 1, 1, dot)
        .transition(1, 0, 1, ColourSet::EMPTY)
        .transition(1, 1, 1, ColourSet::EMPTY)
        .transition(1, 2, 0, dot)
        .build()
        .unwrap()
}

/// History-deterministic 3-state coBüchi automaton for "finitely many `b`
/// or finitely many `c`" that cannot be determinised by pruning. State 1
/// has an empty safe language; the only nondeterminism is on `a` from it.
pub fn fin_b_or_c_hd3() -> Automaton {
    let dot = ColourSet::singleton(0);
    AutomatonBuilder::new(abc(), Acceptance::cobuchi(1), 3)
        .name("fin-b-or-c-hd")
        // state 0: safe while no c arrives
        .transition(0, 0, 0, ColourSet::EMPTY)
        .transition(0, 1, 0, ColourSet::EMPTY)
        .transition(0, 2, 1, dot)
        // state 1: no safe move at all
        .transition(1, 0, 0, dot)
        .transition(1, 0, 2, dot)
        .transition(1, 1, 0, dot)
        .transition(1, 2, 2, dot)
        // state 2: safe while no b arrives
        .transition(2, 0, 2, ColourSet::EMPTY)
        .transition(2, 2, 2, ColourSet::EMPTY)
        .transition(2, 1, 1, dot)
        .build()
        .unwrap()
}

/// Deterministic 3-state generalised coBüchi automaton (3 colours) for the
/// language of words in which some factor `xx` appears only finitely
/// often. State `i` remembers that the last letter was letter `i`; reading
/// it again emits colour `i`.
pub fn factor_xx_det3() -> Automaton {
    let mut b = AutomatonBuilder::new(abc(), Acceptance::cobuchi(3), 3).name("factor-xx");
    for last in 0..3 {
        for next in 0..3 {
            let colours = if last == next {
                ColourSet::singleton(last)
            } else {
                ColourSet::EMPTY
            };
            b = b.transition(last, next, next, colours);
        }
    }
    b.build().unwrap()
}

/// The canonical 6-state deterministic coBüchi automaton for the
/// `factor_xx` language: three 2-state safety components, one per avoided
/// doubled letter, chained by coloured transitions.
///
/// States `2i` ("last letter was not `i`") and `2i+1` ("last letter was
/// `i`") form the component avoiding factor `ii`.
pub fn factor_xx_canonical6() -> Automaton {
    let dot = ColourSet::singleton(0);
    let mut b = AutomatonBuilder::new(abc(), Acceptance::cobuchi(1), 6).name("factor-xx-canonical");
    for i in 0..3usize {
        let fresh = 2 * i; // last letter != i
        let hot = 2 * i + 1; // last letter == i
        let next_hot = 2 * ((i + 1) % 3); // entry point of the next component
        for a in 0..3usize {
            if a == i {
                b = b.transition(fresh, a, hot, ColourSet::EMPTY);
                // factor ii: give up on this component, move to the next,
                // whose tracked letter (i+1) was certainly not just read.
                b = b.transition(hot, a, next_hot, dot);
            } else {
                b = b.transition(fresh, a, fresh, ColourSet::EMPTY);
                b = b.transition(hot, a, fresh, ColourSet::EMPTY);
            }
        }
    }
    b.build().unwrap()
}

/// [`factor_xx_det3`] with a fresh initial state that reads a single `a`
/// before entering the cycle structure, giving the language a transient
/// initial residual.
pub fn factor_xx_transient_init() -> Automaton {
    let mut b = AutomatonBuilder::new(abc(), Acceptance::cobuchi(3), 4)
        .name("factor-xx-transient")
        .initial(3)
        .transition(3, 0, 0, ColourSet::EMPTY);
    for last in 0..3 {
        for next in 0..3 {
            let colours = if last == next {
                ColourSet::singleton(last)
            } else {
                ColourSet::EMPTY
            };
            b = b.transition(last, next, next, colours);
        }
    }
    b.build().unwrap()
}

/// The two-letter sibling of [`factor_xx_det3`]: some factor `aa` or `bb`
/// appears only finitely often. Its canonical coBüchi automaton has two
/// components of two states each.
pub fn factor_xx_two_letters() -> Automaton {
    let ab = Alphabet::of_chars("ab").unwrap();
    let mut b = AutomatonBuilder::new(ab, Acceptance::cobuchi(2), 2).name("factor-xx-ab");
    for last in 0..2 {
        for next in 0..2 {
            let colours = if last == next {
                ColourSet::singleton(last)
            } else {
                ColourSet::EMPTY
            };
            b = b.transition(last, next, next, colours);
        }
    }
    b.build().unwrap()
}

/// [`factor_xx_two_letters`] behind a fresh initial state reading one `a`,
/// so the initial residual is transient.
pub fn factor_xx_two_letters_transient() -> Automaton {
    let ab = Alphabet::of_chars("ab").unwrap();
    let mut b = AutomatonBuilder::new(ab, Acceptance::cobuchi(2), 3)
        .name("factor-xx-ab-transient")
        .initial(2)
        .transition(2, 0, 0, ColourSet::EMPTY);
    for last in 0..2 {
        for next in 0..2 {
            let colours = if last == next {
                ColourSet::singleton(last)
            } else {
                ColourSet::EMPTY
            };
            b = b.transition(last, next, next, colours);
        }
    }
    b.build().unwrap()
}

/// A 3-state coBüchi automaton over `{a,b}` for "finitely many `a` or
/// finitely many `b`" that is *not* history-deterministic: the initial
/// letter forces a bet between the two closed parts.
pub fn fin_a_or_b_nonhd3() -> Automaton {
    let ab = Alphabet::of_chars("ab").unwrap();
    let dot = ColourSet::singleton(0);
    AutomatonBuilder::new(ab, Acceptance::cobuchi(1), 3)
        .name("fin-a-or-b-nonhd")
        .transition(0, 0, 1, ColourSet::EMPTY)
        .transition(0, 0, 2, ColourSet::EMPTY)
        .transition(0, 1, 1, ColourSet::EMPTY)
        .transition(0, 1, 2, ColourSet::EMPTY)
        // state 1 bets on finitely many b
        .transition(1, 0, 1, ColourSet::EMPTY)
        .transition(1, 1, 1, dot)
        // state 2 bets on finitely many a
        .transition(2, 0, 2, dot)
        .transition(2, 1, 2, ColourSet::EMPTY)
        .build()
        .unwrap()
}

/// One-state automaton over `{a}` accepting every word.
pub fn accept_all_1() -> Automaton {
    let a = Alphabet::of_chars("a").unwrap();
    AutomatonBuilder::new(a, Acceptance::buchi(1), 1)
        .transition(0, 0, 0, ColourSet::singleton(0))
        .build()
        .unwrap()
}
