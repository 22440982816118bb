//! Ultimately periodic words and their membership in automaton languages.

use crate::automaton::Automaton;
use crate::emptiness::accepting_lasso_in_graph;
use crate::{Alphabet, ColourSet, Error, Result};

/// An ultimately periodic word `stem · cycle^ω` over letter indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lasso {
    /// Finite prefix.
    pub stem: Vec<usize>,
    /// Non-empty repeated part.
    pub cycle: Vec<usize>,
}

impl Lasso {
    /// Builds a lasso; the cycle must be non-empty.
    pub fn new(stem: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Contract("lasso cycle must be non-empty".into()));
        }
        Ok(Lasso { stem, cycle })
    }

    /// Builds a lasso from letter names, one name per character.
    pub fn from_chars(alphabet: &Alphabet, stem: &str, cycle: &str) -> Result<Self> {
        let conv = |text: &str| -> Result<Vec<usize>> {
            text.chars().map(|c| alphabet.require(&c.to_string())).collect()
        };
        Lasso::new(conv(stem)?, conv(cycle)?)
    }

    /// The letter at position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> usize {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Set of letters occurring infinitely often, i.e. the cycle letters.
    pub fn infinite_letters(&self) -> ColourSet {
        ColourSet::from_iter(self.cycle.iter().copied())
    }

    /// Renders the lasso as `stem(cycle)^w` using the alphabet's names.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        let part = |seq: &[usize]| seq.iter().map(|&l| alphabet.name(l)).collect::<String>();
        format!("{}({})^w", part(&self.stem), part(&self.cycle))
    }
}

/// Decides whether some run of `aut` on `stem · cycle^ω` is accepting.
///
/// Works on the product of the automaton with the lasso positions: a run is
/// accepting iff the product contains a reachable cycle whose colours
/// satisfy the acceptance condition, which is exactly the emptiness check
/// restricted to the unrolled word.
pub fn lasso_accepts(aut: &Automaton, lasso: &Lasso) -> Result<bool> {
    for &l in lasso.stem.iter().chain(&lasso.cycle) {
        if l >= aut.alphabet().len() {
            return Err(Error::Contract(format!(
                "lasso letter index {l} outside the automaton's alphabet"
            )));
        }
    }
    let period = lasso.stem.len() + lasso.cycle.len();
    let n = aut.states() * period;
    let node = |q: usize, pos: usize| q * period + pos;
    let next_pos = |pos: usize| {
        if pos + 1 < period {
            pos + 1
        } else {
            lasso.stem.len()
        }
    };
    let mut edges = Vec::new();
    for q in 0..aut.states() {
        for pos in 0..period {
            let a = lasso.letter_at(pos);
            for t in aut.on(q, a) {
                edges.push((node(q, pos), node(t.dst, next_pos(pos)), t.colours));
            }
        }
    }
    Ok(accepting_lasso_in_graph(n, &edges, node(aut.initial(), 0), aut.acceptance()).is_some())
}
