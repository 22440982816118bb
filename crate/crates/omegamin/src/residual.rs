//! Residual analysis: grouping states by the language they recognise and
//! checking semantic determinism.

use crate::automaton::Automaton;
use crate::emptiness::is_empty;
use crate::language::difference_witness;
use crate::{Error, Result};

/// Grouping of states into language-equivalence classes.
#[derive(Clone, Debug)]
pub struct ResidualPartition {
    /// Class id per state.
    pub class_of: Vec<usize>,
    /// Number of classes.
    pub classes: usize,
    /// Class of the initial state.
    pub initial_class: usize,
}

impl ResidualPartition {
    /// The states of class `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&q| self.class_of[q] == c).collect()
    }
}

fn partition_from_equiv(n: usize, initial: usize, mut same: impl FnMut(usize, usize) -> Result<bool>) -> Result<ResidualPartition> {
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for q in 0..n {
        let mut found = None;
        for (c, &rep) in reps.iter().enumerate() {
            if same(rep, q)? {
                found = Some(c);
                break;
            }
        }
        class_of[q] = match found {
            Some(c) => c,
            None => {
                reps.push(q);
                reps.len() - 1
            }
        };
    }
    Ok(ResidualPartition {
        initial_class: class_of[initial],
        class_of,
        classes: reps.len(),
    })
}

/// Language-equivalence classes of the states of a deterministic
/// automaton, decided pairwise through difference products against the
/// dualisable right-hand side.
pub fn residual_partition(aut: &Automaton) -> Result<ResidualPartition> {
    if !aut.is_deterministic() {
        return Err(Error::Contract(
            "residual partition needs a deterministic automaton (or a deterministic reference)".into(),
        ));
    }
    partition_from_equiv(aut.states(), aut.initial(), |p, q| {
        let ap = aut.rooted_at(p);
        let aq = aut.rooted_at(q);
        Ok(difference_witness(&ap, &aq)?.is_none() && difference_witness(&aq, &ap)?.is_none())
    })
}

/// Residual classes of a possibly nondeterministic automaton. States are
/// compared by the language they recognise; for nondeterministic inputs
/// this requires determinising each rooted automaton, which is only
/// possible within the coBüchi family (breakpoint construction), so
/// nondeterministic generalised Büchi inputs are a contract error.
pub fn residual_partition_general(aut: &Automaton) -> Result<ResidualPartition> {
    if aut.is_deterministic() {
        return residual_partition(aut);
    }
    if aut.acceptance().family != crate::colours::AcceptanceFamily::GeneralisedCoBuchi {
        return Err(Error::Contract(
            "state languages of nondeterministic generalised Büchi automata are out of scope".into(),
        ));
    }
    let roots: Vec<Automaton> = (0..aut.states())
        .map(|q| {
            let rooted = aut.rooted_at(q);
            let single = crate::transforms::degeneralise(&rooted)?;
            Ok(crate::transforms::breakpoint_determinise(&single)?.trim())
        })
        .collect::<Result<_>>()?;
    partition_from_equiv(aut.states(), aut.initial(), |p, q| {
        crate::language::det_equivalent(&roots[p], &roots[q])
    })
}

/// True iff, for every state and letter, all successors lie in one class.
pub fn check_semantic_determinism(aut: &Automaton, partition: &ResidualPartition) -> bool {
    (0..aut.states()).all(|q| {
        (0..aut.alphabet().len()).all(|a| {
            let succ = aut.on(q, a);
            succ.windows(2)
                .all(|w| partition.class_of[w[0].dst] == partition.class_of[w[1].dst])
        })
    })
}

/// States recognising the empty language.
pub fn dead_states(aut: &Automaton) -> Vec<bool> {
    (0..aut.states())
        .map(|q| is_empty(&aut.rooted_at(q)))
        .collect()
}
