//! Structural transforms: condition automata, cascade composition,
//! degeneralisation, breakpoint determinisation and greedy colour removal.

use crate::automaton::{Automaton, AutomatonBuilder};
use crate::colours::{Acceptance, AcceptanceFamily, ColourSet};
use crate::graph::tarjan_sccs;
use crate::{Alphabet, Error, Result};
use std::collections::HashMap;

/// A deterministic single-colour automaton over the letters `2^C` that
/// recognises the generalised (co)Büchi condition itself, for use in
/// cascade composition. `letters[i]` is the colour set named by alphabet
/// letter `i`.
pub struct ConditionAutomaton {
    /// The underlying automaton (k = 1, same family as the condition).
    pub automaton: Automaton,
    /// Colour-set meaning of each alphabet letter.
    pub letters: Vec<ColourSet>,
    /// Number of colours of the condition being recognised.
    pub condition_colours: usize,
}

/// Builds the `k`-state condition automaton: state `i` self-loops silently
/// on letters not containing colour `i` and steps to state `i+1 (mod k)`
/// emitting the single colour on letters that do contain `i`. With coBüchi
/// acceptance it recognises "some colour eventually absent"; with Büchi
/// acceptance, "every colour recurs".
pub fn condition_automaton(k: usize, family: AcceptanceFamily) -> Result<ConditionAutomaton> {
    if k == 0 {
        return Err(Error::Contract("condition automaton needs at least one colour".into()));
    }
    if k > 16 {
        return Err(Error::Contract(format!(
            "condition automaton over 2^{k} letters is not materialisable"
        )));
    }
    let letters: Vec<ColourSet> = (0..(1u64 << k)).map(ColourSet_from_bits).collect();
    let alphabet = Alphabet::new(letters.iter().map(|s| s.to_string()))?;
    let acceptance = Acceptance { family, colours: 1 };
    let mut b = AutomatonBuilder::new(alphabet, acceptance, k);
    for state in 0..k {
        for (l, set) in letters.iter().enumerate() {
            if set.contains(state) {
                b = b.transition(state, l, (state + 1) % k, ColourSet::singleton(0));
            } else {
                b = b.transition(state, l, state, ColourSet::EMPTY);
            }
        }
    }
    Ok(ConditionAutomaton {
        automaton: b.build()?,
        letters,
        condition_colours: k,
    })
}

#[allow(non_snake_case)]
fn ColourSet_from_bits(bits: u64) -> ColourSet {
    ColourSet::from_iter((0..64).filter(|&i| bits & (1 << i) != 0))
}

/// Cascade composition: runs `a` and feeds its output colour sets as input
/// letters to the condition automaton, taking the condition automaton's
/// acceptance. Only the reachable part is materialised, so only colour
/// sets actually occurring in `a` contribute transitions.
pub fn cascade(cond: &ConditionAutomaton, a: &Automaton) -> Result<Automaton> {
    if cond.condition_colours != a.acceptance().colours {
        return Err(Error::Contract(format!(
            "condition automaton is over {} colours but the automaton uses {}",
            cond.condition_colours,
            a.acceptance().colours
        )));
    }
    let letter_of: HashMap<ColourSet, usize> = cond
        .letters
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    let cb = &cond.automaton;
    // BFS over reachable pairs.
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let start = (a.initial(), cb.initial());
    id.insert(start, 0);
    order.push(start);
    queue.push_back(start);
    let mut edges: Vec<(usize, usize, usize, ColourSet)> = Vec::new();
    while let Some((qa, qb)) = queue.pop_front() {
        let from = id[&(qa, qb)];
        for ta in a.from_state(qa) {
            let l = letter_of[&ta.colours];
            let tb = cb.on(qb, l)[0];
            let pair = (ta.dst, tb.dst);
            let to = *id.entry(pair).or_insert_with(|| {
                order.push(pair);
                queue.push_back(pair);
                order.len() - 1
            });
            edges.push((from, ta.letter, to, tb.colours));
        }
    }
    let mut b = AutomatonBuilder::new(a.alphabet().clone(), cb.acceptance(), order.len());
    if let Some(name) = a.name() {
        b = b.name(name.to_string());
    }
    for (src, letter, dst, colours) in edges {
        b = b.transition(src, letter, dst, colours);
    }
    b.build()
}

/// Converts a generalised (co)Büchi automaton into an equivalent
/// single-colour automaton of the same family by cascading it with the
/// matching condition automaton. Determinism is preserved. Zero-colour
/// inputs are handled directly: with Büchi acceptance every run accepts,
/// so every transition receives the single colour; with coBüchi acceptance
/// every run rejects, likewise.
pub fn degeneralise(a: &Automaton) -> Result<Automaton> {
    let k = a.acceptance().colours;
    if k == 0 {
        let family = a.acceptance().family;
        return Ok(a.recoloured(Acceptance { family, colours: 1 }, |_| ColourSet::singleton(0)));
    }
    let cond = condition_automaton(k, a.acceptance().family)?;
    let out = cascade(&cond, a)?;
    debug_assert!(!a.is_deterministic() || out.is_deterministic());
    Ok(out)
}

/// Breakpoint determinisation of a single-colour coBüchi automaton: states
/// are pairs `(S, O)` with `S` the reachable subset and `O ⊆ S` the runs
/// that stayed safe since the last breakpoint. The output transition emits
/// the colour exactly when `O` runs dry and is reset to the full successor
/// set. Language is preserved for every nondeterministic input.
pub fn breakpoint_determinise(a: &Automaton) -> Result<Automaton> {
    if a.acceptance() != Acceptance::cobuchi(1) {
        return Err(Error::Contract(
            "breakpoint determinisation expects a single-colour coBüchi automaton (degeneralise first)"
                .into(),
        ));
    }
    type Macro = (Vec<usize>, Vec<usize>);
    let succ = |set: &[usize], letter: usize, safe_only: bool| -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .flat_map(|&q| a.on(q, letter))
            .filter(|t| !safe_only || t.colours.is_empty())
            .map(|t| t.dst)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let mut id: HashMap<Macro, usize> = HashMap::new();
    let mut order: Vec<Macro> = Vec::new();
    let start: Macro = (vec![a.initial()], vec![a.initial()]);
    id.insert(start.clone(), 0);
    order.push(start.clone());
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    let mut edges = Vec::new();
    while let Some(node) = queue.pop_front() {
        let from = id[&node];
        let (s, o) = &node;
        for letter in 0..a.alphabet().len() {
            let s2 = succ(s, letter, false);
            let o_step = succ(o, letter, true);
            let (o2, colour) = if o_step.is_empty() {
                (s2.clone(), ColourSet::singleton(0))
            } else {
                (o_step, ColourSet::EMPTY)
            };
            let next: Macro = (s2, o2);
            let to = *id.entry(next.clone()).or_insert_with(|| {
                order.push(next.clone());
                queue.push_back(next);
                order.len() - 1
            });
            edges.push((from, letter, to, colour));
        }
    }
    let mut b = AutomatonBuilder::new(a.alphabet().clone(), Acceptance::cobuchi(1), order.len());
    if let Some(name) = a.name() {
        b = b.name(name.to_string());
    }
    for (src, letter, dst, colours) in edges {
        b = b.transition(src, letter, dst, colours);
    }
    let out = b.build()?;
    debug_assert!(out.is_deterministic() && out.is_complete());
    Ok(out)
}

/// True iff colour `i` can be dropped from a deterministic generalised
/// Büchi automaton without changing the language: removal is harmless
/// unless some reachable strongly connected subgraph avoids `i` while
/// covering every other colour.
pub fn removable_colour(a: &Automaton, i: usize) -> Result<bool> {
    if a.acceptance().family != AcceptanceFamily::GeneralisedBuchi {
        return Err(Error::Contract("colour removal is defined on generalised Büchi automata".into()));
    }
    let k = a.acceptance().colours;
    if i >= k {
        return Err(Error::Contract(format!("colour {i} out of range ({k} colours)")));
    }
    let reach = a.reachable_states();
    let mut adj = vec![Vec::new(); a.states()];
    let mut kept_edges = Vec::new();
    for t in a.transitions() {
        if reach.contains(t.src) && !t.colours.contains(i) {
            adj[t.src].push(t.dst);
            kept_edges.push(t);
        }
    }
    let (comp_of, comps) = tarjan_sccs(&adj);
    let required = ColourSet::all(k).without(i);
    for c in 0..comps.len() {
        let union = kept_edges
            .iter()
            .filter(|t| comp_of[t.src] == c && comp_of[t.dst] == c)
            .fold(ColourSet::EMPTY, |u, t| u.union(t.colours));
        let has_edge = kept_edges
            .iter()
            .any(|t| comp_of[t.src] == c && comp_of[t.dst] == c);
        if has_edge && required.is_subset(union) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Removes colour `i`, shifting higher colour indices down.
fn delete_colour(a: &Automaton, i: usize) -> Automaton {
    let acceptance = Acceptance {
        family: a.acceptance().family,
        colours: a.acceptance().colours - 1,
    };
    a.recoloured(acceptance, |t| t.colours.delete_and_shift(i))
}

/// Greedy colour removal: repeatedly deletes the least removable colour
/// until none is removable. The fixed ascending order makes the output
/// deterministic across runs; the result is language-equivalent to the
/// input and idempotent under re-application.
pub fn recolour_greedy(a: &Automaton) -> Result<Automaton> {
    let mut current = a.clone();
    'outer: loop {
        for i in 0..current.acceptance().colours {
            if removable_colour(&current, i)? {
                current = delete_colour(&current, i);
                continue 'outer;
            }
        }
        return Ok(current);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emptiness::emptiness_witness;
    use crate::fixtures;
    use crate::language::det_equivalent;
    use crate::lasso::lasso_accepts;

    #[test]
    fn condition_automaton_shapes() {
        let one = condition_automaton(1, AcceptanceFamily::GeneralisedCoBuchi).unwrap();
        assert_eq!(one.automaton.states(), 1);
        assert_eq!(one.automaton.transitions().len(), 2);
        let two = condition_automaton(2, AcceptanceFamily::GeneralisedCoBuchi).unwrap();
        assert_eq!(two.automaton.states(), 2);
        assert_eq!(two.automaton.transitions().len(), 8);
        assert!(two.automaton.is_deterministic());
        assert!(two.automaton.is_complete());
    }

    #[test]
    fn cobuchi_condition_automaton_recognises_eventually_absent_colour() {
        let cond = condition_automaton(2, AcceptanceFamily::GeneralisedCoBuchi).unwrap();
        let a = &cond.automaton;
        // Non-empty, and a witness can stay in one state forever.
        let w = emptiness_witness(a).expect("non-empty");
        assert!(lasso_accepts(a, &w).unwrap());
        // Sampled lassos: membership iff some colour eventually absent.
        let mut rng = crate::random::rng(5);
        for _ in 0..200 {
            let l = crate::random::lasso(&mut rng, 4, 2, 3);
            let inf = l.infinite_letters();
            let expected = (0..2).any(|c| l.cycle.iter().all(|&letter| !cond.letters[letter].contains(c)));
            let _ = inf;
            assert_eq!(lasso_accepts(a, &l).unwrap(), expected);
        }
    }

    #[test]
    fn degeneralise_preserves_language_on_lassos() {
        let t = fixtures::factor_xx_det3();
        let d = degeneralise(&t).unwrap();
        assert!(d.is_deterministic());
        assert_eq!(d.acceptance(), Acceptance::cobuchi(1));
        assert!(d.states() <= 3 * t.states());
        let mut rng = crate::random::rng(6);
        for _ in 0..1000 {
            let l = crate::random::lasso(&mut rng, 3, 3, 4);
            assert_eq!(
                lasso_accepts(&t, &l).unwrap(),
                lasso_accepts(&d, &l).unwrap()
            );
        }
    }

    #[test]
    fn degeneralise_single_colour_is_isomorphic() {
        let x = fixtures::fin_b_or_c_det2();
        let d = degeneralise(&x).unwrap();
        assert_eq!(d.states(), x.states());
        assert!(det_equivalent(&d, &x).unwrap());
    }

    #[test]
    fn breakpoint_agrees_with_nondeterministic_input() {
        let a = fixtures::fin_a_or_b_nonhd3();
        let d = breakpoint_determinise(&a).unwrap();
        assert!(d.is_deterministic() && d.is_complete());
        assert!(d.states() <= 3usize.pow(a.states() as u32));
        for l in crate::random::all_lassos(2, 2, 4) {
            assert_eq!(
                lasso_accepts(&a, &l).unwrap(),
                lasso_accepts(&d, &l).unwrap(),
                "disagree on {}",
                l.display(a.alphabet())
            );
        }
    }

    #[test]
    fn breakpoint_agrees_on_random_nondeterministic_inputs() {
        let mut rng = crate::random::rng(19);
        let lassos = crate::random::all_lassos(2, 2, 6);
        for _ in 0..12 {
            let a = crate::random::automaton(
                &mut rng,
                crate::random::AutomatonShape {
                    states: 4,
                    letters: 2,
                    acceptance: Acceptance::cobuchi(1),
                    deterministic: false,
                    colour_density: 0.35,
                },
            );
            let d = breakpoint_determinise(&a).unwrap();
            for l in &lassos {
                assert_eq!(
                    lasso_accepts(&a, l).unwrap(),
                    lasso_accepts(&d, l).unwrap(),
                    "disagree on {}",
                    l.display(a.alphabet())
                );
            }
        }
    }

    #[test]
    fn exponential_cnf_form_has_no_removable_colour() {
        // The four-clause one-state automaton for the n = 2 family member:
        // every clause picks one letter of each pair, and none is redundant.
        let a = crate::hardness::exp_family(2).unwrap();
        let k = crate::hardness::exact_colour_min_one_state(&a).unwrap();
        assert_eq!(k, 4);
        let clauses: Vec<Vec<usize>> = vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]];
        let alphabet = a.alphabet().clone();
        let one_state = crate::hardness::one_state_cnf_automaton(alphabet, &clauses).unwrap();
        for i in 0..4 {
            assert!(!removable_colour(&one_state, i).unwrap());
        }
        assert_eq!(recolour_greedy(&one_state).unwrap(), one_state);
    }

    #[test]
    fn duplicate_colours_get_removed() {
        // Colours 0 and 1 on exactly the same loop: one of them goes.
        let alphabet = Alphabet::of_chars("ab").unwrap();
        let a = AutomatonBuilder::new(alphabet, Acceptance::buchi(2), 1)
            .transition(0, 0, 0, ColourSet::all(2))
            .transition(0, 1, 0, ColourSet::EMPTY)
            .build()
            .unwrap();
        let r = recolour_greedy(&a).unwrap();
        assert_eq!(r.acceptance().colours, 1);
        assert!(det_equivalent(&a, &r).unwrap());
    }

    #[test]
    fn recolour_greedy_is_idempotent_and_equivalent_on_random_inputs() {
        let mut rng = crate::random::rng(7);
        for _ in 0..60 {
            let a = crate::random::det_gen_buchi(&mut rng, 5, 2, 3);
            let r = recolour_greedy(&a).unwrap();
            assert!(r.acceptance().colours <= a.acceptance().colours);
            assert!(det_equivalent(&a, &r).unwrap());
            let rr = recolour_greedy(&r).unwrap();
            assert_eq!(r, rr);
        }
    }
}
