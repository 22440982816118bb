//! The canonical state-minimal history-deterministic coBüchi automaton.
//!
//! Pipeline: degeneralise, determinise (breakpoint) when needed, trim, drop
//! states recognising the empty language, put the result in normal form,
//! quotient states by (residual class, safe language), then repeatedly
//! delete safe components whose safe languages are dominated inside their
//! residual classes by another component, redirecting entries through the
//! induced safe-structure morphism. Finally every `(state, letter)` pair
//! without a safe successor receives coloured transitions to *all* states
//! of the target residual class, which keeps the language (by semantic
//! determinism) and maximises the resolver's room.
//!
//! The output is nice (reachable, semantically deterministic, normal form,
//! safe deterministic), safe minimal and safe centralised; by the
//! component-injection property of such automata its number of states is
//! minimal among history-deterministic coBüchi automata for the language.
//! All of these postconditions are re-checked after construction and a
//! failure aborts rather than returning an unsound automaton.

use crate::automaton::{Automaton, AutomatonBuilder};
use crate::colours::{Acceptance, ColourSet};
use crate::games::{contains_hd, is_history_deterministic};
use crate::residual::{
    check_semantic_determinism, dead_states, residual_partition, residual_partition_general,
    ResidualPartition,
};
use crate::safety::{
    compare_safe_languages, is_safe_deterministic, safe_components, safe_successor,
    SafeDecomposition, SafeOrder,
};
use crate::transforms::{breakpoint_determinise, degeneralise};
use crate::{Error, Result};

/// The six canonicity properties, each recomputable on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicityReport {
    /// Every state is reachable from the initial state.
    pub reachable_only: bool,
    /// All nondeterministic successors recognise the same language.
    pub semantically_deterministic: bool,
    /// Every safe transition stays inside a safe component.
    pub normal_form: bool,
    /// At most one safe transition per state and letter.
    pub safe_deterministic: bool,
    /// Equivalent states with equal safe languages coincide.
    pub safe_minimal: bool,
    /// Equivalent states with comparable safe languages share a component.
    pub safe_centralised: bool,
}

impl CanonicityReport {
    /// True when all six properties hold.
    pub fn all(&self) -> bool {
        self.reachable_only
            && self.semantically_deterministic
            && self.normal_form
            && self.safe_deterministic
            && self.safe_minimal
            && self.safe_centralised
    }
}

/// Recolours every safe transition that leaves its safe component, which
/// preserves the language: a run using such transitions forever descends
/// the component order and must eventually stay inside one component.
pub fn normal_form(aut: &Automaton) -> Result<Automaton> {
    let safe = safe_components(aut)?;
    Ok(aut.recoloured(aut.acceptance(), |t| {
        if t.colours.is_empty() {
            let internal = safe.component_of[t.src].is_some()
                && safe.component_of[t.src] == safe.component_of[t.dst];
            if internal {
                ColourSet::EMPTY
            } else {
                ColourSet::singleton(0)
            }
        } else {
            t.colours
        }
    }))
}

/// Normalises a single-colour coBüchi automaton into nice form: trimmed,
/// semantically deterministic, normal form, safe deterministic.
/// Deterministic inputs are only trimmed and recoloured; nondeterministic
/// ones are breakpoint-determinised first (the polynomial
/// nondeterminism-preserving construction is out of scope, so the size
/// guarantee only holds on the deterministic path).
pub fn to_nice_form(aut: &Automaton) -> Result<Automaton> {
    if aut.acceptance() != Acceptance::cobuchi(1) {
        return Err(Error::Contract(
            "nice form is defined on single-colour coBüchi automata".into(),
        ));
    }
    let det = if aut.is_deterministic() {
        aut.trim()
    } else {
        breakpoint_determinise(aut)?.trim()
    };
    normal_form(&det)
}

/// Computes the canonicity report of a single-colour coBüchi automaton.
/// For nondeterministic inputs, state languages are obtained by
/// determinising each rooted automaton.
pub fn check_canonicity(aut: &Automaton) -> Result<CanonicityReport> {
    Ok(check_canonicity_full(aut)?.0)
}

/// Report together with the partition and safe decomposition it used.
pub fn check_canonicity_full(
    aut: &Automaton,
) -> Result<(CanonicityReport, ResidualPartition, SafeDecomposition)> {
    if aut.acceptance() != Acceptance::cobuchi(1) {
        return Err(Error::Contract(
            "canonicity is defined on single-colour coBüchi automata".into(),
        ));
    }
    let reachable_only = aut.reachable_states().count() == aut.states();
    let partition = residual_partition_general(aut)?;
    let semantically_deterministic = check_semantic_determinism(aut, &partition);
    let safe = safe_components(aut)?;
    let normal_f = aut.transitions().iter().all(|t| {
        !t.colours.is_empty()
            || (safe.component_of[t.src].is_some()
                && safe.component_of[t.src] == safe.component_of[t.dst])
    });
    let safe_det = is_safe_deterministic(aut);
    // The last two flags need well-defined safe-language comparisons.
    let (mut safe_minimal, mut safe_centralised) = (safe_det, safe_det);
    if safe_det {
        for q in 0..aut.states() {
            for p in (q + 1)..aut.states() {
                if partition.class_of[q] != partition.class_of[p] {
                    continue;
                }
                match compare_safe_languages(aut, q, p)? {
                    SafeOrder::Equal => {
                        safe_minimal = false;
                        if safe.component_of[q] != safe.component_of[p]
                            || safe.component_of[q].is_none()
                        {
                            safe_centralised = false;
                        }
                    }
                    SafeOrder::StrictSubset | SafeOrder::StrictSuperset => {
                        if safe.component_of[q] != safe.component_of[p]
                            || safe.component_of[q].is_none()
                        {
                            safe_centralised = false;
                        }
                    }
                    SafeOrder::Incomparable => {}
                }
            }
        }
    }
    Ok((
        CanonicityReport {
            reachable_only,
            semantically_deterministic,
            normal_form: normal_f,
            safe_deterministic: safe_det,
            safe_minimal,
            safe_centralised,
        },
        partition,
        safe,
    ))
}

/// The canonical automaton together with the deterministic reference it
/// was extracted from and the projection used for resolver construction.
pub struct CanonicalCoBuchi {
    /// The canonical minimal history-deterministic coBüchi automaton.
    pub automaton: Automaton,
    /// A deterministic complete automaton for the same language.
    pub reference: Automaton,
    /// Projection from reference states onto canonical states (`None` for
    /// states recognising the empty language). The image of the
    /// reference's run under this map is a run of the canonical automaton,
    /// accepting whenever the word is in the language.
    pub proj: Vec<Option<usize>>,
    /// Residual classes of the canonical automaton's states.
    pub partition: ResidualPartition,
    /// Safe components of the canonical automaton.
    pub safe: SafeDecomposition,
}

/// Lightweight safe structure used during quotient and centralisation.
struct Skeleton {
    class_of: Vec<usize>,
    classes: usize,
    // Per (state, letter): unique safe successor, if any.
    safe_succ: Vec<Vec<Option<usize>>>,
    // Per (state, letter): residual class of the target, if the letter is
    // live from this state's class.
    target_class: Vec<Vec<Option<usize>>>,
    initial: usize,
    letters: usize,
}

impl Skeleton {
    fn states(&self) -> usize {
        self.class_of.len()
    }

    /// Safe components: SCCs of the safe graph carrying at least one edge.
    fn components(&self, alive: &[bool]) -> Vec<Option<usize>> {
        let n = self.states();
        let mut adj = vec![Vec::new(); n];
        for q in 0..n {
            if !alive[q] {
                continue;
            }
            for a in 0..self.letters {
                if let Some(p) = self.safe_succ[q][a] {
                    adj[q].push(p);
                }
            }
        }
        let (comp_of, comps) = crate::graph::tarjan_sccs(&adj);
        let mut has_edge = vec![false; comps.len()];
        for q in 0..n {
            if !alive[q] {
                continue;
            }
            for a in 0..self.letters {
                if let Some(p) = self.safe_succ[q][a] {
                    if comp_of[q] == comp_of[p] {
                        has_edge[comp_of[q]] = true;
                    }
                }
            }
        }
        (0..n)
            .map(|q| {
                if alive[q] && has_edge[comp_of[q]] {
                    Some(comp_of[q])
                } else {
                    None
                }
            })
            .collect()
    }

    /// Safe-behaviour inclusion between two states, by product reachability.
    fn safe_included(&self, q: usize, p: usize) -> bool {
        let n = self.states();
        let mut seen = vec![false; n * n];
        let mut stack = vec![(q, p)];
        seen[q * n + p] = true;
        while let Some((x, y)) = stack.pop() {
            for a in 0..self.letters {
                if let Some(x2) = self.safe_succ[x][a] {
                    match self.safe_succ[y][a] {
                        None => return false,
                        Some(y2) => {
                            if !seen[x2 * n + y2] {
                                seen[x2 * n + y2] = true;
                                stack.push((x2, y2));
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// One canonicalisation pass over a deterministic, complete, trimmed,
/// single-colour coBüchi automaton. Returns the candidate canonical
/// automaton and the projection from input states.
fn canonical_pass(det: &Automaton) -> Result<(Automaton, Vec<Option<usize>>)> {
    let sigma = det.alphabet().len();
    let dead = dead_states(det);

    if dead[det.initial()] {
        // Empty language: the one-state automaton whose loops all carry
        // the colour.
        let mut b = AutomatonBuilder::new(det.alphabet().clone(), Acceptance::cobuchi(1), 1);
        for a in 0..sigma {
            b = b.transition(0, a, 0, ColourSet::singleton(0));
        }
        return Ok((b.build()?, vec![None; det.states()]));
    }

    // Restrict to live states; transitions into dead states disappear
    // (they contribute nothing to any state's language).
    let mut live_map = vec![None; det.states()];
    let mut live_count = 0usize;
    for q in 0..det.states() {
        if !dead[q] {
            live_map[q] = Some(live_count);
            live_count += 1;
        }
    }
    let mut lb = AutomatonBuilder::new(det.alphabet().clone(), Acceptance::cobuchi(1), live_count)
        .initial(live_map[det.initial()].unwrap());
    for t in det.transitions() {
        if let (Some(s), Some(d)) = (live_map[t.src], live_map[t.dst]) {
            lb = lb.transition(s, t.letter, d, t.colours);
        }
    }
    let live = lb.build()?;
    let partition = residual_partition(&live)?;
    let norm = normal_form(&live)?;

    // Quotient by (residual class, safe language).
    let mut group_of = vec![usize::MAX; norm.states()];
    let mut reps: Vec<usize> = Vec::new();
    for q in 0..norm.states() {
        let mut found = None;
        for (g, &r) in reps.iter().enumerate() {
            if partition.class_of[r] == partition.class_of[q]
                && compare_safe_languages(&norm, r, q)? == SafeOrder::Equal
            {
                found = Some(g);
                break;
            }
        }
        group_of[q] = match found {
            Some(g) => g,
            None => {
                reps.push(q);
                reps.len() - 1
            }
        };
    }

    let mut skeleton = Skeleton {
        class_of: reps.iter().map(|&r| partition.class_of[r]).collect(),
        classes: partition.classes,
        safe_succ: vec![vec![None; sigma]; reps.len()],
        target_class: vec![vec![None; sigma]; reps.len()],
        initial: group_of[norm.initial()],
        letters: sigma,
    };
    for (g, &r) in reps.iter().enumerate() {
        for a in 0..sigma {
            skeleton.safe_succ[g][a] = safe_successor(&norm, r, a).map(|s| group_of[s]);
            skeleton.target_class[g][a] = norm.on(r, a).first().map(|t| partition.class_of[t.dst]);
        }
    }

    // Centralisation: delete components (and isolated states) whose safe
    // language is dominated, within their class, by a state of another
    // component. The domination lifts to a safe-structure morphism that
    // gives every deleted state a replacement.
    let n = skeleton.states();
    let mut alive = vec![true; n];
    let mut redirect: Vec<usize> = (0..n).collect();
    loop {
        let comp = skeleton.components(&alive);
        let mut deletion: Option<(usize, usize)> = None;
        'search: for q in 0..n {
            if !alive[q] {
                continue;
            }
            for p in 0..n {
                if p == q || !alive[p] || skeleton.class_of[p] != skeleton.class_of[q] {
                    continue;
                }
                if comp[q] == comp[p] && comp[q].is_some() {
                    continue;
                }
                if comp[p].is_none() {
                    continue; // the replacement must live in a component
                }
                if skeleton.safe_included(q, p) {
                    deletion = Some((q, p));
                    break 'search;
                }
            }
        }
        let Some((q, p)) = deletion else { break };
        // Map the whole component of q (or just q when isolated) into p's
        // component along the safe morphism.
        let mut mapping: Vec<(usize, usize)> = vec![(q, p)];
        let mut mapped = std::collections::HashMap::new();
        mapped.insert(q, p);
        let mut cursor = 0;
        while cursor < mapping.len() {
            let (x, y) = mapping[cursor];
            cursor += 1;
            for a in 0..skeleton.letters {
                if let Some(x2) = skeleton.safe_succ[x][a] {
                    if comp[x2] != comp[q] || comp[q].is_none() {
                        continue; // normal form keeps safe edges internal
                    }
                    let y2 = skeleton.safe_succ[y][a]
                        .expect("dominating state must match safe moves");
                    if mapped.insert(x2, y2).is_none() {
                        mapping.push((x2, y2));
                    }
                }
            }
        }
        for (x, y) in mapped {
            if alive[x] && (x == q || (comp[x] == comp[q] && comp[q].is_some())) {
                alive[x] = false;
                redirect[x] = y;
            }
        }
    }
    // Resolve redirect chains (later deletions may displace earlier targets).
    let resolve = |mut x: usize| {
        while !alive[x] {
            x = redirect[x];
        }
        x
    };

    // Re-index the surviving states and rebuild with coloured fanout.
    let mut final_of = vec![None; n];
    let mut kept = 0usize;
    for q in 0..n {
        if alive[q] {
            final_of[q] = Some(kept);
            kept += 1;
        }
    }
    let mut class_members: Vec<Vec<usize>> = vec![Vec::new(); skeleton.classes];
    for q in 0..n {
        if alive[q] {
            class_members[skeleton.class_of[q]].push(final_of[q].unwrap());
        }
    }
    let mut cb = AutomatonBuilder::new(det.alphabet().clone(), Acceptance::cobuchi(1), kept)
        .initial(final_of[resolve(skeleton.initial)].unwrap());
    for q in 0..n {
        if !alive[q] {
            continue;
        }
        let fq = final_of[q].unwrap();
        for a in 0..sigma {
            if let Some(s) = skeleton.safe_succ[q][a] {
                // Safe edges stay within components, which are deleted
                // wholesale, so the target is alive.
                cb = cb.transition(fq, a, final_of[s].unwrap(), ColourSet::EMPTY);
            } else if let Some(c) = skeleton.target_class[q][a] {
                for &t in &class_members[c] {
                    cb = cb.transition(fq, a, t, ColourSet::singleton(0));
                }
            }
        }
    }
    let canonical = cb.build()?;

    let proj: Vec<Option<usize>> = (0..det.states())
        .map(|q| live_map[q].map(|l| final_of[resolve(group_of[l])].unwrap()))
        .collect();
    Ok((canonical, proj))
}

/// Builds the canonical minimal history-deterministic coBüchi automaton of
/// a generalised coBüchi automaton. All postconditions (canonicity flags,
/// history-determinism, two-way language containment against the
/// deterministic reference) are machine-checked; a failure aborts.
pub fn minimise_hd_cobuchi(input: &Automaton) -> Result<CanonicalCoBuchi> {
    if input.acceptance().family != crate::colours::AcceptanceFamily::GeneralisedCoBuchi {
        return Err(Error::Contract(
            "canonical minimisation expects a generalised coBüchi automaton".into(),
        ));
    }
    let mut current = input.clone();
    for _round in 0..8 {
        let single = degeneralise(&current)?;
        let reference = if single.is_deterministic() {
            single.complete().trim()
        } else {
            breakpoint_determinise(&single)?.trim()
        };
        let (candidate, mut proj) = canonical_pass(&reference)?;
        let (trimmed, trim_map) = candidate.trim_with_map();
        if trimmed.states() < candidate.states() {
            // Some fanout targets turned out unreachable; canonicalise the
            // smaller automaton again.
            current = trimmed;
            continue;
        }
        for slot in proj.iter_mut() {
            *slot = slot.and_then(|q| trim_map[q]);
        }
        let (report, partition, safe) = check_canonicity_full(&candidate)?;
        if !report.all() {
            return Err(Error::Contract(format!(
                "canonical minimisation postcondition failed: {report:?}"
            )));
        }
        if !is_history_deterministic(&candidate)? {
            return Err(Error::Contract(
                "canonical minimisation postcondition failed: output not history-deterministic"
                    .into(),
            ));
        }
        if !(contains_hd(&candidate, &reference)? && contains_hd(&reference, &candidate)?) {
            return Err(Error::Contract(
                "canonical minimisation postcondition failed: output not language-equivalent"
                    .into(),
            ));
        }
        return Ok(CanonicalCoBuchi {
            automaton: candidate,
            reference,
            proj,
            partition,
            safe,
        });
    }
    Err(Error::Contract("canonical minimisation did not stabilise".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn canonical6_fixture_passes_all_flags() {
        let report = check_canonicity(&fixtures::factor_xx_canonical6()).unwrap();
        assert!(report.all(), "{report:?}");
    }

    #[test]
    fn hd3_fixture_is_not_safe_centralised() {
        let report = check_canonicity(&fixtures::fin_b_or_c_hd3()).unwrap();
        assert!(!report.safe_centralised);
        assert!(report.reachable_only);
        assert!(report.semantically_deterministic);
    }

    #[test]
    fn single_state_all_safe_automaton_is_canonical() {
        let a = crate::AutomatonBuilder::new(
            crate::Alphabet::of_chars("ab").unwrap(),
            Acceptance::cobuchi(1),
            1,
        )
        .transition(0, 0, 0, ColourSet::EMPTY)
        .transition(0, 1, 0, ColourSet::EMPTY)
        .build()
        .unwrap();
        assert!(check_canonicity(&a).unwrap().all());
    }

    #[test]
    fn factor_xx_minimises_to_six_states() {
        let canon = minimise_hd_cobuchi(&fixtures::factor_xx_det3()).unwrap();
        assert_eq!(canon.automaton.states(), 6);
        assert_eq!(canon.safe.components.len(), 3);
        for c in &canon.safe.components {
            assert_eq!(c.states.len(), 2);
        }
        assert_eq!(canon.partition.classes, 1);
    }

    #[test]
    fn fin_b_or_c_minimises_to_two_states() {
        for input in [fixtures::fin_b_or_c_det2(), fixtures::fin_b_or_c_hd3()] {
            let canon = minimise_hd_cobuchi(&input).unwrap();
            assert_eq!(canon.automaton.states(), 2);
            assert_eq!(canon.safe.components.len(), 2);
        }
    }

    #[test]
    fn nice_form_dots_component_crossing_transitions() {
        let t = fixtures::factor_xx_transient_init();
        let single = degeneralise(&t).unwrap();
        let nice = to_nice_form(&single).unwrap();
        let safe = safe_components(&nice).unwrap();
        for tr in nice.transitions() {
            if tr.colours.is_empty() {
                assert_eq!(safe.component_of[tr.src], safe.component_of[tr.dst]);
                assert!(safe.component_of[tr.src].is_some());
            }
        }
    }

    #[test]
    fn nice_form_is_a_no_op_on_normal_form_inputs() {
        let c6 = fixtures::factor_xx_canonical6();
        assert_eq!(to_nice_form(&c6).unwrap(), c6);
    }

    #[test]
    fn idempotence_on_the_canonical_output() {
        let canon = minimise_hd_cobuchi(&fixtures::factor_xx_det3()).unwrap();
        let again = minimise_hd_cobuchi(&canon.automaton).unwrap();
        assert_eq!(again.automaton.states(), canon.automaton.states());
        assert!(check_canonicity(&again.automaton).unwrap().all());
    }

    #[test]
    fn dominated_singleton_component_is_deleted() {
        // Accept-everything with a redundant smaller component: state 1
        // only stays safe on a's, state 0 on everything.
        let ab = crate::Alphabet::of_chars("ab").unwrap();
        let a = crate::AutomatonBuilder::new(ab, Acceptance::cobuchi(1), 2)
            .initial(1)
            .transition(0, 0, 0, ColourSet::EMPTY)
            .transition(0, 1, 0, ColourSet::EMPTY)
            .transition(1, 0, 1, ColourSet::EMPTY)
            .transition(1, 1, 0, ColourSet::singleton(0))
            .build()
            .unwrap();
        let canon = minimise_hd_cobuchi(&a).unwrap();
        assert_eq!(canon.automaton.states(), 1);
        assert_eq!(canon.safe.components.len(), 1);
    }

    #[test]
    fn dominated_two_state_component_is_deleted_wholesale() {
        // States 1 and 2 cycle safely on a's; any b escapes to the fully
        // safe state 0. The whole two-state component is dominated.
        let ab = crate::Alphabet::of_chars("ab").unwrap();
        let a = crate::AutomatonBuilder::new(ab, Acceptance::cobuchi(1), 3)
            .initial(1)
            .transition(0, 0, 0, ColourSet::EMPTY)
            .transition(0, 1, 0, ColourSet::EMPTY)
            .transition(1, 0, 2, ColourSet::EMPTY)
            .transition(2, 0, 1, ColourSet::EMPTY)
            .transition(1, 1, 0, ColourSet::singleton(0))
            .transition(2, 1, 0, ColourSet::singleton(0))
            .build()
            .unwrap();
        let canon = minimise_hd_cobuchi(&a).unwrap();
        assert_eq!(canon.automaton.states(), 1);
    }

    #[test]
    fn empty_language_collapses_to_one_state() {
        let a = crate::AutomatonBuilder::new(
            crate::Alphabet::of_chars("a").unwrap(),
            Acceptance::cobuchi(1),
            2,
        )
        .transition(0, 0, 1, ColourSet::singleton(0))
        .transition(1, 0, 0, ColourSet::singleton(0))
        .build()
        .unwrap();
        let canon = minimise_hd_cobuchi(&a).unwrap();
        assert_eq!(canon.automaton.states(), 1);
        assert!(crate::emptiness::is_empty(&canon.automaton));
    }

    #[test]
    fn transient_variant_keeps_a_transient_state() {
        let canon = minimise_hd_cobuchi(&fixtures::factor_xx_transient_init()).unwrap();
        // One transient state plus the six-state recurrent part.
        assert_eq!(canon.automaton.states(), 7);
        assert_eq!(canon.partition.classes, 2);
    }
}
