//! Safe components and safe languages of single-colour coBüchi automata.
//!
//! Removing every colour-carrying transition leaves the safe subgraph; its
//! strongly connected components with at least one edge are the safe
//! components. The safe language of a state is the set of words admitting
//! a run that never takes a coloured transition.

use crate::automaton::{Automaton, Transition};
use crate::colours::Acceptance;
use crate::graph::tarjan_sccs;
use crate::{Error, Result};

/// Partition of the states into safe components. States outside every
/// component (no safe cycle through them) get `None`.
#[derive(Clone, Debug)]
pub struct SafeDecomposition {
    /// Component id per state, `None` for safe-isolated states.
    pub component_of: Vec<Option<usize>>,
    /// The components: member states plus internal safe transitions.
    pub components: Vec<SafeComponent>,
}

/// One safe component.
#[derive(Clone, Debug)]
pub struct SafeComponent {
    /// Member states, ascending.
    pub states: Vec<usize>,
    /// Safe transitions with both endpoints inside the component.
    pub transitions: Vec<Transition>,
}

/// Requires a single-colour coBüchi automaton.
fn require_cobuchi1(aut: &Automaton, what: &str) -> Result<()> {
    if aut.acceptance() != Acceptance::cobuchi(1) {
        return Err(Error::Contract(format!(
            "{what} is defined on single-colour coBüchi automata"
        )));
    }
    Ok(())
}

/// Computes the safe components of a single-colour coBüchi automaton.
pub fn safe_components(aut: &Automaton) -> Result<SafeDecomposition> {
    require_cobuchi1(aut, "safe decomposition")?;
    let mut adj = vec![Vec::new(); aut.states()];
    for t in aut.transitions() {
        if t.colours.is_empty() {
            adj[t.src].push(t.dst);
        }
    }
    let (raw_comp, raw_comps) = tarjan_sccs(&adj);
    // Keep only SCCs that carry at least one internal safe edge.
    let mut keep: Vec<bool> = vec![false; raw_comps.len()];
    for t in aut.transitions() {
        if t.colours.is_empty() && raw_comp[t.src] == raw_comp[t.dst] {
            keep[raw_comp[t.src]] = true;
        }
    }
    let mut component_of = vec![None; aut.states()];
    let mut components = Vec::new();
    let mut renumber = vec![usize::MAX; raw_comps.len()];
    for (c, comp) in raw_comps.iter().enumerate() {
        if !keep[c] {
            continue;
        }
        renumber[c] = components.len();
        for &q in comp {
            component_of[q] = Some(components.len());
        }
        components.push(SafeComponent {
            states: comp.clone(),
            transitions: Vec::new(),
        });
    }
    for t in aut.transitions() {
        if t.colours.is_empty() && raw_comp[t.src] == raw_comp[t.dst] && keep[raw_comp[t.src]] {
            components[renumber[raw_comp[t.src]]].transitions.push(*t);
        }
    }
    Ok(SafeDecomposition {
        component_of,
        components,
    })
}

/// True when the safe subgraph is deterministic: at most one safe
/// transition per state and letter.
pub fn is_safe_deterministic(aut: &Automaton) -> bool {
    (0..aut.states()).all(|q| {
        (0..aut.alphabet().len()).all(|a| {
            aut.on(q, a).iter().filter(|t| t.colours.is_empty()).count() <= 1
        })
    })
}

/// The unique safe successor of `q` on `a`, for safe-deterministic automata.
pub fn safe_successor(aut: &Automaton, q: usize, a: usize) -> Option<usize> {
    aut.on(q, a).iter().find(|t| t.colours.is_empty()).map(|t| t.dst)
}

/// Comparison outcome of two safe languages.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SafeOrder {
    /// The two safe languages coincide.
    Equal,
    /// The first is strictly contained in the second.
    StrictSubset,
    /// The second is strictly contained in the first.
    StrictSuperset,
    /// Neither contains the other.
    Incomparable,
}

/// A deterministic safety-automaton view rooted at one state: the state
/// together with the safe transitions reachable from it.
#[derive(Clone, Copy)]
pub struct SafeView<'a> {
    aut: &'a Automaton,
    root: usize,
}

impl<'a> SafeView<'a> {
    /// Roots a safety view at `q`; the automaton must be safe-deterministic.
    pub fn new(aut: &'a Automaton, q: usize) -> Result<Self> {
        require_cobuchi1(aut, "safe language view")?;
        if !is_safe_deterministic(aut) {
            return Err(Error::Contract(
                "safe language views need a safe-deterministic automaton".into(),
            ));
        }
        Ok(SafeView { aut, root: q })
    }

    /// The root state.
    pub fn root(&self) -> usize {
        self.root
    }

    /// Whether the word is a prefix of some safe behaviour from the root.
    pub fn admits_prefix(&self, word: &[usize]) -> bool {
        let mut at = self.root;
        for &a in word {
            match safe_successor(self.aut, at, a) {
                Some(next) => at = next,
                None => return false,
            }
        }
        true
    }
}

/// Inclusion of safe behaviours, decided by product reachability over the
/// two deterministic safety views: `Safe(q) ⊆ Safe(p)` fails exactly when
/// some reachable pair has a safe move on the left with no safe answer on
/// the right. On automata in normal form this order coincides with
/// inclusion of the infinite safe languages, because every safe transition
/// stays inside a component and can be prolonged forever.
pub fn compare_safe_languages(aut: &Automaton, q: usize, p: usize) -> Result<SafeOrder> {
    SafeView::new(aut, q)?;
    let le = safe_included(aut, q, p);
    let ge = safe_included(aut, p, q);
    Ok(match (le, ge) {
        (true, true) => SafeOrder::Equal,
        (true, false) => SafeOrder::StrictSubset,
        (false, true) => SafeOrder::StrictSuperset,
        (false, false) => SafeOrder::Incomparable,
    })
}

fn safe_included(aut: &Automaton, q: usize, p: usize) -> bool {
    let n = aut.states();
    let mut seen = vec![false; n * n];
    let mut stack = vec![(q, p)];
    seen[q * n + p] = true;
    while let Some((x, y)) = stack.pop() {
        for a in 0..aut.alphabet().len() {
            if let Some(x2) = safe_successor(aut, x, a) {
                match safe_successor(aut, y, a) {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn canonical6_has_three_components_of_size_two() {
        let a = fixtures::factor_xx_canonical6();
        let d = safe_components(&a).unwrap();
        assert_eq!(d.components.len(), 3);
        for c in &d.components {
            assert_eq!(c.states.len(), 2);
        }
    }

    #[test]
    fn all_coloured_automaton_is_fully_isolated() {
        let a = fixtures::factor_xx_det3();
        let single = crate::transforms::degeneralise(&a).unwrap();
        // Not this one - build an automaton with every transition coloured.
        let all_dotted = single.recoloured(Acceptance::cobuchi(1), |_| {
            crate::ColourSet::singleton(0)
        });
        let d = safe_components(&all_dotted).unwrap();
        assert!(d.components.is_empty());
        assert!(d.component_of.iter().all(|c| c.is_none()));
    }

    #[test]
    fn det2_has_two_singleton_components() {
        let a = fixtures::fin_b_or_c_det2();
        let d = safe_components(&a).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.component_of[0], Some(d.component_of[0].unwrap()));
        assert_ne!(d.component_of[0], d.component_of[1]);
        for c in &d.components {
            assert_eq!(c.states.len(), 1);
        }
    }

    #[test]
    fn safe_language_comparisons_on_fixtures() {
        let hd3 = fixtures::fin_b_or_c_hd3();
        // Safe(1) = ∅ ⊂ Safe(2); Safe(0) and Safe(2) are incomparable.
        assert_eq!(compare_safe_languages(&hd3, 1, 2).unwrap(), SafeOrder::StrictSubset);
        assert_eq!(compare_safe_languages(&hd3, 2, 1).unwrap(), SafeOrder::StrictSuperset);
        assert_eq!(compare_safe_languages(&hd3, 0, 2).unwrap(), SafeOrder::Incomparable);
        assert_eq!(compare_safe_languages(&hd3, 1, 1).unwrap(), SafeOrder::Equal);

        let c6 = fixtures::factor_xx_canonical6();
        // Within the aa-component: "last was a" is strictly harder.
        assert_eq!(compare_safe_languages(&c6, 1, 0).unwrap(), SafeOrder::StrictSubset);
        // Across components: incomparable.
        assert_eq!(compare_safe_languages(&c6, 0, 2).unwrap(), SafeOrder::Incomparable);
    }
}
