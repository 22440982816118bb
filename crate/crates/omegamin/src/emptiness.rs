//! Emptiness checks with lasso witnesses.
//!
//! Generalised Büchi: the language is non-empty iff some reachable strongly
//! connected subgraph carries every colour. Generalised coBüchi: non-empty
//! iff for some colour `i` there is a reachable cycle using no transition
//! carrying `i`. Both reduce to SCC passes over coloured digraphs, shared
//! here with the lasso membership product.

use crate::automaton::Automaton;
use crate::colours::{Acceptance, AcceptanceFamily, ColourSet};
use crate::graph::{reachable, tarjan_sccs, BitSet};
use crate::lasso::Lasso;

type ColouredEdge = (usize, usize, ColourSet);

/// Finds an accepting lasso in a coloured digraph, as edge index lists
/// `(stem, cycle)` with the cycle non-empty and closed.
pub(crate) fn accepting_lasso_in_graph(
    n: usize,
    edges: &[ColouredEdge],
    start: usize,
    acceptance: Acceptance,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if n == 0 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(src, dst, _)) in edges.iter().enumerate() {
        adj[src].push((dst, i));
    }
    let plain: Vec<Vec<usize>> = adj
        .iter()
        .map(|out| out.iter().map(|&(d, _)| d).collect())
        .collect();
    let seen = reachable(&plain, start);

    match acceptance.family {
        AcceptanceFamily::GeneralisedBuchi => {
            let keep: Vec<bool> = (0..edges.len())
                .map(|i| seen.contains(edges[i].0))
                .collect();
            find_covering_cycle(n, edges, &keep, acceptance.colours)
                .map(|(base, cycle)| (path_to(&adj, start, base), cycle))
        }
        AcceptanceFamily::GeneralisedCoBuchi => {
            for avoid in 0..acceptance.colours {
                let keep: Vec<bool> = (0..edges.len())
                    .map(|i| seen.contains(edges[i].0) && !edges[i].2.contains(avoid))
                    .collect();
                if let Some((base, cycle)) = find_covering_cycle(n, edges, &keep, 0) {
                    return Some((path_to(&adj, start, base), cycle));
                }
            }
            None
        }
    }
}

/// Looks for a strongly connected subgraph (over the kept edges) whose
/// colour union covers `0..colours`, and returns a closed walk realising
/// the coverage, anchored at some node of the component.
fn find_covering_cycle(
    n: usize,
    edges: &[ColouredEdge],
    keep: &[bool],
    colours: usize,
) -> Option<(usize, Vec<usize>)> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(src, dst, _)) in edges.iter().enumerate() {
        if keep[i] {
            adj[src].push(dst);
        }
    }
    let (comp_of, comps) = tarjan_sccs(&adj);
    for c in 0..comps.len() {
        let internal: Vec<usize> = (0..edges.len())
            .filter(|&i| keep[i] && comp_of[edges[i].0] == c && comp_of[edges[i].1] == c)
            .collect();
        if internal.is_empty() {
            continue;
        }
        let union = internal
            .iter()
            .fold(ColourSet::EMPTY, |acc, &i| acc.union(edges[i].2));
        if !ColourSet::all(colours).is_subset(union) {
            continue;
        }
        // One edge per required colour, or an arbitrary edge when none is
        // required, then stitch with paths inside the component.
        let mut required: Vec<usize> = Vec::new();
        for colour in 0..colours {
            let e = internal
                .iter()
                .copied()
                .find(|&i| edges[i].2.contains(colour))
                .expect("union covers colour");
            required.push(e);
        }
        if required.is_empty() {
            required.push(internal[0]);
        }
        let base = edges[required[0]].0;
        let mut walk = Vec::new();
        let mut at = base;
        for &e in &required {
            walk.extend(path_within(edges, &internal, at, edges[e].0));
            walk.push(e);
            at = edges[e].1;
        }
        walk.extend(path_within(edges, &internal, at, base));
        return Some((base, walk));
    }
    None
}

/// BFS path (as edge indices) between two nodes using only the given edges.
/// Both nodes lie in one strongly connected component over those edges, so
/// a path always exists.
fn path_within(edges: &[ColouredEdge], allowed: &[usize], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return Vec::new();
    }
    let mut back: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut visited = std::collections::HashSet::new();
    visited.insert(from);
    let mut frontier = vec![from];
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            for &e in allowed {
                if edges[e].0 == v && visited.insert(edges[e].1) {
                    back.insert(edges[e].1, e);
                    if edges[e].1 == to {
                        break 'bfs;
                    }
                    next.push(edges[e].1);
                }
            }
        }
        frontier = next;
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let e = back[&at];
        path.push(e);
        at = edges[e].0;
    }
    path.reverse();
    path
}

/// BFS path of edge indices from `start` to `goal` over the full graph.
fn path_to(adj: &[Vec<(usize, usize)>], start: usize, goal: usize) -> Vec<usize> {
    if start == goal {
        return Vec::new();
    }
    let mut back: Vec<Option<usize>> = vec![None; adj.len()];
    let mut pred: Vec<usize> = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    let mut seen = BitSet::new(adj.len());
    seen.insert(start);
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if seen.insert(w) {
                back[w] = Some(e);
                pred[w] = v;
                if w == goal {
                    queue.clear();
                    break;
                }
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = goal;
    while at != start {
        let e = back[at].expect("goal reachable");
        path.push(e);
        at = pred[at];
    }
    path.reverse();
    path
}

/// Returns an accepted lasso if the language is non-empty, `None` otherwise.
pub fn emptiness_witness(aut: &Automaton) -> Option<Lasso> {
    let edges: Vec<ColouredEdge> = aut
        .transitions()
        .iter()
        .map(|t| (t.src, t.dst, t.colours))
        .collect();
    let (stem, cycle) =
        accepting_lasso_in_graph(aut.states(), &edges, aut.initial(), aut.acceptance())?;
    let letters = |seq: &[usize]| -> Vec<usize> {
        seq.iter().map(|&e| aut.transitions()[e].letter).collect()
    };
    Some(Lasso::new(letters(&stem), letters(&cycle)).expect("cycle non-empty"))
}

/// True when the automaton accepts no word.
pub fn is_empty(aut: &Automaton) -> bool {
    emptiness_witness(aut).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::lasso_accepts;
    use crate::{Alphabet, AutomatonBuilder};

    #[test]
    fn uncoloured_loop_is_empty_for_buchi() {
        let alphabet = Alphabet::of_chars("a").unwrap();
        let a = AutomatonBuilder::new(alphabet, Acceptance::buchi(1), 1)
            .transition(0, 0, 0, ColourSet::EMPTY)
            .build()
            .unwrap();
        assert!(is_empty(&a));
    }

    #[test]
    fn witness_is_accepted() {
        let a = crate::fixtures::fin_b_or_c_det2();
        let w = emptiness_witness(&a).expect("non-empty");
        assert!(lasso_accepts(&a, &w).unwrap());
    }

    #[test]
    fn covering_needs_all_colours() {
        // Two self-loops carrying colours {0} and {1}: only together they
        // cover, and they sit in the same component.
        let alphabet = Alphabet::of_chars("ab").unwrap();
        let a = AutomatonBuilder::new(alphabet, Acceptance::buchi(2), 1)
            .transition(0, 0, 0, ColourSet::singleton(0))
            .transition(0, 1, 0, ColourSet::singleton(1))
            .build()
            .unwrap();
        let w = emptiness_witness(&a).expect("non-empty");
        assert!(lasso_accepts(&a, &w).unwrap());
        // Dropping letter b kills colour 1.
        let alphabet = Alphabet::of_chars("ab").unwrap();
        let b = AutomatonBuilder::new(alphabet, Acceptance::buchi(2), 1)
            .transition(0, 0, 0, ColourSet::singleton(0))
            .build()
            .unwrap();
        assert!(is_empty(&b));
    }

    #[test]
    fn cobuchi_zero_colours_rejects_everything() {
        let alphabet = Alphabet::of_chars("a").unwrap();
        let a = AutomatonBuilder::new(alphabet, Acceptance::cobuchi(0), 1)
            .transition(0, 0, 0, ColourSet::EMPTY)
            .build()
            .unwrap();
        assert!(is_empty(&a));
    }
}
