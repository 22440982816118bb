//! Language comparison against deterministic automata.
//!
//! `difference_witness(a, b)` looks for a word accepted by `a` and rejected
//! by `b`, where `b` must be deterministic (it is completed internally, so
//! its unique run always exists). The product of `a` with `b`'s run graph
//! is searched for a reachable cycle realising "`a` accepts, `b` rejects",
//! which splits into four colour-condition cases depending on the two
//! acceptance families.

use crate::automaton::Automaton;
use crate::colours::{AcceptanceFamily, ColourSet};
use crate::graph::{reachable, tarjan_sccs};
use crate::lasso::Lasso;
use crate::{Error, Result};

struct Product {
    // node id -> (a_state, b_state) is implicit: id = qa * nb + qb
    edges: Vec<ProductEdge>,
    nodes: usize,
    start: usize,
}

struct ProductEdge {
    from: usize,
    to: usize,
    letter: usize,
    a_colours: ColourSet,
    b_colours: ColourSet,
}

fn build_product(a: &Automaton, b: &Automaton) -> Product {
    let nb = b.states();
    let nodes = a.states() * nb;
    let mut edges = Vec::new();
    for qa in 0..a.states() {
        for qb in 0..nb {
            for ta in a.from_state(qa) {
                let tb = b.on(qb, ta.letter);
                debug_assert_eq!(tb.len(), 1, "b must be deterministic and complete");
                let tb = tb[0];
                edges.push(ProductEdge {
                    from: qa * nb + qb,
                    to: ta.dst * nb + tb.dst,
                    letter: ta.letter,
                    a_colours: ta.colours,
                    b_colours: tb.colours,
                });
            }
        }
    }
    Product {
        edges,
        nodes,
        start: a.initial() * nb + b.initial(),
    }
}

/// A word in `L(a) \ L(b)`, if one exists. `a` may be nondeterministic;
/// `b` must be deterministic and is completed internally.
pub fn difference_witness(a: &Automaton, b: &Automaton) -> Result<Option<Lasso>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::Contract(
            "language comparison needs a shared alphabet".into(),
        ));
    }
    if !b.is_deterministic() {
        return Err(Error::Contract(
            "difference check requires a deterministic right-hand side".into(),
        ));
    }
    let b = b.complete();
    let p = build_product(a, &b);
    let ka = a.acceptance().colours;
    let kb = b.acceptance().colours;

    // Case analysis over (a accepts, b rejects): each case asks for a
    // reachable strongly connected edge set where
    //   a genB:  all a-colours occur      a genCoB: some a-colour avoided
    //   b genB:  some b-colour avoided    b genCoB: all b-colours occur
    let a_buchi = a.acceptance().family == AcceptanceFamily::GeneralisedBuchi;
    let b_buchi = b.acceptance().family == AcceptanceFamily::GeneralisedBuchi;

    let avoided_a: Vec<Option<usize>> = if a_buchi {
        vec![None]
    } else {
        (0..ka).map(Some).collect()
    };
    let avoided_b: Vec<Option<usize>> = if b_buchi {
        (0..kb).map(Some).collect()
    } else {
        vec![None]
    };
    // b genB with zero colours accepts everything: no difference possible.
    if b_buchi && kb == 0 {
        return Ok(None);
    }
    // a genCoB with zero colours accepts nothing.
    if !a_buchi && ka == 0 {
        return Ok(None);
    }

    let cover_a = a_buchi;
    let cover_b = !b_buchi;
    for &avoid_a in &avoided_a {
        for &avoid_b in &avoided_b {
            if let Some(lasso) = covering_lasso(&p, avoid_a, avoid_b, cover_a.then_some(ka), cover_b.then_some(kb)) {
                return Ok(Some(lasso));
            }
        }
    }
    Ok(None)
}

/// Search for a reachable cycle avoiding the given colours on each side
/// while covering all colours of the sides where `cover_*` is set, then
/// assemble the witness lasso from the stem and a covering closed walk.
fn covering_lasso(
    p: &Product,
    avoid_a: Option<usize>,
    avoid_b: Option<usize>,
    cover_a: Option<usize>,
    cover_b: Option<usize>,
) -> Option<Lasso> {
    let keep: Vec<bool> = p
        .edges
        .iter()
        .map(|e| {
            avoid_a.is_none_or(|c| !e.a_colours.contains(c))
                && avoid_b.is_none_or(|c| !e.b_colours.contains(c))
        })
        .collect();
    let mut adj = vec![Vec::new(); p.nodes];
    for (i, e) in p.edges.iter().enumerate() {
        if keep[i] {
            adj[e.from].push(e.to);
        }
    }
    let mut full_adj = vec![Vec::new(); p.nodes];
    for e in &p.edges {
        full_adj[e.from].push(e.to);
    }
    let seen = reachable(&full_adj, p.start);
    let (comp_of, comps) = tarjan_sccs(&adj);
    for c in 0..comps.len() {
        if !comps[c].iter().any(|&v| seen.contains(v)) {
            continue;
        }
        let internal: Vec<usize> = (0..p.edges.len())
            .filter(|&i| {
                keep[i] && comp_of[p.edges[i].from] == c && comp_of[p.edges[i].to] == c
            })
            .collect();
        if internal.is_empty() {
            continue;
        }
        let union_a = internal.iter().fold(ColourSet::EMPTY, |u, &i| u.union(p.edges[i].a_colours));
        let union_b = internal.iter().fold(ColourSet::EMPTY, |u, &i| u.union(p.edges[i].b_colours));
        if let Some(k) = cover_a {
            if !ColourSet::all(k).is_subset(union_a) {
                continue;
            }
        }
        if let Some(k) = cover_b {
            if !ColourSet::all(k).is_subset(union_b) {
                continue;
            }
        }
        // Pick one edge per required colour on each covering side.
        let mut required = Vec::new();
        if let Some(k) = cover_a {
            for colour in 0..k {
                required.push(
                    internal.iter().copied().find(|&i| p.edges[i].a_colours.contains(colour)).unwrap(),
                );
            }
        }
        if let Some(k) = cover_b {
            for colour in 0..k {
                required.push(
                    internal.iter().copied().find(|&i| p.edges[i].b_colours.contains(colour)).unwrap(),
                );
            }
        }
        if required.is_empty() {
            required.push(internal[0]);
        }
        let anchor = p.edges[required[0]].from;
        let mut cycle_letters = Vec::new();
        let mut at = anchor;
        for &e in &required {
            for step in bfs_path(p, &internal, at, p.edges[e].from) {
                cycle_letters.push(p.edges[step].letter);
            }
            cycle_letters.push(p.edges[e].letter);
            at = p.edges[e].to;
        }
        for step in bfs_path(p, &internal, at, anchor) {
            cycle_letters.push(p.edges[step].letter);
        }
        // Stem through arbitrary edges.
        let all: Vec<usize> = (0..p.edges.len()).collect();
        let stem_letters: Vec<usize> = bfs_path(p, &all, p.start, anchor)
            .into_iter()
            .map(|e| p.edges[e].letter)
            .collect();
        return Some(Lasso::new(stem_letters, cycle_letters).expect("cycle non-empty"));
    }
    None
}

fn bfs_path(p: &Product, allowed: &[usize], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return Vec::new();
    }
    let mut back: Vec<Option<usize>> = vec![None; p.nodes];
    let mut visited = vec![false; p.nodes];
    visited[from] = true;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        for &e in allowed {
            if p.edges[e].from == v && !visited[p.edges[e].to] {
                visited[p.edges[e].to] = true;
                back[p.edges[e].to] = Some(e);
                if p.edges[e].to == to {
                    queue.clear();
                    break;
                }
                queue.push_back(p.edges[e].to);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let e = back[at].expect("path exists");
        path.push(e);
        at = p.edges[e].from;
    }
    path.reverse();
    path
}

/// Exact language equivalence of two deterministic automata (any mix of
/// acceptance families) over the same alphabet.
pub fn det_equivalent(a: &Automaton, b: &Automaton) -> Result<bool> {
    if !a.is_deterministic() || !b.is_deterministic() {
        return Err(Error::Contract(
            "det-mode equivalence requires deterministic automata".into(),
        ));
    }
    Ok(difference_witness(a, b)?.is_none() && difference_witness(b, a)?.is_none())
}
