//! Gadget automata tying graph colourings to automaton minimisation.

use super::graph::{Colouring, Graph};
use crate::automaton::{Automaton, AutomatonBuilder};
use crate::colours::{Acceptance, ColourSet};
use crate::{Alphabet, Error, Result};

/// The `k`-state deterministic generalised Büchi automaton derived from a
/// proper colouring. Letters are vertices, output colours are vertices;
/// reading `v` jumps to state `c(v)` and emits the vertices outside `v`'s
/// closed neighbourhood — plus `v` itself on the self-loop at `c(v)`,
/// which fires exactly when a `vv` factor is read. The language is the
/// intersection over `v` of "infinitely many `vv` factors, or infinitely
/// many letters outside `v`'s closed neighbourhood". With the trivial
/// one-colour-per-vertex colouring this is the reference automaton of the
/// graph language.
pub fn colouring_to_automaton(g: &Graph, colouring: &Colouring) -> Result<Automaton> {
    if !colouring.is_proper(g) {
        return Err(Error::Contract("the colouring is not proper".into()));
    }
    let n = g.vertices();
    if n == 0 {
        return Err(Error::Contract("the graph needs at least one vertex".into()));
    }
    let k = colouring.colours();
    let alphabet = Alphabet::new((0..n).map(|v| v.to_string()))?;
    let mut b = AutomatonBuilder::new(alphabet, Acceptance::buchi(n), k);
    for q in 0..k {
        for v in 0..n {
            let closed = g.closed_neighbourhood(v);
            let mut colours = ColourSet::from_iter((0..n).filter(|u| !closed.contains(u)));
            if q == colouring.0[v] {
                // Self-loop: a doubled letter, which also pays colour v.
                colours = colours.with(v);
            }
            b = b.transition(q, v, colouring.0[v], colours);
        }
    }
    b.build()
}

/// The reference automaton of the graph language: one state per vertex.
pub fn graph_language_reference(g: &Graph) -> Result<Automaton> {
    colouring_to_automaton(g, &Colouring::trivial(g))
}

fn pseudo_path_alphabet(g: &Graph) -> Result<(Alphabet, Vec<(usize, usize)>)> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let names = (0..g.vertices())
        .map(|v| v.to_string())
        .chain(edges.iter().map(|&(u, v)| format!("{u}-{v}")));
    Ok((Alphabet::new(names)?, edges))
}

/// The pseudo-path automaton: states are the vertices, the edges, and a
/// fresh initial state; the input alternates vertices and incident edges.
/// Reading vertex `v` emits every colour except `v`; reading an edge emits
/// every colour except its two endpoints. A word is accepted iff the
/// pseudo-path eventually stabilises around one vertex, stepping only on
/// its incident edges.
pub fn pseudo_path_automaton(g: &Graph, v_init: usize) -> Result<Automaton> {
    pseudo_path_checked(g, v_init, None)
}

/// The pseudo-path automaton recoloured through a proper colouring: colour
/// classes shrink from one per vertex to one per colour, preserving the
/// language exactly because each colour class is an independent set.
pub fn recolour_pseudo_path(g: &Graph, v_init: usize, colouring: &Colouring) -> Result<Automaton> {
    if !colouring.is_proper(g) {
        return Err(Error::Contract("the colouring is not proper".into()));
    }
    pseudo_path_checked(g, v_init, Some(colouring))
}

fn pseudo_path_checked(g: &Graph, v_init: usize, colouring: Option<&Colouring>) -> Result<Automaton> {
    if v_init >= g.vertices() {
        return Err(Error::Contract("initial vertex out of range".into()));
    }
    if !g.is_connected() {
        return Err(Error::Contract("the pseudo-path gadget needs a connected graph".into()));
    }
    if (0..g.vertices()).any(|v| g.degree(v) < 2) {
        return Err(Error::Contract(
            "the pseudo-path gadget needs minimum degree 2".into(),
        ));
    }
    let n = g.vertices();
    let (alphabet, edges) = pseudo_path_alphabet(g)?;
    let m = edges.len();
    let vertex_state = |v: usize| v;
    let edge_state = |e: usize| n + e;
    let init = n + m;

    let k = match colouring {
        Some(c) => c.colours(),
        None => n,
    };
    let paint = |v: usize| match colouring {
        Some(c) => c.0[v],
        None => v,
    };
    let all = ColourSet::all(k);
    let vertex_colours = |v: usize| all.without(paint(v));
    let edge_colours = |e: &(usize, usize)| all.without(paint(e.0)).without(paint(e.1));

    let mut b = AutomatonBuilder::new(alphabet, Acceptance::cobuchi(k), n + m + 1).initial(init);
    b = b.transition(init, v_init, vertex_state(v_init), vertex_colours(v_init));
    for (ei, e) in edges.iter().enumerate() {
        for v in [e.0, e.1] {
            // vertex --edge--> edge, then edge --vertex--> vertex
            b = b.transition(vertex_state(v), n + ei, edge_state(ei), edge_colours(e));
            b = b.transition(edge_state(ei), v, vertex_state(v), vertex_colours(v));
        }
    }
    b.build()
}
