//! Graph-colouring gadget automata and the exhaustive exact minimiser used
//! as a cross-checking oracle for the minimisation pipelines.

mod exactmin;
mod expfamily;
mod gadgets;
mod graph;

pub use exactmin::{exact_minimise, ExactMinMode, ExactMinOutcome, ExactMinQuery};
pub use expfamily::{exact_colour_min_one_state, exp_family, one_state_cnf_automaton};
pub use gadgets::{
    colouring_to_automaton, graph_language_reference, pseudo_path_automaton,
    recolour_pseudo_path,
};
pub use graph::{
    graph_colouring, moser_spindle, triangle_full_transform, Colouring, Graph,
};
