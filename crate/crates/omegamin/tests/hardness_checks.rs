//! Gadget correspondences and exact-minimiser properties at desk scale.

use omegamin::hardness::{
    colouring_to_automaton, exact_minimise, graph_colouring, graph_language_reference,
    pseudo_path_automaton, recolour_pseudo_path, Colouring, ExactMinMode, ExactMinOutcome,
    ExactMinQuery, Graph,
};
use omegamin::language::det_equivalent;

fn k3() -> Graph {
    Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
}

#[test]
fn every_proper_colouring_gives_an_equivalent_automaton() {
    let graphs = [
        k3(),
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap(),
        Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
        Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap(),
    ];
    for g in &graphs {
        let reference = graph_language_reference(g).unwrap();
        // Exhaustively enumerate proper colourings with up to |V| colours
        // for small graphs, and check equivalence for each.
        let n = g.vertices();
        if n <= 5 {
            let k = n;
            let mut checked = 0;
            for code in 0..k.pow(n as u32) {
                let mut c = Vec::with_capacity(n);
                let mut x = code;
                for _ in 0..n {
                    c.push(x % k);
                    x /= k;
                }
                let col = Colouring(c);
                if col.is_proper(g) {
                    let aut = colouring_to_automaton(g, &col).unwrap();
                    assert!(det_equivalent(&aut, &reference).unwrap());
                    checked += 1;
                }
            }
            assert!(checked > 0);
        } else {
            for k in 1..=n {
                if let Some(col) = graph_colouring(g, k) {
                    let aut = colouring_to_automaton(g, &col).unwrap();
                    assert!(det_equivalent(&aut, &reference).unwrap());
                }
            }
        }
    }
}

#[test]
fn exact_minimise_is_monotone_in_states_and_colours() {
    let reference = graph_language_reference(&k3()).unwrap();
    let mut last = false;
    for n in 1..=3 {
        let feasible = matches!(
            exact_minimise(&reference, &ExactMinQuery::new(n, 3, ExactMinMode::Det)).unwrap(),
            ExactMinOutcome::Found(_)
        );
        assert!(!last || feasible, "feasibility must be monotone in states");
        last = feasible;
    }
    assert!(last);
    let mut last = false;
    for k in 1..=4 {
        let feasible = matches!(
            exact_minimise(&reference, &ExactMinQuery::new(3, k, ExactMinMode::Det)).unwrap(),
            ExactMinOutcome::Found(_)
        );
        assert!(!last || feasible, "feasibility must be monotone in colours");
        last = feasible;
    }
}

#[test]
fn pseudo_path_recolourings_track_the_chromatic_number() {
    // K3 and the 4-cycle-with-chords shape both have minimum degree 2.
    let graphs = [k3(), Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()];
    for g in &graphs {
        let reference = pseudo_path_automaton(g, 0).unwrap();
        let chi = (1..=g.vertices())
            .find(|&k| graph_colouring(g, k).is_some())
            .unwrap();
        for k in 1..=g.vertices() {
            match graph_colouring(g, k) {
                Some(col) => {
                    assert!(k >= chi);
                    let recoloured = recolour_pseudo_path(g, 0, &col).unwrap();
                    assert!(det_equivalent(&reference, &recoloured).unwrap());
                }
                None => assert!(k < chi),
            }
        }
        // Below the chromatic number, no recolouring survives: exhaust all
        // assignments of k colours to vertices for tiny graphs.
        if g.vertices() <= 4 && chi > 1 {
            let k = chi - 1;
            let n = g.vertices();
            for code in 0..k.pow(n as u32) {
                let mut c = Vec::with_capacity(n);
                let mut x = code;
                for _ in 0..n {
                    c.push(x % k);
                    x /= k;
                }
                let col = Colouring(c);
                if col.is_proper(g) {
                    panic!("a proper colouring below the chromatic number");
                }
                // Improper colourings are rejected by the constructor.
                assert!(recolour_pseudo_path(g, 0, &col).is_err());
            }
        }
    }
}
