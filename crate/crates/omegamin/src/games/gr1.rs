//! The three-nested fixpoint solver for GR(1) arenas, with strategy
//! extraction and exact strategy validation.

use super::arena::{GameArena, GameMove, Player, Strategy};
use crate::colours::ColourSet;
use crate::graph::{tarjan_sccs, BitSet};

/// Controllable predecessor: positions from which Eve can force the next
/// move to satisfy `good`.
fn cpre(arena: &GameArena, good: impl Fn(&GameMove) -> bool) -> BitSet {
    let mut out = BitSet::new(arena.positions());
    for p in 0..arena.positions() {
        let mut moves = arena.moves_from(p).map(|i| &arena.moves()[i]);
        let ok = match arena.owner(p) {
            Player::Eve => moves.any(|m| good(m)),
            Player::Adam => moves.all(|m| good(m)),
        };
        if ok {
            out.insert(p);
        }
    }
    out
}

/// One inner `νX` round: positions where Eve can force, forever, moves
/// that either emit guarantee `g` into `z`, or enter `y`, or avoid
/// assumption `i` while staying inside the fixpoint.
fn nu_x(arena: &GameArena, z: &BitSet, y: &BitSet, g: usize, avoid: usize) -> BitSet {
    let mut x = BitSet::full(arena.positions());
    loop {
        let next = cpre(arena, |m| {
            (m.conclusion.contains(g) && z.contains(m.to))
                || y.contains(m.to)
                || (!arena.premise_of(m).contains(avoid) && x.contains(m.to))
        });
        if next == x {
            return x;
        }
        x = next;
    }
}

/// `μY` for guarantee `g` with outer set `z`.
fn mu_y(arena: &GameArena, z: &BitSet, g: usize) -> BitSet {
    let ka = arena.norm_assumptions();
    let mut y = BitSet::new(arena.positions());
    loop {
        let mut next = y.clone();
        for i in 0..ka {
            next.union_with(&nu_x(arena, z, &y, g, i));
        }
        if next == y {
            return y;
        }
        y = next;
    }
}

/// Solves the arena's GR(1) objective exactly, returning Eve's winning
/// region and a finite-memory winning strategy on it (one memory state per
/// guarantee colour).
pub fn solve_gr1(arena: &GameArena) -> (BitSet, Strategy) {
    let kg = arena.objective().guarantees;
    let n = arena.positions();
    if kg == 0 {
        // The conclusion is vacuously true: Eve wins everywhere with any move.
        let mut choice = vec![usize::MAX; n];
        for p in 0..n {
            if arena.owner(p) == Player::Eve {
                choice[p] = arena.moves_from(p).next().unwrap();
            }
        }
        return (
            BitSet::full(n),
            Strategy {
                memories: 1,
                region: BitSet::full(n),
                choice,
                guarantees: 0,
            },
        );
    }

    let mut z = BitSet::full(n);
    loop {
        let mut next = BitSet::full(n);
        for g in 0..kg {
            next.intersect_with(&mu_y(arena, &z, g));
        }
        if next == z {
            break;
        }
        z = next;
    }

    // Strategy extraction: rebuild the μY stages for each guarantee with
    // the final Z and record, for Eve positions, the first move justifying
    // membership: a guarantee move into Z, a move into an earlier stage,
    // or the assumption-avoiding move inside the current νX.
    let ka = arena.norm_assumptions();
    let mut choice = vec![usize::MAX; n * kg];
    for g in 0..kg {
        let mut y = BitSet::new(n);
        loop {
            let mut grew = false;
            let snapshot = y.clone();
            for i in 0..ka {
                let x = nu_x(arena, &z, &snapshot, g, i);
                for p in x.iter() {
                    if y.contains(p) {
                        continue;
                    }
                    y.insert(p);
                    grew = true;
                    if arena.owner(p) != Player::Eve {
                        continue;
                    }
                    let mv = arena
                        .moves_from(p)
                        .find(|&mi| {
                            let m = &arena.moves()[mi];
                            m.conclusion.contains(g) && z.contains(m.to)
                        })
                        .or_else(|| {
                            arena.moves_from(p).find(|&mi| snapshot.contains(arena.moves()[mi].to))
                        })
                        .or_else(|| {
                            arena.moves_from(p).find(|&mi| {
                                let m = &arena.moves()[mi];
                                !arena.premise_of(m).contains(i) && x.contains(m.to)
                            })
                        })
                        .expect("νX membership provides a move");
                    choice[p * kg + g] = mv;
                }
            }
            if !grew {
                break;
            }
        }
    }

    let strategy = Strategy {
        memories: kg,
        region: z.clone(),
        choice,
        guarantees: kg,
    };
    (z, strategy)
}

/// Exact check that every play consistent with `strategy` from a winning
/// position satisfies the GR(1) objective. The strategy is folded into the
/// arena; a violating play exists iff, for some guarantee `g`, the
/// subgraph of moves not emitting `g` has a reachable cycle whose premises
/// cover every assumption. Returns a description of a violation if any.
pub fn strategy_violation(arena: &GameArena, strategy: &Strategy) -> Option<String> {
    let kg_mem = strategy.memories;
    let n = arena.positions();
    let node = |p: usize, mem: usize| p * kg_mem + mem;
    let mut edges: Vec<(usize, usize, ColourSet, ColourSet)> = Vec::new();
    let mut active = vec![false; n * kg_mem];
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for p in strategy.region().iter() {
        active[node(p, 0)] = true;
        queue.push((p, 0));
    }
    while let Some((p, mem)) = queue.pop() {
        let candidates: Vec<usize> = match arena.owner(p) {
            Player::Eve => match strategy.choose(p, mem) {
                Some(mv) => vec![mv],
                None => return Some(format!("no choice at winning Eve position {p}")),
            },
            Player::Adam => arena.moves_from(p).collect(),
        };
        for mi in candidates {
            let m = &arena.moves()[mi];
            if !strategy.region().contains(m.to) {
                return Some(format!("strategy play leaves the region at move {mi}"));
            }
            let mem2 = strategy.update(mem, m);
            edges.push((node(p, mem), node(m.to, mem2), arena.premise_of(m), m.conclusion));
            if !active[node(m.to, mem2)] {
                active[node(m.to, mem2)] = true;
                queue.push((m.to, mem2));
            }
        }
    }
    let ka = arena.norm_assumptions();
    let all_assumptions = ColourSet::all(ka);
    let kg = arena.objective().guarantees;
    for g in 0..kg {
        let mut adj = vec![Vec::new(); n * kg_mem];
        for &(from, to, _, concl) in &edges {
            if !concl.contains(g) {
                adj[from].push(to);
            }
        }
        let (comp_of, comps) = tarjan_sccs(&adj);
        for c in 0..comps.len() {
            let mut union = ColourSet::EMPTY;
            let mut has_edge = false;
            for &(from, to, prem, concl) in &edges {
                if !concl.contains(g) && comp_of[from] == c && comp_of[to] == c {
                    union = union.union(prem);
                    has_edge = true;
                }
            }
            if has_edge && all_assumptions.is_subset(union) {
                return Some(format!(
                    "guarantee {g} starves on a cycle covering all assumptions"
                ));
            }
        }
    }
    None
}
