//! The independent oracle for GR(1) arenas: round-robin counters turn the
//! implication objective into a three-priority parity game, solved by
//! Zielonka's recursive decomposition.
//!
//! One counter waits for the assumption colours in cyclic order; a full
//! wrap means every assumption was seen since the last wrap. The guarantee
//! counter does the same on the other side. A move is given priority 2
//! when the guarantee counter wraps, else 1 when the assumption counter
//! wraps, else 0 — so the maximal priority seen infinitely often is even
//! exactly when the GR(1) objective holds.

use super::arena::{GameArena, Player};
use crate::colours::ColourSet;
use crate::graph::BitSet;

/// A max-parity game with priorities on positions.
pub struct ParityGame {
    /// Owner per position.
    pub owners: Vec<Player>,
    /// Priority per position.
    pub priority: Vec<u8>,
    /// Successor lists.
    pub adj: Vec<Vec<usize>>,
}

/// Advances a round-robin counter through the colours of `set`, reporting
/// whether it wrapped past the last colour.
fn advance(mut counter: usize, set: ColourSet, k: usize) -> (usize, bool) {
    let mut wrapped = false;
    for _ in 0..k {
        if set.contains(counter) {
            counter += 1;
            if counter == k {
                counter = 0;
                wrapped = true;
            }
        } else {
            break;
        }
    }
    (counter, wrapped)
}

/// Eve's winning region of the GR(1) arena, computed through the counter
/// reduction and Zielonka's algorithm. Exact; used to cross-validate
/// [`super::solve_gr1`].
pub fn gr1_region_via_parity(arena: &GameArena) -> BitSet {
    let n = arena.positions();
    let kg = arena.objective().guarantees;
    if kg == 0 {
        return BitSet::full(n);
    }
    let ka = arena.norm_assumptions();
    let base = |p: usize, ca: usize, cg: usize| (p * ka + ca) * kg + cg;
    let base_count = n * ka * kg;
    let move_count = arena.moves().len() * ka * kg;

    let mut owners = Vec::with_capacity(base_count + move_count);
    let mut priority = vec![0u8; base_count + move_count];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); base_count + move_count];
    for p in 0..n {
        for _ in 0..ka * kg {
            owners.push(arena.owner(p));
        }
    }
    let mut next_move_node = base_count;
    for p in 0..n {
        for ca in 0..ka {
            for cg in 0..kg {
                let from = base(p, ca, cg);
                for mi in arena.moves_from(p) {
                    let m = &arena.moves()[mi];
                    let (ca2, wrap_a) = advance(ca, arena.premise_of(m), ka);
                    let (cg2, wrap_g) = advance(cg, m.conclusion, kg);
                    let node = next_move_node;
                    next_move_node += 1;
                    priority[node] = if wrap_g {
                        2
                    } else if wrap_a {
                        1
                    } else {
                        0
                    };
                    adj[from].push(node);
                    adj[node].push(base(m.to, ca2, cg2));
                }
            }
        }
    }
    owners.resize(base_count + move_count, Player::Eve);
    let game = ParityGame {
        owners,
        priority,
        adj,
    };
    let eve = zielonka_eve_region(&game);
    let mut out = BitSet::new(n);
    for p in 0..n {
        if eve.contains(base(p, 0, 0)) {
            out.insert(p);
        }
    }
    out
}

/// Attractor of `target` for `player` within `active`.
fn attractor(game: &ParityGame, player: Player, target: &BitSet, active: &BitSet) -> BitSet {
    let n = game.owners.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in active.iter() {
        for &w in &game.adj[v] {
            if active.contains(w) {
                preds[w].push(v);
            }
        }
    }
    // Count of active successors, for the opponent's forced condition.
    let mut succ_count = vec![0usize; n];
    for v in active.iter() {
        succ_count[v] = game.adj[v].iter().filter(|&&w| active.contains(w)).count();
    }
    let mut attr = BitSet::new(n);
    let mut queue: Vec<usize> = Vec::new();
    for v in target.iter() {
        if active.contains(v) {
            attr.insert(v);
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for &u in &preds[v] {
            if attr.contains(u) {
                continue;
            }
            let pulled = if game.owners[u] == player {
                true
            } else {
                succ_count[u] -= 1;
                succ_count[u] == 0
            };
            if pulled {
                attr.insert(u);
                queue.push(u);
            }
        }
    }
    attr
}

fn zielonka(game: &ParityGame, mut active: BitSet) -> (BitSet, BitSet) {
    let n = game.owners.len();
    let mut acc_eve = BitSet::new(n);
    let mut acc_adam = BitSet::new(n);
    loop {
        if active.is_empty() {
            return (acc_eve, acc_adam);
        }
        let d = active.iter().map(|v| game.priority[v]).max().unwrap();
        let player = if d % 2 == 0 { Player::Eve } else { Player::Adam };
        let mut top = BitSet::new(n);
        for v in active.iter() {
            if game.priority[v] == d {
                top.insert(v);
            }
        }
        let a = attractor(game, player, &top, &active);
        let mut rest = active.clone();
        rest.difference_with(&a);
        let (we, wa) = zielonka(game, rest);
        let opponent_part = match player {
            Player::Eve => &wa,
            Player::Adam => &we,
        };
        if opponent_part.is_empty() {
            match player {
                Player::Eve => acc_eve.union_with(&active),
                Player::Adam => acc_adam.union_with(&active),
            }
            return (acc_eve, acc_adam);
        }
        let b = attractor(game, player.other(), opponent_part, &active);
        match player {
            Player::Eve => acc_adam.union_with(&b),
            Player::Adam => acc_eve.union_with(&b),
        }
        active.difference_with(&b);
    }
}

/// Eve's winning region in a max-parity game (Eve wins a play iff the
/// maximal priority occurring infinitely often is even).
pub fn zielonka_eve_region(game: &ParityGame) -> BitSet {
    let n = game.owners.len();
    for v in 0..n {
        debug_assert!(!game.adj[v].is_empty(), "parity games must be total");
    }
    zielonka(game, BitSet::full(n)).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_advance_wraps_once_even_on_full_sets() {
        assert_eq!(advance(0, ColourSet::all(3), 3), (0, true));
        assert_eq!(advance(1, ColourSet::all(3), 3), (1, true));
        assert_eq!(advance(0, ColourSet::singleton(0), 2), (1, false));
        assert_eq!(advance(1, ColourSet::singleton(1), 2), (0, true));
        assert_eq!(advance(0, ColourSet::singleton(1), 2), (0, false));
    }

    #[test]
    fn single_even_loop_is_won_by_eve() {
        let game = ParityGame {
            owners: vec![Player::Adam],
            priority: vec![2],
            adj: vec![vec![0]],
        };
        assert_eq!(zielonka_eve_region(&game).count(), 1);
    }

    #[test]
    fn zielonka_on_a_choice_between_parities() {
        // Adam picks between an odd loop and an even loop: he prefers odd.
        let game = ParityGame {
            owners: vec![Player::Adam, Player::Eve, Player::Eve],
            priority: vec![0, 1, 2],
            adj: vec![vec![1, 2], vec![1], vec![2]],
        };
        let eve = zielonka_eve_region(&game);
        assert!(!eve.contains(0));
        assert!(!eve.contains(1));
        assert!(eve.contains(2));
    }
}
