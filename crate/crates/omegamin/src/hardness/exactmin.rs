//! Exhaustive exact minimisation, used as the brute-force oracle.
//!
//! Deterministic mode enumerates complete deterministic transition
//! structures in BFS-canonical order (state `j+1` may only appear after
//! state `j`, which prunes isomorphic candidates) and decides per
//! structure whether *some* colouring makes it equivalent to the
//! reference. That question decomposes over the product with the
//! reference: the maximal strongly connected subgraphs avoiding one
//! reference colour must each be matched by a candidate colour whose edge
//! set misses them, while every colour must intersect every
//! all-colours-recurring subgraph. Grouping the former into at most
//! `max_colours` blocking classes is a small exact cover search.
//!
//! History-deterministic mode enumerates arbitrary transition structures
//! with per-edge colour sets, pruned by a sound language sandwich
//! (under-approximation from the decided cells, over-approximation by
//! filling the undecided ones) against a battery of reference lassos;
//! survivors are checked exactly with the two-token game and containment
//! games. Searches account every node against an explicit budget and
//! never truncate silently.

use crate::automaton::{Automaton, AutomatonBuilder};
use crate::colours::{Acceptance, AcceptanceFamily, ColourSet};
use crate::games::{contains_hd, is_history_deterministic};
use crate::graph::tarjan_sccs;
use crate::language::det_equivalent;
use crate::lasso::{lasso_accepts, Lasso};
use crate::residual::residual_partition;
use crate::transforms::{breakpoint_determinise, degeneralise};
use crate::{Error, Result};

/// Candidate class searched over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExactMinMode {
    /// Deterministic complete candidates, equivalence by difference
    /// products.
    Det,
    /// Arbitrary candidates filtered by history-determinism, equivalence
    /// by containment games.
    Hd,
}

/// A minimisation query.
#[derive(Clone, Copy, Debug)]
pub struct ExactMinQuery {
    /// Maximum number of candidate states.
    pub max_states: usize,
    /// Maximum number of candidate colours.
    pub max_colours: usize,
    /// Search mode.
    pub mode: ExactMinMode,
    /// Node budget; exceeding it aborts with an explicit error.
    pub budget: u64,
}

impl ExactMinQuery {
    /// Query with the default budget.
    pub fn new(max_states: usize, max_colours: usize, mode: ExactMinMode) -> Self {
        ExactMinQuery {
            max_states,
            max_colours,
            mode,
            budget: 50_000_000,
        }
    }
}

/// Search result.
pub enum ExactMinOutcome {
    /// The first equivalent candidate in canonical enumeration order.
    Found(Automaton),
    /// The search space was exhausted without an equivalent candidate.
    Infeasible,
}

/// Runs the query against the reference automaton.
pub fn exact_minimise(reference: &Automaton, query: &ExactMinQuery) -> Result<ExactMinOutcome> {
    if query.max_states == 0 {
        return Err(Error::Contract("the candidate budget needs at least one state".into()));
    }
    match query.mode {
        ExactMinMode::Det => det_search(reference, query),
        ExactMinMode::Hd => hd_search(reference, query),
    }
}

fn deterministic_reference(reference: &Automaton) -> Result<Automaton> {
    if reference.is_deterministic() {
        return Ok(reference.complete().trim());
    }
    if reference.acceptance().family != AcceptanceFamily::GeneralisedCoBuchi {
        return Err(Error::Contract(
            "deterministic-mode search needs a deterministic reference (nondeterministic generalised Büchi cannot be determinised here)".into(),
        ));
    }
    // Nondeterministic coBüchi: determinise, then restore the family's
    // colour granularity is unnecessary — language is all that matters.
    Ok(breakpoint_determinise(&degeneralise(reference)?)?.trim())
}

/// The transition-less single-state automaton recognising the empty
/// language with zero colours.
fn empty_language_candidate(reference: &Automaton) -> Automaton {
    AutomatonBuilder::new(
        reference.alphabet().clone(),
        Acceptance {
            family: reference.acceptance().family,
            colours: 0,
        },
        1,
    )
    .build()
    .expect("one bare state is a valid automaton")
}

// ---------------------------------------------------------------------
// Deterministic mode
// ---------------------------------------------------------------------

struct DetSearch {
    reference: Automaton,
    sigma: usize,
    family: AcceptanceFamily,
    max_colours: usize,
    budget: u64,
    explored: u64,
    alphabet: crate::Alphabet,
    // Letter-major cell ordering: constant-column structures (all states
    // agreeing on a letter) come lexicographically early, which is where
    // colouring-induced witnesses live.
    cell_order: Vec<usize>,
    decided_mask: u64,
}

fn det_search(raw_reference: &Automaton, query: &ExactMinQuery) -> Result<ExactMinOutcome> {
    let reference = deterministic_reference(raw_reference)?;
    if crate::emptiness::is_empty(&reference) {
        return Ok(ExactMinOutcome::Found(empty_language_candidate(raw_reference)));
    }
    let sigma = reference.alphabet().len();
    let mut search = DetSearch {
        sigma,
        // Candidates share the *raw* reference's family.
        family: raw_reference.acceptance().family,
        max_colours: query.max_colours,
        budget: query.budget,
        explored: 0,
        alphabet: reference.alphabet().clone(),
        reference,
        cell_order: Vec::new(),
        decided_mask: 0,
    };
    for n in 1..=query.max_states {
        if n * sigma > 64 {
            return Err(Error::Contract(
                "deterministic search supports at most 64 candidate transitions".into(),
            ));
        }
        search.cell_order = (0..n * sigma)
            .map(|i| (i % n) * sigma + i / n)
            .collect();
        search.decided_mask = 0;
        let mut targets = vec![0usize; n * sigma];
        if let Some(found) = search.enumerate_structures(&mut targets, 0, 0, n)? {
            return Ok(ExactMinOutcome::Found(found));
        }
    }
    Ok(ExactMinOutcome::Infeasible)
}

impl DetSearch {
    /// Lexicographic enumeration of complete deterministic structures in
    /// BFS-canonical form, pruning partial structures whose decided cells
    /// already force a colouring contradiction.
    fn enumerate_structures(
        &mut self,
        targets: &mut Vec<usize>,
        cell: usize,
        max_used: usize,
        n: usize,
    ) -> Result<Option<Automaton>> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::BudgetExceeded {
                explored: self.explored,
                budget: self.budget,
            });
        }
        if cell == targets.len() {
            if max_used + 1 != n {
                return Ok(None); // smaller state count already covered
            }
            return self.colour_structure(targets, n);
        }
        let limit = (max_used + 1).min(n - 1);
        let this_cell = self.cell_order[cell];
        for t in 0..=limit {
            targets[this_cell] = t;
            let decided = self.decided_mask | (1 << this_cell);
            // The contradiction test pays off at column boundaries, where
            // a whole letter has just been fixed.
            if (cell + 1) % n == 0
                && n * self.reference.states() <= 64
                && self.partial_contradiction(targets, decided, n)
            {
                continue;
            }
            let saved = self.decided_mask;
            self.decided_mask = decided;
            let found = self.enumerate_structures(targets, cell + 1, max_used.max(t), n)?;
            self.decided_mask = saved;
            if let Some(found) = found {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// Sound pruning test on a partial structure: a cycle through decided
    /// cells that both avoids some reference colour and covers every
    /// reference colour demands a candidate colour that is simultaneously
    /// disjoint from and incident to its own cells, so no completion can
    /// be coloured into equivalence.
    fn partial_contradiction(&self, targets: &[usize], decided: u64, n: usize) -> bool {
        let reference = &self.reference;
        let sigma = self.sigma;
        let nr = reference.states();
        let nodes = n * nr;
        let kr = reference.acceptance().colours;
        let node = |q: usize, r: usize| q * nr + r;
        // Reachability through decided cells only; completions only add.
        let mut seen = 1u64 << node(0, reference.initial());
        loop {
            let mut next = seen;
            let mut rest = seen;
            while rest != 0 {
                let f = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let (q, r) = (f / nr, f % nr);
                for a in 0..sigma {
                    if decided & (1 << (q * sigma + a)) != 0 {
                        let tr = reference.on(r, a)[0];
                        next |= 1 << node(targets[q * sigma + a], tr.dst);
                    }
                }
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        let all_ref = ColourSet::all(kr);
        // Closure over the decided graph, optionally dropping edges that
        // carry one reference colour; then SCC cell projections.
        let scc_cells = |avoid: Option<usize>| -> Vec<(u64, ColourSet)> {
            let mut reach = [0u64; 64];
            for f in 0..nodes {
                if seen & (1 << f) == 0 {
                    continue;
                }
                let (q, r) = (f / nr, f % nr);
                let mut mask = 0u64;
                for a in 0..sigma {
                    if decided & (1 << (q * sigma + a)) == 0 {
                        continue;
                    }
                    let tr = reference.on(r, a)[0];
                    if avoid.is_none_or(|v| !tr.colours.contains(v)) {
                        mask |= 1 << node(targets[q * sigma + a], tr.dst);
                    }
                }
                reach[f] = mask;
            }
            loop {
                let mut changed = false;
                for f in 0..nodes {
                    let mut add = reach[f];
                    let mut rest = reach[f];
                    while rest != 0 {
                        let w = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        add |= reach[w];
                    }
                    if add != reach[f] {
                        reach[f] = add;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            let mut out = Vec::new();
            for f in 0..nodes {
                if seen & (1 << f) == 0 || reach[f] & (1 << f) == 0 {
                    continue;
                }
                let members = (reach[f] & reach_back(&reach, f)) | (1 << f);
                if members.trailing_zeros() as usize != f {
                    continue; // one visit per component
                }
                let mut cells = 0u64;
                let mut cover = ColourSet::EMPTY;
                let mut rest = members;
                while rest != 0 {
                    let g = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let (q, r) = (g / nr, g % nr);
                    for a in 0..sigma {
                        if decided & (1 << (q * sigma + a)) == 0 {
                            continue;
                        }
                        let tr = reference.on(r, a)[0];
                        if avoid.is_none_or(|v| !tr.colours.contains(v))
                            && members & (1 << node(targets[q * sigma + a], tr.dst)) != 0
                        {
                            cells |= 1 << (q * sigma + a);
                            cover = cover.union(tr.colours);
                        }
                    }
                }
                out.push((cells, cover));
            }
            out
        };
        // Accepting behaviours: components of the full decided graph whose
        // internal edges cover every reference colour.
        let covering: Vec<u64> = scc_cells(None)
            .into_iter()
            .filter(|&(_, cover)| all_ref.is_subset(cover))
            .map(|(cells, _)| cells)
            .collect();
        if covering.is_empty() {
            return false;
        }
        for v in 0..kr {
            for (avoid_cells, _) in scc_cells(Some(v)) {
                if covering.iter().any(|&a| a & !avoid_cells == 0) {
                    return true;
                }
            }
        }
        false
    }

    /// Decides whether some colouring with at most `max_colours` colours
    /// makes the structure equivalent to the reference, returning the
    /// finished automaton if so. Dispatches to a packed-bitmask
    /// implementation when the product fits in a word.
    fn colour_structure(&mut self, targets: &[usize], n: usize) -> Result<Option<Automaton>> {
        if n * self.reference.states() <= 64 {
            return self.colour_structure_fast(targets, n);
        }
        self.colour_structure_general(targets, n)
    }

    /// Packed analysis: product nodes, candidate cells and avoid-sets all
    /// live in single words, and strongly connected components come from a
    /// reach-both-ways closure instead of a full Tarjan pass.
    fn colour_structure_fast(&mut self, targets: &[usize], n: usize) -> Result<Option<Automaton>> {
        let reference = &self.reference;
        let sigma = self.sigma;
        let nr = reference.states();
        let nodes = n * nr;
        let kr = reference.acceptance().colours;

        // Successors of each product node, overall and per avoided colour.
        let mut succ = [0u64; 64];
        let node = |q: usize, r: usize| q * nr + r;
        for q in 0..n {
            for r in 0..nr {
                let mut mask = 0u64;
                for a in 0..sigma {
                    let tr = reference.on(r, a)[0];
                    mask |= 1 << node(targets[q * sigma + a], tr.dst);
                }
                succ[node(q, r)] = mask;
            }
        }
        let start = node(0, reference.initial());
        let mut seen = 1u64 << start;
        loop {
            let mut next = seen;
            let mut rest = seen;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= succ[v];
            }
            if next == seen {
                break;
            }
            seen = next;
        }

        // Forward closure over a filtered edge set; `allowed(f, a)` guards
        // individual product edges.
        let closure = |allowed: &dyn Fn(usize, usize) -> bool| -> [u64; 64] {
            let mut reach = [0u64; 64];
            for f in 0..nodes {
                if seen & (1 << f) == 0 {
                    continue;
                }
                let (q, r) = (f / nr, f % nr);
                let mut mask = 0u64;
                for a in 0..sigma {
                    if allowed(f, a) {
                        let tr = reference.on(r, a)[0];
                        mask |= 1 << node(targets[q * sigma + a], tr.dst);
                    }
                }
                reach[f] = mask;
            }
            loop {
                let mut changed = false;
                for f in 0..nodes {
                    let mut add = reach[f];
                    let mut rest = reach[f];
                    while rest != 0 {
                        let v = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        add |= reach[v];
                    }
                    if add != reach[f] {
                        reach[f] = add;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            reach
        };

        // Maximal avoid-some-reference-colour behaviours, projected onto
        // candidate cells.
        let mut avoid_sets: Vec<u64> = Vec::new();
        for v in 0..kr {
            let allowed = |f: usize, a: usize| -> bool {
                let r = f % nr;
                !reference.on(r, a)[0].colours.contains(v)
            };
            let reach = closure(&allowed);
            // An edge is internal to an SCC iff its endpoints reach each
            // other; collect per-SCC cell projections keyed by the
            // component's bitmask.
            let mut comps: Vec<(u64, u64)> = Vec::new(); // (member mask, cells)
            for f in 0..nodes {
                if seen & (1 << f) == 0 {
                    continue;
                }
                let (q, r) = (f / nr, f % nr);
                for a in 0..sigma {
                    if !allowed(f, a) {
                        continue;
                    }
                    let tr = reference.on(r, a)[0];
                    let t = node(targets[q * sigma + a], tr.dst);
                    // Edge f→t internal: t reaches f (f reaches t by the edge).
                    if reach[t] & (1 << f) != 0 || t == f {
                        let members = (reach[f] & reach_back(&reach, f)) | (1 << f);
                        let cell = q * sigma + a;
                        match comps.iter_mut().find(|(m, _)| *m == members) {
                            Some((_, cells)) => *cells |= 1 << cell,
                            None => comps.push((members, 1 << cell)),
                        }
                    }
                }
            }
            for (_, cells) in comps {
                avoid_sets.push(cells);
            }
        }
        avoid_sets.sort_unstable();
        avoid_sets.dedup();
        let maximal: Vec<u64> = avoid_sets
            .iter()
            .copied()
            .filter(|&s| !avoid_sets.iter().any(|&t| t != s && s & !t == 0))
            .collect();

        let all_ref = ColourSet::all(kr);
        let blocking = |union: u64| -> bool {
            let allowed = |f: usize, a: usize| -> bool {
                let q = f / nr;
                union & (1 << (q * sigma + a)) != 0
            };
            let reach = closure(&allowed);
            for f in 0..nodes {
                if seen & (1 << f) == 0 {
                    continue;
                }
                // Colour union over the SCC of f in the restricted graph.
                if reach[f] & (1 << f) == 0 {
                    continue; // f lies on no restricted cycle
                }
                let members = reach[f] & reach_back(&reach, f) | (1 << f);
                let mut cover = ColourSet::EMPTY;
                let mut rest = members;
                while rest != 0 {
                    let g = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let (q, r) = (g / nr, g % nr);
                    for a in 0..sigma {
                        if !allowed(g, a) {
                            continue;
                        }
                        let tr = reference.on(r, a)[0];
                        if members & (1 << node(targets[q * sigma + a], tr.dst)) != 0 {
                            cover = cover.union(tr.colours);
                        }
                    }
                }
                if all_ref.is_subset(cover) {
                    return false;
                }
            }
            true
        };

        if maximal.len() > 64 {
            return Err(Error::BudgetExceeded {
                explored: self.explored,
                budget: self.budget,
            });
        }
        let mut groups: Vec<u64> = Vec::new();
        if !assign_groups(&maximal, 0, &mut groups, self.max_colours, &blocking) {
            return Ok(None);
        }
        Ok(Some(self.finish_candidate(targets, n, &groups)?))
    }

    fn finish_candidate(&self, targets: &[usize], n: usize, groups: &[u64]) -> Result<Automaton> {
        let sigma = self.sigma;
        let all_cells = if n * sigma == 64 {
            u64::MAX
        } else {
            (1u64 << (n * sigma)) - 1
        };
        let k = groups.len();
        let mut b = AutomatonBuilder::new(
            self.alphabet.clone(),
            Acceptance {
                family: self.family,
                colours: k,
            },
            n,
        );
        for q in 0..n {
            for a in 0..sigma {
                let cell = q * sigma + a;
                let colours = ColourSet::from_iter(
                    (0..k).filter(|&c| (all_cells & !groups[c]) & (1 << cell) != 0),
                );
                b = b.transition(q, a, targets[cell], colours);
            }
        }
        let candidate = b.build()?;
        // The analysis is exact, but re-verify against the reference so a
        // bug can never produce a wrong witness silently.
        if !det_equivalent(&candidate, &self.reference)? {
            return Err(Error::Contract(
                "internal error: colour analysis disagreed with the difference product".into(),
            ));
        }
        Ok(candidate)
    }

    fn colour_structure_general(&mut self, targets: &[usize], n: usize) -> Result<Option<Automaton>> {
        let reference = &self.reference;
        let sigma = self.sigma;
        let nr = reference.states();
        let nodes = n * nr;
        // Product of the candidate structure with the reference.
        let mut edges: Vec<(usize, usize, usize, ColourSet)> = Vec::new(); // from, to, cell, ref colours
        for q in 0..n {
            for r in 0..nr {
                for a in 0..sigma {
                    let cand_to = targets[q * sigma + a];
                    let tr = reference.on(r, a)[0];
                    edges.push((q * nr + r, cand_to * nr + tr.dst, q * sigma + a, tr.colours));
                }
            }
        }
        let mut adj = vec![Vec::new(); nodes];
        for &(f, t, _, _) in &edges {
            adj[f].push(t);
        }
        let seen = crate::graph::reachable(&adj, reference.initial());
        // (i) family of maximal avoid-some-reference-colour edge sets,
        // projected onto candidate cells.
        let kr = reference.acceptance().colours;
        let mut avoid_sets: Vec<u64> = Vec::new();
        for v in 0..kr {
            let mut sub = vec![Vec::new(); nodes];
            for &(f, t, _, cols) in &edges {
                if seen.contains(f) && !cols.contains(v) {
                    sub[f].push(t);
                }
            }
            let (comp_of, comps) = tarjan_sccs(&sub);
            let mut proj = vec![0u64; comps.len()];
            let mut has_edge = vec![false; comps.len()];
            for &(f, t, cell, cols) in &edges {
                if seen.contains(f) && !cols.contains(v) && comp_of[f] == comp_of[t] {
                    proj[comp_of[f]] |= 1 << cell;
                    has_edge[comp_of[f]] = true;
                }
            }
            for c in 0..comps.len() {
                if has_edge[c] {
                    avoid_sets.push(proj[c]);
                }
            }
        }
        avoid_sets.sort_unstable();
        avoid_sets.dedup();
        // Keep only the ⊆-maximal sets.
        let maximal: Vec<u64> = avoid_sets
            .iter()
            .copied()
            .filter(|&s| !avoid_sets.iter().any(|&t| t != s && s & !t == 0))
            .collect();

        // In Büchi references the avoid-sets are the rejecting behaviours
        // the candidate must also reject; in coBüchi references they are
        // the accepting behaviours the candidate must accept. Either way
        // each needs a candidate colour disjoint from it, and every colour
        // must intersect all behaviours of the opposite kind, which holds
        // exactly when the restriction of the product to the set misses
        // some "all reference colours" component.
        let blocking = |union: u64| -> bool {
            let mut sub = vec![Vec::new(); nodes];
            for &(f, t, cell, _) in &edges {
                if seen.contains(f) && union & (1 << cell) != 0 {
                    sub[f].push(t);
                }
            }
            let (comp_of, comps) = tarjan_sccs(&sub);
            for c in 0..comps.len() {
                let mut cover = ColourSet::EMPTY;
                let mut has_edge = false;
                for &(f, t, cell, cols) in &edges {
                    if seen.contains(f)
                        && union & (1 << cell) != 0
                        && comp_of[f] == c
                        && comp_of[t] == c
                    {
                        cover = cover.union(cols);
                        has_edge = true;
                    }
                }
                if has_edge && ColourSet::all(kr).is_subset(cover) {
                    return false;
                }
            }
            true
        };

        // Group the maximal sets into ≤ max_colours blocking unions.
        if maximal.len() > 64 {
            return Err(Error::BudgetExceeded {
                explored: self.explored,
                budget: self.budget,
            });
        }
        let mut groups: Vec<u64> = Vec::new();
        if !assign_groups(&maximal, 0, &mut groups, self.max_colours, &blocking) {
            return Ok(None);
        }
        let all_cells = if n * sigma == 64 {
            u64::MAX
        } else {
            (1u64 << (n * sigma)) - 1
        };
        let k = groups.len();
        let mut b = AutomatonBuilder::new(
            self.alphabet.clone(),
            Acceptance {
                family: self.family,
                colours: k,
            },
            n,
        );
        for q in 0..n {
            for a in 0..sigma {
                let cell = q * sigma + a;
                let colours = ColourSet::from_iter(
                    (0..k).filter(|&c| (all_cells & !groups[c]) & (1 << cell) != 0),
                );
                b = b.transition(q, a, targets[cell], colours);
            }
        }
        let candidate = b.build()?;
        // The analysis is exact, but re-verify against the reference so a
        // bug can never produce a wrong witness silently.
        if !det_equivalent(&candidate, &self.reference)? {
            return Err(Error::Contract(
                "internal error: colour analysis disagreed with the difference product".into(),
            ));
        }
        Ok(Some(candidate))
    }
}

/// Bitmask of the product nodes `(q, pos)` over all states at one position.
fn full_mask_of(n: usize, pos: usize, period: usize) -> u64 {
    let mut m = 0u64;
    for q in 0..n {
        m |= 1 << (q * period + pos);
    }
    m
}

/// Nodes that reach `f` according to a forward closure.
fn reach_back(reach: &[u64; 64], f: usize) -> u64 {
    let mut mask = 0u64;
    for (v, &r) in reach.iter().enumerate() {
        if r & (1 << f) != 0 {
            mask |= 1 << v;
        }
    }
    mask
}

/// Backtracking partition of the avoid-sets into at most `limit` groups
/// whose complements block acceptance.
fn assign_groups(
    sets: &[u64],
    index: usize,
    groups: &mut Vec<u64>,
    limit: usize,
    blocking: &impl Fn(u64) -> bool,
) -> bool {
    if index == sets.len() {
        return true;
    }
    let s = sets[index];
    for g in 0..groups.len() {
        let merged = groups[g] | s;
        if blocking(merged) {
            let saved = groups[g];
            groups[g] = merged;
            if assign_groups(sets, index + 1, groups, limit, blocking) {
                return true;
            }
            groups[g] = saved;
        }
    }
    if groups.len() < limit && blocking(s) {
        groups.push(s);
        if assign_groups(sets, index + 1, groups, limit, blocking) {
            return true;
        }
        groups.pop();
    }
    false
}

// ---------------------------------------------------------------------
// History-deterministic mode
// ---------------------------------------------------------------------

/// Exhaustive single-colour coBüchi search through safe skeletons.
///
/// Every history-deterministic coBüchi automaton has an equivalent nice
/// one that is no larger: semantically deterministic (states recognise
/// residuals) and safe-deterministic (the uncoloured subgraph is a
/// function). Fixing a safe skeleton and a residual label per state, the
/// candidate with *all* residual-consistent coloured transitions accepts
/// at least as much as any candidate below it and still at most the
/// reference language whenever one of them fits, and inherits any of
/// their resolvers. Enumerating (skeleton, labelling) pairs and testing
/// the maximal completion is therefore decision-complete, and shrinks the
/// space from per-edge colour choices to one function per letter.
fn hd_search_cobuchi1(reference: &Automaton, query: &ExactMinQuery) -> Result<ExactMinOutcome> {
    if crate::emptiness::is_empty(reference) {
        return Ok(ExactMinOutcome::Found(empty_language_candidate(reference)));
    }
    let sigma = reference.alphabet().len();
    let det = breakpoint_determinise(&degeneralise(reference)?)?.trim();
    let partition = residual_partition(&det)?;
    let dead = crate::residual::dead_states(&det);
    // Live residual classes and their letter derivatives.
    let mut class_alive = vec![false; partition.classes];
    let mut class_rep = vec![usize::MAX; partition.classes];
    for q in 0..det.states() {
        if !dead[q] {
            class_alive[partition.class_of[q]] = true;
            if class_rep[partition.class_of[q]] == usize::MAX {
                class_rep[partition.class_of[q]] = q;
            }
        }
    }
    let live_classes: Vec<usize> = (0..partition.classes).filter(|&c| class_alive[c]).collect();
    let derivative: Vec<Vec<Option<usize>>> = (0..partition.classes)
        .map(|c| {
            (0..sigma)
                .map(|a| {
                    if !class_alive[c] {
                        return None;
                    }
                    let t = det.on(class_rep[c], a)[0];
                    (!dead[t.dst]).then(|| partition.class_of[t.dst])
                })
                .collect()
        })
        .collect();
    let initial_class = partition.class_of[det.initial()];

    let mut battery: Vec<(Lasso, bool)> = Vec::new();
    for lasso in crate::random::all_lassos(sigma, 1, 3) {
        let member = lasso_accepts(reference, &lasso)?;
        battery.push((lasso, member));
    }

    let mut explored: u64 = 0;
    for n in live_classes.len().max(1)..=query.max_states {
        // Skeleton: per cell, an optional safe successor.
        let cells = n * sigma;
        let mut skeleton: Vec<Option<usize>> = vec![None; cells];
        // Labelling: residual class per state, initial state fixed.
        let mut labels = vec![usize::MAX; n];
        labels[0] = initial_class;

        // Depth-first over labellings (outer) and skeleton cells (inner);
        // enumerate labellings lexicographically over live classes.
        fn assign_labels(
            pos: usize,
            labels: &mut Vec<usize>,
            live: &[usize],
            out: &mut Vec<Vec<usize>>,
        ) {
            if pos == labels.len() {
                out.push(labels.clone());
                return;
            }
            for &c in live {
                labels[pos] = c;
                assign_labels(pos + 1, labels, live, out);
            }
        }
        let mut labellings = Vec::new();
        assign_labels(1, &mut labels, &live_classes, &mut labellings);

        for labels in &labellings {
            // Enumerate skeletons consistent with the labelling.
            let options_per_cell: Vec<Vec<Option<usize>>> = (0..cells)
                .map(|cell| {
                    let (q, a) = (cell / sigma, cell % sigma);
                    let mut opts: Vec<Option<usize>> = vec![None];
                    if let Some(target_class) = derivative[labels[q]][a] {
                        for t in 0..n {
                            if labels[t] == target_class {
                                opts.push(Some(t));
                            }
                        }
                    }
                    opts
                })
                .collect();
            let mut stack: Vec<usize> = vec![0];
            'skeleton: loop {
                let depth = stack.len() - 1;
                let choice = *stack.last().unwrap();
                if choice >= options_per_cell[depth].len() {
                    stack.pop();
                    match stack.last_mut() {
                        Some(top) => {
                            *top += 1;
                            continue 'skeleton;
                        }
                        None => break 'skeleton,
                    }
                }
                skeleton[depth] = options_per_cell[depth][choice];
                if depth + 1 < cells {
                    stack.push(0);
                    continue 'skeleton;
                }
                // Full skeleton assigned: test the maximal completion.
                explored += 1;
                if explored > query.budget {
                    return Err(Error::BudgetExceeded {
                        explored,
                        budget: query.budget,
                    });
                }
                if let Some(found) = finish_skeleton(
                    reference,
                    &battery,
                    &derivative,
                    labels,
                    &skeleton,
                    n,
                    sigma,
                )? {
                    return Ok(ExactMinOutcome::Found(found));
                }
                *stack.last_mut().unwrap() += 1;
            }
        }
    }
    Ok(ExactMinOutcome::Infeasible)
}

/// Builds the maximal residual-consistent completion of a skeleton and
/// runs the exact checks on it.
fn finish_skeleton(
    reference: &Automaton,
    battery: &[(Lasso, bool)],
    derivative: &[Vec<Option<usize>>],
    labels: &[usize],
    skeleton: &[Option<usize>],
    n: usize,
    sigma: usize,
) -> Result<Option<Automaton>> {
    let mut b = AutomatonBuilder::new(reference.alphabet().clone(), Acceptance::cobuchi(1), n);
    for q in 0..n {
        for a in 0..sigma {
            let safe = skeleton[q * sigma + a];
            if let Some(t) = safe {
                b = b.transition(q, a, t, ColourSet::EMPTY);
            }
            if let Some(target_class) = derivative[labels[q]][a] {
                for t in 0..n {
                    if labels[t] == target_class && safe != Some(t) {
                        b = b.transition(q, a, t, ColourSet::singleton(0));
                    }
                }
            }
        }
    }
    let candidate = b.build()?;
    if candidate.reachable_states().count() != n {
        return Ok(None); // a smaller state count already covers this shape
    }
    for (lasso, member) in battery {
        if lasso_accepts(&candidate, lasso)? != *member {
            return Ok(None);
        }
    }
    if !is_history_deterministic(&candidate)? {
        return Ok(None);
    }
    if contains_hd(&candidate, reference)? && contains_hd(reference, &candidate)? {
        return Ok(Some(candidate));
    }
    Ok(None)
}


/// One candidate cell: the chosen successors with their colour sets.
type Cell = Vec<(usize, ColourSet)>;

struct HdSearch {
    reference: Automaton,
    family: AcceptanceFamily,
    sigma: usize,
    max_colours: usize,
    battery: Vec<(Lasso, bool)>,
    budget: u64,
    explored: u64,
    safe_det: bool,
    internal_battery: usize,
}

fn hd_search(reference: &Automaton, query: &ExactMinQuery) -> Result<ExactMinOutcome> {
    if !is_history_deterministic(reference)? {
        return Err(Error::Contract(
            "hd-mode search needs a history-deterministic reference".into(),
        ));
    }
    // Single-colour coBüchi searches factor through safe skeletons.
    if query.max_colours == 1
        && reference.acceptance().family == AcceptanceFamily::GeneralisedCoBuchi
    {
        return hd_search_cobuchi1(reference, query);
    }
    let sigma = reference.alphabet().len();
    // Sound state lower bound: a history-deterministic automaton carries a
    // state for every distinct non-empty residual the resolver can reach.
    let live_residuals = match reference.acceptance().family {
        AcceptanceFamily::GeneralisedCoBuchi => {
            let det = breakpoint_determinise(&degeneralise(reference)?)?.trim();
            let partition = residual_partition(&det)?;
            let dead = crate::residual::dead_states(&det);
            let mut classes: Vec<usize> = (0..det.states())
                .filter(|&q| !dead[q])
                .map(|q| partition.class_of[q])
                .collect();
            classes.sort_unstable();
            classes.dedup();
            classes.len().max(1)
        }
        AcceptanceFamily::GeneralisedBuchi => 1,
    };
    let mut battery: Vec<(Lasso, bool)> = Vec::new();
    for lasso in crate::random::all_lassos(sigma, 1, 3) {
        let member = lasso_accepts(reference, &lasso)?;
        battery.push((lasso, member));
    }
    battery.sort_by_key(|(l, _)| l.stem.len() + l.cycle.len());

    // Safe-determinism is only a sound candidate restriction for
    // single-colour coBüchi languages.
    let safe_det = query.max_colours == 1
        && reference.acceptance().family == AcceptanceFamily::GeneralisedCoBuchi;
    let internal_battery = battery.len().min(48);
    let mut search = HdSearch {
        reference: reference.clone(),
        family: reference.acceptance().family,
        sigma,
        max_colours: query.max_colours,
        battery,
        budget: query.budget,
        explored: 0,
        safe_det,
        internal_battery,
    };
    if crate::emptiness::is_empty(reference) {
        return Ok(ExactMinOutcome::Found(empty_language_candidate(reference)));
    }
    for n in live_residuals..=query.max_states {
        let mut cells: Vec<Cell> = vec![Vec::new(); n * sigma];
        if let Some(found) = search.enumerate(&mut cells, 0, 0, n)? {
            return Ok(ExactMinOutcome::Found(found));
        }
    }
    Ok(ExactMinOutcome::Infeasible)
}

impl HdSearch {
    fn build(&self, cells: &[Cell], decided: usize, n: usize, fill: Option<ColourSet>) -> Automaton {
        let mut b = AutomatonBuilder::new(
            self.reference.alphabet().clone(),
            Acceptance {
                family: self.family,
                colours: self.max_colours,
            },
            n,
        );
        for (i, cell) in cells.iter().enumerate() {
            let (q, a) = (i / self.sigma, i % self.sigma);
            if i < decided {
                for &(t, cs) in cell {
                    b = b.transition(q, a, t, cs);
                }
            } else if let Some(cs) = fill {
                for t in 0..n {
                    b = b.transition(q, a, t, cs);
                }
            }
        }
        b.build().expect("candidate cells are in range")
    }

    /// Sandwich pruning: the decided cells under-approximate every
    /// completion, the filled automaton over-approximates them (empty
    /// colour sets relax coBüchi acceptance, full ones relax Büchi).
    fn consistent(&mut self, cells: &[Cell], decided: usize, n: usize, limit: usize) -> Result<bool> {
        let fill = match self.family {
            AcceptanceFamily::GeneralisedCoBuchi => ColourSet::EMPTY,
            AcceptanceFamily::GeneralisedBuchi => ColourSet::all(self.max_colours),
        };
        for i in 0..self.battery.len().min(limit) {
            let (lasso, member) = (&self.battery[i].0, self.battery[i].1);
            if member {
                if !self.partial_accepts(cells, decided, n, Some(fill), lasso)? {
                    return Ok(false);
                }
            } else if self.partial_accepts(cells, decided, n, None, lasso)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lasso membership in a partial candidate, evaluated on packed bit
    /// sets over the (state, lasso position) product. `fill` turns the
    /// undecided cells into the over-approximating completion; `None`
    /// leaves them absent (the under-approximation).
    fn partial_accepts(
        &self,
        cells: &[Cell],
        decided: usize,
        n: usize,
        fill: Option<ColourSet>,
        lasso: &Lasso,
    ) -> Result<bool> {
        let period = lasso.stem.len() + lasso.cycle.len();
        let nodes = n * period;
        if nodes > 64 {
            // Desk-scale searches never get here; fall back to the plain
            // evaluation when they do.
            let aut = self.build(cells, decided, n, fill);
            return lasso_accepts(&aut, lasso);
        }
        let node = |q: usize, pos: usize| q * period + pos;
        let next_pos = |pos: usize| if pos + 1 < period { pos + 1 } else { lasso.stem.len() };
        // Successor masks, overall and per avoided colour.
        let mut full = [0u64; 64];
        for q in 0..n {
            for pos in 0..period {
                let letter = lasso.letter_at(pos);
                let cell = q * self.sigma + letter;
                let mut mask = 0u64;
                if cell < decided {
                    for &(t, _) in &cells[cell] {
                        mask |= 1 << node(t, next_pos(pos));
                    }
                } else if fill.is_some() {
                    for t in 0..n {
                        mask |= 1 << node(t, next_pos(pos));
                    }
                }
                full[node(q, pos)] = mask;
            }
        }
        let closure = |succ: &[u64; 64]| -> [u64; 64] {
            let mut reach = *succ;
            loop {
                let mut changed = false;
                for v in 0..nodes {
                    let mut add = reach[v];
                    let mut rest = reach[v];
                    while rest != 0 {
                        let w = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        add |= reach[w];
                    }
                    if add != reach[v] {
                        reach[v] = add;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            reach
        };
        let start = node(0, 0);
        let full_reach = closure(&full);
        let reachable = full_reach[start] | (1 << start);
        match self.family {
            AcceptanceFamily::GeneralisedCoBuchi => {
                if self.max_colours == 0 {
                    return Ok(false); // no colour can ever be avoided
                }
                // Accept iff some colour admits a reachable avoiding cycle.
                for c in 0..self.max_colours {
                    let mut avoid = [0u64; 64];
                    for q in 0..n {
                        for pos in 0..period {
                            let letter = lasso.letter_at(pos);
                            let cell = q * self.sigma + letter;
                            let mut mask = 0u64;
                            if cell < decided {
                                for &(t, cs) in &cells[cell] {
                                    if !cs.contains(c) {
                                        mask |= 1 << node(t, next_pos(pos));
                                    }
                                }
                            } else if let Some(cs) = fill {
                                if !cs.contains(c) {
                                    for t in 0..n {
                                        mask |= 1 << node(t, next_pos(pos));
                                    }
                                }
                            }
                            avoid[node(q, pos)] = mask;
                        }
                    }
                    let reach = closure(&avoid);
                    for v in 0..nodes {
                        if reachable & (1 << v) != 0 && reach[v] & (1 << v) != 0 {
                            return Ok(true);
                        }
                    }
                }
                Ok(false)
            }
            AcceptanceFamily::GeneralisedBuchi => {
                // Accept iff some reachable component covers every colour.
                let all = ColourSet::all(self.max_colours);
                for v in 0..nodes {
                    if reachable & (1 << v) == 0 || full_reach[v] & (1 << v) == 0 {
                        continue;
                    }
                    let members = (full_reach[v] & reach_back(&full_reach, v)) | (1 << v);
                    if members.trailing_zeros() as usize != v {
                        continue;
                    }
                    let mut cover = ColourSet::EMPTY;
                    let mut rest = members;
                    while rest != 0 {
                        let g = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        let (q, pos) = (g / period, g % period);
                        let letter = lasso.letter_at(pos);
                        let cell = q * self.sigma + letter;
                        let tpos = next_pos(pos);
                        if cell < decided {
                            for &(t, cs) in &cells[cell] {
                                if members & (1 << node(t, tpos)) != 0 {
                                    cover = cover.union(cs);
                                }
                            }
                        } else if let Some(cs) = fill {
                            if members & (full_mask_of(n, tpos, period)) != 0 {
                                cover = cover.union(cs);
                            }
                        }
                    }
                    if all.is_subset(cover) {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn enumerate(
        &mut self,
        cells: &mut Vec<Cell>,
        cell: usize,
        max_used: usize,
        n: usize,
    ) -> Result<Option<Automaton>> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::BudgetExceeded {
                explored: self.explored,
                budget: self.budget,
            });
        }
        if cell == cells.len() {
            if max_used + 1 != n {
                return Ok(None);
            }
            return self.check_candidate(cells, n);
        }
        let options = cell_options(n, max_used, self.max_colours, self.safe_det);
        for (content, new_max) in options {
            cells[cell] = content;
            if self.consistent(cells, cell + 1, n, self.internal_battery)? {
                if let Some(found) = self.enumerate(cells, cell + 1, new_max, n)? {
                    return Ok(Some(found));
                }
            }
        }
        cells[cell] = Vec::new();
        Ok(None)
    }

    fn check_candidate(&mut self, cells: &[Cell], n: usize) -> Result<Option<Automaton>> {
        if !self.consistent(cells, cells.len(), n, usize::MAX)? {
            return Ok(None);
        }
        let candidate = self.build(cells, cells.len(), n, None);
        if !is_history_deterministic(&candidate)? {
            return Ok(None);
        }
        if contains_hd(&candidate, &self.reference)? && contains_hd(&self.reference, &candidate)? {
            return Ok(Some(candidate));
        }
        Ok(None)
    }
}

/// All contents of one candidate cell under the BFS-canonical numbering:
/// sorted target lists with per-target colour sets, targets bounded by one
/// past the largest state used so far. With `safe_det` at most one edge
/// per cell is uncoloured: for single-colour coBüchi candidates this is a
/// sound restriction, since every history-deterministic coBüchi automaton
/// has an equivalent safe-deterministic one that is no larger.
fn cell_options(n: usize, max_used: usize, colours: usize, safe_det: bool) -> Vec<(Cell, usize)> {
    let mut out = Vec::new();
    let colour_choices: Vec<ColourSet> = (0..(1u64 << colours))
        .map(|bits| ColourSet::from_iter((0..colours).filter(|&c| bits & (1 << c) != 0)))
        .collect();
    #[allow(clippy::too_many_arguments)]
    fn extend(
        n: usize,
        t: usize,
        max_used: usize,
        used_safe: bool,
        safe_det: bool,
        current: &mut Cell,
        colour_choices: &[ColourSet],
        out: &mut Vec<(Cell, usize)>,
    ) {
        if t == n {
            out.push((current.clone(), max_used));
            return;
        }
        // Skip target t.
        extend(n, t + 1, max_used, used_safe, safe_det, current, colour_choices, out);
        // Include target t, if the canonical numbering allows it.
        if t <= max_used + 1 {
            for &cs in colour_choices {
                let safe = cs.is_empty();
                if safe && used_safe && safe_det {
                    continue;
                }
                current.push((t, cs));
                extend(
                    n,
                    t + 1,
                    max_used.max(t),
                    used_safe || safe,
                    safe_det,
                    current,
                    colour_choices,
                    out,
                );
                current.pop();
            }
        }
    }
    extend(n, 0, max_used, false, safe_det, &mut Vec::new(), &colour_choices, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hardness::{graph_language_reference, Graph};

    fn k3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn graph_reference_is_feasible_at_three_states() {
        let reference = graph_language_reference(&k3()).unwrap();
        let q = ExactMinQuery::new(3, 3, ExactMinMode::Det);
        match exact_minimise(&reference, &q).unwrap() {
            ExactMinOutcome::Found(a) => {
                assert!(a.states() <= 3);
                assert!(det_equivalent(&a, &reference).unwrap());
            }
            ExactMinOutcome::Infeasible => panic!("expected a 3-state candidate"),
        }
    }

    #[test]
    fn graph_reference_is_infeasible_at_two_states() {
        let reference = graph_language_reference(&k3()).unwrap();
        let q = ExactMinQuery::new(2, 3, ExactMinMode::Det);
        assert!(matches!(
            exact_minimise(&reference, &q).unwrap(),
            ExactMinOutcome::Infeasible
        ));
    }

    #[test]
    fn empty_reference_needs_one_bare_state() {
        let alphabet = crate::Alphabet::of_chars("a").unwrap();
        let reference = AutomatonBuilder::new(alphabet, Acceptance::buchi(1), 1)
            .transition(0, 0, 0, ColourSet::EMPTY)
            .build()
            .unwrap();
        let q = ExactMinQuery::new(1, 0, ExactMinMode::Det);
        match exact_minimise(&reference, &q).unwrap() {
            ExactMinOutcome::Found(a) => {
                assert_eq!(a.states(), 1);
                assert_eq!(a.acceptance().colours, 0);
                assert!(crate::emptiness::is_empty(&a));
            }
            ExactMinOutcome::Infeasible => panic!("empty language is expressible"),
        }
    }

    #[test]
    fn monotonicity_in_states_and_colours() {
        let reference = fixtures::fin_b_or_c_det2();
        for (n, k) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
            let q = ExactMinQuery::new(n, k, ExactMinMode::Det);
            let feasible = matches!(exact_minimise(&reference, &q).unwrap(), ExactMinOutcome::Found(_));
            // fin-b-or-c needs two states; one colour suffices there.
            assert_eq!(feasible, n >= 2, "n={n} k={k}");
        }
    }

    #[test]
    fn hd_mode_confirms_two_state_optimum_for_fin_b_or_c() {
        // With a single colour (plain coBüchi) one state is not enough;
        // with two colours it is — that is the whole point of the
        // generalised construction.
        let reference = fixtures::fin_b_or_c_det2();
        let q = ExactMinQuery::new(1, 1, ExactMinMode::Hd);
        assert!(matches!(
            exact_minimise(&reference, &q).unwrap(),
            ExactMinOutcome::Infeasible
        ));
        let q2 = ExactMinQuery::new(2, 1, ExactMinMode::Hd);
        match exact_minimise(&reference, &q2).unwrap() {
            ExactMinOutcome::Found(a) => {
                assert_eq!(a.states(), 2);
                assert!(is_history_deterministic(&a).unwrap());
            }
            ExactMinOutcome::Infeasible => panic!("two states suffice"),
        }
    }

    #[test]
    fn hd_mode_gen_cobuchi_single_state() {
        // The fin-b-or-c language as a generalised coBüchi automaton with
        // one state and two colours.
        let canon = crate::canonical::minimise_hd_cobuchi(&fixtures::fin_b_or_c_det2()).unwrap();
        let out = crate::gencobuchi::build_prefix_independent(&canon.automaton).unwrap();
        let q = ExactMinQuery::new(1, 2, ExactMinMode::Hd);
        match exact_minimise(&out.automaton, &q).unwrap() {
            ExactMinOutcome::Found(a) => assert_eq!(a.states(), 1),
            ExactMinOutcome::Infeasible => panic!("the construction itself has one state"),
        }
    }

    #[test]
    fn budget_errors_are_loud() {
        let reference = graph_language_reference(&k3()).unwrap();
        let q = ExactMinQuery {
            max_states: 3,
            max_colours: 3,
            mode: ExactMinMode::Det,
            budget: 5,
        };
        assert!(matches!(
            exact_minimise(&reference, &q),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
