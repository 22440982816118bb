//! State-minimal history-deterministic generalised coBüchi automata.
//!
//! Starting from the canonical minimal HD coBüchi automaton, each residual
//! class `R_j` receives `n_j` fresh states, where `n_j` is the largest
//! number of `R_j`-states appearing together in one safe component (at
//! least one, so classes without safe cycles — transient classes and
//! recurrent classes whose localisation is empty — stay represented).
//! Transitions connect all state pairs consistently with the residual
//! classes. Each safe component is packed into the new state set by an
//! injective class-respecting morphism, and a transition carries colour
//! `i` exactly when it is *not* the image of a safe transition of
//! component `i`; avoiding colour `i` forever therefore means eventually
//! tracing component `i`.
//!
//! The number of states is `Σ_j n_j` (`n_max` in the single-class case)
//! and the number of colours equals the number of safe components.

use crate::automaton::{Automaton, AutomatonBuilder};
use crate::canonical::{check_canonicity_full, CanonicalCoBuchi};
use crate::colours::{Acceptance, ColourSet, MAX_COLOURS};
use crate::safety::safe_successor;
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};

/// Per-class state budget of the construction.
#[derive(Clone, Debug)]
pub struct SizeProfile {
    /// `n_j` per residual class of the canonical automaton.
    pub class_sizes: Vec<usize>,
    /// Largest safe-component size (the whole budget when the language is
    /// prefix-independent); 1 when there is no safe component at all.
    pub n_max: usize,
    /// Total number of states of the construction, `Σ_j n_j`.
    pub total: usize,
}

fn profile_of(
    amin: &Automaton,
    partition: &crate::residual::ResidualPartition,
    safe: &crate::safety::SafeDecomposition,
) -> SizeProfile {
    let mut class_sizes = vec![1usize; partition.classes];
    for component in &safe.components {
        let mut per_class: HashMap<usize, usize> = HashMap::new();
        for &q in &component.states {
            *per_class.entry(partition.class_of[q]).or_insert(0) += 1;
        }
        for (class, count) in per_class {
            class_sizes[class] = class_sizes[class].max(count);
        }
    }
    let n_max = safe
        .components
        .iter()
        .map(|c| c.states.len())
        .max()
        .unwrap_or(1)
        .max(1);
    let _ = amin;
    SizeProfile {
        total: class_sizes.iter().sum(),
        class_sizes,
        n_max,
    }
}

/// Computes the size profile of a canonical HD coBüchi automaton
/// (canonicity is a contract and is checked).
pub fn size_profile(amin: &Automaton) -> Result<SizeProfile> {
    let (report, partition, safe) = check_canonicity_full(amin)?;
    if !report.all() {
        return Err(Error::Contract(format!(
            "size profile needs a canonical automaton, got {report:?}"
        )));
    }
    Ok(profile_of(amin, &partition, &safe))
}

/// An injective class-respecting embedding of one safe component into the
/// output state set.
#[derive(Clone, Debug)]
pub struct Packing {
    /// Index of the safe component (also its output colour).
    pub component: usize,
    /// Pairs `(canonical state, output state)`.
    pub map: Vec<(usize, usize)>,
}

/// The constructed minimal HD generalised coBüchi automaton, together with
/// the packings that define its colouring.
pub struct GenCoBuchiMin {
    /// The output automaton.
    pub automaton: Automaton,
    /// One packing per safe component of the canonical automaton.
    pub packings: Vec<Packing>,
    /// Residual class (of the canonical partition) per output state.
    pub class_of_output: Vec<usize>,
    /// First output state of each class block.
    pub class_offset: Vec<usize>,
    /// The size profile realised by the output.
    pub profile: SizeProfile,
}

/// Builds the minimal HD generalised coBüchi automaton in the general,
/// residual-aware form.
pub fn build_general(amin: &Automaton) -> Result<GenCoBuchiMin> {
    let (report, partition, safe) = check_canonicity_full(amin)?;
    if !report.all() {
        return Err(Error::Contract(format!(
            "the construction needs a canonical automaton, got {report:?}"
        )));
    }
    let profile = profile_of(amin, &partition, &safe);
    let k = safe.components.len();
    if k > MAX_COLOURS {
        return Err(Error::Contract("too many safe components for the colour width".into()));
    }

    // Output state blocks per class.
    let mut class_offset = vec![0usize; partition.classes];
    let mut total = 0usize;
    for c in 0..partition.classes {
        class_offset[c] = total;
        total += profile.class_sizes[c];
    }
    let mut class_of_output = vec![0usize; total];
    for c in 0..partition.classes {
        for s in 0..profile.class_sizes[c] {
            class_of_output[class_offset[c] + s] = c;
        }
    }

    // Pack each component: states in ascending order take the least free
    // slot of their class block.
    let mut packings = Vec::new();
    for (i, component) in safe.components.iter().enumerate() {
        let mut used: HashSet<usize> = HashSet::new();
        let mut map = Vec::new();
        for &q in &component.states {
            let class = partition.class_of[q];
            let slot = (0..profile.class_sizes[class])
                .map(|s| class_offset[class] + s)
                .find(|t| !used.contains(t))
                .expect("class budget fits its largest component intersection");
            used.insert(slot);
            map.push((q, slot));
        }
        packings.push(Packing { component: i, map });
    }

    // Transitions: all pairs consistent with the canonical class edges.
    let mut class_edges: HashSet<(usize, usize, usize)> = HashSet::new();
    for t in amin.transitions() {
        class_edges.insert((partition.class_of[t.src], t.letter, partition.class_of[t.dst]));
    }
    // Safe images per component define the colouring.
    let mut safe_image: HashSet<(usize, usize, usize, usize)> = HashSet::new();
    for packing in &packings {
        let phi: HashMap<usize, usize> = packing.map.iter().copied().collect();
        for t in &safe.components[packing.component].transitions {
            safe_image.insert((packing.component, phi[&t.src], t.letter, phi[&t.dst]));
        }
    }
    let mut builder = AutomatonBuilder::new(amin.alphabet().clone(), Acceptance::cobuchi(k), total)
        .initial(class_offset[partition.initial_class]);
    for &(c, letter, c2) in &class_edges {
        for s in 0..profile.class_sizes[c] {
            for s2 in 0..profile.class_sizes[c2] {
                let from = class_offset[c] + s;
                let to = class_offset[c2] + s2;
                let colours = ColourSet::from_iter(
                    (0..k).filter(|&i| !safe_image.contains(&(i, from, letter, to))),
                );
                builder = builder.transition(from, letter, to, colours);
            }
        }
    }
    let automaton = builder.build()?;
    debug_assert_eq!(automaton.states(), profile.total);
    Ok(GenCoBuchiMin {
        automaton,
        packings,
        class_of_output,
        class_offset,
        profile,
    })
}

/// The prefix-independent specialisation: requires a single residual
/// class; the output has `n_max` states and the full transition relation.
pub fn build_prefix_independent(amin: &Automaton) -> Result<GenCoBuchiMin> {
    let (report, partition, _) = check_canonicity_full(amin)?;
    if !report.all() {
        return Err(Error::Contract(format!(
            "the construction needs a canonical automaton, got {report:?}"
        )));
    }
    if partition.classes != 1 {
        return Err(Error::Contract(
            "prefix-independent construction needs a single residual class (use the general form)"
                .into(),
        ));
    }
    let out = build_general(amin)?;
    debug_assert_eq!(out.automaton.states(), out.profile.n_max);
    Ok(out)
}

/// A finite-memory resolver for the constructed automaton: it chases the
/// safe components in round-robin fashion, following the packed image of
/// the current component while possible and otherwise advancing the bet,
/// re-entering at the projection of a deterministic shadow run. Whenever
/// the input word is in the language, the shadow eventually stays safe in
/// some component and the round-robin catches up with it, so some colour
/// is eventually avoided forever.
pub struct RoundRobinResolver<'a> {
    out: &'a GenCoBuchiMin,
    canon: &'a CanonicalCoBuchi,
    phi: Vec<HashMap<usize, usize>>,
    state: usize,
    bet: usize,
    shadow: usize,
    aligned: Option<usize>,
}

impl<'a> RoundRobinResolver<'a> {
    /// Starts the resolver at the construction's initial state.
    pub fn new(out: &'a GenCoBuchiMin, canon: &'a CanonicalCoBuchi) -> Result<Self> {
        if out.automaton.alphabet() != canon.automaton.alphabet() {
            return Err(Error::Contract("resolver: packing/automaton mismatch".into()));
        }
        for packing in &out.packings {
            for &(q, t) in &packing.map {
                if q >= canon.automaton.states() || t >= out.automaton.states() {
                    return Err(Error::Contract("resolver: packing/automaton mismatch".into()));
                }
            }
        }
        let phi = out
            .packings
            .iter()
            .map(|p| p.map.iter().copied().collect())
            .collect();
        Ok(RoundRobinResolver {
            out,
            canon,
            phi,
            state: out.automaton.initial(),
            bet: 0,
            shadow: canon.reference.initial(),
            aligned: None,
        })
    }

    /// Current output state.
    pub fn state(&self) -> usize {
        self.state
    }

    /// Complete memory snapshot, for periodicity detection.
    pub fn memory_key(&self) -> (usize, usize, usize, Option<usize>) {
        (self.state, self.bet, self.shadow, self.aligned)
    }

    /// Feeds one letter and returns the transition taken, or `None` when
    /// the construction has no transition (the word has left every live
    /// residual and cannot belong to the language).
    pub fn step(&mut self, letter: usize) -> Option<crate::automaton::Transition> {
        let k = self.out.packings.len();
        let shadow2 = self.canon.reference.on(self.shadow, letter)[0].dst;
        // Follow the current component's safe structure when possible.
        if k > 0 {
            if let Some(z) = self.aligned {
                if let Some(z2) = safe_successor(&self.canon.automaton, z, letter) {
                    let target = self.phi[self.bet][&z2];
                    let t = *self
                        .out
                        .automaton
                        .on(self.state, letter)
                        .iter()
                        .find(|t| t.dst == target)
                        .expect("safe image is a transition of the output");
                    self.state = target;
                    self.aligned = Some(z2);
                    self.shadow = shadow2;
                    return Some(t);
                }
            }
        }
        // The bet broke: advance it and re-enter at the shadow projection.
        let bet2 = if k > 0 { (self.bet + 1) % k } else { 0 };
        let proj = self.canon.proj[shadow2];
        let aligned2 = match proj {
            Some(z) if k > 0 && self.canon.safe.component_of[z] == Some(bet2) => Some(z),
            _ => None,
        };
        let target = match aligned2 {
            Some(z) => self.phi[bet2][&z],
            None => match proj {
                Some(z) => {
                    let class = self.canon.partition.class_of[z];
                    self.out.class_offset[class]
                }
                None => {
                    // Dead residual (or the empty language): take any
                    // available transition, or report the dead end.
                    self.out.automaton.on(self.state, letter).first()?.dst
                }
            },
        };
        let t = *self
            .out
            .automaton
            .on(self.state, letter)
            .iter()
            .find(|t| t.dst == target)?;
        self.state = target;
        self.bet = bet2;
        self.aligned = aligned2;
        self.shadow = shadow2;
        Some(t)
    }
}

/// Convenience constructor matching the operation name used elsewhere.
pub fn round_robin_resolver<'a>(
    out: &'a GenCoBuchiMin,
    canon: &'a CanonicalCoBuchi,
) -> Result<RoundRobinResolver<'a>> {
    RoundRobinResolver::new(out, canon)
}

/// Simulates the resolver on a lasso until the (memory, cycle position)
/// pair repeats and reports whether the induced run is accepting.
pub fn resolver_accepts(
    out: &GenCoBuchiMin,
    canon: &CanonicalCoBuchi,
    lasso: &crate::Lasso,
) -> Result<bool> {
    let mut resolver = RoundRobinResolver::new(out, canon)?;
    for &letter in &lasso.stem {
        if resolver.step(letter).is_none() {
            return Ok(false);
        }
    }
    let mut seen: HashMap<((usize, usize, usize, Option<usize>), usize), usize> = HashMap::new();
    let mut colour_trace: Vec<ColourSet> = Vec::new();
    let mut pos = 0usize;
    loop {
        let key = (resolver.memory_key(), pos);
        if let Some(&first) = seen.get(&key) {
            let cycle_colours = colour_trace[first..]
                .iter()
                .fold(ColourSet::EMPTY, |u, &c| u.union(c));
            return Ok(out.automaton.acceptance().accepts_infinite_colours(cycle_colours));
        }
        seen.insert(key, colour_trace.len());
        match resolver.step(lasso.cycle[pos]) {
            Some(t) => colour_trace.push(t.colours),
            None => return Ok(false),
        }
        pos = (pos + 1) % lasso.cycle.len();
    }
}
