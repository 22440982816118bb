//! Output colours and acceptance conditions.

use crate::{Error, Result};

/// Maximum number of output colours supported by [`ColourSet`].
pub const MAX_COLOURS: usize = 64;

/// A set of output colours, packed into a word. Colour indices run from 0
/// to the automaton's colour count minus one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColourSet(u64);

impl ColourSet {
    /// The empty colour set.
    pub const EMPTY: ColourSet = ColourSet(0);

    /// Set containing the single colour `i`.
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_COLOURS);
        ColourSet(1 << i)
    }

    /// Set containing colours `0..k`.
    pub fn all(k: usize) -> Self {
        debug_assert!(k <= MAX_COLOURS);
        if k == 64 {
            ColourSet(u64::MAX)
        } else {
            ColourSet((1u64 << k) - 1)
        }
    }

    /// Builds a set from colour indices.
    pub fn from_iter(iter: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ColourSet::EMPTY;
        for c in iter {
            s = s.with(c);
        }
        s
    }

    /// This set with colour `i` added.
    pub fn with(self, i: usize) -> Self {
        debug_assert!(i < MAX_COLOURS);
        ColourSet(self.0 | (1 << i))
    }

    /// This set with colour `i` removed.
    pub fn without(self, i: usize) -> Self {
        ColourSet(self.0 & !(1 << i))
    }

    /// Membership test.
    pub fn contains(self, i: usize) -> bool {
        i < MAX_COLOURS && self.0 & (1 << i) != 0
    }

    /// Union of the two sets.
    pub fn union(self, other: ColourSet) -> Self {
        ColourSet(self.0 | other.0)
    }

    /// Intersection of the two sets.
    pub fn intersection(self, other: ColourSet) -> Self {
        ColourSet(self.0 & other.0)
    }

    /// True when the set is empty.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True when `self ⊆ other`.
    pub fn is_subset(self, other: ColourSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Number of colours in the set.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Iterates over the colours in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Removes colour `i` and shifts every colour above `i` down by one.
    pub fn delete_and_shift(self, i: usize) -> Self {
        let below = self.0 & ((1u64 << i) - 1);
        let above = if i + 1 >= 64 { 0 } else { (self.0 >> (i + 1)) << i };
        ColourSet(below | above)
    }

    /// Raw bit representation; used for canonical letter orderings.
    pub fn bits(self) -> u64 {
        self.0
    }

    /// Parses the textual form used by the native format, e.g. `{}` or `{0,2}`.
    pub fn parse(text: &str, colour_count: usize, line: usize) -> Result<Self> {
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                line,
                message: format!("expected colour set like {{0,2}}, got `{text}`"),
            })?;
        let mut set = ColourSet::EMPTY;
        if inner.is_empty() {
            return Ok(set);
        }
        for part in inner.split(',') {
            let c: usize = part.trim().parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad colour index `{part}`"),
            })?;
            if c >= colour_count {
                return Err(Error::Parse {
                    line,
                    message: format!("colour index {c} out of range (colour count {colour_count})"),
                });
            }
            set = set.with(c);
        }
        Ok(set)
    }
}

impl std::fmt::Display for ColourSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl std::fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// The two acceptance families used in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AcceptanceFamily {
    /// Accept when every colour occurs infinitely often.
    GeneralisedBuchi,
    /// Accept when at least one colour occurs only finitely often.
    GeneralisedCoBuchi,
}

impl AcceptanceFamily {
    /// The dual family.
    pub fn dual(self) -> Self {
        match self {
            AcceptanceFamily::GeneralisedBuchi => AcceptanceFamily::GeneralisedCoBuchi,
            AcceptanceFamily::GeneralisedCoBuchi => AcceptanceFamily::GeneralisedBuchi,
        }
    }
}

/// Acceptance condition: a family together with the number of colours.
/// `colours == 1` encodes plain Büchi/coBüchi.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Acceptance {
    /// Which family the condition belongs to.
    pub family: AcceptanceFamily,
    /// Number of output colours `k ≥ 0`.
    pub colours: usize,
}

impl Acceptance {
    /// Generalised Büchi with `k` colours.
    pub fn buchi(k: usize) -> Self {
        Acceptance {
            family: AcceptanceFamily::GeneralisedBuchi,
            colours: k,
        }
    }

    /// Generalised coBüchi with `k` colours.
    pub fn cobuchi(k: usize) -> Self {
        Acceptance {
            family: AcceptanceFamily::GeneralisedCoBuchi,
            colours: k,
        }
    }

    /// Same colour count, dual family.
    pub fn dual(self) -> Self {
        Acceptance {
            family: self.family.dual(),
            colours: self.colours,
        }
    }

    /// Decides acceptance given the set of colours occurring infinitely
    /// often in a run's output.
    pub fn accepts_infinite_colours(self, inf: ColourSet) -> bool {
        let all = ColourSet::all(self.colours);
        match self.family {
            AcceptanceFamily::GeneralisedBuchi => inf == all,
            AcceptanceFamily::GeneralisedCoBuchi => inf != all,
        }
    }
}
