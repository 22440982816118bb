//! Finite input alphabets with named letters.

use crate::{Error, Result};
use std::collections::HashMap;

/// An ordered finite alphabet of distinct letter names. The order is fixed
/// at construction and defines the letter indices used everywhere else.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    /// Builds an alphabet from letter names. Fails on emptiness or
    /// duplicate names.
    pub fn new(letters: impl IntoIterator<Item = impl Into<String>>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::InvalidAutomaton("alphabet must be non-empty".into()));
        }
        let mut index = HashMap::new();
        for (i, l) in letters.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidAutomaton(format!("duplicate letter `{l}`")));
            }
        }
        Ok(Alphabet { letters, index })
    }

    /// Alphabet with single-character names taken from `chars`.
    pub fn of_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(|c| c.to_string()))
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; alphabets are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The name of letter `i`.
    pub fn name(&self, i: usize) -> &str {
        &self.letters[i]
    }

    /// All letter names in index order.
    pub fn names(&self) -> &[String] {
        &self.letters
    }

    /// Index of the letter called `name`, if any.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Like [`Alphabet::index_of`] but produces a contract error.
    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Contract(format!("letter `{name}` not in alphabet")))
    }
}

impl std::fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.letters.iter()).finish()
    }
}
