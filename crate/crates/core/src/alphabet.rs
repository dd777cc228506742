//! Finite, totally ordered alphabets.
//!
//! Letters are plain indices into the declaration order of an [`Alphabet`];
//! that order is the one used for every lexicographic comparison in the crate.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter in its alphabet's declaration order.
pub type Letter = usize;

/// A word over some alphabet, as a sequence of letter indices.
pub type Word = Vec<Letter>;

/// A nonempty, ordered set of uniquely named letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from letter names in declaration order.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidAlphabet("empty letter name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{name}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false; alphabets are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name)
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.names.len()
    }

    /// The alphabet of letter pairs `self × other`, with pair `(a, b)` at
    /// index `a * other.len() + b`. The induced order is lexicographic.
    pub fn product(&self, other: &Alphabet) -> Alphabet {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for a in &self.names {
            for b in &other.names {
                names.push(format!("{a}|{b}"));
            }
        }
        Alphabet { names }
    }

    /// Renders a word as space-separated letter names (`ε` when empty).
    pub fn render(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter()
            .map(|&l| self.names[l].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

/// All words of exactly `len` letters over an alphabet of `size` letters,
/// in lexicographic order.
pub fn words_of_length(size: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = size.checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut word = vec![0; len];
        for slot in word.iter_mut().rev() {
            *slot = code % size;
            code /= size;
        }
        word
    })
}

/// All words of length at most `max_len`, shortest first, lexicographic within a length.
pub fn words_up_to(size: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_length(size, len))
}
