//! Letter-to-letter transducers: automata over a pair alphabet `A × B`.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::nfa::{Nfa, StateId};

/// A synchronous (letter-to-letter) transducer. Each transition reads one
/// input letter and writes one output letter, so the realized relation is
/// length-preserving by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterTransducer {
    input: Alphabet,
    output: Alphabet,
    automaton: Nfa,
}

impl LetterTransducer {
    /// Wraps an automaton whose alphabet must be `input × output`.
    pub fn new(input: Alphabet, output: Alphabet, automaton: Nfa) -> Result<Self> {
        if *automaton.alphabet() != input.product(&output) {
            return Err(Error::AlphabetMismatch(
                "automaton alphabet is not the product of the input and output alphabets".into(),
            ));
        }
        Ok(LetterTransducer {
            input,
            output,
            automaton,
        })
    }

    /// Builds a transducer from `(source, input letter, output letter, target)` transitions.
    pub fn from_transitions(
        input: Alphabet,
        output: Alphabet,
        num_states: usize,
        transitions: impl IntoIterator<Item = (StateId, Letter, Letter, StateId)>,
        initials: impl IntoIterator<Item = StateId>,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let width = output.len();
        let (ni, no) = (input.len(), output.len());
        let mut pairs = Vec::new();
        for (p, a, b, q) in transitions {
            if a >= ni || b >= no {
                return Err(Error::InvalidAutomaton(format!(
                    "transition letter pair ({a}, {b}) is not declared"
                )));
            }
            pairs.push((p, a * width + b, q));
        }
        let automaton = Nfa::from_parts(input.product(&output), num_states, pairs, initials, finals)?;
        Ok(LetterTransducer {
            input,
            output,
            automaton,
        })
    }

    /// The identity relation over `alphabet`.
    pub fn identity(alphabet: &Alphabet) -> Self {
        let k = alphabet.len();
        Self::from_transitions(
            alphabet.clone(),
            alphabet.clone(),
            1,
            (0..k).map(|a| (0, a, a, 0)),
            [0],
            [0],
        )
        .expect("well-formed identity")
    }

    /// All pairs of words of equal length.
    pub fn universal(alphabet: &Alphabet) -> Self {
        let k = alphabet.len();
        let trans = (0..k).flat_map(|a| (0..k).map(move |b| (0, a, b, 0)));
        Self::from_transitions(alphabet.clone(), alphabet.clone(), 1, trans, [0], [0])
            .expect("well-formed universal relation")
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn automaton(&self) -> &Nfa {
        &self.automaton
    }

    pub fn into_automaton(self) -> Nfa {
        self.automaton
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }

    /// Pair-alphabet letter for `(input, output)`.
    pub fn pair(&self, input: Letter, output: Letter) -> Letter {
        input * self.output.len() + output
    }

    /// Input and output letter of a pair-alphabet letter.
    pub fn split(&self, letter: Letter) -> (Letter, Letter) {
        (letter / self.output.len(), letter % self.output.len())
    }

    /// Transitions as `(source, input letter, output letter, target)`.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, Letter, StateId)> + '_ {
        self.automaton.transitions().map(move |(p, l, q)| {
            let (a, b) = self.split(l);
            (p, a, b, q)
        })
    }

    /// Same alphabets, different automaton (which must be over the same pair alphabet).
    pub fn with_automaton(&self, automaton: Nfa) -> Self {
        debug_assert_eq!(automaton.alphabet(), self.automaton.alphabet());
        LetterTransducer {
            input: self.input.clone(),
            output: self.output.clone(),
            automaton,
        }
    }

    /// Encodes a pair of equal-length words as a word over the pair alphabet.
    pub fn encode(&self, u: &[Letter], v: &[Letter]) -> Option<Vec<Letter>> {
        (u.len() == v.len()).then(|| u.iter().zip(v).map(|(&a, &b)| self.pair(a, b)).collect())
    }

    /// Whether `(u, v)` belongs to the realized relation.
    pub fn accepts(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.encode(u, v).is_some_and(|w| self.automaton.accepts(&w))
    }

    /// True when input and output alphabets coincide, as required for
    /// relations that are meant to be equivalences.
    pub fn is_endo(&self) -> bool {
        self.input == self.output
    }

    /// Minimal complete pair-deterministic transducer for the same relation.
    pub fn minimized(&self) -> Self {
        self.with_automaton(self.automaton.minimize())
    }

    pub fn trimmed(&self) -> Self {
        self.with_automaton(self.automaton.trim())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabets(other)?;
        Ok(self.with_automaton(self.automaton.union(&other.automaton)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabets(other)?;
        Ok(self.with_automaton(self.automaton.intersect(&other.automaton)?))
    }

    /// Relation inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_same_alphabets(other)?;
        self.automaton.includes_in(&other.automaton)
    }

    pub fn relation_equal(&self, other: &Self) -> Result<bool> {
        self.check_same_alphabets(other)?;
        self.automaton.language_equal(&other.automaton)
    }

    fn check_same_alphabets(&self, other: &Self) -> Result<()> {
        if self.input == other.input && self.output == other.output {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{}×{} vs {}×{}",
                self.input, self.output, other.input, other.output
            )))
        }
    }
}
