//! Input-deterministic machines with word outputs.

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::nfa::StateId;
use crate::transducer::LetterTransducer;

/// A real-time transducer whose input automaton is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialTransducer {
    input: Alphabet,
    output: Alphabet,
    /// `delta[state][input letter] = (output word, next state)`.
    delta: Vec<Vec<Option<(Word, StateId)>>>,
    initial: StateId,
    finals: Vec<bool>,
}

impl SequentialTransducer {
    /// `num_states` states (at least one), no transitions, nothing final.
    pub fn new(input: Alphabet, output: Alphabet, num_states: usize, initial: StateId) -> Result<Self> {
        if initial >= num_states {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} is not declared"
            )));
        }
        let k = input.len();
        Ok(SequentialTransducer {
            input,
            output,
            delta: vec![vec![None; k]; num_states],
            initial,
            finals: vec![false; num_states],
        })
    }

    pub fn add_state(&mut self, is_final: bool) -> StateId {
        self.delta.push(vec![None; self.input.len()]);
        self.finals.push(is_final);
        self.delta.len() - 1
    }

    /// Fails if `(from, letter)` already has a transition.
    pub fn set_transition(&mut self, from: StateId, letter: Letter, output: Word, to: StateId) -> Result<()> {
        let n = self.num_states();
        if from >= n || to >= n {
            return Err(Error::InvalidAutomaton("transition endpoint is not declared".into()));
        }
        if letter >= self.input.len() || output.iter().any(|&b| b >= self.output.len()) {
            return Err(Error::InvalidAutomaton("transition letter is not declared".into()));
        }
        let slot = &mut self.delta[from][letter];
        if slot.is_some() {
            return Err(Error::InvalidAutomaton(format!(
                "state {from} already has a transition on letter {letter}"
            )));
        }
        *slot = Some((output, to));
        Ok(())
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn transition(&self, q: StateId, letter: Letter) -> Option<(&[Letter], StateId)> {
        self.delta[q][letter].as_ref().map(|(w, t)| (w.as_slice(), *t))
    }

    /// Transitions as `(source, input letter, output word, target)`, sorted.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, &[Letter], StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(a, t)| t.as_ref().map(|(w, q)| (p, a, w.as_slice(), *q)))
        })
    }

    /// Every transition outputs exactly one letter.
    pub fn is_letter_to_letter(&self) -> bool {
        self.transitions().all(|(_, _, w, _)| w.len() == 1)
    }

    /// Every state final and every transition defined.
    pub fn is_total(&self) -> bool {
        self.finals.iter().all(|&f| f) && self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Output and reached state, if the run is defined (finality not checked).
    pub fn run(&self, word: &[Letter]) -> Option<(Word, StateId)> {
        let mut out = Vec::new();
        let mut q = self.initial;
        for &a in word {
            let (w, t) = self.delta[q][a].as_ref()?;
            out.extend_from_slice(w);
            q = *t;
        }
        Some((out, q))
    }

    /// The realized function.
    pub fn apply(&self, word: &[Letter]) -> Option<Word> {
        self.run(word).filter(|&(_, q)| self.finals[q]).map(|(w, _)| w)
    }

    /// The graph as a letter-to-letter transducer, when letter-to-letter.
    pub fn to_letter_transducer(&self) -> Result<LetterTransducer> {
        if !self.is_letter_to_letter() {
            return Err(Error::NotLetterToLetter);
        }
        LetterTransducer::from_transitions(
            self.input.clone(),
            self.output.clone(),
            self.num_states(),
            self.transitions().map(|(p, a, w, q)| (p, a, w[0], q)),
            [self.initial],
            (0..self.num_states()).filter(|&q| self.finals[q]),
        )
    }
}

/// A letter-to-letter sequential transducer with a final output letter per final state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsequentialTransducer {
    base: SequentialTransducer,
    final_output: Vec<Option<Letter>>,
}

impl SubsequentialTransducer {
    /// `final_output` must be defined exactly on the final states of `base`.
    pub fn new(base: SequentialTransducer, final_output: Vec<Option<Letter>>) -> Result<Self> {
        if final_output.len() != base.num_states() {
            return Err(Error::InvalidAutomaton("final output table has the wrong size".into()));
        }
        for (q, t) in final_output.iter().enumerate() {
            if t.is_some() != base.is_final(q) {
                return Err(Error::InvalidAutomaton(format!(
                    "final output must be defined exactly on final states (state {q})"
                )));
            }
            if t.is_some_and(|b| b >= base.output_alphabet().len()) {
                return Err(Error::InvalidAutomaton("final output letter is not declared".into()));
            }
        }
        if !base.is_letter_to_letter() {
            return Err(Error::NotLetterToLetter);
        }
        Ok(SubsequentialTransducer { base, final_output })
    }

    pub fn base(&self) -> &SequentialTransducer {
        &self.base
    }

    pub fn final_output(&self, q: StateId) -> Option<Letter> {
        self.final_output[q]
    }

    /// Body output followed by the final output letter.
    pub fn apply(&self, word: &[Letter]) -> Option<Word> {
        let (mut out, q) = self.base.run(word)?;
        out.push(self.final_output[q]?);
        Some(out)
    }
}

/// Any machine the file format and the kernel checks know about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    Letter(LetterTransducer),
    Sequential(SequentialTransducer),
    Subsequential(SubsequentialTransducer),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Letter(_) => "letter-transducer",
            Machine::Sequential(_) => "sequential",
            Machine::Subsequential(_) => "subsequential",
        }
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        match self {
            Machine::Letter(t) => t.input_alphabet(),
            Machine::Sequential(s) => s.input_alphabet(),
            Machine::Subsequential(s) => s.base().input_alphabet(),
        }
    }

    /// Output on `word`. For a letter transducer, the lexicographically
    /// least output, which is the output when it realizes a function.
    pub fn apply(&self, word: &[Letter]) -> Option<Word> {
        match self {
            Machine::Letter(t) => least_output(t, word),
            Machine::Sequential(s) => s.apply(word),
            Machine::Subsequential(s) => s.apply(word),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            Machine::Letter(t) => t.num_states(),
            Machine::Sequential(s) => s.num_states(),
            Machine::Subsequential(s) => s.base().num_states(),
        }
    }
}

/// Greedy descent over output letters, pruned by a forward state set and
/// the states that can still finish on the rest of the input.
fn least_output(t: &LetterTransducer, word: &[Letter]) -> Option<Word> {
    let nfa = t.automaton();
    let n = nfa.num_states();
    // alive[i][q]: from q, the suffix word[i..] can be read into a final state.
    let mut alive = vec![vec![false; n]; word.len() + 1];
    for q in nfa.finals() {
        alive[word.len()][q] = true;
    }
    for i in (0..word.len()).rev() {
        for (p, l, q) in nfa.transitions() {
            if t.split(l).0 == word[i] && alive[i + 1][q] {
                alive[i][p] = true;
            }
        }
    }
    let mut current: Vec<StateId> = nfa.initials().iter().copied().filter(|&q| alive[0][q]).collect();
    if current.is_empty() {
        return None;
    }
    let mut out = Vec::with_capacity(word.len());
    for (i, &a) in word.iter().enumerate() {
        let b = t.output_alphabet().letters().find(|&b| {
            current
                .iter()
                .any(|&p| nfa.successors(p, t.pair(a, b)).any(|q| alive[i + 1][q]))
        })?;
        let mut next: Vec<StateId> = current
            .iter()
            .flat_map(|&p| nfa.successors(p, t.pair(a, b)))
            .filter(|&q| alive[i + 1][q])
            .collect();
        next.sort_unstable();
        next.dedup();
        current = next;
        out.push(b);
    }
    Some(out)
}

impl From<LetterTransducer> for Machine {
    fn from(t: LetterTransducer) -> Self {
        Machine::Letter(t)
    }
}

impl From<SequentialTransducer> for Machine {
    fn from(t: SequentialTransducer) -> Self {
        Machine::Sequential(t)
    }
}

impl From<SubsequentialTransducer> for Machine {
    fn from(t: SubsequentialTransducer) -> Self {
        Machine::Subsequential(t)
    }
}
