//! Equivalence kernels of letter-to-letter rational relations.
//!
//! Given an equivalence relation realized by a synchronous transducer, this
//! crate decides whether it is the kernel of a Mealy machine or of a
//! sequential function, and synthesizes such a machine when it is. Every
//! decision can be cross-checked against the brute-force semantics in
//! [`oracle`].

pub mod alphabet;
pub mod decision;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod machine;
pub mod nfa;
pub mod oracle;
pub mod relation;
pub mod synthesis;
pub mod transducer;

pub use alphabet::{Alphabet, Letter, Word};
pub use error::{Error, Result};
pub use nfa::{Nfa, StateId};
pub use transducer::LetterTransducer;
