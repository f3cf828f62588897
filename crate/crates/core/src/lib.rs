//! Complemented presentations, Garside structures and their normal forms.

pub mod criterion;
pub mod error;
pub mod generators;
pub mod lattice;
pub mod normalform;
pub mod oracle;
pub mod reversing;
pub mod transducer;
pub mod words;

pub use error::{Error, Result};
pub use reversing::Reversing;
pub use words::{Alphabet, ComplementTable, Gen, Letter, Presentation, Relation, SignedWord, Word};
