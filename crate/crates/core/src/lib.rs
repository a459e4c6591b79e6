//! A workbench for self-reference in arithmetic with a truth predicate.
//!
//! * [`syntax`]: terms, formulas, parsing, printing and substitution.
//! * [`godel`]: an injective, decodable Gödel numbering.
//! * [`quine`]: string quining, the formal quining function `Q`, the
//!   diagonal liar sentence and the prime-parameterized term `F`.
//! * [`eval`]: three-valued recursive truth evaluation in the natural numbers.
//! * [`kernel`]: a small derivation checker with the T-scheme and term
//!   substitution, the mechanized liar contradiction, and bounded theorem
//!   enumeration for a toy theory.
//! * [`paradox`]: groundedness classification of truth attributions.
//! * [`cli`]: the `liarlab` command line.

pub mod cli;
pub mod eval;
pub mod godel;
pub mod kernel;
pub mod paradox;
pub mod quine;
pub mod syntax;
