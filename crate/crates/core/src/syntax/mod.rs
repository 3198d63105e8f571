//! Core first-order language: terms, propositions, signatures and the
//! s-expression concrete syntax.

pub mod parse;
pub mod sexp;
pub mod signature;
pub mod term;

pub use parse::{ParseError, ParseErrorKind, Parser};
pub use sexp::Pos;
pub use signature::{Signature, SignatureError, SkolemTag};
pub use term::{Connective, Prop, Term};
