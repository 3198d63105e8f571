//! Proof checking for natural deduction modulo rewriting, with a
//! comprehension front end for Stratified Foundations.

pub mod checker;
pub mod cli;
pub mod gen;
pub mod proofterm;
pub mod rewrite;
pub mod selftest;
pub mod sf;
pub mod stratify;
pub mod syntax;

pub use checker::{CheckError, CheckFailure, Checker, ProofObject, Sequent, Theory};
pub use proofterm::{normalize_proof, NormalizeOutcome, ProofTerm};
pub use rewrite::{RewriteRule, RewriteSystem, Strategy};
pub use syntax::{Prop, Signature, Term};
