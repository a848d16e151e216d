//! A proof kernel and toolset for intuitionistic natural deduction modulo:
//! proofs are checked up to a congruence generated by term and proposition
//! rewrite rules, so computation (e.g. arithmetic on numerals) happens during
//! checking instead of by explicit equational reasoning.
//!
//! The crate provides:
//!
//! - first-order syntax and intuitionistic propositions ([`syntax`]),
//! - a rewrite engine and the fuel-bounded congruence test ([`rewrite`]),
//! - built-in presentations of Heyting arithmetic, from the fully axiomatic
//!   one down to one with no axioms at all ([`theory`]),
//! - proof terms and the checker ([`proof`], [`kernel`]),
//! - cut elimination by proof-term reduction ([`reduce`]),
//! - finite Heyting-algebra semantics and countermodel search ([`heyting`]),
//! - translations: relativization to a numeric predicate, and Goedel's
//!   System T compiled to proof terms ([`translate`]),
//! - parsing and file formats ([`parse`], [`script`]), a worked corpus of
//!   proofs ([`corpus`]), random generators for testing ([`generate`]), and
//!   the command-line interface ([`cli`]).
//!
//! Start with the examples directory: each example is a small, runnable tour
//! of one capability.

pub mod cli;
pub mod corpus;
pub mod generate;
pub mod heyting;
pub mod kernel;
pub mod parse;
pub mod proof;
pub mod reduce;
pub mod rewrite;
pub mod script;
pub mod syntax;
pub mod theory;
pub mod translate;

pub use proof::ProofTerm;
pub use rewrite::{Fuel, RuleSet};
pub use syntax::{Prop, Signature, Sort, Term, Var};
pub use theory::Theory;
