//! Executable finite-scale semantics for Heyting-Lewis logic: intuitionistic
//! propositional logic extended with a strict implication `~>` interpreted by
//! a second frame relation.
//!
//! The crate covers
//! - ASTs, parsing and printing for the strict-implication language and for
//!   classical bimodal logic ([`syntax`], [`parse`], [`axioms`]),
//! - finite strict-implication frames and bimodal frames with validators,
//!   fixtures and an exhaustive enumerator ([`frames`], [`enumerate`]),
//! - truth sets and frame validity for both languages ([`semantics`]),
//! - finite HL-algebras, complex algebras, prime-filter duality ([`algebra`]),
//! - the box-prefixing translation into bimodal logic together with the frame
//!   transforms `sigma_hat`/`rho_hat` and their preservation checks
//!   ([`translation`]),
//! - selective-filtration submodel constructions ([`fmp`]), and
//! - bounded countermodel search plus axiom/frame-condition correspondence
//!   checks ([`decide`]).
//!
//! Everything operates on explicit finite structures; worlds are capped at 64
//! per frame so that world sets are single machine words.

pub mod algebra;
pub mod axioms;
pub mod decide;
pub mod enumerate;
pub mod fmp;
pub mod frames;
pub mod gen;
pub mod io;
pub mod parse;
pub mod semantics;
pub mod sets;
pub mod syntax;
pub mod translation;

pub use algebra::HLAlgebra;
pub use axioms::{AxiomFormula, AxiomName};
pub use frames::{
    Frame, FrameCondition, GeneralS4KFrame, GeneralStoFrame, S4KFrame, StoFrame,
};
pub use semantics::{Model, Validity, Valuation};
pub use syntax::{BiFormula, Formula};
