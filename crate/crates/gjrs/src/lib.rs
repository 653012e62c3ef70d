//! Exact local L-factors for general linear groups.
//!
//! The crate models Langlands parameters of essentially square-integrable
//! representations over ℝ, ℂ and non-archimedean local fields, computes
//! standard (Godement-Jacquet) and Rankin-Selberg L-factors as formal
//! products of gamma and Euler atoms with exact rational bookkeeping,
//! decides pole conditions exactly, certifies irreducibility of full theta
//! lifts through the no-pole-at-1/2 criterion, and brute-force-verifies
//! the underlying pole propagation laws over finite parameter grids.
//!
//! Layering, bottom up: [`rational`] (exact scalars), [`params`] (blocks
//! and products), [`lfactor`] (atom algebra), [`tensor`] (Weil-Deligne
//! calculus and Rankin-Selberg factors), [`predicates`] (decision layer),
//! [`sweeps`] (grid verification), [`numeric`] (floating-point oracle),
//! [`parse`]/[`report`] (surface syntax and JSON reports).

pub mod lfactor;
pub mod numeric;
pub mod params;
pub mod parse;
pub mod predicates;
pub mod rational;
pub mod report;
pub mod sweeps;
pub mod tensor;
