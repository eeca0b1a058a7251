//! Independent certification of unknottedness: breadth-first Reidemeister
//! reduction and the Kauffman bracket.

mod bracket;
mod canon;
mod knot;
mod moves;
mod search;

pub use bracket::{kauffman_bracket, normalized_bracket, raw_bracket, BracketPolynomial, BRACKET_BOUND};
pub use canon::{canonical_code, canonical_resolved_code};
pub use knot::{Pass, PlanarKnot};
pub use moves::{Move, MoveKind};
pub use search::{
    reduce_knot, reidemeister_reduce, MoveTrace, Reduction, SearchBudget, TraceStep, DEFAULT_CROSSING_BOUND,
    DEFAULT_MAX_STATES,
};
