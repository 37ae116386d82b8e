//! Subjective Logic opinions, the classical binomial operators, the planar
//! geometry of the opinion triangle, and a trustworthiness–confidence
//! combination operator with an empirical requirement auditor.

pub mod audit;
pub mod cli;
pub mod combine;
pub mod consts;
pub mod frame;
pub mod geometry;
pub mod operators;
pub mod opinion;
pub mod plot;

pub use combine::{combine, combine_traced, CombinationTrace};
pub use frame::{Frame, FrameError, MassAssignment, Subset};
pub use geometry::{CartesianPoint, OpinionAngles};
pub use operators::{apply, operator_domain, OperatorId, Undefined};
pub use opinion::{Opinion, OpinionError, OpinionKind};
