//! Proof kernel for a multi-type display calculus of agents, actions and
//! functionalities.

pub mod checker;
pub mod conservativity;
pub mod cutelim;
pub mod display;
pub mod metatheory;
pub mod rules;
pub mod syntax;
pub mod translate;
