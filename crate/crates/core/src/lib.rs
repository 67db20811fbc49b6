//! Exact invariants of reduced plane projective curves, their singularities
//! and the foliations of the projective plane having them as leaves.

pub mod exactalg;
pub mod blowup;
pub mod curve;
pub mod localring;
pub mod foliation;
pub mod bounds;
pub mod cli;
