//! Maker-Breaker total domination games on small graphs: generators, exact solver,
//! constructive strategies and verification campaigns.

pub mod game;
pub mod graph;
pub mod solver;
pub mod strategies;
pub mod verify;
pub mod vset;

pub use vset::VertexSet;
