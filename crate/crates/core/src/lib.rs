pub mod bias;
pub mod bitset;
pub mod bracelets;
pub mod constructions;
pub mod error;
pub mod examples;
pub mod graph;
pub mod io;
pub mod matroid;
pub mod tripartition;
pub mod verify;
