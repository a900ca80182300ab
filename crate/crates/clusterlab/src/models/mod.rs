//! Combinatorial sources of quivers and seeds.

pub mod bipartite;
pub mod double_wiring;
pub mod projective;
pub mod triangulation;
pub mod wiring;
