//! Exact and numeric toolkit for projectively equivariant rational maps,
//! Schwarzian-type operators, modular q-series and their matrix-valued
//! analogues.

pub mod dynamics;
pub mod exact;
pub mod moebius;
pub mod ncalg;
pub mod operators;
pub mod qseries;
pub mod random;
pub mod suites;
