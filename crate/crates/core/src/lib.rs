//! A verification workbench for classical propositional logic presented over
//! literals: duality, natural deduction with de Morgan and exclusion rules,
//! derivability in atomic bases, base-extension support, and the simulation
//! bases that connect support to truth tables.

pub mod bases;
pub mod calculus;
pub mod cli;
pub mod semantics;
pub mod simulation;
pub mod support;
pub mod syntax;
