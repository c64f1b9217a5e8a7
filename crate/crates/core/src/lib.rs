pub mod arrowset;
pub mod lattice;
pub mod basis;
pub mod closure;
pub mod enumerate;
pub mod invariants;
pub mod rainbow;
pub mod cli;
