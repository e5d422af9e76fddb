//! Exact engine for cyclic (m,n)-parking functions, the chain operators
//! `h`, `hhat`, `hbar`, their noncommutative determinants, and a
//! symmetric-function oracle built on modified Macdonald polynomials.

pub mod bijection;
pub mod checks;
pub mod ehaops;
pub mod exactalg;
pub mod macdonald;
pub mod paths;
pub mod symcore;
