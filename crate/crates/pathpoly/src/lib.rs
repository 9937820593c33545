//! Exact toolkit for the fixed-length directed (0,n)-path polytope: inequality
//! families with closed-form validity/facet predicates, enumeration oracles,
//! rank-based facet verification, lifting constructions, separation routines,
//! and an exact rational cutting-plane/branch-and-bound solver.

pub mod enumerate;
pub mod equiv;
pub mod error;
pub mod families;
pub mod graph;
pub mod ineq;
pub mod rational;
