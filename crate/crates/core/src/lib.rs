//! Exact McKay-correspondence computations for finite subgroups of `SL(n, C)`.
//!
//! Everything is exact: rationals, cyclotomic fields and rational functions in
//! the Tate class `L`. The modules build on each other roughly in this order:
//! [`arith`], [`group`], [`rep`], [`age`], [`toric`], [`stringy`], [`arcs`],
//! [`cluster`] and [`invariants`].

pub mod age;
pub mod arcs;
pub mod arith;
pub mod cluster;
pub mod expr;
pub mod group;
pub mod invariants;
pub mod rep;
pub mod stringy;
pub mod toric;
