//! Exact toric geometry for the quotients `C^n / A1(n)`, `n = 4, 5`.
//!
//! `A1(n)` is the group of diagonal sign matrices of determinant one. The
//! crate builds the fans of its Hilbert schemes and crepant resolutions,
//! the chart ideals with their Groebner certificates, and the binomial
//! equations of the singular core, all over exact rationals.

pub mod cli;
pub mod exactlin;
pub mod exec;
pub mod geom;
pub mod ghilb;
pub mod grobner;
pub mod toricideal;
