//! Minimum fractional-defect colorings of graphs.
//!
//! Every vertex gets a probability vector over `k` colors; the defect of a
//! vertex is its summed color overlap with its neighbors, and the defect of
//! the coloring is the worst vertex. This crate computes the minimum defect
//! `D(G, 2)` exactly, the minimum total defect `TD(G, k)` and the ordinary
//! (monochromatic) defective optimum by brute force, searches larger
//! instances with simulated annealing, and knows the closed forms for the
//! families where the optimum is settled.
//!
//! All reported numbers are exact [`Rational`]s; floats only appear inside
//! the annealing loop and are certified exactly afterwards.

#![allow(clippy::result_large_err)]

pub mod anneal;
pub mod audit;
pub mod coloring;
pub mod exact;
pub mod families;
pub mod graph;
pub mod lp;
pub mod orientation;
pub mod par;
pub mod rational;

pub use anneal::{anneal, seeded_anneal_with_baseline, AnnealConfig, AnnealResult};
pub use audit::{audit, AuditOptions, AuditReport, Conjecture, Verdict};
pub use coloring::{evaluate, DefectReport, FractionalColoring};
pub use exact::{min_defect_2, min_defect_monochromatic, min_total_defect, ExactOptions, ExactResult};
pub use families::{FamilyAnswer, Status};
pub use graph::Graph;
pub use par::Execution;
pub use rational::Rational;
