//! Exact cumulants and moments of insertion thresholds for random
//! Poissonized Young tableaux.
//!
//! A Poissonized tableau of shape `λ` is a filling of the Young diagram of
//! `λ` with distinct reals from `[0, 1]` that increases weakly along rows and
//! strictly up columns.  Row-inserting a value `z ∈ [0, 1]` into such a
//! tableau creates one new box; recording the Russian coordinate
//! `u = column − row` of that box as a function of `z` yields a weakly
//! increasing step function, and the *insertion threshold* `F_T(u₀)` is the
//! smallest `z` whose new box lands strictly to the right of `u₀`.  When the
//! filling is random (uniform given the shape), `F_T(u₀)` is a random
//! variable whose moments and cumulants are exactly computable rational
//! numbers.
//!
//! This crate computes those quantities exactly and estimates them by
//! simulation:
//!
//! * [`diagram`] — Young diagrams, corner profiles in Russian coordinates,
//!   the associated Cauchy transform and transition measure, hook-length
//!   counting, and profile perturbation.
//! * [`tableau`] — Poissonized and standard tableaux, Schensted row
//!   insertion, insertion coordinates, and exact threshold evaluation.
//! * [`growth`] — corner growth of diagrams, probabilities of growth paths
//!   under the transition measure, the exact moment oracle, and the
//!   product formula for multi-box growth steps.
//! * [`graphs`] — vertex-colored weighted digraphs: non-crossing alternating
//!   trees, caterpillar graphs, spines and multi-spines, decorations of
//!   vertices by measure atoms, and evaluation of the associated rational
//!   weight functions.
//! * [`cumulants`] — exact cumulant formulas summed over tree families,
//!   moment formulas summed over interlacing sequences, the
//!   cumulant/moment transforms over set partitions, a priori cumulant
//!   bounds, and the tree-sum kernels used by the unbiased estimator.
//! * [`montecarlo`] — reproducible parallel samplers for uniform standard
//!   and Poissonized tableaux, threshold sampling, the unbiased cumulant
//!   estimator, and the rescaled-rectangle experiment.
//!
//! All exact arithmetic uses arbitrary-precision rationals
//! ([`rational::Rational`]); floating point appears only in Monte Carlo
//! summaries.  Sampling is deterministic for a fixed seed regardless of
//! thread count.

#![forbid(unsafe_code)]

pub mod cumulants;
pub mod diagram;
pub mod error;
pub mod graphs;
pub mod growth;
pub mod montecarlo;
pub mod rational;
pub mod tableau;

pub use error::{Error, Result};
pub use rational::Rational;
