//! Fuzzy numbers, difference sequences and lacunary summability of order β.
//!
//! Everything in this crate is pure computation over `alloc`; no IO, no
//! threads, no global state. The `fuzzyseq` crate layers file formats, the
//! experiment harness and the command-line front end on top of it.
//!
//! The building blocks, bottom-up:
//!
//! * [`Interval`] and [`FuzzyNumber`]: α-cut arithmetic and the supremum metric.
//! * [`FuzzySequence`] and [`Difference`]: lazy sequences and the Δ^m transform.
//! * [`ExampleId`]: the four reference sequences with their closed-form α-cuts.
//! * [`LacunaryStructure`]: θ = (k_r) with blocks, lengths and ratios.
//! * [`estimators`]: block densities, strong means, Cesàro means, modulus means.
//! * [`verdict`]: finite-horizon classification of a statistic series.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod catalog;
pub mod estimators;
mod fuzzy;
mod interval;
pub mod lacunary;
pub mod math;
pub mod modulus;
pub mod sequence;
pub mod verdict;

pub use catalog::{CatalogSequence, ExampleId, PureClass};
pub use estimators::{
    BlockStatistic, Exponent, OrderParams, ParamError, RangeTotals, StatisticKind,
};
pub use fuzzy::{
    AxiomViolation, FuzzyError, FuzzyNumber, SampledGrid, Trapezoid, Validity, DEFAULT_GRID_LEVELS,
};
pub use interval::Interval;
pub use lacunary::{GrowthPolicy, LacunaryError, LacunaryRule, LacunaryStructure};
pub use modulus::{check_modulus, ModulusFunction, ModulusReport, ModulusViolation};
pub use sequence::{
    Difference, DifferenceWindow, FuzzySequence, IndexClass, Rule, RuleError, RuleSequence,
    TabulatedSequence,
};
pub use verdict::{verdict, Thresholds, Verdict, VerdictError, VerdictKind};
