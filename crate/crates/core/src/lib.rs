//! Exact SUBSET-SUM solving, instrumented.
//!
//! This crate decides whether some 0/1 selection of integer weights hits a
//! target sum, and it counts the element operations each decision procedure
//! spends while doing so. It provides:
//!
//! * a brute-force oracle and a meet-in-the-middle solver over sorted
//!   half-set sum tables ([`solvers`], [`halfsum`]);
//! * three strategies for deciding an `(n+1)`-weight instance through its
//!   two related `n`-weight subproblems, whose costs land at 12, 9, and 8
//!   units for odd `n` ([`solvers`], [`costmodel`]);
//! * deterministic instance generators for a restricted weight family and
//!   bit-exact instance file formats ([`instances`]);
//! * benchmark records and a log₂ exponent fit for reading growth rates out
//!   of measured counts ([`report`]).
//!
//! The `subsetsum` binary in this workspace wraps all of it into `solve`,
//! `gen`, `verify`, `compare`, `bench`, and `fit` subcommands. A longer
//! guided tour lives in the `book/` directory; its code snippets compile
//! and run as part of this crate's doctests.
//!
//! ```
//! use subsetsum::{solvers, verify, Instance};
//!
//! let inst = Instance::new(vec![8, -3, 5, 2], 10).unwrap();
//! let report = solvers::meet_in_middle(&inst).unwrap();
//! assert!(verify(&inst, report.verdict.certificate().unwrap()));
//! assert_eq!(report.cost.elements_sorted, 8);
//! ```

pub mod costmodel;
pub mod halfsum;
pub mod instances;
mod problem;
pub mod report;
pub mod solvers;

pub use problem::{
    dot, verify, CapacityError, Certificate, Instance, InstanceError, Verdict, Wide,
    MAGNITUDE_BUDGET,
};

// Run every code block in the book as a doctest, one module per chapter so
// a failure names its chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/subset-sum.md")]
    mod subset_sum {}
    #[doc = include_str!("../../../book/src/meet-in-the-middle.md")]
    mod meet_in_the_middle {}
    #[doc = include_str!("../../../book/src/pair-strategies.md")]
    mod pair_strategies {}
    #[doc = include_str!("../../../book/src/cost-model.md")]
    mod cost_model {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances_chapter {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/scaling.md")]
    mod scaling {}
}
