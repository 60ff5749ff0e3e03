//! Optimal one-sided polynomial approximants of circular arcs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arc;
mod dd;
pub mod error;
pub mod oracle;
pub mod radial;
pub mod report;
pub mod roots;
pub mod solvers;

pub use arc::{CaseId, CircularArc, Family, Side, SolverParams};
pub use error::{ArcError, Result};
pub use solvers::{solve, ApproximantResult};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/arcs.md")]
    struct Arcs;
    #[doc = include_str!("../../../book/src/radial-error.md")]
    struct RadialError;
    #[doc = include_str!("../../../book/src/families.md")]
    struct Families;
    #[doc = include_str!("../../../book/src/oracle.md")]
    struct Oracle;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
