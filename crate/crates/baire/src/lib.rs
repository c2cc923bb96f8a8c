//! A workbench for resource-accounted oracle Turing machines.
//!
//! The library has three layers:
//!
//! * **Polynomial calculus** ([`poly`]): multivariate polynomials with natural
//!   coefficients arranged into description trees. A description tree denotes a
//!   functional `(l, n) -> N` where `l` is a monotone length function; the
//!   trees are closed under sum, product, application of the length argument,
//!   and both composition operators, and every tree yields a *majorant* — a
//!   pair `(N, p)` of tree height and a univariate polynomial that bounds the
//!   denoted functional through `N`-fold iteration of `p`.
//! * **Machines and oracles** ([`machine`], [`oracle`]): an instruction-graph
//!   interpreter for oracle Turing machines with exact unit-cost step
//!   accounting and a one-step query convention, plus total string oracles
//!   (finite tables, closed-form patterns, and adaptive adversaries) with
//!   exact or lower-bounded size functions.
//! * **Resource analysis** ([`resources`], [`transform`], [`gallery`]): traces
//!   with length-revision profiles, checkers for step-counts, running-time
//!   bounds and Cook-style `opt` bounds, machine transformers (composition,
//!   two clocking schemes, retraction of oracles onto the length-monotone
//!   fragment), and a gallery of example machines together with the
//!   adversarial oracle constructions that defeat them.
//!
//! Frozen measurement constants live in [`frozen`]; deterministic sample
//! generators for sweeps live in [`sample`].

pub mod bits;
pub mod calibrate;
pub mod frozen;
pub mod gallery;
pub mod machine;
pub mod oracle;
pub mod poly;
pub mod resources;
pub mod sample;
pub mod transform;

pub use bits::BitString;
pub use oracle::Oracle;
pub use poly::{Description, LengthFn, Majorant, MultiPoly, UniPoly};
pub use resources::{Trace, Verdict};
