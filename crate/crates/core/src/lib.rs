//! Verification laboratory for the sequential topology generated by the
//! limsup convergence on complete Boolean algebras.
//!
//! The crate implements the convergence-to-topology machinery (closure
//! tower, maximal topology, sequential closure), the upset-topology
//! closed-set calculus (minimal-generator representation, decreasing-chain
//! operator, closed-form closures and limits), and a Boolean-value
//! evaluator for the name formulas that reduce to lattice computations —
//! all on two computable carriers: finite power-set algebras and the
//! ultimately periodic fragment of the power set of the naturals. Every
//! law that is decidable at desk scale ships with an exhaustive or seeded
//! verification suite; see [`suites::available_suites`].

pub mod carrier;
pub mod convergence;
pub mod error;
pub mod forcing;
pub mod parse;
pub mod report;
pub mod seq;
pub mod suites;
pub mod upset;

pub use carrier::{Carrier, Element, SetClass, UPSet};
pub use error::{Error, Result};
pub use seq::{AffineMap, IndexMap, InfValueSet, SeqDescriptor};
pub use upset::{DecTrace, UpsetFD};
