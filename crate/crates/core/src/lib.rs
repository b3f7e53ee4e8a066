//! Rooted-tree Hopf algebras, combinatorial Dyson–Schwinger equations, and
//! trees over polynomial functors with their folds.
//!
//! * [`trees`]: canonical unordered rooted trees and forests.
//! * [`hopf`]: the Connes–Kreimer Hopf algebra and law checks.
//! * [`dse`]: order-by-order solver for `X = 1 + Σ w α^a B₊(X^m)`.
//! * [`ptrees`]: planar signatures, P-tree enumeration, Kleene layers, core.
//! * [`opbialg`]: the bialgebra of P-trees, Green functions, Faà di Bruno.
//! * [`wtypes`]: folds as eliminators, computation-rule and uniqueness checks.

pub mod dse;
pub mod error;
pub mod hopf;
pub mod linear;
pub mod opbialg;
pub mod ptrees;
pub mod report;
pub mod trees;
pub mod wtypes;

pub use dse::{solve, DseSpec, DseTerm, Series};
pub use error::{Error, Result};
pub use hopf::{HckElem, HckTensor};
pub use linear::{LinComb, Pair, Rational};
pub use opbialg::{GreenSeries, OpElem, OpForest, OpTensor};
pub use ptrees::{Grading, Operation, PTree, Signature};
pub use report::{CheckReport, Status};
pub use trees::{CombTree, Forest};
pub use wtypes::FoldAlgebra;
