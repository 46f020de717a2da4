//! Exact concordance invariants for knots built from torus knots by mirror,
//! connected sum and (2,q)-cabling, together with the crossing-change
//! obstructions they certify.
//!
//! ```
//! use knotcert::{invariants, parse, Knowledge};
//!
//! let rec = invariants(&parse("cable(2,3,torus(2,-5))").unwrap()).unwrap();
//! assert_eq!(rec.sigma, -2);
//! assert_eq!(rec.tau, Knowledge::Exact(-2));
//! assert_eq!(rec.epsilon, Knowledge::Exact(-1));
//! ```

pub mod braid;
pub mod cache;
pub mod cli;
pub mod expr;
pub mod invariants;
pub mod knowledge;
pub mod laurent;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod selftest;
pub mod verdict;

pub use braid::{BraidError, BraidWord};
pub use expr::{parse, ExprError, KnotExpr};
pub use invariants::{invariants, Engine, EngineError, InvariantRecord};
pub use knowledge::Knowledge;
pub use laurent::LaurentPoly;
pub use linalg::{IntMatrix, LinalgError};
pub use verdict::{Verdict, VerdictBundle, VerdictError};
