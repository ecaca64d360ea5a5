//! Exact exterior calculus over Gaussian rationals, with three layers on
//! top of it:
//!
//! - [`integrability`]: classify the distribution of a polynomial 1-form —
//!   the Frobenius 3-form `ω ∧ dω`, the minimal class `k` with
//!   `ω ∧ (dω)^k ≡ 0`, and the bracket criterion behind Cartan's formula.
//! - [`planner`]: synthesize admissible curves and broken lines connecting
//!   points for the standard contact forms, with exact residual
//!   verification, plus Legendrian charts from generating functions.
//! - [`numeric`]: floating-point reachability for general Pfaffian
//!   systems — kernel-projected path integration, invariant drift, and
//!   seeded endpoint sampling that exhibits the connectivity/integrability
//!   dichotomy.
//!
//! All symbolic values are immutable after construction and every
//! operation is a pure function of its inputs, so the whole crate is safe
//! to drive from multiple threads.

pub mod error;
pub mod form;
pub mod integrability;
pub mod map;
pub mod numeric;
pub mod planner;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod space;
pub mod vfield;

pub use error::{Error, Result};
pub use form::KForm;
pub use map::PolyMap;
pub use poly::Poly;
pub use scalar::CScalar;
pub use space::VarSpace;
pub use vfield::VField;
