//! Exact-arithmetic toolkit for generalized Reed-Solomon codes,
//! error-correcting pairs and Schur-product bounds over small finite fields.
//!
//! Everything here is exact: fields are tiny (order capped at 2^16),
//! distances are computed by exhaustive enumeration under an explicit
//! budget, and all predicates are decision procedures, never estimates.

pub mod code;
pub mod ecp;
pub mod fixtures;
pub mod gf;
pub mod grs;
pub mod io;
pub mod linalg;
pub mod pmds;

pub use code::{LinearCode, SupportSet};
pub use gf::{Field, FieldElement, FieldSpec};
pub use grs::{GrsSpec, Moebius, ProjPoint};

