//! Exact replay and regeneration of the dual certificates behind the type III density bound.

pub mod cases;
pub mod certificate;
pub mod closed_form;
pub mod error;
pub mod interval;
pub mod problem;
pub mod simplex;
pub mod solve;
pub mod trig;
pub mod verify;

pub use certificate::{amended_certificates, parse_rational, published_certificates, DualCertificate};
pub use error::{LpError, Result};
pub use interval::Interval;
pub use problem::{build_primal, ExtraRow, LpProblem};
pub use solve::{solve_and_certify, Certified};
pub use trig::cos_enclosure;
pub use verify::{replay, verify_dual_certificate, Replay, Route};

/// Default working precision in bits.
pub const DEFAULT_BITS: u32 = 96;
