//! Exact arithmetic for generalized Weierstrass semigroups at several points
//! of the maximal curves `X_{a,b,n,s}` and `Y_{n,s}`.

mod arith;
pub mod curve;
pub mod error;
pub mod gaps;
pub mod maximal;
pub mod membership;
pub mod oracle;
pub mod semigroup;
pub mod sweep;

pub use curve::{derive, CurveParams, DerivedConstants, Family, MonomialExponents, PointVector};
pub use error::{Error, Result};
pub use gaps::GapReport;
pub use maximal::{IndexPair, MaximalElement};
pub use membership::{Membership, MembershipVerdict};
