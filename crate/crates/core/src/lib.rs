//! Bounds on covering numbers of polynomially defined sets, and the
//! machinery around them.
//!
//! The crate evaluates, always in nats, the covering-number bound for
//! `(K, n)`-regular sets together with regularity profiles for polynomial
//! images, varieties, rational images and semialgebraic sets. On top of
//! that it provides
//!
//! * tubular-volume and hit-probability bounds ([`bounds`]),
//! * CP-rank covering bounds and the random-tensor angle bound ([`tensor`]),
//! * sub-Gaussian and subsampled-Hadamard sketches plus the sketching
//!   dimensions that make them norm-preserving on polynomial images
//!   ([`sketch`]),
//! * plain and sketched Gauss-Newton for `min ||p(x)||` ([`polyopt`]),
//! * Rademacher and generalization bounds for rational and ReLU networks
//!   ([`nnbound`]),
//! * Monte-Carlo oracles that check every bound against empirical truth
//!   at desk scale ([`verify`]).
//!
//! All randomness flows from an explicit [`RngSeed`]; parallel loops derive
//! one stream per work item so results do not depend on thread count.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod logreal;
pub mod nnbound;
pub mod poly;
pub mod polyopt;
pub mod regularity;
pub mod seed;
pub mod sketch;
pub mod tensor;
pub mod verify;

pub use bounds::{BoundReport, ValueDomain};
pub use error::{Error, Result};
pub use logreal::LogReal;
pub use poly::{PolynomialMap, Term};
pub use regularity::RegularityProfile;
pub use seed::RngSeed;
pub use sketch::SketchOperator;

/// Default for every unspecified absolute constant in the bounds.
pub const DEFAULT_CONSTANT: f64 = 3.0;
