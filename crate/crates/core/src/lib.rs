//! Option pricing on the recombining trinomial lattice induced by the
//! degree-5 cubature formula on Wiener space.
//!
//! The crate is split along the pricing pipeline:
//!
//! * [`analytic`] holds the Black–Scholes and Black-76 closed forms used as
//!   reference prices.
//! * [`cubature`] holds the three-trajectory degree-5 formula and the
//!   single-period pricer built directly on its endpoints.
//! * [`lattice`] builds the trinomial tree (with the spread parameter `c`),
//!   prices European and American options on it, and provides the CRR
//!   binomial baseline.
//! * [`experiments`] runs parameter sweeps and collects them into
//!   [`SweepReport`]s.

pub mod analytic;
pub mod cubature;
mod error;
pub mod experiments;
pub mod lattice;
mod types;

pub use error::{Error, Result};
pub use experiments::{SweepKind, SweepMeta, SweepReport, SweepRow};
pub use lattice::{LatticeFactors, TerminalDistribution};
pub use types::{ExerciseStyle, MarketParams, ModelKind, OptionKind, OptionSpec};
