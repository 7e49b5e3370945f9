//! Exact arithmetic for multi-variable subordination distributions.
//!
//! The crate is organised bottom-up:
//!
//! * [`ncpart`]: non-crossing partitions, the orders `<=` and `<<`,
//!   interval hulls and special blocks;
//! * [`ncseries`]: truncated noncommutative power series and generalized
//!   coefficients;
//! * [`dist`]: distributions with their moment / R / eta dictionary and the
//!   convolution transforms;
//! * [`subord`]: `mu ⊳ nu` by series algebra and by four partition sums;
//! * [`fock`]: a truncated full Fock space operator model;
//! * [`cauchy1d`]: one-variable Cauchy transforms and series reversion;
//! * [`identities`] and [`random`]: named identity checks and the seeded
//!   generator that drives them.
//!
//! All coefficients are [`Rational`]s; every identity is checked by exact
//! equality.

pub mod cauchy1d;
pub mod dist;
pub mod error;
pub mod fock;
pub mod identities;
pub mod ncpart;
pub mod ncseries;
pub mod random;
pub mod subord;

pub use num_rational::BigRational as Rational;

pub use dist::{delta, point_mass, semicircular, Distribution};
pub use error::{Error, Result};
pub use ncpart::{enumerate_nc, interval_partitions, BlockKind, Colouring, NcPartition};
pub use ncseries::{cf, cf_mixed, cf_partition, NcSeries, Word};
pub use subord::{boxright, gamma_boxright, subordination_of_power};
