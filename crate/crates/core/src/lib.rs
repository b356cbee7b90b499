//! Exact computations with binary forms: Waring ranks through apolarity,
//! multiple root loci and their duals, the rank strata of suprageneric
//! forms, and the discriminant equation of the hypersurface of forms of
//! degree `2k+1` and rank `k+2`.
//!
//! Everything is exact: the base field is either the rationals or a prime
//! field `F_p`. Randomized procedures take an explicit RNG; the crate uses
//! [`SeedRng`] (ChaCha8 seeded from a `u64`) wherever a default is needed.

pub mod apolarity;
pub mod binpoly;
pub mod error;
pub mod exactla;
pub mod hypersurface;
pub mod partitions;
pub mod scalar;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};

/// The RNG used for all seeded runs.
pub type SeedRng = rand_chacha::ChaCha8Rng;

/// Builds the default RNG from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SeedRng {
    use rand::SeedableRng;
    SeedRng::seed_from_u64(seed)
}
