//! Rational maps between toric varieties, described in Cox coordinates by
//! multi-valued (radical) sections.
//!
//! The crate is `no_std` with `alloc`. Enable the `std` feature to get
//! `std::error::Error` impls on the error types.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod groebner;
pub mod lattice_fan;
pub mod map_calculus;
pub mod polynomial;
pub mod radical_sections;
pub mod scheme_ops;
pub mod toric_variety;
mod util;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational number used for all coefficients.
pub type Rat = BigRational;

/// Cooperative cancellation hook for long Gröbner computations.
pub trait Interrupt {
    fn interrupted(&self) -> bool;
}

/// An [`Interrupt`] that never fires.
#[derive(Clone, Copy, Debug, Default)]
pub struct Never;

impl Interrupt for Never {
    fn interrupted(&self) -> bool {
        false
    }
}

impl<F: Fn() -> bool> Interrupt for F {
    fn interrupted(&self) -> bool {
        self()
    }
}
