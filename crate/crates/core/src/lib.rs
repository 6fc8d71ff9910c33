// SPDX-License-Identifier: Apache-2.0

//! Decoherence and collapse timescales for microtubule quantum states.
//!
//! Three models are evaluated side by side on one [`scenarios::Scenario`]:
//!
//! * the ion-Coulomb timescale `4π ε₀ a³ √(m k T) / (N q_e² s)`,
//! * the dipole timescale `4π ε_r ε₀ a⁴ √(m k T) Ω / (3 q_e p s)`, which
//!   replaces the screened Coulomb interaction by the tubulin dipole,
//! * the gravitational self-energy collapse time `ħ / E`.
//!
//! Every computation runs on [`Quantity`] values so the result dimension is
//! checked, not assumed.

// Error types carry both the expected and the found dimension so messages
// can name them; the extra bytes only matter on the failure path.
#![allow(clippy::result_large_err)]

pub mod decoherence;
pub mod error;
pub mod geometry;
pub mod orchor;
pub mod quantities;
pub mod scalar;
pub mod scenarios;
pub mod screening;

pub use quantities::{Dimension, Exponent, Quantity};
pub use scalar::Real;

pub type Quantity64 = Quantity<f64>;
pub type Quantity32 = Quantity<f32>;
pub type Constants64 = quantities::ConstantsTable<f64>;
pub type Constants32 = quantities::ConstantsTable<f32>;
