//! Secrecy performance of a HAPS-relayed FSO-RF satellite downlink.
//!
//! A LEO satellite talks to a ground station through a stratospheric relay:
//! the space segment is a free-space optical link under Gamma-Gamma
//! turbulence with pointing errors, the ground segment is an RF link under
//! shadowed-Rician fading, and a terrestrial eavesdropper listens on the RF
//! side. This crate computes the secrecy outage probability (SOP) and the
//! probability of positive secrecy capacity (PPSC) of that system three
//! independent ways:
//!
//! * closed forms built on a general real-argument Meijer G-function
//!   evaluator ([`special::meijer_g`]),
//! * direct adaptive quadrature of the defining integrals,
//! * a Monte Carlo simulator that samples the physical channel models.
//!
//! The [`turbulence`] module derives the Gamma-Gamma severity parameters
//! from link geometry (refractive-index profile, Rytov variance), and
//! [`verify`] packages the cross-method agreement checks used by the
//! acceptance suite and the `verify` CLI subcommand.

pub mod channels;
mod dd;
pub mod error;
pub mod monte_carlo;
pub mod quad;
pub(crate) mod rng;
pub mod secrecy;
pub mod special;
pub mod turbulence;
pub mod verify;

pub use error::{Error, Result};
