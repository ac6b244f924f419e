//! Rigorous bounds on commutator length and stable commutator length.
//!
//! The crate is `no_std` (it needs `alloc`). Enabling the `parallel` feature
//! pulls in `std` and rayon for the exhaustive scans; results do not depend on
//! the thread count.
//!
//! * [`words`]: reduced and cyclic words in a free group of finite rank.
//! * [`quasimorphism`]: Brooks counting quasimorphisms, symmetrization,
//!   homogenization, observed defects and rotation numbers of circle lifts.
//! * [`scl`]: commutator certificates, meet-in-the-middle `cl` search and
//!   two-sided `scl` reports.
//! * [`hyperbolic`]: closed-form tube, surgery and spectral gap estimates.
//! * [`sol`]: arithmetic in `Z^2 x|_A Z` and explicit commutator certificates.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod group;
pub mod hyperbolic;
pub mod quasimorphism;
pub mod rational;
pub mod scl;
pub mod sol;
pub mod words;

pub use group::{Certificate, CertificateError, FreeGroup, Group};
pub use rational::{ExtRational, Rational};
pub use words::{CyclicWord, Letter, ReducedWord, WordError};
