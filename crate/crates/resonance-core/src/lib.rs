//! Exact-arithmetic workbench for Koszul modules and resonance schemes.
//!
//! Everything here is computed over the rationals with arbitrary precision;
//! there is no floating point anywhere. The crate is organized around a
//! pipeline: exact linear algebra ([`matrix`], [`modular`], [`subspace`]),
//! the multilinear bases and Koszul differentials ([`multilinear`]), the
//! graded-module engine ([`engine`]), component analysis ([`resonance`]),
//! the graph layer for right-angled Artin groups ([`raag`]), and closed-form
//! big-integer evaluators ([`closed_forms`]).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `resonance-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod closed_forms;
pub mod engine;
pub mod error;
pub mod matrix;
pub mod modular;
pub mod multilinear;
pub mod poly;
pub mod raag;
pub mod rat;
pub mod resonance;
pub mod subspace;

pub use engine::{HilbertTable, IdealSlice, KoszulEngine};
pub use error::{Error, Result};
pub use matrix::Mat;
pub use modular::RankMode;
pub use multilinear::{Bivector, PairSpec};
pub use poly::MultiPoly;
pub use raag::Graph;
pub use rat::{Int, Rat};
pub use resonance::{ComponentReport, SubspaceSpec};
pub use subspace::SubspaceBasis;
