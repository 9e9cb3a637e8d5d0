//! Exact computation in level-`m` Hecke algebras of split matrix groups over
//! non-Archimedean local fields, and the basis transport between two close
//! fields.
//!
//! The crate is `no_std` and only needs `alloc`. It is layered bottom-up:
//!
//! - [`localfield`]: exact elements of `Q_p(p^{1/e})` and `F_q(t)`, their
//!   valuations, the truncated rings `o/π^N`, and the ring isomorphism
//!   `λ_N : o/π^N → o'/π'^N` between a matched pair of fields.
//! - [`matgrp`]: `GL_n` and `SL_n` over a field model, membership in the
//!   congruence filtration `K ⊃ K_1 ⊃ K_2 ⊃ …`, Cartan factorization
//!   `g = a·n_τ·b` and enumeration of the finite groups `K/K_m`.
//! - [`hecke`]: double coset labels, stabilizers `Γ_τ`, left coset
//!   decompositions and convolution with `μ(K_m) = 1`.
//! - [`kazhdan`]: the transport of labels, Hecke elements and windowed modules
//!   between the two sides of a close pair, and the harness that compares
//!   structure constants.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod hecke;
pub mod kazhdan;
pub mod localfield;
pub mod matgrp;
pub mod matrix;
pub mod random;
pub mod ring;

pub use error::{Error, Result};
