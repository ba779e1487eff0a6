//! Exact-arithmetic laboratory for a family of twisted unipotent groups over
//! finite fields: point counts of the associated Lang-map preimage varieties,
//! reduced-norm morphisms, and the character theory of the finite groups of
//! rational points, all verified against closed-form predictions.
//!
//! The crate is `no_std` (with `alloc`): it performs no IO and owns no
//! threads. The companion CLI crate layers file formats, parallel sweeps and
//! reporting on top.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chars;
pub mod cyclo;
pub mod field;
pub mod norm;
pub mod rng;
pub mod unipotent;
pub mod variety;
