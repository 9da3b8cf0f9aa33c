//! Training-free quantum architecture search guided by landscape fluctuation.
//!
//! The crate is `no_std` + `alloc`. The `std` feature (default) enables
//! `std::error::Error` plumbing in dependencies, `parallel` adds rayon-based
//! sampling, and `serde` derives (de)serialization for the circuit model.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod bits;
pub mod budget;
pub mod circuit;
pub mod fluctuation;
pub mod layergen;
pub mod math;
pub mod pauli;
pub mod rng;
pub mod search;
pub mod stabilizer;
pub mod vqe;
