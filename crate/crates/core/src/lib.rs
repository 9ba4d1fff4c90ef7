//! Non-coherent bit-interleaved coded energy-based modulation with
//! iterative decoding.
//!
//! Information bits are convolutionally encoded, interleaved, grouped into
//! `m`-bit labels and sent as one of `2^m` energy levels over a Rayleigh
//! block-fading channel with `R` receive antennas. The receiver detects
//! energy only, and iterates between a soft demodulator and a BCJR decoder.

pub mod analysis;
pub mod channel;
pub mod codec;
pub mod config;
pub mod constellation;
pub mod demod;
pub mod error;
pub mod harness;
pub mod interleave;
pub mod mapping;
pub mod mapsearch;
pub mod receiver;
pub mod selftest;

pub use error::{Error, Result};
