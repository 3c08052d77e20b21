//! IDEA-based cryptographic toolkit for an electronic citizen-card registry.
//!
//! The crate is organised in layers. [`idea`] implements the 64-bit block
//! cipher itself. [`cfb`] turns it into a byte-granular stream cipher and a
//! deterministic pseudo-random generator. [`keygen`] derives 128-bit session
//! keys from a password using a small genetic algorithm. On top of those,
//! [`registry`] keeps an encrypted card register on disk and [`net`] moves
//! card commands between a client and a registry server over TCP. [`config`]
//! reads the shared key=value configuration file.

pub mod cfb;
pub mod config;
pub mod idea;
pub mod keygen;
pub mod net;
pub mod registry;

pub use idea::{Block64, Key128, SubKeys};
