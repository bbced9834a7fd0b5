//! Soft-decision decoding of binary linear block codes by ordered reliability
//! error pattern search: ORDEPT, ORDEPTx, ORBGRAND and Chase II, with
//! Chase-Pyndiah turbo decoding of product codes and a seeded Monte-Carlo
//! harness.

pub mod bdd;
pub mod bits;
pub mod channel;
pub mod code;
pub mod completion;
pub mod config;
pub mod decoders;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod patterns;
pub mod sim;
pub mod turbo;

pub use channel::{ChannelParams, Frame, Received, SnrMetric};
pub use code::{LinearCode, Syndrome};
pub use decoders::{
    Candidate, DecodeResult, DecodeStatus, Decoder, DecoderConfig, Variant,
};
pub use error::{Error, Result};
pub use gf::GaloisField;
pub use matrix::ParityCheckMatrix;
pub use patterns::{Pattern, QueryList};
