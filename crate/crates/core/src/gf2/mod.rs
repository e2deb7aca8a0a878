//! Linear algebra over GF(2) and binary linear codes.

mod code;
mod matrix;

pub use code::{enumerate_codes, LinearCode, WeightDistribution, MAX_ENUM_CODES_LEN, MAX_ENUM_DIM};
pub use matrix::{BinaryMatrix, MAX_COLS};
