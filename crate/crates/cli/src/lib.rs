//! File formats, DOT export and input resolution for the `schnyder` binary.

pub mod dot;
pub mod formats;
pub mod input;
