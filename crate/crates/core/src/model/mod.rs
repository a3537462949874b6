//! Text model format, built-in examples and check reports.

pub mod document;
pub mod parse;
pub mod report;
pub mod zoo;

pub use document::{Model, ModelDocument, ModelError, RepsysModel};
pub use parse::{parse, ParseError};
pub use report::{Record, Report};
pub use zoo::{zoo, zoo_model, ZooModel};
