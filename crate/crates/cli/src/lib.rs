//! Report model and rendering for the `flag-einstein` command line tool.

pub mod render;
pub mod report;

pub use render::{render, sig6};
pub use report::{RunReport, NUMBERING, SCHEMA};
