//! Catalogs, configuration, reports and the command-line front end for
//! `eichler-core`.

pub mod catalog;
pub mod cli;
pub mod config;
pub mod error;
pub mod report;
pub mod session;

pub use config::{Config, OutputFormat};
pub use error::{Error, Result};
pub use session::Session;
