//! The `pdot` command line and the dynamic soundness harness.

pub mod app;
pub mod gamma;
pub mod harness;
pub mod load;

pub use app::{env_fuel, execute, Cli, Command, Exit, Report};
