//! Command-line front end for `mukai-bn`: argument and config parsing, CSV and
//! JSON emitters, and the golden-table regression check.

pub mod app;
pub mod args;
pub mod config;
pub mod golden;
pub mod output;

pub use app::run;
