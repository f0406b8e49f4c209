//! Command-line front end: the JSON algebra format, verification suites and
//! the multi-threaded census.

pub mod app;
pub mod document;
pub mod parallel;
pub mod randomize;
pub mod verify;

pub use app::run;
