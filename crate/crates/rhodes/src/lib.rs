//! File formats, DOT export and the command-line driver for `rhodes-core`.

pub mod app;
pub mod dot;
pub mod format;
