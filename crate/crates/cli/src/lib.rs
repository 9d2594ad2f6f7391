//! File formats, run manifests, and command implementations behind the
//! `veloembed` binary. The binary itself only parses arguments and
//! dispatches here, which keeps every command testable as a function.

pub mod commands;
pub mod formats;
pub mod manifest;
