//! JSON formats, a multi-threaded census and the `mscoh` command-line front
//! end built on [`mscoh_core`].

pub mod cli;
pub mod json;
pub mod parallel;
