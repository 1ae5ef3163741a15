//! Command-line tools and the local JSON service.

pub mod analyze;
pub mod cli;
pub mod frame;
pub mod responses;
pub mod service;
pub mod simulate;
