//! Command-line and HTTP front ends over the quiverlab engine.

pub mod api;
pub mod input;
pub mod server;
