//! Command-line tools and the local session service for `clusterlab`.

pub mod commands;
pub mod presets;
pub mod render;
pub mod service;
