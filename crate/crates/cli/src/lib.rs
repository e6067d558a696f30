//! Command layer of the `filtra` tool: workspace files in, JSON documents out.

pub mod commands;
pub mod workspace;
