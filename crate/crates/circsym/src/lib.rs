//! Reports, file formats and the command runner behind the `circsym`
//! binary. The mathematics lives in `circsym-core`.

pub mod app;
pub mod dto;
pub mod render;
pub mod table3;
