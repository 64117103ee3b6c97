//! File formats, random generators, SVG rendering and the command-line
//! surface of the `treemorph` tool.

pub mod cli;
pub mod gen;
pub mod io;
pub mod render;
