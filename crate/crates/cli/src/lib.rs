//! Problem files, the family gallery and the `clpw` command implementations.

pub mod commands;
pub mod gallery;
pub mod syntax;
