//! The user surface of the toolkit: the structure DSL, element
//! expressions, batch commands, DOT emission, and report formats.

pub mod commands;
pub mod dot;
pub mod dsl;
pub mod expr;
