//! Library side of the `pfaff` binary: the expression grammar, curve file
//! format, command implementations and report envelope.

pub mod commands;
pub mod curvefile;
pub mod expr;
pub mod report;
