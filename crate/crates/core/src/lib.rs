//! Finger/Whitney systems, carving/surgery presentations, their rewrites, and
//! the compiler between them.

pub mod cli;
pub mod compiler;
pub mod cs;
pub mod document;
pub mod dot;
pub mod fw;
pub mod rewrite;
pub mod service;
pub mod session;
