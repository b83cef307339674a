//! Restricted Steinberg characters of finite orthogonal groups, computed
//! exactly on exhaustively enumerated groups.

pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod matgrp;
pub mod quadspace;
pub mod tori;
pub mod weyl;

pub use error::{Error, Result};
