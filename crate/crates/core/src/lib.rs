#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exec;
pub mod linalg;
pub mod rootsys;

pub use error::{Error, Result};
pub mod blocks;
pub mod coxeter;
pub mod cuspidal;
pub mod homology;
pub mod molien;
pub mod verify;
