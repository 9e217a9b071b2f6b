#![allow(clippy::needless_range_loop)]
pub mod bbs;
pub mod cli;
pub mod curve;
pub mod error;
pub mod jacobian;
pub mod oracle;
pub mod rational;
pub mod spectral;
pub mod trop;

pub use error::{Error, Result};
pub use rational::Rat;
