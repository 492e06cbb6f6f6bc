pub mod catalog;
pub mod cli;
pub mod defect;
pub mod error;
pub mod families;
pub mod fourier;
pub mod matcore;
pub mod pcm;

pub use error::{Error, Result};
