pub mod cli;
pub mod curvecount;
pub mod error;
pub mod ffield;
pub mod fixtures;
pub mod gkpipeline;
pub mod lpoly;
pub mod partition;
pub mod plethys;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
