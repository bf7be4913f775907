pub mod bounds;
pub mod classes;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod hp;
pub mod oracle;
pub mod poly;
pub mod roots;
pub mod series;
pub mod singularity;
pub mod verify;

pub use error::{Error, Result};
