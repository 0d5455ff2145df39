pub mod canonical;
pub mod certify;
pub mod cli;
pub mod criterion;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod expoly;
pub mod oracle;
pub mod recursion;

pub use error::{Error, Result};
