pub mod baselines;
pub mod bench;
pub mod cli;
pub mod cover;
pub mod error;
pub mod geom;
pub mod instance;
pub mod lp;
pub mod pack;
pub mod scc;

pub use error::{Error, Result};
