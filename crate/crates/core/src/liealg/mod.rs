//! Explicit compact simple Lie algebras: the brute-force oracle for
//! structure constants.

pub mod cache;
pub mod chevalley;
pub mod compact;

pub use cache::{env_cache_dir, load_or_build};
pub use chevalley::{chevalley, ChevalleyData};
pub use compact::{BasisLabel, CompactLieAlgebra};
