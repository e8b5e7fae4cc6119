mod bv;
mod multicat;
mod multiprof;
mod sym;
mod term;

pub use bv::*;
pub use multicat::*;
pub use multiprof::*;
pub use sym::*;
pub use term::*;
