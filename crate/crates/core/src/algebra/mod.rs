//! Exact polynomial and rational-function arithmetic.

mod poly;
mod ratfun;
pub mod sturm;

pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use sturm::{isolate_real_roots, sturm_root_count, Bound, RootInterval, SturmChain};
