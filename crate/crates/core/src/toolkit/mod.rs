//! Executable connectivity tools: barycentric subcomplexes of wCM complexes,
//! fiber theorems, the bad simplex argument and join complexes.

mod badsim;
mod contract;
mod fiber;
mod join;
mod teo_m;

pub use badsim::{check_badsim, BadVertexAssignment, BadsimReport};
pub use contract::{certify_contractible, collapse, Contractibility};
pub use fiber::{check_fiber2, check_fiber_theorem, fibers, Fiber2Failure, Fiber2Report, FiberReport};
pub use join::{check_join2, check_join_complex, Join2Report, JoinClass, JoinWitness};
pub use teo_m::{check_teo_m, TeoMReport};
