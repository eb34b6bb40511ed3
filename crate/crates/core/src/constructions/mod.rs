//! Explicit code families with cooperative locality.

mod concatenated;
mod hadamard;
mod mds;
mod partition;
mod product;

pub use concatenated::{concatenated_code, concatenated_rate, ConcatenationParams};
pub use hadamard::{hadamard_code, hadamard_repair, hadamard_with_order, simplex_listed_order};
pub use mds::{mds_code, rs_mds, rs_mds_over};
pub use partition::{envelope_optimize, partition_code, partition_from_local, partition_weakened, RepairCostProfile};
pub use product::product_code;
