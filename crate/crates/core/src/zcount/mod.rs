//! Closed-form z-class counting: the type model, its `GL` and unitary
//! enumerations, small-field realizability, centralizer orders predicted by
//! a type, and the counts for `U(n, 1)` and compact `U(m)`.

mod classify;
mod counts;
mod realize;
mod types;

pub use classify::{
    check_primary_decomposition, element_type_gl, element_type_u, primary_components,
};
pub use counts::{
    compact_unitary_count, count_semisimple, count_unipotent, hyperbolic_counts, total_z_count,
    HyperbolicCounts,
};
pub use realize::{
    centralizer_order_gl, centralizer_order_u, count_realizable, count_realizable_restricted,
    gl_supply, necklace_count, realizable_types_gl, realizable_types_u,
    semisimple_centralizer_order_gl, semisimple_centralizer_order_u, u_odd_supply, u_pair_supply,
};
pub use types::{
    enumerate_types_gl, enumerate_types_u, pair_type, unpair_type, Slot, UZType, ZType,
};
