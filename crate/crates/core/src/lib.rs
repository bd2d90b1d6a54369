//! Maximal-dimensional components of the variety of type A chains of
//! matrices `C^{d_0} -> C^{d_1} -> ... -> C^{d_n}` whose composite is zero.
//!
//! The codimension `C` and the number `theta` of such components come from
//! three independent routes (a quadratic integer program, a q-series and a
//! closed form); each component is then built explicitly from a "rising
//! vector" as a lace diagram, Kostant partition, rank pattern, reduced rank
//! equations and a 0/1 representative, and checked against exhaustive
//! enumeration.

pub mod closedform;
pub mod error;
pub mod kostant;
pub mod lace;
pub mod qip;
pub mod qseries;
pub mod represent;
pub mod verify;

pub use closedform::{closed_form, ClosedFormResult};
pub use error::{Error, Result};
pub use kostant::{
    enumerate_partitions, enumerate_sigma_partitions, lies_in_sigma, orbit_codimension,
    partition_from_rank, rank_pattern, DimensionVector, Interval, KostantPartition, RankPattern,
};
pub use lace::{
    diagram_from_rising, diagram_increasing_case, open_orbit_diagram, partition_of_diagram, render,
    LaceDiagram, RenderFormat, RenderOptions,
};
pub use qip::{solve_rising, solve_sorted, solve_sorted_with, RisingVector, SolveOptions};
pub use qseries::{codim_and_count, lr1_series, TruncatedSeries};
pub use represent::{
    exact_rank, partial_products_ranks, product_is_zero, representative_tuple, IntMatrix,
    RepresentativeTuple,
};
pub use verify::{
    brute_force_components, components, cross_check, ComponentReport, CrossCheckOptions,
    CrossCheckReport, Method,
};
