//! Finite-size scaling collapse of fluctuation or entropy curves.

pub mod collapse;

pub use collapse::{
    collapse_cost, collapse_cost_terms, collapse_scatter, grid_search, interpolate, odd_half_chain, CollapseInput,
    CollapsePoint, CollapseResult, CostBreakdown, GridAxis, GridCell, DEFAULT_NU_AXIS,
    DEFAULT_PC_AXIS, DEFAULT_SAMPLES, DEFAULT_WINDOW,
};
