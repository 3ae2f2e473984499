//! Approximate point location on a grid with exact Sturm-based cell tags.

mod fatness;
mod qds;
mod tagging;

pub use fatness::{fatness_bounds, FatnessBounds};
pub use qds::{grid_spacing, qds_build, qds_build_with, snap_epsilon, Qds, QdsConfig, Scheme, TagCounts};
pub use tagging::{
    seg_test, sturm_cell, sturm_cell_b, sturm_cell_b_from_edges, sturm_cell_from_edges, tag_cell,
    tag_cell_from_edges, tag_thresholds, CellTag, GridCell,
};
