//! Finite samples of the model spaces.

mod cloud;
mod lattices;
mod metric;

pub use cloud::{
    circle_gap, cone_standard_example, desitter2_sample, gudermannian, null_coordinates, sprinkle_minkowski,
    sprinkle_minkowski_with, EventCloud, Region, DESITTER_T_MAX, MIN_SEPARATION,
};
pub use lattices::{grid_coords, grid_index, grid_product, grid_product_shape, powerset_order, MAX_ELEMENTS};
pub use metric::{
    causal_cylinder, linf_grid_cylinder, sigma_cylinder, warning_cylinder, CylinderEvent, LinfGridImage,
    MetricSample, WarningCylinder, WarningEvent, WarningGrid, MAX_CYLINDER_EVENTS, METRIC_TOL,
};
