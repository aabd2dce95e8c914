//! The two-map affine system `T_0, T_1` on `[1/2, 1] × [0, 1/2]`.
//!
//! Both maps share the linear part `L = [[1/2, 0], [-1/2, 1/2]]`; their
//! attractor is the closure of the image of the graph of `ξ` under
//! `(t, x) ↦ (t, x/t - log2 t)`. Dimension information comes from the
//! singular values of `L^r` and `L^-r`.

mod invariance;
mod maps;
mod matrix;
mod series;

pub use invariance::{invariance_residual, InvarianceReport};
pub use maps::{
    attractor_rectangles, chaos_game, compose, maps_t0_t1, parse_word, AffineMap2D, BoundingBox, Parallelogram,
    PointCloud2D, BURN_IN, MAX_RECTANGLE_DEPTH, SEED_RECTANGLE,
};
pub use matrix::{l_power, singular_values, singular_values_closed_form, Mat2, PowerSign, SingularPair, SHEAR};
pub use series::{
    affinity_dimension, hausdorff_lower_bound_dim, numeric_shear, shear_singular_value_function,
    singular_value_function, ClosedFormShear, NumericLinear, SelfAffineSystem, SeriesKind, SeriesRow,
    SeriesThreshold, SingularValueSource, BISECTION_BRACKET, MAX_BISECTION_STEPS, MIN_TOLERANCE, MIN_TRUNCATION,
};
