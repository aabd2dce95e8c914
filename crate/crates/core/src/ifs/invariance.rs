use super::maps::{maps_t0_t1, PointCloud2D};
use crate::error::{Error, Result};
use crate::spatial::{hausdorff_distance, min_distance};

/// How far a cloud is from satisfying `C = T_0(C) ∪ T_1(C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceReport {
    /// Hausdorff distance between the cloud and the union of its two images.
    pub residual: f64,
    /// Minimum distance between `T_0(C)` and `T_1(C)`.
    pub separation: f64,
}

pub fn invariance_residual(cloud: &PointCloud2D) -> Result<InvarianceReport> {
    if cloud.is_empty() {
        return Err(Error::EmptySet);
    }
    let (t0, t1) = maps_t0_t1();
    let (left, right) = (cloud.map(&t0), cloud.map(&t1));
    let union: Vec<[f64; 2]> = left.points().iter().chain(right.points()).copied().collect();
    Ok(InvarianceReport {
        residual: hausdorff_distance(cloud.points(), &union)?,
        separation: min_distance(left.points(), right.points())?,
    })
}
