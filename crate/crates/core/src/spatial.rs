//! Uniform-grid bucket index for exact nearest-neighbour queries on planar
//! point sets, and the set distances built on it.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Upper bound on grid cells per axis.
const MAX_CELLS_PER_AXIS: usize = 4096;

/// Points bucketed by grid cell, stored contiguously per cell.
#[derive(Debug, Clone)]
pub struct GridIndex {
    origin: [f64; 2],
    cell: f64,
    nx: usize,
    ny: usize,
    /// `starts[c]..starts[c + 1]` indexes `points` for cell `c = iy * nx + ix`.
    starts: Vec<u32>,
    points: Vec<[f64; 2]>,
}

impl GridIndex {
    /// Index with a cell size chosen from the point count and extent.
    pub fn new(points: &[[f64; 2]]) -> Result<Self> {
        let per_axis = ((2.0 * (points.len() as f64).sqrt()).ceil() as usize).clamp(1, MAX_CELLS_PER_AXIS);
        let (min, max) = extent(points).ok_or(Error::EmptySet)?;
        let span = (max[0] - min[0]).max(max[1] - min[1]);
        let cell = if span > 0.0 { span / per_axis as f64 } else { 1.0 };
        Self::with_cell(points, cell)
    }

    /// Index with a given cell side (enlarged if the grid would be too fine).
    pub fn with_cell(points: &[[f64; 2]], cell: f64) -> Result<Self> {
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(Error::InvalidArgument(format!("cell size {cell}")));
        }
        let (min, max) = extent(points).ok_or(Error::EmptySet)?;
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]);
        let cell = cell.max(span / MAX_CELLS_PER_AXIS as f64);
        let nx = ((max[0] - min[0]) / cell) as usize + 1;
        let ny = ((max[1] - min[1]) / cell) as usize + 1;
        let cell_of = |p: &[f64; 2]| {
            let ix = (((p[0] - min[0]) / cell) as usize).min(nx - 1);
            let iy = (((p[1] - min[1]) / cell) as usize).min(ny - 1);
            iy * nx + ix
        };
        let mut counts = vec![0u32; nx * ny + 1];
        for p in points {
            counts[cell_of(p) + 1] += 1;
        }
        for c in 1..counts.len() {
            counts[c] += counts[c - 1];
        }
        let starts = counts.clone();
        let mut fill = counts;
        let mut sorted = vec![[0.0; 2]; points.len()];
        for p in points {
            let c = cell_of(p);
            sorted[fill[c] as usize] = *p;
            fill[c] += 1;
        }
        Ok(GridIndex {
            origin: min,
            cell,
            nx,
            ny,
            starts,
            points: sorted,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    /// Distance from `q` to the nearest indexed point.
    pub fn nearest_distance(&self, q: [f64; 2]) -> f64 {
        let cx = ((q[0] - self.origin[0]) / self.cell).floor() as i64;
        let cy = ((q[1] - self.origin[1]) / self.cell).floor() as i64;
        let (nx, ny) = (self.nx as i64, self.ny as i64);
        // Ring at which every grid cell has been visited.
        let last_ring = [cx, nx - 1 - cx, cy, ny - 1 - cy]
            .iter()
            .map(|d| d.abs())
            .max()
            .unwrap();
        let mut best2 = f64::INFINITY;
        let mut ring = 0i64;
        loop {
            self.visit_ring(cx, cy, ring, |p| {
                let d2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2);
                if d2 < best2 {
                    best2 = d2;
                }
            });
            // Unvisited cells are at least `ring` cells away.
            let reach = ring as f64 * self.cell;
            if best2 <= reach * reach || ring >= last_ring {
                return best2.sqrt();
            }
            ring += 1;
        }
    }

    fn visit_ring(&self, cx: i64, cy: i64, ring: i64, mut f: impl FnMut(&[f64; 2])) {
        let (nx, ny) = (self.nx as i64, self.ny as i64);
        let mut cell = |ix: i64, iy: i64| {
            if ix < 0 || iy < 0 || ix >= nx || iy >= ny {
                return;
            }
            let c = (iy * nx + ix) as usize;
            for p in &self.points[self.starts[c] as usize..self.starts[c + 1] as usize] {
                f(p);
            }
        };
        if ring == 0 {
            cell(cx, cy);
            return;
        }
        let (y0, y1) = ((cy - ring).max(0), (cy + ring).min(ny - 1));
        let (x0, x1) = ((cx - ring).max(0), (cx + ring).min(nx - 1));
        for ix in x0..=x1 {
            cell(ix, cy - ring);
            cell(ix, cy + ring);
        }
        for iy in y0..=y1 {
            if iy != cy - ring && iy != cy + ring {
                cell(cx - ring, iy);
                cell(cx + ring, iy);
            }
        }
    }
}

fn extent(points: &[[f64; 2]]) -> Option<([f64; 2], [f64; 2])> {
    let first = *points.first()?;
    Some(points.iter().fold((first, first), |(lo, hi), p| {
        ([lo[0].min(p[0]), lo[1].min(p[1])], [hi[0].max(p[0]), hi[1].max(p[1])])
    }))
}

/// `sup_{a ∈ from} dist(a, to)`.
pub fn directed_hausdorff(from: &[[f64; 2]], to: &GridIndex) -> Result<f64> {
    if from.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(from
        .par_iter()
        .map(|&p| to.nearest_distance(p))
        .reduce(|| 0.0, f64::max))
}

/// Symmetric Hausdorff distance between two finite planar sets.
pub fn hausdorff_distance(a: &[[f64; 2]], b: &[[f64; 2]]) -> Result<f64> {
    let (ia, ib) = (GridIndex::new(a)?, GridIndex::new(b)?);
    Ok(directed_hausdorff(a, &ib)?.max(directed_hausdorff(b, &ia)?))
}

/// `min |p - q|` over `p ∈ a`, `q ∈ b`.
///
/// Both sets are bucketed on a common coarse grid; bucket pairs are visited in
/// order of the distance between their bounding boxes and compared point by
/// point until no remaining pair can beat the best distance found.
pub fn min_distance(a: &[[f64; 2]], b: &[[f64; 2]]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let ((alo, ahi), (blo, bhi)) = (extent(a).unwrap(), extent(b).unwrap());
    let (lo, hi) = extent(&[alo, ahi, blo, bhi]).unwrap();
    let per_axis = ((a.len().max(b.len()) as f64).sqrt().ceil() as usize).clamp(8, 1024);
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let cell = if span > 0.0 { span / per_axis as f64 } else { 1.0 };
    let (ba, bb) = (buckets(a, lo, cell), buckets(b, lo, cell));
    let mut pairs: Vec<(f64, usize, usize)> = ba
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, x)| bb.iter().enumerate().map(move |(j, y)| (box_gap(x, y), i, j)))
        .collect();
    pairs.par_sort_unstable_by(|x, y| x.0.total_cmp(&y.0));
    let mut best = f64::INFINITY;
    for (gap, i, j) in pairs {
        if gap >= best {
            break;
        }
        let (pa, pb) = (&ba[i].points, &bb[j].points);
        let local = pa
            .par_iter()
            .map(|p| pb.iter().map(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()).fold(f64::INFINITY, f64::min))
            .reduce(|| f64::INFINITY, f64::min);
        best = best.min(local);
    }
    Ok(best)
}

struct Bucket {
    lo: [f64; 2],
    hi: [f64; 2],
    points: Vec<[f64; 2]>,
}

fn buckets(points: &[[f64; 2]], origin: [f64; 2], cell: f64) -> Vec<Bucket> {
    let key = |p: &[f64; 2]| {
        (
            ((p[1] - origin[1]) / cell).floor() as i64,
            ((p[0] - origin[0]) / cell).floor() as i64,
        )
    };
    let mut keyed: Vec<((i64, i64), [f64; 2])> = points.iter().map(|p| (key(p), *p)).collect();
    keyed.sort_unstable_by_key(|x| x.0);
    keyed
        .chunk_by(|x, y| x.0 == y.0)
        .map(|group| {
            let pts: Vec<[f64; 2]> = group.iter().map(|g| g.1).collect();
            let (lo, hi) = extent(&pts).expect("non-empty group");
            Bucket { lo, hi, points: pts }
        })
        .collect()
}

fn box_gap(x: &Bucket, y: &Bucket) -> f64 {
    let dx = (x.lo[0] - y.hi[0]).max(y.lo[0] - x.hi[0]).max(0.0);
    let dy = (x.lo[1] - y.hi[1]).max(y.lo[1] - x.hi[1]).max(0.0);
    dx.hypot(dy)
}
