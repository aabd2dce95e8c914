use rand::RngCore;
use rayon::prelude::*;

use super::matrix::{Mat2, SHEAR};
use crate::error::{Error, Result};
use crate::rng::replica_rng;

/// `[1/2, 1] × [0, 1/2]`, the common domain and codomain of both maps.
pub const SEED_RECTANGLE: [[f64; 2]; 4] = [[0.5, 0.0], [1.0, 0.0], [1.0, 0.5], [0.5, 0.5]];

/// Deepest rectangle iterate [`attractor_rectangles`] will build.
pub const MAX_RECTANGLE_DEPTH: u32 = 24;

/// Chaos-game steps discarded before recording.
pub const BURN_IN: usize = 64;

/// `x ↦ linear · x + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap2D {
    pub linear: Mat2,
    pub shift: [f64; 2],
}

impl AffineMap2D {
    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        let v = self.linear.apply(p);
        [v[0] + self.shift[0], v[1] + self.shift[1]]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap2D) -> AffineMap2D {
        AffineMap2D {
            linear: self.linear * inner.linear,
            shift: self.apply(inner.shift),
        }
    }
}

/// `T_0(x, y) = (x/2 + 1/4, (1 - x + y)/2)` and `T_1(x, y) = (x/2 + 1/2, (1 - x + y)/2)`.
pub fn maps_t0_t1() -> (AffineMap2D, AffineMap2D) {
    (
        AffineMap2D {
            linear: SHEAR,
            shift: [0.25, 0.5],
        },
        AffineMap2D {
            linear: SHEAR,
            shift: [0.5, 0.5],
        },
    )
}

fn map_for(bit: u8) -> AffineMap2D {
    let (t0, t1) = maps_t0_t1();
    if bit == 0 {
        t0
    } else {
        t1
    }
}

/// Parses a word such as `"011"` into map indices.
pub fn parse_word(word: &str) -> Result<Vec<u8>> {
    if word.is_empty() {
        return Err(Error::InvalidWord);
    }
    word.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::InvalidWord),
        })
        .collect()
}

/// `T_{i_1} ∘ ... ∘ T_{i_r}` for the word `i_1 ... i_r`; `i_1` is applied last.
pub fn compose(word: &[u8]) -> Result<AffineMap2D> {
    let (&first, rest) = word.split_first().ok_or(Error::InvalidWord)?;
    if word.iter().any(|&b| b > 1) {
        return Err(Error::InvalidWord);
    }
    Ok(rest
        .iter()
        .fold(map_for(first), |acc, &b| acc.compose(&map_for(b))))
}

/// Image of the seed rectangle under a composed map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parallelogram {
    pub vertices: [[f64; 2]; 4],
}

impl Parallelogram {
    pub fn image_of_seed(map: &AffineMap2D) -> Self {
        Parallelogram {
            vertices: SEED_RECTANGLE.map(|v| map.apply(v)),
        }
    }

    /// Point-in-convex-polygon test with slack `eps` on every edge.
    pub fn contains(&self, p: [f64; 2], eps: f64) -> bool {
        let v = &self.vertices;
        let orient = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| {
            (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        };
        let sign = orient(v[0], v[1], v[2]).signum();
        (0..4).all(|i| {
            let (a, b) = (v[i], v[(i + 1) % 4]);
            let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
            sign * orient(a, b, p) >= -eps * len
        })
    }
}

/// Images of the seed rectangle under all `2^r` words of length `r`, in
/// lexicographic word order (`i_1` most significant).
pub fn attractor_rectangles(r: u32) -> Result<Vec<Parallelogram>> {
    if r == 0 {
        return Err(Error::InvalidArgument("rectangle depth must be at least 1".into()));
    }
    if r > MAX_RECTANGLE_DEPTH {
        return Err(Error::DepthCap {
            depth: r,
            cap: MAX_RECTANGLE_DEPTH,
        });
    }
    Ok((0..1u64 << r)
        .into_par_iter()
        .map(|index| {
            let word: Vec<u8> = (0..r).rev().map(|j| ((index >> j) & 1) as u8).collect();
            Parallelogram::image_of_seed(&compose(&word).expect("non-empty binary word"))
        })
        .collect())
}

/// Axis-aligned bounds of a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl BoundingBox {
    pub fn of(points: &[[f64; 2]]) -> Option<Self> {
        let first = *points.first()?;
        Some(points.iter().fold(
            BoundingBox {
                min: first,
                max: first,
            },
            |b, p| BoundingBox {
                min: [b.min[0].min(p[0]), b.min[1].min(p[1])],
                max: [b.max[0].max(p[0]), b.max[1].max(p[1])],
            },
        ))
    }
}

/// Planar point set with its bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud2D {
    points: Vec<[f64; 2]>,
    bounds: Option<BoundingBox>,
}

impl PointCloud2D {
    pub fn new(points: Vec<[f64; 2]>) -> Self {
        let bounds = BoundingBox::of(&points);
        PointCloud2D { points, bounds }
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn bounds(&self) -> Option<BoundingBox> {
        self.bounds
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn map(&self, f: &AffineMap2D) -> PointCloud2D {
        PointCloud2D::new(self.points.iter().map(|&p| f.apply(p)).collect())
    }
}

/// `n` chaos-game points: uniform random map choices from the centre of the
/// seed rectangle, after a [`BURN_IN`]-step burn-in.
pub fn chaos_game(n: usize, seed: u64) -> PointCloud2D {
    let (t0, t1) = maps_t0_t1();
    let mut rng = replica_rng(seed, 0);
    let mut bits = 0u64;
    let mut left = 0u32;
    let mut next_bit = move || {
        if left == 0 {
            bits = rng.next_u64();
            left = 64;
        }
        left -= 1;
        let b = bits & 1;
        bits >>= 1;
        b
    };
    let mut p = [0.75, 0.25];
    let mut points = Vec::with_capacity(n);
    for i in 0..BURN_IN + n {
        p = if next_bit() == 0 { t0.apply(p) } else { t1.apply(p) };
        if i >= BURN_IN {
            points.push(p);
        }
    }
    PointCloud2D::new(points)
}
