use std::ops::Mul;

use crate::error::{Error, Result};

/// Row-major 2×2 real matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> f64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a, c, b, d)
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::SingularMatrix);
        }
        let [[a, b], [c, d]] = self.0;
        Ok(Mat2::new(d / det, -b / det, -c / det, a / det))
    }

    pub fn scale(&self, k: f64) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(k * a, k * b, k * c, k * d)
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let [[a, b], [c, d]] = self.0;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    /// `self^r` by repeated multiplication.
    pub fn iterated_power(&self, r: u32) -> Mat2 {
        (0..r).fold(Mat2::IDENTITY, |acc, _| acc * *self)
    }

    /// Largest entrywise deviation relative to the largest entry of `other`.
    pub fn relative_deviation(&self, other: &Mat2) -> f64 {
        let scale = other.0.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
        let diff = self
            .0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Mat2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

/// The common linear part `L = [[1/2, 0], [-1/2, 1/2]]` of both maps.
pub const SHEAR: Mat2 = Mat2::new(0.5, 0.0, -0.5, 0.5);

/// Singular values `alpha1 >= alpha2 > 0` of a matrix (or of a power of it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPair {
    pub r: u32,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl SingularPair {
    pub fn product(&self) -> f64 {
        self.alpha1 * self.alpha2
    }
}

/// Singular values of a nonsingular 2×2 matrix from the eigenvalues of `MᵀM`.
///
/// The larger eigenvalue comes from `(a + c)/2 + hypot((a - c)/2, b)`; the
/// smaller one is recovered from the determinant, which avoids cancellation.
pub fn singular_values(m: &Mat2) -> Result<SingularPair> {
    let det = m.det();
    if det == 0.0 || !det.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let g = m.transpose() * *m;
    let [[a, b], [_, c]] = g.0;
    let lambda1 = 0.5 * (a + c) + (0.5 * (a - c)).hypot(b);
    let alpha1 = lambda1.sqrt();
    Ok(SingularPair {
        r: 1,
        alpha1,
        alpha2: det.abs() / alpha1,
    })
}

/// Direction of a power of `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerSign {
    Positive,
    Negative,
}

/// Closed forms `L^r = [[2^-r, 0], [-r 2^-r, 2^-r]]` and
/// `L^-r = [[2^r, 0], [r 2^r, 2^r]]`; `r = 0` gives the identity.
pub fn l_power(r: u32, sign: PowerSign) -> Mat2 {
    let rf = r as f64;
    match sign {
        PowerSign::Positive => {
            let p = 2f64.powi(-(r as i32));
            Mat2::new(p, 0.0, -rf * p, p)
        }
        PowerSign::Negative => {
            let p = 2f64.powi(r as i32);
            Mat2::new(p, 0.0, rf * p, p)
        }
    }
}

/// Closed-form singular values of `L^r` (the α pair) or `L^-r` (the β pair):
///
/// ```text
///     α_{1,2} = 2^-r sqrt((r² + 2 ± sqrt(r⁴ + 4r²)) / 2),   β_{1,2} = 4^r α_{1,2}.
/// ```
///
/// The minus branch is evaluated as `sqrt(2 / (r² + 2 + sqrt(r⁴ + 4r²)))`,
/// the same number written without the cancelling subtraction.
pub fn singular_values_closed_form(r: u32, sign: PowerSign) -> SingularPair {
    let rf = r as f64;
    let plus = rf * rf + 2.0 + rf * (rf * rf + 4.0).sqrt();
    let big = (plus / 2.0).sqrt();
    let small = (2.0 / plus).sqrt();
    let p = match sign {
        PowerSign::Positive => 2f64.powi(-(r as i32)),
        PowerSign::Negative => 2f64.powi(r as i32),
    };
    SingularPair {
        r,
        alpha1: p * big,
        alpha2: p * small,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_powers() {
        assert_eq!(l_power(1, PowerSign::Positive), SHEAR);
        assert_eq!(l_power(3, PowerSign::Positive), Mat2::new(0.125, 0.0, -0.375, 0.125));
        assert_eq!(l_power(2, PowerSign::Negative), Mat2::new(4.0, 0.0, 8.0, 4.0));
        assert_eq!(l_power(0, PowerSign::Negative), Mat2::IDENTITY);
        for r in 1..=30 {
            let it = SHEAR.iterated_power(r);
            assert!(l_power(r, PowerSign::Positive).relative_deviation(&it) <= 1e-14);
            let inv = SHEAR.inverse().unwrap().iterated_power(r);
            assert!(l_power(r, PowerSign::Negative).relative_deviation(&inv) <= 1e-14);
        }
    }

    #[test]
    fn identity_singular_values() {
        let p = singular_values(&Mat2::IDENTITY).unwrap();
        assert_eq!((p.alpha1, p.alpha2), (1.0, 1.0));
    }

    #[test]
    fn shear_singular_values_are_golden() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let p = singular_values(&SHEAR).unwrap();
        assert_relative_eq!(p.alpha1, phi / 2.0, max_relative = 1e-15);
        assert_relative_eq!(p.alpha1, 0.5 * ((3.0 + 5f64.sqrt()) / 2.0).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(p.alpha2, 0.309_017_0, epsilon = 1e-7);
        assert_relative_eq!(p.product(), 0.25, max_relative = 1e-15);
        let c = singular_values_closed_form(1, PowerSign::Positive);
        assert_relative_eq!(c.alpha1, p.alpha1, max_relative = 1e-14);
        assert_relative_eq!(c.alpha2, p.alpha2, max_relative = 1e-14);
    }

    #[test]
    fn closed_form_products_and_beta_relation() {
        for r in 1..=30u32 {
            let a = singular_values_closed_form(r, PowerSign::Positive);
            let b = singular_values_closed_form(r, PowerSign::Negative);
            let four_r = 4f64.powi(r as i32);
            assert_relative_eq!(a.product(), 1.0 / four_r, max_relative = 1e-13);
            assert_relative_eq!(b.product(), four_r, max_relative = 1e-13);
            assert_relative_eq!(b.alpha1, four_r * a.alpha1, max_relative = 1e-14);
            assert!(a.alpha1 >= a.alpha2 && a.alpha2 > 0.0);
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        assert_eq!(singular_values(&Mat2::new(1.0, 2.0, 2.0, 4.0)), Err(Error::SingularMatrix));
        assert!(Mat2::new(0.0, 0.0, 0.0, 0.0).inverse().is_err());
    }
}
