use crate::error::{Error, Result};

/// A function sampled on an interval: strictly increasing `t`, all inside
/// `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    points: Vec<(f64, f64)>,
    domain: (f64, f64),
}

impl SampledPath {
    pub fn new(points: Vec<(f64, f64)>, domain: (f64, f64)) -> Result<Self> {
        let (lo, hi) = domain;
        let in_domain = points.iter().all(|&(t, _)| t >= lo && t <= hi);
        let increasing = points.windows(2).all(|w| w[0].0 < w[1].0);
        if !(lo <= hi) || !in_domain || !increasing {
            return Err(Error::UnorderedPath { lo, hi });
        }
        Ok(SampledPath { points, domain })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unordered_or_outside() {
        assert!(SampledPath::new(vec![(0.5, 1.0), (0.5, 2.0)], (0.0, 1.0)).is_err());
        assert!(SampledPath::new(vec![(0.2, 1.0), (1.5, 2.0)], (0.0, 1.0)).is_err());
        assert!(SampledPath::new(vec![(0.2, 1.0), (0.9, 2.0)], (0.0, 1.0)).is_ok());
    }
}
