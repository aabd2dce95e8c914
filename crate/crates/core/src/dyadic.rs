use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported denominator exponent.
pub const MAX_EXPONENT: u32 = 64;

/// Non-negative dyadic rational `num / 2^exp`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, exp: 1 };
    pub const QUARTER: Dyadic = Dyadic { num: 1, exp: 2 };

    pub fn new(num: u64, exp: u32) -> Result<Self> {
        if exp > MAX_EXPONENT {
            return Err(Error::DyadicPrecision(exp));
        }
        Ok(Self::normalized(num, exp))
    }

    fn normalized(num: u64, exp: u32) -> Self {
        if num == 0 {
            return Dyadic::ZERO;
        }
        let shift = num.trailing_zeros().min(exp);
        Dyadic {
            num: num >> shift,
            exp: exp - shift,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// Exponent of the reduced denominator; for a value in `(1/2, 1)` this is
    /// the position of the last nonzero binary digit.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 * 2f64.powi(-(self.exp as i32))
    }

    /// Exact conversion of a finite non-negative double.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() || x < 0.0 {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::ZERO);
        }
        let bits = x.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        if e >= 0 {
            let num = mantissa.checked_shl(e as u32)?;
            (num >> e == mantissa).then(|| Self::normalized(num, 0))
        } else {
            let tz = mantissa.trailing_zeros() as i32;
            let shift = tz.min(-e);
            let exp = (-e - shift) as u32;
            (exp <= MAX_EXPONENT).then(|| Dyadic {
                num: mantissa >> shift,
                exp,
            })
        }
    }

    pub fn half(self) -> Result<Self> {
        if self.num == 0 {
            return Ok(self);
        }
        Self::new(self.num, self.exp + 1)
    }

    pub fn checked_add(self, other: Dyadic) -> Result<Self> {
        let exp = self.exp.max(other.exp);
        let a = (self.num as u128) << (exp - self.exp);
        let b = (other.num as u128) << (exp - other.exp);
        let mut sum = a + b;
        let mut exp = exp;
        while exp > 0 && sum & 1 == 0 {
            sum >>= 1;
            exp -= 1;
        }
        let num = u64::try_from(sum).map_err(|_| Error::DyadicPrecision(exp))?;
        Ok(Dyadic { num, exp })
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        let a = (self.num as u128) << (exp - self.exp);
        let b = (other.num as u128) << (exp - other.exp);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// Argument of the Steinhaus functions: exact dyadic, or a double that is
/// treated as an arbitrary real (truncated expansion, no jump classification).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gamma {
    Exact(Dyadic),
    Approx(f64),
}

impl Gamma {
    pub fn value(&self) -> f64 {
        match self {
            Gamma::Exact(d) => d.to_f64(),
            Gamma::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Gamma::Exact(_))
    }
}

impl From<Dyadic> for Gamma {
    fn from(d: Dyadic) -> Self {
        Gamma::Exact(d)
    }
}

impl From<f64> for Gamma {
    fn from(x: f64) -> Self {
        Gamma::Approx(x)
    }
}
