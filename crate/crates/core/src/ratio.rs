//! Probabilities and extended-real likelihood ratios.
//!
//! Likelihood ratios in forensic work span hundreds of orders of magnitude
//! (a random-match probability of `1e-9` already gives a ratio of a
//! billion), and two of the interesting limits are exactly `0` and `+inf`.
//! [`RatioValue`] therefore keeps a base-10 logarithm for the finite
//! positive case and two explicit states for the endpoints.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{EvidenceError, Result};

/// A real number in the closed unit interval.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(EvidenceError::ProbabilityOutOfRange(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - self`.
    #[inline]
    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }

    /// Accepts only values strictly inside `(0, 1)`, the range in which a
    /// random-match probability yields a finite, nonzero likelihood ratio.
    pub fn interior(value: f64) -> Result<Self> {
        let p = Probability::new(value)?;
        if p.0 == 0.0 || p.0 == 1.0 {
            return Err(EvidenceError::DegenerateMatchProbability(value));
        }
        Ok(p)
    }

    pub fn log10(self) -> f64 {
        self.0.log10()
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Probability {
    type Error = EvidenceError;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

/// A nonnegative extended real stored in log10 form.
///
/// Exactly one state holds at a time: exact zero, a finite positive value
/// (carried as its finite base-10 logarithm), or positive infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioValue {
    Zero,
    Finite { log10: f64 },
    Infinite,
}

/// Largest `|log10|` for which [`RatioValue::to_linear`] returns a normal f64.
const LINEAR_LOG10_MAX: f64 = 308.0;

impl RatioValue {
    pub const ONE: RatioValue = RatioValue::Finite { log10: 0.0 };

    pub fn from_log10(log10: f64) -> Result<Self> {
        if log10.is_finite() {
            Ok(RatioValue::Finite { log10 })
        } else {
            Err(EvidenceError::NonFiniteLog(log10))
        }
    }

    pub fn from_linear(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            Err(EvidenceError::InvalidRatio(value))
        } else if value == 0.0 {
            Ok(RatioValue::Zero)
        } else if value == f64::INFINITY {
            Ok(RatioValue::Infinite)
        } else {
            Ok(RatioValue::Finite { log10: value.log10() })
        }
    }

    /// Base-10 logarithm: `-inf` for zero, `+inf` for infinity.
    pub fn log10(self) -> f64 {
        match self {
            RatioValue::Zero => f64::NEG_INFINITY,
            RatioValue::Finite { log10 } => log10,
            RatioValue::Infinite => f64::INFINITY,
        }
    }

    /// Linear value when it is representable as a normal `f64`.
    ///
    /// Zero and infinity convert exactly; finite values outside roughly
    /// `[1e-308, 1e308]` return `None` and must be read in log10 form.
    pub fn to_linear(self) -> Option<f64> {
        match self {
            RatioValue::Zero => Some(0.0),
            RatioValue::Infinite => Some(f64::INFINITY),
            RatioValue::Finite { log10 } if log10.abs() <= LINEAR_LOG10_MAX => {
                let x = 10f64.powf(log10);
                (x.is_normal()).then_some(x)
            }
            RatioValue::Finite { .. } => None,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, RatioValue::Zero)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RatioValue::Infinite)
    }

    pub fn is_finite_positive(self) -> bool {
        matches!(self, RatioValue::Finite { .. })
    }

    pub fn recip(self) -> RatioValue {
        match self {
            RatioValue::Zero => RatioValue::Infinite,
            RatioValue::Finite { log10 } => RatioValue::Finite { log10: -log10 },
            RatioValue::Infinite => RatioValue::Zero,
        }
    }

    /// Extended-real product. `0 x inf` is an error.
    pub fn try_mul(self, other: RatioValue) -> Result<RatioValue> {
        use RatioValue::*;
        match (self, other) {
            (Zero, Infinite) | (Infinite, Zero) => Err(EvidenceError::ZeroTimesInfinity),
            (Zero, _) | (_, Zero) => Ok(Zero),
            (Infinite, _) | (_, Infinite) => Ok(Infinite),
            (Finite { log10: a }, Finite { log10: b }) => RatioValue::from_log10(a + b),
        }
    }

    /// Extended-real quotient. `0/0` and `inf/inf` are errors; `x/0` is
    /// infinite for any `x > 0`.
    pub fn try_div(self, other: RatioValue) -> Result<RatioValue> {
        use RatioValue::*;
        match (self, other) {
            (Zero, Zero) => Err(EvidenceError::IndeterminateQuotient("0/0")),
            (Infinite, Infinite) => Err(EvidenceError::IndeterminateQuotient("inf/inf")),
            (Zero, _) | (_, Infinite) => Ok(Zero),
            (Infinite, _) | (_, Zero) => Ok(Infinite),
            (Finite { log10: a }, Finite { log10: b }) => RatioValue::from_log10(a - b),
        }
    }
}

impl PartialOrd for RatioValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.log10().partial_cmp(&other.log10())
    }
}

impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RatioValue::Zero => f.write_str("0"),
            RatioValue::Infinite => f.write_str("inf"),
            RatioValue::Finite { log10 } => match self.to_linear() {
                Some(x) if log10.abs() <= 15.0 => write!(f, "{x}"),
                _ => write!(f, "10^{log10}"),
            },
        }
    }
}
