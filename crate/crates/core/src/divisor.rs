//! Divisors: points of ℚⁿ with componentwise arithmetic.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(Vec<Rational>);

impl Divisor {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyDivisor);
        }
        Ok(Divisor(components))
    }

    /// Panics on an empty slice; intended for literals.
    pub fn from_ints(values: &[i64]) -> Self {
        Divisor::new(values.iter().copied().map(int).collect()).expect("non-empty divisor literal")
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "divisor dimension must be at least 1");
        Divisor(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn degree(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor(self.0.iter().map(|c| if c.is_positive() { c.clone() } else { Rational::zero() }).collect())
    }

    pub fn negative_part(&self) -> Divisor {
        Divisor(self.0.iter().map(|c| if c.is_negative() { c.clone() } else { Rational::zero() }).collect())
    }

    /// ‖x‖∞
    pub fn sup_norm(&self) -> Rational {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Divisor {
        Divisor(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected, got: self.len() })
        }
    }

    pub fn try_add(&self, other: &Divisor) -> Result<Divisor> {
        other.check_len(self.len())?;
        Ok(Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &Divisor) -> Result<Divisor> {
        other.check_len(self.len())?;
        Ok(Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

pub fn degree(x: &Divisor) -> Rational {
    x.degree()
}

pub fn positive_part(x: &Divisor) -> Divisor {
    x.positive_part()
}

pub fn negative_part(x: &Divisor) -> Divisor {
    x.negative_part()
}

/// ℓ¹ distance Σ|x(i) − y(i)|.
pub fn taxicab(x: &Divisor, y: &Divisor) -> Result<Rational> {
    y.check_len(x.len())?;
    Ok(x.iter().zip(y.iter()).map(|(a, b)| (a - b).abs()).sum())
}

/// Componentwise x ≤ y.
pub fn leq(x: &Divisor, y: &Divisor) -> Result<bool> {
    y.check_len(x.len())?;
    Ok(x.iter().zip(y.iter()).all(|(a, b)| a <= b))
}

/// deg((x − y)⁺), the one-sided taxicab distance.
pub fn excess(x: &Divisor, y: &Divisor) -> Result<Rational> {
    y.check_len(x.len())?;
    Ok(x.iter()
        .zip(y.iter())
        .map(|(a, b)| a - b)
        .filter(|d| d.is_positive())
        .sum())
}

impl Index<usize> for Divisor {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Divisor {
    type Output = Divisor;

    /// Panics on a length mismatch; use [`Divisor::try_add`] for checked input.
    fn add(self, rhs: &Divisor) -> Divisor {
        self.try_add(rhs).expect("divisor length mismatch")
    }
}

impl Sub for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        self.try_sub(rhs).expect("divisor length mismatch")
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        Divisor(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        -&self
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(c))?;
        }
        Ok(())
    }
}

impl FromStr for Divisor {
    type Err = Error;

    /// Comma-separated rationals, e.g. `3,-1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let components = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::ParseDivisor(s.to_string(), e.to_string()))?;
        Divisor::new(components)
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(format_rational).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<String>::deserialize(d)?;
        let components = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Divisor::new(components).map_err(D::Error::custom)
    }
}
