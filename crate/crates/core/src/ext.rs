//! Nonnegative quantities that may be `+inf`.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

/// A finite scalar or the `+inf` sentinel.
///
/// Used for capacities, interdiction costs and protection prices. Infinity
/// is a value of its own, never a large number; `inf * 0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ext<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Ext<T> {
    pub fn zero() -> Self {
        Ext::Finite(T::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Ext::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Infinite => None,
        }
    }

    pub fn into_finite(self) -> Option<T> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ext::Finite(v) if v.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Ext::Finite(v) if *v < T::zero())
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `self * amount` for a nonnegative `amount`, with `inf * 0 = 0`.
    pub fn scale(&self, amount: &T) -> Self {
        match self {
            Ext::Finite(v) => Ext::Finite(v.clone() * amount.clone()),
            Ext::Infinite if amount.is_zero() => Ext::zero(),
            Ext::Infinite => Ext::Infinite,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a.clone() + b.clone()),
            _ => Ext::Infinite,
        }
    }

    /// Compare against a finite value.
    pub fn cmp_finite(&self, value: &T) -> Option<Ordering> {
        match self {
            Ext::Finite(v) => v.partial_cmp(value),
            Ext::Infinite => Some(Ordering::Greater),
        }
    }

    pub fn to_token(&self) -> String {
        match self {
            Ext::Finite(v) => v.to_token(),
            Ext::Infinite => "inf".to_string(),
        }
    }

    pub fn parse_token(token: &str) -> Option<Self> {
        if token.eq_ignore_ascii_case("inf") {
            Some(Ext::Infinite)
        } else {
            T::parse_token(token).map(Ext::Finite)
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Ext::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
            Ext::Infinite => f64::INFINITY,
        }
    }
}

impl<T: Scalar> From<T> for Ext<T> {
    fn from(v: T) -> Self {
        Ext::Finite(v)
    }
}

impl<T: Scalar> PartialOrd for Ext<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => a.partial_cmp(b),
            (Ext::Finite(_), Ext::Infinite) => Some(Ordering::Less),
            (Ext::Infinite, Ext::Finite(_)) => Some(Ordering::Greater),
            (Ext::Infinite, Ext::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl<T: Scalar> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}
