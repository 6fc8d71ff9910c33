// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_traits::Signed;
use thiserror::Error;

use super::dimension::{Dimension, Exponent};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantityError {
    #[error("dimension mismatch in {op}: [{lhs}] vs [{rhs}]")]
    DimensionMismatch {
        op: Operation,
        lhs: Dimension,
        rhs: Dimension,
    },
    #[error("{op} does not accept a {given} operand")]
    InvalidOperand { op: Operation, given: &'static str },
    #[error("expected dimension [{expected}], found [{found}]")]
    UnexpectedDimension {
        expected: Dimension,
        found: Dimension,
    },
}

/// A scalar value in SI base units together with its exact dimension.
#[derive(Clone, Copy, PartialEq)]
pub struct Quantity<S> {
    value: S,
    dim: Dimension,
}

impl<S: Real> Quantity<S> {
    pub fn new(si_value: S, dim: Dimension) -> Self {
        Self {
            value: si_value,
            dim,
        }
    }

    pub fn dimensionless(value: S) -> Self {
        Self::new(value, Dimension::DIMENSIONLESS)
    }

    /// Value in SI base units.
    pub fn si(&self) -> S {
        self.value
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Returns the SI value if the dimension is `expected`.
    pub fn si_as(&self, expected: Dimension) -> Result<S, QuantityError> {
        self.expect_dim(expected).map(|q| q.value)
    }

    pub fn expect_dim(self, expected: Dimension) -> Result<Self, QuantityError> {
        if self.dim == expected {
            Ok(self)
        } else {
            Err(QuantityError::UnexpectedDimension {
                expected,
                found: self.dim,
            })
        }
    }

    pub fn try_add(self, rhs: Self) -> Result<Self, QuantityError> {
        self.same_dim(&rhs, Operation::Add)?;
        Ok(Self::new(self.value + rhs.value, self.dim))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self, QuantityError> {
        self.same_dim(&rhs, Operation::Sub)?;
        Ok(Self::new(self.value - rhs.value, self.dim))
    }

    fn same_dim(&self, rhs: &Self, op: Operation) -> Result<(), QuantityError> {
        if self.dim == rhs.dim {
            Ok(())
        } else {
            Err(QuantityError::DimensionMismatch {
                op,
                lhs: self.dim,
                rhs: rhs.dim,
            })
        }
    }

    /// Raises to an exact rational power. Integer powers and square roots
    /// use `powi`/`sqrt` so common cases stay bit-exact.
    pub fn powr(self, power: Exponent) -> Self {
        let value = if power.is_integer() {
            self.value.powi(*power.numer())
        } else if power.abs() == Exponent::new(1, 2) {
            let root = self.value.sqrt();
            if power.is_negative() {
                root.recip()
            } else {
                root
            }
        } else if power.abs() == Exponent::new(1, 3) {
            let root = self.value.cbrt();
            if power.is_negative() {
                root.recip()
            } else {
                root
            }
        } else {
            let p = S::of(*power.numer() as f64) / S::of(*power.denom() as f64);
            self.value.powf(p)
        };
        Self::new(value, self.dim.powr(power))
    }

    pub fn powi(self, power: i32) -> Self {
        self.powr(Exponent::from_integer(power))
    }

    pub fn sqrt(self) -> Self {
        self.powr(Exponent::new(1, 2))
    }

    pub fn recip(self) -> Self {
        Self::new(self.value.recip(), self.dim.recip())
    }

    pub fn scale(self, factor: S) -> Self {
        Self::new(self.value * factor, self.dim)
    }

    pub fn is_positive_finite(&self) -> bool {
        self.value.is_finite() && self.value > S::zero()
    }

    /// Scientific notation with `digits` significant digits, e.g. `3.375e-14 s`.
    pub fn display_sig(&self, digits: usize) -> String {
        let body = format_sci(self.value, digits);
        if self.dim.is_dimensionless() {
            body
        } else {
            format!("{body} {}", self.dim)
        }
    }
}

/// Locale-independent scientific notation with `digits` significant digits.
pub fn format_sci<S: Real>(value: S, digits: usize) -> String {
    let digits = digits.max(1);
    format!("{:.*e}", digits - 1, value)
}

impl<S: Real> Mul for Quantity<S> {
    type Output = Quantity<S>;

    fn mul(self, rhs: Self) -> Self {
        Self::new(self.value * rhs.value, self.dim * rhs.dim)
    }
}

impl<S: Real> Div for Quantity<S> {
    type Output = Quantity<S>;

    fn div(self, rhs: Self) -> Self {
        Self::new(self.value / rhs.value, self.dim / rhs.dim)
    }
}

impl<S: Real> Neg for Quantity<S> {
    type Output = Quantity<S>;

    fn neg(self) -> Self {
        Self::new(-self.value, self.dim)
    }
}

impl<S: Real> fmt::Display for Quantity<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p + 1).unwrap_or(4);
        f.write_str(&self.display_sig(digits))
    }
}

impl<S: fmt::Debug> fmt::Debug for Quantity<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantity({:?} [{}])", self.value, self.dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Add => "add",
            Operation::Sub => "sub",
            Operation::Mul => "mul",
            Operation::Div => "div",
            Operation::Pow => "pow",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operand<S> {
    Quantity(Quantity<S>),
    Rational(Exponent),
}

impl<S> From<Quantity<S>> for Operand<S> {
    fn from(q: Quantity<S>) -> Self {
        Operand::Quantity(q)
    }
}

impl<S> From<Exponent> for Operand<S> {
    fn from(p: Exponent) -> Self {
        Operand::Rational(p)
    }
}

/// Applies one arithmetic operation with dimension checking.
///
/// `Add`/`Sub`/`Mul`/`Div` take a quantity on the right, `Pow` takes a
/// rational exponent.
pub fn combine<S: Real>(
    lhs: Quantity<S>,
    op: Operation,
    rhs: impl Into<Operand<S>>,
) -> Result<Quantity<S>, QuantityError> {
    match (op, rhs.into()) {
        (Operation::Add, Operand::Quantity(q)) => lhs.try_add(q),
        (Operation::Sub, Operand::Quantity(q)) => lhs.try_sub(q),
        (Operation::Mul, Operand::Quantity(q)) => Ok(lhs * q),
        (Operation::Div, Operand::Quantity(q)) => Ok(lhs / q),
        (Operation::Pow, Operand::Rational(p)) => Ok(lhs.powr(p)),
        (Operation::Pow, Operand::Quantity(_)) => Err(QuantityError::InvalidOperand {
            op,
            given: "quantity",
        }),
        (op, Operand::Rational(_)) => Err(QuantityError::InvalidOperand {
            op,
            given: "rational",
        }),
    }
}
