// SPDX-License-Identifier: Apache-2.0

//! Exact dimension vectors over the seven SI base dimensions.

use std::fmt;
use std::ops::{Div, Mul};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Rational exponent type used for every dimension component.
pub type Exponent = Ratio<i32>;

/// The seven SI base dimensions, in the order stored in [`Dimension`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseDimension {
    Mass,
    Length,
    Time,
    Current,
    Temperature,
    Amount,
    LuminousIntensity,
}

impl BaseDimension {
    pub const ALL: [BaseDimension; 7] = [
        BaseDimension::Mass,
        BaseDimension::Length,
        BaseDimension::Time,
        BaseDimension::Current,
        BaseDimension::Temperature,
        BaseDimension::Amount,
        BaseDimension::LuminousIntensity,
    ];

    /// SI base unit symbol.
    pub fn symbol(self) -> &'static str {
        match self {
            BaseDimension::Mass => "kg",
            BaseDimension::Length => "m",
            BaseDimension::Time => "s",
            BaseDimension::Current => "A",
            BaseDimension::Temperature => "K",
            BaseDimension::Amount => "mol",
            BaseDimension::LuminousIntensity => "cd",
        }
    }
}

/// A physical dimension: one rational exponent per base dimension.
///
/// Products and quotients add and subtract exponents componentwise, and
/// powers multiply them by an exact rational, so `sqrt(m·k·T)` keeps its
/// half-integer exponents without any floating point.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    exponents: [Exponent; 7],
}

const fn r(n: i32) -> Exponent {
    Ratio::new_raw(n, 1)
}

const fn dim(m: i32, l: i32, t: i32, i: i32, th: i32, n: i32, j: i32) -> Dimension {
    Dimension {
        exponents: [r(m), r(l), r(t), r(i), r(th), r(n), r(j)],
    }
}

impl Dimension {
    pub const DIMENSIONLESS: Dimension = dim(0, 0, 0, 0, 0, 0, 0);
    pub const MASS: Dimension = dim(1, 0, 0, 0, 0, 0, 0);
    pub const LENGTH: Dimension = dim(0, 1, 0, 0, 0, 0, 0);
    pub const TIME: Dimension = dim(0, 0, 1, 0, 0, 0, 0);
    pub const CURRENT: Dimension = dim(0, 0, 0, 1, 0, 0, 0);
    pub const TEMPERATURE: Dimension = dim(0, 0, 0, 0, 1, 0, 0);
    pub const AMOUNT: Dimension = dim(0, 0, 0, 0, 0, 1, 0);
    pub const LUMINOUS_INTENSITY: Dimension = dim(0, 0, 0, 0, 0, 0, 1);

    pub const AREA: Dimension = dim(0, 2, 0, 0, 0, 0, 0);
    pub const VOLUME: Dimension = dim(0, 3, 0, 0, 0, 0, 0);
    pub const NUMBER_DENSITY: Dimension = dim(0, -3, 0, 0, 0, 0, 0);
    pub const CONCENTRATION: Dimension = dim(0, -3, 0, 0, 0, 1, 0);
    pub const FREQUENCY: Dimension = dim(0, 0, -1, 0, 0, 0, 0);
    pub const FORCE: Dimension = dim(1, 1, -2, 0, 0, 0, 0);
    pub const ENERGY: Dimension = dim(1, 2, -2, 0, 0, 0, 0);
    pub const POWER: Dimension = dim(1, 2, -3, 0, 0, 0, 0);
    pub const PRESSURE: Dimension = dim(1, -1, -2, 0, 0, 0, 0);
    pub const ACTION: Dimension = dim(1, 2, -1, 0, 0, 0, 0);
    pub const CHARGE: Dimension = dim(0, 0, 1, 1, 0, 0, 0);
    pub const DIPOLE_MOMENT: Dimension = dim(0, 1, 1, 1, 0, 0, 0);
    pub const VOLTAGE: Dimension = dim(1, 2, -3, -1, 0, 0, 0);
    pub const PERMITTIVITY: Dimension = dim(-1, -3, 4, 2, 0, 0, 0);
    pub const CAPACITANCE: Dimension = dim(-1, -2, 4, 2, 0, 0, 0);
    pub const ENTROPY: Dimension = dim(1, 2, -2, 0, -1, 0, 0);
    pub const GRAVITATIONAL: Dimension = dim(-1, 3, -2, 0, 0, 0, 0);
    pub const PER_AMOUNT: Dimension = dim(0, 0, 0, 0, 0, -1, 0);

    pub fn from_exponents(exponents: [Exponent; 7]) -> Self {
        Self { exponents }
    }

    pub fn from_integers(exponents: [i32; 7]) -> Self {
        Self {
            exponents: exponents.map(Exponent::from_integer),
        }
    }

    pub fn base(base: BaseDimension) -> Self {
        let mut exponents = [Exponent::zero(); 7];
        exponents[base as usize] = Exponent::one();
        Self { exponents }
    }

    pub fn exponents(&self) -> &[Exponent; 7] {
        &self.exponents
    }

    pub fn exponent(&self, base: BaseDimension) -> Exponent {
        self.exponents[base as usize]
    }

    pub fn is_dimensionless(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn powr(&self, power: Exponent) -> Self {
        Self {
            exponents: self.exponents.map(|e| e * power),
        }
    }

    pub fn powi(&self, power: i32) -> Self {
        self.powr(Exponent::from_integer(power))
    }

    pub fn recip(&self) -> Self {
        self.powi(-1)
    }
}

impl Default for Dimension {
    fn default() -> Self {
        Self::DIMENSIONLESS
    }
}

impl Mul for Dimension {
    type Output = Dimension;

    // Exponents add when quantities multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Dimension) -> Dimension {
        let mut exponents = self.exponents;
        for (e, o) in exponents.iter_mut().zip(rhs.exponents) {
            *e += o;
        }
        Dimension { exponents }
    }
}

impl Div for Dimension {
    type Output = Dimension;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Dimension) -> Dimension {
        let mut exponents = self.exponents;
        for (e, o) in exponents.iter_mut().zip(rhs.exponents) {
            *e -= o;
        }
        Dimension { exponents }
    }
}

/// Formats as a product of SI base units, e.g. `kg m^2 s^-2`.
impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return f.write_str("1");
        }
        let mut first = true;
        for (base, e) in BaseDimension::ALL.iter().zip(self.exponents) {
            if e.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(base.symbol())?;
            if e.is_integer() {
                if e != Exponent::one() {
                    write!(f, "^{}", e.numer())?;
                }
            } else if e.is_negative() {
                write!(f, "^(-{}/{})", e.numer().abs(), e.denom())?;
            } else {
                write!(f, "^({}/{})", e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dimension({self})")
    }
}
