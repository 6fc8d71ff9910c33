// SPDX-License-Identifier: Apache-2.0

//! Unit registry and conversion.
//!
//! Unit expressions are products of registered names with optional integer
//! or rational powers: `kg*m^2/s^2`, `C·m`, `mol/L`, `m^-3`, `m^(1/2)`.
//! A `/` applies to the single factor that follows it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use super::constants::ConstantValues;
use super::dimension::{Dimension, Exponent};
use super::quantity::Quantity;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitError {
    #[error("unknown unit `{0}`")]
    Unknown(String),
    #[error("malformed unit expression `{expr}`: {reason}")]
    Malformed { expr: String, reason: String },
    #[error("cannot express [{from}] in `{unit}` [{to}]")]
    Incompatible {
        unit: String,
        from: Dimension,
        to: Dimension,
    },
}

/// A unit: its SI scale factor and dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unit {
    pub factor: f64,
    pub dim: Dimension,
}

impl Unit {
    pub const fn new(factor: f64, dim: Dimension) -> Self {
        Self { factor, dim }
    }

    fn powr(self, p: Exponent) -> Self {
        let factor = if p.is_integer() {
            self.factor.powi(*p.numer())
        } else {
            self.factor.powf(*p.numer() as f64 / *p.denom() as f64)
        };
        Self::new(factor, self.dim.powr(p))
    }
}

#[derive(Debug, Clone)]
pub struct UnitRegistry {
    units: BTreeMap<&'static str, Unit>,
}

impl UnitRegistry {
    /// The SI registry plus the domain units, with conversion factors taken
    /// from `constants`.
    pub fn new(constants: &ConstantValues) -> Self {
        use Dimension as D;
        let amu = constants.atomic_mass_unit;
        let ev = constants.elementary_charge;
        let entries: &[(&'static str, f64, Dimension)] = &[
            ("1", 1.0, D::DIMENSIONLESS),
            ("dimensionless", 1.0, D::DIMENSIONLESS),
            // length
            ("m", 1.0, D::LENGTH),
            ("cm", 1e-2, D::LENGTH),
            ("mm", 1e-3, D::LENGTH),
            ("um", 1e-6, D::LENGTH),
            ("µm", 1e-6, D::LENGTH),
            ("nm", 1e-9, D::LENGTH),
            ("angstrom", 1e-10, D::LENGTH),
            ("Å", 1e-10, D::LENGTH),
            ("pm", 1e-12, D::LENGTH),
            ("fm", 1e-15, D::LENGTH),
            // mass
            ("kg", 1.0, D::MASS),
            ("g", 1e-3, D::MASS),
            ("amu", amu, D::MASS),
            ("u", amu, D::MASS),
            ("Da", amu, D::MASS),
            ("kDa", 1e3 * amu, D::MASS),
            // time
            ("s", 1.0, D::TIME),
            ("ms", 1e-3, D::TIME),
            ("us", 1e-6, D::TIME),
            ("µs", 1e-6, D::TIME),
            ("ns", 1e-9, D::TIME),
            ("ps", 1e-12, D::TIME),
            ("fs", 1e-15, D::TIME),
            // other base units
            ("A", 1.0, D::CURRENT),
            ("K", 1.0, D::TEMPERATURE),
            ("mol", 1.0, D::AMOUNT),
            ("cd", 1.0, D::LUMINOUS_INTENSITY),
            // derived
            ("Hz", 1.0, D::FREQUENCY),
            ("N", 1.0, D::FORCE),
            ("J", 1.0, D::ENERGY),
            ("eV", ev, D::ENERGY),
            ("W", 1.0, D::POWER),
            ("Pa", 1.0, D::PRESSURE),
            ("C", 1.0, D::CHARGE),
            ("e", ev, D::CHARGE),
            ("V", 1.0, D::VOLTAGE),
            ("F", 1.0, D::CAPACITANCE),
            ("Debye", constants.debye_unit, D::DIPOLE_MOMENT),
            ("L", 1e-3, D::VOLUME),
            // concentration
            ("M", 1e3, D::CONCENTRATION),
            ("molar", 1e3, D::CONCENTRATION),
            ("mM", 1.0, D::CONCENTRATION),
            ("uM", 1e-3, D::CONCENTRATION),
        ];
        let units = entries
            .iter()
            .map(|&(name, factor, dim)| (name, Unit::new(factor, dim)))
            .collect();
        Self { units }
    }

    /// Registry built on the pinned CODATA 2018 table.
    pub fn standard() -> &'static UnitRegistry {
        static REGISTRY: OnceLock<UnitRegistry> = OnceLock::new();
        REGISTRY.get_or_init(|| UnitRegistry::new(&ConstantValues::codata2018()))
    }

    pub fn names(&self) -> impl Iterator<Item = (&'static str, &Unit)> {
        self.units.iter().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, name: &str) -> Option<Unit> {
        self.units.get(name).copied()
    }

    /// Parses a unit expression.
    pub fn parse(&self, expr: &str) -> Result<Unit, UnitError> {
        let malformed = |reason: &str| UnitError::Malformed {
            expr: expr.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = expr.trim();
        if trimmed.is_empty() {
            return Err(malformed("empty"));
        }
        let mut total = Unit::new(1.0, Dimension::DIMENSIONLESS);
        let mut invert_next = false;
        let mut token = String::new();
        let mut depth = 0usize;
        let mut expect_factor = true;

        let flush = |token: &mut String, invert: bool, total: &mut Unit| -> Result<(), UnitError> {
            let text = std::mem::take(token);
            let text = text.trim();
            if text.is_empty() {
                return Err(malformed("missing factor"));
            }
            let mut unit = self.factor(text, expr)?;
            if invert {
                unit = unit.powr(Exponent::from_integer(-1));
            }
            total.factor *= unit.factor;
            total.dim = total.dim * unit.dim;
            Ok(())
        };

        for c in trimmed.chars() {
            match c {
                '(' => {
                    depth += 1;
                    token.push(c);
                }
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| malformed("unbalanced `)`"))?;
                    token.push(c);
                }
                '*' | '·' | '/' | ' ' if depth == 0 => {
                    if !token.trim().is_empty() {
                        flush(&mut token, invert_next, &mut total)?;
                        invert_next = false;
                        expect_factor = false;
                    }
                    if c == '/' {
                        if invert_next || expect_factor {
                            return Err(malformed("misplaced `/`"));
                        }
                        invert_next = true;
                        expect_factor = true;
                    } else if c != ' ' {
                        expect_factor = true;
                    }
                }
                _ => token.push(c),
            }
        }
        if depth != 0 {
            return Err(malformed("unbalanced `(`"));
        }
        if token.trim().is_empty() {
            return Err(malformed("trailing operator"));
        }
        flush(&mut token, invert_next, &mut total)?;
        Ok(total)
    }

    fn factor(&self, text: &str, expr: &str) -> Result<Unit, UnitError> {
        let (name, power) = match text.split_once('^') {
            Some((name, p)) => (name.trim(), Some(parse_exponent(p.trim(), expr)?)),
            None => (text, None),
        };
        let unit = self
            .get(name)
            .ok_or_else(|| UnitError::Unknown(name.to_string()))?;
        Ok(match power {
            Some(p) => unit.powr(p),
            None => unit,
        })
    }

    /// Converts `value` expressed in `unit` to a quantity in SI.
    pub fn quantity<S: Real>(&self, value: S, unit: &str) -> Result<Quantity<S>, UnitError> {
        let u = self.parse(unit)?;
        Ok(Quantity::new(value * S::of(u.factor), u.dim))
    }

    /// Expresses `q` in `unit`; only the returned number changes, never `q`.
    pub fn convert<S: Real>(&self, q: &Quantity<S>, unit: &str) -> Result<S, UnitError> {
        let u = self.parse(unit)?;
        if u.dim != q.dim() {
            return Err(UnitError::Incompatible {
                unit: unit.to_string(),
                from: q.dim(),
                to: u.dim,
            });
        }
        Ok(q.si() / S::of(u.factor))
    }

    /// Dimension of a unit expression, ignoring its scale.
    pub fn dimension_of(&self, unit: &str) -> Result<Dimension, UnitError> {
        Ok(self.parse(unit)?.dim)
    }
}

/// Parses `3`, `-2`, `(1/2)`, `(-1/3)` or `1/2`.
pub fn parse_exponent(text: &str, context: &str) -> Result<Exponent, UnitError> {
    let malformed = || UnitError::Malformed {
        expr: context.to_string(),
        reason: format!("bad exponent `{text}`"),
    };
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(text)
        .trim();
    let (num, den) = match inner.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (inner, "1"),
    };
    let num: i32 = num.parse().map_err(|_| malformed())?;
    let den: i32 = den.parse().map_err(|_| malformed())?;
    if den == 0 {
        return Err(malformed());
    }
    Ok(Exponent::new(num, den))
}

/// Builds a quantity from a value in a registered unit expression.
pub fn make_quantity<S: Real>(value: S, unit: &str) -> Result<Quantity<S>, UnitError> {
    UnitRegistry::standard().quantity(value, unit)
}

/// Expresses `q` in `unit` using the standard registry.
pub fn convert<S: Real>(q: &Quantity<S>, unit: &str) -> Result<S, UnitError> {
    UnitRegistry::standard().convert(q, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn debye_conversions() {
        let one = make_quantity(1.0_f64, "Debye").unwrap();
        assert_eq!(one.dim(), Dimension::DIPOLE_MOMENT);
        assert_relative_eq!(one.si(), 3.333_333_333_333_333e-30, max_relative = 1e-15);

        let total = make_quantity(1714.0_f64, "Debye").unwrap();
        assert!((total.si() - 5.7e-27).abs() / 5.7e-27 < 0.01);
    }

    #[test]
    fn zero_nanometres() {
        let q = make_quantity(0.0_f64, "nm").unwrap();
        assert_eq!(q.si(), 0.0);
        assert_eq!(q.dim(), Dimension::LENGTH);
    }

    #[test]
    fn unknown_unit() {
        assert_eq!(
            make_quantity(1.0_f64, "furlong").unwrap_err(),
            UnitError::Unknown("furlong".into())
        );
    }

    #[test]
    fn composite_expressions() {
        let reg = UnitRegistry::standard();
        assert_eq!(reg.dimension_of("kg*m^2/s^2").unwrap(), Dimension::ENERGY);
        assert_eq!(reg.dimension_of("C·m").unwrap(), Dimension::DIPOLE_MOMENT);
        assert_eq!(reg.dimension_of("C m").unwrap(), Dimension::DIPOLE_MOMENT);
        assert_eq!(reg.dimension_of("m^-3").unwrap(), Dimension::NUMBER_DENSITY);
        assert_eq!(reg.dimension_of("F/m").unwrap(), Dimension::PERMITTIVITY);
        assert_eq!(
            reg.dimension_of("J^(1/2)").unwrap(),
            Dimension::ENERGY.powr(Exponent::new(1, 2))
        );
        let molar = reg.quantity(0.15_f64, "mol/L").unwrap();
        assert_eq!(molar, reg.quantity(0.15, "M").unwrap());
        assert_relative_eq!(molar.si(), 150.0, max_relative = 1e-15);
        assert!(reg.parse("m//s").is_err());
        assert!(reg.parse("m/").is_err());
        assert!(reg.parse("m^x").is_err());
        assert!(reg.parse("").is_err());
    }

    #[test]
    fn convert_checks_dimension() {
        let q = make_quantity(24.0_f64, "nm").unwrap();
        assert_relative_eq!(
            convert(&q, "angstrom").unwrap(),
            240.0,
            max_relative = 1e-14
        );
        assert!(matches!(
            convert(&q, "s"),
            Err(UnitError::Incompatible { .. })
        ));
    }

    #[test]
    fn kda_and_ev() {
        let m = make_quantity(55.0_f64, "kDa").unwrap();
        assert_relative_eq!(m.si(), 55e3 * 1.66053906660e-27, max_relative = 1e-15);
        let e = make_quantity(0.3_f64, "eV").unwrap();
        assert_relative_eq!(e.si(), 0.3 * 1.602176634e-19, max_relative = 1e-15);
    }
}
