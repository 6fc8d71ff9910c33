// SPDX-License-Identifier: Apache-2.0

//! Pinned physical constants.
//!
//! One versioned table feeds every computation, so a report's numbers can be
//! reproduced from its `constants_version` alone. The default table holds
//! CODATA 2018 values; an alternative table can be loaded from JSON.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::dimension::Dimension;
use super::quantity::Quantity;
use crate::scalar::Real;

pub const CODATA_2018_VERSION: &str = "codata2018-v1";

/// Raw SI values of the table, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantValues {
    pub version: String,
    /// F/m
    pub vacuum_permittivity: f64,
    /// J/K
    pub boltzmann: f64,
    /// J s
    pub reduced_planck: f64,
    /// m^3 kg^-1 s^-2
    pub gravitational: f64,
    /// C
    pub elementary_charge: f64,
    /// kg
    pub atomic_mass_unit: f64,
    /// mol^-1
    pub avogadro: f64,
    /// m^-3, liquid water at 55.5 mol/L
    pub water_number_density: f64,
    /// C m
    pub debye_unit: f64,
}

impl ConstantValues {
    pub fn codata2018() -> Self {
        Self {
            version: CODATA_2018_VERSION.to_string(),
            vacuum_permittivity: 8.8541878128e-12,
            boltzmann: 1.380649e-23,
            reduced_planck: 1.054571817e-34,
            gravitational: 6.67430e-11,
            elementary_charge: 1.602176634e-19,
            atomic_mass_unit: 1.66053906660e-27,
            avogadro: 6.02214076e23,
            water_number_density: 3.34e28,
            // 1 Debye = (1/3) x 1e-29 C m
            debye_unit: 1e-29 / 3.0,
        }
    }
}

impl Default for ConstantValues {
    fn default() -> Self {
        Self::codata2018()
    }
}

#[derive(Debug, Error)]
pub enum ConstantsError {
    #[error("constants table: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("constants table: `{0}` must be positive and finite")]
    NotPositive(&'static str),
}

/// The constants as dimensioned quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsTable<S> {
    pub version: String,
    pub vacuum_permittivity: Quantity<S>,
    pub boltzmann: Quantity<S>,
    pub reduced_planck: Quantity<S>,
    pub gravitational: Quantity<S>,
    pub elementary_charge: Quantity<S>,
    pub atomic_mass_unit: Quantity<S>,
    pub avogadro: Quantity<S>,
    pub water_number_density: Quantity<S>,
    pub debye_unit: Quantity<S>,
}

impl<S: Real> ConstantsTable<S> {
    pub fn codata2018() -> Self {
        Self::from_values(&ConstantValues::codata2018()).expect("built-in constants are positive")
    }

    pub fn from_values(v: &ConstantValues) -> Result<Self, ConstantsError> {
        let q = |name: &'static str, x: f64, dim: Dimension| {
            if x.is_finite() && x > 0.0 {
                Ok(Quantity::new(S::of(x), dim))
            } else {
                Err(ConstantsError::NotPositive(name))
            }
        };
        Ok(Self {
            version: v.version.clone(),
            vacuum_permittivity: q(
                "vacuum_permittivity",
                v.vacuum_permittivity,
                Dimension::PERMITTIVITY,
            )?,
            boltzmann: q("boltzmann", v.boltzmann, Dimension::ENTROPY)?,
            reduced_planck: q("reduced_planck", v.reduced_planck, Dimension::ACTION)?,
            gravitational: q("gravitational", v.gravitational, Dimension::GRAVITATIONAL)?,
            elementary_charge: q("elementary_charge", v.elementary_charge, Dimension::CHARGE)?,
            atomic_mass_unit: q("atomic_mass_unit", v.atomic_mass_unit, Dimension::MASS)?,
            avogadro: q("avogadro", v.avogadro, Dimension::PER_AMOUNT)?,
            water_number_density: q(
                "water_number_density",
                v.water_number_density,
                Dimension::NUMBER_DENSITY,
            )?,
            debye_unit: q("debye_unit", v.debye_unit, Dimension::DIPOLE_MOMENT)?,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self, ConstantsError> {
        let values: ConstantValues = serde_json::from_str(text)?;
        Self::from_values(&values)
    }
}

impl<S: Real> Default for ConstantsTable<S> {
    fn default() -> Self {
        Self::codata2018()
    }
}
