// SPDX-License-Identifier: Apache-2.0

//! Debye screening of bare charges by the electrolyte.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::quantities::{ConstantsTable, Dimension, Quantity};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScreeningError {
    #[error("electrolyte has no ions: the screening length diverges")]
    Divergent,
    #[error("`{field}` must be {requirement}, got {value}")]
    Invalid {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("`{field}` has dimension [{found}], expected [{expected}]")]
    Dimension {
        field: &'static str,
        expected: Dimension,
        found: Dimension,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonSpecies {
    /// Amount per volume, e.g. `0.15 M`.
    pub concentration: Quantity<f64>,
    /// Signed charge number.
    pub valence: i32,
    pub mass: Quantity<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Electrolyte {
    pub species: Vec<IonSpecies>,
    pub epsilon_r: f64,
    pub temperature: Quantity<f64>,
}

fn check_dim(
    field: &'static str,
    q: &Quantity<f64>,
    expected: Dimension,
) -> Result<(), ScreeningError> {
    if q.dim() == expected {
        Ok(())
    } else {
        Err(ScreeningError::Dimension {
            field,
            expected,
            found: q.dim(),
        })
    }
}

impl Electrolyte {
    pub fn validate(&self) -> Result<(), ScreeningError> {
        let invalid = |field, requirement, value| {
            Err(ScreeningError::Invalid {
                field,
                requirement,
                value,
            })
        };
        if self.species.is_empty() {
            return invalid("species", "non-empty", 0.0);
        }
        if !(self.epsilon_r >= 1.0 && self.epsilon_r.is_finite()) {
            return invalid("epsilon_r", ">= 1", self.epsilon_r);
        }
        check_dim("temperature", &self.temperature, Dimension::TEMPERATURE)?;
        if !self.temperature.is_positive_finite() {
            return invalid("temperature", "positive", self.temperature.si());
        }
        for ion in &self.species {
            check_dim(
                "concentration",
                &ion.concentration,
                Dimension::CONCENTRATION,
            )?;
            check_dim("mass", &ion.mass, Dimension::MASS)?;
            if !(ion.concentration.si() >= 0.0 && ion.concentration.si().is_finite()) {
                return invalid("concentration", "nonnegative", ion.concentration.si());
            }
            if ion.valence == 0 {
                return invalid("valence", "nonzero", 0.0);
            }
        }
        Ok(())
    }
}

/// `λ_D = sqrt(ε_r ε₀ k_B T / Σ n_i (z_i q_e)²)`.
pub fn debye_length(
    electrolyte: &Electrolyte,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ScreeningError> {
    electrolyte.validate()?;
    let charge_density = electrolyte
        .species
        .iter()
        .filter(|ion| ion.concentration.si() > 0.0)
        .map(|ion| {
            let number_density = ion.concentration * constants.avogadro;
            let charge = constants.elementary_charge.scale(ion.valence as f64);
            number_density * charge * charge
        })
        .reduce(|acc, term| acc.try_add(term).expect("identical dimensions"));
    let Some(charge_density) = charge_density else {
        return Err(ScreeningError::Divergent);
    };
    let thermal = constants.vacuum_permittivity.scale(electrolyte.epsilon_r)
        * constants.boltzmann
        * electrolyte.temperature;
    let length = (thermal / charge_density).sqrt();
    debug_assert_eq!(length.dim(), Dimension::LENGTH);
    Ok(length)
}

/// Whether a bare Coulomb interaction across `distance` survives screening.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScreeningRegime {
    /// `distance > 3 λ_D`
    Screened,
    /// `λ_D <= distance <= 3 λ_D`
    Marginal,
    /// `distance < λ_D`
    Unscreened,
}

impl fmt::Display for ScreeningRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScreeningRegime::Screened => "screened",
            ScreeningRegime::Marginal => "marginal",
            ScreeningRegime::Unscreened => "unscreened",
        })
    }
}

/// Multiple of `λ_D` beyond which an interaction counts as screened.
pub const SCREENED_MULTIPLE: f64 = 3.0;

pub fn screened_regime(
    distance: Quantity<f64>,
    debye: Quantity<f64>,
) -> Result<ScreeningRegime, ScreeningError> {
    check_dim("distance", &distance, Dimension::LENGTH)?;
    check_dim("debye_length", &debye, Dimension::LENGTH)?;
    for (field, q) in [("distance", distance), ("debye_length", debye)] {
        if !q.is_positive_finite() {
            return Err(ScreeningError::Invalid {
                field,
                requirement: "positive",
                value: q.si(),
            });
        }
    }
    let ratio = distance.si() / debye.si();
    Ok(if ratio > SCREENED_MULTIPLE {
        ScreeningRegime::Screened
    } else if ratio < 1.0 {
        ScreeningRegime::Unscreened
    } else {
        ScreeningRegime::Marginal
    })
}
