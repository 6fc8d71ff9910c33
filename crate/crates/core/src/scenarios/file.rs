// SPDX-License-Identifier: Apache-2.0

//! On-disk scenario documents.
//!
//! Every numeric field is written `{"value": 24, "unit": "nm"}` and unknown
//! keys are rejected at every level.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{DipoleSettings, Dynamics, IonCoulombSettings, Scenario};
use crate::geometry::{OrientationTriple, StandoffSpec};
use crate::orchor::{GranularComposition, OrchOrScenario, SeparationLevel};
use crate::quantities::{Dimension, Quantity, UnitRegistry};
use crate::screening::{Electrolyte, IonSpecies};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl From<serde_json::Error> for ScenarioError {
    fn from(e: serde_json::Error) -> Self {
        ScenarioError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Measured {
    pub value: f64,
    pub unit: String,
}

impl Measured {
    pub fn new(value: f64, unit: &str) -> Self {
        Self {
            value,
            unit: unit.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IonCoulombBlock {
    pub ion_mass: Measured,
    pub charge_count: Measured,
    pub separation: Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleBlock {
    pub ion_mass: Measured,
    pub dipole_moment: Measured,
    pub separation: Measured,
    pub epsilon_r: Measured,
    pub cos_theta: Measured,
    pub cos_phi: Measured,
    pub cos_psi: Measured,
    pub tubulin_charge: Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StandoffBlock {
    pub eta: Measured,
    pub diameter: Measured,
    pub gel_factor: Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesBlock {
    pub concentration: Measured,
    pub valence: Measured,
    pub mass: Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectrolyteBlock {
    pub temperature: Measured,
    pub epsilon_r: Measured,
    pub species: Vec<SpeciesBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrchOrBlock {
    pub level: SeparationLevel,
    pub monomer_mass: Measured,
    pub monomer_radius: Measured,
    pub separation: Measured,
    pub n_tubulin: Measured,
    pub coherent_fraction: Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsBlock {
    pub kink: Measured,
    pub neural: Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub label: String,
    pub ion_coulomb: IonCoulombBlock,
    pub dipole: DipoleBlock,
    pub standoff: StandoffBlock,
    pub electrolyte: ElectrolyteBlock,
    pub orchor: OrchOrBlock,
    pub dynamics: DynamicsBlock,
    pub seed: u64,
}

struct Reader<'a> {
    registry: &'a UnitRegistry,
}

impl Reader<'_> {
    fn quantity(
        &self,
        path: &str,
        m: &Measured,
        expected: Dimension,
    ) -> Result<Quantity<f64>, ScenarioError> {
        let field = |message: String| ScenarioError::Field {
            path: path.to_string(),
            message,
        };
        if !m.value.is_finite() {
            return Err(field(format!("value {} is not finite", m.value)));
        }
        let q = self
            .registry
            .quantity(m.value, &m.unit)
            .map_err(|e| field(e.to_string()))?;
        if q.dim() != expected {
            return Err(field(format!(
                "unit `{}` has dimension [{}], expected [{}]",
                m.unit,
                q.dim(),
                expected
            )));
        }
        Ok(q)
    }

    fn scalar(&self, path: &str, m: &Measured) -> Result<f64, ScenarioError> {
        Ok(self.quantity(path, m, Dimension::DIMENSIONLESS)?.si())
    }

    fn integer(&self, path: &str, m: &Measured) -> Result<i32, ScenarioError> {
        let v = self.scalar(path, m)?;
        if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
            return Err(ScenarioError::Field {
                path: path.to_string(),
                message: format!("expected an integer, got {v}"),
            });
        }
        Ok(v as i32)
    }
}

impl ScenarioFile {
    pub fn from_json_str(text: &str) -> Result<Self, ScenarioError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario files serialize")
    }

    /// Resolves units and dimensions. Range checks are left to the models,
    /// which report them per result.
    pub fn to_scenario(&self, registry: &UnitRegistry) -> Result<Scenario, ScenarioError> {
        let r = Reader { registry };
        let ion = &self.ion_coulomb;
        let dip = &self.dipole;
        let orientation = OrientationTriple::new(
            r.scalar("dipole.cos_theta", &dip.cos_theta)?,
            r.scalar("dipole.cos_phi", &dip.cos_phi)?,
            r.scalar("dipole.cos_psi", &dip.cos_psi)?,
        )
        .map_err(|e| ScenarioError::Field {
            path: "dipole".into(),
            message: e.to_string(),
        })?;
        let species = self
            .electrolyte
            .species
            .iter()
            .enumerate()
            .map(|(i, sp)| {
                let p = |f: &str| format!("electrolyte.species[{i}].{f}");
                Ok(IonSpecies {
                    concentration: r.quantity(
                        &p("concentration"),
                        &sp.concentration,
                        Dimension::CONCENTRATION,
                    )?,
                    valence: r.integer(&p("valence"), &sp.valence)?,
                    mass: r.quantity(&p("mass"), &sp.mass, Dimension::MASS)?,
                })
            })
            .collect::<Result<Vec<_>, ScenarioError>>()?;
        let orch = &self.orchor;
        Ok(Scenario {
            label: self.label.clone(),
            ion_coulomb: IonCoulombSettings {
                ion_mass: r.quantity("ion_coulomb.ion_mass", &ion.ion_mass, Dimension::MASS)?,
                charge_count: r.scalar("ion_coulomb.charge_count", &ion.charge_count)?,
                separation: r.quantity(
                    "ion_coulomb.separation",
                    &ion.separation,
                    Dimension::LENGTH,
                )?,
            },
            dipole: DipoleSettings {
                ion_mass: r.quantity("dipole.ion_mass", &dip.ion_mass, Dimension::MASS)?,
                dipole_moment: r.quantity(
                    "dipole.dipole_moment",
                    &dip.dipole_moment,
                    Dimension::DIPOLE_MOMENT,
                )?,
                separation: r.quantity("dipole.separation", &dip.separation, Dimension::LENGTH)?,
                epsilon_r: r.scalar("dipole.epsilon_r", &dip.epsilon_r)?,
                orientation,
                tubulin_charge: r.quantity(
                    "dipole.tubulin_charge",
                    &dip.tubulin_charge,
                    Dimension::CHARGE,
                )?,
            },
            standoff: StandoffSpec {
                eta: r.scalar("standoff.eta", &self.standoff.eta)?,
                diameter: r.quantity(
                    "standoff.diameter",
                    &self.standoff.diameter,
                    Dimension::LENGTH,
                )?,
                gel_factor: r.scalar("standoff.gel_factor", &self.standoff.gel_factor)?,
            },
            standoff_override: None,
            electrolyte: Electrolyte {
                species,
                epsilon_r: r.scalar("electrolyte.epsilon_r", &self.electrolyte.epsilon_r)?,
                temperature: r.quantity(
                    "electrolyte.temperature",
                    &self.electrolyte.temperature,
                    Dimension::TEMPERATURE,
                )?,
            },
            orchor: OrchOrScenario {
                level: orch.level,
                monomer_mass: r.quantity(
                    "orchor.monomer_mass",
                    &orch.monomer_mass,
                    Dimension::MASS,
                )?,
                monomer_radius: r.quantity(
                    "orchor.monomer_radius",
                    &orch.monomer_radius,
                    Dimension::LENGTH,
                )?,
                separation: r.quantity("orchor.separation", &orch.separation, Dimension::LENGTH)?,
                composition: GranularComposition::tubulin_dimer(),
                n_tubulin: r.scalar("orchor.n_tubulin", &orch.n_tubulin)?,
                coherent_fraction: r.scalar("orchor.coherent_fraction", &orch.coherent_fraction)?,
            },
            dynamics: Dynamics {
                kink: r.quantity("dynamics.kink", &self.dynamics.kink, Dimension::TIME)?,
                neural: r.quantity("dynamics.neural", &self.dynamics.neural, Dimension::TIME)?,
            },
            seed: self.seed,
        })
    }
}
