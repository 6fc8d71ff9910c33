// SPDX-License-Identifier: Apache-2.0

//! Gravitational self-energy of a superposed tubulin mass distribution and
//! the collapse time `τ = ħ / E`.
//!
//! Three separation levels are compared per tubulin dimer:
//!
//! * partial displacement `s` of each monomer sphere,
//! * complete separation of every atomic nucleus,
//! * complete separation of every nucleon.
//!
//! For the complete separations each granule contributes the change in
//! uniform-sphere interaction energy between coincidence (`6/5 · G m²/r`)
//! and contact (`1/2 · G m²/r`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{positive, positive_scalar, ModelError};
use crate::quantities::{make_quantity, ConstantsTable, Dimension, Exponent, Quantity};

/// `6/5 − 1/2`: coincidence-to-contact coefficient for two uniform spheres.
pub const CONTACT_COEFFICIENT: f64 = 6.0 / 5.0 - 1.0 / 2.0;

/// Nuclear radius coefficient `r₀` in `r = r₀ A^(1/3)`, in femtometres.
pub const NUCLEAR_RADIUS_FM: f64 = 1.2;

pub const DEFAULT_COMPOSITION: &str = include_str!("../data/tubulin_dimer_composition.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationLevel {
    ProteinSpherePartial,
    AtomicNuclei,
    Nucleons,
}

impl SeparationLevel {
    pub const ALL: [SeparationLevel; 3] = [
        SeparationLevel::ProteinSpherePartial,
        SeparationLevel::AtomicNuclei,
        SeparationLevel::Nucleons,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeparationLevel::ProteinSpherePartial => "protein_sphere_partial",
            SeparationLevel::AtomicNuclei => "atomic_nuclei",
            SeparationLevel::Nucleons => "nucleons",
        }
    }
}

impl fmt::Display for SeparationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeparationLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown separation level `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Granule {
    pub element: String,
    pub mass_number: u32,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompositionError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("composition is empty")]
    Empty,
    #[error("`{element}`: mass number and count must be positive")]
    NonPositive { element: String },
    #[error("composition mass {found:e} kg is not within 20% of {expected:e} kg")]
    Mass { found: f64, expected: f64 },
}

/// Nuclear inventory of one tubulin dimer.
#[derive(Debug, Clone, PartialEq)]
pub struct GranularComposition {
    pub granules: Vec<Granule>,
    pub nuclear_radius: Quantity<f64>,
}

impl GranularComposition {
    /// The shipped 110 kDa dimer inventory with `r₀ = 1.2 fm`.
    pub fn tubulin_dimer() -> Self {
        Self::parse_table(DEFAULT_COMPOSITION).expect("shipped composition parses")
    }

    /// Parses an `element, A, count` table. The first non-comment line is
    /// the header; `#` starts a comment line.
    pub fn parse_table(text: &str) -> Result<Self, CompositionError> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = rows.next().ok_or(CompositionError::Empty)?;
        let columns: Vec<_> = header.split(',').map(str::trim).collect();
        if columns != ["element", "A", "count"] {
            return Err(CompositionError::Parse {
                line,
                message: format!("expected header `element, A, count`, got `{header}`"),
            });
        }
        let mut granules = Vec::new();
        for (line, row) in rows {
            let fields: Vec<_> = row.split(',').map(str::trim).collect();
            let [element, a, count] = fields[..] else {
                return Err(CompositionError::Parse {
                    line,
                    message: format!("expected 3 fields, got {}", fields.len()),
                });
            };
            let parse_err = |what: &str, v: &str| CompositionError::Parse {
                line,
                message: format!("bad {what} `{v}`"),
            };
            granules.push(Granule {
                element: element.to_string(),
                mass_number: a.parse().map_err(|_| parse_err("mass number", a))?,
                count: count.parse().map_err(|_| parse_err("count", count))?,
            });
        }
        let comp = Self {
            granules,
            nuclear_radius: make_quantity(NUCLEAR_RADIUS_FM, "fm").expect("fm is registered"),
        };
        comp.validate()?;
        Ok(comp)
    }

    pub fn validate(&self) -> Result<(), CompositionError> {
        if self.granules.is_empty() {
            return Err(CompositionError::Empty);
        }
        for g in &self.granules {
            if g.mass_number == 0 || g.count == 0 {
                return Err(CompositionError::NonPositive {
                    element: g.element.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn total_mass_number(&self) -> u64 {
        self.granules
            .iter()
            .map(|g| g.mass_number as u64 * g.count)
            .sum()
    }

    pub fn total_mass(&self, constants: &ConstantsTable<f64>) -> Quantity<f64> {
        constants
            .atomic_mass_unit
            .scale(self.total_mass_number() as f64)
    }

    /// Checks the inventory against a dimer mass to within 20%.
    pub fn check_mass(
        &self,
        dimer_mass: Quantity<f64>,
        constants: &ConstantsTable<f64>,
    ) -> Result<(), CompositionError> {
        let found = self.total_mass(constants).si();
        let expected = dimer_mass.si();
        if (found - expected).abs() <= 0.2 * expected {
            Ok(())
        } else {
            Err(CompositionError::Mass { found, expected })
        }
    }

    /// Multiplies every count by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        let mut out = self.clone();
        for g in &mut out.granules {
            g.count *= factor;
        }
        out
    }
}

/// `(6/5 − 1/2) G m² / r`: energy to move one uniform sphere of mass `m` and
/// radius `r` from coincidence with its superposed partner to contact.
pub fn contact_energy(
    mass: Quantity<f64>,
    radius: Quantity<f64>,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ModelError> {
    positive("mass", &mass, Dimension::MASS)?;
    positive("radius", &radius, Dimension::LENGTH)?;
    Ok((constants.gravitational * mass.powi(2) / radius).scale(CONTACT_COEFFICIENT))
}

/// `E = G M² s² / (2 r³) · (1 − 3s/(8r) + s³/(80 r³))` for `0 <= s <= 2r`.
pub fn partial_sphere_energy(
    mass: Quantity<f64>,
    radius: Quantity<f64>,
    separation: Quantity<f64>,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ModelError> {
    positive("mass", &mass, Dimension::MASS)?;
    positive("radius", &radius, Dimension::LENGTH)?;
    if separation.dim() != Dimension::LENGTH {
        return Err(ModelError::dimension(
            "separation",
            Dimension::LENGTH,
            separation.dim(),
        ));
    }
    let (s, r) = (separation.si(), radius.si());
    if s.is_nan() || s < 0.0 {
        return Err(ModelError::Domain {
            field: "separation",
            requirement: "nonnegative",
            value: s,
        });
    }
    if s > 2.0 * r {
        return Err(ModelError::OutOfRegime {
            separation: s,
            diameter: 2.0 * r,
        });
    }
    let x = (separation / radius)
        .si_as(Dimension::DIMENSIONLESS)
        .expect("length over length");
    let shape = 1.0 - 3.0 * x / 8.0 + x.powi(3) / 80.0;
    let scale =
        constants.gravitational * mass.powi(2) * separation.powi(2) / radius.powi(3).scale(2.0);
    Ok(scale.scale(shape))
}

/// Self-energy of one dimer when every granule at `level` separates fully.
pub fn granular_separation_energy(
    level: SeparationLevel,
    composition: &GranularComposition,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ModelError> {
    composition.validate().map_err(|_| ModelError::Domain {
        field: "composition",
        requirement: "non-empty with positive entries",
        value: composition.granules.len() as f64,
    })?;
    positive(
        "nuclear_radius",
        &composition.nuclear_radius,
        Dimension::LENGTH,
    )?;
    match level {
        SeparationLevel::AtomicNuclei => {
            let mut total = Quantity::new(0.0, Dimension::ENERGY);
            for g in &composition.granules {
                let a = g.mass_number as f64;
                let mass = constants.atomic_mass_unit.scale(a);
                let radius = composition
                    .nuclear_radius
                    .scale(Quantity::dimensionless(a).powr(Exponent::new(1, 3)).si());
                let each = contact_energy(mass, radius, constants)?;
                total = total
                    .try_add(each.scale(g.count as f64))
                    .expect("energies add");
            }
            Ok(total)
        }
        SeparationLevel::Nucleons => {
            let each = contact_energy(
                constants.atomic_mass_unit,
                composition.nuclear_radius,
                constants,
            )?;
            Ok(each.scale(composition.total_mass_number() as f64))
        }
        SeparationLevel::ProteinSpherePartial => Err(ModelError::Domain {
            field: "level",
            requirement: "a complete-separation level",
            value: 0.0,
        }),
    }
}

/// `τ = ħ / E`.
pub fn orch_or_tau(
    energy: Quantity<f64>,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ModelError> {
    positive("energy", &energy, Dimension::ENERGY)?;
    Ok(constants.reduced_planck / energy)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrchOrScenario {
    pub level: SeparationLevel,
    pub monomer_mass: Quantity<f64>,
    pub monomer_radius: Quantity<f64>,
    /// Displacement of each monomer sphere at the partial level.
    pub separation: Quantity<f64>,
    pub composition: GranularComposition,
    /// Tubulin dimers participating in the superposition.
    pub n_tubulin: f64,
    /// Fraction of a neuron's tubulin assumed coherent; relates
    /// `n_tubulin` to a neuron count and does not enter the energy.
    pub coherent_fraction: f64,
}

impl OrchOrScenario {
    pub fn validate(&self) -> Result<(), ModelError> {
        positive("monomer_mass", &self.monomer_mass, Dimension::MASS)?;
        positive("monomer_radius", &self.monomer_radius, Dimension::LENGTH)?;
        let (s, r) = (self.separation.si(), self.monomer_radius.si());
        if self.separation.dim() != Dimension::LENGTH {
            return Err(ModelError::dimension(
                "separation",
                Dimension::LENGTH,
                self.separation.dim(),
            ));
        }
        if s.is_nan() || s < 0.0 {
            return Err(ModelError::Domain {
                field: "separation",
                requirement: "nonnegative",
                value: s,
            });
        }
        if s > 2.0 * r {
            return Err(ModelError::OutOfRegime {
                separation: s,
                diameter: 2.0 * r,
            });
        }
        positive_scalar("n_tubulin", self.n_tubulin)?;
        if self.n_tubulin < 1.0 {
            return Err(ModelError::Domain {
                field: "n_tubulin",
                requirement: ">= 1",
                value: self.n_tubulin,
            });
        }
        if !(self.coherent_fraction > 0.0 && self.coherent_fraction <= 1.0) {
            return Err(ModelError::Domain {
                field: "coherent_fraction",
                requirement: "in (0, 1]",
                value: self.coherent_fraction,
            });
        }
        Ok(())
    }

    /// Self-energy per dimer at `level`. The partial level counts both
    /// monomers of the dimer.
    pub fn level_energy(
        &self,
        level: SeparationLevel,
        constants: &ConstantsTable<f64>,
    ) -> Result<Quantity<f64>, ModelError> {
        match level {
            SeparationLevel::ProteinSpherePartial => Ok(partial_sphere_energy(
                self.monomer_mass,
                self.monomer_radius,
                self.separation,
                constants,
            )?
            .scale(2.0)),
            other => granular_separation_energy(other, &self.composition, constants),
        }
    }

    /// `n_tubulin` times the per-dimer energy at the scenario's level.
    pub fn total_energy(
        &self,
        constants: &ConstantsTable<f64>,
    ) -> Result<Quantity<f64>, ModelError> {
        self.validate()?;
        Ok(self
            .level_energy(self.level, constants)?
            .scale(self.n_tubulin))
    }

    pub fn collapse_time(
        &self,
        constants: &ConstantsTable<f64>,
    ) -> Result<Quantity<f64>, ModelError> {
        orch_or_tau(self.total_energy(constants)?, constants)
    }
}

/// Per-dimer self-energy at each separation level.
pub type EnergyTable = Vec<(SeparationLevel, Quantity<f64>)>;

/// The level with the largest per-dimer self-energy, and the full table.
pub fn dominant_level(
    scenario: &OrchOrScenario,
    constants: &ConstantsTable<f64>,
) -> Result<(SeparationLevel, EnergyTable), ModelError> {
    scenario.validate()?;
    let table = SeparationLevel::ALL
        .into_iter()
        .map(|level| scenario.level_energy(level, constants).map(|e| (level, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let winner = table
        .iter()
        .max_by(|a, b| a.1.si().total_cmp(&b.1.si()))
        .map(|(l, _)| *l)
        .expect("three levels");
    Ok((winner, table))
}
