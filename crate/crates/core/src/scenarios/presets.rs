// SPDX-License-Identifier: Apache-2.0

//! Shipped scenarios.
//!
//! Every field carries a source: `reported` values are taken from the
//! published estimate being reproduced, `artifact-default` values fill in
//! what it leaves unstated.

use serde::Serialize;

use super::file::*;
use crate::orchor::SeparationLevel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Reported,
    ArtifactDefault,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annotation {
    pub field: &'static str,
    pub source: Source,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub file: ScenarioFile,
    pub annotations: Vec<Annotation>,
}

pub const PRESET_NAMES: [&str; 5] = [
    "tegmark-baseline",
    "dipole-corrected",
    "dipole-full-moment",
    "gel-phase",
    "orchor-500ms",
];

fn m(value: f64, unit: &str) -> Measured {
    Measured::new(value, unit)
}

fn base(label: &str) -> ScenarioFile {
    ScenarioFile {
        label: label.to_string(),
        ion_coulomb: IonCoulombBlock {
            ion_mass: m(40.0, "amu"),
            charge_count: m(468.0, "1"),
            separation: m(24.0, "nm"),
        },
        dipole: DipoleBlock {
            ion_mass: m(40.0, "amu"),
            dipole_moment: m(337.0, "Debye"),
            separation: m(5.0, "fm"),
            epsilon_r: m(10.0, "1"),
            cos_theta: m(1.0, "1"),
            cos_phi: m(0.0, "1"),
            cos_psi: m(0.0, "1"),
            tubulin_charge: m(-10.0, "e"),
        },
        standoff: StandoffBlock {
            eta: m(2e-4, "1"),
            diameter: m(24.0, "nm"),
            gel_factor: m(1.0, "1"),
        },
        electrolyte: ElectrolyteBlock {
            temperature: m(310.0, "K"),
            epsilon_r: m(80.0, "1"),
            species: vec![
                SpeciesBlock {
                    concentration: m(0.15, "M"),
                    valence: m(1.0, "1"),
                    mass: m(22.99, "amu"),
                },
                SpeciesBlock {
                    concentration: m(0.15, "M"),
                    valence: m(-1.0, "1"),
                    mass: m(35.45, "amu"),
                },
            ],
        },
        orchor: OrchOrBlock {
            level: SeparationLevel::AtomicNuclei,
            monomer_mass: m(55.0, "kDa"),
            monomer_radius: m(2.0, "nm"),
            separation: m(0.2, "nm"),
            n_tubulin: m(1e9, "1"),
            coherent_fraction: m(0.1, "1"),
        },
        dynamics: DynamicsBlock {
            kink: m(5e-7, "s"),
            neural: m(1e-4, "s"),
        },
        seed: 7,
    }
}

fn a(field: &'static str, source: Source, note: &'static str) -> Annotation {
    Annotation {
        field,
        source,
        note,
    }
}

fn common_annotations() -> Vec<Annotation> {
    use Source::*;
    vec![
        a(
            "ion_coulomb.ion_mass",
            ArtifactDefault,
            "Ca2+ (40 amu), the only ion species discussed",
        ),
        a(
            "ion_coulomb.charge_count",
            ArtifactDefault,
            "18 Ca2+ per protofilament x 13 protofilaments x valence 2",
        ),
        a(
            "ion_coulomb.separation",
            Reported,
            "superposition separation taken as the microtubule diameter",
        ),
        a("dipole.ion_mass", ArtifactDefault, "Ca2+ (40 amu)"),
        a(
            "dipole.dipole_moment",
            Reported,
            "axial fifth of the 1714 Debye tubulin dipole",
        ),
        a(
            "dipole.separation",
            ArtifactDefault,
            "femtometre scale; reported only as an order of magnitude",
        ),
        a(
            "dipole.epsilon_r",
            Reported,
            "conservative dielectric constant of the medium",
        ),
        a(
            "dipole.cos_theta",
            ArtifactDefault,
            "orientation with dipole factor 1",
        ),
        a(
            "dipole.cos_phi",
            ArtifactDefault,
            "orientation with dipole factor 1",
        ),
        a(
            "dipole.cos_psi",
            ArtifactDefault,
            "orientation with dipole factor 1",
        ),
        a(
            "dipole.tubulin_charge",
            Reported,
            "C-terminus tail excluded; tail contribution unavailable",
        ),
        a("standoff.eta", Reported, "ions per water molecule"),
        a("standoff.diameter", Reported, "microtubule diameter"),
        a(
            "standoff.gel_factor",
            ArtifactDefault,
            "no gel-phase enlargement",
        ),
        a(
            "electrolyte.temperature",
            ArtifactDefault,
            "body temperature",
        ),
        a("electrolyte.epsilon_r", ArtifactDefault, "bulk water"),
        a(
            "electrolyte.species",
            ArtifactDefault,
            "0.15 M monovalent 1:1 salt",
        ),
        a(
            "orchor.level",
            Reported,
            "level with the highest self-energy",
        ),
        a("orchor.monomer_mass", Reported, "tubulin monomer"),
        a(
            "orchor.monomer_radius",
            ArtifactDefault,
            "monomer about 4 nm across; radius not reported",
        ),
        a(
            "orchor.separation",
            Reported,
            "one tenth of the monomer radius",
        ),
        a("orchor.n_tubulin", Reported, "participating tubulin dimers"),
        a(
            "orchor.coherent_fraction",
            Reported,
            "fraction of tubulin that becomes coherent",
        ),
        a(
            "dynamics.kink",
            Reported,
            "kink excitation traversing a microtubule",
        ),
        a(
            "dynamics.neural",
            Reported,
            "lower end of the neural 1e-4 to 1e-3 s range",
        ),
        a("seed", ArtifactDefault, "orientation sampler seed"),
    ]
}

fn override_note(
    mut list: Vec<Annotation>,
    field: &'static str,
    source: Source,
    note: &'static str,
) -> Vec<Annotation> {
    let entry = list
        .iter_mut()
        .find(|x| x.field == field)
        .expect("annotated field");
    entry.source = source;
    entry.note = note;
    list
}

/// Looks up a shipped preset by name.
pub fn preset(name: &str) -> Option<Preset> {
    use Source::*;
    let preset = match name {
        "tegmark-baseline" => {
            let mut file = base(name);
            file.dipole.epsilon_r = m(1.0, "1");
            Preset {
                name: "tegmark-baseline",
                summary: "bare ion-Coulomb estimate with vacuum permittivity",
                file,
                annotations: override_note(
                    common_annotations(),
                    "dipole.epsilon_r",
                    Reported,
                    "vacuum permittivity, as in the uncorrected estimate",
                ),
            }
        }
        "dipole-corrected" => Preset {
            name: "dipole-corrected",
            summary: "dipole interaction, femtometre separation, epsilon_r = 10",
            file: base(name),
            annotations: common_annotations(),
        },
        "dipole-full-moment" => {
            let mut file = base(name);
            file.dipole.dipole_moment = m(1714.0, "Debye");
            Preset {
                name: "dipole-full-moment",
                summary: "dipole-corrected with the full 1714 Debye moment",
                file,
                annotations: override_note(
                    common_annotations(),
                    "dipole.dipole_moment",
                    Reported,
                    "full tubulin dipole moment",
                ),
            }
        }
        "gel-phase" => {
            let mut file = base(name);
            file.standoff.gel_factor = m(10.0, "1");
            Preset {
                name: "gel-phase",
                summary:
                    "dipole-corrected with the ion-free zone enlarged tenfold by actin gelation",
                file,
                annotations: override_note(
                    common_annotations(),
                    "standoff.gel_factor",
                    Reported,
                    "ordered-water zone over the bundle radius, about ten times wider",
                ),
            }
        }
        "orchor-500ms" => Preset {
            name: "orchor-500ms",
            summary: "gravitational self-energy collapse of 1e9 tubulin at the atomic-nuclei level",
            file: base(name),
            annotations: common_annotations(),
        },
        _ => return None,
    };
    Some(preset)
}

pub fn all_presets() -> Vec<Preset> {
    PRESET_NAMES
        .iter()
        .map(|n| preset(n).expect("listed preset exists"))
        .collect()
}
