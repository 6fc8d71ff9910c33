// SPDX-License-Identifier: Apache-2.0

//! Scenarios, side-by-side model evaluation and regime classification.

pub mod file;
pub mod presets;
pub mod sweep;

use std::fmt;

use serde::Serialize;

use crate::decoherence::{
    omega_dipole, tau_dipole, tau_ion_coulomb, DipoleInputs, IonCoulombInputs, ModelError,
};
use crate::geometry::{ion_standoff, sample_orientations, OrientationTriple, StandoffSpec};
use crate::orchor::{dominant_level, OrchOrScenario};
use crate::quantities::{format_sci, ConstantsTable, Quantity};
use crate::screening::{debye_length, screened_regime, Electrolyte};

pub use file::{ScenarioError, ScenarioFile};
pub use presets::{all_presets, preset, Preset, PRESET_NAMES};
pub use sweep::{data_section, sweep, SweepParam, SweepRow, SweepTable, CSV_HEADER};

/// A result is assumption-violated once `τ >= τ_dyn / REGIME_MARGIN`.
pub const REGIME_MARGIN: f64 = 10.0;

/// Dipole/ion-Coulomb ratio every default scenario must reach.
pub const MINIMUM_DIPOLE_RATIO: f64 = 1e8;

/// Separations spanned by the reported dipole band, in metres.
pub const DIPOLE_BAND_SEPARATIONS: (f64, f64) = (1e-15, 10e-15);

/// Orientations drawn for the dipole-factor summary note.
pub const OMEGA_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonCoulombSettings {
    pub ion_mass: Quantity<f64>,
    pub charge_count: f64,
    pub separation: Quantity<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleSettings {
    pub ion_mass: Quantity<f64>,
    pub dipole_moment: Quantity<f64>,
    pub separation: Quantity<f64>,
    pub epsilon_r: f64,
    pub orientation: OrientationTriple<f64>,
    /// Net tubulin charge; reported alongside the dipole result.
    pub tubulin_charge: Quantity<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dynamics {
    pub kink: Quantity<f64>,
    pub neural: Quantity<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    pub ion_coulomb: IonCoulombSettings,
    pub dipole: DipoleSettings,
    pub standoff: StandoffSpec,
    /// Replaces the geometric standoff when set (used by standoff sweeps).
    pub standoff_override: Option<Quantity<f64>>,
    /// Also supplies the temperature for both environmental models.
    pub electrolyte: Electrolyte,
    pub orchor: OrchOrScenario,
    pub dynamics: Dynamics,
    pub seed: u64,
}

impl Scenario {
    pub fn standoff(&self, constants: &ConstantsTable<f64>) -> Result<Quantity<f64>, ModelError> {
        match self.standoff_override {
            Some(a) => Ok(a),
            None => Ok(ion_standoff(&self.standoff, constants)?),
        }
    }

    pub fn ion_coulomb_inputs(
        &self,
        constants: &ConstantsTable<f64>,
    ) -> Result<IonCoulombInputs, ModelError> {
        Ok(IonCoulombInputs {
            temperature: self.electrolyte.temperature,
            ion_mass: self.ion_coulomb.ion_mass,
            standoff: self.standoff(constants)?,
            charge_count: self.ion_coulomb.charge_count,
            separation: self.ion_coulomb.separation,
        })
    }

    pub fn dipole_inputs(
        &self,
        constants: &ConstantsTable<f64>,
    ) -> Result<DipoleInputs, ModelError> {
        Ok(DipoleInputs {
            temperature: self.electrolyte.temperature,
            ion_mass: self.dipole.ion_mass,
            standoff: self.standoff(constants)?,
            dipole_moment: self.dipole.dipole_moment,
            separation: self.dipole.separation,
            epsilon_r: self.dipole.epsilon_r,
            orientation: self.dipole.orientation,
        })
    }
}

/// Model identifiers; the derived order is the sweep row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelId {
    Dipole,
    IonCoulomb,
    OrchOr,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::Dipole, ModelId::IonCoulomb, ModelId::OrchOr];
    /// Display order: the baseline first.
    pub const REPORT_ORDER: [ModelId; 3] = [ModelId::IonCoulomb, ModelId::Dipole, ModelId::OrchOr];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Dipole => "dipole",
            ModelId::IonCoulomb => "ion_coulomb",
            ModelId::OrchOr => "orch_or",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates one model's timescale on a scenario.
pub fn evaluate(
    model: ModelId,
    scenario: &Scenario,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ModelError> {
    match model {
        ModelId::IonCoulomb => tau_ion_coulomb(&scenario.ion_coulomb_inputs(constants)?, constants),
        ModelId::Dipole => tau_dipole(&scenario.dipole_inputs(constants)?, constants),
        ModelId::OrchOr => scenario.orchor.collapse_time(constants),
    }
}

/// Whether a timescale leaves the derivation's separation of scales intact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    DerivationConsistent,
    AssumptionViolated,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::DerivationConsistent => "derivation-consistent",
            Regime::AssumptionViolated => "assumption-violated",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `assumption-violated` iff `τ >= τ_dyn / 10`.
pub fn classify(tau: f64, tau_dyn: f64) -> Regime {
    if tau >= tau_dyn / REGIME_MARGIN {
        Regime::AssumptionViolated
    } else {
        Regime::DerivationConsistent
    }
}

/// Published value or band a model result is displayed against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceBand {
    pub low_seconds: f64,
    pub high_seconds: f64,
    pub description: &'static str,
}

impl ReferenceBand {
    pub fn for_model(model: ModelId, gel_factor: f64) -> Self {
        match model {
            ModelId::IonCoulomb => Self {
                low_seconds: 1e-13,
                high_seconds: 1e-13,
                description: "ion-Coulomb estimate for microtubule superpositions",
            },
            ModelId::Dipole if gel_factor > 1.0 => GEL_PHASE_BAND,
            ModelId::Dipole => Self {
                low_seconds: 1e-5,
                high_seconds: 1e-4,
                description: "dipole-corrected estimate",
            },
            ModelId::OrchOr => Self {
                low_seconds: 0.5,
                high_seconds: 0.5,
                description: "collapse time for 1e9 participating tubulin",
            },
        }
    }
}

pub const GEL_PHASE_BAND: ReferenceBand = ReferenceBand {
    low_seconds: 1e-2,
    high_seconds: 1e-1,
    description: "revised estimate for a microtubule bundle in the gel phase",
};

/// Static annotation in comparisons; never computed.
pub const EXTERNAL_ESTIMATE: ReferenceBand = ReferenceBand {
    low_seconds: 1e-7,
    high_seconds: 1e-6,
    description: "external estimate for a kink-like dipolar excitation (not computed)",
};

pub const GEL_TENSION_NOTE: &str = "gel-tension";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub name: &'static str,
    pub value_si: f64,
    pub dimension: String,
}

fn echo(name: &'static str, q: Quantity<f64>) -> InputEcho {
    InputEcho {
        name,
        value_si: q.si(),
        dimension: q.dim().to_string(),
    }
}

fn echo_scalar(name: &'static str, v: f64) -> InputEcho {
    echo(name, Quantity::dimensionless(v))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
}

impl From<&ModelError> for ErrorReport {
    fn from(e: &ModelError) -> Self {
        Self {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelResult {
    pub model: ModelId,
    pub tau_seconds: Option<f64>,
    pub error: Option<ErrorReport>,
    pub inputs: Vec<InputEcho>,
    pub regime_kink: Option<Regime>,
    pub regime_neural: Option<Regime>,
    pub reference: ReferenceBand,
    pub notes: Vec<String>,
    pub constants_version: String,
}

/// Computed dipole band over the separations in [`DIPOLE_BAND_SEPARATIONS`].
pub fn dipole_separation_band(
    scenario: &Scenario,
    constants: &ConstantsTable<f64>,
) -> Result<(f64, f64), ModelError> {
    let base = scenario.dipole_inputs(constants)?;
    let (lo, hi) = DIPOLE_BAND_SEPARATIONS;
    let at = |s: f64| {
        let inputs = DipoleInputs {
            separation: Quantity::new(s, base.separation.dim()),
            ..base
        };
        tau_dipole(&inputs, constants).map(|t| t.si())
    };
    // τ ∝ 1/s: the largest separation gives the shortest time.
    Ok((at(hi)?, at(lo)?))
}

fn inputs_echo(
    model: ModelId,
    scenario: &Scenario,
    constants: &ConstantsTable<f64>,
) -> Vec<InputEcho> {
    let standoff = scenario.standoff(constants).ok();
    let mut out = Vec::new();
    match model {
        ModelId::IonCoulomb => {
            let s = &scenario.ion_coulomb;
            out.push(echo("temperature", scenario.electrolyte.temperature));
            out.push(echo("ion_mass", s.ion_mass));
            out.extend(standoff.map(|a| echo("standoff", a)));
            out.push(echo_scalar("charge_count", s.charge_count));
            out.push(echo("separation", s.separation));
        }
        ModelId::Dipole => {
            let s = &scenario.dipole;
            out.push(echo("temperature", scenario.electrolyte.temperature));
            out.push(echo("ion_mass", s.ion_mass));
            out.extend(standoff.map(|a| echo("standoff", a)));
            out.push(echo("dipole_moment", s.dipole_moment));
            out.push(echo("separation", s.separation));
            out.push(echo_scalar("epsilon_r", s.epsilon_r));
            out.push(echo_scalar("cos_theta", s.orientation.cos_theta));
            out.push(echo_scalar("cos_phi", s.orientation.cos_phi));
            out.push(echo_scalar("cos_psi", s.orientation.cos_psi));
            out.push(echo("tubulin_charge", s.tubulin_charge));
        }
        ModelId::OrchOr => {
            let o = &scenario.orchor;
            out.push(echo("monomer_mass", o.monomer_mass));
            out.push(echo("monomer_radius", o.monomer_radius));
            out.push(echo("separation", o.separation));
            out.push(echo_scalar("n_tubulin", o.n_tubulin));
            out.push(echo_scalar("coherent_fraction", o.coherent_fraction));
            out.push(echo(
                "nuclear_radius_coefficient",
                o.composition.nuclear_radius,
            ));
        }
    }
    if model != ModelId::OrchOr {
        out.push(echo_scalar("eta", scenario.standoff.eta));
        out.push(echo("diameter", scenario.standoff.diameter));
        out.push(echo_scalar("gel_factor", scenario.standoff.gel_factor));
    }
    out
}

fn sci(v: f64) -> String {
    format_sci(v, 4)
}

fn standoff_notes(scenario: &Scenario, constants: &ConstantsTable<f64>, notes: &mut Vec<String>) {
    let Ok(a) = scenario.standoff(constants) else {
        return;
    };
    if scenario.standoff_override.is_none() && scenario.standoff.gel_factor == 1.0 {
        notes.push(format!(
            "standoff a = {} m computed from eta and D; reported value about 1.4e-8 m",
            sci(a.si())
        ));
    } else {
        notes.push(format!("standoff a = {} m", sci(a.si())));
    }
    match debye_length(&scenario.electrolyte, constants) {
        Ok(debye) => match screened_regime(a, debye) {
            Ok(regime) => notes.push(format!(
                "Debye length {} m; a / lambda_D = {:.1}: {regime}",
                sci(debye.si()),
                a.si() / debye.si()
            )),
            Err(e) => notes.push(format!("screening: {e}")),
        },
        Err(e) => notes.push(format!("Debye length: {e}")),
    }
}

fn model_notes(
    model: ModelId,
    tau: Option<f64>,
    scenario: &Scenario,
    constants: &ConstantsTable<f64>,
) -> Vec<String> {
    let mut notes = Vec::new();
    match model {
        ModelId::IonCoulomb => standoff_notes(scenario, constants, &mut notes),
        ModelId::Dipole => {
            standoff_notes(scenario, constants, &mut notes);
            if let Ok((lo, hi)) = dipole_separation_band(scenario, constants) {
                notes.push(format!(
                    "band over s in [1, 10] fm: {} to {} s",
                    sci(lo),
                    sci(hi)
                ));
            }
            let gel = scenario.standoff.gel_factor;
            if gel > 1.0 {
                if let (Some(tau), Ok((lo, hi))) =
                    (tau, dipole_separation_band(scenario, constants))
                {
                    notes.push(format!(
                        "{GEL_TENSION_NOTE}: gel factor {gel} scales tau by {} under a^4; computed {} s \
                         (band {} to {} s) vs reported {} to {} s",
                        sci(gel.powi(4)),
                        sci(tau),
                        sci(lo),
                        sci(hi),
                        sci(GEL_PHASE_BAND.low_seconds),
                        sci(GEL_PHASE_BAND.high_seconds),
                    ));
                }
            }
            if let Ok(omega) = omega_dipole(&scenario.dipole.orientation) {
                let mut sampled: Vec<f64> = sample_orientations(scenario.seed, OMEGA_SAMPLES)
                    .iter()
                    .filter_map(|o| omega_dipole(o).ok())
                    .collect();
                sampled.sort_by(f64::total_cmp);
                let median = sampled[sampled.len() / 2];
                notes.push(format!(
                    "dipole factor {omega:.4}; median over {OMEGA_SAMPLES} random orientations (seed {}) {median:.4}",
                    scenario.seed
                ));
            }
            notes.push(format!(
                "tubulin charge {} C excludes the C-terminus tail; tail contribution unavailable",
                sci(scenario.dipole.tubulin_charge.si())
            ));
        }
        ModelId::OrchOr => {
            let o = &scenario.orchor;
            notes.push(format!(
                "assumption: monomer radius {} m is an artifact default",
                sci(o.monomer_radius.si())
            ));
            if let Ok((winner, table)) = dominant_level(o, constants) {
                let listing: Vec<String> = table
                    .iter()
                    .map(|(level, e)| format!("{level} {} J", sci(e.si())))
                    .collect();
                notes.push(format!(
                    "per-dimer energy: {}; dominant level {winner}",
                    listing.join(", ")
                ));
            }
            notes.push(format!(
                "level {}; n_tubulin counts participating dimers; coherent_fraction {} is echoed, not applied",
                o.level, o.coherent_fraction
            ));
        }
    }
    notes
}

fn model_result(
    model: ModelId,
    scenario: &Scenario,
    constants: &ConstantsTable<f64>,
) -> ModelResult {
    let outcome = evaluate(model, scenario, constants);
    let tau = outcome.as_ref().ok().map(|t| t.si());
    ModelResult {
        model,
        tau_seconds: tau,
        error: outcome.as_ref().err().map(ErrorReport::from),
        inputs: inputs_echo(model, scenario, constants),
        regime_kink: tau.map(|t| classify(t, scenario.dynamics.kink.si())),
        regime_neural: tau.map(|t| classify(t, scenario.dynamics.neural.si())),
        reference: ReferenceBand::for_model(model, scenario.standoff.gel_factor),
        notes: model_notes(model, tau, scenario, constants),
        constants_version: constants.version.clone(),
    }
}

/// Evaluates all three models and classifies each against both
/// dynamical timescales. Model failures are reported per result.
pub fn run_scenario(scenario: &Scenario, constants: &ConstantsTable<f64>) -> Vec<ModelResult> {
    ModelId::REPORT_ORDER
        .iter()
        .map(|&m| model_result(m, scenario, constants))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub model: ModelId,
    pub tau_seconds: Option<f64>,
    pub error: Option<ErrorReport>,
    pub reference: ReferenceBand,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub numerator: ModelId,
    pub denominator: ModelId,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub label: String,
    pub rows: Vec<ComparisonRow>,
    pub ratios: Vec<RatioRow>,
    pub minimum_dipole_ratio: f64,
    /// `None` when either model failed.
    pub dipole_ratio_met: Option<bool>,
    pub external_estimate: ReferenceBand,
    pub constants_version: String,
}

pub fn compare(scenario: &Scenario, constants: &ConstantsTable<f64>) -> Comparison {
    let rows: Vec<ComparisonRow> = ModelId::REPORT_ORDER
        .iter()
        .map(|&model| {
            let outcome = evaluate(model, scenario, constants);
            ComparisonRow {
                model,
                tau_seconds: outcome.as_ref().ok().map(|t| t.si()),
                error: outcome.as_ref().err().map(ErrorReport::from),
                reference: ReferenceBand::for_model(model, scenario.standoff.gel_factor),
            }
        })
        .collect();
    let tau = |m: ModelId| {
        rows.iter()
            .find(|r| r.model == m)
            .and_then(|r| r.tau_seconds)
    };
    let ratio = |n: ModelId, d: ModelId| RatioRow {
        numerator: n,
        denominator: d,
        ratio: tau(n).zip(tau(d)).map(|(a, b)| a / b),
    };
    let ratios = vec![
        ratio(ModelId::Dipole, ModelId::IonCoulomb),
        ratio(ModelId::OrchOr, ModelId::IonCoulomb),
        ratio(ModelId::OrchOr, ModelId::Dipole),
    ];
    let dipole_ratio_met = ratios[0].ratio.map(|r| r >= MINIMUM_DIPOLE_RATIO);
    Comparison {
        label: scenario.label.clone(),
        rows,
        ratios,
        minimum_dipole_ratio: MINIMUM_DIPOLE_RATIO,
        dipole_ratio_met,
        external_estimate: EXTERNAL_ESTIMATE,
        constants_version: constants.version.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{make_quantity, UnitRegistry};

    fn load(name: &str) -> Scenario {
        preset(name)
            .unwrap()
            .file
            .to_scenario(UnitRegistry::standard())
            .unwrap()
    }

    fn result(results: &[ModelResult], model: ModelId) -> &ModelResult {
        results.iter().find(|r| r.model == model).unwrap()
    }

    #[test]
    fn baseline_is_derivation_consistent_against_kink() {
        let c = ConstantsTable::codata2018();
        let results = run_scenario(&load("tegmark-baseline"), &c);
        let ion = result(&results, ModelId::IonCoulomb);
        let tau = ion.tau_seconds.unwrap();
        assert!((1e-14..=1e-12).contains(&tau), "{tau:e}");
        assert_eq!(ion.regime_kink, Some(Regime::DerivationConsistent));
        assert_eq!(ion.constants_version, "codata2018-v1");
        assert!(ion.notes.iter().any(|n| n.contains("screened")));
    }

    #[test]
    fn corrected_dipole_violates_kink_assumption() {
        let c = ConstantsTable::codata2018();
        let results = run_scenario(&load("dipole-corrected"), &c);
        let dip = result(&results, ModelId::Dipole);
        let tau = dip.tau_seconds.unwrap();
        assert!((1e-5..=1e-3).contains(&tau), "{tau:e}");
        assert_eq!(dip.regime_kink, Some(Regime::AssumptionViolated));
        assert!(!dip.notes.iter().any(|n| n.starts_with(GEL_TENSION_NOTE)));
    }

    #[test]
    fn gel_phase_carries_tension_note() {
        let c = ConstantsTable::codata2018();
        let results = run_scenario(&load("gel-phase"), &c);
        let dip = result(&results, ModelId::Dipole);
        assert!(dip.tau_seconds.unwrap() >= 1e-2);
        assert_eq!(dip.reference, GEL_PHASE_BAND);
        assert!(dip.notes.iter().any(|n| n.starts_with(GEL_TENSION_NOTE)));
    }

    #[test]
    fn orch_or_preset_flags_radius_assumption() {
        let c = ConstantsTable::codata2018();
        let results = run_scenario(&load("orchor-500ms"), &c);
        let orch = result(&results, ModelId::OrchOr);
        assert!((0.05..=5.0).contains(&orch.tau_seconds.unwrap()));
        assert!(orch
            .notes
            .iter()
            .any(|n| n.starts_with("assumption: monomer radius")));
        assert!(orch
            .notes
            .iter()
            .any(|n| n.contains("dominant level atomic_nuclei")));
    }

    #[test]
    fn model_errors_stay_per_result() {
        let c = ConstantsTable::codata2018();
        let mut s = load("dipole-corrected");
        s.dipole.orientation = OrientationTriple::new(0.0, 0.0, 0.0).unwrap();
        let results = run_scenario(&s, &c);
        let dip = result(&results, ModelId::Dipole);
        assert_eq!(dip.error.as_ref().unwrap().kind, "divergent");
        assert_eq!(dip.regime_kink, None);
        assert!(result(&results, ModelId::IonCoulomb).tau_seconds.is_some());
    }

    #[test]
    fn comparison_ratios() {
        let c = ConstantsTable::codata2018();
        for name in PRESET_NAMES {
            let cmp = compare(&load(name), &c);
            assert_eq!(cmp.dipole_ratio_met, Some(true), "{name}");
            assert_eq!(cmp.external_estimate, EXTERNAL_ESTIMATE);
        }
    }

    #[test]
    fn classify_threshold() {
        assert_eq!(classify(5e-8, 5e-7), Regime::AssumptionViolated);
        assert_eq!(classify(4.9e-8, 5e-7), Regime::DerivationConsistent);
    }

    #[test]
    fn standoff_override() {
        let c = ConstantsTable::codata2018();
        let mut s = load("dipole-corrected");
        s.standoff_override = Some(make_quantity(14.0, "nm").unwrap());
        approx::assert_relative_eq!(s.standoff(&c).unwrap().si(), 14e-9, max_relative = 1e-15);
    }
}
