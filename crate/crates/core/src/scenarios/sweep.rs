// SPDX-License-Identifier: Apache-2.0

//! One-parameter sweeps over a scenario, serialized as CSV.

use std::str::FromStr;

use serde::Serialize;

use super::{classify, evaluate, ModelId, Regime, Scenario};
use crate::decoherence::{ModelError, LOW_TEMPERATURE_FLAG};
use crate::geometry::ORIENTATION_SAMPLER;
use crate::quantities::{ConstantsTable, Dimension, Quantity};

pub const CSV_HEADER: [&str; 7] = [
    "param",
    "value_si",
    "model",
    "tau_seconds",
    "regime_kink",
    "regime_neural",
    "note",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Temperature,
    Standoff,
    IonSeparation,
    DipoleSeparation,
    OrchorSeparation,
    EpsilonR,
    DipoleMoment,
    ChargeCount,
    Eta,
    Diameter,
    GelFactor,
    NTubulin,
    CosTheta,
    CosPhi,
    CosPsi,
}

impl SweepParam {
    pub const ALL: [SweepParam; 15] = [
        SweepParam::Temperature,
        SweepParam::Standoff,
        SweepParam::IonSeparation,
        SweepParam::DipoleSeparation,
        SweepParam::OrchorSeparation,
        SweepParam::EpsilonR,
        SweepParam::DipoleMoment,
        SweepParam::ChargeCount,
        SweepParam::Eta,
        SweepParam::Diameter,
        SweepParam::GelFactor,
        SweepParam::NTubulin,
        SweepParam::CosTheta,
        SweepParam::CosPhi,
        SweepParam::CosPsi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Temperature => "temperature",
            SweepParam::Standoff => "standoff",
            SweepParam::IonSeparation => "ion_separation",
            SweepParam::DipoleSeparation => "dipole_separation",
            SweepParam::OrchorSeparation => "orchor_separation",
            SweepParam::EpsilonR => "epsilon_r",
            SweepParam::DipoleMoment => "dipole_moment",
            SweepParam::ChargeCount => "charge_count",
            SweepParam::Eta => "eta",
            SweepParam::Diameter => "diameter",
            SweepParam::GelFactor => "gel_factor",
            SweepParam::NTubulin => "n_tubulin",
            SweepParam::CosTheta => "cos_theta",
            SweepParam::CosPhi => "cos_phi",
            SweepParam::CosPsi => "cos_psi",
        }
    }

    /// Short symbol accepted as an alias.
    pub fn symbol(self) -> Option<&'static str> {
        match self {
            SweepParam::Temperature => Some("T"),
            SweepParam::Standoff => Some("a"),
            SweepParam::DipoleSeparation => Some("s"),
            SweepParam::DipoleMoment => Some("p"),
            SweepParam::ChargeCount => Some("N"),
            _ => None,
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            SweepParam::Temperature => Dimension::TEMPERATURE,
            SweepParam::Standoff
            | SweepParam::IonSeparation
            | SweepParam::DipoleSeparation
            | SweepParam::OrchorSeparation
            | SweepParam::Diameter => Dimension::LENGTH,
            SweepParam::DipoleMoment => Dimension::DIPOLE_MOMENT,
            _ => Dimension::DIMENSIONLESS,
        }
    }

    /// Returns `scenario` with this parameter set to `value_si`.
    pub fn apply(self, scenario: &Scenario, value_si: f64) -> Scenario {
        let mut s = scenario.clone();
        let q = Quantity::new(value_si, self.dimension());
        match self {
            SweepParam::Temperature => s.electrolyte.temperature = q,
            SweepParam::Standoff => s.standoff_override = Some(q),
            SweepParam::IonSeparation => s.ion_coulomb.separation = q,
            SweepParam::DipoleSeparation => s.dipole.separation = q,
            SweepParam::OrchorSeparation => s.orchor.separation = q,
            SweepParam::EpsilonR => s.dipole.epsilon_r = value_si,
            SweepParam::DipoleMoment => s.dipole.dipole_moment = q,
            SweepParam::ChargeCount => s.ion_coulomb.charge_count = value_si,
            SweepParam::Eta => s.standoff.eta = value_si,
            SweepParam::Diameter => s.standoff.diameter = q,
            SweepParam::GelFactor => s.standoff.gel_factor = value_si,
            SweepParam::NTubulin => s.orchor.n_tubulin = value_si,
            // Cosines are range-checked by the dipole model, so an
            // out-of-range grid point becomes an error row.
            SweepParam::CosTheta => s.dipole.orientation.cos_theta = value_si,
            SweepParam::CosPhi => s.dipole.orientation.cos_phi = value_si,
            SweepParam::CosPsi => s.dipole.orientation.cos_psi = value_si,
        }
        s
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == text || p.symbol() == Some(text))
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|p| p.name()).collect();
                format!(
                    "unknown sweep parameter `{text}`; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value_si: f64,
    pub model: ModelId,
    pub tau_seconds: Option<f64>,
    pub regime_kink: Option<Regime>,
    pub regime_neural: Option<Regime>,
    /// Empty, or `error:<kind>` for a failed grid point.
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
    pub label: String,
    pub seed: u64,
    pub constants_version: String,
    pub flags: Vec<String>,
}

/// Evaluates every model at every grid value. Rows are ordered by
/// `(value, model)`; failures become rows with an error note.
pub fn sweep(
    scenario: &Scenario,
    param: SweepParam,
    grid: &[f64],
    constants: &ConstantsTable<f64>,
) -> Result<SweepTable, ModelError> {
    if grid.is_empty() || grid.iter().any(|v| !v.is_finite()) {
        return Err(ModelError::Grid);
    }
    let mut values = grid.to_vec();
    values.sort_by(f64::total_cmp);
    let mut rows = Vec::with_capacity(values.len() * ModelId::ALL.len());
    for &value in &values {
        let at = param.apply(scenario, value);
        for model in ModelId::ALL {
            rows.push(match evaluate(model, &at, constants) {
                Ok(tau) => SweepRow {
                    value_si: value,
                    model,
                    tau_seconds: Some(tau.si()),
                    regime_kink: Some(classify(tau.si(), at.dynamics.kink.si())),
                    regime_neural: Some(classify(tau.si(), at.dynamics.neural.si())),
                    note: String::new(),
                },
                Err(e) => SweepRow {
                    value_si: value,
                    model,
                    tau_seconds: None,
                    regime_kink: None,
                    regime_neural: None,
                    note: format!("error:{}", e.kind()),
                },
            });
        }
    }
    let mut flags = Vec::new();
    if param == SweepParam::Temperature {
        flags.push(LOW_TEMPERATURE_FLAG.to_string());
    }
    Ok(SweepTable {
        param,
        rows,
        label: scenario.label.clone(),
        seed: scenario.seed,
        constants_version: constants.version.clone(),
        flags,
    })
}

impl SweepTable {
    /// `key=value` metadata written as `#` lines ahead of the header.
    pub fn metadata(&self) -> Vec<String> {
        let mut out = vec![
            format!("scenario={}", self.label),
            format!("param={}", self.param.name()),
            format!("value_dimension={}", self.param.dimension()),
            format!("seed={}", self.seed),
            format!("constants={}", self.constants_version),
            format!("sampler={ORIENTATION_SAMPLER}"),
        ];
        out.extend(self.flags.iter().map(|f| format!("flag={f}")));
        out
    }

    /// CSV text: `extra` and [`SweepTable::metadata`] as `#` lines, then the
    /// header and one line per row. Floats use the shortest round-trip
    /// scientific form.
    pub fn to_csv(&self, extra: &[String]) -> String {
        let mut out = String::new();
        for line in extra.iter().chain(self.metadata().iter()) {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(CSV_HEADER).expect("write to memory");
        let regime = |r: Option<Regime>| r.map(Regime::name).unwrap_or("");
        for row in &self.rows {
            writer
                .write_record([
                    self.param.name(),
                    &format!("{:e}", row.value_si),
                    row.model.name(),
                    &row.tau_seconds
                        .map(|t| format!("{t:e}"))
                        .unwrap_or_default(),
                    regime(row.regime_kink),
                    regime(row.regime_neural),
                    &row.note,
                ])
                .expect("write to memory");
        }
        let body = writer.into_inner().expect("flush to memory");
        out.push_str(std::str::from_utf8(&body).expect("utf-8 fields"));
        out
    }
}

/// Lines of a sweep CSV that are not `#` comments.
pub fn data_section(csv_text: &str) -> String {
    csv_text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}
