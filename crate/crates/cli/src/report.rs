// SPDX-License-Identifier: Apache-2.0

//! Text rendering of the same structures the JSON output serializes.

use std::fmt::Write;

use decoherence_core::quantities::format_sci;
use decoherence_core::scenarios::presets::Preset;
use decoherence_core::scenarios::{Comparison, ModelResult, ReferenceBand, Regime, Scenario};

use crate::{AuditRow, RunManifest};

#[derive(Clone, Copy)]
pub struct Style {
    digits: usize,
}

impl Style {
    pub fn new(digits: usize) -> Self {
        Self {
            digits: digits.clamp(1, 17),
        }
    }

    fn num(self, v: f64) -> String {
        format_sci(v, self.digits)
    }

    fn band(self, b: &ReferenceBand) -> String {
        if b.low_seconds == b.high_seconds {
            format!("{} s ({})", self.num(b.low_seconds), b.description)
        } else {
            format!(
                "{} to {} s ({})",
                self.num(b.low_seconds),
                self.num(b.high_seconds),
                b.description
            )
        }
    }
}

fn manifest_lines(out: &mut String, m: &RunManifest) {
    let seed = m.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
    writeln!(
        out,
        "# {} {} | seed {} | constants {} | {}",
        m.command, m.source, seed, m.constants_version, m.timestamp
    )
    .unwrap();
}

fn regime(r: Option<Regime>) -> &'static str {
    r.map(Regime::name).unwrap_or("-")
}

pub fn compute(
    m: &RunManifest,
    scenario: &Scenario,
    results: &[ModelResult],
    style: Style,
) -> String {
    let mut out = String::new();
    manifest_lines(&mut out, m);
    writeln!(
        out,
        "scenario {}: tau_dyn kink {} s, neural {} s",
        scenario.label,
        style.num(scenario.dynamics.kink.si()),
        style.num(scenario.dynamics.neural.si())
    )
    .unwrap();
    for r in results {
        writeln!(out).unwrap();
        match (&r.tau_seconds, &r.error) {
            (Some(tau), _) => {
                writeln!(out, "{:<12} tau = {} s", r.model.name(), style.num(*tau)).unwrap()
            }
            (None, Some(e)) => writeln!(
                out,
                "{:<12} error ({}): {}",
                r.model.name(),
                e.kind,
                e.message
            )
            .unwrap(),
            (None, None) => unreachable!("a result has a value or an error"),
        }
        writeln!(
            out,
            "  regime vs kink: {}; vs neural: {}",
            regime(r.regime_kink),
            regime(r.regime_neural)
        )
        .unwrap();
        writeln!(out, "  reference: {}", style.band(&r.reference)).unwrap();
        let inputs: Vec<String> = r
            .inputs
            .iter()
            .map(|i| {
                if i.dimension == "1" {
                    format!("{}={}", i.name, style.num(i.value_si))
                } else {
                    format!("{}={} {}", i.name, style.num(i.value_si), i.dimension)
                }
            })
            .collect();
        writeln!(out, "  inputs: {}", inputs.join(", ")).unwrap();
        for note in &r.notes {
            writeln!(out, "  note: {note}").unwrap();
        }
    }
    out
}

pub fn comparison(m: &RunManifest, c: &Comparison, style: Style) -> String {
    let mut out = String::new();
    manifest_lines(&mut out, m);
    writeln!(out, "scenario {}", c.label).unwrap();
    writeln!(out, "{:<12} {:<14} reference", "model", "tau [s]").unwrap();
    for row in &c.rows {
        let tau = match (&row.tau_seconds, &row.error) {
            (Some(t), _) => style.num(*t),
            (None, Some(e)) => format!("error:{}", e.kind),
            (None, None) => "-".into(),
        };
        writeln!(
            out,
            "{:<12} {:<14} {}",
            row.model.name(),
            tau,
            style.band(&row.reference)
        )
        .unwrap();
    }
    writeln!(
        out,
        "{:<12} {:<14} {}",
        "external",
        "-",
        style.band(&c.external_estimate)
    )
    .unwrap();
    writeln!(out).unwrap();
    for r in &c.ratios {
        let v = r.ratio.map(|v| style.num(v)).unwrap_or_else(|| "-".into());
        writeln!(out, "{}/{} = {}", r.numerator, r.denominator, v).unwrap();
    }
    let verdict = match c.dipole_ratio_met {
        Some(true) => "met",
        Some(false) => "NOT met",
        None => "undetermined",
    };
    writeln!(
        out,
        "dipole/ion_coulomb >= {}: {verdict}",
        style.num(c.minimum_dipole_ratio)
    )
    .unwrap();
    out
}

pub fn audit(m: &RunManifest, rows: &[AuditRow]) -> String {
    let mut out = String::new();
    manifest_lines(&mut out, m);
    for r in rows {
        writeln!(out, "{}: {}", r.name, r.verdict).unwrap();
        writeln!(out, "  {}", r.expr).unwrap();
    }
    let bad = rows.iter().filter(|r| !r.consistent).count();
    writeln!(out, "{} formulas, {} mismatched", rows.len(), bad).unwrap();
    out
}

pub fn presets(presets: &[Preset]) -> String {
    let mut out = String::new();
    for p in presets {
        writeln!(out, "{}: {}", p.name, p.summary).unwrap();
        for a in &p.annotations {
            let source = match a.source {
                decoherence_core::scenarios::presets::Source::Reported => "reported",
                decoherence_core::scenarios::presets::Source::ArtifactDefault => "artifact default",
            };
            writeln!(out, "  {:<26} {:<17} {}", a.field, source, a.note).unwrap();
        }
        writeln!(out).unwrap();
    }
    out
}
