// SPDX-License-Identifier: Apache-2.0

//! Environmental decoherence timescales: the bare ion-Coulomb estimate and
//! the dipole estimate driven by the tidal Hessian of the dipole potential.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

pub use crate::error::ModelError;
use crate::error::{positive, positive_scalar};
use crate::geometry::{normalize, OrientationTriple};
use crate::quantities::{ConstantsTable, Dimension, Quantity};

fn four_pi() -> Quantity<f64> {
    Quantity::dimensionless(4.0 * PI)
}

fn expect_time(q: Quantity<f64>) -> Result<Quantity<f64>, ModelError> {
    q.expect_dim(Dimension::TIME)
        .map_err(|_| ModelError::dimension("tau", Dimension::TIME, q.dim()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonCoulombInputs {
    pub temperature: Quantity<f64>,
    pub ion_mass: Quantity<f64>,
    pub standoff: Quantity<f64>,
    /// Number of elementary charges in the superposed state.
    pub charge_count: f64,
    pub separation: Quantity<f64>,
}

impl IonCoulombInputs {
    pub fn validate(&self) -> Result<(), ModelError> {
        positive("temperature", &self.temperature, Dimension::TEMPERATURE)?;
        positive("ion_mass", &self.ion_mass, Dimension::MASS)?;
        positive("standoff", &self.standoff, Dimension::LENGTH)?;
        positive_scalar("charge_count", self.charge_count)?;
        positive("separation", &self.separation, Dimension::LENGTH)
    }
}

/// `τ = 4π ε₀ a³ √(m k T) / (N q_e² s)`.
pub fn tau_ion_coulomb(
    inputs: &IonCoulombInputs,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ModelError> {
    inputs.validate()?;
    let thermal_momentum = (inputs.ion_mass * constants.boltzmann * inputs.temperature).sqrt();
    let numerator =
        four_pi() * constants.vacuum_permittivity * inputs.standoff.powi(3) * thermal_momentum;
    let denominator = constants
        .elementary_charge
        .powi(2)
        .scale(inputs.charge_count)
        * inputs.separation;
    expect_time(numerator / denominator)
}

/// Bracket below which the dipole factor is treated as divergent.
pub const OMEGA_DIVERGENCE_THRESHOLD: f64 = 1e-30;

/// `Ω = (5c²θ c²φ − 4 cθ cφ cψ + c²θ + c²φ + c²ψ)^(-1/2)`.
pub fn omega_dipole(o: &OrientationTriple<f64>) -> Result<f64, ModelError> {
    let OrientationTriple {
        cos_theta: t,
        cos_phi: f,
        cos_psi: s,
    } = *o;
    for (field, c) in [("cos_theta", t), ("cos_phi", f), ("cos_psi", s)] {
        if !(-1.0..=1.0).contains(&c) {
            return Err(ModelError::Domain {
                field,
                requirement: "in [-1, 1]",
                value: c,
            });
        }
    }
    let bracket = 5.0 * t * t * f * f - 4.0 * t * f * s + t * t + f * f + s * s;
    if bracket <= OMEGA_DIVERGENCE_THRESHOLD {
        return Err(ModelError::Divergent { bracket });
    }
    Ok(bracket.sqrt().recip())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleInputs {
    pub temperature: Quantity<f64>,
    pub ion_mass: Quantity<f64>,
    pub standoff: Quantity<f64>,
    /// Magnitude of the dipole moment entering the estimate.
    pub dipole_moment: Quantity<f64>,
    pub separation: Quantity<f64>,
    /// Relative permittivity of the medium.
    pub epsilon_r: f64,
    pub orientation: OrientationTriple<f64>,
}

impl DipoleInputs {
    pub fn validate(&self) -> Result<(), ModelError> {
        positive("temperature", &self.temperature, Dimension::TEMPERATURE)?;
        positive("ion_mass", &self.ion_mass, Dimension::MASS)?;
        positive("standoff", &self.standoff, Dimension::LENGTH)?;
        positive(
            "dipole_moment",
            &self.dipole_moment,
            Dimension::DIPOLE_MOMENT,
        )?;
        positive("separation", &self.separation, Dimension::LENGTH)?;
        if !(self.epsilon_r >= 1.0 && self.epsilon_r.is_finite()) {
            return Err(ModelError::Domain {
                field: "epsilon_r",
                requirement: ">= 1",
                value: self.epsilon_r,
            });
        }
        Ok(())
    }
}

/// `τ = 4π ε_r ε₀ a⁴ √(m k T) Ω / (3 q_e p s)`.
pub fn tau_dipole(
    inputs: &DipoleInputs,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, ModelError> {
    inputs.validate()?;
    let omega = omega_dipole(&inputs.orientation)?;
    let permittivity = constants.vacuum_permittivity.scale(inputs.epsilon_r);
    let thermal_momentum = (inputs.ion_mass * constants.boltzmann * inputs.temperature).sqrt();
    let numerator = four_pi() * permittivity * inputs.standoff.powi(4) * thermal_momentum;
    let denominator =
        constants.elementary_charge.scale(3.0) * inputs.dipole_moment * inputs.separation;
    expect_time((numerator / denominator).scale(omega))
}

/// A 3-vector of quantities sharing one dimension, stored in SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantityVector {
    pub si: [f64; 3],
    pub dim: Dimension,
}

impl QuantityVector {
    pub fn new(si: [f64; 3], dim: Dimension) -> Self {
        Self { si, dim }
    }

    pub fn norm(&self) -> Quantity<f64> {
        Quantity::new(crate::geometry::norm(self.si), self.dim)
    }
}

/// Second derivatives of the charge–dipole interaction with respect to the
/// ion position, in J/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TidalHessian {
    pub matrix: [[f64; 3]; 3],
    /// `3 q p / (4π ε_r ε₀ a⁴)`
    pub prefactor: Quantity<f64>,
}

impl TidalHessian {
    pub fn entry(&self, i: usize, j: usize) -> Quantity<f64> {
        Quantity::new(self.matrix[i][j], self.prefactor.dim())
    }

    /// Largest `|M_ij − M_ji|` relative to the largest entry.
    pub fn symmetry_defect(&self) -> f64 {
        let scale = self
            .matrix
            .iter()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..i {
                worst = worst.max((self.matrix[i][j] - self.matrix[j][i]).abs());
            }
        }
        worst / scale
    }
}

/// `M = 3qp/(4π ε_r ε₀ a⁴) [(5ââᵀ − I)(p̂·â) − (âp̂ᵀ + p̂âᵀ)]`.
pub fn tidal_hessian(
    charge: Quantity<f64>,
    dipole: &QuantityVector,
    standoff: &QuantityVector,
    epsilon_r: f64,
    constants: &ConstantsTable<f64>,
) -> Result<TidalHessian, ModelError> {
    if charge.dim() != Dimension::CHARGE {
        return Err(ModelError::dimension(
            "charge",
            Dimension::CHARGE,
            charge.dim(),
        ));
    }
    for (field, v, expected) in [
        ("dipole", dipole, Dimension::DIPOLE_MOMENT),
        ("standoff", standoff, Dimension::LENGTH),
    ] {
        if v.dim != expected {
            return Err(ModelError::dimension(field, expected, v.dim));
        }
    }
    positive_scalar("epsilon_r", epsilon_r)?;
    let p_hat = normalize(dipole.si).map_err(|_| ModelError::Domain {
        field: "dipole",
        requirement: "nonzero",
        value: 0.0,
    })?;
    let a_hat = normalize(standoff.si).map_err(|_| ModelError::Domain {
        field: "standoff",
        requirement: "nonzero",
        value: 0.0,
    })?;

    let prefactor = (charge.scale(3.0) * dipole.norm())
        / (four_pi() * constants.vacuum_permittivity.scale(epsilon_r) * standoff.norm().powi(4));
    debug_assert_eq!(prefactor.dim(), Dimension::ENERGY / Dimension::AREA);

    let cos = crate::geometry::dot(p_hat, a_hat);
    let mut matrix = [[0.0; 3]; 3];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, m) in row.iter_mut().enumerate() {
            let identity = if i == j { 1.0 } else { 0.0 };
            let radial = (5.0 * a_hat[i] * a_hat[j] - identity) * cos;
            let mixed = a_hat[i] * p_hat[j] + p_hat[i] * a_hat[j];
            *m = prefactor.si() * (radial - mixed);
        }
    }
    Ok(TidalHessian { matrix, prefactor })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveModel {
    IonCoulomb,
    Dipole,
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveModel::IonCoulomb => "ion_coulomb",
            CurveModel::Dipole => "dipole",
        })
    }
}

/// Attached to every temperature curve: both models vanish as `√T` when
/// `T → 0`, which no physical decoherence mechanism does.
pub const LOW_TEMPERATURE_FLAG: &str = "model-artifact: unphysical low-T limit";

#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureCurve {
    pub model: CurveModel,
    pub points: Vec<(Quantity<f64>, Quantity<f64>)>,
    pub flags: Vec<&'static str>,
}

/// Base inputs for [`temperature_curve`].
#[derive(Debug, Clone, Copy)]
pub enum CurveInputs<'a> {
    IonCoulomb(&'a IonCoulombInputs),
    Dipole(&'a DipoleInputs),
}

/// Evaluates one model over an ascending temperature grid.
pub fn temperature_curve(
    inputs: CurveInputs<'_>,
    grid: &[Quantity<f64>],
    constants: &ConstantsTable<f64>,
) -> Result<TemperatureCurve, ModelError> {
    if grid.is_empty()
        || grid
            .iter()
            .any(|t| t.dim() != Dimension::TEMPERATURE || !t.is_positive_finite())
        || grid.windows(2).any(|w| w[0].si() >= w[1].si())
    {
        return Err(ModelError::Grid);
    }
    let (model, points) = match inputs {
        CurveInputs::IonCoulomb(base) => (
            CurveModel::IonCoulomb,
            grid.iter()
                .map(|&t| {
                    let at = IonCoulombInputs {
                        temperature: t,
                        ..*base
                    };
                    tau_ion_coulomb(&at, constants).map(|tau| (t, tau))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        CurveInputs::Dipole(base) => (
            CurveModel::Dipole,
            grid.iter()
                .map(|&t| {
                    let at = DipoleInputs {
                        temperature: t,
                        ..*base
                    };
                    tau_dipole(&at, constants).map(|tau| (t, tau))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(TemperatureCurve {
        model,
        points,
        flags: vec![LOW_TEMPERATURE_FLAG],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::make_quantity;
    use approx::assert_relative_eq;

    fn q(v: f64, unit: &str) -> Quantity<f64> {
        make_quantity(v, unit).unwrap()
    }

    fn ion() -> IonCoulombInputs {
        IonCoulombInputs {
            temperature: q(310.0, "K"),
            ion_mass: q(40.0, "amu"),
            standoff: q(17.309755366274873, "nm"),
            charge_count: 468.0,
            separation: q(24.0, "nm"),
        }
    }

    fn dipole() -> DipoleInputs {
        DipoleInputs {
            temperature: q(310.0, "K"),
            ion_mass: q(40.0, "amu"),
            standoff: q(17.309755366274873, "nm"),
            dipole_moment: q(337.0, "Debye"),
            separation: q(5.0, "fm"),
            epsilon_r: 10.0,
            orientation: OrientationTriple::aligned_separation(),
        }
    }

    #[test]
    fn ion_coulomb_baseline() {
        let c = ConstantsTable::codata2018();
        let tau = tau_ion_coulomb(&ion(), &c).unwrap();
        assert_eq!(tau.dim(), Dimension::TIME);
        assert!(tau.si() > 1e-14 && tau.si() < 1e-12, "{tau}");
    }

    #[test]
    fn ion_coulomb_scalings() {
        let c = ConstantsTable::codata2018();
        let base = tau_ion_coulomb(&ion(), &c).unwrap().si();
        let hot = IonCoulombInputs {
            temperature: ion().temperature.scale(4.0),
            ..ion()
        };
        assert_relative_eq!(
            tau_ion_coulomb(&hot, &c).unwrap().si(),
            2.0 * base,
            max_relative = 1e-15
        );
        let far = IonCoulombInputs {
            standoff: ion().standoff.scale(2.0),
            ..ion()
        };
        assert_relative_eq!(
            tau_ion_coulomb(&far, &c).unwrap().si(),
            8.0 * base,
            max_relative = 1e-15
        );
    }

    #[test]
    fn ion_coulomb_rejects_nonpositive() {
        let c = ConstantsTable::codata2018();
        let bad = IonCoulombInputs {
            charge_count: 0.0,
            ..ion()
        };
        assert!(matches!(
            tau_ion_coulomb(&bad, &c),
            Err(ModelError::Domain {
                field: "charge_count",
                ..
            })
        ));
        let bad = IonCoulombInputs {
            separation: q(-1.0, "nm"),
            ..ion()
        };
        assert!(tau_ion_coulomb(&bad, &c).is_err());
        let bad = IonCoulombInputs {
            separation: q(1.0, "s"),
            ..ion()
        };
        assert!(matches!(
            tau_ion_coulomb(&bad, &c),
            Err(ModelError::Dimension { .. })
        ));
    }

    #[test]
    fn omega_values() {
        let o = OrientationTriple::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(omega_dipole(&o).unwrap(), 0.5);
        let o = OrientationTriple::new(0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            omega_dipole(&o),
            Err(ModelError::Divergent { .. })
        ));
        assert_eq!(
            omega_dipole(&OrientationTriple::aligned_separation()).unwrap(),
            1.0
        );
    }

    #[test]
    fn dipole_corrected_band() {
        let c = ConstantsTable::codata2018();
        let tau = tau_dipole(&dipole(), &c).unwrap();
        assert_eq!(tau.dim(), Dimension::TIME);
        // Hand evaluation ≈ 6.2e-4 s.
        assert_relative_eq!(tau.si(), 6.23862739937179e-4, max_relative = 1e-10);
    }

    #[test]
    fn dipole_scalings() {
        let c = ConstantsTable::codata2018();
        let base = tau_dipole(&dipole(), &c).unwrap().si();
        let gel = DipoleInputs {
            standoff: dipole().standoff.scale(10.0),
            ..dipole()
        };
        assert_relative_eq!(
            tau_dipole(&gel, &c).unwrap().si(),
            1e4 * base,
            max_relative = 1e-12
        );
        let vacuum = DipoleInputs {
            epsilon_r: 1.0,
            ..dipole()
        };
        assert_relative_eq!(
            base,
            10.0 * tau_dipole(&vacuum, &c).unwrap().si(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn dipole_divergence_propagates() {
        let c = ConstantsTable::codata2018();
        let ortho = DipoleInputs {
            orientation: OrientationTriple::new(0.0, 0.0, 0.0).unwrap(),
            ..dipole()
        };
        assert_eq!(tau_dipole(&ortho, &c).unwrap_err().kind(), "divergent");
    }

    #[test]
    fn hessian_orthogonal_case() {
        let c = ConstantsTable::codata2018();
        let h = tidal_hessian(
            q(-10.0, "e"),
            &QuantityVector::new([0.0, 1e-27, 0.0], Dimension::DIPOLE_MOMENT),
            &QuantityVector::new([2e-8, 0.0, 0.0], Dimension::LENGTH),
            10.0,
            &c,
        )
        .unwrap();
        let k = h.prefactor.si();
        let expected = [[0.0, -k, 0.0], [-k, 0.0, 0.0], [0.0, 0.0, 0.0]];
        assert_eq!(h.matrix, expected);
        assert_eq!(h.symmetry_defect(), 0.0);
    }

    #[test]
    fn hessian_rejects_zero_vectors() {
        let c = ConstantsTable::codata2018();
        let zero = QuantityVector::new([0.0; 3], Dimension::LENGTH);
        let p = QuantityVector::new([1e-27, 0.0, 0.0], Dimension::DIPOLE_MOMENT);
        assert!(tidal_hessian(q(1.0, "e"), &p, &zero, 1.0, &c).is_err());
    }

    #[test]
    fn temperature_curve_behaviour() {
        let c = ConstantsTable::codata2018();
        let grid = [q(1.0, "K"), q(4.0, "K")];
        let curve = temperature_curve(CurveInputs::IonCoulomb(&ion()), &grid, &c).unwrap();
        assert_relative_eq!(
            curve.points[1].1.si() / curve.points[0].1.si(),
            2.0,
            max_relative = 1e-12
        );
        assert_eq!(curve.flags, vec![LOW_TEMPERATURE_FLAG]);

        let single =
            temperature_curve(CurveInputs::Dipole(&dipole()), &[q(310.0, "K")], &c).unwrap();
        assert_eq!(single.points[0].1, tau_dipole(&dipole(), &c).unwrap());

        assert_eq!(
            temperature_curve(
                CurveInputs::Dipole(&dipole()),
                &[q(4.0, "K"), q(1.0, "K")],
                &c
            )
            .unwrap_err(),
            ModelError::Grid
        );
        assert!(temperature_curve(CurveInputs::Dipole(&dipole()), &[], &c).is_err());
    }
}
