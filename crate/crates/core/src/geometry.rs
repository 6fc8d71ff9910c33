// SPDX-License-Identifier: Apache-2.0

//! Ion standoff distance and random orientations for the dipole factor.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::quantities::{ConstantsTable, Dimension, Exponent, Quantity};
use crate::scalar::Real;

/// Name of the orientation sampler, echoed in report metadata.
///
/// ChaCha8 seeded with `seed_from_u64`; each normal deviate comes from a
/// Box–Muller pair `(u1, u2)` with `u1 = (x >> 11 + 1)·2⁻⁵³` and
/// `u2 = (x >> 11)·2⁻⁵³`, cosine branch first, sine branch cached for the
/// next draw. Unit vectors are three normals divided by their norm.
pub const ORIENTATION_SAMPLER: &str = "chacha8-boxmuller-v1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
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
    #[error("zero-length vector")]
    ZeroVector,
}

/// Cosines of the angles between the standoff direction `â`, the separation
/// direction `ŝ` and the dipole direction `p̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationTriple<S> {
    /// `â·ŝ`
    pub cos_theta: S,
    /// `p̂·â`
    pub cos_phi: S,
    /// `ŝ·p̂`
    pub cos_psi: S,
}

impl<S: Real> OrientationTriple<S> {
    pub fn new(cos_theta: S, cos_phi: S, cos_psi: S) -> Result<Self, GeometryError> {
        for (field, v) in [
            ("cos_theta", cos_theta),
            ("cos_phi", cos_phi),
            ("cos_psi", cos_psi),
        ] {
            if !(v >= -S::one() && v <= S::one()) {
                return Err(GeometryError::Invalid {
                    field,
                    requirement: "in [-1, 1]",
                    value: v.to_f64_lossy(),
                });
            }
        }
        Ok(Self {
            cos_theta,
            cos_phi,
            cos_psi,
        })
    }

    /// Orientation with `â ∥ ŝ` and `p̂` perpendicular to both, where the
    /// dipole factor equals one.
    pub fn aligned_separation() -> Self {
        Self {
            cos_theta: S::one(),
            cos_phi: S::zero(),
            cos_psi: S::zero(),
        }
    }

    /// Cosines from three (not necessarily normalized) direction vectors.
    pub fn from_vectors(a: [S; 3], s: [S; 3], p: [S; 3]) -> Result<Self, GeometryError> {
        let a = normalize(a)?;
        let s = normalize(s)?;
        let p = normalize(p)?;
        let clamp = |x: S| x.max(-S::one()).min(S::one());
        Ok(Self {
            cos_theta: clamp(dot(a, s)),
            cos_phi: clamp(dot(p, a)),
            cos_psi: clamp(dot(s, p)),
        })
    }

    /// Determinant of the Gram matrix of the three unit vectors; nonnegative
    /// for any triple realizable in three dimensions.
    pub fn gram_determinant(&self) -> S {
        let (x, y, z) = (self.cos_theta, self.cos_phi, self.cos_psi);
        let two = S::one() + S::one();
        S::one() + two * x * y * z - x * x - y * y - z * z
    }
}

pub fn dot<S: Real>(a: [S; 3], b: [S; 3]) -> S {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm<S: Real>(a: [S; 3]) -> S {
    dot(a, a).sqrt()
}

pub fn normalize<S: Real>(a: [S; 3]) -> Result<[S; 3], GeometryError> {
    let n = norm(a);
    if !n.is_finite() || n <= S::zero() {
        return Err(GeometryError::ZeroVector);
    }
    Ok(a.map(|x| x / n))
}

/// Ionic environment around the microtubule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandoffSpec {
    /// Ions per water molecule.
    pub eta: f64,
    /// Microtubule diameter.
    pub diameter: Quantity<f64>,
    /// Enlargement of the ion-free zone in the gel phase (1 = no gel).
    pub gel_factor: f64,
}

impl StandoffSpec {
    pub fn validate(&self) -> Result<(), GeometryError> {
        let invalid = |field, requirement, value| {
            Err(GeometryError::Invalid {
                field,
                requirement,
                value,
            })
        };
        if self.diameter.dim() != Dimension::LENGTH {
            return Err(GeometryError::Dimension {
                field: "diameter",
                expected: Dimension::LENGTH,
                found: self.diameter.dim(),
            });
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return invalid("eta", "positive", self.eta);
        }
        if !(self.diameter.si() >= 0.0 && self.diameter.si().is_finite()) {
            return invalid("diameter", "nonnegative", self.diameter.si());
        }
        if !(self.gel_factor >= 1.0 && self.gel_factor.is_finite()) {
            return invalid("gel_factor", ">= 1", self.gel_factor);
        }
        Ok(())
    }
}

/// Distance from the microtubule axis region to the nearest ion:
/// `gel_factor · (D/2 + (η n_H2O)^(-1/3))`.
pub fn ion_standoff(
    spec: &StandoffSpec,
    constants: &ConstantsTable<f64>,
) -> Result<Quantity<f64>, GeometryError> {
    spec.validate()?;
    let ion_density = constants.water_number_density.scale(spec.eta);
    let spacing = ion_density.powr(Exponent::new(-1, 3));
    let base = spec
        .diameter
        .scale(0.5)
        .try_add(spacing)
        .expect("both terms are lengths");
    Ok(base.scale(spec.gel_factor))
}

/// Seeded source of sphere-uniform unit vectors.
pub struct SphereSampler {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl SphereSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        let u1 = ((self.rng.next_u64() >> 11) + 1) as f64 * SCALE;
        let u2 = (self.rng.next_u64() >> 11) as f64 * SCALE;
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }

    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let v = [
                self.standard_normal(),
                self.standard_normal(),
                self.standard_normal(),
            ];
            if let Ok(u) = normalize(v) {
                return u;
            }
        }
    }
}

/// Draws `count` triples of independent sphere-uniform vectors `(â, ŝ, p̂)`
/// and returns their pairwise cosines. Deterministic in `seed`.
pub fn sample_orientations(seed: u64, count: usize) -> Vec<OrientationTriple<f64>> {
    let mut sampler = SphereSampler::new(seed);
    (0..count)
        .map(|_| {
            let a = sampler.unit_vector();
            let s = sampler.unit_vector();
            let p = sampler.unit_vector();
            OrientationTriple::from_vectors(a, s, p).expect("unit vectors are nonzero")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::make_quantity;
    use approx::assert_relative_eq;

    fn spec(eta: f64, d_nm: f64, gel: f64) -> StandoffSpec {
        StandoffSpec {
            eta,
            diameter: make_quantity(d_nm, "nm").unwrap(),
            gel_factor: gel,
        }
    }

    #[test]
    fn physiological_standoff() {
        let c = ConstantsTable::codata2018();
        let a = ion_standoff(&spec(2e-4, 24.0, 1.0), &c).unwrap();
        assert_eq!(a.dim(), Dimension::LENGTH);
        // Hand evaluation: 12 nm + (6.68e24 m^-3)^(-1/3) = 12 nm + 5.310 nm.
        assert_relative_eq!(a.si(), 1.7309755366274873e-8, max_relative = 1e-12);
        assert!(a.si() > 10e-9 && a.si() < 20e-9);
    }

    #[test]
    fn gel_factor_scales_exactly() {
        let c = ConstantsTable::codata2018();
        let one = ion_standoff(&spec(2e-4, 24.0, 1.0), &c).unwrap();
        let ten = ion_standoff(&spec(2e-4, 24.0, 10.0), &c).unwrap();
        assert_eq!(ten.si(), one.si() * 10.0);
    }

    #[test]
    fn bare_water_spacing() {
        let c = ConstantsTable::codata2018();
        let a = ion_standoff(&spec(1.0, 0.0, 1.0), &c).unwrap();
        assert_relative_eq!(a.si(), 3.34e28f64.powf(-1.0 / 3.0), max_relative = 1e-14);
        assert!((a.si() - 3.1e-10).abs() < 0.05e-10);
    }

    #[test]
    fn invalid_specs() {
        let c = ConstantsTable::codata2018();
        assert!(ion_standoff(&spec(0.0, 24.0, 1.0), &c).is_err());
        assert!(ion_standoff(&spec(2e-4, -1.0, 1.0), &c).is_err());
        assert!(ion_standoff(&spec(2e-4, 24.0, 0.5), &c).is_err());
        let mut s = spec(2e-4, 24.0, 1.0);
        s.diameter = make_quantity(1.0, "s").unwrap();
        assert!(matches!(
            ion_standoff(&s, &c),
            Err(GeometryError::Dimension { .. })
        ));
    }

    #[test]
    fn orientation_validation() {
        assert!(OrientationTriple::new(1.0, 0.0, -1.0).is_ok());
        assert!(OrientationTriple::new(1.01, 0.0, 0.0).is_err());
        assert!(OrientationTriple::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(
            OrientationTriple::from_vectors([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).is_err()
        );
    }

    #[test]
    fn from_vectors_definitions() {
        let a = [1.0, 0.0, 0.0];
        let s = [1.0, 1.0, 0.0];
        let p = [0.0, 0.0, 2.0];
        let o = OrientationTriple::from_vectors(a, s, p).unwrap();
        assert_relative_eq!(
            o.cos_theta,
            std::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
        assert_eq!(o.cos_phi, 0.0);
        assert_eq!(o.cos_psi, 0.0);
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_orientations(1, 2), sample_orientations(1, 2));
        assert_ne!(sample_orientations(1, 2), sample_orientations(2, 2));
        // A longer run starts with the shorter one.
        assert_eq!(
            sample_orientations(5, 3)[..2],
            sample_orientations(5, 2)[..]
        );
    }

    #[test]
    fn sampled_cosines_in_range_and_realizable() {
        for o in sample_orientations(11, 10_000) {
            for c in [o.cos_theta, o.cos_phi, o.cos_psi] {
                assert!((-1.0..=1.0).contains(&c));
            }
            assert!(o.gram_determinant() >= -1e-12);
        }
    }
}
