// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::quantities::{Dimension, Quantity};

/// Failure of a model evaluation. Sweeps record these per row.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("`{field}` must be {requirement}, got {value:e}")]
    Domain {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("`{field}` has dimension [{found}], expected [{expected}]")]
    Dimension {
        field: &'static str,
        expected: Box<Dimension>,
        found: Box<Dimension>,
    },
    #[error("dipole factor diverges: vectors are mutually orthogonal (bracket {bracket:e})")]
    Divergent { bracket: f64 },
    #[error("partial separation {separation:e} m exceeds the sphere diameter {diameter:e} m")]
    OutOfRegime { separation: f64, diameter: f64 },
    #[error("grid must be non-empty, strictly ascending and positive")]
    Grid,
}

impl ModelError {
    pub fn dimension(field: &'static str, expected: Dimension, found: Dimension) -> Self {
        ModelError::Dimension {
            field,
            expected: Box::new(expected),
            found: Box::new(found),
        }
    }

    /// Short machine-readable kind, used in CSV notes.
    pub fn kind(&self) -> &'static str {
        match self {
            ModelError::Domain { .. } => "domain",
            ModelError::Dimension { .. } => "dimension",
            ModelError::Divergent { .. } => "divergent",
            ModelError::OutOfRegime { .. } => "out-of-regime",
            ModelError::Grid => "grid",
        }
    }
}

impl From<GeometryError> for ModelError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Invalid {
                field,
                requirement,
                value,
            } => ModelError::Domain {
                field,
                requirement,
                value,
            },
            GeometryError::Dimension {
                field,
                expected,
                found,
            } => ModelError::dimension(field, expected, found),
            GeometryError::ZeroVector => ModelError::Domain {
                field: "vector",
                requirement: "nonzero",
                value: 0.0,
            },
        }
    }
}

pub(crate) fn positive(
    field: &'static str,
    q: &Quantity<f64>,
    expected: Dimension,
) -> Result<(), ModelError> {
    if q.dim() != expected {
        return Err(ModelError::dimension(field, expected, q.dim()));
    }
    positive_scalar(field, q.si())
}

pub(crate) fn positive_scalar(field: &'static str, value: f64) -> Result<(), ModelError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::Domain {
            field,
            requirement: "positive and finite",
            value,
        })
    }
}
