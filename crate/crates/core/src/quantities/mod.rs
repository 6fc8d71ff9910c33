// SPDX-License-Identifier: Apache-2.0

//! Exact dimensional arithmetic, unit conversion, pinned constants and
//! dimensional auditing of formula trees.

pub mod constants;
pub mod dimension;
pub mod formula;
pub mod quantity;
pub mod units;

pub use constants::{ConstantValues, ConstantsError, ConstantsTable, CODATA_2018_VERSION};
pub use dimension::{BaseDimension, Dimension, Exponent};
pub use formula::{
    audit_formula, AuditDocument, AuditError, AuditReport, Expr, FormulaTree, FormulaVerdict,
    ParseError, SymbolTable, Verdict,
};
pub use quantity::{combine, format_sci, Operand, Operation, Quantity, QuantityError};
pub use units::{convert, make_quantity, Unit, UnitError, UnitRegistry};
