// SPDX-License-Identifier: Apache-2.0

//! Symbolic formula trees and dimensional auditing.
//!
//! Formulas are written as infix strings:
//!
//! ```text
//! 4*pi*eps0*a^3*sqrt(m*k*T)/(N*q_e^2*s)
//! d/dx[p(x)]
//! G*M^2*s^2/(2*r^3)*(1 - 3*s/(8*r) + s^3/(80*r^3))
//! ```
//!
//! Numbers and `pi` are dimensionless. `sqrt(..)` is the half power,
//! `f(x, ..)` takes the dimension declared for `f`, and `d/dx[..]` divides
//! the operand's dimension by that of `x`. Exponents are integers or
//! parenthesized rationals such as `^(1/2)` or `^(-1/3)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use super::dimension::{Dimension, Exponent};
use super::units::{UnitError, UnitRegistry};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Symbol(String),
    /// `f(args..)`: a declared symbol evaluated at bound arguments.
    Apply {
        func: String,
        args: Vec<Expr>,
    },
    Neg(Box<Expr>),
    Sum {
        subtract: bool,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Product(Box<Expr>, Box<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, Exponent),
    Derivative {
        wrt: String,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        Parser::new(text)?.parse_all()
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum { .. } => 1,
            Expr::Product(..) | Expr::Quotient(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Power(..) => 4,
            _ => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, min: u8) -> fmt::Result {
    if child.precedence() < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(x) => write!(f, "{x}"),
            Expr::Symbol(s) => f.write_str(s),
            Expr::Apply { func, args } => {
                write!(f, "{func}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, 3)
            }
            Expr::Sum { subtract, lhs, rhs } => {
                write_child(f, lhs, 1)?;
                f.write_str(if *subtract { " - " } else { " + " })?;
                write_child(f, rhs, 2)
            }
            Expr::Product(l, r) => {
                write_child(f, l, 2)?;
                f.write_str("*")?;
                write_child(f, r, 3)
            }
            Expr::Quotient(l, r) => {
                write_child(f, l, 2)?;
                f.write_str("/")?;
                write_child(f, r, 3)
            }
            Expr::Power(b, p) => {
                write_child(f, b, 5)?;
                if p.is_integer() && *p.numer() >= 0 {
                    write!(f, "^{}", p.numer())
                } else {
                    write!(f, "^({}/{})", p.numer(), p.denom())
                }
            }
            Expr::Derivative { wrt, body } => write!(f, "d/d{wrt}[{body}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Derivative(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        // `d/d<ident>[` opens a derivative.
        if c == 'd' && chars.get(i + 1) == Some(&'/') && chars.get(i + 2) == Some(&'d') {
            let mut j = i + 3;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            let mut k = j;
            while k < chars.len() && chars[k].is_whitespace() {
                k += 1;
            }
            if j > i + 3 && is_ident_start(chars[i + 3]) && chars.get(k) == Some(&'[') {
                let wrt: String = chars[i + 3..j].iter().collect();
                out.push((Tok::Derivative(wrt), col));
                out.push((Tok::LBracket, k + 1));
                i = k + 1;
                continue;
            }
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<f64>().map_err(|_| ParseError {
                column: col,
                message: format!("bad number `{s}`"),
            })?;
            out.push((Tok::Num(v), col));
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn parse_all(mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::End {
            return self.error("empty expression");
        }
        let e = self.sum()?;
        if *self.peek() != Tok::End {
            return self.error("unexpected trailing input");
        }
        Ok(e)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let subtract = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Expr::Sum {
                subtract,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::Product(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::Quotient(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let p = self.exponent()?;
            return Ok(Expr::Power(Box::new(base), p));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i32, ParseError> {
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(v) if v.fract() == 0.0 && v.abs() < i32::MAX as f64 => {
                self.bump();
                Ok(if negative { -(v as i32) } else { v as i32 })
            }
            _ => self.error("expected integer exponent"),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let num = self.integer()?;
            let den = if *self.peek() == Tok::Slash {
                self.bump();
                self.integer()?
            } else {
                1
            };
            if den == 0 {
                return self.error("zero denominator in exponent");
            }
            self.expect(Tok::RParen, "`)` closing exponent")?;
            Ok(Exponent::new(num, den))
        } else {
            Ok(Exponent::from_integer(self.integer()?))
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Number(v)),
            Tok::Ident(name) => {
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::Symbol(name));
                }
                self.bump();
                let mut args = vec![self.sum()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.sum()?);
                }
                self.expect(Tok::RParen, "`)` closing argument list")?;
                if name == "sqrt" {
                    if args.len() != 1 {
                        return self.error("sqrt takes one argument");
                    }
                    let arg = args.pop().expect("one argument");
                    return Ok(Expr::Power(Box::new(arg), Exponent::new(1, 2)));
                }
                Ok(Expr::Apply { func: name, args })
            }
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Derivative(wrt) => {
                self.expect(Tok::LBracket, "`[`")?;
                let body = self.sum()?;
                self.expect(Tok::RBracket, "`]` closing derivative")?;
                Ok(Expr::Derivative {
                    wrt,
                    body: Box::new(body),
                })
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.error("expected a number, symbol or `(`")
            }
        }
    }
}

/// Declared dimensions of the symbols a formula may use.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SymbolTable {
    symbols: BTreeMap<String, Dimension>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, dim: Dimension) -> Self {
        self.insert(name, dim);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, dim: Dimension) {
        self.symbols.insert(name.into(), dim);
    }

    pub fn get(&self, name: &str) -> Option<Dimension> {
        if name == "pi" || name == "π" {
            return self
                .symbols
                .get(name)
                .copied()
                .or(Some(Dimension::DIMENSIONLESS));
        }
        self.symbols.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// A formula and the dimension it is claimed to have.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaTree {
    pub expr: Expr,
    pub symbols: SymbolTable,
}

impl FormulaTree {
    pub fn parse(text: &str, symbols: SymbolTable) -> Result<Self, ParseError> {
        Ok(Self {
            expr: Expr::parse(text)?,
            symbols,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditError {
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Consistent,
    /// The tree is well formed but its dimension differs from the claim.
    Mismatch,
    /// A sum adds terms of different dimension; `node` is the offending sum.
    InconsistentSum {
        node: String,
        lhs: Dimension,
        rhs: Dimension,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    /// `None` when a sum inside the tree is ill-formed.
    pub derived: Option<Dimension>,
    pub claimed: Dimension,
    pub verdict: Verdict,
}

impl AuditReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Consistent => write!(f, "consistent [{}]", self.claimed),
            Verdict::Mismatch => write!(
                f,
                "mismatch: derived [{}], claimed [{}]",
                self.derived.unwrap_or_default(),
                self.claimed
            ),
            Verdict::InconsistentSum { node, lhs, rhs } => write!(
                f,
                "mismatch: `{node}` adds [{lhs}] to [{rhs}]; claimed [{}]",
                self.claimed
            ),
        }
    }
}

enum Derive {
    Dim(Dimension),
    BadSum {
        node: String,
        lhs: Dimension,
        rhs: Dimension,
    },
}

fn derive(e: &Expr, t: &SymbolTable) -> Result<Derive, AuditError> {
    use Derive::*;
    let lookup = |name: &str| {
        t.get(name)
            .ok_or_else(|| AuditError::UnboundSymbol(name.to_string()))
    };
    macro_rules! sub {
        ($e:expr) => {
            match derive($e, t)? {
                Dim(d) => d,
                bad => return Ok(bad),
            }
        };
    }
    Ok(match e {
        Expr::Number(_) => Dim(Dimension::DIMENSIONLESS),
        Expr::Symbol(s) => Dim(lookup(s)?),
        Expr::Apply { func, args } => {
            let d = lookup(func)?;
            for a in args {
                sub!(a);
            }
            Dim(d)
        }
        Expr::Neg(x) => Dim(sub!(x)),
        Expr::Sum { lhs, rhs, .. } => {
            let l = sub!(lhs);
            let r = sub!(rhs);
            if l == r {
                Dim(l)
            } else {
                BadSum {
                    node: e.to_string(),
                    lhs: l,
                    rhs: r,
                }
            }
        }
        Expr::Product(l, r) => {
            let l = sub!(l);
            Dim(l * sub!(r))
        }
        Expr::Quotient(l, r) => {
            let l = sub!(l);
            Dim(l / sub!(r))
        }
        Expr::Power(b, p) => Dim(sub!(b).powr(*p)),
        Expr::Derivative { wrt, body } => {
            let by = lookup(wrt)?;
            Dim(sub!(body) / by)
        }
    })
}

/// Derives the dimension of `tree` and compares it with `claimed`.
pub fn audit_formula(tree: &FormulaTree, claimed: Dimension) -> Result<AuditReport, AuditError> {
    Ok(match derive(&tree.expr, &tree.symbols)? {
        Derive::Dim(d) => AuditReport {
            derived: Some(d),
            claimed,
            verdict: if d == claimed {
                Verdict::Consistent
            } else {
                Verdict::Mismatch
            },
        },
        Derive::BadSum { node, lhs, rhs } => AuditReport {
            derived: None,
            claimed,
            verdict: Verdict::InconsistentSum { node, lhs, rhs },
        },
    })
}

/// On-disk audit document: symbol declarations plus claimed formulas.
///
/// ```json
/// {
///   "symbols": { "p": "C*m", "x": "m" },
///   "formulas": [
///     { "name": "charge per length", "expr": "-d/dx[p(x)]", "claimed": "C/m" }
///   ]
/// }
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditDocument {
    #[serde(default)]
    pub symbols: BTreeMap<String, String>,
    #[serde(default)]
    pub formulas: Vec<ClaimedFormula>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimedFormula {
    pub name: String,
    pub expr: String,
    /// Unit expression whose dimension is claimed, e.g. `s` or `C/m`.
    pub claimed: String,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("symbol `{name}`: {source}")]
    SymbolUnit { name: String, source: UnitError },
    #[error("formula `{name}`: claimed unit: {source}")]
    ClaimUnit { name: String, source: UnitError },
    #[error("formula `{name}`: {source}")]
    Expr { name: String, source: ParseError },
    #[error("formula `{name}`: {source}")]
    Audit { name: String, source: AuditError },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormulaVerdict {
    pub name: String,
    pub expr: String,
    pub report: AuditReport,
}

impl AuditDocument {
    /// Whitespace-only input is an empty document.
    pub fn from_json_str(text: &str) -> Result<Self, DocumentError> {
        if text.trim().is_empty() {
            return Ok(Self::default());
        }
        Ok(serde_json::from_str(text)?)
    }

    pub fn symbol_table(&self, registry: &UnitRegistry) -> Result<SymbolTable, DocumentError> {
        let mut table = SymbolTable::new();
        for (name, unit) in &self.symbols {
            let dim = registry
                .dimension_of(unit)
                .map_err(|source| DocumentError::SymbolUnit {
                    name: name.clone(),
                    source,
                })?;
            table.insert(name.clone(), dim);
        }
        Ok(table)
    }

    pub fn audit(&self, registry: &UnitRegistry) -> Result<Vec<FormulaVerdict>, DocumentError> {
        let symbols = self.symbol_table(registry)?;
        self.formulas
            .iter()
            .map(|f| {
                let claimed = registry.dimension_of(&f.claimed).map_err(|source| {
                    DocumentError::ClaimUnit {
                        name: f.name.clone(),
                        source,
                    }
                })?;
                let tree = FormulaTree::parse(&f.expr, symbols.clone()).map_err(|source| {
                    DocumentError::Expr {
                        name: f.name.clone(),
                        source,
                    }
                })?;
                let report =
                    audit_formula(&tree, claimed).map_err(|source| DocumentError::Audit {
                        name: f.name.clone(),
                        source,
                    })?;
                Ok(FormulaVerdict {
                    name: f.name.clone(),
                    expr: f.expr.clone(),
                    report,
                })
            })
            .collect()
    }
}

/// Symbols used by the built-in model formulas.
pub fn model_symbols() -> SymbolTable {
    use Dimension as D;
    SymbolTable::new()
        .with("eps0", D::PERMITTIVITY)
        .with("eps_r", D::DIMENSIONLESS)
        .with("k", D::ENTROPY)
        .with("q_e", D::CHARGE)
        .with("G", D::GRAVITATIONAL)
        .with("hbar", D::ACTION)
        .with("T", D::TEMPERATURE)
        .with("m", D::MASS)
        .with("M", D::MASS)
        .with("a", D::LENGTH)
        .with("r", D::LENGTH)
        .with("s", D::LENGTH)
        .with("D", D::LENGTH)
        .with("N", D::DIMENSIONLESS)
        .with("z", D::DIMENSIONLESS)
        .with("eta", D::DIMENSIONLESS)
        .with("Omega", D::DIMENSIONLESS)
        .with("p", D::DIPOLE_MOMENT)
        .with("n", D::NUMBER_DENSITY)
        .with("n_H2O", D::NUMBER_DENSITY)
        .with("E", D::ENERGY)
}

/// The model formulas in audit syntax, with their claimed dimensions.
pub const MODEL_FORMULAS: [(&str, &str, Dimension); 7] = [
    (
        "ion-Coulomb decoherence time",
        "4*pi*eps0*a^3*sqrt(m*k*T)/(N*q_e^2*s)",
        Dimension::TIME,
    ),
    (
        "dipole decoherence time",
        "4*pi*eps_r*eps0*a^4*sqrt(m*k*T)/(3*q_e*p*s)*Omega",
        Dimension::TIME,
    ),
    (
        "partial-sphere self-energy",
        "G*M^2*s^2/(2*r^3)*(1 - 3*s/(8*r) + s^3/(80*r^3))",
        Dimension::ENERGY,
    ),
    (
        "Debye length",
        "sqrt(eps_r*eps0*k*T/(n*z^2*q_e^2))",
        Dimension::LENGTH,
    ),
    (
        "ion standoff",
        "D/2 + (eta*n_H2O)^(-1/3)",
        Dimension::LENGTH,
    ),
    (
        "coincidence-to-contact energy",
        "(6/5 - 1/2)*G*m^2/r",
        Dimension::ENERGY,
    ),
    ("collapse time", "hbar/E", Dimension::TIME),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn audit(text: &str, table: SymbolTable, claimed: Dimension) -> AuditReport {
        audit_formula(&FormulaTree::parse(text, table).unwrap(), claimed).unwrap()
    }

    #[test]
    fn polarization_derivative_is_not_a_line_charge() {
        let table = SymbolTable::new()
            .with("p", Dimension::DIPOLE_MOMENT)
            .with("x", Dimension::LENGTH);
        let claimed = Dimension::CHARGE / Dimension::LENGTH;
        let r = audit("d/dx[p(x)]", table.clone(), claimed);
        assert_eq!(r.verdict, Verdict::Mismatch);
        assert_eq!(r.derived, Some(Dimension::CHARGE));

        let r = audit("-d/dx[p(x)]", table, claimed);
        assert!(!r.is_consistent());
    }

    #[test]
    fn model_formulas_close_dimensionally() {
        for (name, text, claimed) in MODEL_FORMULAS {
            let r = audit(text, model_symbols(), claimed);
            assert!(r.is_consistent(), "{name}: {r}");
        }
    }

    #[test]
    fn self_sum_is_consistent() {
        let t = SymbolTable::new().with("x", Dimension::LENGTH);
        assert!(audit("x + x", t, Dimension::LENGTH).is_consistent());
    }

    #[test]
    fn bad_sum_names_the_node() {
        let t = SymbolTable::new()
            .with("x", Dimension::LENGTH)
            .with("t", Dimension::TIME);
        let r = audit("2*(x + t)", t, Dimension::LENGTH);
        match r.verdict {
            Verdict::InconsistentSum { node, lhs, rhs } => {
                assert_eq!(node, "x + t");
                assert_eq!(lhs, Dimension::LENGTH);
                assert_eq!(rhs, Dimension::TIME);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbound_symbol() {
        let tree =
            FormulaTree::parse("a*b", SymbolTable::new().with("a", Dimension::LENGTH)).unwrap();
        assert_eq!(
            audit_formula(&tree, Dimension::AREA).unwrap_err(),
            AuditError::UnboundSymbol("b".into())
        );
        let tree =
            FormulaTree::parse("d/dy[a]", SymbolTable::new().with("a", Dimension::LENGTH)).unwrap();
        assert!(audit_formula(&tree, Dimension::DIMENSIONLESS).is_err());
    }

    #[test]
    fn parser_shapes() {
        assert_eq!(
            Expr::parse("a^(-1/3)").unwrap(),
            Expr::Power(Box::new(Expr::Symbol("a".into())), Exponent::new(-1, 3))
        );
        assert_eq!(
            Expr::parse("2e-3*x").unwrap(),
            Expr::Product(
                Box::new(Expr::Number(2e-3)),
                Box::new(Expr::Symbol("x".into()))
            )
        );
        // `d/dx` needs a bracket; otherwise it is an ordinary quotient.
        assert!(matches!(Expr::parse("d/dx").unwrap(), Expr::Quotient(..)));
        let e = Expr::parse("a - (b - c)").unwrap();
        assert_eq!(e.to_string(), "a - (b - c)");
        let e = Expr::parse("x/(y*z)").unwrap();
        assert_eq!(e.to_string(), "x/(y*z)");
    }

    #[test]
    fn parse_errors_carry_columns() {
        let err = Expr::parse("a + * b").unwrap_err();
        assert_eq!(err.column, 5);
        let err = Expr::parse("(a + b").unwrap_err();
        assert_eq!(err.column, 7);
        assert!(Expr::parse("a $ b").is_err());
        assert!(Expr::parse("").is_err());
        assert!(Expr::parse("x^y").is_err());
        assert!(Expr::parse("d/dx[a").is_err());
    }

    #[test]
    fn document_round() {
        let doc = AuditDocument::from_json_str(
            r#"{"symbols": {"p": "C*m", "x": "m"},
                "formulas": [{"name": "line charge", "expr": "-d/dx[p(x)]", "claimed": "C/m"}]}"#,
        )
        .unwrap();
        let v = doc.audit(UnitRegistry::standard()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].report.verdict, Verdict::Mismatch);
        assert!(AuditDocument::from_json_str("  \n")
            .unwrap()
            .formulas
            .is_empty());
        assert!(AuditDocument::from_json_str(r#"{"bogus": 1}"#).is_err());
    }
}
