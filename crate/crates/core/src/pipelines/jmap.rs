//! Optional external j-map data for X0(37): a rational map in (x, y) whose
//! value at a quadratic point is the j-invariant of the attached curve.
//! The built-in reference table is used as the validation oracle on load.

use std::path::Path;

use thiserror::Error;

use crate::arith::{rat_int, ArithError, Field, QuadExt, Rat};
use crate::pipelines::models::{self, TableCurve};
use crate::pipelines::table::j_from_short_weierstrass;

#[derive(Debug, Error)]
pub enum JMapError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing `provenance:` header")]
    MissingProvenance,
    #[error("validation failed at table row {row} (D = {d}): expected j = {expected}, map gives {actual}")]
    ValidationFailed {
        row: usize,
        d: i64,
        expected: String,
        actual: String,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Sparse bivariate rational map: numerator and denominator as lists of
/// `(i, j, coefficient)` monomials `c * x^i * y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JMapData {
    pub provenance: String,
    pub numerator: Vec<(u32, u32, Rat)>,
    pub denominator: Vec<(u32, u32, Rat)>,
}

fn eval_sparse(
    terms: &[(u32, u32, Rat)],
    x: &QuadExt<Rat>,
    y: &QuadExt<Rat>,
) -> QuadExt<Rat> {
    let mut acc = x.zero();
    for (i, j, c) in terms {
        let mut term = QuadExt::from_base(c.clone(), x.s.clone());
        for _ in 0..*i {
            term = term.mul(x);
        }
        for _ in 0..*j {
            term = term.mul(y);
        }
        acc = acc.add(&term);
    }
    acc
}

impl JMapData {
    /// Evaluate the map; `Ok(None)` at a pole of the denominator.
    pub fn evaluate(
        &self,
        x: &QuadExt<Rat>,
        y: &QuadExt<Rat>,
    ) -> Result<Option<QuadExt<Rat>>, ArithError> {
        let num = eval_sparse(&self.numerator, x, y);
        let den = eval_sparse(&self.denominator, x, y);
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(num.div(&den)?))
    }

    /// Check the map against every reference-table row: where the table
    /// prints a curve the map's value must be its j-invariant; tagged rows
    /// must evaluate to the tag.
    pub fn validate(&self) -> Result<(), JMapError> {
        for (idx, row) in models::table1().iter().enumerate() {
            let d = rat_int(row.d);
            let x = QuadExt::new(row.x.0.clone(), row.x.1.clone(), d.clone())?;
            let y = QuadExt::new(row.y.0.clone(), row.y.1.clone(), d)?;
            let fail = |expected: String, actual: String| JMapError::ValidationFailed {
                row: idx + 1,
                d: row.d,
                expected,
                actual,
            };
            let actual = match self.evaluate(&x, &y)? {
                Some(j) => j,
                None => {
                    return Err(fail("finite j".into(), "pole".into()));
                }
            };
            let expected = match &row.curve {
                TableCurve::Coeffs { a, b } => {
                    let s = x.s.clone();
                    let aq = QuadExt::new(a.0.clone(), a.1.clone(), s.clone())?;
                    let bq = QuadExt::new(b.0.clone(), b.1.clone(), s)?;
                    j_from_short_weierstrass(&aq, &bq)?
                }
                TableCurve::JZero => actual.zero(),
                TableCurve::J1728 => actual.from_i64(1728),
                TableCurve::JOnly(v) => QuadExt::new(v.0.clone(), v.1.clone(), x.s.clone())?,
            };
            if actual != expected {
                return Err(fail(expected.to_string(), actual.to_string()));
            }
        }
        Ok(())
    }

    /// Parse the line-oriented format: a `provenance:` header, `[numerator]`
    /// and `[denominator]` sections, `i j p/q` monomial lines, `#` comments.
    pub fn parse(text: &str) -> Result<Self, JMapError> {
        let mut provenance = None;
        let mut numerator = Vec::new();
        let mut denominator = Vec::new();
        let mut section: Option<bool> = None; // true = numerator
        for (n, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| JMapError::Parse {
                line: n + 1,
                message,
            };
            if let Some(rest) = line.strip_prefix("provenance:") {
                provenance = Some(rest.trim().to_string());
                continue;
            }
            match line {
                "[numerator]" => {
                    section = Some(true);
                    continue;
                }
                "[denominator]" => {
                    section = Some(false);
                    continue;
                }
                _ => {}
            }
            let into_num = section.ok_or_else(|| err("monomial before any section".into()))?;
            let mut parts = line.split_whitespace();
            let (i, j, c) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(i), Some(j), Some(c), None) => (i, j, c),
                _ => return Err(err("expected `i j p/q`".into())),
            };
            let i: u32 = i.parse().map_err(|e| err(format!("bad exponent: {e}")))?;
            let j: u32 = j.parse().map_err(|e| err(format!("bad exponent: {e}")))?;
            let c: Rat = c
                .parse()
                .map_err(|e| err(format!("bad coefficient: {e}")))?;
            if into_num {
                numerator.push((i, j, c));
            } else {
                denominator.push((i, j, c));
            }
        }
        let provenance = provenance.ok_or(JMapError::MissingProvenance)?;
        if denominator.is_empty() {
            return Err(JMapError::Parse {
                line: 0,
                message: "empty denominator section".into(),
            });
        }
        Ok(JMapData {
            provenance,
            numerator,
            denominator,
        })
    }
}

/// Load and validate a j-map data file.
pub fn load_jmap(path: &Path) -> Result<JMapData, JMapError> {
    let text = std::fs::read_to_string(path)?;
    let data = JMapData::parse(&text)?;
    data.validate()?;
    Ok(data)
}
