//! Quadratic-point table generation on X0(37): multiples of the generator
//! (0, 0) on E37 are pulled back through the quotient map into points over
//! quadratic fields, optionally decorated with j-invariants and curve
//! coefficients from an external j-map.

use num_bigint::BigInt;
use serde_json::json;

use crate::arith::{intfactor, rat_int, ArithError, Field, QuadExt, Rat};
use crate::ellcurve::ECPoint;
use crate::pipelines::jmap::JMapData;
use crate::pipelines::models;

/// One generated quadratic point: `kG` on E37 pulled back to the working
/// model of X0(37) over `Q(sqrt(D))`.
#[derive(Clone, Debug)]
pub struct QuadPointRecord {
    pub k: i64,
    /// Coordinates of kG on E37.
    pub u: Rat,
    pub v: Rat,
    /// Squarefree radicand of the quadratic field.
    pub d: BigInt,
    pub x: QuadExt<Rat>,
    pub y: QuadExt<Rat>,
    pub j: Option<QuadExt<Rat>>,
    /// The j-map evaluation hit a pole at this point.
    pub j_pole: bool,
    /// Short-Weierstrass coefficients (A, B) attached from j, absent for
    /// j = 0 / j = 1728 or without a j-map.
    pub curve: Option<(QuadExt<Rat>, QuadExt<Rat>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// j-invariant of `y^2 = x^3 + Ax + B`.
pub fn j_from_short_weierstrass<F: Field>(a: &F, b: &F) -> Result<F, ArithError> {
    let four_a3 = a.mul(a).mul(a).mul(&a.from_i64(4));
    let disc_part = four_a3.add(&b.mul(b).mul(&b.from_i64(27)));
    four_a3.mul(&a.from_i64(1728)).div(&disc_part)
}

/// Generate records for k = 1..=k_max. Multiples whose fiber is rational
/// (the discriminant 1 - 4(u+1) is a rational square) are skipped.
pub fn generate_table(
    k_max: i64,
    jmap: Option<&JMapData>,
) -> Result<Vec<QuadPointRecord>, ArithError> {
    let e = models::e37();
    let g = ECPoint::Affine(rat_int(0), rat_int(0));
    let working = models::x37_working_model()
        .map_err(|e| ArithError::Other(format!("working model: {e}")))?;
    let mut out = Vec::new();
    for k in 1..=k_max {
        let (u, v) = match e.scalar_mul(k, &g)? {
            ECPoint::Infinity => continue,
            ECPoint::Affine(u, v) => (u, v),
        };
        // x satisfies (u+1)x^2 - x + 1 = 0; discriminant 1 - 4(u+1)
        let disc = rat_int(1).sub(&u.add(&rat_int(1)).mul(&rat_int(4)));
        if disc.sqrt()?.is_some() {
            // rational fiber
            continue;
        }
        let (d, t) = intfactor::rational_squarefree_part(&disc);
        let sqrt_disc = QuadExt::new(rat_int(0), t, Rat::from_integer(d.clone()))?;
        let denom = u.add(&rat_int(1)).mul(&rat_int(2));
        let x = sqrt_disc
            .one()
            .add(&sqrt_disc)
            .div(&QuadExt::from_base(denom, sqrt_disc.s.clone()))?;
        let y = x
            .mul(&x)
            .mul(&x)
            .mul(&QuadExt::from_base(v.add(&rat_int(1)), sqrt_disc.s.clone()));
        let s = x.s.clone();
        let gx = working
            .f
            .evaluate_mapped(&x, |c| QuadExt::from_base(c.clone(), s.clone()));
        let hx = working
            .h
            .evaluate_mapped(&x, |c| QuadExt::from_base(c.clone(), s.clone()));
        if y.mul(&y).add(&hx.mul(&y)) != gx {
            return Err(ArithError::Other(format!(
                "generated point for k = {k} fails the working model"
            )));
        }
        let mut record = QuadPointRecord {
            k,
            u,
            v,
            d,
            x,
            y,
            j: None,
            j_pole: false,
            curve: None,
        };
        if let Some(map) = jmap {
            match map.evaluate(&record.x, &record.y)? {
                None => record.j_pole = true,
                Some(j) => {
                    let zero = j.zero();
                    let j1728 = j.from_i64(1728);
                    if j != zero && j != j1728 {
                        // A = -3j(j - 1728), B = -2j(j - 1728)^2
                        let shift = j.sub(&j1728);
                        let a = j.mul(&shift).mul(&j.from_i64(-3));
                        let b = j.mul(&shift).mul(&shift).mul(&j.from_i64(-2));
                        record.curve = Some((a, b));
                    }
                    record.j = Some(j);
                }
            }
        }
        out.push(record);
    }
    Ok(out)
}

fn quad_cell(q: &QuadExt<Rat>) -> String {
    format!("({}) + ({})*sqrt({})", q.u, q.v, q.s)
}

/// Deterministic serialization; all numbers exact rationals.
pub fn export_table(records: &[QuadPointRecord], format: ExportFormat) -> String {
    match format {
        ExportFormat::Csv => {
            let mut out = String::from("k,D,x,y,j,A,B\n");
            for r in records {
                let j = match (&r.j, r.j_pole) {
                    (_, true) => "pole".to_string(),
                    (Some(j), _) => quad_cell(j),
                    (None, _) => String::new(),
                };
                let (a, b) = match &r.curve {
                    Some((a, b)) => (quad_cell(a), quad_cell(b)),
                    None => (String::new(), String::new()),
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.k,
                    r.d,
                    quad_cell(&r.x),
                    quad_cell(&r.y),
                    j,
                    a,
                    b
                ));
            }
            out
        }
        ExportFormat::Json => {
            let rows: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "u": r.u.to_string(),
                        "v": r.v.to_string(),
                        "D": r.d.to_string(),
                        "x": quad_cell(&r.x),
                        "y": quad_cell(&r.y),
                        "j": r.j.as_ref().map(quad_cell),
                        "j_pole": r.j_pole,
                        "A": r.curve.as_ref().map(|(a, _)| quad_cell(a)),
                        "B": r.curve.as_ref().map(|(_, b)| quad_cell(b)),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("table serialization cannot fail")
        }
    }
}
