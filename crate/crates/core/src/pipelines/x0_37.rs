//! Verification suite for X0(37) over Q: working-model consistency, the
//! symbolic quotient-map identity, the even model, the generator's
//! non-torsion range, and reproduction of the quadratic-point table.

use crate::arith::{rat, rat_int, Field, QuadExt, Rat};
use crate::bielliptic::build_even_model;
use crate::ellcurve::ECPoint;
use crate::pipelines::models::{self, TableRow};
use crate::pipelines::table::{generate_table, QuadPointRecord};
use crate::pipelines::{
    run_check, run_check_optional, Outcome, Report, SuiteConfig,
};
use crate::poly::UniPoly;

pub fn run_x0_37(config: &SuiteConfig) -> Report {
    let mut checks = Vec::new();

    run_check(
        &mut checks,
        config,
        "working-model",
        "f(x) = g(x) + x^6/4 with the cross-term model well-formed",
        || {
            models::x37_working_model().map_err(|e| e.to_string())?;
            let x6 = UniPoly::from_i64(&rat_int(0), &[0, 0, 0, 0, 0, 0, 1]);
            let reassembled = models::g37().add(&x6.scale(&rat(1, 4)));
            Ok::<_, String>(Outcome::compare(models::f37(), reassembled))
        },
    );

    run_check(
        &mut checks,
        config,
        "map-identity",
        "quotient-map numerator reduces to the working-model relation",
        || Ok::<_, String>(map_identity_outcome(&models::g37())),
    );

    run_check(
        &mut checks,
        config,
        "even-model",
        "(c6, c4, c2, c0) = (-1/64)(1, 9, 11, -37) with d-pair {0, -2}",
        || {
            let curve = models::x37_curve().map_err(|e| e.to_string())?;
            let emd = build_even_model(curve, models::x37_involution())
                .map_err(|e| e.to_string())?;
            let d_ok = {
                let pair = [emd.d1.clone(), emd.d2.clone()];
                pair.contains(&rat_int(0)) && pair.contains(&rat_int(-2))
            };
            let printed = models::x37_even_coeffs();
            let got = (emd.c6, emd.c4, emd.c2, emd.c0);
            let reversed = (
                got.3.clone(),
                got.2.clone(),
                got.1.clone(),
                got.0.clone(),
            );
            let c_ok = got == printed || reversed == printed;
            Ok::<_, String>(Outcome::verdict(
                format!(
                    "d-pair {{0, -2}}, coefficients ({}, {}, {}, {}) up to orientation",
                    printed.0, printed.1, printed.2, printed.3
                ),
                format!(
                    "d-pair {{{}, {}}}, coefficients ({}, {}, {}, {})",
                    emd.d1, emd.d2, got.0, got.1, got.2, got.3
                ),
                d_ok && c_ok,
            ))
        },
    );

    run_check(
        &mut checks,
        config,
        "generator-nontorsion",
        "nG != O on E37 for 1 <= n <= 12, G = (0, 0)",
        || {
            let e = models::e37();
            let g = ECPoint::Affine(rat_int(0), rat_int(0));
            if !e.on_curve(&g) {
                return Ok(Outcome::verdict(
                    "G on E37",
                    "G not on E37".to_string(),
                    false,
                ));
            }
            let order = e.point_order(&g, 12).map_err(|e| e.to_string())?;
            Ok::<_, String>(Outcome::verdict(
                "no n <= 12 with nG = O",
                match order {
                    None => "no n <= 12 with nG = O".to_string(),
                    Some(n) => format!("{n}G = O"),
                },
                order.is_none(),
            ))
        },
    );

    run_check(
        &mut checks,
        config,
        "table-points",
        "every reference (D, P) row reproduced for k <= 15; k = 3 skipped",
        || {
            let max_k = config.max_k();
            let records = generate_table(max_k, None).map_err(|e| e.to_string())?;
            Ok::<_, String>(table_points_outcome(&records, max_k))
        },
    );

    run_check_optional(
        &mut checks,
        config,
        "table-curves",
        "j of each printed curve matches the j-map at that row's point",
        || match &config.jmap {
            None => Ok::<_, String>(None),
            Some(map) => Ok(Some(match map.validate() {
                Ok(()) => Outcome::verdict(
                    "all reference rows validate",
                    "all reference rows validate",
                    true,
                ),
                Err(e) => Outcome::verdict(
                    "all reference rows validate",
                    e.to_string(),
                    false,
                ),
            })),
        },
    );

    Report {
        suite: "x0_37".to_string(),
        rng_seed: config.rng_seed,
        checks,
    }
}

/// Symbolic check that the printed quotient map lands on E37: with
/// X = (-x^2 + x - 1)/x^2 and Y = (-x^3 + y)/x^3, the numerator of
/// Y^2 + Y - X^3 + X must equal the working-model relation y^2 - x^3 y - g.
/// Polynomials in y of degree <= 2 are handled as coefficient triples.
pub(crate) fn map_identity_outcome(g: &UniPoly<Rat>) -> Outcome {
    let zero = rat_int(0);
    let x3 = UniPoly::from_i64(&zero, &[0, 0, 0, 1]);
    let x4 = UniPoly::from_i64(&zero, &[0, 0, 0, 0, 1]);
    let x6 = x3.mul(&x3);
    let px = UniPoly::from_i64(&zero, &[-1, 1, -1]); // -x^2 + x - 1
    // x^6 (Y^2 + Y) with Y = (y - x^3)/x^3 is (y - x^3)^2 + x^3 (y - x^3);
    // expanded in powers of y as [y^0, y^1, y^2]:
    let y_part: [UniPoly<Rat>; 3] = [
        x6.sub(&x6),                               // x^6 - x^6
        x3.scale(&rat_int(-2)).add(&x3),           // -2x^3 + x^3
        UniPoly::one_for(&zero),
    ];
    // x^6 (X^3 - X) = px^3 - px * x^4, pure in x
    let x_part = px.mul(&px).mul(&px).sub(&px.mul(&x4));
    let numerator: [UniPoly<Rat>; 3] = [
        y_part[0].sub(&x_part),
        y_part[1].clone(),
        y_part[2].clone(),
    ];
    let relation: [UniPoly<Rat>; 3] = [
        g.neg(),
        x3.neg(),
        UniPoly::one_for(&zero),
    ];
    let pass = numerator == relation;
    Outcome::verdict(
        format!("y^2 - x^3*y - ({g})"),
        format!(
            "({})*y^2 + ({})*y + ({})",
            numerator[2], numerator[1], numerator[0]
        ),
        pass,
    )
}

/// The four representatives of a quadratic point modulo Galois conjugation
/// and the hyperelliptic involution y -> x^3 - y of the working model.
fn variants(x: &QuadExt<Rat>, y: &QuadExt<Rat>) -> Vec<(QuadExt<Rat>, QuadExt<Rat>)> {
    let x3 = x.mul(x).mul(x);
    let flipped = x3.sub(y);
    vec![
        (x.clone(), y.clone()),
        (x.clone(), flipped.clone()),
        (x.conj(), y.conj()),
        (x.conj(), flipped.conj()),
    ]
}

fn table_points_outcome(records: &[QuadPointRecord], max_k: i64) -> Outcome {
    let rows = models::table1();
    let mut matched: Vec<Option<i64>> = vec![None; rows.len()];
    for record in records {
        for (i, row) in rows.iter().enumerate() {
            if matched[i].is_some() || !row_matches(record, row) {
                continue;
            }
            matched[i] = Some(record.k);
        }
    }
    let k3_skipped = max_k < 3 || records.iter().all(|r| r.k != 3);
    let all = matched.iter().all(|m| m.is_some()) && k3_skipped;
    let detail: Vec<String> = matched
        .iter()
        .zip(&rows)
        .map(|(m, row)| match m {
            Some(k) => format!("D={} <- k={}", row.d, k),
            None => format!("D={} unmatched", row.d),
        })
        .collect();
    Outcome::verdict(
        "all 13 rows matched, k = 3 skipped",
        format!(
            "{}; k=3 {}",
            detail.join(", "),
            if k3_skipped { "skipped" } else { "present" }
        ),
        all,
    )
}

fn row_matches(record: &QuadPointRecord, row: &TableRow) -> bool {
    use num_bigint::BigInt;
    if record.d != BigInt::from(row.d) {
        return false;
    }
    let d = rat_int(row.d);
    let rx = QuadExt {
        s: d.clone(),
        u: row.x.0.clone(),
        v: row.x.1.clone(),
    };
    let ry = QuadExt {
        s: d,
        u: row.y.0.clone(),
        v: row.y.1.clone(),
    };
    variants(&record.x, &record.y).contains(&(rx, ry))
}
