//! Acceptance gate: one test per acceptance criterion, each printing a
//! single pass/fail line (visible with `--nocapture`). The two suite
//! reports are computed once and shared across criteria.
//!
//! Criterion 14 needs an external j-map data file; point the MODCURVE_JMAP
//! environment variable at one to activate it, otherwise it reports skip.

use std::sync::OnceLock;

use std::sync::Arc;

use modcurve::arith::{Field, FiniteField, Fp};
use modcurve::ellcurve::{ECPoint, WeierstrassCurve};
use modcurve::poly::UniPoly;
use modcurve::pipelines::{
    load_jmap, run_x0_37, run_x1_13, CheckStatus, Report, SuiteConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;


fn x13_report() -> &'static Report {
    static REPORT: OnceLock<Report> = OnceLock::new();
    REPORT.get_or_init(|| run_x1_13(&SuiteConfig::default()))
}

fn x37_report() -> &'static Report {
    static REPORT: OnceLock<Report> = OnceLock::new();
    REPORT.get_or_init(|| {
        let mut config = SuiteConfig::default();
        if let Some(path) = std::env::var_os("MODCURVE_JMAP") {
            config.jmap = Some(
                load_jmap(std::path::Path::new(&path))
                    .expect("MODCURVE_JMAP must point at a valid j-map file"),
            );
        }
        run_x0_37(&config)
    })
}

/// Assert that every named check in the report passed, printing the single
/// acceptance line for the criterion.
fn criterion(n: usize, title: &str, report: &Report, ids: &[&str]) {
    let mut failures = Vec::new();
    for id in ids {
        let c = report
            .checks
            .iter()
            .find(|c| c.check_id == *id)
            .unwrap_or_else(|| panic!("unknown check id {id}"));
        if c.status != CheckStatus::Pass {
            failures.push(format!(
                "{id}: {:?} (expected: {}; actual: {})",
                c.status, c.expected, c.actual
            ));
        }
    }
    let pass = failures.is_empty();
    println!(
        "acceptance {n:02} {title}: {}",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} failed:\n{}", failures.join("\n"));
}

#[test]
fn criterion_01_cusp_membership() {
    criterion(1, "cusp membership", x13_report(), &["cusps-on-model"]);
}

#[test]
fn criterion_02_even_model_x13() {
    criterion(
        2,
        "even-model derivation over the sextic field",
        x13_report(),
        &["involution", "d-pair", "even-model"],
    );
}

#[test]
fn criterion_03_even_model_x37() {
    criterion(3, "even-model derivation over Q", x37_report(), &["even-model"]);
}

#[test]
fn criterion_04_quotient_curve_structure() {
    criterion(
        4,
        "twisted quotient curve and its 19-torsion point",
        x13_report(),
        &["eprime-coefficients", "psi19-root", "point-order-19"],
    );
}

#[test]
fn criterion_05_prime_splitting() {
    criterion(5, "prime splitting of the minimal polynomial", x13_report(), &["prime-splitting"]);
}

#[test]
fn criterion_06_jacobian_orders() {
    criterion(6, "Jacobian orders from curve counts", x13_report(), &["jacobian-orders"]);
}

#[test]
fn criterion_07_cuspidal_subgroup() {
    criterion(
        7,
        "cuspidal subgroup order, exponent and Mumford degrees",
        x13_report(),
        &["cusp-closure", "closure-exponent", "mumford-deg-lt2"],
    );
}

#[test]
fn criterion_08_reduction_injectivity() {
    criterion(8, "reduction injectivity at both primes", x13_report(), &["reduction-injectivity"]);
}

#[test]
fn criterion_09_pullback_census() {
    criterion(9, "quadratic-point census over the quotient", x13_report(), &["pullback-census"]);
}

#[test]
fn criterion_10_discriminant_support() {
    criterion(10, "discriminant prime support", x13_report(), &["discriminant-support"]);
}

#[test]
fn criterion_11_quotient_map_identity() {
    criterion(
        11,
        "quotient-map identity and completed square",
        x37_report(),
        &["working-model", "map-identity"],
    );
}

#[test]
fn criterion_12_nontorsion_generator() {
    criterion(12, "non-torsion generator range", x37_report(), &["generator-nontorsion"]);
}

#[test]
fn criterion_13_table_points() {
    criterion(13, "quadratic-point table rows", x37_report(), &["table-points"]);
}

#[test]
fn criterion_14_table_curves() {
    let report = x37_report();
    let c = report
        .checks
        .iter()
        .find(|c| c.check_id == "table-curves")
        .expect("table-curves check present");
    match c.status {
        CheckStatus::Skip => {
            println!("acceptance 14 table curve j-invariants: skip (no j-map data file)");
        }
        CheckStatus::Pass => {
            println!("acceptance 14 table curve j-invariants: pass");
        }
        CheckStatus::Fail => {
            println!("acceptance 14 table curve j-invariants: FAIL");
            panic!("criterion 14 failed: expected {}; actual {}", c.expected, c.actual);
        }
    }
}

/// F_{p^2} with modulus t^2 - n for the smallest quadratic nonresidue n;
/// every f(x) with x in F_p has a square root here, so the n-torsion test
/// sees all roots of the division polynomial with x in F_p.
fn quadratic_extension(p: u64) -> Arc<FiniteField> {
    let nonresidue = (1..p)
        .find(|&n| !(0..p).any(|t| (t * t) % p == n))
        .expect("odd prime field has a nonresidue");
    let modulus = UniPoly::from_coeffs(vec![
        Fp::new(p, -(nonresidue as i64)),
        Fp::new(p, 0),
        Fp::new(p, 1),
    ]);
    FiniteField::new(p, modulus).expect("irreducible quadratic modulus")
}

/// Division-polynomial roots vs brute-force n-torsion over random small
/// prime fields, plus the full Cantor-vs-lattice oracle over F_3.
#[test]
fn criterion_15_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let primes = [11u64, 13, 17, 19, 23, 29, 31, 37, 41, 43];
    for n in [3usize, 5, 7] {
        for _ in 0..4 {
            let p = primes[rng.gen_range(0..primes.len())];
            // sample a nonsingular cubic y^2 = x^3 + a2 x^2 + a4 x + a6
            let e = loop {
                let coeff = |rng: &mut ChaCha8Rng| Fp::new(p, rng.gen_range(0..p) as i64);
                let (a2, a4, a6) = (coeff(&mut rng), coeff(&mut rng), coeff(&mut rng));
                if let Ok(e) = WeierstrassCurve::from_cubic(a2, a4, a6) {
                    break e;
                }
            };
            let psi = e.division_polynomial(n).expect("a1 = a3 = 0");
            let field = quadratic_extension(p);
            let lift = |c: &Fp| field.from_i64(c.v as i64);
            let e2 = WeierstrassCurve::from_cubic(lift(&e.a2), lift(&e.a4), lift(&e.a6))
                .expect("nonsingular over the extension");
            for xv in 0..p as i64 {
                let is_root = psi.evaluate(&Fp::new(p, xv)).is_zero();
                let pts = e2.lift_x(&field.from_i64(xv)).expect("odd characteristic");
                let has_n_torsion = !pts.is_empty()
                    && e2.scalar_mul(n as i64, &pts[0]).unwrap() == ECPoint::Infinity;
                assert_eq!(
                    is_root, has_n_torsion,
                    "division polynomial disagrees with brute torsion: p={p} n={n} x={xv}"
                );
            }
        }
    }
    genus2_oracle::verify_cantor_against_lattice();
    println!("acceptance 15 oracle equivalence: pass");
}
