//! Fixed model data for the two verification suites: the genus-2 models,
//! their involutions, the printed derived quantities they are checked
//! against, and the reference table of quadratic points.

use crate::arith::{rat, rat_int, Field, NFElement, Rat};
use crate::genus2::{CurvePoint, Genus2Error, HyperCurve};
use crate::poly::{MoebiusMap, UniPoly};

/// Parse an exact rational from `"p/q"` or `"p"` literals.
pub fn rq(s: &str) -> Rat {
    s.parse().expect("malformed rational literal")
}

fn k(nums: [i64; 6], den: i64) -> NFElement {
    NFElement::from_int_coeffs(nums, den)
}

fn ki(n: i64) -> NFElement {
    NFElement::from_int(n)
}

// ---------------------------------------------------------------------------
// X1(13) over K = Q(a), a = 2 cos(2*pi/13)
// ---------------------------------------------------------------------------

/// f(x) = x^6 + 4x^5 + 6x^4 + 2x^3 + x^2 + 2x + 1.
pub fn f13() -> UniPoly<NFElement> {
    UniPoly::from_i64(&ki(0), &[1, 2, 1, 2, 6, 4, 1])
}

pub fn x13_curve() -> Result<HyperCurve<NFElement>, Genus2Error> {
    HyperCurve::new(f13())
}

/// The elliptic involution x -> (x + b)/(cx - 1) with
/// b = -a^5 + 5a^3 - 6a, c = b - 1.
pub fn x13_involution() -> MoebiusMap<NFElement> {
    let b = k([0, -6, 0, 5, 0, -1], 1);
    let c = b.sub(&ki(1));
    MoebiusMap::from_b_c(b, c).expect("printed involution is nondegenerate")
}

/// The printed d-pair (unordered in comparisons).
pub fn x13_d_pair() -> (NFElement, NFElement) {
    (
        k([1, 0, -6, 3, 2, -1], 1),
        k([-5, 6, 8, -5, -2, 1], 1),
    )
}

/// Printed even-model coefficients (c6, c4, c2, c0).
pub fn x13_even_coeffs() -> (NFElement, NFElement, NFElement, NFElement) {
    (
        k([-11, -1, 164, -101, -48, 30], 208),
        k([69, 296, -9, -238, 0, 40], 208),
        k([-25, -77, 38, 99, 0, -18], 208),
        k([175, -218, -193, 240, 48, -52], 208),
    )
}

/// Printed coefficients (b, c, d) of E': y^2 = x^3 + bx^2 + cx + d.
pub fn x13_eprime_coeffs() -> (NFElement, NFElement, NFElement) {
    (
        k([69, 296, -9, -238, 0, 40], 208),
        k([-16, -73, -19, 38, 11, -1], 3328),
        k([252, 1092, -30, -939, -4, 180], 692224),
    )
}

/// x-coordinate of the printed order-19 point on E'.
pub fn x13_torsion_x() -> NFElement {
    k([181, 799, 36, -681, -36, 134], 208)
}

/// The 12 cusps: two points at infinity and ten affine points.
pub fn x13_cusps() -> Vec<CurvePoint<NFElement>> {
    let mut out = vec![CurvePoint::InfMinus, CurvePoint::InfPlus];
    let pairs: [(NFElement, NFElement); 5] = [
        (ki(0), ki(1)),
        (ki(-1), ki(1)),
        (
            k([-1, -3, 1, 4, 0, -1], 1),
            k([-5, -21, 19, 31, -6, -6], 1),
        ),
        (
            k([2, -3, -1, 1, 0, 0], 1),
            k([33, -26, -66, 43, 18, -11], 1),
        ),
        (
            k([0, 6, 0, -5, 0, 1], 1),
            k([12, 45, 5, -32, -4, 5], 1),
        ),
    ];
    for (x, y) in pairs {
        out.push(CurvePoint::Affine(x.clone(), y.clone()));
        out.push(CurvePoint::Affine(x, y.neg()));
    }
    out
}

// ---------------------------------------------------------------------------
// X0(37) over Q
// ---------------------------------------------------------------------------

/// f(x) = (1/4)x^6 + 2x^5 - 5x^4 + 7x^3 - 6x^2 + 3x - 1.
pub fn f37() -> UniPoly<Rat> {
    UniPoly::from_coeffs(vec![
        rat_int(-1),
        rat_int(3),
        rat_int(-6),
        rat_int(7),
        rat_int(-5),
        rat_int(2),
        rat(1, 4),
    ])
}

/// g(x) = 2x^5 - 5x^4 + 7x^3 - 6x^2 + 3x - 1, the right side of the
/// cross-term working model y^2 - x^3 y = g(x).
pub fn g37() -> UniPoly<Rat> {
    UniPoly::from_i64(&rat_int(0), &[-1, 3, -6, 7, -5, 2])
}

pub fn x37_curve() -> Result<HyperCurve<Rat>, Genus2Error> {
    HyperCurve::new(f37())
}

/// The working model y^2 - x^3 y = g(x).
pub fn x37_working_model() -> Result<HyperCurve<Rat>, Genus2Error> {
    let h = UniPoly::from_i64(&rat_int(0), &[0, 0, 0, -1]);
    HyperCurve::with_cross_term(g37(), h)
}

/// The involution x -> x/(x - 1).
pub fn x37_involution() -> MoebiusMap<Rat> {
    MoebiusMap::new(rat_int(1), rat_int(0), rat_int(1), rat_int(-1))
        .expect("printed involution is nondegenerate")
}

/// Printed even-model coefficients (-1/64)(1, 9, 11, -37) as (c6, c4, c2, c0).
pub fn x37_even_coeffs() -> (Rat, Rat, Rat, Rat) {
    (rat(-1, 64), rat(-9, 64), rat(-11, 64), rat(37, 64))
}

/// E37: y^2 + y = x^3 - x, the rank-1 quotient receiving the working model.
pub fn e37() -> crate::ellcurve::WeierstrassCurve<Rat> {
    crate::ellcurve::WeierstrassCurve::new(
        rat_int(0),
        rat_int(0),
        rat_int(1),
        rat_int(-1),
        rat_int(0),
    )
    .expect("E37 is nonsingular")
}

// ---------------------------------------------------------------------------
// Reference table of quadratic points on X0(37)
// ---------------------------------------------------------------------------

/// Right column of a reference table row: either printed curve coefficients
/// [A, B], one of the special j tags, or a row printing only a single value
/// (read as the j-invariant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableCurve {
    Coeffs {
        a: (Rat, Rat),
        b: (Rat, Rat),
    },
    JZero,
    J1728,
    JOnly((Rat, Rat)),
}

/// One reference row: the radicand D and the point P = [x, y] with
/// coordinates written as `u + v*sqrt(D)`.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub d: i64,
    pub x: (Rat, Rat),
    pub y: (Rat, Rat),
    pub curve: TableCurve,
}

fn row(d: i64, x: (&str, &str), y: (&str, &str), curve: TableCurve) -> TableRow {
    TableRow {
        d,
        x: (rq(x.0), rq(x.1)),
        y: (rq(y.0), rq(y.1)),
        curve,
    }
}

fn coeffs(a: (&str, &str), b: (&str, &str)) -> TableCurve {
    TableCurve::Coeffs {
        a: (rq(a.0), rq(a.1)),
        b: (rq(b.0), rq(b.1)),
    }
}

pub fn table1() -> Vec<TableRow> {
    vec![
        row(
            -3,
            ("1/2", "-1/2"),
            ("0", "0"),
            coeffs(("-3285/2", "315/2"), ("-24948", "3630")),
        ),
        row(
            -7,
            ("1/4", "-1/4"),
            ("0", "0"),
            coeffs(("6345/8", "-765/8"), ("-40635/8", "-30753/8")),
        ),
        row(
            -11,
            ("1/6", "-1/6"),
            ("-4/9", "1/9"),
            coeffs(("2848/3", "-640/3"), ("356048/27", "75040/27")),
        ),
        row(-1, ("2/5", "-4/5"), ("-11/25", "2/25"), TableCurve::J1728),
        row(-3, ("1/14", "-3/14"), ("20/49", "-18/49"), TableCurve::JZero),
        row(
            -7,
            ("9/8", "-3/8"),
            ("9/16", "5/16"),
            coeffs(
                ("-207315/32", "34425/32"),
                ("-11925711/64", "3224205/64"),
            ),
        ),
        row(
            -159,
            ("25/92", "-5/92"),
            ("-1695/8464", "63/8464"),
            TableCurve::JOnly((
                rq("394997768625969/274877906944"),
                rq("1992776643585/274877906944"),
            )),
        ),
        row(
            -67,
            ("49/58", "-7/58"),
            ("-1995/841", "-150/841"),
            coeffs(
                ("-16964640/841", "126720/841"),
                ("26856906048/24389", "-301386960/24389"),
            ),
        ),
        row(
            -173,
            ("8/177", "-4/177"),
            ("-36050/93987", "5635/93987"),
            coeffs(
                ("214423015/93987", "-2366000/93987"),
                ("1346165714530/149721291", "473705169712/149721291"),
            ),
        ),
        row(
            -2051,
            ("529/1290", "-23/1290"),
            ("-452732/2080125", "1624/2080125"),
            coeffs(
                ("-6547514791/6933750", "-269113/6933750"),
                (
                    "-383038176258584/33542015625",
                    "-3221900558162/33542015625",
                ),
            ),
        ),
        row(
            -7951,
            ("841/4396", "-29/4396"),
            ("3837251/16909214", "-31211/16909214"),
            coeffs(
                ("825198488937/473457992", "2989314135/473457992"),
                (
                    "46768183795198699/3642312332456",
                    "-1023161515376435/3642312332456",
                ),
            ),
        ),
        row(
            4521,
            ("-3481/520", "-59/520"),
            ("-167683133/540800", "-2495247/540800"),
            coeffs(
                ("-1272066914239/10816000", "-12322582501/10816000"),
                (
                    "1250157035949620211/5061888000",
                    "20998975870933249/5061888000",
                ),
            ),
        ),
        row(
            -124027,
            ("16641/70334", "-129/70334"),
            ("-9806545170/28444511447", "15848993/28444511447"),
            coeffs(
                (
                    "792633701552976/2081621064985",
                    "-3683948697936/2081621064985",
                ),
                (
                    "625337457592756853499120/92603525510294281175",
                    "339400774163819886912/92603525510294281175",
                ),
            ),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    #[test]
    fn cusps_lie_on_the_model() {
        let c = x13_curve().unwrap();
        let cusps = x13_cusps();
        assert_eq!(cusps.len(), 12);
        for p in &cusps {
            assert!(c.on_curve(p), "cusp {p:?} off the model");
        }
    }

    #[test]
    fn working_model_is_the_completed_square() {
        // f37 = g + x^6/4
        let x6 = UniPoly::from_i64(&rat_int(0), &[0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(g37().add(&x6.scale(&rat(1, 4))), f37());
        x37_working_model().unwrap();
    }

    #[test]
    fn table_points_satisfy_the_working_model() {
        use crate::arith::QuadExt;
        let wm = x37_working_model().unwrap();
        for r in table1() {
            let d = rat_int(r.d);
            let x = QuadExt::new(r.x.0.clone(), r.x.1.clone(), d.clone()).unwrap();
            let y = QuadExt::new(r.y.0.clone(), r.y.1.clone(), d).unwrap();
            let lift = |c: &Rat| QuadExt::from_base(c.clone(), x.s.clone());
            let gx = wm.f.evaluate_mapped(&x, lift);
            let hx = wm.h.evaluate_mapped(&x, lift);
            assert_eq!(
                y.mul(&y).add(&hx.mul(&y)),
                gx,
                "table row D = {} off the working model",
                r.d
            );
        }
    }

    #[test]
    fn involutions_preserve_branch_loci() {
        use crate::poly::moebius::{moebius_transform_sextic, proportionality_scalar};
        let m13 = x13_involution();
        assert!(m13.is_involution());
        let t = moebius_transform_sextic(&f13(), &m13).unwrap();
        assert!(proportionality_scalar(&f13(), &t).is_some());
        let m37 = x37_involution();
        assert!(m37.is_involution());
        let t = moebius_transform_sextic(&f37(), &m37).unwrap();
        assert!(proportionality_scalar(&f37(), &t).is_some());
    }
}
