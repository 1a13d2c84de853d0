//! Brute-force divisor-class oracle over F₃ for the reduction of the sextic
//! model y² = x⁶ + 4x⁵ + 6x⁴ + 2x³ + x² + 2x + 1.
//!
//! The oracle never calls the library's Jacobian addition. It enumerates the
//! closed points (places) of the curve over F₃, builds the lattice of
//! principal divisors generated by div(π(x)) for monic irreducible π of
//! degree ≤ 6 and div(y − v(x)) for every v of degree ≤ 3, and decides class
//! equality by integer lattice membership (Hermite normal form). Degree-2
//! effective divisors then enumerate the whole group: two distinct ones are
//! equivalent only when both are x-fibers (the canonical class), so the
//! class count cross-checks L(1), and every `jac_add` result is verified to
//! land in the correct class.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use modcurve::arith::factor::factor_fp;
use modcurve::arith::finite::is_irreducible;
use modcurve::arith::{Field, FiniteField, Fp};
use modcurve::genus2::{jacobian_order, HyperCurve, MumfordClass};
use modcurve::poly::UniPoly;

const P: u64 = 3;

fn fp(v: i64) -> Fp {
    Fp::new(P, v)
}

fn model_f() -> UniPoly<Fp> {
    UniPoly::from_i64(&fp(0), &[1, 2, 1, 2, 6, 4, 1])
}

/// A closed point of the curve. `y = None` marks an inert place (y lives in
/// the quadratic extension of F_p[x]/π), which doubles the place degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Place {
    Fin { pi: Vec<u64>, y: Option<Vec<u64>> },
    InfPlus,
    InfMinus,
}

impl Place {
    fn degree(&self) -> usize {
        match self {
            Place::Fin { pi, y } => {
                let d = pi.len() - 1;
                if y.is_some() {
                    d
                } else {
                    2 * d
                }
            }
            _ => 1,
        }
    }
}

fn poly_key(p: &UniPoly<Fp>) -> Vec<u64> {
    p.coeffs().iter().map(|c| c.v).collect()
}

/// All monic irreducible polynomials of the given degree over F_3.
fn monic_irreducibles(deg: usize) -> Vec<UniPoly<Fp>> {
    let mut out = Vec::new();
    let total = P.pow(deg as u32);
    for code in 0..total {
        let mut digits = Vec::with_capacity(deg + 1);
        let mut c = code;
        for _ in 0..deg {
            digits.push(fp((c % P) as i64));
            c /= P;
        }
        digits.push(fp(1));
        let poly = UniPoly::from_coeffs(digits);
        if is_irreducible(&poly, P).unwrap() {
            out.push(poly);
        }
    }
    out
}

fn eval_in(field: &Arc<FiniteField>, g: &UniPoly<Fp>) -> modcurve::arith::FqElem {
    g.evaluate_mapped(&field.gen(), |c| field.from_i64(c.v as i64))
}

struct PlaceTable {
    /// π (as key) -> classification of the fiber of x over that closed point.
    fibers: BTreeMap<Vec<u64>, Vec<Place>>,
    index: BTreeMap<Place, usize>,
}

fn build_places(f: &UniPoly<Fp>) -> PlaceTable {
    let mut fibers = BTreeMap::new();
    let mut index = BTreeMap::new();
    let register = |p: Place, index: &mut BTreeMap<Place, usize>| {
        let next = index.len();
        index.entry(p).or_insert(next);
    };
    register(Place::InfPlus, &mut index);
    register(Place::InfMinus, &mut index);
    for deg in 1..=6 {
        for pi in monic_irreducibles(deg) {
            let field = FiniteField::new(P, pi.clone()).unwrap();
            let fx = eval_in(&field, f);
            let key = poly_key(&pi);
            let places = if fx.is_zero() {
                vec![Place::Fin {
                    pi: key.clone(),
                    y: Some(vec![]),
                }]
            } else {
                match fx.sqrt().unwrap() {
                    Some(root) => {
                        let neg = root.neg();
                        vec![
                            Place::Fin {
                                pi: key.clone(),
                                y: Some(poly_key(&root.poly)),
                            },
                            Place::Fin {
                                pi: key.clone(),
                                y: Some(poly_key(&neg.poly)),
                            },
                        ]
                    }
                    None => vec![Place::Fin {
                        pi: key.clone(),
                        y: None,
                    }],
                }
            };
            for p in &places {
                register(p.clone(), &mut index);
            }
            fibers.insert(key, places);
        }
    }
    PlaceTable { fibers, index }
}

type DivVec = Vec<BigInt>;

fn zero_vec(n: usize) -> DivVec {
    vec![BigInt::zero(); n]
}

fn check_degree_zero(table: &PlaceTable, v: &DivVec) {
    let mut total = BigInt::zero();
    for (place, &i) in &table.index {
        total += &v[i] * BigInt::from(place.degree());
    }
    assert!(total.is_zero(), "principal divisor must have degree 0");
}

/// div(π(x)) = fiber places − deg(π)·(∞₊ + ∞₋).
fn divisor_of_pi(table: &PlaceTable, pi: &UniPoly<Fp>) -> DivVec {
    let n = table.index.len();
    let mut v = zero_vec(n);
    let key = poly_key(pi);
    let deg = pi.deg().unwrap();
    for place in &table.fibers[&key] {
        let w = match place {
            Place::Fin { y: Some(yy), .. } if yy.is_empty() => 2,
            _ => 1,
        };
        v[table.index[place]] += w;
    }
    v[table.index[&Place::InfPlus]] -= deg as i64;
    v[table.index[&Place::InfMinus]] -= deg as i64;
    check_degree_zero(table, &v);
    v
}

/// div(y − v(x)): affine places from the factorization of f − v², plus the
/// exact orders at ∞₊ and ∞₋ read off against the branch cubics ±V₊.
fn divisor_of_y_minus_v(
    table: &PlaceTable,
    f: &UniPoly<Fp>,
    v_plus: &UniPoly<Fp>,
    v: &UniPoly<Fp>,
) -> DivVec {
    let n = table.index.len();
    let mut out = zero_vec(n);
    let w = f.sub(&v.mul(v));
    assert!(!w.is_zero(), "f is squarefree, never a perfect square");
    if w.deg_i() > 0 {
        for (pi, mult) in factor_fp(&w, 17).unwrap() {
            let field = FiniteField::new(P, pi.clone()).unwrap();
            let y_here = eval_in(&field, v);
            let place = if y_here.is_zero() && eval_in(&field, f).is_zero() {
                assert_eq!(mult, 1, "ramified contact is simple");
                Place::Fin {
                    pi: poly_key(&pi),
                    y: Some(vec![]),
                }
            } else {
                Place::Fin {
                    pi: poly_key(&pi),
                    y: Some(poly_key(&y_here.poly)),
                }
            };
            out[table.index[&place]] += mult as i64;
        }
    }
    let ord = |branch: &UniPoly<Fp>| -> i64 {
        let diff = branch.sub(v);
        if diff.is_zero() {
            3 - f.sub(&branch.mul(branch)).deg_i()
        } else {
            -diff.deg_i()
        }
    };
    out[table.index[&Place::InfPlus]] += ord(v_plus);
    out[table.index[&Place::InfMinus]] += ord(&v_plus.neg());
    check_degree_zero(table, &out);
    out
}

/// Row-style Hermite reduction: returns echelon rows tagged with their pivot
/// column, suitable for lattice-membership by successive reduction.
fn hnf(mut m: Vec<DivVec>, ncols: usize) -> Vec<(usize, DivVec)> {
    let mut r = 0usize;
    let mut basis = Vec::new();
    for col in 0..ncols {
        loop {
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if !m[i][col].is_zero()
                    && best.map_or(true, |b: usize| m[i][col].abs() < m[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut cleared = true;
            for i in r + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = &m[i][col] / &m[r][col];
                    if !q.is_zero() {
                        for c in 0..ncols {
                            let s = &q * &m[r][c];
                            m[i][c] -= s;
                        }
                    }
                    if !m[i][col].is_zero() {
                        cleared = false;
                    }
                }
            }
            if cleared {
                if m[r][col].is_negative() {
                    for c in 0..ncols {
                        m[r][c] = -m[r][c].clone();
                    }
                }
                basis.push((col, m[r].clone()));
                r += 1;
                break;
            }
        }
    }
    basis
}

fn in_lattice(basis: &[(usize, DivVec)], z: &DivVec) -> bool {
    let mut z = z.clone();
    for (col, row) in basis {
        if !z[*col].is_zero() {
            let q = &z[*col] / &row[*col];
            let rem = &z[*col] - &q * &row[*col];
            if !rem.is_zero() {
                return false;
            }
            for c in 0..z.len() {
                let s = &q * &row[c];
                z[c] -= s;
            }
        }
    }
    z.iter().all(|e| e.is_zero())
}

/// A degree-2 effective divisor together with its independent Mumford
/// conversion (None = recognized x-fiber, i.e. the identity class).
struct Deg2 {
    vec: DivVec,
    mumford: Option<MumfordClass<Fp>>,
}

fn affine_deg1(table: &PlaceTable) -> Vec<(Fp, Fp)> {
    let mut out = Vec::new();
    for (place, _) in &table.index {
        if let Place::Fin { pi, y: Some(yy) } = place {
            if pi.len() == 2 {
                // pi = x + pi[0], root c = -pi[0]
                let c = fp(-(pi[0] as i64));
                let yv = fp(*yy.first().unwrap_or(&0) as i64);
                out.push((c, yv));
            }
        }
    }
    out
}

fn place_of_affine(c: Fp, y: Fp) -> Place {
    Place::Fin {
        pi: vec![c.neg().v, 1],
        y: Some(if y.is_zero() { vec![] } else { vec![y.v] }),
    }
}

fn enumerate_deg2(table: &PlaceTable, f: &UniPoly<Fp>) -> Vec<Deg2> {
    let n = table.index.len();
    let mut out = Vec::new();
    // degree-1 places: affine points and the two infinite points
    #[derive(Clone, PartialEq)]
    enum D1 {
        Aff(Fp, Fp),
        Plus,
        Minus,
    }
    let mut d1 = vec![D1::Plus, D1::Minus];
    for (c, y) in affine_deg1(table) {
        d1.push(D1::Aff(c, y));
    }
    let place_of = |p: &D1| match p {
        D1::Aff(c, y) => place_of_affine(*c, *y),
        D1::Plus => Place::InfPlus,
        D1::Minus => Place::InfMinus,
    };
    let one = fp(1);
    for i in 0..d1.len() {
        for j in i..d1.len() {
            let mut v = zero_vec(n);
            v[table.index[&place_of(&d1[i])]] += 1;
            v[table.index[&place_of(&d1[j])]] += 1;
            let mumford = match (&d1[i], &d1[j]) {
                (D1::Plus, D1::Plus) => Some(MumfordClass {
                    a: UniPoly::one_for(&one),
                    b: UniPoly::zero(),
                    n_plus: 2,
                }),
                (D1::Minus, D1::Minus) => Some(MumfordClass {
                    a: UniPoly::one_for(&one),
                    b: UniPoly::zero(),
                    n_plus: 0,
                }),
                (D1::Plus, D1::Minus) | (D1::Minus, D1::Plus) => None,
                (D1::Aff(c, y), D1::Plus) | (D1::Plus, D1::Aff(c, y)) => Some(MumfordClass {
                    a: UniPoly::from_coeffs(vec![c.neg(), one]),
                    b: UniPoly::constant(*y),
                    n_plus: 1,
                }),
                (D1::Aff(c, y), D1::Minus) | (D1::Minus, D1::Aff(c, y)) => Some(MumfordClass {
                    a: UniPoly::from_coeffs(vec![c.neg(), one]),
                    b: UniPoly::constant(*y),
                    n_plus: 0,
                }),
                (D1::Aff(c1, y1), D1::Aff(c2, y2)) => {
                    if c1 == c2 {
                        if y1 != y2 || y1.is_zero() {
                            None // conjugate pair or doubled Weierstrass point
                        } else {
                            // doubled ordinary point: b = y + f'(c)/(2y)·(x−c)
                            let lin = UniPoly::from_coeffs(vec![c1.neg(), one]);
                            let a = lin.mul(&lin);
                            let s = f
                                .derivative()
                                .evaluate(c1)
                                .mul(&fp(2).mul(y1).inv().unwrap());
                            let b =
                                UniPoly::from_coeffs(vec![y1.sub(&s.mul(c1)), s]);
                            Some(MumfordClass { a, b, n_plus: 0 })
                        }
                    } else {
                        let a = UniPoly::from_coeffs(vec![c1.neg(), one])
                            .mul(&UniPoly::from_coeffs(vec![c2.neg(), one]));
                        let slope = y2.sub(y1).mul(&c2.sub(c1).inv().unwrap());
                        let b = UniPoly::from_coeffs(vec![y1.sub(&slope.mul(c1)), slope]);
                        Some(MumfordClass { a, b, n_plus: 0 })
                    }
                }
            };
            out.push(Deg2 { vec: v, mumford });
        }
    }
    // single places of degree 2
    for (place, &idx) in &table.index {
        if place.degree() != 2 {
            continue;
        }
        let mut v = zero_vec(n);
        v[idx] += 1;
        let mumford = match place {
            Place::Fin { pi, y: Some(yy) } => {
                assert_eq!(pi.len(), 3);
                let a = UniPoly::from_coeffs(pi.iter().map(|&c| fp(c as i64)).collect());
                let b = UniPoly::from_coeffs(yy.iter().map(|&c| fp(c as i64)).collect());
                Some(MumfordClass { a, b, n_plus: 0 })
            }
            // inert over a linear π: the full fiber of x, hence the identity
            Place::Fin { y: None, .. } => None,
            _ => unreachable!(),
        };
        out.push(Deg2 { vec: v, mumford });
    }
    for d in &out {
        if let Some(m) = &d.mumford {
            // b² ≡ f mod a is the defining property of the conversion
            if m.a.deg_i() > 0 {
                let r = m.b.mul(&m.b).sub(f).rem(&m.a).unwrap();
                assert!(r.is_zero(), "invalid Mumford conversion");
            }
        }
    }
    out
}

fn curve_over(ctx: &Arc<FiniteField>) -> HyperCurve<modcurve::arith::FqElem> {
    HyperCurve::new(model_f().map_coeffs(|c| ctx.from_i64(c.v as i64))).unwrap()
}

/// Full oracle run: build the place table and relation lattice, enumerate
/// all degree-2 divisor classes, and compare every `jac_add` result against
/// lattice membership. Panics on any disagreement.
pub fn verify_cantor_against_lattice() {
    let f = model_f();
    let curve = HyperCurve::new(f.clone()).unwrap();
    let v_plus = curve.v_plus().unwrap();
    let table = build_places(&f);
    let ncols = table.index.len();

    // relation lattice
    let mut rows = Vec::new();
    for deg in 1..=6 {
        for pi in monic_irreducibles(deg) {
            rows.push(divisor_of_pi(&table, &pi));
        }
    }
    let mut vcount = 0;
    for code in 0..P.pow(4) {
        let mut digits = Vec::new();
        let mut c = code;
        for _ in 0..4 {
            digits.push(fp((c % P) as i64));
            c /= P;
        }
        let v = UniPoly::from_coeffs(digits);
        rows.push(divisor_of_y_minus_v(&table, &f, &v_plus, &v));
        vcount += 1;
    }
    assert_eq!(vcount, 81);
    let basis = hnf(rows, ncols);

    // the expected group order from point counts
    let f3 = FiniteField::prime(P);
    let f9 = FiniteField::new(P, UniPoly::from_i64(&fp(0), &[1, 0, 1])).unwrap();
    let n1 = curve_over(&f3).curve_count(&f3);
    let n2 = curve_over(&f9).curve_count(&f9);
    let expected_order = jacobian_order(P, n1, n2, 1).unwrap();

    // degree-2 divisors: fibers collapse to the identity, everything else is
    // its own class
    let divisors = enumerate_deg2(&table, &f);
    let d_inf = {
        let mut v = zero_vec(ncols);
        v[table.index[&Place::InfPlus]] += 1;
        v[table.index[&Place::InfMinus]] += 1;
        v
    };
    let sub = |a: &DivVec, b: &DivVec| -> DivVec {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    let add = |a: &DivVec, b: &DivVec| -> DivVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    };

    let mut class_reps: Vec<&Deg2> = Vec::new();
    for d in &divisors {
        match &d.mumford {
            None => {
                // recognized fibers must be principal up to D∞
                assert!(
                    in_lattice(&basis, &sub(&d.vec, &d_inf)),
                    "fiber divisor not equivalent to infinity"
                );
            }
            Some(_) => {
                assert!(
                    !in_lattice(&basis, &sub(&d.vec, &d_inf)),
                    "non-fiber divisor equivalent to infinity"
                );
                class_reps.push(d);
            }
        }
    }
    // pairwise inequivalence of the non-fiber divisors
    for i in 0..class_reps.len() {
        for j in i + 1..class_reps.len() {
            assert!(
                !in_lattice(&basis, &sub(&class_reps[i].vec, &class_reps[j].vec)),
                "distinct non-special divisors must be inequivalent"
            );
        }
    }
    let order = BigInt::from(class_reps.len() + 1);
    assert_eq!(order, expected_order, "class count must equal L(1)");

    // index the canonical Mumford representatives
    let mut by_mumford: BTreeMap<MumfordClass<Fp>, usize> = BTreeMap::new();
    for (i, d) in class_reps.iter().enumerate() {
        let prev = by_mumford.insert(d.mumford.clone().unwrap(), i);
        assert!(prev.is_none(), "duplicate Mumford representative");
    }

    // every jac_add result lands in the class the lattice demands
    let identity = curve.jac_identity();
    let mut all: Vec<(DivVec, MumfordClass<Fp>)> = class_reps
        .iter()
        .map(|d| (d.vec.clone(), d.mumford.clone().unwrap()))
        .collect();
    all.push((d_inf.clone(), identity.clone()));
    for (vi, mi) in &all {
        for (vj, mj) in &all {
            let sum = curve.jac_add(mi, mj).unwrap();
            let v_sum = if sum == identity {
                d_inf.clone()
            } else {
                let idx = by_mumford
                    .get(&sum)
                    .unwrap_or_else(|| panic!("sum {sum:?} is not a known representative"));
                class_reps[*idx].vec.clone()
            };
            let z = sub(&sub(&add(vi, vj), &v_sum), &d_inf);
            assert!(
                in_lattice(&basis, &z),
                "jac_add disagrees with the lattice oracle"
            );
        }
    }
}
