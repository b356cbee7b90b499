use super::*;
use crate::scalar::Field;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> Field {
    Field::Rationals
}

fn primal(f: Field, c: &[i64]) -> BinaryForm {
    BinaryForm::from_i64(f, VarTag::Primal, c)
}

fn dual(f: Field, c: &[i64]) -> BinaryForm {
    BinaryForm::from_i64(f, VarTag::Dual, c)
}

fn lin(f: Field, a: i64, b: i64) -> LinearForm {
    LinearForm::from_i64(f, a, b).unwrap()
}

fn random_form(field: Field, rng: &mut ChaCha8Rng, tag: VarTag, d: usize, h: u64) -> BinaryForm {
    BinaryForm::new(field, tag, (0..=d).map(|_| field.random(rng, h)).collect())
}

fn random_linear(field: Field, rng: &mut ChaCha8Rng, h: u64) -> LinearForm {
    loop {
        if let Ok(l) = LinearForm::new(field.random(rng, h), field.random(rng, h)) {
            return l;
        }
    }
}

#[test]
fn power_of_linear_examples() {
    let f = q();
    assert_eq!(power_of_linear(&lin(f, 1, 1), 2, VarTag::Primal), primal(f, &[1, 2, 1]));
    assert_eq!(power_of_linear(&lin(f, 1, 0), 4, VarTag::Primal), primal(f, &[1, 0, 0, 0, 0]));
    assert_eq!(power_of_linear(&lin(f, 2, -1), 3, VarTag::Primal), primal(f, &[8, -12, 6, -1]));
}

#[test]
fn apolar_action_examples() {
    let f = q();
    let u = dual(f, &[1, 0]);
    assert_eq!(apolar_action(&u, &primal(f, &[1, 0, 0])).unwrap(), primal(f, &[2, 0]));
    let g = dual(f, &[1, 0, 1]);
    let x2y2 = primal(f, &[0, 0, 1, 0, 0]);
    assert_eq!(apolar_action(&g, &x2y2).unwrap(), primal(f, &[2, 0, 2]));
    let err = apolar_action(&dual(f, &[1, 0, 0, 0]), &primal(f, &[1, 0])).unwrap_err();
    assert_eq!(err.kind(), "degree");
    assert!(apolar_action(&primal(f, &[1, 0]), &primal(f, &[1, 0])).is_err());
}

#[test]
fn chain_rule_identity_on_powers() {
    // g(∂) (a x + b y)^d = d!/(d-e)! g(a, b) (a x + b y)^(d-e)
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for field in [q(), Field::prime(101).unwrap()] {
        for _ in 0..100 {
            let d = rng.gen_range(1..=9);
            let e = rng.gen_range(0..=d);
            let g = random_form(field, &mut rng, VarTag::Dual, e, 20);
            let l = random_linear(field, &mut rng, 20);
            let lhs = apolar_action(&g, &power_of_linear(&l, d, VarTag::Primal)).unwrap();
            let rhs = power_of_linear(&l, d - e, VarTag::Primal)
                .scale(&(field.falling(d, e) * g.eval(&l.a, &l.b)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn apolar_action_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let d = rng.gen_range(2..=10);
        let e1 = rng.gen_range(0..=d / 2);
        let e2 = rng.gen_range(0..=d - e1);
        let g1 = random_form(q(), &mut rng, VarTag::Dual, e1, 9);
        let g2 = random_form(q(), &mut rng, VarTag::Dual, e2, 9);
        let f = random_form(q(), &mut rng, VarTag::Primal, d, 9);
        let lhs = apolar_action(&g1.mul(&g2), &f).unwrap();
        let rhs = apolar_action(&g1, &apolar_action(&g2, &f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn gcd_examples() {
    let f = q();
    // x^2 y, x y^2
    assert_eq!(gcd(&primal(f, &[0, 1, 0, 0]), &primal(f, &[0, 0, 1, 0])).unwrap(), primal(f, &[0, 1, 0]));
    assert_eq!(gcd(&primal(f, &[1, 1]), &primal(f, &[1, -1])).unwrap(), primal(f, &[1]));
    let f5 = Field::prime(5).unwrap();
    // x^2 + y^2 = (x + 2y)(x + 3y) over F_5
    assert_eq!(primal(f5, &[1, 2]).mul(&primal(f5, &[1, 3])), primal(f5, &[1, 0, 1]));
    assert_eq!(gcd(&primal(f5, &[1, 0, 1]), &primal(f5, &[1, 2])).unwrap(), primal(f5, &[1, 2]));
    // pure powers of y
    assert_eq!(gcd(&primal(f, &[0, 0, 3]), &primal(f, &[0, 0, 0, 5])).unwrap(), primal(f, &[0, 0, 1]));
    let z = BinaryForm::zero(f, VarTag::Primal, 3);
    assert_eq!(gcd(&z, &z).unwrap_err().kind(), "constraint");
    assert_eq!(gcd(&z, &primal(f, &[2, 4])).unwrap(), primal(f, &[1, 2]));
}

#[test]
fn squarefree_profile_examples() {
    let f = q();
    // x^2 y (x + y)
    let g = primal(f, &[1, 0, 0]).mul(&primal(f, &[0, 1])).mul(&primal(f, &[1, 1]));
    assert_eq!(squarefree_profile(&g).unwrap().entries, vec![(2, 1), (1, 2)]);
    assert_eq!(squarefree_profile(&primal(f, &[1, 0, -1])).unwrap().entries, vec![(1, 2)]);
    assert_eq!(squarefree_profile(&primal(f, &[1, 0, 0, 0])).unwrap().entries, vec![(3, 1)]);
    // y^2 (x - y)^2: both roots of multiplicity 2, one at infinity
    let h = primal(f, &[0, 0, 1]).mul(&primal(f, &[1, -2, 1]));
    assert_eq!(squarefree_profile(&h).unwrap().entries, vec![(2, 2)]);
    assert!(is_squarefree(&primal(f, &[0, 1, 1, 0])).unwrap());
    assert!(!is_squarefree(&primal(f, &[0, 1, 0, 0])).unwrap());
    assert_eq!(
        squarefree_profile(&BinaryForm::zero(f, VarTag::Primal, 2)).unwrap_err().kind(),
        "constraint"
    );
    let f3 = Field::prime(3).unwrap();
    assert_eq!(squarefree_profile(&primal(f3, &[1, 0, 0, 1])).unwrap_err().kind(), "field");
}

#[test]
fn l_squared_times_h_is_not_squarefree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let l = random_linear(q(), &mut rng, 30).to_form(q(), VarTag::Dual);
        let deg = rng.gen_range(0..5);
        let h = random_form(q(), &mut rng, VarTag::Dual, deg, 30);
        if h.is_zero() {
            continue;
        }
        assert!(!is_squarefree(&l.mul(&l).mul(&h)).unwrap());
    }
}

#[test]
fn resultant_examples() {
    let f = q();
    let xy = primal(f, &[0, 1, 0]);
    // x y and x^2 - y^2 have no common root; x y and x^2 - x y share x = 0
    assert!(!resultant(&xy, &primal(f, &[1, 0, -1])).unwrap().is_zero());
    assert!(resultant(&xy, &primal(f, &[1, -1, 0])).unwrap().is_zero());
    assert_eq!(resultant(&primal(f, &[1, 0]), &primal(f, &[0, 1])).unwrap(), f.one());
    // (x - y)(x - 2y) against x - 3y: product over roots gives (1-3)(2-3) = 2
    let a = primal(f, &[1, -1]).mul(&primal(f, &[1, -2]));
    let r = resultant(&a, &primal(f, &[1, -3])).unwrap();
    assert!(r == f.from_i64(2) || r == f.from_i64(-2), "{r}");
    assert_eq!(resultant(&BinaryForm::zero(f, VarTag::Primal, 2), &xy).unwrap_err().kind(), "constraint");
}

#[test]
fn discriminant_examples() {
    let f = q();
    assert_eq!(discriminant(&dual(f, &[1, 0, -1])).unwrap(), f.from_i64(4));
    assert!(discriminant(&dual(f, &[1, 0, 0])).unwrap().is_zero());
    assert_eq!(discriminant(&dual(f, &[0, 1, 0])).unwrap(), f.one());
    assert_eq!(discriminant(&dual(f, &[1, 0])).unwrap_err().kind(), "degree");
    for (p, qq) in [(1i64, 1i64), (-3, 2), (2, -5), (0, 7), (-7, 0), (4, 9)] {
        let cubic = dual(f, &[1, 0, p, qq]);
        let expected = f.from_i64(-4 * p * p * p - 27 * qq * qq);
        assert_eq!(discriminant(&cubic).unwrap(), expected, "p={p} q={qq}");
    }
}

#[test]
fn discriminant_charts_agree() {
    // b^2 - 4ac on random quadratics, including ones with a = 0 or c = 0
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for field in [q(), Field::prime(10007).unwrap()] {
        for _ in 0..100 {
            let mut c: Vec<Scalar> = (0..3).map(|_| field.random(&mut rng, 9)).collect();
            if rng.gen_bool(0.3) {
                c[0] = field.zero();
            }
            if rng.gen_bool(0.3) {
                c[2] = field.zero();
            }
            let expected = &c[1] * &c[1] - field.from_i64(4) * &c[0] * &c[2];
            let form = BinaryForm::new(field, VarTag::Dual, c);
            assert_eq!(discriminant(&form).unwrap(), expected);
        }
        // a unimodular change of variables leaves the discriminant unchanged
        for _ in 0..30 {
            let d = rng.gen_range(2..7);
            let g = random_form(field, &mut rng, VarTag::Primal, d, 9);
            let t = field.random(&mut rng, 9);
            let (one, zero) = (field.one(), field.zero());
            let sheared = g.substitute(&one, &t, &zero, &one);
            assert_eq!(discriminant(&g).unwrap(), discriminant(&sheared).unwrap());
            // x y h(x, y) forces the sheared chart
            let xy = primal(field, &[0, 1, 0]);
            let prod = xy.mul(&g);
            let prod_shifted = prod.substitute(&one, &zero, &t, &one);
            assert_eq!(discriminant(&prod).unwrap(), discriminant(&prod_shifted).unwrap());
        }
    }
}

#[test]
fn roots_examples() {
    let f = q();
    let r = roots_in_field(&primal(f, &[1, 0, -1])).unwrap();
    assert!(r.split);
    let pts: Vec<String> = r.roots.iter().map(|(p, m)| format!("{p}^{m}")).collect();
    assert_eq!(pts, ["(-1:1)^1", "(1:1)^1"]);
    let r = roots_in_field(&primal(f, &[1, 0, 1])).unwrap();
    assert!(!r.split && r.roots.is_empty());
    let f5 = Field::prime(5).unwrap();
    let r = roots_in_field(&primal(f5, &[1, 0, 1])).unwrap();
    assert!(r.split);
    let pts: Vec<String> = r.roots.iter().map(|(p, _)| p.to_string()).collect();
    assert_eq!(pts, ["(2:1)", "(3:1)"]);
    // y^2 (3x - 2y)^3 (x^2 + y^2)
    let g = primal(f, &[0, 0, 1])
        .mul(&primal(f, &[3, -2]).pow(3))
        .mul(&primal(f, &[1, 0, 1]));
    let r = roots_in_field(&g).unwrap();
    assert!(!r.split);
    let pts: Vec<String> = r.roots.iter().map(|(p, m)| format!("{p}^{m}")).collect();
    assert_eq!(pts, ["(1:0)^2", "(2/3:1)^3"]);
    let big = Field::prime(1_000_003).unwrap();
    assert_eq!(roots_in_field(&primal(big, &[1, 1])).unwrap_err().kind(), "field");
}

/// Brute-force oracle for F_p: test every point of the projective line.
fn scan_oracle(f: &BinaryForm) -> Vec<(u64, u64)> {
    let Field::Prime(p) = f.field() else { unreachable!() };
    let field = f.field();
    let mut pts = Vec::new();
    if f.eval(&field.one(), &field.zero()).is_zero() {
        pts.push((1, 0));
    }
    for s in 0..p {
        if f.eval(&field.from_u64(s), &field.one()).is_zero() {
            pts.push((s, 1));
        }
    }
    pts
}

#[test]
fn roots_match_scan_oracle_and_rational_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let f11 = Field::prime(11).unwrap();
    for _ in 0..100 {
        let deg = rng.gen_range(1..6);
        let g = random_form(f11, &mut rng, VarTag::Primal, deg, 10);
        if g.is_zero() {
            continue;
        }
        let found: Vec<(u64, u64)> = roots_in_field(&g)
            .unwrap()
            .roots
            .iter()
            .map(|(p, _)| (p.s.residue().unwrap(), p.t.residue().unwrap()))
            .collect();
        let mut want = scan_oracle(&g);
        let mut got = found.clone();
        want.sort();
        got.sort();
        assert_eq!(got, want);
    }
    // products of rational linear forms split with the right multiplicities
    for _ in 0..40 {
        let n = rng.gen_range(1..4);
        let mut prod = primal(q(), &[rng.gen_range(1..5)]);
        let mut total = 0;
        let mut factors = Vec::new();
        for _ in 0..n {
            let a = rng.gen_range(-40i64..40);
            let b = rng.gen_range(1i64..40);
            let m = rng.gen_range(1..3);
            if factors.iter().any(|&(a2, b2)| a * b2 == a2 * b) {
                continue;
            }
            factors.push((a, b));
            prod = prod.mul(&primal(q(), &[b, -a]).pow(m));
            total += m;
        }
        let r = roots_in_field(&prod).unwrap();
        assert!(r.split);
        assert_eq!(r.roots.iter().map(|(_, m)| m).sum::<usize>(), total);
        for (p, _) in &r.roots {
            assert!(prod.eval(&p.s, &p.t).is_zero());
        }
    }
}

#[test]
fn discriminant_detects_repeated_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for i in 0..200 {
        let field = if i % 2 == 0 { q() } else { Field::prime(10007).unwrap() };
        let d = rng.gen_range(2..8);
        let form = if i % 3 == 0 {
            let l = random_linear(field, &mut rng, 9).to_form(field, VarTag::Primal);
            let h = random_form(field, &mut rng, VarTag::Primal, d - 2, 9);
            if h.is_zero() {
                continue;
            }
            l.mul(&l).mul(&h)
        } else {
            random_form(field, &mut rng, VarTag::Primal, d, 3)
        };
        if form.is_zero() {
            continue;
        }
        let profile = squarefree_profile(&form).unwrap();
        assert_eq!(profile.total_degree(), form.degree());
        let disc_zero = discriminant(&form).unwrap().is_zero();
        // a zero leading and trailing pair still counts as a double root only
        // when the profile says so
        assert_eq!(disc_zero, !profile.is_squarefree(), "{form}");
    }
}

#[test]
fn resultant_detects_common_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(4321);
    for i in 0..200 {
        let field = if i % 2 == 0 { q() } else { Field::prime(101).unwrap() };
        let (df, dg) = (rng.gen_range(1..5), rng.gen_range(1..5));
        let mut f = random_form(field, &mut rng, VarTag::Primal, df, 3);
        let mut g = random_form(field, &mut rng, VarTag::Primal, dg, 3);
        if i % 3 == 0 {
            let c = random_linear(field, &mut rng, 5).to_form(field, VarTag::Primal);
            f = f.mul(&c);
            g = g.mul(&c);
        }
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let res_zero = resultant(&f, &g).unwrap().is_zero();
        assert_eq!(res_zero, gcd(&f, &g).unwrap().degree() > 0, "{f} / {g}");
    }
}

#[test]
fn display_examples() {
    let f = q();
    assert_eq!(primal(f, &[3, -2, 1]).to_string(), "3*x^2 - 2*x*y + y^2");
    assert_eq!(dual(f, &[0, -1, 0]).to_string(), "-u*v");
    assert_eq!(BinaryForm::zero(f, VarTag::Primal, 3).to_string(), "0*x^3");
    assert_eq!(primal(f, &[5]).to_string(), "5");
}

proptest! {
    #[test]
    fn display_reparses(seed in any::<u64>(), d in 0usize..8, dual_tag in any::<bool>(), prime in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = if prime { Field::prime(13).unwrap() } else { q() };
        let tag = if dual_tag { VarTag::Dual } else { VarTag::Primal };
        let coeffs = (0..=d).map(|_| {
            if !prime && rng.gen_bool(0.3) {
                field.ratio(&rng.gen_range(-50i64..50).into(), &rng.gen_range(1i64..9).into()).unwrap()
            } else if rng.gen_bool(0.3) {
                field.zero()
            } else {
                field.random(&mut rng, 50)
            }
        }).collect();
        let form = BinaryForm::new(field, tag, coeffs);
        let back = parse_form(&form.to_string(), field).unwrap();
        // a zero-coefficient-free constant form parses as primal
        if d > 0 || !form.is_zero() {
            prop_assert_eq!(back.degree(), form.degree());
            prop_assert_eq!(back.coeffs(), form.coeffs());
        }
    }
}
