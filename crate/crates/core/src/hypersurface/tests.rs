use super::*;
use crate::apolarity::{apolar_pair, waring_rank};
use crate::binpoly::{discriminant, parse_form, power_of_linear};
use crate::seeded_rng;
use crate::strata::{distinct_linear_forms, sample_rank_r, suprageneric_sample, DEFAULT_HEIGHT};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_form(field: Field, rng: &mut ChaCha8Rng, d: usize, h: u64) -> BinaryForm {
    BinaryForm::new(field, VarTag::Primal, (0..=d).map(|_| field.random(rng, h)).collect())
}

fn random_vec(field: Field, rng: &mut ChaCha8Rng, n: usize, h: u64) -> Vec<Scalar> {
    (0..n).map(|_| field.random(rng, h)).collect()
}

#[test]
fn symbolic_determinant_matches_numeric() {
    let q = Field::Rationals;
    let mut rng = seeded_rng(40);
    for n in 1..=5 {
        let nvars = 3;
        // entries are random affine functions of b_0, b_1, b_2
        let rows: Vec<Vec<MultiPoly>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let mut p = MultiPoly::constant(q, nvars, q.random(&mut rng, 5));
                        for v in 0..nvars {
                            p = p.add(&MultiPoly::variable(q, nvars, v, q.random(&mut rng, 5)));
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let det = symbolic_determinant(&rows);
        for _ in 0..5 {
            let point = random_vec(q, &mut rng, nvars, 7);
            let m = Matrix::from_fn(q, n, n, |i, j| rows[i][j].eval(&point));
            assert_eq!(det.eval(&point), exactla::determinant(&m).unwrap());
        }
    }
}

#[test]
fn multipoly_operations() {
    let q = Field::Rationals;
    let b = |i| MultiPoly::variable(q, 3, i, q.one());
    let p = b(1).mul(&b(1)).add(&b(0).mul(&b(2)).scale(&q.from_i64(-4)));
    assert_eq!(p.to_string(), "-4*b0*b2 + b1^2");
    assert_eq!(p.partial(1), b(1).scale(&q.from_i64(2)));
    assert_eq!(p.partial(0), b(2).scale(&q.from_i64(-4)));
    assert!(p.is_homogeneous());
    assert_eq!(p.degree_range(), Some((2, 2)));
    assert!(p.div_variable(0).is_none());
    assert_eq!(b(0).mul(&b(2)).div_variable(0).unwrap(), b(2));
    let f7 = Field::prime(7).unwrap();
    let p7 = p.to_field(f7).unwrap();
    let pt: Vec<Scalar> = [1, 2, 3].iter().map(|&x| f7.from_i64(x)).collect();
    assert_eq!(p7.eval(&pt), f7.from_i64(4 - 12));
    assert!(p.add(&p.scale(&q.from_i64(-1))).is_zero());
}

#[test]
fn context_discriminants() {
    let q = Field::Rationals;
    let ctx = context_make(1).unwrap();
    let b = |i| MultiPoly::variable(q, 3, i, q.one());
    let expected = b(1).mul(&b(1)).add(&b(0).mul(&b(2)).scale(&q.from_i64(-4)));
    assert_eq!(ctx.disc_in_b(), &expected);

    let ctx2 = context_make(2).unwrap();
    assert_eq!(ctx2.disc_in_b().term_count(), 5);
    assert_eq!(ctx2.disc_in_b().degree_range(), Some((4, 4)));
    assert_eq!(ctx2.disc_in_b().nvars(), 4);
    let ctx3 = context_make(3).unwrap();
    assert_eq!(ctx3.disc_in_b().degree_range(), Some((6, 6)));
    assert_eq!(ctx3.disc_in_b().nvars(), 5);

    assert!(Arc::ptr_eq(&ctx2, &context_make(2).unwrap()));
    assert_eq!(context_make(7).unwrap_err().kind(), "constraint");
    assert_eq!(context_make(0).unwrap_err().kind(), "constraint");
}

#[test]
fn disc_in_b_agrees_with_numeric_discriminant() {
    let mut rng = seeded_rng(41);
    for k in 1..=4 {
        let ctx = context_make(k).unwrap();
        for field in [Field::Rationals, Field::prime(1009).unwrap()] {
            for _ in 0..20 {
                let b = random_vec(field, &mut rng, k + 2, 20);
                if b[0].is_zero() && b[k + 1].is_zero() {
                    continue;
                }
                let form = BinaryForm::new(field, VarTag::Dual, b.clone());
                let expected = discriminant(&form).unwrap();
                let poly = ctx.disc_in_b().to_field(field).unwrap();
                assert_eq!(poly.eval(&b), expected, "k={k}");
            }
        }
    }
}

#[test]
fn minors_examples() {
    let q = Field::Rationals;
    let f = parse_form("x^3", q).unwrap();
    assert!(minors(&f).unwrap().iter().all(Scalar::is_zero));
    let q3 = q_form(&parse_form("x^3 + y^3", q).unwrap()).unwrap();
    assert_eq!(q3, parse_form("-u v", q).unwrap());
    assert_eq!(minors(&parse_form("x^4", q).unwrap()).unwrap_err().kind(), "degree");

    let mut rng = seeded_rng(42);
    for k in 1..=4 {
        let f = random_form(q, &mut rng, 2 * k + 1, 20);
        let b = minors(&f).unwrap();
        assert_eq!(b.len(), k + 2);
        assert!(b.iter().any(|x| !x.is_zero()));
        for r in 1..=k {
            let (g, _) = sample_rank_r(2 * k + 1, r, q, 20, &mut rng).unwrap();
            assert!(minors(&g).unwrap().iter().all(Scalar::is_zero), "k={k} r={r}");
        }
    }
}

#[test]
fn hankel_ranks_match_catalecticant_ranks() {
    // (x+y)^3 has rank 1 in normalized coordinates
    let q = Field::Rationals;
    let f = parse_form("x^3 + 3x^2y + 3xy^2 + y^3", q).unwrap();
    assert_eq!(exactla::rank(&hankel(&f).unwrap()), 1);
    let mut rng = seeded_rng(43);
    for k in 1..=4 {
        for r in 1..=2 * k + 1 {
            let (f, _) = sample_rank_r(2 * k + 1, r, q, 20, &mut rng).unwrap();
            let cat = crate::apolarity::catalecticant(&f, k + 1).unwrap();
            assert_eq!(exactla::rank(&hankel(&f).unwrap()), exactla::rank(&cat));
        }
    }
}

#[test]
fn q_form_is_the_bordered_determinant() {
    let mut rng = seeded_rng(44);
    for field in [Field::Rationals, Field::prime(1009).unwrap()] {
        for k in 1..=4 {
            for _ in 0..25 {
                let f = random_form(field, &mut rng, 2 * k + 1, 20);
                let q = q_form(&f).unwrap();
                assert_eq!(q.coeffs(), minors(&f).unwrap().as_slice());
                let h = hankel(&f).unwrap();
                let (u, v) = (field.random(&mut rng, 9), field.random(&mut rng, 9));
                let top: Vec<Scalar> = (0..=k + 1).map(|j| u.pow((k + 1 - j) as u32) * v.pow(j as u32)).collect();
                let m = Matrix::from_fn(field, k + 2, k + 2, |r, c| {
                    if r == 0 { top[c].clone() } else { h.get(r - 1, c).clone() }
                });
                assert_eq!(q.eval(&u, &v), exactla::determinant(&m).unwrap());
            }
        }
    }
}

#[test]
fn q_form_is_the_first_apolar_generator() {
    let q = Field::Rationals;
    let mut rng = seeded_rng(45);
    for k in 1..=4 {
        let d = 2 * k + 1;
        let ls = distinct_linear_forms(q, k + 1, 20, &mut rng);
        let f = ls.iter().fold(BinaryForm::zero(q, VarTag::Primal, d), |acc, l| {
            acc.add(&power_of_linear(l, d, VarTag::Primal).scale(&q.random_nonzero(&mut rng, 9)))
        });
        let qf = q_form(&f).unwrap();
        let product = ls.iter().fold(BinaryForm::new(q, VarTag::Dual, vec![q.one()]), |acc, l| {
            acc.mul(&l.perp().to_form(q, VarTag::Dual))
        });
        assert!(qf.is_proportional(&product));
        assert!(qf.is_proportional(&apolar_pair(&f).unwrap().g1));
        assert!(crate::binpoly::is_squarefree(&qf).unwrap());
    }
}

#[test]
fn value_vanishes_exactly_on_the_hypersurface() {
    let mut rng = seeded_rng(46);
    let q = Field::Rationals;
    for k in 1..=3 {
        let ctx = context_make(k).unwrap();
        let d = 2 * k + 1;
        for _ in 0..20 {
            let p = suprageneric_sample(d, k - 1, q, DEFAULT_HEIGHT, &mut rng).unwrap();
            assert!(defining_value(&ctx, &p.f).unwrap().is_zero());
            let f = random_form(q, &mut rng, d, DEFAULT_HEIGHT);
            assert_eq!(waring_rank(&f).unwrap().rank, k + 1);
            assert!(!defining_value(&ctx, &f).unwrap().is_zero());
            let (g, _) = sample_rank_r(d, k, q, DEFAULT_HEIGHT, &mut rng).unwrap();
            assert!(defining_value(&ctx, &g).unwrap().is_zero());
        }
    }
    let ctx = context_make(2).unwrap();
    assert_eq!(defining_value(&ctx, &parse_form("x^3", q).unwrap()).unwrap_err().kind(), "degree");
}

#[test]
fn cubic_case_is_the_classical_discriminant() {
    let q = Field::Rationals;
    let ctx = context_make(1).unwrap();
    let mut rng = seeded_rng(47);
    let mut ratio = None;
    for _ in 0..50 {
        let f = random_form(q, &mut rng, 3, 30);
        let disc = discriminant(&f).unwrap();
        if disc.is_zero() {
            continue;
        }
        let r = defining_value(&ctx, &f).unwrap() / disc;
        assert_eq!(ratio.get_or_insert_with(|| r.clone()), &r);
    }
    assert_eq!(ratio.unwrap(), q.ratio(&(-1).into(), &27.into()).unwrap());
}

#[test]
fn degree_and_scaling() {
    let mut rng = seeded_rng(48);
    for k in 1..=3 {
        let ctx = context_make(k).unwrap();
        let n = degree_of_equation(&ctx);
        assert_eq!(n, 2 * k * (k + 1));
        for field in [Field::Rationals, Field::prime(1009).unwrap()] {
            let f0 = random_form(field, &mut rng, 2 * k + 1, 20);
            let f1 = random_form(field, &mut rng, 2 * k + 1, 20);
            assert_eq!(interpolated_degree(&ctx, &f0, &f1).unwrap(), n);
            let c = field.random_nonzero(&mut rng, 9);
            assert_eq!(
                defining_value(&ctx, &f0.scale(&c)).unwrap(),
                defining_value(&ctx, &f0).unwrap() * c.pow(n as u32)
            );
        }
    }
    assert_eq!(degree_of_equation(&context_make(4).unwrap()), 40);
}

#[test]
fn gradient_vanishes_on_low_rank_forms() {
    let mut rng = seeded_rng(49);
    let q = Field::Rationals;
    for k in 1..=3 {
        let ctx = context_make(k).unwrap();
        let d = 2 * k + 1;
        for _ in 0..10 {
            let r = 1 + rng.gen_range(0..k);
            let (f, _) = sample_rank_r(d, r, q, DEFAULT_HEIGHT, &mut rng).unwrap();
            let grad = defining_gradient(&ctx, &f).unwrap();
            assert_eq!(grad.len(), 2 * k + 2);
            assert!(grad.iter().all(Scalar::is_zero));
            let p = suprageneric_sample(d, k - 1, q, DEFAULT_HEIGHT, &mut rng).unwrap();
            assert!(defining_gradient(&ctx, &p.f).unwrap().iter().any(|g| !g.is_zero()));
        }
    }
}

#[test]
fn gradient_passes_the_secant_check() {
    let mut rng = seeded_rng(50);
    for k in 1..=3 {
        let ctx = context_make(k).unwrap();
        let d = 2 * k + 1;
        for field in [Field::Rationals, Field::prime(1009).unwrap()] {
            for n in 0..5 {
                let f = if n % 2 == 0 {
                    random_form(field, &mut rng, d, 10)
                } else {
                    suprageneric_sample(d, k - 1, field, 10, &mut rng).unwrap().f
                };
                let h = random_vec(field, &mut rng, d + 1, 10);
                assert!(secant_check(&ctx, &f, &h).unwrap());
            }
        }
    }
}

#[test]
fn triple_root_component_is_singular() {
    // k = 2: forms m^3 h with h quadratic have q = (dual of m)^3
    let q = Field::Rationals;
    let ctx = context_make(2).unwrap();
    let mut rng = seeded_rng(51);
    for _ in 0..10 {
        let m = distinct_linear_forms(q, 1, 20, &mut rng).remove(0);
        let h = random_form(q, &mut rng, 2, 20);
        let f = power_of_linear(&m, 3, VarTag::Primal).mul(&h);
        let qf = q_form(&f).unwrap();
        let perp = m.perp().to_form(q, VarTag::Dual);
        assert!(qf.is_proportional(&perp.pow(3)));
        assert!(defining_value(&ctx, &f).unwrap().is_zero());
        assert!(defining_gradient(&ctx, &f).unwrap().iter().all(Scalar::is_zero));
    }
}

#[test]
fn singular_probe_counts() {
    let mut rng = seeded_rng(52);
    let ctx = context_make(2).unwrap();
    let low = probe_singular(&ctx, 2, 10, Field::Rationals, 20, &mut rng).unwrap();
    assert_eq!((low.zero_value, low.zero_gradient), (10, 10));
    let top = probe_singular(&ctx, 4, 10, Field::Rationals, 20, &mut rng).unwrap();
    assert_eq!((top.zero_value, top.zero_gradient), (10, 0));
}
