//! Projective roots of binary forms that lie in the base field.
//!
//! Over `F_p` all `p + 1` points of the projective line are scanned. Over the
//! rationals the squarefree part of the dehomogenized form is made primitive,
//! its roots are found modulo a small good prime, Hensel-lifted past a
//! coefficient bound and then tested exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{BinaryForm, UniPoly};
use crate::error::{Error, Result};
use crate::scalar::{is_prime, Field, Scalar};

/// Largest modulus for which the exhaustive scan is attempted.
pub const MAX_SCAN_MODULUS: u64 = 65521;

/// A point `(s : t)` of the projective line, normalized to `(r : 1)` or `(1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    pub s: Scalar,
    pub t: Scalar,
}

impl ProjPoint {
    pub fn affine(r: Scalar) -> Self {
        let one = r.field().one();
        ProjPoint { s: r, t: one }
    }

    pub fn infinity(field: Field) -> Self {
        ProjPoint {
            s: field.one(),
            t: field.zero(),
        }
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}:{})", self.s, self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    /// Distinct roots with multiplicities.
    pub roots: Vec<(ProjPoint, usize)>,
    /// Whether the roots account for the full degree.
    pub split: bool,
}

/// All projective roots of `f` in its base field.
pub fn roots_in_field(f: &BinaryForm) -> Result<RootSet> {
    if f.is_zero() {
        return Err(Error::Undefined("roots of the zero form".into()));
    }
    let field = f.field();
    let (a, p) = f.affine_chart();
    let mut roots = Vec::new();
    if a > 0 {
        roots.push((ProjPoint::infinity(field), a));
    }
    let affine = match field {
        Field::Prime(m) => {
            if m > MAX_SCAN_MODULUS {
                return Err(Error::Field(format!(
                    "root scan needs p <= {MAX_SCAN_MODULUS}, got {m}"
                )));
            }
            scan_roots(&p, m)
        }
        Field::Rationals => rational_roots(&p),
    };
    roots.extend(affine.into_iter().map(|(r, m)| (ProjPoint::affine(r), m)));
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    Ok(RootSet {
        split: found == f.degree(),
        roots,
    })
}

/// Multiplicity of `r` as a root of `p`, by repeated synthetic division.
fn multiplicity(p: &UniPoly, r: &Scalar) -> usize {
    let lin = UniPoly::new(p.field, vec![-r, p.field.one()]);
    let mut cur = p.clone();
    let mut m = 0;
    while !cur.is_constant() {
        let (q, rem) = cur.div_rem(&lin);
        if !rem.is_zero() {
            break;
        }
        cur = q;
        m += 1;
    }
    m
}

fn scan_roots(p: &UniPoly, modulus: u64) -> Vec<(Scalar, usize)> {
    let field = p.field;
    let mut out = Vec::new();
    let mut remaining = p.deg0();
    let mut cur = p.clone();
    for v in 0..modulus {
        if remaining == 0 {
            break;
        }
        let r = field.from_u64(v);
        if !cur.eval(&r).is_zero() {
            continue;
        }
        let m = multiplicity(&cur, &r);
        let lin = UniPoly::new(field, vec![-&r, field.one()]);
        for _ in 0..m {
            cur = cur.exact_div(&lin);
        }
        remaining -= m;
        out.push((r, m));
    }
    out
}

fn to_integer_primitive(p: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<&BigRational> = p.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&l / r.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

fn rational_roots(p: &UniPoly) -> Vec<(Scalar, usize)> {
    let field = Field::Rationals;
    if p.is_constant() {
        return Vec::new();
    }
    let sqf = p.exact_div(&p.gcd(&p.derivative()));
    let s = to_integer_primitive(&sqf);
    let n = s.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = s[n].clone();
    let deriv: Vec<BigInt> = (1..=n).map(|i| &s[i] * BigInt::from(i)).collect();

    // a prime where the leading coefficient survives and s stays squarefree
    let prime = (101u64..)
        .filter(|&q| is_prime(q))
        .find(|&q| {
            let qb = BigInt::from(q);
            if lead.mod_floor(&qb).is_zero() {
                return false;
            }
            let fq = Field::Prime(q);
            let sq = UniPoly::new(fq, s.iter().map(|c| fq.from_bigint(c)).collect());
            sq.gcd(&sq.derivative()).is_constant()
        })
        .expect("a good prime exists");

    let fq = Field::Prime(prime);
    let s_mod = UniPoly::new(fq, s.iter().map(|c| fq.from_bigint(c)).collect());
    let bound = lead.abs() + s.iter().map(|c| c.abs()).max().unwrap();
    let target = bound * 2 + 1;

    let mut out = Vec::new();
    for (r0, _) in scan_roots(&s_mod, prime) {
        let mut m = BigInt::from(prime);
        let mut r = BigInt::from(r0.residue().unwrap());
        while m < target {
            m = &m * &m;
            let fr = eval_mod(&s, &r, &m);
            let dr = eval_mod(&deriv, &r, &m);
            let Some(inv) = mod_inverse(&dr, &m) else {
                break;
            };
            r = (r - fr * inv).mod_floor(&m);
        }
        let mut c = (&lead * &r).mod_floor(&m);
        if &c * 2 > m {
            c -= &m;
        }
        let cand = field.ratio(&c, &lead).unwrap();
        if p.eval(&cand).is_zero() {
            let mult = multiplicity(p, &cand);
            out.push((cand, mult));
        }
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.0.as_rational().unwrap(), b.0.as_rational().unwrap());
        x.cmp(y)
    });
    out
}
