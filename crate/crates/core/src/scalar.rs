//! Exact base fields: the rationals and prime fields `F_p`.
//!
//! Rationals are backed by arbitrary-precision integers; prime-field
//! residues are kept in `[0, p)` and multiplied through `u128`, so `p` is
//! limited to `p < 2^63`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`Field::prime`].
pub const MAX_MODULUS: u64 = (1 << 63) - 1;

/// A base field handle. Cheap to copy; carries no state beyond the modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}


impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    /// `F_p`. Rejects composite and out-of-range moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_MODULUS {
            return Err(Error::Field(format!("modulus {p} exceeds 2^63 - 1")));
        }
        if !is_prime(p) {
            return Err(Error::Field(match smallest_factor(p) {
                Some(q) if q < p => format!("modulus {p} is not prime ({q} divides it)"),
                _ => format!("modulus {p} is not prime"),
            }));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q` or `fp:<p>`.
    pub fn from_spec(spec: &str) -> Result<Field> {
        let s = spec.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Field(format!("cannot read modulus in '{spec}'")))?;
            return Field::prime(p);
        }
        Err(Error::Field(format!("unknown field '{spec}' (expected q or fp:<p>)")))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    /// Checks that factorials up to `d` are invertible, i.e. the
    /// characteristic is 0 or exceeds `d`.
    pub fn check_degree(&self, d: usize) -> Result<()> {
        match self {
            Field::Rationals => Ok(()),
            Field::Prime(p) if (*p as u128) > d as u128 => Ok(()),
            Field::Prime(p) => Err(Error::Field(format!(
                "characteristic {p} too small for degree {d} (need p > {d})"
            ))),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: reduce_i128(n as i128, *p),
                modulus: *p,
            },
        }
    }

    pub fn from_u64(&self, n: u64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n % p,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Field(format!("denominator {den} vanishes in {self}")))?;
        Ok(self.from_bigint(num) * inv)
    }

    /// Uniform integer in `[-height, height]`, mapped into the field.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> Scalar {
        let h = height.max(1) as i64;
        let n = rng.gen_range(-h..=h);
        self.from_i64(n)
    }

    /// As [`Field::random`], resampling zero.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> Scalar {
        loop {
            let s = self.random(rng, height);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Binomial coefficient as a field element.
    pub fn binomial(&self, n: usize, k: usize) -> Scalar {
        self.from_bigint(&binomial(n, k))
    }

    /// `n (n-1) ... (n-k+1)` as a field element.
    pub fn falling(&self, n: usize, k: usize) -> Scalar {
        self.from_bigint(&falling(n, k))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An element of a [`Field`], always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(num_traits::pow(r.clone(), e as usize)),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, e as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Re-establishes canonical form. Values built through the public API are
    /// already canonical, so this is the identity on them.
    pub fn canonical(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(BigRational::new(r.numer().clone(), r.denom().clone())),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: value % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Magnitude comparison used only for rationals (F_p elements compare by
    /// symmetric residue).
    pub fn abs_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.abs().cmp(&b.abs()),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => {
                let sa = (*a).min(modulus - a);
                let sb = (*b).min(modulus - b);
                sa.cmp(&sb)
            }
            _ => panic!("mixed fields"),
        }
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed fields"),
        }
    }

    fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => panic!("mixed fields"),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    fn div_ref(&self, other: &Scalar) -> Scalar {
        let inv = other.inv().expect("division by zero scalar");
        self.mul_ref(&inv)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn smallest_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= n && q < 1_000_000 {
        if n.is_multiple_of(q) {
            return Some(q);
        }
        q += 1;
    }
    None
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

pub fn factorial(n: usize) -> BigInt {
    falling(n, n)
}
