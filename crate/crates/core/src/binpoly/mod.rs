//! Binary forms over an exact field.
//!
//! A form of degree `d` is stored as its monomial coefficients
//! `c_0, ..., c_d` of `sum c_i x^(d-i) y^i` (or `u`, `v` for dual forms). No
//! binomial weighting is applied; the apolarity pairing carries the factorial
//! factors explicitly, see [`apolar_action`].

mod parse;
mod roots;
mod upoly;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};
use crate::scalar::{Field, Scalar};

pub use parse::parse_form;
pub use roots::{roots_in_field, RootSet, MAX_SCAN_MODULUS};
pub(crate) use upoly::UniPoly;

/// Which pair of variables a form is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarTag {
    /// `x`, `y`
    Primal,
    /// `u`, `v`
    Dual,
}

impl VarTag {
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            VarTag::Primal => ("x", "y"),
            VarTag::Dual => ("u", "v"),
        }
    }

    pub fn opposite(self) -> VarTag {
        match self {
            VarTag::Primal => VarTag::Dual,
            VarTag::Dual => VarTag::Primal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    tag: VarTag,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    /// Form with coefficients `c_0..c_d`. The sequence must be nonempty.
    pub fn new(field: Field, tag: VarTag, coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { field, tag, coeffs }
    }

    pub fn from_i64(field: Field, tag: VarTag, coeffs: &[i64]) -> Self {
        BinaryForm::new(field, tag, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field, tag: VarTag, degree: usize) -> Self {
        BinaryForm::new(field, tag, vec![field.zero(); degree + 1])
    }

    /// `x^(d-i) y^i` (or the dual analogue).
    pub fn monomial(field: Field, tag: VarTag, degree: usize, i: usize) -> Self {
        let mut f = BinaryForm::zero(field, tag, degree);
        f.coeffs[i] = field.one();
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn tag(&self) -> VarTag {
        self.tag
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn with_tag(mut self, tag: VarTag) -> Self {
        self.tag = tag;
        self
    }

    fn check_compatible(&self, other: &BinaryForm) {
        assert_eq!(self.field, other.field, "forms over different fields");
        assert_eq!(self.tag, other.tag, "forms in different variables");
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        self.check_compatible(other);
        assert_eq!(self.degree(), other.degree(), "adding forms of different degrees");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        BinaryForm::new(self.field, self.tag, coeffs)
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> BinaryForm {
        BinaryForm::new(self.field, self.tag, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        self.check_compatible(other);
        let mut out = vec![self.field.zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        BinaryForm::new(self.field, self.tag, out)
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut acc = BinaryForm::new(self.field, self.tag, vec![self.field.one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at the point `(a, b)`.
    pub fn eval(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let d = self.degree();
        let mut acc = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc + c * a.pow((d - i) as u32) * b.pow(i as u32);
        }
        acc
    }

    /// Partial derivative in the first variable.
    pub fn derivative_first(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(self.field, self.tag, 0);
        }
        let coeffs = (0..d).map(|i| self.field.from_u64((d - i) as u64) * &self.coeffs[i]).collect();
        BinaryForm::new(self.field, self.tag, coeffs)
    }

    /// Partial derivative in the second variable.
    pub fn derivative_second(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(self.field, self.tag, 0);
        }
        let coeffs = (1..=d).map(|i| self.field.from_u64(i as u64) * &self.coeffs[i]).collect();
        BinaryForm::new(self.field, self.tag, coeffs)
    }

    /// The form `f(a x + b y, c x + d y)`.
    pub fn substitute(&self, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> BinaryForm {
        let deg = self.degree();
        let first = LinearForm::new_unchecked(a.clone(), b.clone()).to_form(self.field, self.tag);
        let second = LinearForm::new_unchecked(c.clone(), d.clone()).to_form(self.field, self.tag);
        let mut acc = BinaryForm::zero(self.field, self.tag, deg);
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = first.pow(deg - i).mul(&second.pow(i)).scale(coeff);
            acc = acc.add(&term);
        }
        acc
    }

    /// Multiplicity of the root `(1:0)`, i.e. the largest `a` with `y^a | f`.
    /// `None` for the zero form.
    pub fn second_var_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Same form with the leading nonzero coefficient scaled to 1.
    pub fn monic(&self) -> BinaryForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv().unwrap()),
        }
    }

    /// True when `self` and `other` are nonzero multiples of each other.
    pub fn is_proportional(&self, other: &BinaryForm) -> bool {
        if self.degree() != other.degree() || self.is_zero() || other.is_zero() {
            return false;
        }
        self.monic() == other.monic()
    }

    /// Splits off `y^a` and dehomogenizes the cofactor at `y = 1`.
    pub(crate) fn affine_chart(&self) -> (usize, UniPoly) {
        let a = self.second_var_valuation().expect("nonzero form");
        let d = self.degree();
        // cofactor has coefficients c_a..c_d; as polynomial in x its x^j
        // coefficient is c_{d-j}
        let coeffs = (0..=d - a).map(|j| self.coeffs[d - j].clone()).collect();
        (a, UniPoly::new(self.field, coeffs))
    }

    /// Inverse of [`BinaryForm::affine_chart`]: `y^a * p(x, y)` homogenized.
    pub(crate) fn from_chart(field: Field, tag: VarTag, a: usize, p: &UniPoly) -> BinaryForm {
        let m = p.deg0();
        let mut coeffs = vec![field.zero(); a + m + 1];
        for (j, c) in p.coeffs.iter().enumerate() {
            coeffs[a + m - j] = c.clone();
        }
        BinaryForm::new(field, tag, coeffs)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (xn, yn) = self.tag.names();
        let d = self.degree();
        let mono = |i: usize| -> String {
            let mut parts = Vec::new();
            match d - i {
                0 => {}
                1 => parts.push(xn.to_string()),
                e => parts.push(format!("{xn}^{e}")),
            }
            match i {
                0 => {}
                1 => parts.push(yn.to_string()),
                e => parts.push(format!("{yn}^{e}")),
            }
            parts.join("*")
        };
        if self.is_zero() {
            return if d == 0 { write!(f, "0") } else { write!(f, "0*{}", mono(0)) };
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let m = mono(i);
            match (m.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

/// The linear form `a x + b y` (or `a u + b v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub a: Scalar,
    pub b: Scalar,
}

impl LinearForm {
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Undefined("linear form with both coefficients zero".into()));
        }
        Ok(LinearForm { a, b })
    }

    pub(crate) fn new_unchecked(a: Scalar, b: Scalar) -> Self {
        LinearForm { a, b }
    }

    pub fn from_i64(field: Field, a: i64, b: i64) -> Result<Self> {
        LinearForm::new(field.from_i64(a), field.from_i64(b))
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn to_form(&self, field: Field, tag: VarTag) -> BinaryForm {
        BinaryForm::new(field, tag, vec![self.a.clone(), self.b.clone()])
    }

    /// Projective equality.
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    /// The dual linear form `b u - a v`, which annihilates `a x + b y`.
    pub fn perp(&self) -> LinearForm {
        LinearForm {
            a: self.b.clone(),
            b: -&self.a,
        }
    }

    /// Canonical projective representative: first nonzero coordinate 1.
    pub fn normalized(&self) -> LinearForm {
        let lead = if self.a.is_zero() { &self.b } else { &self.a };
        let inv = lead.inv().unwrap();
        LinearForm {
            a: &self.a * &inv,
            b: &self.b * &inv,
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form(self.field(), VarTag::Primal))
    }
}

/// Coefficients (low to high, trailing zeros dropped) of the polynomial of
/// degree `< xs.len()` taking the values `ys` at the distinct nodes `xs`.
pub fn interpolate(field: Field, xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    UniPoly::interpolate(field, xs, ys).coeffs
}

/// `(a x + b y)^d` by binomial expansion.
pub fn power_of_linear(l: &LinearForm, d: usize, tag: VarTag) -> BinaryForm {
    let field = l.field();
    let coeffs = (0..=d)
        .map(|i| field.binomial(d, i) * l.a.pow((d - i) as u32) * l.b.pow(i as u32))
        .collect();
    BinaryForm::new(field, tag, coeffs)
}

/// Falling-factorial table `t[n][k] = n (n-1) ... (n-k+1)` for `n, k <= d`.
fn falling_table(field: Field, d: usize) -> Vec<Vec<Scalar>> {
    (0..=d)
        .map(|n| {
            let mut row = Vec::with_capacity(d + 1);
            let mut acc = field.one();
            for k in 0..=d {
                if k > n {
                    row.push(field.zero());
                } else {
                    row.push(acc.clone());
                    acc = acc * field.from_u64((n - k) as u64);
                }
            }
            row
        })
        .collect()
}

/// Contraction `op(∂_1, ∂_2) target` by literal differentiation. The operator
/// and the target must be written in opposite variable sets; the result is in
/// the target's variables and has degree `deg target - deg op`.
pub fn apolar_action(op: &BinaryForm, target: &BinaryForm) -> Result<BinaryForm> {
    if op.tag == target.tag {
        return Err(Error::Constraint(
            "apolar action needs an operator and a target in opposite variables".into(),
        ));
    }
    assert_eq!(op.field, target.field, "forms over different fields");
    let e = op.degree();
    let d = target.degree();
    if e > d {
        return Err(Error::Degree(format!(
            "operator degree {e} exceeds target degree {d}"
        )));
    }
    let field = target.field;
    let fall = falling_table(field, d);
    let mut out = vec![field.zero(); d - e + 1];
    for (j, g) in op.coeffs.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        // ∂_1^(e-j) ∂_2^j applied to x^(d-i) y^i lands on index i - j
        for i in j..=(d - e + j) {
            let c = &target.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let w = &fall[d - i][e - j] * &fall[i][j];
            out[i - j] = &out[i - j] + g * c * w;
        }
    }
    Ok(BinaryForm::new(field, target.tag, out))
}

/// Root multiplicity data: for each multiplicity `m`, the degree of the
/// product of the distinct roots that occur with multiplicity exactly `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile {
    /// `(multiplicity, degree)`, sorted by decreasing multiplicity.
    pub entries: Vec<(usize, usize)>,
}

impl MultiplicityProfile {
    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|(m, d)| m * d).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|&(m, _)| m == 1)
    }

    /// Multiplicities of the distinct roots over the algebraic closure, as a
    /// weakly decreasing sequence.
    pub fn root_multiplicities(&self) -> Vec<usize> {
        self.entries
            .iter()
            .flat_map(|&(m, d)| std::iter::repeat_n(m, d))
            .collect()
    }
}

impl fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(m, d)| format!("({m},{d})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Squarefree decomposition `f = c * prod_m P_m^m` with monic, pairwise
/// coprime, squarefree `P_m`; the root `(1:0)` is included through the power
/// of the second variable.
pub fn squarefree_decomposition(f: &BinaryForm) -> Result<Vec<(usize, BinaryForm)>> {
    if f.is_zero() {
        return Err(Error::Undefined("squarefree decomposition of the zero form".into()));
    }
    f.field.check_degree(f.degree())?;
    let (a, p) = f.affine_chart();
    let mut parts: Vec<(usize, BinaryForm)> = p
        .squarefree_decomposition()
        .into_iter()
        .map(|(m, q)| (m, BinaryForm::from_chart(f.field, f.tag, 0, &q)))
        .collect();
    if a > 0 {
        let y = BinaryForm::monomial(f.field, f.tag, 1, 1);
        match parts.iter_mut().find(|(m, _)| *m == a) {
            Some((_, q)) => *q = q.mul(&y),
            None => parts.push((a, y)),
        }
    }
    parts.sort_by(|l, r| r.0.cmp(&l.0));
    Ok(parts)
}

pub fn squarefree_profile(f: &BinaryForm) -> Result<MultiplicityProfile> {
    let entries = squarefree_decomposition(f)?
        .into_iter()
        .map(|(m, q)| (m, q.degree()))
        .collect();
    Ok(MultiplicityProfile { entries })
}

pub fn is_squarefree(f: &BinaryForm) -> Result<bool> {
    Ok(squarefree_profile(f)?.is_squarefree())
}

/// Monic gcd as binary forms. `gcd(0, g)` is `g` made monic.
pub fn gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    f.check_compatible(g);
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(Error::Undefined("gcd of two zero forms".into())),
        (true, false) => Ok(g.monic()),
        (false, true) => Ok(f.monic()),
        (false, false) => {
            let (af, pf) = f.affine_chart();
            let (ag, pg) = g.affine_chart();
            let p = pf.gcd(&pg);
            Ok(BinaryForm::from_chart(f.field, f.tag, af.min(ag), &p))
        }
    }
}

/// Sylvester matrix of two binary forms of degrees `m`, `n`: `n` shifted rows
/// of `f`'s coefficients followed by `m` shifted rows of `g`'s.
pub fn sylvester_matrix(f: &BinaryForm, g: &BinaryForm) -> Matrix {
    let m = f.degree();
    let n = g.degree();
    let field = f.field;
    let size = m + n;
    Matrix::from_fn(field, size, size, |i, j| {
        if i < n {
            j.checked_sub(i).and_then(|k| f.coeffs.get(k)).cloned().unwrap_or_else(|| field.zero())
        } else {
            j.checked_sub(i - n).and_then(|k| g.coeffs.get(k)).cloned().unwrap_or_else(|| field.zero())
        }
    })
}

/// Homogeneous resultant: the determinant of [`sylvester_matrix`]. With this
/// convention `Res(x, y) = 1`; it vanishes iff the forms share a projective
/// root.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Scalar> {
    f.check_compatible(g);
    if f.is_zero() || g.is_zero() {
        return Err(Error::Undefined("resultant with a zero form".into()));
    }
    if f.degree() == 0 || g.degree() == 0 {
        return Err(Error::Degree("resultant needs degrees at least 1".into()));
    }
    exactla::determinant(&sylvester_matrix(f, g))
}

/// `(-1)^(m(m-1)/2) Res(f, ∂f/∂x) / c_0`, valid when `c_0 != 0`.
fn discriminant_first_chart(f: &BinaryForm) -> Result<Scalar> {
    let m = f.degree();
    let res = exactla::determinant(&sylvester_matrix(f, &f.derivative_first()))?;
    let val = res / f.coeffs[0].clone();
    Ok(if (m * (m - 1) / 2) % 2 == 1 { -val } else { val })
}

/// Discriminant of a binary form of degree `m >= 2`, normalized so that
/// `Disc(a u^2 + b u v + c v^2) = b^2 - 4ac`. Vanishes iff the form has a
/// repeated projective root. When `c_0 = 0` the chart at the other variable is
/// used, and if both extreme coefficients vanish the form is first sheared by
/// a unimodular substitution (the discriminant is invariant under both).
pub fn discriminant(f: &BinaryForm) -> Result<Scalar> {
    let m = f.degree();
    if m < 2 {
        return Err(Error::Degree(format!("discriminant needs degree >= 2, got {m}")));
    }
    f.field.check_degree(m)?;
    if f.is_zero() {
        return Ok(f.field.zero());
    }
    if !f.coeffs[0].is_zero() {
        return discriminant_first_chart(f);
    }
    if !f.coeffs[m].is_zero() {
        let swapped = BinaryForm::new(f.field, f.tag, f.coeffs.iter().rev().cloned().collect());
        return discriminant_first_chart(&swapped);
    }
    let one = f.field.one();
    let zero = f.field.zero();
    for t in 1..=(m as i64 + 1) {
        let t = f.field.from_i64(t);
        // f(x, t x + y) has leading coefficient f(1, t)
        let sheared = f.substitute(&one, &zero, &t, &one);
        if !sheared.coeffs[0].is_zero() {
            return discriminant_first_chart(&sheared);
        }
    }
    Err(Error::Internal("no shear made the leading coefficient nonzero".into()))
}

#[cfg(test)]
mod tests;
