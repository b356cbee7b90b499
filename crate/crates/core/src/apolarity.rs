//! Apolarity for binary forms: catalecticants, the two generators of the
//! apolar ideal, Sylvester's rank rule, border rank and explicit Waring
//! decompositions.
//!
//! # Catalecticant convention
//!
//! `catalecticant(f, e)` is the matrix of `g ↦ apolar_action(g, f)` from dual
//! forms of degree `e` (basis `u^(e-j) v^j`, column `j`) to primal forms of
//! degree `d - e` (basis `x^(d-e-r) y^r`, row `r`). Differentiation is
//! literal, so for `f = Σ c_i x^(d-i) y^i` the entry is
//!
//! ```text
//! C[r][j] = c_(r+j) · (d-r-j)!/(d-e-r)! · (r+j)!/r!
//! ```
//!
//! The factorials are kept; they rescale rows and columns by units (the
//! characteristic exceeds `d`) and leave ranks and kernels unchanged.

use rand::Rng;

use crate::binpoly::{
    apolar_action, is_squarefree, power_of_linear, roots_in_field, squarefree_profile,
    BinaryForm, LinearForm, MultiplicityProfile, VarTag,
};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};
use crate::scalar::Scalar;

/// Height of the random cofactors used when searching for a splitting generator.
pub const GENERATOR_HEIGHT: u64 = 20;
/// Number of random generators tried by [`decompose`].
pub const GENERATOR_RETRIES: usize = 50;

pub fn catalecticant(f: &BinaryForm, e: usize) -> Result<Matrix> {
    let d = f.degree();
    if e > d {
        return Err(Error::Degree(format!(
            "catalecticant index {e} out of range 0..={d}"
        )));
    }
    let field = f.field();
    Ok(Matrix::from_fn(field, d - e + 1, e + 1, |r, j| {
        let i = r + j;
        let c = f.coeff(i);
        if c.is_zero() {
            return field.zero();
        }
        c * field.falling(d - i, e - j) * field.falling(i, j)
    }))
}

/// Generators `g1`, `g2` of the apolar ideal of a form of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarPair {
    pub g1: BinaryForm,
    pub g2: BinaryForm,
}

impl ApolarPair {
    pub fn d1(&self) -> usize {
        self.g1.degree()
    }

    pub fn d2(&self) -> usize {
        self.g2.degree()
    }
}

fn dual_form(f: &BinaryForm, coeffs: Vec<Scalar>) -> BinaryForm {
    BinaryForm::new(f.field(), f.tag().opposite(), coeffs)
}

fn check_input(f: &BinaryForm) -> Result<()> {
    if f.is_zero() {
        return Err(Error::Undefined("the zero form has no apolar ideal".into()));
    }
    if f.degree() == 0 {
        return Err(Error::Degree("apolarity needs a form of degree at least 1".into()));
    }
    f.field().check_degree(f.degree())
}

/// Reduces `v` modulo the row space of `echelon` (reduced, with `pivots`).
fn reduce(v: &[Scalar], echelon: &Matrix, pivots: &[usize]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for (r, &p) in pivots.iter().enumerate() {
        if out[p].is_zero() {
            continue;
        }
        let factor = out[p].clone();
        for (c, x) in out.iter_mut().enumerate() {
            let e = echelon.get(r, c);
            if !e.is_zero() {
                *x = &*x - &factor * e;
            }
        }
    }
    out
}

/// The degree-`d2` generator: the first element of `(f)^⊥` in degree `d2`
/// that is not a multiple of `g1`.
fn second_generator(f: &BinaryForm, g1: &BinaryForm, d2: usize) -> Result<BinaryForm> {
    let field = f.field();
    let d = f.degree();
    let slice: Vec<Vec<Scalar>> = if d2 > d {
        (0..=d2)
            .map(|i| (0..=d2).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect()
    } else {
        exactla::kernel_basis(&catalecticant(f, d2)?)
    };
    let shift = d2 - g1.degree();
    let multiples: Vec<Vec<Scalar>> = (0..=shift)
        .map(|j| {
            let m = BinaryForm::monomial(field, g1.tag(), shift, j);
            g1.mul(&m).coeffs().to_vec()
        })
        .collect();
    let (echelon, pivots) = exactla::rref(&Matrix::from_rows(field, multiples)?);
    for v in slice {
        let r = reduce(&v, &echelon, &pivots);
        if r.iter().any(|c| !c.is_zero()) {
            return Ok(dual_form(f, r).monic());
        }
    }
    Err(Error::Internal(format!(
        "no second apolar generator in degree {d2}"
    )))
}

pub fn apolar_pair(f: &BinaryForm) -> Result<ApolarPair> {
    check_input(f)?;
    let d = f.degree();
    let d1 = (1..=d)
        .find(|&e| exactla::rank(&catalecticant(f, e).unwrap()) < e + 1)
        .expect("the last catalecticant always has a kernel");
    if 2 * d1 > d + 2 {
        return Err(Error::Internal(format!(
            "first apolar generator in degree {d1} exceeds (d+2)/2 for d = {d}"
        )));
    }
    let kernel = exactla::kernel_basis(&catalecticant(f, d1)?);
    let g1 = dual_form(f, kernel[0].clone()).monic();
    let g2 = match kernel.len() {
        1 => second_generator(f, &g1, d + 2 - d1)?,
        // d even with d1 = d2 = d/2 + 1: the whole slice is a pencil
        2 if 2 * d1 == d + 2 => second_generator(f, &g1, d1)?,
        n => {
            return Err(Error::Internal(format!(
                "apolar ideal has {n} generators in degree {d1}"
            )))
        }
    };
    Ok(ApolarPair { g1, g2 })
}

/// Rank of `f` over the algebraic closure, with the generator that decides it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub g1: BinaryForm,
    pub g1_squarefree: bool,
    pub g1_profile: MultiplicityProfile,
    pub d1: usize,
    pub d2: usize,
}

/// Sylvester's rule: `deg g1` if `g1` is squarefree, `deg g2` otherwise.
pub fn waring_rank(f: &BinaryForm) -> Result<RankCertificate> {
    let pair = apolar_pair(f)?;
    rank_from_pair(&pair)
}

fn rank_from_pair(pair: &ApolarPair) -> Result<RankCertificate> {
    let g1_profile = squarefree_profile(&pair.g1)?;
    let g1_squarefree = g1_profile.is_squarefree();
    let (d1, d2) = (pair.d1(), pair.d2());
    Ok(RankCertificate {
        rank: if g1_squarefree { d1 } else { d2 },
        g1: pair.g1.clone(),
        g1_squarefree,
        g1_profile,
        d1,
        d2,
    })
}

/// Rank of the most square catalecticant.
pub fn border_rank(f: &BinaryForm) -> Result<usize> {
    check_input(f)?;
    Ok(exactla::rank(&catalecticant(f, f.degree() / 2)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaringDecomposition {
    pub degree: usize,
    pub terms: Vec<(Scalar, LinearForm)>,
}

impl WaringDecomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ λ_i l_i^d` as a primal form. Panics on an empty decomposition.
    pub fn reconstruct(&self) -> BinaryForm {
        let field = self.terms[0].1.field();
        let mut acc = BinaryForm::zero(field, VarTag::Primal, self.degree);
        for (lam, l) in &self.terms {
            acc = acc.add(&power_of_linear(l, self.degree, VarTag::Primal).scale(lam));
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Split(WaringDecomposition),
    /// No generator of the rank degree split over the base field.
    CertificateOnly {
        certificate: RankCertificate,
        generator: BinaryForm,
    },
}

fn random_dual<R: Rng + ?Sized>(f: &BinaryForm, degree: usize, rng: &mut R) -> BinaryForm {
    let field = f.field();
    dual_form(f, (0..=degree).map(|_| field.random(rng, GENERATOR_HEIGHT)).collect())
}

/// Solves for the coefficients once the linear forms are known.
fn coefficients(f: &BinaryForm, forms: Vec<LinearForm>) -> Result<WaringDecomposition> {
    let d = f.degree();
    let field = f.field();
    let powers: Vec<BinaryForm> = forms
        .iter()
        .map(|l| power_of_linear(l, d, VarTag::Primal))
        .collect();
    let m = Matrix::from_fn(field, d + 1, forms.len(), |i, j| powers[j].coeff(i).clone());
    let primal: Vec<Scalar> = f.coeffs().to_vec();
    let lambda = exactla::solve(&m, &primal).ok_or_else(|| {
        Error::Internal("apolar generator roots do not span the form".into())
    })?;
    let out = WaringDecomposition {
        degree: d,
        terms: lambda.into_iter().zip(forms).collect(),
    };
    if out.reconstruct().coeffs() != f.coeffs() {
        return Err(Error::Internal("decomposition does not reconstruct the form".into()));
    }
    Ok(out)
}

/// Linear forms dual to the roots of `g`, if `g` is squarefree and splits.
fn split_roots(g: &BinaryForm) -> Result<Option<Vec<LinearForm>>> {
    if g.is_zero() || !is_squarefree(g)? {
        return Ok(None);
    }
    let roots = roots_in_field(g)?;
    if !roots.split {
        return Ok(None);
    }
    Ok(Some(
        roots
            .roots
            .into_iter()
            .map(|(p, _)| LinearForm::new(p.s, p.t).expect("projective point"))
            .collect(),
    ))
}

/// A random element of `(f)^⊥` of degree `r` with most of its roots chosen in
/// advance: `r - s` random linear factors times a cofactor of degree `s`
/// solved for linearly, where `s` is the codimension of the degree-`r` slice.
fn fixed_root_candidate<R: Rng + ?Sized>(
    f: &BinaryForm,
    r: usize,
    rng: &mut R,
) -> Result<Option<BinaryForm>> {
    let field = f.field();
    let d = f.degree();
    let s = if r > d { 0 } else { exactla::rank(&catalecticant(f, r)?) };
    if s > r {
        return Ok(None);
    }
    let mut p = dual_form(f, vec![field.one()]);
    for _ in 0..r - s {
        p = p.mul(&random_dual(f, 1, rng));
    }
    if p.is_zero() {
        return Ok(None);
    }
    if r > d {
        return Ok(Some(p.mul(&random_dual(f, s, rng))));
    }
    let images: Vec<BinaryForm> = (0..=s)
        .map(|j| apolar_action(&p.mul(&BinaryForm::monomial(field, p.tag(), s, j)), f))
        .collect::<Result<_>>()?;
    let m = Matrix::from_fn(field, d - r + 1, s + 1, |i, j| images[j].coeff(i).clone());
    let kernel = exactla::kernel_basis(&m);
    let mut cofactor = vec![field.zero(); s + 1];
    for v in &kernel {
        let c = field.random_nonzero(rng, GENERATOR_HEIGHT);
        for (acc, x) in cofactor.iter_mut().zip(v) {
            *acc = &*acc + &c * x;
        }
    }
    let cofactor = dual_form(f, cofactor);
    Ok((!cofactor.is_zero()).then(|| p.mul(&cofactor)))
}

/// An explicit Waring decomposition of minimal length when some squarefree
/// element of `(f)^⊥` of degree `rank(f)` splits over the base field.
///
/// The candidates are `g1` when it is squarefree, otherwise `g2` and then
/// random elements `g2 + h g1` (or `a g1 + b g2` when `d1 = d2`), each retry
/// also trying a candidate with prescribed random roots.
pub fn decompose<R: Rng + ?Sized>(f: &BinaryForm, rng: &mut R) -> Result<Decomposition> {
    let pair = apolar_pair(f)?;
    let certificate = rank_from_pair(&pair)?;
    let (g1, g2) = (&pair.g1, &pair.g2);
    let tie = certificate.d1 == certificate.d2;

    let first = if certificate.g1_squarefree { g1.clone() } else { g2.clone() };
    if let Some(forms) = split_roots(&first)? {
        return Ok(Decomposition::Split(coefficients(f, forms)?));
    }
    let retries = if certificate.g1_squarefree && !tie { 0 } else { GENERATOR_RETRIES };
    for _ in 0..retries {
        let candidate = if tie {
            let field = f.field();
            let a = field.random(rng, GENERATOR_HEIGHT);
            let b = field.random(rng, GENERATOR_HEIGHT);
            g1.scale(&a).add(&g2.scale(&b))
        } else {
            let h = random_dual(f, certificate.d2 - certificate.d1, rng);
            g2.add(&g1.mul(&h))
        };
        if let Some(forms) = split_roots(&candidate)? {
            return Ok(Decomposition::Split(coefficients(f, forms)?));
        }
        if let Some(candidate) = fixed_root_candidate(f, certificate.rank, rng)? {
            if let Some(forms) = split_roots(&candidate)? {
                return Ok(Decomposition::Split(coefficients(f, forms)?));
            }
        }
    }
    Ok(Decomposition::CertificateOnly {
        certificate,
        generator: first,
    })
}

/// Ranks of `f` and of `f + c l^d`. The rank of the zero form is reported as 0.
pub fn forbidden_probe(f: &BinaryForm, l: &LinearForm, c: &Scalar) -> Result<(usize, usize)> {
    let before = waring_rank(f)?.rank;
    let g = f.add(&power_of_linear(l, f.degree(), f.tag()).scale(c));
    let after = if g.is_zero() { 0 } else { waring_rank(&g)?.rank };
    Ok((before, after))
}
