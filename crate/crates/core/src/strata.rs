//! Rank strata of binary forms of degree `d`.
//!
//! Above the generic rank the stratum of rank `d - k` is parametrized by
//! `l_0^(d-1) g + l_1^d + ... + l_k^d`; its closure is the set of forms of
//! rank at most `k + 1` together with the forms of rank at least `d - k`.
//! This module samples those points, checks their ranks, walks the ranks
//! upward by adding powers, and computes tangent spaces of the
//! parametrization.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::apolarity::{border_rank, catalecticant, waring_rank, RankCertificate};
use crate::binpoly::{power_of_linear, roots_in_field, BinaryForm, LinearForm, VarTag};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};
use crate::scalar::{Field, Scalar};
use crate::seeded_rng;

/// Coefficient height used for "general" points over the rationals.
pub const DEFAULT_HEIGHT: u64 = 50;
/// Resampling budget for samplers that must hit an exact rank.
pub const SAMPLE_ATTEMPTS: usize = 100;
/// Random `(l, c)` trials per step of [`rank_raising_chain`].
pub const CHAIN_TRIALS: usize = 200;

/// `⌈(d+1)/2⌉`, the rank of a general binary form of degree `d`.
pub fn generic_rank(d: usize) -> usize {
    (d + 2) / 2
}

/// Checks `d - k > generic_rank(d)`, i.e. `d - 2k - 3 >= 0`.
pub fn check_suprageneric(d: usize, k: usize) -> Result<()> {
    if d < 2 * k + 3 {
        return Err(Error::Constraint(format!(
            "rank d - k = {} must exceed the generic rank {} (need d >= 2k + 3, got d = {d}, k = {k})",
            d.saturating_sub(k),
            generic_rank(d)
        )));
    }
    Ok(())
}

fn random_linear<R: Rng + ?Sized>(field: Field, height: u64, rng: &mut R) -> LinearForm {
    loop {
        if let Ok(l) = LinearForm::new(field.random(rng, height), field.random(rng, height)) {
            return l;
        }
    }
}

/// `count` random pairwise non-proportional linear forms.
pub fn distinct_linear_forms<R: Rng + ?Sized>(
    field: Field,
    count: usize,
    height: u64,
    rng: &mut R,
) -> Vec<LinearForm> {
    let mut out: Vec<LinearForm> = Vec::with_capacity(count);
    while out.len() < count {
        let l = random_linear(field, height, rng);
        if out.iter().all(|m| !m.is_proportional(&l)) {
            out.push(l);
        }
    }
    out
}

/// A point `f = l_0^(d-1) g + l_1^d + ... + l_k^d` of the parametrized stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupragenericPoint {
    pub d: usize,
    pub k: usize,
    /// `l_0, ..., l_k`
    pub l: Vec<LinearForm>,
    pub g: LinearForm,
    pub f: BinaryForm,
}

impl SupragenericPoint {
    /// Assembles `f` from the given linear forms without any genericity check.
    pub fn assemble(d: usize, l: Vec<LinearForm>, g: LinearForm) -> SupragenericPoint {
        assert!(!l.is_empty() && d >= 2);
        let field = g.field();
        let head = power_of_linear(&l[0], d - 1, VarTag::Primal).mul(&g.to_form(field, VarTag::Primal));
        let f = l[1..]
            .iter()
            .fold(head, |acc, li| acc.add(&power_of_linear(li, d, VarTag::Primal)));
        SupragenericPoint {
            d,
            k: l.len() - 1,
            l,
            g,
            f,
        }
    }
}

/// Degenerations of the parametrization used by the census and the tangent
/// space checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Specialization {
    /// All forms independent and general.
    General,
    /// `g = l_0`.
    GEqualsL0,
    /// `l_2 = l_1` when `k >= 2`, `l_1 = l_0` when `k = 1`.
    Coincident,
}

impl Specialization {
    pub fn name(self) -> &'static str {
        match self {
            Specialization::General => "general",
            Specialization::GEqualsL0 => "g-eq-l0",
            Specialization::Coincident => "li-eq-lj",
        }
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A random point of the parametrization with the given degeneration. No
/// rank condition is imposed. `Coincident` needs `k >= 1`.
pub fn special_point<R: Rng + ?Sized>(
    d: usize,
    k: usize,
    special: Specialization,
    field: Field,
    height: u64,
    rng: &mut R,
) -> Result<SupragenericPoint> {
    check_suprageneric(d, k)?;
    field.check_degree(d)?;
    let mut forms = distinct_linear_forms(field, k + 2, height, rng);
    let mut g = forms.pop().unwrap();
    let mut l = forms;
    match special {
        Specialization::General => {}
        Specialization::GEqualsL0 => g = l[0].clone(),
        Specialization::Coincident if k >= 2 => l[2] = l[1].clone(),
        Specialization::Coincident if k == 1 => l[1] = l[0].clone(),
        Specialization::Coincident => {
            return Err(Error::Constraint("no two linear forms to identify when k = 0".into()))
        }
    }
    Ok(SupragenericPoint::assemble(d, l, g))
}

/// A general point of the stratum of rank `d - k`, resampled until its rank
/// is verified to be `d - k`.
pub fn suprageneric_sample<R: Rng + ?Sized>(
    d: usize,
    k: usize,
    field: Field,
    height: u64,
    rng: &mut R,
) -> Result<SupragenericPoint> {
    for _ in 0..SAMPLE_ATTEMPTS {
        let p = special_point(d, k, Specialization::General, field, height, rng)?;
        if waring_rank(&p.f)?.rank == d - k {
            return Ok(p);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no point of rank {} in {SAMPLE_ATTEMPTS} samples (d = {d}, k = {k})",
        d - k
    )))
}

/// A random form of rank exactly `r`, with its certificate.
///
/// Ranks up to the generic rank come from sums of `r` powers with random
/// coefficients, larger ranks `r = d - k` from [`suprageneric_sample`]. For
/// binary forms every rank `1..=d` is attained.
pub fn sample_rank_r<R: Rng + ?Sized>(
    d: usize,
    r: usize,
    field: Field,
    height: u64,
    rng: &mut R,
) -> Result<(BinaryForm, RankCertificate)> {
    if d == 0 || r == 0 || r > d {
        return Err(Error::Constraint(format!(
            "no binary form of degree {d} has rank {r}: ranks range over 1..={d}"
        )));
    }
    field.check_degree(d)?;
    if r > generic_rank(d) {
        let p = suprageneric_sample(d, d - r, field, height, rng)?;
        let cert = waring_rank(&p.f)?;
        return Ok((p.f, cert));
    }
    for _ in 0..SAMPLE_ATTEMPTS {
        let forms = distinct_linear_forms(field, r, height, rng);
        let f = forms.iter().fold(BinaryForm::zero(field, VarTag::Primal, d), |acc, l| {
            acc.add(&power_of_linear(l, d, VarTag::Primal).scale(&field.random_nonzero(rng, height)))
        });
        if f.is_zero() {
            continue;
        }
        let cert = waring_rank(&f)?;
        if cert.rank == r {
            return Ok((f, cert));
        }
    }
    Err(Error::SearchExhausted(format!(
        "no form of rank {r} in {SAMPLE_ATTEMPTS} samples (d = {d})"
    )))
}

/// One step of a rank raising chain: `c l^d` was added and the rank became `rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub l: LinearForm,
    pub c: Scalar,
    pub rank: usize,
}

/// Writes the rank one matrix `m` as `a b^T`.
fn rank_one_factors(m: &Matrix) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    let (i0, j0) = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())?;
    let inv = m.get(i0, j0).inv().unwrap();
    let a = (0..m.rows()).map(|i| m.get(i, j0).clone()).collect();
    let b = (0..m.cols()).map(|j| m.get(i0, j) * &inv).collect();
    Some((a, b))
}

/// The `c` for which `Cat_e(f + c l^d)` loses rank, when it exists. With
/// `Cat_e(l^d) = a b^T` and `Cat_e(f) w_0 = a` this is `c = -1 / (b^T w_0)`.
fn dropping_coefficient(f: &BinaryForm, l: &LinearForm, e: usize) -> Result<Option<Scalar>> {
    let cat = catalecticant(f, e)?;
    let power = power_of_linear(l, f.degree(), f.tag());
    let Some((a, b)) = rank_one_factors(&catalecticant(&power, e)?) else {
        return Ok(None);
    };
    let Some(w0) = exactla::solve(&cat, &a) else {
        return Ok(None);
    };
    let dot = b
        .iter()
        .zip(&w0)
        .fold(f.field().zero(), |acc, (x, y)| acc + x * y);
    Ok(dot.inv().map(|inv| -inv))
}

fn raise_once<R: Rng + ?Sized>(
    f: &BinaryForm,
    cert: &RankCertificate,
    height: u64,
    rng: &mut R,
) -> Result<Option<ChainStep>> {
    let target = cert.rank + 1;
    let field = f.field();
    let d = f.degree();
    let try_step = |l: LinearForm, c: Scalar| -> Result<Option<ChainStep>> {
        let next = f.add(&power_of_linear(&l, d, f.tag()).scale(&c));
        if next.is_zero() || waring_rank(&next)?.rank != target {
            return Ok(None);
        }
        Ok(Some(ChainStep { l, c, rank: target }))
    };

    // powers dual to base field roots of g1, with the coefficient that makes
    // the catalecticant of order d1 - 1 drop rank
    if cert.d1 >= 2 && (field.is_rational() || field.characteristic() <= crate::binpoly::MAX_SCAN_MODULUS) {
        for (point, _) in roots_in_field(&cert.g1)?.roots {
            let l = LinearForm::new(point.s, point.t)?;
            if let Some(c) = dropping_coefficient(f, &l, cert.d1 - 1)? {
                if let Some(step) = try_step(l, c)? {
                    return Ok(Some(step));
                }
            }
        }
    }
    for _ in 0..CHAIN_TRIALS {
        let l = random_linear(field, height, rng);
        let c = field.random_nonzero(rng, height);
        if let Some(step) = try_step(l, c)? {
            return Ok(Some(step));
        }
    }
    Ok(None)
}

/// Adds powers `c l^d` one at a time, each raising the rank by exactly one,
/// until the rank is `d`.
///
/// Each step first tries the linear forms dual to the roots of `g1` in the
/// base field, with the coefficient that removes that power from the
/// generalized decomposition, then falls back to [`CHAIN_TRIALS`] random
/// pairs `(l, c)`.
pub fn rank_raising_chain<R: Rng + ?Sized>(
    f: &BinaryForm,
    height: u64,
    rng: &mut R,
) -> Result<Vec<ChainStep>> {
    let d = f.degree();
    let mut cur = f.clone();
    let mut cert = waring_rank(&cur)?;
    let mut steps = Vec::new();
    while cert.rank < d {
        let Some(step) = raise_once(&cur, &cert, height, rng)? else {
            return Err(Error::SearchExhausted(format!(
                "no power raises the rank beyond {} (degree {d})",
                cert.rank
            )));
        };
        cur = cur.add(&power_of_linear(&step.l, d, cur.tag()).scale(&step.c));
        cert = waring_rank(&cur)?;
        debug_assert_eq!(cert.rank, step.rank);
        steps.push(step);
    }
    Ok(steps)
}

/// Spanning forms of the tangent space of the parametrization at `p`:
/// `y l_i^(d-1), x l_i^(d-1)` for `i = 1..k`, then `x l_0^(d-2) g`,
/// `y l_0^(d-2) g`, `x l_0^(d-1)`, `y l_0^(d-1)`.
pub fn tangent_generators(p: &SupragenericPoint) -> Vec<BinaryForm> {
    let field = p.g.field();
    let d = p.d;
    let x = BinaryForm::monomial(field, VarTag::Primal, 1, 0);
    let y = BinaryForm::monomial(field, VarTag::Primal, 1, 1);
    let mut out = Vec::with_capacity(2 * p.k + 4);
    for li in &p.l[1..] {
        let pow = power_of_linear(li, d - 1, VarTag::Primal);
        out.push(y.mul(&pow));
        out.push(x.mul(&pow));
    }
    let l0g = power_of_linear(&p.l[0], d - 2, VarTag::Primal).mul(&p.g.to_form(field, VarTag::Primal));
    out.push(x.mul(&l0g));
    out.push(y.mul(&l0g));
    let l0 = power_of_linear(&p.l[0], d - 1, VarTag::Primal);
    out.push(x.mul(&l0));
    out.push(y.mul(&l0));
    out
}

/// Affine dimension of the span of [`tangent_generators`].
pub fn tangent_dimension(p: &SupragenericPoint) -> usize {
    let rows: Vec<Vec<Scalar>> = tangent_generators(p)
        .into_iter()
        .map(|g| g.coeffs().to_vec())
        .collect();
    exactla::rank(&Matrix::from_rows(p.g.field(), rows).expect("equal lengths"))
}

/// Whether a rank may occur on the closure of the stratum of rank `d - k`.
pub fn rank_allowed(d: usize, k: usize, rank: usize) -> bool {
    (1..=k + 1).contains(&rank) || (d - k..=d).contains(&rank)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusFlag {
    pub special: Specialization,
    pub rank: usize,
    pub form: BinaryForm,
}

/// Ranks observed on random points of the parametrized stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCensus {
    pub d: usize,
    pub k: usize,
    pub samples: usize,
    /// rank -> count over all samples
    pub frequencies: BTreeMap<usize, usize>,
    /// the same counts split by specialization
    pub by_specialization: BTreeMap<Specialization, BTreeMap<usize, usize>>,
    /// samples of rank outside `{1..k+1} ∪ {d-k..d}`
    pub flagged: Vec<CensusFlag>,
    /// samples whose border rank exceeded `k + 2`
    pub border_violations: usize,
}

fn census_sample(
    d: usize,
    k: usize,
    field: Field,
    height: u64,
    seed: u64,
) -> Result<(Specialization, usize, usize, BinaryForm)> {
    let mut rng = seeded_rng(seed);
    let special = match rng.gen_range(0..4) {
        0 => Specialization::GEqualsL0,
        1 if k >= 1 => Specialization::Coincident,
        _ => Specialization::General,
    };
    let p = special_point(d, k, special, field, height, &mut rng)?;
    if p.f.is_zero() {
        return Ok((special, 0, 0, p.f));
    }
    let rank = waring_rank(&p.f)?.rank;
    let border = border_rank(&p.f)?;
    Ok((special, rank, border, p.f))
}

/// Samples the parametrization, a quarter of the points with `g = l_0` and a
/// quarter with two coincident linear forms, and records the ranks. Samples
/// run in parallel, each from its own seed drawn from `rng`.
pub fn stratum_census<R: Rng + ?Sized>(
    d: usize,
    k: usize,
    samples: usize,
    field: Field,
    height: u64,
    rng: &mut R,
) -> Result<RankCensus> {
    check_suprageneric(d, k)?;
    field.check_degree(d)?;
    let seeds: Vec<u64> = (0..samples).map(|_| rng.gen()).collect();
    let results: Vec<_> = seeds
        .par_iter()
        .map(|&s| census_sample(d, k, field, height, s))
        .collect::<Result<_>>()?;
    let mut census = RankCensus {
        d,
        k,
        samples,
        frequencies: BTreeMap::new(),
        by_specialization: BTreeMap::new(),
        flagged: Vec::new(),
        border_violations: 0,
    };
    for (special, rank, border, form) in results {
        *census.frequencies.entry(rank).or_insert(0) += 1;
        *census
            .by_specialization
            .entry(special)
            .or_default()
            .entry(rank)
            .or_insert(0) += 1;
        if border > k + 2 {
            census.border_violations += 1;
        }
        // the zero form lies in every closure
        if rank > 0 && !rank_allowed(d, k, rank) {
            census.flagged.push(CensusFlag { special, rank, form });
        }
    }
    Ok(census)
}
