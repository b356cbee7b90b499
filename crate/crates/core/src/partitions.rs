//! Partitions indexing multiple root loci of binary forms.
//!
//! A partition `λ = (λ_1 ≥ ... ≥ λ_d)` of `n` names the locus `Δ_λ` of forms
//! of degree `n` with `d` distinct roots of multiplicities `λ_i`, and `Δ_λ^∨`
//! is its projective dual. This module covers the combinatorics (refinement,
//! derived partitions, inclusion of duals), the dimension and degree formulas,
//! and random points of the conormal variety.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use crate::binpoly::{apolar_action, BinaryForm, LinearForm, VarTag};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Field, Scalar};

/// Largest `n` accepted by [`dual_included`].
pub const MAX_DUAL_INCLUSION_N: usize = 30;

/// A partition of `n`, stored with weakly decreasing parts. The empty
/// partition of 0 is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: &[usize]) -> Result<Partition> {
        if let Some(p) = parts.iter().position(|&x| x == 0) {
            return Err(Error::Constraint(format!(
                "partition parts must be positive, part {} is 0",
                p + 1
            )));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// The multiset view `{i: m_i}` over the parts that occur.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma separated parts such as `3,2,1,1`, optionally in parentheses.
    fn from_str(s: &str) -> Result<Partition> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut position = s.find(inner).unwrap_or(0);
        for piece in inner.split(',') {
            let part = piece.trim().parse::<usize>().map_err(|_| Error::Parse {
                position,
                message: format!("'{}' is not a nonnegative integer", piece.trim()),
            })?;
            parts.push(part);
            position += piece.len() + 1;
        }
        Partition::new(&parts)
    }
}

fn same_total(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::Constraint(format!(
            "partitions of different integers: {} has total {}, {} has total {}",
            a,
            a.n(),
            b,
            b.n()
        )));
    }
    Ok(())
}

/// Places the `items` (sorted decreasingly) into bins with the given
/// remaining capacities so that every bin is filled exactly.
fn exact_pack(items: &[usize], capacity: &mut [usize]) -> bool {
    let Some((&item, rest)) = items.split_first() else {
        return capacity.iter().all(|&c| c == 0);
    };
    for b in 0..capacity.len() {
        // bins with equal remaining capacity are interchangeable
        if capacity[b] < item || capacity[..b].contains(&capacity[b]) {
            continue;
        }
        capacity[b] -= item;
        let ok = exact_pack(rest, capacity);
        capacity[b] += item;
        if ok {
            return true;
        }
    }
    false
}

/// True when the parts of `mu` can be grouped into blocks summing to the
/// parts of `lambda`, i.e. when `Δ_λ ⊂ Δ_μ`.
pub fn refines(mu: &Partition, lambda: &Partition) -> Result<bool> {
    same_total(mu, lambda)?;
    if mu.len() < lambda.len() {
        return Ok(false);
    }
    let mut capacity = lambda.parts.clone();
    Ok(exact_pack(&mu.parts, &mut capacity))
}

/// Each part lowered by one, zeros dropped.
pub fn derived(lambda: &Partition) -> Partition {
    Partition {
        parts: lambda.parts.iter().filter(|&&p| p > 1).map(|p| p - 1).collect(),
    }
}

/// Places `items` into bins so that every bin gets at least its demand.
fn cover(items: &[usize], demand: &mut [isize], uncovered: usize) -> bool {
    let Some((&item, rest)) = items.split_first() else {
        return uncovered == 0;
    };
    let remaining: usize = rest.iter().sum::<usize>() + item;
    let needed: isize = demand.iter().filter(|&&x| x > 0).sum();
    if (remaining as isize) < needed {
        return false;
    }
    for b in 0..demand.len() {
        // bins with the same outstanding demand are interchangeable
        let key = demand[b].max(0);
        if demand[..b].iter().any(|&x| x.max(0) == key) {
            continue;
        }
        let before = demand[b];
        demand[b] -= item as isize;
        let now_covered = before > 0 && demand[b] <= 0;
        let ok = cover(rest, demand, uncovered - now_covered as usize);
        demand[b] = before;
        if ok {
            return true;
        }
    }
    false
}

/// Inclusion `Δ_λ^∨ ⊂ Δ_μ^∨` of dual varieties: `|λ'| ≤ |μ'|` and the parts of
/// `λ'` can be raised, keeping their number, to a partition refined by `μ'`.
///
/// Equivalently the parts of `μ'` can be distributed over one bin per part of
/// `λ'` so that bin `i` receives at least `λ'_i`; that search is what runs.
pub fn dual_included(lambda: &Partition, mu: &Partition) -> Result<bool> {
    same_total(lambda, mu)?;
    if lambda.n() > MAX_DUAL_INCLUSION_N {
        return Err(Error::Constraint(format!(
            "dual inclusion is limited to n <= {MAX_DUAL_INCLUSION_N}"
        )));
    }
    let (l, m) = (derived(lambda), derived(mu));
    if l.n() > m.n() {
        return Ok(false);
    }
    if l.is_empty() {
        return Ok(m.is_empty());
    }
    let mut demand: Vec<isize> = l.parts.iter().map(|&p| p as isize).collect();
    Ok(cover(&m.parts, &mut demand, l.len()))
}

/// `dim Δ_λ`: the number of parts.
pub fn dim_delta(lambda: &Partition) -> usize {
    lambda.len()
}

/// `dim Δ_λ^∨ = n - m_1 - 1`.
pub fn dim_dual(lambda: &Partition) -> Result<usize> {
    let n = lambda.n();
    let m1 = lambda.multiplicity(1);
    if m1 == n {
        return Err(Error::Constraint(format!(
            "the dual of Δ_{lambda} is degenerate: every part is 1"
        )));
    }
    Ok(n - m1 - 1)
}

fn product_of_factorials(lambda: &Partition, skip_ones: bool) -> BigInt {
    lambda
        .multiplicities()
        .iter()
        .filter(|(&part, _)| !(skip_ones && part == 1))
        .map(|(_, &m)| factorial(m))
        .product()
}

/// `deg Δ_λ = d! λ_1 ⋯ λ_d / (m_1! ⋯ m_p!)`.
pub fn deg_delta(lambda: &Partition) -> BigInt {
    let parts: BigInt = lambda.parts.iter().map(|&p| BigInt::from(p)).product();
    factorial(lambda.len()) * parts / product_of_factorials(lambda, false)
}

/// `deg Δ_λ^∨ = (d+1)! (λ_1 - 1) ⋯ (λ_d - 1) / (m_2! ⋯ m_p!)`, defined when
/// the dual is a hypersurface, i.e. `m_1 = 0`.
pub fn deg_dual(lambda: &Partition) -> Result<BigInt> {
    if lambda.is_empty() || lambda.multiplicity(1) > 0 {
        return Err(Error::Constraint(format!(
            "Δ_{lambda}^∨ is not a hypersurface (the degree formula needs no parts equal to 1)"
        )));
    }
    let parts: BigInt = lambda.parts.iter().map(|&p| BigInt::from(p - 1)).product();
    Ok(factorial(lambda.len() + 1) * parts / product_of_factorials(lambda, true))
}

/// `(3, 2^k, 1^(d-2k-3))`, whose dual is the closure of the rank `d-k` stratum.
pub fn suprageneric_partition(d: usize, k: usize) -> Result<Partition> {
    if 2 * k + 3 > d {
        return Err(Error::Constraint(format!(
            "need d - 2k - 3 >= 0, got d = {d}, k = {k}"
        )));
    }
    let generic = (d + 2) / 2;
    if d - k <= generic {
        return Err(Error::Constraint(format!(
            "rank d - k = {} is not above the generic rank {generic} for d = {d}",
            d - k
        )));
    }
    let mut parts = vec![3];
    parts.extend(std::iter::repeat_n(2, k));
    parts.extend(std::iter::repeat_n(1, d - 2 * k - 3));
    Partition::new(&parts)
}

/// A point `(f, g)` of the conormal variety of `Δ_λ`: `f` has roots
/// `(s_i : t_i)` with multiplicities `λ_i` and `g` is a hyperplane tangent to
/// `Δ_λ` at `f`.
#[derive(Clone, Debug)]
pub struct ConormalSample {
    pub partition: Partition,
    pub points: Vec<(Scalar, Scalar)>,
    /// `g_i` of degree `λ_i - 2`, absent when `λ_i = 1`.
    pub cofactors: Vec<Option<BinaryForm>>,
    pub f: BinaryForm,
    pub g: BinaryForm,
}

fn random_point<R: Rng + ?Sized>(field: Field, rng: &mut R, height: u64) -> (Scalar, Scalar) {
    loop {
        let (s, t) = (field.random(rng, height), field.random(rng, height));
        if !(s.is_zero() && t.is_zero()) {
            return (s, t);
        }
    }
}

/// Random distinct points and random nonzero cofactors.
pub fn conormal_sample<R: Rng + ?Sized>(
    lambda: &Partition,
    field: Field,
    height: u64,
    rng: &mut R,
) -> Result<ConormalSample> {
    if lambda.parts.first().is_none_or(|&p| p < 2) {
        return Err(Error::Constraint(format!(
            "Δ_{lambda} has no conormal points with g ≠ 0: no part is at least 2"
        )));
    }
    let n = lambda.n();
    field.check_degree(n)?;
    let d = lambda.len();
    loop {
        let mut points: Vec<(Scalar, Scalar)> = Vec::with_capacity(d);
        while points.len() < d {
            let (s, t) = random_point(field, rng, height);
            let fresh = points.iter().all(|(a, b)| !(a * &t - b * &s).is_zero());
            if fresh {
                points.push((s, t));
            }
        }
        let mut f = BinaryForm::new(field, VarTag::Primal, vec![field.one()]);
        let mut g = BinaryForm::zero(field, VarTag::Dual, n);
        let mut cofactors = Vec::with_capacity(d);
        for ((s, t), &part) in points.iter().zip(&lambda.parts) {
            let root = LinearForm::new_unchecked(t.clone(), -s);
            f = f.mul(&root.to_form(field, VarTag::Primal).pow(part));
            if part < 2 {
                cofactors.push(None);
                continue;
            }
            let gi = loop {
                let gi = BinaryForm::new(
                    field,
                    VarTag::Dual,
                    (0..=part - 2).map(|_| field.random(rng, height)).collect(),
                );
                if !gi.is_zero() {
                    break gi;
                }
            };
            let dual_point = LinearForm::new_unchecked(s.clone(), t.clone());
            g = g.add(&dual_point.to_form(field, VarTag::Dual).pow(n - part + 2).mul(&gi));
            cofactors.push(Some(gi));
        }
        if g.is_zero() {
            continue;
        }
        return Ok(ConormalSample {
            partition: lambda.clone(),
            points,
            cofactors,
            f,
            g,
        });
    }
}

/// The operator `Π (t_i x - s_i y)^(λ_i - 1)`.
pub fn annihilator(sample: &ConormalSample) -> BinaryForm {
    let field = sample.f.field();
    let mut op = BinaryForm::new(field, VarTag::Primal, vec![field.one()]);
    for ((s, t), &part) in sample.points.iter().zip(sample.partition.parts()) {
        let root = LinearForm::new_unchecked(t.clone(), -s);
        op = op.mul(&root.to_form(field, VarTag::Primal).pow(part - 1));
    }
    op
}

/// Whether `Π (t_i x - s_i y)^(λ_i - 1)`, read as a differential operator in
/// `u, v`, kills `g`.
pub fn annihilation_check(sample: &ConormalSample) -> Result<bool> {
    Ok(apolar_action(&annihilator(sample), &sample.g)?.is_zero())
}
