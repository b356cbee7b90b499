//! The hypersurface of binary forms of degree `2k+1` and rank `k+2`.
//!
//! Write `f = Σ binom(d, i) a_i x^(d-i) y^i` with `d = 2k+1`. The Hankel
//! matrix `H = (a_(r+c))` has `k+1` rows and `k+2` columns. Bordering it with
//! the row of monomials `u^(k+1), u^k v, ..., v^(k+1)` gives a determinant
//!
//! ```text
//! q(u, v) = Σ_j b_j u^(k+1-j) v^j,   b_j = (-1)^j det(H without column j)
//! ```
//!
//! and the closure of the rank `k+2` stratum is the zero set of
//! `D(f) = disc(q)`, a form of degree `2k(k+1)` in the `a_i`. `D` is always
//! evaluated as the discriminant polynomial in the `b_j` composed with the
//! minors; its gradient comes from the chain rule.
//!
//! The `a_i` are the coordinates in which the Hankel matrix has the same
//! ranks as the catalecticants of `f`; the contraction matrices of
//! [`crate::apolarity::catalecticant`] differ from `H` by invertible diagonal
//! scalings.

mod multipoly;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use multipoly::{symbolic_determinant, MultiPoly};

use crate::binpoly::{interpolate, BinaryForm, VarTag};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};
use crate::scalar::{Field, Scalar};

/// Largest `k` for which the discriminant is expanded.
pub const MAX_K: usize = 6;

/// The discriminant of the generic form of degree `k+1`, as a polynomial in
/// its coefficients `b_0..b_(k+1)`, with its partial derivatives.
#[derive(Debug)]
pub struct HypersurfaceContext {
    k: usize,
    disc_in_b: MultiPoly,
    partials: Vec<MultiPoly>,
}

impl HypersurfaceContext {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `2k + 1`
    pub fn degree(&self) -> usize {
        2 * self.k + 1
    }

    pub fn disc_in_b(&self) -> &MultiPoly {
        &self.disc_in_b
    }
}

/// `(-1)^(m(m-1)/2) Res(p, ∂p/∂u) / b_0` for `p = Σ b_j u^(m-j) v^j`.
fn generic_discriminant(m: usize) -> MultiPoly {
    let q = Field::Rationals;
    let nvars = m + 1;
    let p: Vec<MultiPoly> = (0..=m).map(|j| MultiPoly::variable(q, nvars, j, q.one())).collect();
    let dp: Vec<MultiPoly> = (0..m)
        .map(|j| MultiPoly::variable(q, nvars, j, q.from_u64((m - j) as u64)))
        .collect();
    let n = m - 1;
    let size = m + n;
    let zero = MultiPoly::zero(q, nvars);
    let rows: Vec<Vec<MultiPoly>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let (coeffs, shift) = if i < n { (&p, i) } else { (&dp, i - n) };
                    j.checked_sub(shift)
                        .and_then(|t| coeffs.get(t))
                        .cloned()
                        .unwrap_or_else(|| zero.clone())
                })
                .collect()
        })
        .collect();
    let res = symbolic_determinant(&rows);
    let disc = res.div_variable(0).expect("the resultant is divisible by b_0");
    if (m * (m - 1) / 2) % 2 == 1 {
        disc.scale(&-q.one())
    } else {
        disc
    }
}

/// Builds (or fetches from a process-wide cache) the context for `k`.
pub fn context_make(k: usize) -> Result<Arc<HypersurfaceContext>> {
    if k == 0 {
        return Err(Error::Constraint("the hypersurface needs k >= 1".into()));
    }
    if k > MAX_K {
        return Err(Error::Constraint(format!(
            "k = {k} exceeds the expansion limit k <= {MAX_K}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HypersurfaceContext>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ctx) = cache.lock().unwrap().get(&k) {
        return Ok(ctx.clone());
    }
    let disc_in_b = generic_discriminant(k + 1);
    let partials = (0..k + 2).map(|j| disc_in_b.partial(j)).collect();
    let ctx = Arc::new(HypersurfaceContext {
        k,
        disc_in_b,
        partials,
    });
    cache.lock().unwrap().insert(k, ctx.clone());
    Ok(ctx)
}

fn check_degree(ctx: &HypersurfaceContext, f: &BinaryForm) -> Result<()> {
    if f.degree() != ctx.degree() {
        return Err(Error::Degree(format!(
            "k = {} needs a form of degree {}, got {}",
            ctx.k,
            ctx.degree(),
            f.degree()
        )));
    }
    f.field().check_degree(f.degree())
}

fn k_of(f: &BinaryForm) -> Result<usize> {
    let d = f.degree();
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Degree(format!("expected odd degree 2k+1 >= 3, got {d}")));
    }
    Ok((d - 1) / 2)
}

/// `a_i = c_i / binom(d, i)`.
pub fn normalized_coordinates(f: &BinaryForm) -> Vec<Scalar> {
    let field = f.field();
    let d = f.degree();
    (0..=d)
        .map(|i| f.coeff(i) * field.binomial(d, i).inv().expect("char exceeds d"))
        .collect()
}

/// The form with normalized coordinates `a`.
pub fn from_normalized(field: Field, a: &[Scalar]) -> BinaryForm {
    let d = a.len() - 1;
    BinaryForm::new(
        field,
        VarTag::Primal,
        a.iter().enumerate().map(|(i, x)| x * field.binomial(d, i)).collect(),
    )
}

/// The `(k+1) × (k+2)` Hankel matrix `(a_(r+c))`.
pub fn hankel(f: &BinaryForm) -> Result<Matrix> {
    let k = k_of(f)?;
    f.field().check_degree(f.degree())?;
    let a = normalized_coordinates(f);
    Ok(Matrix::from_fn(f.field(), k + 1, k + 2, |r, c| a[r + c].clone()))
}

fn without_column(m: &Matrix, j: usize) -> Matrix {
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| c != j).collect();
    m.select_columns(&cols)
}

/// The signed maximal minors `b_0, ..., b_(k+1)`.
pub fn minors(f: &BinaryForm) -> Result<Vec<Scalar>> {
    let h = hankel(f)?;
    (0..h.cols())
        .map(|j| {
            let det = exactla::determinant(&without_column(&h, j))?;
            Ok(if j % 2 == 1 { -det } else { det })
        })
        .collect()
}

/// `q(u, v) = Σ b_j u^(k+1-j) v^j`.
pub fn q_form(f: &BinaryForm) -> Result<BinaryForm> {
    Ok(BinaryForm::new(f.field(), VarTag::Dual, minors(f)?))
}

fn eval_in(p: &MultiPoly, point: &[Scalar]) -> Result<Scalar> {
    let field = point[0].field();
    if field == p.field() {
        return Ok(p.eval(point));
    }
    Ok(p.to_field(field)?.eval(point))
}

/// `D(f) = disc(q_f)`.
pub fn defining_value(ctx: &HypersurfaceContext, f: &BinaryForm) -> Result<Scalar> {
    check_degree(ctx, f)?;
    eval_in(&ctx.disc_in_b, &minors(f)?)
}

/// `∂b_j/∂a_i` for all `j` (rows) and `i` (columns): `a_i` sits at the
/// positions `(r, c)` with `r + c = i`, and the derivative of a determinant
/// in an entry is the cofactor there.
pub fn minor_jacobian(f: &BinaryForm) -> Result<Vec<Vec<Scalar>>> {
    let h = hankel(f)?;
    let field = f.field();
    let d = f.degree();
    let mut jac = vec![vec![field.zero(); d + 1]; h.cols()];
    for (j, out) in jac.iter_mut().enumerate() {
        let sub = without_column(&h, j);
        let n = sub.rows();
        for r in 0..n {
            for c in 0..n {
                let minor = exactla::determinant(&sub.minor_matrix(r, c))?;
                let orig = if c < j { c } else { c + 1 };
                let sign = (r + c + j) % 2 == 1;
                let i = r + orig;
                out[i] = if sign { &out[i] - &minor } else { &out[i] + &minor };
            }
        }
    }
    Ok(jac)
}

/// `∂D/∂a_i`, `i = 0..=2k+1`, by the chain rule through the minors.
pub fn defining_gradient(ctx: &HypersurfaceContext, f: &BinaryForm) -> Result<Vec<Scalar>> {
    check_degree(ctx, f)?;
    let b = minors(f)?;
    let outer: Vec<Scalar> = ctx
        .partials
        .iter()
        .map(|p| eval_in(p, &b))
        .collect::<Result<_>>()?;
    let jac = minor_jacobian(f)?;
    let field = f.field();
    Ok((0..=f.degree())
        .map(|i| {
            outer
                .iter()
                .zip(&jac)
                .fold(field.zero(), |acc, (o, row)| acc + o * &row[i])
        })
        .collect())
}

/// `2k(k+1)`: the discriminant has degree `2k` in the `b_j`, each of degree
/// `k+1` in the `a_i`.
pub fn degree_of_equation(ctx: &HypersurfaceContext) -> usize {
    let (lo, hi) = ctx.disc_in_b.degree_range().expect("nonzero discriminant");
    assert_eq!((lo, hi), (2 * ctx.k as u32, 2 * ctx.k as u32));
    2 * ctx.k * (ctx.k + 1)
}

/// Nodes `1, 1/2, 1/4, ...` over the rationals, `1, 2, 3, ...` over `F_p`.
fn nodes(field: Field, count: usize) -> Vec<Scalar> {
    match field {
        Field::Rationals => {
            let half = field.from_i64(2).inv().unwrap();
            (0..count as u32).map(|m| half.pow(m)).collect()
        }
        Field::Prime(_) => (1..=count as u64).map(|t| field.from_u64(t)).collect(),
    }
}

/// Coefficients of `t ↦ D(f0 + t f1)`, recovered exactly by interpolation
/// from `degree_of_equation + 3` values.
pub fn restriction_to_line(
    ctx: &HypersurfaceContext,
    f0: &BinaryForm,
    f1: &BinaryForm,
) -> Result<Vec<Scalar>> {
    check_degree(ctx, f0)?;
    check_degree(ctx, f1)?;
    let field = f0.field();
    let count = degree_of_equation(ctx) + 3;
    if field.characteristic() != 0 && (field.characteristic() as u128) <= count as u128 {
        return Err(Error::Field(format!(
            "interpolation needs more than {count} field elements"
        )));
    }
    let mut ts = nodes(field, count);
    ts.push(field.zero());
    let values: Vec<Scalar> = ts
        .iter()
        .map(|t| defining_value(ctx, &f0.add(&f1.scale(t))))
        .collect::<Result<_>>()?;
    Ok(interpolate(field, &ts, &values))
}

/// Degree of `t ↦ D(f0 + t f1)`; equals `2k(k+1)` for a general line.
pub fn interpolated_degree(ctx: &HypersurfaceContext, f0: &BinaryForm, f1: &BinaryForm) -> Result<usize> {
    Ok(restriction_to_line(ctx, f0, f1)?.len().saturating_sub(1))
}

/// First order check of the gradient along the direction with normalized
/// coordinates `h`: the secant slopes `(D(f + t h) - D(f)) / t` at
/// `t = 1/2^m` converge to `∇D · h`. The limit is taken exactly as the linear
/// coefficient of the interpolated restriction to the line.
pub fn secant_check(ctx: &HypersurfaceContext, f: &BinaryForm, h: &[Scalar]) -> Result<bool> {
    let field = f.field();
    let direction = from_normalized(field, h);
    let line = restriction_to_line(ctx, f, &direction)?;
    let slope = line.get(1).cloned().unwrap_or_else(|| field.zero());
    let grad = defining_gradient(ctx, f)?;
    let dot = grad.iter().zip(h).fold(field.zero(), |acc, (g, x)| acc + g * x);
    Ok(slope == dot)
}

/// Outcome of evaluating `D` and its gradient on random forms of a given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularProbe {
    pub k: usize,
    pub rank: usize,
    pub samples: usize,
    pub zero_value: usize,
    pub zero_gradient: usize,
}

/// Samples forms of degree `2k+1` and rank `rank` and counts how often `D`
/// and its gradient vanish.
pub fn probe_singular<R: rand::Rng + ?Sized>(
    ctx: &HypersurfaceContext,
    rank: usize,
    samples: usize,
    field: Field,
    height: u64,
    rng: &mut R,
) -> Result<SingularProbe> {
    let mut probe = SingularProbe {
        k: ctx.k,
        rank,
        samples,
        zero_value: 0,
        zero_gradient: 0,
    };
    for _ in 0..samples {
        let (f, _) = crate::strata::sample_rank_r(ctx.degree(), rank, field, height, rng)?;
        probe.zero_value += defining_value(ctx, &f)?.is_zero() as usize;
        probe.zero_gradient += defining_gradient(ctx, &f)?.iter().all(Scalar::is_zero) as usize;
    }
    Ok(probe)
}

#[cfg(test)]
mod tests;
