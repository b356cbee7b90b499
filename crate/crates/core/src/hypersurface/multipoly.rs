//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::scalar::{Field, Scalar};

/// A polynomial in `nvars` variables named `b_0, b_1, ...`. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The polynomial `c · b_i`.
    pub fn variable(field: Field, nvars: usize, i: usize, c: Scalar) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(field, nvars);
        p.add_term(e, c);
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Total degrees of the terms, smallest and largest; `None` when zero.
    pub fn degree_range(&self) -> Option<(u32, u32)> {
        let degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        degs.fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_range().is_none_or(|(lo, hi)| lo == hi)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Exact division by `b_i`; `None` if some term is not divisible.
    pub fn div_variable(&self, i: usize) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return None;
            }
            let mut e = e.clone();
            e[i] -= 1;
            out.add_term(e, c.clone());
        }
        Some(out)
    }

    /// `∂/∂b_i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * self.field.from_u64(e[i] as u64));
        }
        out
    }

    /// Coefficients mapped into `field`; rational coefficients must have
    /// denominators invertible there.
    pub fn to_field(&self, field: Field) -> Result<MultiPoly> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mut out = MultiPoly::zero(field, self.nvars);
        for (e, c) in &self.terms {
            let r = c.as_rational().expect("conversion starts from the rationals");
            out.add_term(e.clone(), field.ratio(r.numer(), r.denom())?);
        }
        Ok(out)
    }

    /// Value at `point`, whose entries must lie in the polynomial's field.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let maxdeg = self.terms.keys().flatten().copied().max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .map(|x| {
                let mut row = vec![self.field.one()];
                for _ in 0..maxdeg {
                    let next = row.last().unwrap() * x;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t * &powers[i][k as usize];
                }
            }
            acc = acc + t;
        }
        acc
    }
}

/// Determinant of a square matrix of polynomials, by expansion over the
/// subsets of used columns (`2^n` states).
pub fn symbolic_determinant(rows: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = rows.len();
    assert!(n > 0 && n < 30 && rows.iter().all(|r| r.len() == n));
    let (field, nvars) = (rows[0][0].field(), rows[0][0].nvars());
    let mut layer: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    layer.insert(0, MultiPoly::constant(field, nvars, field.one()));
    for row in rows {
        let mut next: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (&mask, acc) in &layer {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                // inversions with the columns already used to the right
                let inversions = (mask >> (c + 1)).count_ones();
                let mut term = acc.mul(entry);
                if inversions % 2 == 1 {
                    term = term.scale(&-field.one());
                }
                let slot = next
                    .entry(mask | (1 << c))
                    .or_insert_with(|| MultiPoly::zero(field, nvars));
                *slot = slot.add(&term);
            }
        }
        layer = next;
    }
    layer
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| MultiPoly::zero(field, nvars))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest exponent vectors first
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("b{i}") } else { format!("b{i}^{k}") })
                .collect();
            if vars.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
