//! Dense univariate polynomials over a [`Field`], coefficients stored low to
//! high. Used for the dehomogenized charts of binary forms.

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UniPoly {
    pub field: Field,
    /// Trimmed: the last entry is nonzero unless the polynomial is zero (empty).
    pub coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn one(field: Field) -> Self {
        UniPoly::new(field, vec![field.one()])
    }

    /// The polynomial of degree `< xs.len()` through `(xs[i], ys[i])`, by
    /// Newton's divided differences. The nodes must be distinct.
    pub fn interpolate(field: Field, xs: &[Scalar], ys: &[Scalar]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = (&xs[i] - &xs[i - level]).inv().expect("distinct nodes");
                dd[i] = (&dd[i] - &dd[i - 1]) * den;
            }
        }
        let mut out = UniPoly::new(field, vec![]);
        let mut basis = UniPoly::one(field);
        for i in 0..n {
            out = out.add(&basis.scale(&dd[i]));
            basis = basis.mul(&UniPoly::new(field, vec![-&xs[i], field.one()]));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
            })
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UniPoly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.from_u64(i as u64) * c)
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                UniPoly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)
            })
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(self.field, vec![]);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        UniPoly::new(self.field, out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = divisor.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::new(self.field, vec![]), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &c * dc;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(self.field, quot), UniPoly::new(self.field, rem))
    }

    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree decomposition of a nonconstant polynomial: returns
    /// `(multiplicity, monic squarefree factor)` pairs with nonconstant
    /// factors. Requires characteristic 0 or larger than the degree.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UniPoly)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0);
        let mut c = fp.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            if !a.is_constant() {
                out.push((i, a));
            }
            i += 1;
        }
        out
    }
}
