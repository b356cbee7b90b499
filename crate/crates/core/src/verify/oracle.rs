//! Brute-force Waring rank over a small prime field.
//!
//! Independent of the apolarity code: coefficients are plain `u64` residues
//! and the rank is the least `r` such that the form lies in the span of `r`
//! of the `p + 1` powers `l^d`, `l` running over the points of `P^1(F_p)`.
//! Every subset of each size is tried, so the answer is exact.

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Coefficients of `(a x + b y)^d` modulo `p`, for the `p + 1` points
/// `(1 : t)` and `(0 : 1)`.
pub fn power_vectors(p: u64, d: usize) -> Vec<Vec<u64>> {
    let mut binom = vec![1u64; d + 1];
    for i in 1..=d {
        binom[i] = binom[i - 1] * ((d + 1 - i) as u64 % p) % p * inv_mod(i as u64 % p, p) % p;
    }
    let mut points: Vec<(u64, u64)> = (0..p).map(|t| (1, t)).collect();
    points.push((0, 1));
    points
        .into_iter()
        .map(|(a, b)| {
            (0..=d)
                .map(|i| binom[i] * pow_mod(a, (d - i) as u64, p) % p * pow_mod(b, i as u64, p) % p)
                .collect()
        })
        .collect()
}

/// Echelon basis kept as rows with distinct pivot columns.
struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + p - c * r % p) % p;
                }
            }
        }
        v
    }

    /// Adds `v`; false when it was already in the span.
    fn push(&mut self, v: &[u64]) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[pivot], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + self.p - c * r % self.p) % self.p;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

fn search(powers: &[Vec<u64>], target: &[u64], start: usize, left: usize, basis: &Echelon) -> bool {
    if left == 0 {
        return basis.contains(target);
    }
    for i in start..powers.len() {
        if powers.len() - i < left {
            break;
        }
        let mut next = Echelon {
            p: basis.p,
            rows: basis.rows.clone(),
        };
        // dependent subsets are covered by smaller sizes
        if next.push(&powers[i]) && search(powers, target, i + 1, left - 1, &next) {
            return true;
        }
    }
    false
}

/// Waring rank over `F_p` of the form with residues `coeffs` (coefficient of
/// `x^(d-i) y^i` at index `i`). Returns `None` when the form is outside the
/// span of all powers, which cannot happen for `p > d`.
pub fn fp_waring_rank(coeffs: &[u64], p: u64) -> Option<usize> {
    let d = coeffs.len() - 1;
    let target: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
    if target.iter().all(|&c| c == 0) {
        return Some(0);
    }
    let powers = power_vectors(p, d);
    (1..=powers.len().min(d + 1)).find(|&r| search(&powers, &target, 0, r, &Echelon::new(p)))
}
