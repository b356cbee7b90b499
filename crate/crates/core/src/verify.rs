//! Acceptance checks run with fixed seeds.
//!
//! Every criterion draws from its own RNG derived from the run seed, so a
//! report depends only on `(suite, seed, k)` and not on scheduling; criteria
//! run in parallel. A time budget may cut a run short, in which case the
//! report is flagged partial and the unfinished criteria say so.

pub mod oracle;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::apolarity::{border_rank, waring_rank};
use crate::binpoly::{discriminant, power_of_linear, roots_in_field, BinaryForm, LinearForm, VarTag};
use crate::error::{Error, Result};
use crate::hypersurface::{
    context_make, defining_gradient, defining_value, interpolated_degree, secant_check,
};
use crate::partitions::{
    annihilation_check, conormal_sample, dim_dual, dual_included, refines, suprageneric_partition,
    Partition,
};
use crate::scalar::{Field, Scalar};
use crate::strata::{
    generic_rank, rank_raising_chain, special_point, stratum_census, suprageneric_sample,
    tangent_dimension, Specialization,
};
use crate::{seeded_rng, SeedRng};

/// Height of random integer data in the checks over the rationals.
const HEIGHT: u64 = 50;
/// Smaller height for the hypersurface checks, whose values grow fast.
const HYP_HEIGHT: u64 = 10;
/// Height of the random forms standing in for general points off the
/// hypersurface; small heights hit the discriminant too often.
const GENERIC_HEIGHT: u64 = 1000;
/// Failing instances quoted per criterion.
const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Apolarity,
    Strata,
    Partitions,
    Hypersurface,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Apolarity => "apolarity",
            Suite::Strata => "strata",
            Suite::Partitions => "partitions",
            Suite::Hypersurface => "hypersurface",
            Suite::All => "all",
        }
    }

    /// Criterion numbers belonging to the suite.
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Apolarity => vec![1, 2],
            Suite::Strata => vec![3, 4, 5],
            Suite::Partitions => vec![8],
            Suite::Hypersurface => vec![6, 7, 9],
            Suite::All => (1..=9).collect(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "apolarity" => Ok(Suite::Apolarity),
            "strata" => Ok(Suite::Strata),
            "partitions" => Ok(Suite::Partitions),
            "hypersurface" => Ok(Suite::Hypersurface),
            "all" => Ok(Suite::All),
            other => Err(Error::Constraint(format!(
                "unknown suite {other:?}; expected apolarity, strata, partitions, hypersurface or all"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Documented as out of reach; nothing is computed.
    NotReproducible,
    /// The time budget ran out before or during the criterion.
    OutOfBudget,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotReproducible => "NOT-REPRODUCIBLE",
            Status::OutOfBudget => "OUT-OF-BUDGET",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub checks: usize,
    pub failures: usize,
    /// Observations printed under the summary line: counts, ratios, and the
    /// first few failing instances.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Wall-clock budget for the whole run.
    pub budget: Option<Duration>,
    /// Restricts the hypersurface criteria to one `k`.
    pub k: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            budget: None,
            k: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub partial: bool,
    pub criteria: Vec<CriterionReport>,
}

impl VerifyReport {
    /// No criterion failed and the run was complete.
    pub fn passed(&self) -> bool {
        !self.partial && self.criteria.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {} (seed {})", self.suite, self.seed)?;
        for c in &self.criteria {
            writeln!(
                f,
                "criterion {}: {} - {} ({} checks, {} failures)",
                c.id,
                c.status.name(),
                c.title,
                c.checks,
                c.failures
            )?;
            for note in &c.notes {
                writeln!(f, "    {note}")?;
            }
        }
        if self.partial {
            writeln!(f, "partial report: time budget exceeded")?;
        }
        Ok(())
    }
}

/// Shared state of one run.
struct Run {
    seed: u64,
    deadline: Option<Instant>,
    k: Option<usize>,
}

impl Run {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn rng(&self, id: u8, salt: u64) -> SeedRng {
        seeded_rng(
            self.seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(u64::from(id) << 32)
                .wrapping_add(salt),
        )
    }

    fn ks(&self) -> Vec<usize> {
        match self.k {
            Some(k) => vec![k],
            None => vec![1, 2, 3],
        }
    }
}

/// Running count of checks for one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    examples: Vec<String>,
    notes: Vec<String>,
    out_of_budget: bool,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    /// A library error where a value was expected counts as a failure.
    fn check_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: error {e}", describe())),
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures += other.failures;
        for e in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(e);
            }
        }
        self.notes.extend(other.notes);
        self.out_of_budget |= other.out_of_budget;
    }

    fn finish(self, id: u8) -> CriterionReport {
        let status = if self.out_of_budget {
            Status::OutOfBudget
        } else if self.failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut notes = self.notes;
        notes.extend(self.examples.into_iter().map(|e| format!("failed: {e}")));
        CriterionReport {
            id,
            title: title(id),
            status,
            checks: self.checks,
            failures: self.failures,
            notes,
        }
    }
}

fn title(id: u8) -> &'static str {
    match id {
        1 => "rank rule against the brute-force rank over F_7 and F_11",
        2 => "generic rank and border rank of random forms",
        3 => "structure of the suprageneric strata",
        4 => "rank census of the stratum closures and rank raising chains",
        5 => "tangent dimensions of the stratum parametrization",
        6 => "equation of the hypersurface of degree 2k+1 forms of rank k+2",
        7 => "singular locus probes and the gradient",
        8 => "partition calculus",
        9 => "computations outside desk scale",
        _ => "unknown criterion",
    }
}

/// Runs the criteria of `suite`.
pub fn run(suite: Suite, options: &VerifyOptions) -> Result<VerifyReport> {
    if let Some(k) = options.k {
        if !(1..=crate::hypersurface::MAX_K).contains(&k) {
            return Err(Error::Constraint(format!(
                "k must lie in 1..={}, got {k}",
                crate::hypersurface::MAX_K
            )));
        }
    }
    let run = Run {
        seed: options.seed,
        deadline: options.budget.map(|b| Instant::now() + b),
        k: options.k,
    };
    let criteria: Vec<CriterionReport> = suite
        .criteria()
        .into_par_iter()
        .map(|id| run_criterion(&run, id))
        .collect();
    let partial = criteria.iter().any(|c| c.status == Status::OutOfBudget);
    Ok(VerifyReport {
        suite,
        seed: options.seed,
        partial,
        criteria,
    })
}

/// Runs a single criterion by number.
pub fn run_one(id: u8, options: &VerifyOptions) -> Result<CriterionReport> {
    if !(1..=9).contains(&id) {
        return Err(Error::Constraint(format!("criteria are numbered 1..=9, got {id}")));
    }
    let run = Run {
        seed: options.seed,
        deadline: options.budget.map(|b| Instant::now() + b),
        k: options.k,
    };
    Ok(run_criterion(&run, id))
}

fn run_criterion(run: &Run, id: u8) -> CriterionReport {
    if id == 9 {
        return CriterionReport {
            id,
            title: title(id),
            status: Status::NotReproducible,
            checks: 0,
            failures: 0,
            notes: vec![
                "the degrees 10, 24, 36 of the singular components for k = 3 need a Groebner basis computation; criterion 7 probes the singular locus by sampling instead".into(),
                "the closure equalities of the rank strata are set-theoretic and cannot be certified by sampling; criteria 3, 4 and 6 check membership in both directions".into(),
            ],
        };
    }
    if run.expired() {
        let mut t = Tally {
            out_of_budget: true,
            ..Tally::default()
        };
        t.note("not started");
        return t.finish(id);
    }
    let tally = match id {
        1 => criterion_rank_oracle(run),
        2 => criterion_generic_rank(run),
        3 => criterion_suprageneric(run),
        4 => criterion_census(run),
        5 => criterion_tangent(run),
        6 => criterion_hypersurface(run),
        7 => criterion_singular(run),
        8 => criterion_partitions(run),
        _ => unreachable!("criterion numbers are validated"),
    };
    tally.finish(id)
}

/// Runs `cell` on each item in parallel with its own RNG and merges the
/// tallies in item order.
fn cells<T: Sync>(run: &Run, id: u8, items: &[T], cell: impl Fn(&T, &mut SeedRng) -> Tally + Sync) -> Tally {
    let parts: Vec<Tally> = items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            if run.expired() {
                return Tally {
                    out_of_budget: true,
                    ..Tally::default()
                };
            }
            cell(item, &mut run.rng(id, i as u64 + 1))
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.absorb(p);
    }
    total
}

fn random_form<R: Rng + ?Sized>(field: Field, d: usize, height: u64, rng: &mut R) -> BinaryForm {
    loop {
        let f = BinaryForm::new(field, VarTag::Primal, (0..=d).map(|_| field.random(rng, height)).collect());
        if !f.is_zero() {
            return f;
        }
    }
}

fn valid_pairs(max_d: usize) -> Vec<(usize, usize)> {
    (3..=max_d)
        .flat_map(|d| (0..=(d - 3) / 2).map(move |k| (d, k)))
        .collect()
}

// ---------------------------------------------------------------- criterion 1

/// Sum of `terms` distinct `F_p`-rational powers with random coefficients, or
/// a uniformly random form when `terms == 0`.
fn stratified_form<R: Rng + ?Sized>(p: u64, d: usize, terms: usize, rng: &mut R) -> BinaryForm {
    let field = Field::Prime(p);
    loop {
        let f = if terms == 0 {
            random_form(field, d, p, rng)
        } else {
            let mut points: Vec<u64> = (0..=p).collect();
            let mut f = BinaryForm::zero(field, VarTag::Primal, d);
            for _ in 0..terms {
                let t = points.swap_remove(rng.gen_range(0..points.len()));
                let l = if t == p {
                    LinearForm::new(field.zero(), field.one())
                } else {
                    LinearForm::new(field.one(), field.from_u64(t))
                }
                .expect("nonzero point");
                let c = field.from_u64(rng.gen_range(1..p));
                f = f.add(&power_of_linear(&l, d, VarTag::Primal).scale(&c));
            }
            f
        };
        if !f.is_zero() {
            return f;
        }
    }
}

fn criterion_rank_oracle(run: &Run) -> Tally {
    const TOTAL: usize = 500;
    let cellset: Vec<(u64, usize)> = [7u64, 11]
        .iter()
        .flat_map(|&p| (3..=6).map(move |d| (p, d)))
        .collect();
    let per_cell = |i: usize| TOTAL / cellset.len() + usize::from(i < TOTAL % cellset.len());
    let indexed: Vec<(usize, (u64, usize))> = cellset.iter().copied().enumerate().collect();
    let parts: Vec<(Tally, [usize; 3])> = indexed
        .par_iter()
        .map(|&(i, (p, d))| {
            let mut rng = run.rng(1, i as u64 + 1);
            let mut t = Tally::default();
            // [F_p-rank below the closure rank, mismatches with g1 squarefree
            // and split, mismatches explained by the field]
            let mut kinds = [0usize; 3];
            for j in 0..per_cell(i) {
                if run.expired() {
                    t.out_of_budget = true;
                    break;
                }
                let f = stratified_form(p, d, j % (d + 2), &mut rng);
                let residues: Vec<u64> = f.coeffs().iter().map(|c| c.residue().unwrap()).collect();
                let oracle = oracle::fp_waring_rank(&residues, p);
                let cert = match waring_rank(&f) {
                    Ok(c) => c,
                    Err(e) => {
                        t.check(false, || format!("F_{p} f = {f}: {e}"));
                        continue;
                    }
                };
                let ok = oracle == Some(cert.rank);
                if !ok {
                    let split = roots_in_field(&cert.g1).map(|r| r.split).unwrap_or(false);
                    if oracle.is_some_and(|o| o < cert.rank) {
                        kinds[0] += 1;
                    } else if cert.g1_squarefree && split {
                        kinds[1] += 1;
                    } else {
                        kinds[2] += 1;
                    }
                }
                t.check(ok, || {
                    format!(
                        "F_{p} f = {f}: waring_rank {} (g1 = {}), brute force {}",
                        cert.rank,
                        cert.g1,
                        oracle.map_or("none".to_string(), |o| o.to_string())
                    )
                });
            }
            (t, kinds)
        })
        .collect();
    let mut total = Tally::default();
    let mut kinds = [0usize; 3];
    for ((t, k), &(p, d)) in parts.into_iter().zip(&cellset) {
        total.note(format!("F_{p}, d = {d}: {} forms, {} mismatches", t.checks, t.failures));
        for (a, b) in kinds.iter_mut().zip(k) {
            *a += b;
        }
        total.absorb(t);
    }
    total.note(format!(
        "mismatches with brute force below the closure rank: {} (impossible unless a computation is wrong)",
        kinds[0]
    ));
    total.note(format!(
        "mismatches although g1 is squarefree and splits over F_p: {}",
        kinds[1]
    ));
    total.note(format!(
        "mismatches where the deciding generator does not split into distinct F_p-rational factors: {} (the rank rule gives the rank over the algebraic closure)",
        kinds[2]
    ));
    total
}

// ---------------------------------------------------------------- criterion 2

fn criterion_generic_rank(run: &Run) -> Tally {
    const SAMPLES: usize = 200;
    let degrees: Vec<usize> = (5..=10).collect();
    cells(run, 2, &degrees, |&d, rng| {
        let mut t = Tally::default();
        let g = generic_rank(d);
        let mut at_generic = 0;
        for _ in 0..SAMPLES {
            let f = random_form(Field::Rationals, d, HEIGHT, rng);
            match (waring_rank(&f), border_rank(&f)) {
                (Ok(cert), Ok(b)) => {
                    at_generic += usize::from(cert.rank == g);
                    t.check(b <= g, || format!("border rank {b} > {g} for {f}"));
                }
                (Err(e), _) | (_, Err(e)) => t.check(false, || format!("{f}: {e}")),
            }
        }
        t.check(at_generic * 100 >= SAMPLES * 95, || {
            format!("d = {d}: only {at_generic}/{SAMPLES} forms of rank {g}")
        });
        t.note(format!("d = {d}: {at_generic}/{SAMPLES} of rank {g}"));
        t
    })
}

// ---------------------------------------------------------------- criterion 3

fn criterion_suprageneric(run: &Run) -> Tally {
    const SAMPLES: usize = 100;
    let pairs = valid_pairs(11);
    let mut total = cells(run, 3, &pairs, |&(d, k), rng| {
        let mut t = Tally::default();
        let mut expected = vec![(2, 1)];
        if k > 0 {
            expected.push((1, k));
        }
        for _ in 0..SAMPLES {
            let p = match special_point(d, k, Specialization::General, Field::Rationals, HEIGHT, rng) {
                Ok(p) => p,
                Err(e) => {
                    t.check(false, || format!("(d, k) = ({d}, {k}): {e}"));
                    continue;
                }
            };
            let cert = match waring_rank(&p.f) {
                Ok(c) => c,
                Err(e) => {
                    t.check(false, || format!("{}: {e}", p.f));
                    continue;
                }
            };
            t.check(cert.rank == d - k, || format!("rank {} != {} for {}", cert.rank, d - k, p.f));
            t.check(cert.d1 == k + 2 && cert.g1_profile.entries == expected, || {
                format!("g1 = {} has degree {} and profile {} for {}", cert.g1, cert.d1, cert.g1_profile, p.f)
            });
            t.check_result(border_rank(&p.f).map(|b| b == k + 2), || {
                format!("border rank != {} for {}", k + 2, p.f)
            });
        }
        t.check_result(
            suprageneric_partition(d, k).and_then(|l| dim_dual(&l)).map(|dim| dim == 2 * k + 2),
            || format!("dim_dual of the suprageneric partition for (d, k) = ({d}, {k})"),
        );
        t
    });
    total.note(format!("{} pairs (d, k) with d <= 11, {SAMPLES} samples each", pairs.len()));
    total
}

// ---------------------------------------------------------------- criterion 4

fn criterion_census(run: &Run) -> Tally {
    const CENSUS: usize = 200;
    const CHAINS: usize = 50;
    let pairs = valid_pairs(11);
    let mut total = cells(run, 4, &pairs, |&(d, k), rng| {
        let mut t = Tally::default();
        match stratum_census(d, k, CENSUS, Field::Rationals, HEIGHT, rng) {
            Ok(census) => {
                t.checks += census.samples;
                t.failures += census.flagged.len();
                for flag in census.flagged.iter().take(MAX_EXAMPLES) {
                    t.examples.push(format!(
                        "(d, k) = ({d}, {k}), {}: rank {} for {}",
                        flag.special, flag.rank, flag.form
                    ));
                }
                if let Some(ranks) = census.by_specialization.get(&Specialization::GEqualsL0) {
                    for (&rank, &count) in ranks {
                        for _ in 0..count {
                            t.check(rank <= k + 1, || {
                                format!("(d, k) = ({d}, {k}), g = l0: rank {rank} > {}", k + 1)
                            });
                        }
                    }
                }
            }
            Err(e) => t.check(false, || format!("census (d, k) = ({d}, {k}): {e}")),
        }
        t
    });
    let starts: Vec<(usize, usize)> = (5..=9)
        .flat_map(|d| (1..=3).filter(move |&i| d >= 2 * i + 3).map(move |i| (d, i)))
        .collect();
    let chains = cells(run, 4, &starts, |&(d, i), rng| {
        let mut t = Tally::default();
        for _ in 0..CHAINS {
            let start = match suprageneric_sample(d, i, Field::Rationals, HEIGHT, rng) {
                Ok(p) => p,
                Err(e) => {
                    t.check(false, || format!("start of rank {} in degree {d}: {e}", d - i));
                    continue;
                }
            };
            let ok = rank_raising_chain(&start.f, HEIGHT, rng).map(|steps| {
                steps.len() == i && steps.iter().enumerate().all(|(s, step)| step.rank == d - i + s + 1)
            });
            t.check_result(ok, || format!("chain from rank {} for {}", d - i, start.f));
        }
        t
    });
    total.note(format!(
        "census: {} pairs (d, k) with d <= 11, {CENSUS} samples each; chains: {} starts, {CHAINS} each",
        pairs.len(),
        starts.len()
    ));
    total.absorb(chains);
    total
}

// ---------------------------------------------------------------- criterion 5

fn criterion_tangent(run: &Run) -> Tally {
    const SAMPLES: usize = 100;
    let pairs = [(7usize, 1usize), (7, 2), (9, 2), (9, 3)];
    cells(run, 5, &pairs, |&(d, k), rng| {
        let mut t = Tally::default();
        let mut cases = vec![(Specialization::General, 2 * k + 3, true)];
        cases.push((Specialization::GEqualsL0, 2 * k + 2, false));
        if k >= 2 {
            cases.push((Specialization::Coincident, 2 * k + 2, false));
        }
        for (special, bound, exact) in cases {
            for _ in 0..SAMPLES {
                match special_point(d, k, special, Field::Rationals, HEIGHT, rng) {
                    Ok(p) => {
                        let dim = tangent_dimension(&p);
                        let ok = if exact { dim == bound } else { dim <= bound };
                        t.check(ok, || format!("(d, k) = ({d}, {k}), {special}: tangent rank {dim}"));
                    }
                    Err(e) => t.check(false, || format!("(d, k) = ({d}, {k}), {special}: {e}")),
                }
            }
        }
        t
    })
}

// ---------------------------------------------------------------- criterion 6

fn criterion_hypersurface(run: &Run) -> Tally {
    const SAMPLES: usize = 100;
    const LINES: usize = 10;
    const CUBICS: usize = 50;
    let field = Field::Rationals;
    let mut total = cells(run, 6, &run.ks(), |&k, rng| {
        let mut t = Tally::default();
        let ctx = match context_make(k) {
            Ok(c) => c,
            Err(e) => {
                t.check(false, || format!("k = {k}: {e}"));
                return t;
            }
        };
        let d = 2 * k + 1;
        for _ in 0..SAMPLES {
            match suprageneric_sample(d, k - 1, field, HYP_HEIGHT, rng) {
                Ok(p) => t.check_result(defining_value(&ctx, &p.f).map(|v| v.is_zero()), || {
                    format!("k = {k}: D does not vanish on {}", p.f)
                }),
                Err(e) => t.check(false, || format!("k = {k}: {e}")),
            }
        }
        for _ in 0..SAMPLES {
            let f = random_form(field, d, GENERIC_HEIGHT, rng);
            t.check_result(defining_value(&ctx, &f).map(|v| !v.is_zero()), || {
                format!("k = {k}: D vanishes on the random form {f}")
            });
        }
        let expected = 2 * k * (k + 1);
        for _ in 0..LINES {
            let (f0, f1) = (random_form(field, d, HYP_HEIGHT, rng), random_form(field, d, HYP_HEIGHT, rng));
            t.check_result(interpolated_degree(&ctx, &f0, &f1).map(|n| n == expected), || {
                format!("k = {k}: restriction to the line through {f0} and {f1} is not of degree {expected}")
            });
        }
        t.note(format!("k = {k}: degree {expected} on {LINES} random lines"));
        if k == 1 {
            let mut ratio: Option<Scalar> = None;
            let mut compared = 0;
            for _ in 0..CUBICS {
                let f = random_form(field, 3, HYP_HEIGHT, rng);
                let (Ok(v), Ok(disc)) = (defining_value(&ctx, &f), discriminant(&f)) else {
                    t.check(false, || format!("cubic {f}: evaluation failed"));
                    continue;
                };
                let Some(inv) = disc.inv() else {
                    t.check(v.is_zero(), || format!("D nonzero on the singular cubic {f}"));
                    continue;
                };
                let r = v * inv;
                compared += 1;
                match &ratio {
                    None => ratio = Some(r),
                    Some(r0) => t.check(&r == r0, || format!("ratio {r} != {r0} on {f}")),
                }
            }
            if let Some(r) = ratio {
                t.note(format!("k = 1: D / disc = {r} on all {compared} random cubics"));
            }
        }
        t
    });
    total.note(format!("{SAMPLES} hypersurface points and {SAMPLES} random forms per k, heights {HYP_HEIGHT} and {GENERIC_HEIGHT}"));
    total
}

// ---------------------------------------------------------------- criterion 7

fn criterion_singular(run: &Run) -> Tally {
    const SAMPLES: usize = 100;
    const SECANTS: usize = 20;
    let field = Field::Rationals;
    cells(run, 7, &run.ks(), |&k, rng| {
        let mut t = Tally::default();
        let ctx = match context_make(k) {
            Ok(c) => c,
            Err(e) => {
                t.check(false, || format!("k = {k}: {e}"));
                return t;
            }
        };
        let d = 2 * k + 1;
        let zero_grad = |f: &BinaryForm| defining_gradient(&ctx, f).map(|g| g.iter().all(Scalar::is_zero));
        for i in 0..SAMPLES {
            let r = 1 + i % k;
            match crate::strata::sample_rank_r(d, r, field, HYP_HEIGHT, rng) {
                Ok((f, _)) => t.check_result(zero_grad(&f), || {
                    format!("k = {k}: nonzero gradient at the rank {r} form {f}")
                }),
                Err(e) => t.check(false, || format!("k = {k}, rank {r}: {e}")),
            }
        }
        let mut on_surface = Vec::new();
        for _ in 0..SAMPLES {
            match suprageneric_sample(d, k - 1, field, HYP_HEIGHT, rng) {
                Ok(p) => {
                    t.check_result(zero_grad(&p.f).map(|z| !z), || {
                        format!("k = {k}: zero gradient at the hypersurface point {}", p.f)
                    });
                    on_surface.push(p.f);
                }
                Err(e) => t.check(false, || format!("k = {k}: {e}")),
            }
        }
        for i in 0..SECANTS {
            let f = if i % 2 == 0 {
                random_form(field, d, HYP_HEIGHT, rng)
            } else {
                on_surface[i % on_surface.len().max(1)].clone()
            };
            let h: Vec<Scalar> = (0..=d).map(|_| field.random(rng, HYP_HEIGHT)).collect();
            t.check_result(secant_check(&ctx, &f, &h), || {
                format!("k = {k}: gradient and secant disagree at {f}")
            });
        }
        t
    })
}

// ---------------------------------------------------------------- criterion 8

fn check_partial_order(
    t: &mut Tally,
    name: &str,
    all: &[Partition],
    rel: impl Fn(&Partition, &Partition) -> Result<bool>,
) {
    let table: Result<Vec<Vec<bool>>> = all
        .iter()
        .map(|a| all.iter().map(|b| rel(a, b)).collect())
        .collect();
    let table = match table {
        Ok(r) => r,
        Err(e) => {
            t.check(false, || format!("{name}: {e}"));
            return;
        }
    };
    let n = all.len();
    for i in 0..n {
        t.check(table[i][i], || format!("{name} is not reflexive at {}", all[i]));
        for j in 0..n {
            if i != j {
                t.check(!(table[i][j] && table[j][i]), || {
                    format!("{name} is not antisymmetric at {}, {}", all[i], all[j])
                });
            }
            if !table[i][j] {
                continue;
            }
            for k in 0..n {
                if table[j][k] {
                    t.check(table[i][k], || {
                        format!("{name} is not transitive at {}, {}, {}", all[i], all[j], all[k])
                    });
                }
            }
        }
    }
}

fn conormal_list() -> Vec<Partition> {
    [
        &[2][..], &[3], &[2, 1], &[2, 2], &[3, 1], &[4], &[3, 2], &[2, 1, 1, 1], &[3, 1, 1, 1],
        &[3, 2, 1], &[4, 1, 1], &[2, 2, 2], &[3, 2, 2], &[5, 2], &[3, 3, 1], &[4, 2, 1, 1],
        &[3, 2, 2, 1], &[2, 2, 2, 2, 1], &[6, 3, 1], &[3, 2, 1, 1, 1, 1, 1],
    ]
    .iter()
    .map(|parts| Partition::new(parts).expect("positive parts"))
    .collect()
}

fn criterion_partitions(run: &Run) -> Tally {
    const SAMPLES: usize = 100;
    let mut t = Tally::default();
    for n in 1..=9 {
        let all = Partition::all(n);
        check_partial_order(&mut t, "refines", &all, refines);
        check_partial_order(&mut t, "dual_included", &all, dual_included);
    }
    let example = Partition::new(&[4, 1, 1])
        .and_then(|a| Partition::new(&[3, 2, 1]).and_then(|b| dual_included(&a, &b)));
    t.check_result(example, || "dual_included((4,1,1), (3,2,1)) is false".into());
    for d in 3..=15 {
        for k in 1..=d {
            let (Ok(lower), Ok(upper)) = (suprageneric_partition(d, k - 1), suprageneric_partition(d, k)) else {
                continue;
            };
            t.check_result(dual_included(&lower, &upper), || {
                format!("chain not nested at d = {d}: {lower} in {upper}")
            });
        }
    }
    let list = conormal_list();
    let conormal = cells(run, 8, &list, |lambda, rng| {
        let mut t = Tally::default();
        for _ in 0..SAMPLES {
            match conormal_sample(lambda, Field::Rationals, HEIGHT, rng) {
                Ok(s) => t.check_result(annihilation_check(&s), || {
                    format!("{lambda}: g = {} not annihilated", s.g)
                }),
                Err(e) => t.check(false, || format!("{lambda}: {e}")),
            }
        }
        t
    });
    t.note(format!(
        "posets exhaustive for n <= 9; {} conormal partitions, {SAMPLES} samples each",
        list.len()
    ));
    t.absorb(conormal);
    t
}

#[cfg(test)]
mod tests;
