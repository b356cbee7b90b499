use super::*;

#[test]
fn suites_parse_and_cover_all_criteria() {
    for s in ["apolarity", "strata", "partitions", "hypersurface", "all"] {
        assert_eq!(s.parse::<Suite>().unwrap().name(), s);
    }
    assert_eq!("bogus".parse::<Suite>().unwrap_err().kind(), "constraint");
    let mut union: Vec<u8> = [Suite::Apolarity, Suite::Strata, Suite::Partitions, Suite::Hypersurface]
        .iter()
        .flat_map(|s| s.criteria())
        .collect();
    union.sort_unstable();
    assert_eq!(union, Suite::All.criteria());
}

#[test]
fn oracle_agrees_where_the_rank_rule_is_rational() {
    // over F_13 sums of r <= 2 distinct rational powers in degree 5 have
    // a split squarefree g1, so both ranks are r
    let p = 13;
    let mut rng = seeded_rng(5);
    for terms in 1..=2 {
        for _ in 0..20 {
            let f = stratified_form(p, 5, terms, &mut rng);
            let residues: Vec<u64> = f.coeffs().iter().map(|c| c.residue().unwrap()).collect();
            assert_eq!(oracle::fp_waring_rank(&residues, p), Some(waring_rank(&f).unwrap().rank));
        }
    }
}

#[test]
fn oracle_sees_irreducible_generators() {
    // x^3 - 3xy^2 + ... : f = (x + iy)^3 + (x - iy)^3 / 2 = x^3 - 3 x y^2 with
    // g1 = u^2 + v^2 irreducible over F_7, so the F_7 rank exceeds 2
    let f = BinaryForm::from_i64(Field::Prime(7), VarTag::Primal, &[1, 0, -3, 0]);
    assert_eq!(waring_rank(&f).unwrap().rank, 2);
    let residues: Vec<u64> = f.coeffs().iter().map(|c| c.residue().unwrap()).collect();
    assert_eq!(oracle::fp_waring_rank(&residues, 7), Some(3));
}

#[test]
fn partitions_suite_passes_and_is_deterministic() {
    let opts = VerifyOptions::default();
    let a = run(Suite::Partitions, &opts).unwrap();
    let b = run(Suite::Partitions, &opts).unwrap();
    assert!(a.passed(), "{a}");
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(a.criteria.len(), 1);
}

#[test]
fn zero_budget_gives_a_partial_report() {
    let opts = VerifyOptions {
        budget: Some(Duration::ZERO),
        ..VerifyOptions::default()
    };
    let r = run(Suite::All, &opts).unwrap();
    assert!(r.partial);
    assert!(!r.passed());
    assert_eq!(r.criteria[8].status, Status::NotReproducible);
    assert!(r.criteria[..8].iter().all(|c| c.status == Status::OutOfBudget));
}

#[test]
fn criterion_nine_is_a_note() {
    let c = run_one(9, &VerifyOptions::default()).unwrap();
    assert_eq!(c.status, Status::NotReproducible);
    assert_eq!(c.notes.len(), 2);
    assert!(run_one(10, &VerifyOptions::default()).is_err());
}

#[test]
fn hypersurface_k_is_validated() {
    let opts = VerifyOptions {
        k: Some(9),
        ..VerifyOptions::default()
    };
    assert!(run(Suite::Hypersurface, &opts).is_err());
}
