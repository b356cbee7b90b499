//! End-to-end use of the public API across modules.

use proptest::prelude::*;
use waring_forms::apolarity::{border_rank, decompose, waring_rank, Decomposition};
use waring_forms::binpoly::{parse_form, BinaryForm, VarTag};
use waring_forms::hypersurface::{context_make, defining_value};
use waring_forms::partitions::{dim_dual, suprageneric_partition};
use waring_forms::strata::{generic_rank, suprageneric_sample};
use waring_forms::{seeded_rng, Field};

fn form(field: Field, coeffs: &[i64]) -> BinaryForm {
    BinaryForm::from_i64(field, VarTag::Primal, coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_invariant_under_substitution(
        coeffs in prop::collection::vec(-9i64..=9, 6),
        m in prop::array::uniform4(-4i64..=4),
    ) {
        let q = Field::Rationals;
        let f = form(q, &coeffs);
        prop_assume!(!f.is_zero());
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let [a, b, c, d] = m.map(|x| q.from_i64(x));
        let g = f.substitute(&a, &b, &c, &d);
        prop_assert_eq!(waring_rank(&f).unwrap().rank, waring_rank(&g).unwrap().rank);
        prop_assert_eq!(border_rank(&f).unwrap(), border_rank(&g).unwrap());
    }

    #[test]
    fn rank_bounds(coeffs in prop::collection::vec(-20i64..=20, 8), p_index in 0usize..2) {
        let field = [Field::Rationals, Field::Prime(1009)][p_index];
        let f = form(field, &coeffs);
        prop_assume!(!f.is_zero());
        let d = f.degree();
        let rank = waring_rank(&f).unwrap().rank;
        let border = border_rank(&f).unwrap();
        prop_assert!(border <= rank && rank <= d);
        prop_assert!(border <= generic_rank(d));
    }
}

#[test]
fn text_to_decomposition() {
    let q = Field::Rationals;
    let f = parse_form("x^4 + 6*x^2*y^2 + y^4", q).unwrap();
    let mut rng = seeded_rng(1);
    match decompose(&f, &mut rng).unwrap() {
        Decomposition::Split(dec) => {
            assert_eq!(dec.len(), waring_rank(&f).unwrap().rank);
            assert_eq!(dec.reconstruct(), f);
        }
        other => panic!("expected a split decomposition, got {other:?}"),
    }
}

#[test]
fn strata_meet_the_hypersurface() {
    // degree 2k+1 forms of rank k+2 are the suprageneric stratum with k - 1
    let mut rng = seeded_rng(2);
    for k in 1..=3 {
        let ctx = context_make(k).unwrap();
        let p = suprageneric_sample(2 * k + 1, k - 1, Field::Rationals, 10, &mut rng).unwrap();
        assert!(defining_value(&ctx, &p.f).unwrap().is_zero());
        let lambda = suprageneric_partition(2 * k + 1, k - 1).unwrap();
        assert_eq!(dim_dual(&lambda).unwrap(), 2 * k);
    }
}
