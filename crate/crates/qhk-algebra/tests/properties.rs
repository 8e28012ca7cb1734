//! Randomized algebraic identities for the multivector layer.

use proptest::prelude::*;

use qhk_algebra::ops::{interior, wedge};
use qhk_algebra::tensor::zero_t_multivector;
use qhk_algebra::{LabeledTensor, ModelParams, Scalar};

/// Random sparse alternating grade-`p` multivector over `T` at the given `n`.
fn arb_multivector(n: u32, grade: usize, terms: usize) -> impl Strategy<Value = LabeledTensor> {
    let dim_e = 2 * n as u8;
    let index = (1..=dim_e, 1..=2u8);
    let term = (proptest::collection::vec(index, grade), -9i64..=9);
    proptest::collection::vec(term, 1..=terms).prop_map(move |terms| {
        let params = ModelParams::new(n).unwrap();
        let mut t = zero_t_multivector(params, grade);
        for (blocks, coeff) in terms {
            let mut idx = Vec::with_capacity(2 * grade);
            for (e, h) in blocks {
                idx.push(e);
                idx.push(h);
            }
            t.add_raw(idx, Scalar::from_int(coeff));
        }
        t
    })
}

fn graded_sign(p: usize, q: usize) -> i64 {
    if (p * q).is_multiple_of(2) { 1 } else { -1 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_is_associative_n2(
        u in arb_multivector(2, 1, 3),
        v in arb_multivector(2, 2, 3),
        w in arb_multivector(2, 1, 3),
    ) {
        let lhs = wedge(&wedge(&u, &v).unwrap(), &w).unwrap();
        let rhs = wedge(&u, &wedge(&v, &w).unwrap()).unwrap();
        prop_assert!(lhs.equivalent(&rhs));
    }

    #[test]
    fn wedge_is_associative_n3(
        u in arb_multivector(3, 2, 3),
        v in arb_multivector(3, 1, 3),
        w in arb_multivector(3, 1, 3),
    ) {
        let lhs = wedge(&wedge(&u, &v).unwrap(), &w).unwrap();
        let rhs = wedge(&u, &wedge(&v, &w).unwrap()).unwrap();
        prop_assert!(lhs.equivalent(&rhs));
    }

    #[test]
    fn wedge_is_graded_commutative(
        p in 1usize..=2,
        q in 1usize..=2,
        seed_u in proptest::collection::vec((1..=6u8, 1..=2u8), 4),
        seed_v in proptest::collection::vec((1..=6u8, 1..=2u8), 4),
        cu in -9i64..=9,
        cv in -9i64..=9,
    ) {
        let params = ModelParams::new(3).unwrap();
        let mut u = zero_t_multivector(params, p);
        let mut idx = Vec::new();
        for (e, h) in seed_u.iter().take(p) {
            idx.push(*e);
            idx.push(*h);
        }
        u.add_raw(idx, Scalar::from_int(cu));
        let mut v = zero_t_multivector(params, q);
        let mut idx = Vec::new();
        for (e, h) in seed_v.iter().take(q) {
            idx.push(*e);
            idx.push(*h);
        }
        v.add_raw(idx, Scalar::from_int(cv));
        let uv = wedge(&u, &v).unwrap();
        let vu = wedge(&v, &u).unwrap().scale(&Scalar::from_int(graded_sign(p, q)));
        prop_assert!(uv.equivalent(&vu));
    }

    #[test]
    fn wedge_is_bilinear(
        u in arb_multivector(2, 1, 3),
        v in arb_multivector(2, 2, 3),
        w in arb_multivector(2, 2, 3),
        c in -9i64..=9,
    ) {
        let c = Scalar::from_int(c);
        let lhs = wedge(&u, &v.scale(&c).add(&w).unwrap()).unwrap();
        let rhs = wedge(&u, &v).unwrap().scale(&c).add(&wedge(&u, &w).unwrap()).unwrap();
        prop_assert!(lhs.equivalent(&rhs));
    }

    #[test]
    fn interior_is_an_antiderivation_probe(
        x in arb_multivector(2, 1, 2),
        alpha in arb_multivector(2, 2, 3),
        beta in arb_multivector(2, 2, 3),
    ) {
        // i_x(alpha ^ beta) = i_x(alpha) ^ beta + alpha ^ i_x(beta) for grade-2 alpha
        let lhs = interior(&x, &wedge(&alpha, &beta).unwrap()).unwrap();
        let rhs = wedge(&interior(&x, &alpha).unwrap(), &beta)
            .unwrap()
            .add(&wedge(&alpha, &interior(&x, &beta).unwrap()).unwrap())
            .unwrap();
        prop_assert!(lhs.equivalent(&rhs));
    }
}
