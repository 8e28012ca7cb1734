//! Edge cases of the grade-4 symplectic contraction and a frozen hand
//! expansion of the wedge term inside the operator.

use qhk_algebra::ops::{interior, wedge};
use qhk_algebra::tensor::tangent_vector;
use qhk_algebra::{ModelParams, OneFormField, Scalar, TangentIndex};
use qhk_model::probe::{alpha0, gamma0};
use qhk_ops::contract_omega_e4;

fn tv(params: ModelParams, e: u8, h: u8) -> qhk_algebra::LabeledTensor {
    tangent_vector(params, TangentIndex::new(e, h))
}

#[test]
fn contraction_vanishes_without_symplectic_pairs() {
    // all four E indices drawn from the first half of the basis
    let params = ModelParams::new(4).unwrap();
    let alpha = wedge(
        &wedge(&tv(params, 1, 1), &tv(params, 2, 1)).unwrap(),
        &wedge(&tv(params, 3, 2), &tv(params, 4, 2)).unwrap(),
    )
    .unwrap();
    let mut field = OneFormField::zero_like(&alpha);
    field.set(TangentIndex::new(1, 1), alpha).unwrap();
    let out = contract_omega_e4(&field.to_tensor()).unwrap();
    assert!(out.is_zero());
}

#[test]
fn contraction_is_linear() {
    let params = ModelParams::new(2).unwrap();
    let a = wedge(
        &wedge(&tv(params, 1, 1), &tv(params, 3, 1)).unwrap(),
        &wedge(&tv(params, 2, 2), &tv(params, 4, 2)).unwrap(),
    )
    .unwrap();
    let b = alpha0(params);
    let combo = a.scale(&Scalar::from_ratio(3, 7)).add(&b.scale(&Scalar::from_int(-2))).unwrap();
    let as_field = |t: &qhk_algebra::LabeledTensor| {
        let mut f = OneFormField::zero_like(t);
        f.set(TangentIndex::new(2, 2), t.clone()).unwrap();
        f
    };
    let lhs = contract_omega_e4(&as_field(&combo).to_tensor()).unwrap();
    let rhs = contract_omega_e4(&as_field(&a).to_tensor())
        .unwrap()
        .scale(&Scalar::from_ratio(3, 7))
        .add(&contract_omega_e4(&as_field(&b).to_tensor()).unwrap().scale(&Scalar::from_int(-2)))
        .unwrap();
    assert!(lhs.equivalent(&rhs));
}

#[test]
fn wedge_term_of_the_operator_matches_hand_expansion_at_n2() {
    // gamma0 ^ i_{e2 tilde(h)} alpha0, expanded by hand and frozen
    let params = ModelParams::new(2).unwrap();
    let alpha = alpha0(params);
    let ix = interior(&tv(params, 2, 2), &alpha).unwrap();
    let got = wedge(&tangent_vector(params, gamma0(params)), &ix).unwrap();
    let mut expected = qhk_algebra::tensor::zero_t_multivector(params, 4);
    expected.add_raw(vec![1, 2, 2, 1, 2, 2, 3, 1], Scalar::from_int(-2));
    assert!(got.equivalent(&expected));
}
