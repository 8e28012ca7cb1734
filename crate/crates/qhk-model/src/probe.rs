//! The distinguished probe section used by every nonvanishing computation:
//! a decomposable element of the domain with closed-form images under all
//! four projection pipelines.

use qhk_algebra::ops::wedge;
use qhk_algebra::tensor::{tangent_vector, zero_t_multivector};
use qhk_algebra::{LabeledTensor, ModelParams, OneFormField, Result, Scalar, TangentIndex};

/// `gamma0 = tilde(e1) h` as a tangent index.
pub fn gamma0(params: ModelParams) -> TangentIndex {
    let (_, a) = params.tilde_e(1);
    TangentIndex::new(a, 1)
}

/// The 4-vector `alpha0`: summing over the whole unitary basis,
/// `e1 h ^ e2 h ^ e_i tilde(h) ^ tilde(e_i) tilde(h)
///  - e1 tilde(h) ^ e2 tilde(h) ^ e_i h ^ tilde(e_i) h`.
pub fn alpha0(params: ModelParams) -> LabeledTensor {
    let tv = |e: u8, h: u8| tangent_vector(params, TangentIndex::new(e, h));
    let mut acc = zero_t_multivector(params, 4);
    let head_plus = wedge(&tv(1, 1), &tv(2, 1)).expect("basis wedge");
    let head_minus = wedge(&tv(1, 2), &tv(2, 2)).expect("basis wedge");
    for i in 1..=params.dim_e() as u8 {
        let (sign, ti) = params.tilde_e(i);
        let tail_plus = wedge(&tv(i, 2), &tv(ti, 2)).expect("basis wedge");
        let tail_minus = wedge(&tv(i, 1), &tv(ti, 1)).expect("basis wedge");
        let plus = wedge(&head_plus, &tail_plus).expect("grade 4");
        let minus = wedge(&head_minus, &tail_minus).expect("grade 4");
        let term = plus.sub(&minus).expect("same signature");
        acc = acc.add(&term.scale(&Scalar::from_int(sign as i64))).expect("same signature");
    }
    acc
}

/// The decomposable field `X -> g(gamma0, X) alpha0`.
pub fn gamma0_alpha0(params: ModelParams) -> Result<OneFormField> {
    let alpha = alpha0(params);
    let g0 = gamma0(params);
    let mut field = OneFormField::zero_like(&alpha);
    for x in params.tangent_basis() {
        let c = params.metric(g0, x);
        if c != 0 {
            field.set(x, alpha.scale(&Scalar::from_int(c as i64)))?;
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qhk_algebra::ops::interior;

    fn p2() -> ModelParams {
        ModelParams::new(2).unwrap()
    }

    #[test]
    fn alpha0_canonical_coefficients_at_n2() {
        // frozen from expanding the definition by hand at n = 2
        let a = alpha0(p2());
        let entries: Vec<(Vec<u8>, Scalar)> =
            a.entries().map(|(k, v)| (k.clone(), v.clone())).collect();
        let expected = vec![
            (vec![1u8, 1, 1, 2, 2, 1, 3, 2], Scalar::from_int(-2)),
            (vec![1, 1, 1, 2, 2, 2, 3, 1], Scalar::from_int(-2)),
            (vec![1, 1, 2, 1, 2, 2, 4, 2], Scalar::from_int(2)),
            (vec![1, 2, 2, 1, 2, 2, 4, 1], Scalar::from_int(2)),
        ];
        assert_eq!(entries, expected);
        assert_eq!(a.num_entries(), 4);
    }

    #[test]
    fn interior_of_gamma0_into_alpha0_matches_hand_expansion_at_n2() {
        let params = p2();
        let a = alpha0(params);
        let g = tangent_vector(params, gamma0(params));
        let got = interior(&g, &a).unwrap();
        let mut expected = zero_t_multivector(params, 3);
        expected.add_raw(vec![1, 1, 2, 2, 3, 1], Scalar::from_int(-2));
        expected.add_raw(vec![2, 1, 2, 2, 4, 1], Scalar::from_int(-2));
        expected.add_raw(vec![1, 1, 2, 1, 3, 2], Scalar::from_int(-2));
        assert!(got.equivalent(&expected));
    }

    #[test]
    fn field_vanishes_where_gamma0_pairs_to_zero() {
        let params = p2();
        let field = gamma0_alpha0(params).unwrap();
        assert!(field.value(TangentIndex::new(1, 1)).is_zero());
        assert!(field.value(TangentIndex::new(2, 2)).is_zero());
        // the single supporting value is at X = e1 tilde(h), with g = -1
        let alpha = alpha0(params);
        assert!(field
            .value(TangentIndex::new(1, 2))
            .equivalent(&alpha.neg()));
        assert_eq!(field.support().count(), 1);
    }
}
