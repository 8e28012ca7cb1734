//! End-to-end pipeline values on the probe element, stage signature
//! conformance, trace identities over the whole domain, and equivariance
//! under rational symplectic substitutions.

use qhk_algebra::ops::apply_slotwise;
use qhk_algebra::tensor::Symmetry;
use qhk_algebra::{ModelParams, OneFormField, Scalar, SlotGroup, SlotLabel};
use qhk_model::probe::gamma0_alpha0;
use qhk_model::{domain_basis, DomainProjectors, Embedding};
use qhk_ops::{
    ck_t, contraction_trace, pipeline_he, pipeline_hk, pipeline_s3h, wedge_trace, CkCoefficients,
};

fn frac(a: i64, b: i64) -> Scalar {
    Scalar::from_ratio(a, b)
}

#[test]
fn he_pipeline_reproduces_closed_form() {
    for n in 2..=4u32 {
        let params = ModelParams::new(n).unwrap();
        let eta = gamma0_alpha0(params).unwrap();
        let result = pipeline_he(&eta, &CkCoefficients::standard(params)).unwrap();
        let expected = qhk_ops::display::he_display(params);
        assert!(result.final_value().equivalent(&expected), "n = {n}");
    }
    // spot values of the coefficient
    let p2 = ModelParams::new(2).unwrap();
    let r2 = pipeline_he(&gamma0_alpha0(p2).unwrap(), &CkCoefficients::standard(p2)).unwrap();
    let c = r2
        .final_value()
        .entries()
        .next()
        .map(|(_, v)| v.clone())
        .unwrap();
    assert_eq!(c, frac(16, 5));
}

#[test]
fn he_pipeline_of_zero_is_zero() {
    let params = ModelParams::new(2).unwrap();
    let zero = OneFormField::zero_like(&qhk_model::alpha0(params));
    let result = pipeline_he(&zero, &CkCoefficients::standard(params)).unwrap();
    assert!(result.final_value().is_zero());
}

#[test]
fn hk_pipeline_projection_display_and_defect() {
    for n in 2..=3u32 {
        let params = ModelParams::new(n).unwrap();
        let proj = DomainProjectors::new(params).unwrap();
        let eta = gamma0_alpha0(params).unwrap();
        let result = pipeline_hk(&eta, &CkCoefficients::standard(params), &proj).unwrap();
        let projected = result.get("pr_he_l20").unwrap();
        let expected = qhk_ops::display::pr_he_l20_display(params);
        assert!(projected.equivalent(&expected), "projection display, n = {n}");
        let defect = result.get("skew_defect").unwrap();
        assert!(!defect.is_zero(), "skew defect must certify the component, n = {n}");
        let k_component = result.get("k_component").unwrap();
        assert!(!k_component.is_zero(), "explicit complement component, n = {n}");
    }
}

#[test]
fn s3h_pipeline_reproduces_both_closed_forms() {
    for n in 2..=4u32 {
        let params = ModelParams::new(n).unwrap();
        let eta = gamma0_alpha0(params).unwrap();
        let result = pipeline_s3h(&eta, &CkCoefficients::standard(params)).unwrap();
        let l3e = result.get("pr_s3h_l3e").unwrap();
        assert!(
            l3e.equivalent(&qhk_ops::display::s3h_l3e_display(params)),
            "grade-3 display, n = {n}"
        );
        let primitive = result.get("pr_s3h_l30e").unwrap();
        if n == 2 {
            assert!(primitive.is_zero(), "primitive part is empty at n = 2");
        } else {
            assert!(!primitive.is_zero(), "primitive part must survive, n = {n}");
        }
        let finish = result.get("omega_e_final").unwrap();
        assert!(
            finish.equivalent(&qhk_ops::display::s3h_e_display(params)),
            "trace finish, n = {n}"
        );
    }
}

#[test]
fn stage_signatures_conform() {
    let params = ModelParams::new(2).unwrap();
    let proj = DomainProjectors::new(params).unwrap();
    let eta = gamma0_alpha0(params).unwrap();
    let coeffs = CkCoefficients::standard(params);

    let he = pipeline_he(&eta, &coeffs).unwrap();
    let sig: Vec<(&str, &str, usize)> = he
        .stages
        .iter()
        .map(|s| (s.name, s.module, s.value.slots().len()))
        .collect();
    assert_eq!(
        sig,
        vec![
            ("ck", "EH(L4T)", 10),
            ("omega_e", "EH(S2H)(L2T)", 8),
            ("omega_h1", "EH(L2T)", 6),
            ("omega_h2", "HEEE", 4),
            ("omega_e_final", "HE", 2),
        ]
    );
    // the omega_h2 stage is exactly [H E E E] with free slots
    let heee = he.get("omega_h2").unwrap();
    assert_eq!(
        heee.slots(),
        [SlotLabel::H, SlotLabel::E, SlotLabel::E, SlotLabel::E]
    );
    // the omega_e stage carries a symmetric H pair
    let s2h_stage = he.get("omega_e").unwrap();
    assert_eq!(s2h_stage.groups()[2].sym, Symmetry::Symmetric);

    let s3h = pipeline_s3h(&eta, &coeffs).unwrap();
    let sig3: Vec<(&str, &str)> = s3h.stages.iter().map(|s| (s.name, s.module)).collect();
    assert_eq!(
        sig3,
        vec![
            ("ck", "EH(L4T)"),
            ("omega_h_split", "EE(L3T)"),
            ("sym_h", "EE(S3H)(L3E)"),
            ("omega_e_l3", "EE(S3H)E"),
            ("pr_s3h_l3e", "(S3H)(L3E)"),
            ("pr_s3h_l30e", "(S3H)(L30E)"),
            ("omega_e_final", "(S3H)E"),
        ]
    );
    let sym_stage = s3h.get("sym_h").unwrap();
    assert_eq!(
        sym_stage.groups()[2],
        SlotGroup::symmetric(vec![2, 3, 4], 1)
    );
    assert_eq!(
        sym_stage.groups()[3],
        SlotGroup::alternating(vec![5, 6, 7], 1)
    );

    let hk = pipeline_hk(&eta, &coeffs, &proj).unwrap();
    let l20_stage = hk.get("pr_he_l20").unwrap();
    assert_eq!(
        l20_stage.groups()[2],
        SlotGroup::alternating(vec![2, 3], 1)
    );
}

#[test]
fn trace_identities_hold_on_the_full_domain_basis_at_n2() {
    let params = ModelParams::new(2).unwrap();
    let emb = Embedding::new(params).unwrap();
    let coeffs = CkCoefficients::standard(params);
    let basis = domain_basis(params, &emb).unwrap();
    assert_eq!(basis.len(), 120);
    for eta in &basis {
        let t = ck_t(eta, &coeffs).unwrap();
        assert!(wedge_trace(&t).unwrap().is_zero());
        assert!(contraction_trace(&t).unwrap().is_zero());
    }
}

/// Applies a pair of rational linear substitutions to a field through its
/// tensor form.
fn transform_field(
    eta: &OneFormField,
    e_map: &dyn Fn(u8) -> Vec<(u8, Scalar)>,
    h_map: &dyn Fn(u8) -> Vec<(u8, Scalar)>,
) -> OneFormField {
    let tensor = eta.to_tensor().ungroup();
    let moved = apply_slotwise(&tensor, |label, idx| match label {
        SlotLabel::E => e_map(idx),
        SlotLabel::H => h_map(idx),
    })
    .unwrap();
    let mut groups = vec![SlotGroup::none(0), SlotGroup::none(1)];
    groups.push(SlotGroup::alternating((2..tensor.slots().len()).collect(), 2));
    OneFormField::from_tensor(&moved.regroup(groups).unwrap()).unwrap()
}

#[test]
fn operator_commutes_with_rational_symplectic_substitutions() {
    let params = ModelParams::new(2).unwrap();
    let coeffs = CkCoefficients::standard(params);
    let eta = {
        // a small non-decomposable combination
        let emb = Embedding::new(params).unwrap();
        let basis = domain_basis(params, &emb).unwrap();
        let mut eta = basis[3].scale(&frac(2, 1));
        eta = eta.add(&basis[77].scale(&frac(-3, 7))).unwrap();
        eta.add(&gamma0_alpha0(params).unwrap()).unwrap()
    };

    let id_e = |a: u8| vec![(a, Scalar::one())];
    let id_h = |s: u8| vec![(s, Scalar::one())];
    // symplectic transposition on E: e1 <-> e2, e3 <-> e4
    let swap_e = |a: u8| {
        let b = match a {
            1 => 2,
            2 => 1,
            3 => 4,
            4 => 3,
            other => other,
        };
        vec![(b, Scalar::one())]
    };
    // unipotent shear on H: h -> h, tilde(h) -> h + tilde(h)
    let shear_h = |s: u8| {
        if s == 1 {
            vec![(1u8, Scalar::one())]
        } else {
            vec![(1u8, Scalar::one()), (2u8, Scalar::one())]
        }
    };
    // rational rotation on H
    let rot_h = |s: u8| {
        if s == 1 {
            vec![(1u8, frac(3, 5)), (2u8, frac(4, 5))]
        } else {
            vec![(1u8, frac(-4, 5)), (2u8, frac(3, 5))]
        }
    };

    for (e_map, h_map) in [
        (&swap_e as &dyn Fn(u8) -> Vec<(u8, Scalar)>, &id_h as &dyn Fn(u8) -> Vec<(u8, Scalar)>),
        (&id_e, &shear_h),
        (&id_e, &rot_h),
        (&swap_e, &rot_h),
    ] {
        let moved_then_op = ck_t(&transform_field(&eta, e_map, h_map), &coeffs).unwrap();
        let op_then_moved = transform_field(&ck_t(&eta, &coeffs).unwrap(), e_map, h_map);
        for x in params.tangent_basis() {
            assert!(
                moved_then_op.value(x).equivalent(&op_then_moved.value(x)),
                "equivariance failed at {x:?}"
            );
        }
    }
}

#[test]
fn summand_pipelines_have_full_rank_on_their_component() {
    // The composite (pipeline after component projection) must act as a
    // nonzero multiple of an isomorphism: over the whole domain basis its
    // flattened images span exactly dim(W) directions.
    use qhk_algebra::linalg::QMatrix;
    use std::collections::BTreeMap;

    let params = ModelParams::new(2).unwrap();
    let emb = Embedding::new(params).unwrap();
    let proj = DomainProjectors::new(params).unwrap();
    let coeffs = CkCoefficients::standard(params);
    let basis = domain_basis(params, &emb).unwrap();

    let flatten = |outputs: &[qhk_algebra::LabeledTensor]| -> QMatrix {
        let mut keys: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        let mut triplets = Vec::new();
        for (col, t) in outputs.iter().enumerate() {
            for (idx, v) in t.expand_entries() {
                let next = keys.len();
                let row = *keys.entry(idx).or_insert(next);
                triplets.push((row, col, v));
            }
        }
        let mut m = QMatrix::zero(keys.len().max(1), outputs.len());
        for (r, c, v) in triplets {
            m.set(r, c, v);
        }
        m
    };

    let he: Vec<_> = basis
        .iter()
        .map(|eta| pipeline_he(eta, &coeffs).unwrap().final_value().clone())
        .collect();
    assert_eq!(flatten(&he).rank(), 8); // dim H (x) E at n = 2

    let d2: Vec<_> = basis
        .iter()
        .map(|eta| pipeline_s3h(eta, &coeffs).unwrap().get("omega_e_final").unwrap().clone())
        .collect();
    assert_eq!(flatten(&d2).rank(), 16); // dim S3H (x) E at n = 2

    let hk: Vec<_> = basis
        .iter()
        .map(|eta| {
            pipeline_hk(eta, &coeffs, &proj).unwrap().get("k_component").unwrap().clone()
        })
        .collect();
    assert_eq!(flatten(&hk).rank(), 32); // dim H (x) K at n = 2
}

#[test]
fn pipelines_annihilate_foreign_components_and_detect_their_own() {
    // Schur behaviour at n = 2: the summand projections of the operator
    // image vanish on foreign components of the domain and are injective on
    // their own component.
    let params = ModelParams::new(2).unwrap();
    let emb = Embedding::new(params).unwrap();
    let proj = DomainProjectors::new(params).unwrap();
    let coeffs = CkCoefficients::standard(params);
    let basis = domain_basis(params, &emb).unwrap();

    // a deterministic spread of sample elements
    let samples: Vec<&OneFormField> = basis.iter().step_by(17).collect();
    for eta in samples {
        let comps = qhk_model::domain_decompose(eta, &emb, &proj).unwrap();
        // [HE, HL30, HK, S3HE, S3HL30, S3HK]
        for (i, part) in comps.fields.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let he = pipeline_he(part, &coeffs).unwrap();
            let hk = pipeline_hk(part, &coeffs, &proj).unwrap();
            let s3h = pipeline_s3h(part, &coeffs).unwrap();
            let he_out = he.final_value();
            let hk_out = hk.get("k_component").unwrap();
            let d1_out = s3h.get("pr_s3h_l30e").unwrap();
            let d2_out = s3h.get("omega_e_final").unwrap();
            match i {
                0 => assert!(!he_out.is_zero(), "he pipeline must detect he component"),
                2 => assert!(!hk_out.is_zero(), "hk pipeline must detect hk component"),
                3 => assert!(!d2_out.is_zero(), "d2 pipeline must detect s3h_e component"),
                _ => {}
            }
            if i != 0 {
                assert!(he_out.is_zero(), "he pipeline leaked component {i}");
            }
            if i != 2 {
                assert!(hk_out.is_zero(), "hk pipeline leaked component {i}");
            }
            if i != 4 {
                assert!(d1_out.is_zero(), "d1 pipeline leaked component {i}");
            }
            if i != 3 {
                assert!(d2_out.is_zero(), "d2 pipeline leaked component {i}");
            }
        }
    }
}
