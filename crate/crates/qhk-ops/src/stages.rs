//! The individual contraction stages the projection pipelines are composed
//! of.  Every stage works on the tensor form of a field (leading free
//! `(E, H)` slot pair); the slot layout of each output is documented per
//! function.

use qhk_algebra::error::{AlgebraError, Result};
use qhk_algebra::tensor::{free_groups, Symmetry};
use qhk_algebra::{LabeledTensor, Scalar, SlotGroup, SlotLabel};

fn expect_field_tensor(t: &LabeledTensor, blocks: usize) -> Result<()> {
    let ok = t.slots().len() == 2 + 2 * blocks
        && t.slots()[0] == SlotLabel::E
        && t.slots()[1] == SlotLabel::H
        && t.groups().len() == 3
        && t.groups()[2].sym == Symmetry::Alternating
        && t.groups()[2].block_len == 2
        && t.groups()[2].num_blocks() == blocks;
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::DegreeError(format!(
            "expected a field tensor with a trailing grade-{blocks} group"
        )))
    }
}

/// Symplectic `E`-contraction of the trailing grade-4 group:
/// `[E H | L4T] -> [E H | (H H)_sym | L2T]`.  The new symmetric pair is the
/// unnormalized symmetrization of the two contracted `H` indices.
pub fn contract_omega_e4(t: &LabeledTensor) -> Result<LabeledTensor> {
    expect_field_tensor(t, 4)?;
    let params = t.params();
    let slots = vec![
        SlotLabel::E,
        SlotLabel::H,
        SlotLabel::H,
        SlotLabel::H,
        SlotLabel::E,
        SlotLabel::H,
        SlotLabel::E,
        SlotLabel::H,
    ];
    let groups = vec![
        SlotGroup::none(0),
        SlotGroup::none(1),
        SlotGroup::symmetric(vec![2, 3], 1),
        SlotGroup::alternating(vec![4, 5, 6, 7], 2),
    ];
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        let block = |k: usize| (idx[2 + 2 * k], idx[3 + 2 * k]);
        for i in 0..4 {
            for j in i + 1..4 {
                let (ei, hi) = block(i);
                let (ej, hj) = block(j);
                let w = params.omega_e(ei, ej);
                if w == 0 {
                    continue;
                }
                let sign = if (i + j) % 2 == 1 { w } else { -w };
                let mult = if hi == hj { 2 } else { 1 };
                let mut key = Vec::with_capacity(8);
                key.push(idx[0]);
                key.push(idx[1]);
                key.push(hi.min(hj));
                key.push(hi.max(hj));
                for k in 0..4 {
                    if k != i && k != j {
                        let (e, h) = block(k);
                        key.push(e);
                        key.push(h);
                    }
                }
                out.add_raw(key, coeff.scale_int(sign as i64 * mult));
            }
        }
    }
    Ok(out)
}

/// First `H`-contraction: pairs the 1-form `H` slot against the symmetric
/// pair, `[E H | (H H)_sym | L2T] -> [E H | L2T]`.
pub fn contract_omega_h_s2h(t: &LabeledTensor) -> Result<LabeledTensor> {
    let c = qhk_algebra::ops::contract_pair(t, 1, 2)?;
    // result slots: [E, H(former second symmetric slot), L2T]
    c.regroup(vec![
        SlotGroup::none(0),
        SlotGroup::none(1),
        SlotGroup::alternating(vec![2, 3, 4, 5], 2),
    ])
}

/// Second `H`-contraction through the tensor-square expansion of the
/// trailing 2-vector: `[E H | L2T] -> [H E E E]` (all slots free).
/// The surviving `H` leads, then the 1-form `E`, then the two expanded `E`s.
pub fn contract_omega_h_pair(t: &LabeledTensor) -> Result<LabeledTensor> {
    expect_field_tensor(t, 2)?;
    let params = t.params();
    let slots = vec![SlotLabel::H, SlotLabel::E, SlotLabel::E, SlotLabel::E];
    let mut out = LabeledTensor::zero(params, slots, free_groups(4))?;
    for (idx, coeff) in t.entries() {
        let (a, s) = (idx[0], idx[1]);
        let b1 = (idx[2], idx[3]);
        let b2 = (idx[4], idx[5]);
        for (x, y, sgn) in [(b1, b2, 1i64), (b2, b1, -1i64)] {
            let w = params.omega_h(s, x.1);
            if w == 0 {
                continue;
            }
            out.add_raw(vec![y.1, a, x.0, y.0], coeff.scale_int(sgn * w as i64));
        }
    }
    Ok(out)
}

/// Final `E`-contraction of the `[H E E E]` stage on its first two `E`
/// slots, landing in `[H E]`.
pub fn contract_omega_e_final(t: &LabeledTensor) -> Result<LabeledTensor> {
    qhk_algebra::ops::contract_pair(t, 1, 2)
}

/// Unnormalized projection of `[H E E E]` onto `H (x) E (x) L20E`:
/// antisymmetrize the last two slots without the idempotent normalization,
/// then remove the symplectic trace.
pub fn pr_he_l20(t: &LabeledTensor) -> Result<LabeledTensor> {
    if t.slots() != [SlotLabel::H, SlotLabel::E, SlotLabel::E, SlotLabel::E] {
        return Err(AlgebraError::DegreeError("expected an [H E E E] stage".into()));
    }
    let params = t.params();
    let mut skew = LabeledTensor::zero(params, t.slots().to_vec(), free_groups(4))?;
    for (idx, coeff) in t.ungroup().entries() {
        skew.add_raw(idx.clone(), coeff.clone());
        skew.add_raw(vec![idx[0], idx[1], idx[3], idx[2]], -coeff.clone());
    }
    let grouped = skew.regroup(vec![
        SlotGroup::none(0),
        SlotGroup::none(1),
        SlotGroup::alternating(vec![2, 3], 1),
    ])?;
    qhk_algebra::symplectic::pr_lambda_r0(&grouped)
}

/// `H`-contraction splitting the trailing grade-4 group:
/// `[E H | L4T] -> [E E | L3T]`, pairing the 1-form `H` against the `H` of
/// the split-off factor with alternating signs.
pub fn contract_omega_h_split(t: &LabeledTensor) -> Result<LabeledTensor> {
    expect_field_tensor(t, 4)?;
    let params = t.params();
    let slots = vec![
        SlotLabel::E,
        SlotLabel::E,
        SlotLabel::E,
        SlotLabel::H,
        SlotLabel::E,
        SlotLabel::H,
        SlotLabel::E,
        SlotLabel::H,
    ];
    let groups = vec![
        SlotGroup::none(0),
        SlotGroup::none(1),
        SlotGroup::alternating(vec![2, 3, 4, 5, 6, 7], 2),
    ];
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        let (a, s) = (idx[0], idx[1]);
        for k in 0..4 {
            let (ek, hk) = (idx[2 + 2 * k], idx[3 + 2 * k]);
            let w = params.omega_h(s, hk);
            if w == 0 {
                continue;
            }
            let sign = if k % 2 == 0 { w } else { -w };
            let mut key = Vec::with_capacity(8);
            key.push(a);
            key.push(ek);
            for m in 0..4 {
                if m != k {
                    key.push(idx[2 + 2 * m]);
                    key.push(idx[3 + 2 * m]);
                }
            }
            out.add_raw(key, coeff.scale_int(sign as i64));
        }
    }
    Ok(out)
}

/// Total symmetrization of the three `H` slots inside the trailing grade-3
/// group, regrouped as `[E E | (S3H) | L3E]` with the grade-3 `E` group
/// trailing.
pub fn sym_h_stage(t: &LabeledTensor) -> Result<LabeledTensor> {
    let expected_slots = [
        SlotLabel::E,
        SlotLabel::E,
        SlotLabel::E,
        SlotLabel::H,
        SlotLabel::E,
        SlotLabel::H,
        SlotLabel::E,
        SlotLabel::H,
    ];
    if t.slots() != expected_slots {
        return Err(AlgebraError::DegreeError("expected an [E E | L3T] stage".into()));
    }
    let symmetrized = qhk_algebra::ops::sym_group(&t.ungroup(), &[3, 5, 7])?;
    // regroup/reorder: [E, E, (H H H)_sym, (E E E)_alt]
    let permuted = symmetrized.ungroup().permute_slots(&[0, 1, 3, 5, 7, 2, 4, 6])?;
    permuted.regroup(vec![
        SlotGroup::none(0),
        SlotGroup::none(1),
        SlotGroup::symmetric(vec![2, 3, 4], 1),
        SlotGroup::alternating(vec![5, 6, 7], 1),
    ])
}

/// Symplectic trace on the trailing grade-3 `E` group:
/// `[E E (S3H) L3E] -> [E E (S3H) E]`.
pub fn contract_omega_e_l3(t: &LabeledTensor) -> Result<LabeledTensor> {
    qhk_algebra::symplectic::contract_omega_er(t)
}

/// Unnormalized skew-symmetrization of the three free `E` slots of the
/// `[E E (S3H) E]` stage, reordered as `[(S3H) | L3E]`.
pub fn pr_s3h_l3e(t: &LabeledTensor) -> Result<LabeledTensor> {
    let expected_slots = [
        SlotLabel::E,
        SlotLabel::E,
        SlotLabel::H,
        SlotLabel::H,
        SlotLabel::H,
        SlotLabel::E,
    ];
    if t.slots() != expected_slots {
        return Err(AlgebraError::DegreeError("expected an [E E (S3H) E] stage".into()));
    }
    let params = t.params();
    let raw = t.ungroup();
    let mut skew = LabeledTensor::zero(params, raw.slots().to_vec(), free_groups(6))?;
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
    ];
    let positions = [0usize, 1, 5];
    for (idx, coeff) in raw.entries() {
        for (perm, sgn) in PERMS {
            let mut key = idx.clone();
            for (slot_i, &src_i) in perm.iter().enumerate() {
                key[positions[slot_i]] = idx[positions[src_i]];
            }
            skew.add_raw(key, coeff.scale_int(sgn));
        }
    }
    let permuted = skew.permute_slots(&[2, 3, 4, 0, 1, 5])?;
    permuted.regroup(vec![
        SlotGroup::symmetric(vec![0, 1, 2], 1),
        SlotGroup::alternating(vec![3, 4, 5], 1),
    ])
}

/// Primitive projection of the trailing grade-3 group of `[(S3H) | L3E]`.
pub fn pr_s3h_l30e(t: &LabeledTensor) -> Result<LabeledTensor> {
    qhk_algebra::symplectic::pr_lambda_r0(t)
}

/// Symplectic trace finishing `[(S3H) | L3E] -> [(S3H) E]`.
pub fn contract_omega_e_s3h(t: &LabeledTensor) -> Result<LabeledTensor> {
    qhk_algebra::symplectic::contract_omega_er(t)
}

/// Helper for building expected stage values: an `[H E E E]` tensor from a
/// list of `(h, e1, e2, e3, coefficient)` words.
pub fn heee_from_words(
    params: qhk_algebra::ModelParams,
    words: &[(u8, u8, u8, u8, Scalar)],
) -> LabeledTensor {
    let slots = vec![SlotLabel::H, SlotLabel::E, SlotLabel::E, SlotLabel::E];
    let mut out = LabeledTensor::zero(params, slots, free_groups(4)).expect("valid");
    for (h, e1, e2, e3, c) in words {
        out.add_raw(vec![*h, *e1, *e2, *e3], c.clone());
    }
    out
}
