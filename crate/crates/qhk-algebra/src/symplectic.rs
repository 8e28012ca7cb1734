//! Symplectic traces on the `E` factor: the contraction defining primitive
//! multivectors, the wedge with `omega_E`, and the projector onto the
//! primitive part in grades 2 and 3.
//!
//! All operations act on the *trailing* slot group of their input, which must
//! be an alternating group of single `E` slots; leading slots pass through
//! untouched.

use crate::error::{AlgebraError, Result};
use crate::params::ModelParams;
use crate::scalar::Scalar;
use crate::tensor::{e_vector, LabeledTensor, SlotGroup, SlotLabel, Symmetry};

use crate::ops::wedge;

fn trailing_e_group(t: &LabeledTensor) -> Result<(usize, usize)> {
    let g = t
        .groups()
        .last()
        .ok_or_else(|| AlgebraError::DegreeError("tensor has no slot groups".into()))?;
    if g.sym != Symmetry::Alternating || g.block_len != 1 {
        return Err(AlgebraError::DegreeError(
            "trailing group must be an alternating group of E slots".into(),
        ));
    }
    let n_slots = t.slots().len();
    let r = g.positions.len();
    if g.positions.iter().enumerate().any(|(k, &p)| p != n_slots - r + k) {
        return Err(AlgebraError::DegreeError("trailing group must cover the last slots".into()));
    }
    if g.positions.iter().any(|&p| t.slots()[p] != SlotLabel::E) {
        return Err(AlgebraError::LabelMismatch("trailing group must be E-labeled".into()));
    }
    Ok((n_slots - r, r))
}

/// The symplectic form of `E` as a bivector: the sum of `e_j ^ e_{n+j}`.
pub fn omega_e_bivector(params: ModelParams) -> LabeledTensor {
    let mut acc = crate::tensor::zero_e_multivector(params, 2);
    for j in 1..=params.n() as u8 {
        let term = wedge(&e_vector(params, j), &e_vector(params, j + params.n() as u8))
            .expect("basis wedge");
        acc = acc.add(&term).expect("same signature");
    }
    acc
}

/// Symplectic trace on the trailing grade-`r` group: the signed sum over
/// slot pairs `i < j` of `omega_E(a_i, a_j)` times the tuple with both
/// dropped.  The kernel of this map defines the primitive multivectors.
pub fn contract_omega_er(t: &LabeledTensor) -> Result<LabeledTensor> {
    let (offset, r) = trailing_e_group(t)?;
    if r < 2 {
        return Err(AlgebraError::DegreeError(format!(
            "symplectic trace needs grade >= 2, got {r}"
        )));
    }
    let params = t.params();
    let slots: Vec<SlotLabel> = t.slots()[..offset + r - 2].to_vec();
    let mut groups: Vec<SlotGroup> = t.groups()[..t.groups().len() - 1].to_vec();
    groups.push(SlotGroup::alternating((offset..offset + r - 2).collect(), 1));
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        for i in 0..r {
            for j in i + 1..r {
                let w = params.omega_e(idx[offset + i], idx[offset + j]);
                if w == 0 {
                    continue;
                }
                // (-1)^{i+j+1} with 1-based positions = (-1)^{i+j+1} 0-based
                let sign = if (i + j) % 2 == 1 { w } else { -w };
                let mut rest = Vec::with_capacity(offset + r - 2);
                rest.extend_from_slice(&idx[..offset]);
                for (k, &v) in idx[offset..].iter().enumerate() {
                    if k != i && k != j {
                        rest.push(v);
                    }
                }
                out.add_raw(rest, coeff.scale_int(sign as i64));
            }
        }
    }
    Ok(out)
}

/// Wedges `omega_E` into the trailing `E`-group, raising its grade by two.
pub fn wedge_omega_e_trailing(t: &LabeledTensor) -> Result<LabeledTensor> {
    let (offset, r) = trailing_e_group(t)?;
    let params = t.params();
    let n = params.n() as u8;
    let mut slots = t.slots().to_vec();
    slots.push(SlotLabel::E);
    slots.push(SlotLabel::E);
    let mut groups: Vec<SlotGroup> = t.groups()[..t.groups().len() - 1].to_vec();
    groups.push(SlotGroup::alternating((offset..offset + r + 2).collect(), 1));
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        for j in 1..=n {
            let mut key = idx.clone();
            key.push(j);
            key.push(j + n);
            out.add_raw(key, coeff.clone());
        }
    }
    Ok(out)
}

/// Symplectic interior product of `e_a` into the trailing `E`-group:
/// the signed sum over slots of `omega_E(e_a, .)` with that slot dropped.
pub fn omega_interior_e(t: &LabeledTensor, a: u8) -> Result<LabeledTensor> {
    let (offset, r) = trailing_e_group(t)?;
    if r < 1 {
        return Err(AlgebraError::DegreeError("interior of a grade-0 element".into()));
    }
    let params = t.params();
    let slots: Vec<SlotLabel> = t.slots()[..offset + r - 1].to_vec();
    let mut groups: Vec<SlotGroup> = t.groups()[..t.groups().len() - 1].to_vec();
    groups.push(SlotGroup::alternating((offset..offset + r - 1).collect(), 1));
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        for k in 0..r {
            let w = params.omega_e(a, idx[offset + k]);
            if w == 0 {
                continue;
            }
            let sign = if k % 2 == 0 { w } else { -w };
            let mut rest = Vec::with_capacity(offset + r - 1);
            rest.extend_from_slice(&idx[..offset]);
            for (m, &v) in idx[offset..].iter().enumerate() {
                if m != k {
                    rest.push(v);
                }
            }
            out.add_raw(rest, coeff.scale_int(sign as i64));
        }
    }
    Ok(out)
}

/// The eigenvalue of `trace . (omega_E ^ .)` on grade `r - 2` inputs, found
/// at runtime from a probe element rather than hard-coded.
pub fn lambda0_projector_constant(params: ModelParams, r: usize) -> Result<Scalar> {
    match r {
        2 => contract_omega_er(&omega_e_bivector(params))?.as_scalar(),
        3 => {
            let probe = wedge_omega_e_trailing(&e_vector(params, 1))?;
            let back = contract_omega_er(&probe)?;
            let raw = back.expand_entries();
            let c = raw.get(&vec![1u8]).cloned().unwrap_or_else(Scalar::zero);
            // the probe must come back as a pure multiple of e_1
            let check = e_vector(params, 1).scale(&c);
            if !back.equivalent(&check) {
                return Err(AlgebraError::DomainError(
                    "trace of omega ^ e_1 is not proportional to e_1".into(),
                ));
            }
            Ok(c)
        }
        _ => Err(AlgebraError::DegreeError(format!("unsupported primitive grade {r}"))),
    }
}

/// Projection onto the primitive part of the trailing grade-`r` group,
/// `r` in {2, 3}: subtract `omega_E ^ (trace / c_r)`.
pub fn pr_lambda_r0(t: &LabeledTensor) -> Result<LabeledTensor> {
    let (_, r) = trailing_e_group(t)?;
    if r != 2 && r != 3 {
        return Err(AlgebraError::DegreeError(format!(
            "primitive projection implemented for grades 2 and 3, got {r}"
        )));
    }
    let c = lambda0_projector_constant(t.params(), r)?;
    let tr = contract_omega_er(t)?;
    let correction = wedge_omega_e_trailing(&tr)?;
    t.sub(&correction.scale(&c.inv()))
}
