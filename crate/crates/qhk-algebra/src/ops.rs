use itertools::Itertools;

use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;
use crate::tensor::{free_groups, LabeledTensor, SlotGroup, SlotLabel, Symmetry};

fn single_alt_group(t: &LabeledTensor) -> Result<&SlotGroup> {
    if t.groups().len() != 1 {
        return Err(AlgebraError::DegreeError(
            "expected a fully alternating multivector (one slot group)".into(),
        ));
    }
    let g = &t.groups()[0];
    if g.sym != Symmetry::Alternating {
        return Err(AlgebraError::DegreeError("expected an alternating slot group".into()));
    }
    // our multivectors keep their slots in declaration order
    if g.positions.iter().enumerate().any(|(k, &p)| k != p) {
        return Err(AlgebraError::DegreeError("alternating group must cover slots in order".into()));
    }
    Ok(g)
}

fn block_signature(t: &LabeledTensor, g: &SlotGroup) -> Vec<SlotLabel> {
    g.positions.iter().take(g.block_len).map(|&p| t.slots()[p]).collect()
}

/// Exterior product of two fully alternating multivectors with the same
/// block shape (grade-0 scalars act by scaling).
pub fn wedge(u: &LabeledTensor, v: &LabeledTensor) -> Result<LabeledTensor> {
    if u.params() != v.params() {
        return Err(AlgebraError::ParamsMismatch);
    }
    if u.slots().is_empty() {
        return Ok(v.scale(&u.as_scalar()?));
    }
    if v.slots().is_empty() {
        return Ok(u.scale(&v.as_scalar()?));
    }
    let gu = single_alt_group(u)?;
    let gv = single_alt_group(v)?;
    if gu.block_len != gv.block_len || block_signature(u, gu) != block_signature(v, gv) {
        return Err(AlgebraError::LabelMismatch(
            "wedge operands have different block signatures".into(),
        ));
    }
    let slots: Vec<SlotLabel> = u.slots().iter().chain(v.slots()).copied().collect();
    let total = slots.len();
    let groups = vec![SlotGroup::alternating((0..total).collect(), gu.block_len)];
    let mut out = LabeledTensor::zero(u.params(), slots, groups)?;
    for (ku, cu) in u.entries() {
        for (kv, cv) in v.entries() {
            let mut idx = Vec::with_capacity(total);
            idx.extend_from_slice(ku);
            idx.extend_from_slice(kv);
            out.add_raw(idx, cu * cv);
        }
    }
    Ok(out)
}

/// Interior product `i_x alpha` of a grade-1 multivector over `T` into a
/// grade-`p` multivector over `T`, using the metric `g = omega_E (x) omega_H`.
pub fn interior(x: &LabeledTensor, alpha: &LabeledTensor) -> Result<LabeledTensor> {
    if x.params() != alpha.params() {
        return Err(AlgebraError::ParamsMismatch);
    }
    let gx = single_alt_group(x)?;
    if gx.block_len != 2 || gx.num_blocks() != 1 {
        return Err(AlgebraError::DegreeError("interior expects a grade-1 tangent vector".into()));
    }
    let ga = single_alt_group(alpha)?;
    if ga.block_len != 2 {
        return Err(AlgebraError::DegreeError("interior expects a multivector over T".into()));
    }
    let p = ga.num_blocks();
    if p == 0 {
        return Err(AlgebraError::DegreeError("interior product of a grade-0 element".into()));
    }
    let params = alpha.params();
    let mut out = crate::tensor::zero_t_multivector(params, p - 1);
    for (kx, cx) in x.entries() {
        let (xe, xh) = (kx[0], kx[1]);
        for (ka, ca) in alpha.entries() {
            for k in 0..p {
                let (be, bh) = (ka[2 * k], ka[2 * k + 1]);
                let pairing = params.omega_e(xe, be) as i64 * params.omega_h(xh, bh) as i64;
                if pairing == 0 {
                    continue;
                }
                let sign = if k % 2 == 0 { pairing } else { -pairing };
                let mut rest = Vec::with_capacity(2 * (p - 1));
                rest.extend_from_slice(&ka[..2 * k]);
                rest.extend_from_slice(&ka[2 * k + 2..]);
                out.add_raw(rest, (cx * ca).scale_int(sign));
            }
        }
    }
    Ok(out)
}

/// Projects onto total antisymmetry in the given single-slot positions
/// (idempotent, `1/k!` normalization).  The positions become an alternating
/// group of the result; every other slot is left free.
pub fn alt_group(t: &LabeledTensor, positions: &[usize]) -> Result<LabeledTensor> {
    symmetrize(t, positions, Symmetry::Alternating)
}

/// Projects onto total symmetry in the given positions (idempotent).
pub fn sym_group(t: &LabeledTensor, positions: &[usize]) -> Result<LabeledTensor> {
    symmetrize(t, positions, Symmetry::Symmetric)
}

fn symmetrize(t: &LabeledTensor, positions: &[usize], sym: Symmetry) -> Result<LabeledTensor> {
    if positions.is_empty() {
        return Err(AlgebraError::DegreeError("empty position set".into()));
    }
    let labels: Vec<SlotLabel> = positions.iter().map(|&p| t.slots()[p]).collect();
    if labels.iter().any(|&l| l != labels[0]) {
        return Err(AlgebraError::LabelMismatch(
            "symmetrized positions carry mixed labels".into(),
        ));
    }
    let raw = t.ungroup();
    let k = positions.len();
    let norm = Scalar::from_ratio(1, factorial(k));
    let mut acc =
        LabeledTensor::zero(t.params(), t.slots().to_vec(), free_groups(t.slots().len()))?;
    for (idx, coeff) in raw.entries() {
        for perm in (0..k).permutations(k) {
            let sign = match sym {
                Symmetry::Alternating => perm_sign(&perm),
                _ => 1,
            };
            let mut target = idx.clone();
            for (slot_i, &src_i) in perm.iter().enumerate() {
                target[positions[slot_i]] = idx[positions[src_i]];
            }
            acc.add_raw(target, (coeff * &norm).scale_int(sign as i64));
        }
    }
    let mut groups: Vec<SlotGroup> = (0..t.slots().len())
        .filter(|p| !positions.contains(p))
        .map(SlotGroup::none)
        .collect();
    groups.push(SlotGroup { positions: positions.to_vec(), block_len: 1, sym });
    acc.regroup(groups)
}

fn perm_sign(perm: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) { 1 } else { -1 }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Contracts slots `i` and `j` with the symplectic form matching their
/// common label, dropping both slots.
pub fn contract_pair(t: &LabeledTensor, i: usize, j: usize) -> Result<LabeledTensor> {
    if i == j || i >= t.slots().len() || j >= t.slots().len() {
        return Err(AlgebraError::DegreeError("bad contraction positions".into()));
    }
    let label = t.slots()[i];
    if label != t.slots()[j] {
        return Err(AlgebraError::LabelMismatch(format!(
            "cannot contract an E slot with an H slot (positions {i}, {j})"
        )));
    }
    // expand only the groups the contracted slots live in
    let affected: Vec<usize> = t
        .groups()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.positions.contains(&i) || g.positions.contains(&j))
        .map(|(gi, _)| gi)
        .collect();
    let expanded = t.expand_groups(&affected);
    let params = t.params();

    let remap: Vec<Option<usize>> = {
        let mut next = 0usize;
        (0..t.slots().len())
            .map(|p| {
                if p == i || p == j {
                    None
                } else {
                    let v = Some(next);
                    next += 1;
                    v
                }
            })
            .collect()
    };
    let slots: Vec<SlotLabel> = t
        .slots()
        .iter()
        .enumerate()
        .filter(|(p, _)| *p != i && *p != j)
        .map(|(_, &l)| l)
        .collect();
    let groups: Vec<SlotGroup> = expanded
        .groups()
        .iter()
        .filter(|g| !(g.positions == vec![i]) && !(g.positions == vec![j]))
        .map(|g| SlotGroup {
            positions: g.positions.iter().map(|&p| remap[p].unwrap()).collect(),
            block_len: g.block_len,
            sym: g.sym,
        })
        .collect();
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in expanded.entries() {
        let pairing = match label {
            SlotLabel::E => params.omega_e(idx[i], idx[j]),
            SlotLabel::H => params.omega_h(idx[i], idx[j]),
        };
        if pairing == 0 {
            continue;
        }
        let rest: Vec<u8> = idx
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != i && *p != j)
            .map(|(_, &v)| v)
            .collect();
        out.add_raw(rest, coeff.scale_int(pairing as i64));
    }
    Ok(out)
}

/// Applies a linear substitution slot-by-slot (the diagonal action of a pair
/// of linear maps on `E` and `H`).  Input must be ungrouped; output is
/// ungrouped.
pub fn apply_slotwise<F>(t: &LabeledTensor, f: F) -> Result<LabeledTensor>
where
    F: Fn(SlotLabel, u8) -> Vec<(u8, Scalar)>,
{
    let raw = t.ungroup();
    let mut acc: Vec<(Vec<u8>, Scalar)> =
        raw.entries().map(|(k, v)| (k.clone(), v.clone())).collect();
    for (pos, &label) in t.slots().iter().enumerate() {
        let mut next: Vec<(Vec<u8>, Scalar)> = Vec::new();
        for (idx, coeff) in &acc {
            for (img, c) in f(label, idx[pos]) {
                if c.is_zero() {
                    continue;
                }
                let mut t2 = idx.clone();
                t2[pos] = img;
                next.push((t2, coeff * &c));
            }
        }
        acc = next;
    }
    let mut out = LabeledTensor::zero(t.params(), t.slots().to_vec(), free_groups(t.slots().len()))?;
    for (idx, v) in acc {
        out.add_raw(idx, v);
    }
    Ok(out)
}
