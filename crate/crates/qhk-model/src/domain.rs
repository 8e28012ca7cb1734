//! The six-summand decomposition of the domain
//! `T* (x) (S2H L20E) = HE + H L30E + HK + (S3H)E + S3H L30E + (S3H)K`.
//!
//! Projectors are built from equivariant contraction and insertion maps; the
//! normalizing constants are recovered at runtime from `M . M = c M` on probe
//! elements instead of being hard-coded.
//!
//! Projectors act on a normalized slot layout
//! `[H_free, (H H)_sym, E_free, (E E)_alt]`: the `H`-side maps touch the
//! leading three slots, the `E`-side maps the trailing three.

use qhk_algebra::error::{AlgebraError, Result};
use qhk_algebra::ops::contract_pair;
use qhk_algebra::symplectic::pr_lambda_r0;
use qhk_algebra::{LabeledTensor, ModelParams, OneFormField, Scalar, SlotGroup, SlotLabel};

use crate::embed::{proportionality_ratio, Embedding};

fn normalized_zero(params: ModelParams) -> LabeledTensor {
    LabeledTensor::zero(
        params,
        vec![
            SlotLabel::H,
            SlotLabel::H,
            SlotLabel::H,
            SlotLabel::E,
            SlotLabel::E,
            SlotLabel::E,
        ],
        normalized_groups(),
    )
    .expect("valid signature")
}

fn normalized_groups() -> Vec<SlotGroup> {
    vec![
        SlotGroup::none(0),
        SlotGroup::symmetric(vec![1, 2], 1),
        SlotGroup::none(3),
        SlotGroup::alternating(vec![4, 5], 1),
    ]
}

/// `H`-side trace `H (x) S2H -> H`: contract the free `H` slot with the
/// first symmetric slot.
fn h_trace(t: &LabeledTensor) -> Result<LabeledTensor> {
    contract_pair(t, 0, 1)
}

/// `H`-side insertion `H -> H (x) S2H` on the leading slot: the free value
/// `w` becomes the sum over the symplectic dual basis of
/// `dual (x) (w . h_s + h_s . w)`.
fn h_insert(t: &LabeledTensor) -> Result<LabeledTensor> {
    let params = t.params();
    let mut slots = vec![SlotLabel::H, SlotLabel::H, SlotLabel::H];
    slots.extend_from_slice(&t.slots()[1..]);
    let mut groups = vec![SlotGroup::none(0), SlotGroup::symmetric(vec![1, 2], 1)];
    for g in &t.groups()[1..] {
        groups.push(SlotGroup {
            positions: g.positions.iter().map(|&p| p + 2).collect(),
            block_len: g.block_len,
            sym: g.sym,
        });
    }
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        let w = idx[0];
        for s in 1..=2u8 {
            let (sd, dual) = params.symplectic_dual_h(s);
            let mult = if w == s { 2 } else { 1 };
            let mut key = Vec::with_capacity(idx.len() + 2);
            key.push(dual);
            key.push(w.min(s));
            key.push(w.max(s));
            key.extend_from_slice(&idx[1..]);
            out.add_raw(key, coeff.scale_int(sd as i64 * mult));
        }
    }
    Ok(out)
}

/// `E`-side trace `E (x) L20E -> E`: contract the free `E` slot (third from
/// the end) with the first slot of the trailing pair.
fn e_trace(t: &LabeledTensor) -> Result<LabeledTensor> {
    let k = t.slots().len();
    contract_pair(t, k - 3, k - 2)
}

/// `E`-side insertion `E -> E (x) L20E` on the trailing slot.
fn e_insert(t: &LabeledTensor) -> Result<LabeledTensor> {
    let params = t.params();
    let k = t.slots().len();
    let mut slots = t.slots().to_vec();
    slots.push(SlotLabel::E);
    slots.push(SlotLabel::E);
    let mut groups: Vec<SlotGroup> = t
        .groups()
        .iter()
        .filter(|g| g.positions != vec![k - 1])
        .cloned()
        .collect();
    groups.push(SlotGroup::none(k - 1));
    groups.push(SlotGroup::alternating(vec![k, k + 1], 1));
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        let w = idx[k - 1];
        for a in 1..=params.dim_e() as u8 {
            if a == w {
                continue;
            }
            let (sa, dual) = params.symplectic_dual_e(a);
            let mut key = Vec::with_capacity(idx.len() + 2);
            key.extend_from_slice(&idx[..k - 1]);
            key.push(dual);
            key.push(w);
            key.push(a);
            out.add_raw(key, coeff.scale_int(sa as i64));
        }
    }
    pr_lambda_r0(&out)
}

/// Wedge of the free `E` slot into the trailing pair: `E (x) L20E -> L3E`.
fn e_wedge_all(t: &LabeledTensor) -> Result<LabeledTensor> {
    let params = t.params();
    let k = t.slots().len();
    let slots = t.slots().to_vec();
    let mut groups: Vec<SlotGroup> = t
        .groups()
        .iter()
        .filter(|g| g.positions != vec![k - 3] && g.positions != vec![k - 2, k - 1])
        .cloned()
        .collect();
    groups.push(SlotGroup::alternating(vec![k - 3, k - 2, k - 1], 1));
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        out.add_raw(idx.clone(), coeff.clone());
    }
    Ok(out)
}

/// Splitting `L3E -> E (x) L20E`: pair the trailing triple against the
/// symplectic dual basis and project the remaining pair to the primitive
/// part.  Slot count is preserved: `[prefix | (E E E) alt]` becomes
/// `[prefix | E free, (E E) alt]`.
fn e_split_back(t: &LabeledTensor) -> Result<LabeledTensor> {
    let params = t.params();
    let k = t.slots().len();
    let slots = t.slots().to_vec();
    let mut groups: Vec<SlotGroup> = t
        .groups()
        .iter()
        .filter(|g| g.positions != vec![k - 3, k - 2, k - 1])
        .cloned()
        .collect();
    groups.push(SlotGroup::none(k - 3));
    groups.push(SlotGroup::alternating(vec![k - 2, k - 1], 1));
    let mut out = LabeledTensor::zero(params, slots, groups)?;
    for (idx, coeff) in t.entries() {
        for a in 1..=params.dim_e() as u8 {
            let (sa, dual) = params.symplectic_dual_e(a);
            // omega-interior of e_a into the trailing triple
            for drop in 0..3 {
                let w = params.omega_e(a, idx[k - 3 + drop]);
                if w == 0 {
                    continue;
                }
                let sign = if drop % 2 == 0 { w } else { -w };
                let mut key = Vec::with_capacity(k);
                key.extend_from_slice(&idx[..k - 3]);
                key.push(dual);
                for (m, &v) in idx[k - 3..].iter().enumerate() {
                    if m != drop {
                        key.push(v);
                    }
                }
                out.add_raw(key, coeff.scale_int(sa as i64 * sign as i64));
            }
        }
    }
    pr_lambda_r0(&out)
}

/// The six projector outputs of one domain element, as 4-vector valued
/// fields summing back to the input.
#[derive(Debug, Clone)]
pub struct DomainComponents {
    /// order: HE, H L30E, HK, (S3H)E, S3H L30E, (S3H)K
    pub fields: [OneFormField; 6],
}

pub const COMPONENT_NAMES: [&str; 6] = ["he", "h_l30", "hk", "s3h_e", "s3h_l30", "s3h_k"];

impl DomainComponents {
    pub fn he(&self) -> &OneFormField {
        &self.fields[0]
    }
    pub fn h_l30(&self) -> &OneFormField {
        &self.fields[1]
    }
    pub fn hk(&self) -> &OneFormField {
        &self.fields[2]
    }
    pub fn s3h_e(&self) -> &OneFormField {
        &self.fields[3]
    }
    pub fn s3h_l30(&self) -> &OneFormField {
        &self.fields[4]
    }
    pub fn s3h_k(&self) -> &OneFormField {
        &self.fields[5]
    }

    pub fn resum(&self) -> Result<OneFormField> {
        let mut acc = self.fields[0].clone();
        for f in &self.fields[1..] {
            acc = acc.add(f)?;
        }
        Ok(acc)
    }
}

/// Equivariant projectors for the six-summand decomposition, with their
/// Schur constants computed at construction.
pub struct DomainProjectors {
    params: ModelParams,
    kappa_h: Scalar,
    kappa_e: Scalar,
    /// `None` when the primitive grade-3 part is zero-dimensional.
    kappa_30: Option<Scalar>,
}

impl DomainProjectors {
    pub fn new(params: ModelParams) -> Result<Self> {
        let probes = probe_tensors(params);
        let kappa_h = schur_constant(&probes, |t| h_insert(&h_trace(t)?))?
            .ok_or_else(|| AlgebraError::DomainError("H-side Schur constant vanished".into()))?;
        let kappa_e = schur_constant(&probes, |t| e_insert(&e_trace(t)?))?
            .ok_or_else(|| AlgebraError::DomainError("E-side Schur constant vanished".into()))?;
        let kappa_30 = schur_constant(&probes, |t| e_split_back(&pr_lambda_r0(&e_wedge_all(t)?)?))?;
        Ok(Self { params, kappa_h, kappa_e, kappa_30 })
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    /// `H`-side projector onto the `H` summand of `H (x) S2H`.
    pub fn project_h(&self, t: &LabeledTensor) -> Result<LabeledTensor> {
        h_insert(&h_trace(t)?)?.scale(&self.kappa_h.inv()).regroup(t.groups().to_vec())
    }

    /// `E`-side projector onto the `E` summand of `E (x) L20E`
    /// (free `E` slot third from the end, primitive pair trailing).
    pub fn project_e(&self, t: &LabeledTensor) -> Result<LabeledTensor> {
        e_insert(&e_trace(t)?)?.scale(&self.kappa_e.inv()).regroup(t.groups().to_vec())
    }

    /// `E`-side projector onto the primitive grade-3 summand.
    pub fn project_l30(&self, t: &LabeledTensor) -> Result<LabeledTensor> {
        match &self.kappa_30 {
            None => Ok(t.scale(&Scalar::zero())),
            Some(k) => e_split_back(&pr_lambda_r0(&e_wedge_all(t)?)?)?
                .scale(&k.inv())
                .regroup(t.groups().to_vec()),
        }
    }

    /// `E`-side projector onto the complement summand.
    pub fn project_k(&self, t: &LabeledTensor) -> Result<LabeledTensor> {
        t.sub(&self.project_e(t)?)?.sub(&self.project_l30(t)?)
    }

    /// All six projections of a normalized-layout domain tensor, in the
    /// fixed component order.
    pub fn project_all(&self, t: &LabeledTensor) -> Result<[LabeledTensor; 6]> {
        let h = self.project_h(t)?;
        let s3h = t.sub(&h)?;
        Ok([
            self.project_e(&h)?,
            self.project_l30(&h)?,
            self.project_k(&h)?,
            self.project_e(&s3h)?,
            self.project_l30(&s3h)?,
            self.project_k(&s3h)?,
        ])
    }
}

fn probe_tensors(params: ModelParams) -> Vec<LabeledTensor> {
    let sigmas = crate::embed::s2h_basis(params);
    let betas = crate::embed::l20_basis(params);
    let mut out = Vec::new();
    for hx in 1..=2u8 {
        for sigma in &sigmas {
            for ex in 1..=params.dim_e() as u8 {
                for beta in betas.iter().take(4) {
                    let mut t = normalized_zero(params).ungroup();
                    for (sk, sv) in sigma.expand_entries() {
                        for (bk, bv) in beta.expand_entries() {
                            t.add_raw(vec![hx, sk[0], sk[1], ex, bk[0], bk[1]], &sv * &bv);
                        }
                    }
                    out.push(t.regroup(normalized_groups()).expect("probe is symmetric"));
                }
            }
        }
    }
    out
}

fn schur_constant<F>(probes: &[LabeledTensor], m: F) -> Result<Option<Scalar>>
where
    F: Fn(&LabeledTensor) -> Result<LabeledTensor>,
{
    for t in probes {
        let w = m(t)?;
        if w.is_zero() {
            continue;
        }
        let w2 = m(&w.regroup(t.groups().to_vec())?)?;
        let ratio = proportionality_ratio(&w2, &w).ok_or_else(|| {
            AlgebraError::DomainError("composite map is not a scalar on its image".into())
        })?;
        if ratio.is_zero() {
            return Err(AlgebraError::DomainError("nilpotent composite map".into()));
        }
        return Ok(Some(ratio));
    }
    Ok(None)
}

/// A fixed, deterministic basis of the full domain: one field per
/// `(tangent index, sigma_k, beta_m)`, ordered tangent-major.
pub fn domain_basis(params: ModelParams, emb: &Embedding) -> Result<Vec<OneFormField>> {
    let mut images = Vec::new();
    for sigma in emb.s2h() {
        for beta in emb.l20() {
            images.push(emb.embed(sigma, beta)?);
        }
    }
    let mut out = Vec::with_capacity(params.dim_t() * images.len());
    for x in params.tangent_basis() {
        for img in &images {
            let mut field = OneFormField::zero_like(img);
            field.set(x, img.clone())?;
            out.push(field);
        }
    }
    Ok(out)
}

/// Expected dimension of the domain.
pub fn domain_dim(params: ModelParams) -> usize {
    let n = params.n() as usize;
    4 * n * 3 * (2 * n * n - n - 1)
}

fn to_normalized(pre_field: &OneFormField) -> Result<LabeledTensor> {
    let t = pre_field.to_tensor();
    t.ungroup().permute_slots(&[1, 2, 3, 0, 4, 5])?.regroup(normalized_groups())
}

fn from_normalized(t: &LabeledTensor) -> Result<OneFormField> {
    let back = t.ungroup().permute_slots(&[3, 0, 1, 2, 4, 5])?.regroup(vec![
        SlotGroup::none(0),
        SlotGroup::none(1),
        SlotGroup::symmetric(vec![2, 3], 1),
        SlotGroup::alternating(vec![4, 5], 1),
    ])?;
    OneFormField::from_tensor(&back)
}

/// Decomposes a domain element (a field of embedded 4-vectors) into its six
/// components, each returned again as a field of embedded 4-vectors.
pub fn domain_decompose(
    eta: &OneFormField,
    emb: &Embedding,
    proj: &DomainProjectors,
) -> Result<DomainComponents> {
    let mut pre_field: Option<OneFormField> = None;
    for (&x, value) in eta.support() {
        let pre = emb
            .preimage(value)?
            .ok_or_else(|| AlgebraError::DomainError("field value outside the domain".into()))?;
        let field = pre_field.get_or_insert_with(|| OneFormField::zero_like(&pre));
        field.set(x, pre)?;
    }
    let Some(pre_field) = pre_field else {
        // zero input: six zero fields
        let zero = OneFormField::zero_like(&crate::probe::alpha0(eta.params()));
        return Ok(DomainComponents { fields: std::array::from_fn(|_| zero.clone()) });
    };
    decompose_preimage_field(&pre_field, emb, proj)
}

/// Same decomposition, entered directly with the preimage-valued field.
pub fn decompose_preimage_field(
    pre_field: &OneFormField,
    emb: &Embedding,
    proj: &DomainProjectors,
) -> Result<DomainComponents> {
    let normalized = to_normalized(pre_field)?;
    let parts = proj.project_all(&normalized)?;
    let mut fields: Vec<OneFormField> = Vec::with_capacity(6);
    for part in &parts {
        let pre = from_normalized(part)?;
        let mut out: Option<OneFormField> = None;
        for (&x, value) in pre.support() {
            let embedded = emb.embed_tensor(value)?;
            out.get_or_insert_with(|| OneFormField::zero_like(&embedded))
                .set(x, embedded)?;
        }
        let field = out
            .unwrap_or_else(|| OneFormField::zero_like(&crate::probe::alpha0(proj.params())));
        fields.push(field);
    }
    Ok(DomainComponents { fields: fields.try_into().expect("six components") })
}
