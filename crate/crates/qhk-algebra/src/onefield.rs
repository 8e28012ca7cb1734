use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::params::{ModelParams, TangentIndex};
use crate::scalar::Scalar;
use crate::tensor::{LabeledTensor, SlotGroup, SlotLabel};

/// A map from the tangent basis to tensor values, all sharing one slot
/// signature.  Missing keys mean zero.  This is the shape of every 1-form
/// with multivector values handled by the pipelines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneFormField {
    params: ModelParams,
    value_slots: Vec<SlotLabel>,
    value_groups: Vec<SlotGroup>,
    values: BTreeMap<TangentIndex, LabeledTensor>,
}

impl OneFormField {
    /// Zero field whose values carry the signature of `template`.
    pub fn zero_like(template: &LabeledTensor) -> Self {
        Self {
            params: template.params(),
            value_slots: template.slots().to_vec(),
            value_groups: template.groups().to_vec(),
            values: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn value_slots(&self) -> &[SlotLabel] {
        &self.value_slots
    }

    pub fn value_groups(&self) -> &[SlotGroup] {
        &self.value_groups
    }

    pub fn zero_value(&self) -> LabeledTensor {
        LabeledTensor::zero(self.params, self.value_slots.clone(), self.value_groups.clone())
            .expect("signature validated at construction")
    }

    pub fn set(&mut self, x: TangentIndex, value: LabeledTensor) -> Result<()> {
        if value.params() != self.params {
            return Err(AlgebraError::ParamsMismatch);
        }
        if value.slots() != self.value_slots.as_slice()
            || value.groups() != self.value_groups.as_slice()
        {
            return Err(AlgebraError::LabelMismatch(
                "field value has a different slot signature".into(),
            ));
        }
        if value.is_zero() {
            self.values.remove(&x);
        } else {
            self.values.insert(x, value);
        }
        Ok(())
    }

    pub fn add_value(&mut self, x: TangentIndex, value: LabeledTensor) -> Result<()> {
        let current = self.value(x);
        self.set(x, current.add(&value)?)
    }

    pub fn value(&self, x: TangentIndex) -> LabeledTensor {
        self.values.get(&x).cloned().unwrap_or_else(|| self.zero_value())
    }

    pub fn support(&self) -> impl Iterator<Item = (&TangentIndex, &LabeledTensor)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params
            || self.value_slots != other.value_slots
            || self.value_groups != other.value_groups
        {
            return Err(AlgebraError::LabelMismatch("field signatures differ".into()));
        }
        let mut out = self.clone();
        for (&x, v) in &other.values {
            out.add_value(x, v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.values.clear();
            return out;
        }
        for v in out.values.values_mut() {
            *v = v.scale(c);
        }
        out
    }

    /// The tensor `sum_b dual(b) (x) value(b)` whose metric contraction with
    /// `X` in the leading `(E, H)` slot pair recovers `value(X)`.
    pub fn to_tensor(&self) -> LabeledTensor {
        let mut slots = vec![SlotLabel::E, SlotLabel::H];
        slots.extend_from_slice(&self.value_slots);
        let mut groups = vec![SlotGroup::none(0), SlotGroup::none(1)];
        for g in &self.value_groups {
            groups.push(SlotGroup {
                positions: g.positions.iter().map(|&p| p + 2).collect(),
                block_len: g.block_len,
                sym: g.sym,
            });
        }
        let mut out = LabeledTensor::zero(self.params, slots, groups)
            .expect("valid signature by construction");
        for (&x, value) in &self.values {
            let (sign, d) = self.params.metric_dual(x);
            for (idx, coeff) in value.entries() {
                let mut key = Vec::with_capacity(idx.len() + 2);
                key.push(d.e);
                key.push(d.h);
                key.extend_from_slice(idx);
                out.add_raw(key, coeff.scale_int(sign as i64));
            }
        }
        out
    }

    /// Inverse of [`Self::to_tensor`]: evaluates the leading slot pair
    /// against each tangent basis vector through the metric.
    pub fn from_tensor(t: &LabeledTensor) -> Result<Self> {
        if t.slots().len() < 2
            || t.slots()[0] != SlotLabel::E
            || t.slots()[1] != SlotLabel::H
            || t.groups().first() != Some(&SlotGroup::none(0))
            || t.groups().get(1) != Some(&SlotGroup::none(1))
        {
            return Err(AlgebraError::LabelMismatch(
                "expected a tensor with free leading (E, H) slots".into(),
            ));
        }
        let params = t.params();
        let value_slots: Vec<SlotLabel> = t.slots()[2..].to_vec();
        let value_groups: Vec<SlotGroup> = t.groups()[2..]
            .iter()
            .map(|g| SlotGroup {
                positions: g.positions.iter().map(|&p| p - 2).collect(),
                block_len: g.block_len,
                sym: g.sym,
            })
            .collect();
        let mut out = Self {
            params,
            value_slots: value_slots.clone(),
            value_groups: value_groups.clone(),
            values: BTreeMap::new(),
        };
        let zero = LabeledTensor::zero(params, value_slots, value_groups)?;
        let mut acc: BTreeMap<TangentIndex, LabeledTensor> = BTreeMap::new();
        for (idx, coeff) in t.entries() {
            let prefix = TangentIndex::new(idx[0], idx[1]);
            let (sign, target) = params.metric_dual(prefix);
            let entry = acc.entry(target).or_insert_with(|| zero.clone());
            let mut rest = zero.clone();
            rest.add_raw(idx[2..].to_vec(), coeff.scale_int(sign as i64));
            *entry = entry.add(&rest)?;
        }
        for (x, v) in acc {
            out.set(x, v)?;
        }
        Ok(out)
    }
}
