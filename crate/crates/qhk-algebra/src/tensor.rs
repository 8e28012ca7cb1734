use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{AlgebraError, Result};
use crate::params::{ModelParams, TangentIndex};
use crate::scalar::Scalar;

/// Which of the two symplectic factors a tensor slot ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotLabel {
    E,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    None,
    Alternating,
    Symmetric,
}

/// One symmetry group of a tensor: `positions` is split into consecutive
/// blocks of `block_len` slots, and the tensor is (anti)symmetric under
/// permuting whole blocks.  A grade-`p` multivector over `T = E (x) H` is a
/// single alternating group with `block_len = 2` and `p` blocks; a grade-`r`
/// multivector over `E` alone uses `block_len = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlotGroup {
    pub positions: Vec<usize>,
    pub block_len: usize,
    pub sym: Symmetry,
}

impl SlotGroup {
    pub fn none(pos: usize) -> Self {
        Self { positions: vec![pos], block_len: 1, sym: Symmetry::None }
    }

    pub fn alternating(positions: Vec<usize>, block_len: usize) -> Self {
        Self { positions, block_len, sym: Symmetry::Alternating }
    }

    pub fn symmetric(positions: Vec<usize>, block_len: usize) -> Self {
        Self { positions, block_len, sym: Symmetry::Symmetric }
    }

    pub fn num_blocks(&self) -> usize {
        self.positions.len().checked_div(self.block_len).unwrap_or(0)
    }

    fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.positions.chunks(self.block_len)
    }
}

/// Singleton `None` groups for every slot in `0..len`.
pub fn free_groups(len: usize) -> Vec<SlotGroup> {
    (0..len).map(SlotGroup::none).collect()
}

/// A sparse multilinear element with labeled slots.
///
/// Entries map canonical index tuples to the tensor's *expanded* coefficient
/// at that tuple; coefficients at non-canonical tuples follow from the group
/// symmetries (sign for alternating, equality for symmetric).  With this
/// convention a wedge monomial `v1 ^ ... ^ vp` stores coefficient `1` at its
/// sorted tuple and expands to the full signed sum over permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTensor {
    params: ModelParams,
    slots: Vec<SlotLabel>,
    groups: Vec<SlotGroup>,
    entries: BTreeMap<Vec<u8>, Scalar>,
}

impl LabeledTensor {
    pub fn zero(params: ModelParams, slots: Vec<SlotLabel>, groups: Vec<SlotGroup>) -> Result<Self> {
        validate_groups(&slots, &groups)?;
        Ok(Self { params, slots, groups, entries: BTreeMap::new() })
    }

    /// A slotless tensor holding one scalar.
    pub fn scalar(params: ModelParams, value: Scalar) -> Self {
        let mut t = Self { params, slots: vec![], groups: vec![], entries: BTreeMap::new() };
        t.add_raw(vec![], value);
        t
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn slots(&self) -> &[SlotLabel] {
        &self.slots
    }

    pub fn groups(&self) -> &[SlotGroup] {
        &self.groups
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The scalar held by a slotless tensor.
    pub fn as_scalar(&self) -> Result<Scalar> {
        if !self.slots.is_empty() {
            return Err(AlgebraError::DegreeError("expected a slotless tensor".into()));
        }
        Ok(self.entries.get(&vec![]).cloned().unwrap_or_else(Scalar::zero))
    }

    /// Canonicalizes `idx` in place per the group symmetries.  Returns the
    /// sign picked up by alternating reordering, or `None` if the tuple dies
    /// (repeated block inside an alternating group).
    fn canonicalize(&self, idx: &mut [u8]) -> Option<i8> {
        let mut sign = 1i8;
        for g in &self.groups {
            match g.sym {
                Symmetry::None => {}
                Symmetry::Alternating | Symmetry::Symmetric => {
                    let mut blocks: Vec<Vec<u8>> =
                        g.blocks().map(|b| b.iter().map(|&p| idx[p]).collect()).collect();
                    // insertion sort, counting swaps
                    let mut swaps = 0usize;
                    for i in 1..blocks.len() {
                        let mut j = i;
                        while j > 0 && blocks[j - 1] > blocks[j] {
                            blocks.swap(j - 1, j);
                            swaps += 1;
                            j -= 1;
                        }
                    }
                    if g.sym == Symmetry::Alternating {
                        if blocks.windows(2).any(|w| w[0] == w[1]) {
                            return None;
                        }
                        if swaps % 2 == 1 {
                            sign = -sign;
                        }
                    }
                    for (b, chunk) in blocks.iter().zip(g.blocks().collect::<Vec<_>>()) {
                        for (&v, &p) in b.iter().zip(chunk) {
                            idx[p] = v;
                        }
                    }
                }
            }
        }
        Some(sign)
    }

    /// Adds `value` at the (possibly non-canonical) tuple `idx`.
    pub fn add_raw(&mut self, mut idx: Vec<u8>, value: Scalar) {
        debug_assert_eq!(idx.len(), self.slots.len());
        if value.is_zero() {
            return;
        }
        let Some(sign) = self.canonicalize(&mut idx) else { return };
        let v = if sign < 0 { -value } else { value };
        use std::collections::btree_map::Entry;
        match self.entries.entry(idx) {
            Entry::Vacant(slot) => {
                slot.insert(v);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &v;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.entries.clear();
            return out;
        }
        for v in out.entries.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(AlgebraError::ParamsMismatch);
        }
        if self.slots != other.slots || self.groups != other.groups {
            return Err(AlgebraError::LabelMismatch(
                "cannot add tensors with different slot signatures".into(),
            ));
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let slot = out.entries.entry(k.clone()).or_insert_with(Scalar::zero);
            *slot += v;
        }
        out.entries.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// All expanded `(tuple, coefficient)` pairs implied by the symmetry
    /// groups.
    pub fn expand_entries(&self) -> BTreeMap<Vec<u8>, Scalar> {
        let all: Vec<usize> = (0..self.groups.len()).collect();
        self.expand_over(&all)
    }

    fn expand_over(&self, which: &[usize]) -> BTreeMap<Vec<u8>, Scalar> {
        let mut out = BTreeMap::new();
        for (idx, coeff) in &self.entries {
            let mut work: Vec<(Vec<u8>, i8)> = vec![(idx.clone(), 1)];
            for &gi in which {
                let g = &self.groups[gi];
                if g.sym == Symmetry::None || g.num_blocks() <= 1 {
                    continue;
                }
                let chunks: Vec<&[usize]> = g.blocks().collect();
                let k = chunks.len();
                let mut next = Vec::new();
                for (tuple, sgn) in &work {
                    let blocks: Vec<Vec<u8>> =
                        chunks.iter().map(|c| c.iter().map(|&p| tuple[p]).collect()).collect();
                    let mut seen = BTreeSet::new();
                    for perm in (0..k).permutations(k) {
                        let arranged: Vec<&Vec<u8>> = perm.iter().map(|&i| &blocks[i]).collect();
                        if g.sym == Symmetry::Symmetric && !seen.insert(arranged.clone()) {
                            continue;
                        }
                        let psign = match g.sym {
                            Symmetry::Alternating => perm_parity(&perm),
                            _ => 1,
                        };
                        let mut t = tuple.clone();
                        for (c, b) in chunks.iter().zip(&arranged) {
                            for (&p, &v) in c.iter().zip(b.iter()) {
                                t[p] = v;
                            }
                        }
                        next.push((t, sgn * psign));
                    }
                }
                work = next;
            }
            for (tuple, sgn) in work {
                let v = if sgn < 0 { -coeff.clone() } else { coeff.clone() };
                let slot = out.entry(tuple).or_insert_with(Scalar::zero);
                *slot += &v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Replaces the groups listed in `which` by free slots, materializing
    /// their orbits; the remaining groups keep canonical storage.
    pub fn expand_groups(&self, which: &[usize]) -> Self {
        let expanded = self.expand_over(which);
        let mut groups = Vec::new();
        for (gi, g) in self.groups.iter().enumerate() {
            if which.contains(&gi) {
                for &p in &g.positions {
                    groups.push(SlotGroup::none(p));
                }
            } else {
                groups.push(g.clone());
            }
        }
        let mut out = Self {
            params: self.params,
            slots: self.slots.clone(),
            groups,
            entries: BTreeMap::new(),
        };
        for (idx, v) in expanded {
            out.add_raw(idx, v);
        }
        out
    }

    /// Fully expanded copy: every slot its own `None` group.
    pub fn ungroup(&self) -> Self {
        let all: Vec<usize> = (0..self.groups.len()).collect();
        self.expand_groups(&all)
    }

    /// Reinterprets the tensor under `groups`, verifying it actually has the
    /// claimed symmetries.
    pub fn regroup(&self, groups: Vec<SlotGroup>) -> Result<Self> {
        validate_groups(&self.slots, &groups)?;
        let raw = self.expand_entries();
        let mut out = Self {
            params: self.params,
            slots: self.slots.clone(),
            groups,
            entries: BTreeMap::new(),
        };
        for (idx, v) in &raw {
            let mut key = idx.clone();
            match out.canonicalize(&mut key) {
                None => {
                    return Err(AlgebraError::GroupError(
                        "nonzero coefficient on an alternating-degenerate tuple".into(),
                    ))
                }
                Some(sign) => {
                    let want = if sign < 0 { -v.clone() } else { v.clone() };
                    match out.entries.get(&key) {
                        None => {
                            out.entries.insert(key, want);
                        }
                        Some(existing) => {
                            if *existing != want {
                                return Err(AlgebraError::GroupError(
                                    "coefficients violate the requested symmetry".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        if out.expand_entries() != raw {
            return Err(AlgebraError::GroupError(
                "orbit is not saturated under the requested symmetry".into(),
            ));
        }
        Ok(out)
    }

    /// Equality as multilinear maps, ignoring how entries are grouped.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.params == other.params
            && self.slots == other.slots
            && self.expand_entries() == other.expand_entries()
    }

    /// Slot permutation (pure bookkeeping, no signs): slot `k` of the result
    /// is slot `perm[k]` of the input.  Requires a fully ungrouped tensor.
    pub fn permute_slots(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.slots.len() {
            return Err(AlgebraError::LabelMismatch("permutation length mismatch".into()));
        }
        if self.groups.iter().any(|g| g.sym != Symmetry::None || g.positions.len() != 1) {
            return Err(AlgebraError::GroupError(
                "permute_slots requires an ungrouped tensor".into(),
            ));
        }
        let slots: Vec<SlotLabel> = perm.iter().map(|&p| self.slots[p]).collect();
        let mut out = Self {
            params: self.params,
            slots,
            groups: free_groups(perm.len()),
            entries: BTreeMap::new(),
        };
        for (idx, v) in &self.entries {
            let t: Vec<u8> = perm.iter().map(|&p| idx[p]).collect();
            out.add_raw(t, v.clone());
        }
        Ok(out)
    }

    /// Deterministic text serialization: signature header plus one sorted
    /// line per canonical entry.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("slots:");
        for l in &self.slots {
            s.push(' ');
            s.push(match l {
                SlotLabel::E => 'E',
                SlotLabel::H => 'H',
            });
        }
        s.push('\n');
        s.push_str("groups:");
        for g in &self.groups {
            let tag = match g.sym {
                Symmetry::None => "none",
                Symmetry::Alternating => "alt",
                Symmetry::Symmetric => "sym",
            };
            let _ = write!(
                s,
                " {}/{}[{}]",
                tag,
                g.block_len,
                g.positions.iter().map(|p| p.to_string()).join(",")
            );
        }
        s.push('\n');
        for (idx, v) in &self.entries {
            let _ = writeln!(s, "{} = {}", idx.iter().map(|i| i.to_string()).join(","), v);
        }
        s
    }
}

fn perm_parity(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut parity = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        parity += len - 1;
    }
    if parity.is_multiple_of(2) { 1 } else { -1 }
}

fn validate_groups(slots: &[SlotLabel], groups: &[SlotGroup]) -> Result<()> {
    let mut covered = vec![false; slots.len()];
    for g in groups {
        if g.block_len == 0 || g.positions.len() % g.block_len != 0 {
            return Err(AlgebraError::GroupError("bad block length".into()));
        }
        for &p in &g.positions {
            if p >= slots.len() || covered[p] {
                return Err(AlgebraError::GroupError("groups must partition the slots".into()));
            }
            covered[p] = true;
        }
        // all blocks in a group must carry the same label signature
        let sig: Vec<SlotLabel> = g
            .positions
            .iter()
            .take(g.block_len)
            .map(|&p| slots[p])
            .collect();
        for block in g.blocks() {
            let bsig: Vec<SlotLabel> = block.iter().map(|&p| slots[p]).collect();
            if bsig != sig {
                return Err(AlgebraError::LabelMismatch(
                    "blocks inside a group carry different labels".into(),
                ));
            }
        }
    }
    if covered.iter().any(|&c| !c) {
        return Err(AlgebraError::GroupError("groups must partition the slots".into()));
    }
    Ok(())
}

/// Grade-1 multivector over `T` for a tangent basis index.
pub fn tangent_vector(params: ModelParams, x: TangentIndex) -> LabeledTensor {
    let mut t = LabeledTensor {
        params,
        slots: vec![SlotLabel::E, SlotLabel::H],
        groups: vec![SlotGroup::alternating(vec![0, 1], 2)],
        entries: BTreeMap::new(),
    };
    t.add_raw(vec![x.e, x.h], Scalar::one());
    t
}

/// Grade-1 multivector over `E`.
pub fn e_vector(params: ModelParams, a: u8) -> LabeledTensor {
    let mut t = LabeledTensor {
        params,
        slots: vec![SlotLabel::E],
        groups: vec![SlotGroup::alternating(vec![0], 1)],
        entries: BTreeMap::new(),
    };
    t.add_raw(vec![a], Scalar::one());
    t
}

/// Zero multivector of grade `p` over `T` (one alternating group of
/// `(E, H)` blocks).
pub fn zero_t_multivector(params: ModelParams, p: usize) -> LabeledTensor {
    let mut slots = Vec::with_capacity(2 * p);
    for _ in 0..p {
        slots.push(SlotLabel::E);
        slots.push(SlotLabel::H);
    }
    let groups = vec![SlotGroup::alternating((0..2 * p).collect(), 2)];
    LabeledTensor { params, slots, groups, entries: BTreeMap::new() }
}

/// Zero multivector of grade `r` over `E`.
pub fn zero_e_multivector(params: ModelParams, r: usize) -> LabeledTensor {
    let slots = vec![SlotLabel::E; r];
    let groups = vec![SlotGroup::alternating((0..r).collect(), 1)];
    LabeledTensor { params, slots, groups, entries: BTreeMap::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams::new(2).unwrap()
    }

    #[test]
    fn alternating_canonicalization_signs() {
        let p = params();
        let mut t = zero_t_multivector(p, 2);
        // e2 h ^ e1 h inserted out of order picks up a minus sign
        t.add_raw(vec![2, 1, 1, 1], Scalar::one());
        let entries: Vec<_> = t.entries().collect();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].0, &vec![1, 1, 2, 1]);
        assert_eq!(entries[0].1, &Scalar::from_int(-1));
        // repeated block dies
        let mut z = zero_t_multivector(p, 2);
        z.add_raw(vec![1, 1, 1, 1], Scalar::one());
        assert!(z.is_zero());
    }

    #[test]
    fn symmetric_storage_accumulates() {
        let p = params();
        let slots = vec![SlotLabel::H, SlotLabel::H];
        let groups = vec![SlotGroup::symmetric(vec![0, 1], 1)];
        let mut t = LabeledTensor::zero(p, slots, groups).unwrap();
        t.add_raw(vec![2, 1], Scalar::one());
        t.add_raw(vec![1, 2], Scalar::one());
        let entries: Vec<_> = t.entries().collect();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].0, &vec![1, 2]);
        assert_eq!(entries[0].1, &Scalar::from_int(2));
        // expansion mirrors the canonical value to both arrangements
        let raw = t.expand_entries();
        assert_eq!(raw.len(), 2);
        assert_eq!(raw[&vec![1u8, 2]], Scalar::from_int(2));
        assert_eq!(raw[&vec![2u8, 1]], Scalar::from_int(2));
    }

    #[test]
    fn expansion_of_a_wedge_is_the_signed_orbit() {
        let p = params();
        let mut t = zero_t_multivector(p, 2);
        t.add_raw(vec![1, 1, 2, 1], Scalar::one());
        let raw = t.expand_entries();
        assert_eq!(raw.len(), 2);
        assert_eq!(raw[&vec![1u8, 1, 2, 1]], Scalar::one());
        assert_eq!(raw[&vec![2u8, 1, 1, 1]], Scalar::from_int(-1));
    }

    #[test]
    fn regroup_round_trips_and_rejects() {
        let p = params();
        let mut t = zero_t_multivector(p, 2);
        t.add_raw(vec![1, 1, 2, 2], Scalar::from_int(3));
        let u = t.ungroup();
        let back = u.regroup(t.groups().to_vec()).unwrap();
        assert_eq!(back, t);
        // a non-symmetric raw tensor must be rejected
        let mut bad = LabeledTensor::zero(
            p,
            vec![SlotLabel::E, SlotLabel::E],
            free_groups(2),
        )
        .unwrap();
        bad.add_raw(vec![1, 2], Scalar::one());
        assert!(bad
            .regroup(vec![SlotGroup::alternating(vec![0, 1], 1)])
            .is_err());
    }

    #[test]
    fn zero_keeps_its_signature() {
        let p = params();
        let z = zero_t_multivector(p, 4);
        assert!(z.is_zero());
        assert_eq!(z.slots().len(), 8);
        let z2 = zero_t_multivector(p, 3);
        assert!(z.add(&z2).is_err());
    }

    #[test]
    fn text_serialization_is_sorted_and_stable() {
        let p = params();
        let mut t = zero_t_multivector(p, 1);
        t.add_raw(vec![2, 1], Scalar::from_int(5));
        t.add_raw(vec![1, 2], Scalar::from_ratio(-1, 3));
        let text = t.to_text();
        assert_eq!(
            text,
            "slots: E H\ngroups: alt/2[0,1]\n1,2 = -1/3+0/1*i\n2,1 = 5/1+0/1*i\n"
        );
    }
}
