//! The equivariant embedding of `S2H (x) L20E` into the 4-vectors, its
//! membership test, and the bases of both sides.
//!
//! The identification of the wedge square of `S2H` with `S2H` itself goes
//! through commutators of the associated trace-free endomorphisms of `H`;
//! the one free normalization is fixed at construction time so that the
//! distinguished probe 4-vector is reproduced on the nose.

use std::collections::BTreeMap;

use itertools::Itertools;

use qhk_algebra::error::{AlgebraError, Result};
use qhk_algebra::linalg::{LinearSolver, QMatrix};
use qhk_algebra::ops::wedge;
use qhk_algebra::symplectic::{contract_omega_er, omega_e_bivector};
use qhk_algebra::tensor::{e_vector, free_groups, zero_t_multivector};
use qhk_algebra::{LabeledTensor, ModelParams, Scalar, SlotGroup, SlotLabel};

use crate::probe::alpha0;

/// The three symmetric 2-tensors `h h`, `h tilde(h) + tilde(h) h`,
/// `tilde(h) tilde(h)` spanning `S2H`.
pub fn s2h_basis(params: ModelParams) -> [LabeledTensor; 3] {
    let make = |u: u8, v: u8| {
        let mut t = LabeledTensor::zero(
            params,
            vec![SlotLabel::H, SlotLabel::H],
            vec![SlotGroup::symmetric(vec![0, 1], 1)],
        )
        .expect("valid signature");
        t.add_raw(vec![u, v], Scalar::one());
        t
    };
    [make(1, 1), make(1, 2), make(2, 2)]
}

/// A basis of the primitive 2-vectors over `E`: all basis wedges with no
/// symplectic pairing plus the balanced differences of paired wedges.
pub fn l20_basis(params: ModelParams) -> Vec<LabeledTensor> {
    let n = params.n() as u8;
    let dim_e = params.dim_e() as u8;
    let mut out = Vec::new();
    for a in 1..=dim_e {
        for b in (a + 1)..=dim_e {
            if params.omega_e(a, b) == 0 {
                out.push(wedge(&e_vector(params, a), &e_vector(params, b)).expect("basis wedge"));
            }
        }
    }
    for j in 1..n {
        let first = wedge(&e_vector(params, j), &e_vector(params, j + n)).expect("basis wedge");
        let second =
            wedge(&e_vector(params, j + 1), &e_vector(params, j + 1 + n)).expect("basis wedge");
        out.push(first.sub(&second).expect("same signature"));
    }
    debug_assert!(out
        .iter()
        .all(|b| contract_omega_er(b).expect("grade 2").is_zero()));
    out
}

/// Expected dimension of the primitive 2-vectors.
pub fn l20_dim(params: ModelParams) -> usize {
    let n = params.n() as usize;
    2 * n * n - n - 1
}

/// Canonical tuple -> dense coordinate index for grade-4 multivectors.
pub fn lambda4_index(params: ModelParams) -> BTreeMap<Vec<u8>, usize> {
    let basis = params.tangent_basis();
    let mut map = BTreeMap::new();
    for combo in basis.iter().combinations(4) {
        let mut key = Vec::with_capacity(8);
        for x in combo {
            key.push(x.e);
            key.push(x.h);
        }
        let next = map.len();
        map.insert(key, next);
    }
    map
}

fn endo_of_s2h(params: ModelParams, s: &LabeledTensor) -> [[Scalar; 2]; 2] {
    let exp = s.expand_entries();
    let get = |u: u8, v: u8| exp.get(&vec![u, v]).cloned().unwrap_or_else(Scalar::zero);
    let mut m = [[Scalar::zero(), Scalar::zero()], [Scalar::zero(), Scalar::zero()]];
    for u in 1..=2u8 {
        for x in 1..=2u8 {
            let mut acc = Scalar::zero();
            for v in 1..=2u8 {
                let w = params.omega_h(v, x);
                if w != 0 {
                    acc += &get(u, v).scale_int(w as i64);
                }
            }
            m[(u - 1) as usize][(x - 1) as usize] = acc;
        }
    }
    m
}

fn s2h_of_endo(params: ModelParams, m: &[[Scalar; 2]; 2]) -> Result<LabeledTensor> {
    let mut t = LabeledTensor::zero(
        params,
        vec![SlotLabel::H, SlotLabel::H],
        vec![SlotGroup::symmetric(vec![0, 1], 1)],
    )?;
    let mut coeff = [[Scalar::zero(), Scalar::zero()], [Scalar::zero(), Scalar::zero()]];
    for u in 1..=2u8 {
        for x in 1..=2u8 {
            let px = if x == 1 { 2u8 } else { 1u8 };
            let w = params.omega_h(px, x);
            debug_assert!(w != 0);
            let inv = Scalar::from_int(w as i64).inv();
            coeff[(u - 1) as usize][(px - 1) as usize] =
                &m[(u - 1) as usize][(x - 1) as usize] * &inv;
        }
    }
    if coeff[0][1] != coeff[1][0] {
        return Err(AlgebraError::DomainError(
            "endomorphism does not come from a symmetric tensor".into(),
        ));
    }
    t.add_raw(vec![1, 1], coeff[0][0].clone());
    t.add_raw(vec![1, 2], coeff[0][1].clone());
    t.add_raw(vec![2, 2], coeff[1][1].clone());
    Ok(t)
}

fn mat_mul(a: &[[Scalar; 2]; 2], b: &[[Scalar; 2]; 2]) -> [[Scalar; 2]; 2] {
    let mut out = [[Scalar::zero(), Scalar::zero()], [Scalar::zero(), Scalar::zero()]];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Scalar::zero();
            for k in 0..2 {
                acc += &(&a[i][k] * &b[k][j]);
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_sub(a: &[[Scalar; 2]; 2], b: &[[Scalar; 2]; 2]) -> [[Scalar; 2]; 2] {
    let mut out = [[Scalar::zero(), Scalar::zero()], [Scalar::zero(), Scalar::zero()]];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j].clone() - b[i][j].clone();
        }
    }
    out
}

/// Image of `s (x) beta` under the equivariant map
/// `S2H (x) L2E -> L2(E (x) H)`:  coefficientwise
/// `(a u, b v) -> S^{uv} beta^{ab}`.
fn embed_product(s: &LabeledTensor, beta: &LabeledTensor) -> Result<LabeledTensor> {
    let params = s.params();
    let mut raw = LabeledTensor::zero(
        params,
        vec![SlotLabel::E, SlotLabel::H, SlotLabel::E, SlotLabel::H],
        free_groups(4),
    )?;
    let s_exp = s.expand_entries();
    let b_exp = beta.expand_entries();
    for (sk, sv) in &s_exp {
        for (bk, bv) in &b_exp {
            raw.add_raw(vec![bk[0], sk[0], bk[1], sk[1]], sv * bv);
        }
    }
    raw.regroup(vec![SlotGroup::alternating(vec![0, 1, 2, 3], 2)])
}

/// The embedding of `S2H (x) L20E` into the 4-vectors, with membership test.
/// The membership solver factors the image matrix on first use.
pub struct Embedding {
    params: ModelParams,
    s2h: [LabeledTensor; 3],
    l20: Vec<LabeledTensor>,
    /// wedge-square preimage of each `S2H` basis element:
    /// list of `(i, j, coeff)` over index pairs `i < j`.
    preimages: [Vec<(usize, usize, Scalar)>; 3],
    kappa: Scalar,
    lambda4: BTreeMap<Vec<u8>, usize>,
    images: Vec<LabeledTensor>,
    solver: std::sync::OnceLock<LinearSolver>,
}

impl Embedding {
    pub fn new(params: ModelParams) -> Result<Self> {
        let s2h = s2h_basis(params);
        let l20 = l20_basis(params);
        // identification L2(S2H) ~ S2H through endomorphism commutators
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        let mut comm_matrix = QMatrix::zero(3, 3);
        for (col, &(i, j)) in pairs.iter().enumerate() {
            let a = endo_of_s2h(params, &s2h[i]);
            let b = endo_of_s2h(params, &s2h[j]);
            let c = mat_sub(&mat_mul(&a, &b), &mat_mul(&b, &a));
            let s = s2h_of_endo(params, &c)?;
            let exp = s.expand_entries();
            let coord = |u: u8, v: u8| exp.get(&vec![u, v]).cloned().unwrap_or_else(Scalar::zero);
            comm_matrix.set(0, col, coord(1, 1));
            comm_matrix.set(1, col, coord(1, 2));
            comm_matrix.set(2, col, coord(2, 2));
        }
        let comm_solver = LinearSolver::new(comm_matrix);
        let mut preimages: [Vec<(usize, usize, Scalar)>; 3] = Default::default();
        for k in 0..3 {
            let mut rhs = vec![Scalar::zero(); 3];
            rhs[k] = Scalar::one();
            let sol = comm_solver.solve(&rhs).ok_or_else(|| {
                AlgebraError::DomainError("commutator identification is singular".into())
            })?;
            preimages[k] = sol
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(col, c)| (pairs[col].0, pairs[col].1, c))
                .collect();
        }

        let mut emb = Self {
            params,
            s2h,
            l20,
            preimages,
            kappa: Scalar::one(),
            lambda4: lambda4_index(params),
            images: Vec::new(),
            solver: std::sync::OnceLock::new(),
        };

        // normalize: the image of sigma_2 (x) (e1 ^ e2) must equal the probe
        // 4-vector exactly
        let beta_probe = wedge(&e_vector(params, 1), &e_vector(params, 2))?;
        let raw = emb.embed_unnormalized(&emb.s2h[1].clone(), &beta_probe)?;
        let target = alpha0(params);
        let kappa = proportionality_ratio(&target, &raw).ok_or_else(|| {
            AlgebraError::DomainError("probe 4-vector is not proportional to its raw image".into())
        })?;
        if kappa.is_zero() {
            return Err(AlgebraError::DomainError("degenerate embedding normalization".into()));
        }
        emb.kappa = kappa;

        let mut images = Vec::with_capacity(3 * emb.l20.len());
        for k in 0..3 {
            for b in 0..emb.l20.len() {
                images.push(emb.embed(&emb.s2h[k].clone(), &emb.l20[b].clone())?);
            }
        }
        emb.images = images;
        Ok(emb)
    }

    fn membership_solver(&self) -> &LinearSolver {
        self.solver.get_or_init(|| {
            let rows = self.lambda4.len();
            let cols = self.images.len();
            let mut m = QMatrix::zero(rows, cols);
            for (col, img) in self.images.iter().enumerate() {
                for (idx, v) in img.entries() {
                    m.set(self.lambda4[idx], col, v.clone());
                }
            }
            LinearSolver::new(m)
        })
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn s2h(&self) -> &[LabeledTensor; 3] {
        &self.s2h
    }

    pub fn l20(&self) -> &[LabeledTensor] {
        &self.l20
    }

    /// Rank of the embedded basis; equals `3 * l20_dim` iff injective.
    pub fn image_rank(&self) -> usize {
        self.membership_solver().rank()
    }

    fn embed_unnormalized(&self, s: &LabeledTensor, beta: &LabeledTensor) -> Result<LabeledTensor> {
        let exp = s.expand_entries();
        let coord = |u: u8, v: u8| exp.get(&vec![u, v]).cloned().unwrap_or_else(Scalar::zero);
        let coords = [coord(1, 1), coord(1, 2), coord(2, 2)];
        let omega = omega_e_bivector(self.params);
        let mut acc = zero_t_multivector(self.params, 4);
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, a) in &self.preimages[k] {
                let si_beta = embed_product(&self.s2h[*i], beta)?;
                let sj_omega = embed_product(&self.s2h[*j], &omega)?;
                let sj_beta = embed_product(&self.s2h[*j], beta)?;
                let si_omega = embed_product(&self.s2h[*i], &omega)?;
                let term = wedge(&si_beta, &sj_omega)?.sub(&wedge(&sj_beta, &si_omega)?)?;
                acc = acc.add(&term.scale(&(c * a)))?;
            }
        }
        Ok(acc)
    }

    /// Embeds `s (x) beta`; `beta` must be primitive.
    pub fn embed(&self, s: &LabeledTensor, beta: &LabeledTensor) -> Result<LabeledTensor> {
        if !contract_omega_er(beta)?.is_zero() {
            return Err(AlgebraError::DomainError(
                "2-vector has a nonzero symplectic trace".into(),
            ));
        }
        Ok(self.embed_unnormalized(s, beta)?.scale(&self.kappa))
    }

    /// Zero element of the preimage side, slots `[H, H | E, E]`.
    pub fn preimage_zero(&self) -> LabeledTensor {
        LabeledTensor::zero(
            self.params,
            vec![SlotLabel::H, SlotLabel::H, SlotLabel::E, SlotLabel::E],
            vec![SlotGroup::symmetric(vec![0, 1], 1), SlotGroup::alternating(vec![2, 3], 1)],
        )
        .expect("valid signature")
    }

    /// The preimage tensor of coordinates over the `(sigma_k, beta_m)` basis.
    pub fn preimage_from_coords(&self, coords: &[Scalar]) -> Result<LabeledTensor> {
        if coords.len() != 3 * self.l20.len() {
            return Err(AlgebraError::DomainError("coordinate length mismatch".into()));
        }
        let mut acc = self.preimage_zero().ungroup();
        for (k, sigma) in self.s2h.iter().enumerate() {
            let s_exp = sigma.expand_entries();
            for (m, beta) in self.l20.iter().enumerate() {
                let c = &coords[k * self.l20.len() + m];
                if c.is_zero() {
                    continue;
                }
                let b_exp = beta.expand_entries();
                for (sk, sv) in &s_exp {
                    for (bk, bv) in &b_exp {
                        acc.add_raw(vec![sk[0], sk[1], bk[0], bk[1]], &(sv * bv) * c);
                    }
                }
            }
        }
        acc.regroup(self.preimage_zero().groups().to_vec())
    }

    /// Embeds a whole `[H, H | E, E]` preimage tensor; the `E`-pair part must
    /// be primitive as a whole.
    pub fn embed_tensor(&self, pre: &LabeledTensor) -> Result<LabeledTensor> {
        if pre.slots() != self.preimage_zero().slots() {
            return Err(AlgebraError::LabelMismatch("not a preimage tensor".into()));
        }
        // global primitivity: contracting the trailing E pair must vanish
        let trace = contract_omega_er(&pre.regroup(vec![
            SlotGroup::none(0),
            SlotGroup::none(1),
            SlotGroup::alternating(vec![2, 3], 1),
        ])?)?;
        if !trace.is_zero() {
            return Err(AlgebraError::DomainError(
                "preimage tensor has a nonzero symplectic trace".into(),
            ));
        }
        let mut acc = zero_t_multivector(self.params, 4);
        for (idx, coeff) in pre.entries() {
            let (u, v, a, b) = (idx[0], idx[1], idx[2], idx[3]);
            let mut sigma = LabeledTensor::zero(
                self.params,
                vec![SlotLabel::H, SlotLabel::H],
                vec![SlotGroup::symmetric(vec![0, 1], 1)],
            )?;
            sigma.add_raw(vec![u, v], Scalar::one());
            let beta = wedge(&e_vector(self.params, a), &e_vector(self.params, b))?;
            let img = self.embed_unnormalized(&sigma, &beta)?.scale(&self.kappa);
            acc = acc.add(&img.scale(coeff))?;
        }
        Ok(acc)
    }

    fn flatten(&self, value: &LabeledTensor) -> Result<Vec<Scalar>> {
        let template = zero_t_multivector(self.params, 4);
        if value.slots() != template.slots() || value.groups() != template.groups() {
            return Err(AlgebraError::DegreeError("expected a grade-4 multivector".into()));
        }
        let mut out = vec![Scalar::zero(); self.lambda4.len()];
        for (idx, v) in value.entries() {
            out[self.lambda4[idx]] = v.clone();
        }
        Ok(out)
    }

    /// Membership test: exact coordinates over the embedded basis, or `None`
    /// if the value lies outside the image.
    pub fn preimage_coords(&self, value: &LabeledTensor) -> Result<Option<Vec<Scalar>>> {
        let b = self.flatten(value)?;
        Ok(self.membership_solver().solve(&b))
    }

    /// Membership test returning the preimage tensor itself.
    pub fn preimage(&self, value: &LabeledTensor) -> Result<Option<LabeledTensor>> {
        match self.preimage_coords(value)? {
            None => Ok(None),
            Some(coords) => Ok(Some(self.preimage_from_coords(&coords)?)),
        }
    }
}

/// The exact ratio `target / source` when the tensors are proportional.
pub fn proportionality_ratio(target: &LabeledTensor, source: &LabeledTensor) -> Option<Scalar> {
    if source.is_zero() {
        return None;
    }
    let (k, v) = source.entries().next().expect("nonzero");
    let t = target
        .entries()
        .find(|(tk, _)| *tk == k)
        .map(|(_, tv)| tv.clone())
        .unwrap_or_else(Scalar::zero);
    let ratio = t * v.clone().inv();
    if target.equivalent(&source.scale(&ratio)) {
        Some(ratio)
    } else {
        None
    }
}
