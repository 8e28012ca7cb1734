//! Admissible triples of compatible almost complex structures and the
//! fundamental 4-form they define.

use std::collections::BTreeMap;

use qhk_algebra::error::{AlgebraError, Result};
use qhk_algebra::ops::wedge;
use qhk_algebra::tensor::zero_t_multivector;
use qhk_algebra::{LabeledTensor, ModelParams, Scalar, TangentIndex};

/// Sparse endomorphism of the complexified tangent space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo {
    params: ModelParams,
    cols: BTreeMap<TangentIndex, Vec<(TangentIndex, Scalar)>>,
}

impl Endo {
    pub fn zero(params: ModelParams) -> Self {
        Self { params, cols: BTreeMap::new() }
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn add(&mut self, from: TangentIndex, to: TangentIndex, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let col = self.cols.entry(from).or_default();
        if let Some(slot) = col.iter_mut().find(|(t, _)| *t == to) {
            slot.1 += &coeff;
        } else {
            col.push((to, coeff));
        }
        col.retain(|(_, c)| !c.is_zero());
    }

    pub fn apply(&self, x: TangentIndex) -> Vec<(TangentIndex, Scalar)> {
        self.cols.get(&x).cloned().unwrap_or_default()
    }

    pub fn compose(&self, inner: &Endo) -> Endo {
        let mut out = Endo::zero(self.params);
        for (&from, mids) in &inner.cols {
            for (mid, c1) in mids {
                for (to, c2) in self.apply(*mid) {
                    out.add(from, to, &c2 * c1);
                }
            }
        }
        out
    }

    pub fn linear_combination(terms: &[(&Endo, Scalar)], params: ModelParams) -> Endo {
        let mut out = Endo::zero(params);
        for (e, c) in terms {
            for (&from, tos) in &e.cols {
                for (to, v) in tos {
                    out.add(from, *to, v * c);
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Endo {
        Endo::linear_combination(&[(self, Scalar::from_int(-1))], self.params)
    }

    pub fn is_minus_identity(&self) -> bool {
        let minus_one = Scalar::from_int(-1);
        for x in self.params.tangent_basis() {
            let img = self.apply(x);
            if img.len() != 1 || img[0].0 != x || img[0].1 != minus_one {
                return false;
            }
        }
        true
    }

    pub fn equals(&self, other: &Endo) -> bool {
        for x in self.params.tangent_basis() {
            let mut a = self.apply(x);
            let mut b = other.apply(x);
            a.sort_by_key(|(t, _)| *t);
            b.sort_by_key(|(t, _)| *t);
            if a != b {
                return false;
            }
        }
        true
    }
}

/// An admissible basis: three anticommuting compatible complex structures
/// with `J1 J2 = J3`.
#[derive(Debug, Clone)]
pub struct AdmissibleBasis {
    params: ModelParams,
    j: [Endo; 3],
}

impl AdmissibleBasis {
    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn j(&self, a: usize) -> &Endo {
        &self.j[a]
    }
}

/// The standard admissible triple acting through the `H` factor:
/// `J1 = i` on `h`, `-i` on `tilde h`; `J2` swaps `h -> tilde h -> -h`;
/// `J3 = J1 J2`.
pub fn build_j_triple(params: ModelParams) -> AdmissibleBasis {
    let i = Scalar::i();
    let one = Scalar::one();
    let mut j1 = Endo::zero(params);
    let mut j2 = Endo::zero(params);
    for x in params.tangent_basis() {
        if x.h == 1 {
            j1.add(x, x, i.clone());
            j2.add(x, TangentIndex::new(x.e, 2), one.clone());
        } else {
            j1.add(x, x, -i.clone());
            j2.add(x, TangentIndex::new(x.e, 1), -one.clone());
        }
    }
    let j3 = j1.compose(&j2);
    AdmissibleBasis { params, j: [j1, j2, j3] }
}

impl AdmissibleBasis {
    /// Rotates `(J1, J2)` by a rational rotation `(c, s)` with `c^2 + s^2 = 1`,
    /// leaving `J3` fixed.  The result is again admissible.
    pub fn rotated(&self, c: Scalar, s: Scalar) -> Result<AdmissibleBasis> {
        let unit = (&c * &c) + (&s * &s);
        if !unit.is_one() {
            return Err(AlgebraError::DomainError(
                "rotation coefficients must satisfy c^2 + s^2 = 1".into(),
            ));
        }
        let j1 = Endo::linear_combination(
            &[(&self.j[0], c.clone()), (&self.j[1], s.clone())],
            self.params,
        );
        let j2 = Endo::linear_combination(
            &[(&self.j[0], -s), (&self.j[1], c)],
            self.params,
        );
        let j3 = j1.compose(&j2);
        Ok(AdmissibleBasis { params: self.params, j: [j1, j2, j3] })
    }

    /// Checks every quaternion and compatibility identity exactly:
    /// `Ja Jb = -delta_ab + eps_abc Jc` (9 identities on the full basis) and
    /// `g(Ja X, Ja Y) = g(X, Y)` on all basis pairs.
    pub fn verify_relations(&self) -> Result<()> {
        let eps = |a: usize, b: usize| -> Option<(usize, i8)> {
            match (a, b) {
                (0, 1) => Some((2, 1)),
                (1, 0) => Some((2, -1)),
                (1, 2) => Some((0, 1)),
                (2, 1) => Some((0, -1)),
                (2, 0) => Some((1, 1)),
                (0, 2) => Some((1, -1)),
                _ => None,
            }
        };
        for a in 0..3 {
            for b in 0..3 {
                let prod = self.j[a].compose(&self.j[b]);
                let ok = if a == b {
                    prod.is_minus_identity()
                } else {
                    let (c, sign) = eps(a, b).expect("a != b");
                    let target = if sign > 0 { self.j[c].clone() } else { self.j[c].neg() };
                    prod.equals(&target)
                };
                if !ok {
                    return Err(AlgebraError::DomainError(format!(
                        "quaternion relation J{} J{} failed",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        for x in self.params.tangent_basis() {
            for y in self.params.tangent_basis() {
                let gxy = Scalar::from_int(self.params.metric(x, y) as i64);
                for a in 0..3 {
                    let mut acc = Scalar::zero();
                    for (xi, ci) in self.j[a].apply(x) {
                        for (yi, cj) in self.j[a].apply(y) {
                            let m = self.params.metric(xi, yi);
                            if m != 0 {
                                acc += &(&ci * &cj).scale_int(m as i64);
                            }
                        }
                    }
                    if acc != gxy {
                        return Err(AlgebraError::DomainError(format!(
                            "metric compatibility failed for J{}",
                            a + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Evaluates the 2-form associated to a grade-2 multivector `b` on a pair of
/// tangent vectors: both slots are lowered with the metric.
pub fn two_form_eval(b: &LabeledTensor, x: TangentIndex, y: TangentIndex) -> Scalar {
    let params = b.params();
    let mut acc = Scalar::zero();
    for (idx, coeff) in b.expand_entries() {
        let u = TangentIndex::new(idx[0], idx[1]);
        let v = TangentIndex::new(idx[2], idx[3]);
        let m = params.metric(u, x) as i64 * params.metric(v, y) as i64;
        if m != 0 {
            acc += &coeff.scale_int(m);
        }
    }
    acc
}

/// The fundamental 2-form of `J_a` as a grade-2 multivector: the unique
/// bivector whose lowered 2-form is `g(J_a . , .)`.
pub fn kahler_form(basis: &AdmissibleBasis, a: usize) -> LabeledTensor {
    let params = basis.params();
    let mut out = zero_t_multivector(params, 2);
    let tangent = params.tangent_basis();
    for &u in &tangent {
        let (su, pu) = params.metric_dual(u);
        for &v in &tangent {
            if v <= u {
                continue;
            }
            let (sv, pv) = params.metric_dual(v);
            // B[u][v] = g(dual(u), partner_u) ... = s_u s_v omega_a(pu, pv)
            let mut val = Scalar::zero();
            for (img, c) in basis.j(a).apply(pu) {
                let m = params.metric(img, pv);
                if m != 0 {
                    val += &c.scale_int(m as i64);
                }
            }
            if !val.is_zero() {
                out.add_raw(vec![u.e, u.h, v.e, v.h], val.scale_int((su * sv) as i64));
            }
        }
    }
    out
}

/// `Omega`: the sum of the wedge squares of the three fundamental 2-forms.
pub fn build_omega(basis: &AdmissibleBasis) -> LabeledTensor {
    let params = basis.params();
    let mut acc = zero_t_multivector(params, 4);
    for a in 0..3 {
        let w = kahler_form(basis, a);
        acc = acc.add(&wedge(&w, &w).expect("grade-2 wedge")).expect("same signature");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use qhk_algebra::ops::interior;
    use qhk_algebra::tensor::tangent_vector;

    fn p2() -> ModelParams {
        ModelParams::new(2).unwrap()
    }

    #[test]
    fn standard_triple_satisfies_all_relations() {
        for n in 2..=3 {
            let basis = build_j_triple(ModelParams::new(n).unwrap());
            basis.verify_relations().unwrap();
        }
    }

    #[test]
    fn j3_is_minus_i_on_swapped_h() {
        let basis = build_j_triple(p2());
        let img = basis.j(2).apply(TangentIndex::new(1, 1));
        assert_eq!(img, vec![(TangentIndex::new(1, 2), -Scalar::i())]);
    }

    #[test]
    fn j_squares_to_minus_identity_probe() {
        let basis = build_j_triple(p2());
        let x = TangentIndex::new(1, 1);
        let mut acc = Vec::new();
        for (mid, c1) in basis.j(0).apply(x) {
            for (to, c2) in basis.j(0).apply(mid) {
                acc.push((to, &c1 * &c2));
            }
        }
        assert_eq!(acc, vec![(x, Scalar::from_int(-1))]);
    }

    #[test]
    fn kahler_forms_are_antisymmetric_and_hermitian() {
        let params = p2();
        let basis = build_j_triple(params);
        for a in 0..3 {
            let w = kahler_form(&basis, a);
            for x in params.tangent_basis() {
                assert!(two_form_eval(&w, x, x).is_zero());
                for y in params.tangent_basis() {
                    let direct = two_form_eval(&w, x, y);
                    assert_eq!(direct, -two_form_eval(&w, y, x));
                    // omega_a(Ja X, Ja Y) = omega_a(X, Y)
                    let mut lifted = Scalar::zero();
                    for (xi, ci) in basis.j(a).apply(x) {
                        for (yi, cj) in basis.j(a).apply(y) {
                            lifted += &(&(&ci * &cj) * &two_form_eval(&w, xi, yi));
                        }
                    }
                    assert_eq!(lifted, direct);
                }
            }
        }
    }

    #[test]
    fn kahler_form_pairing_example() {
        // omega_2(e1 h, tilde(e1) h) = -1
        let params = p2();
        let basis = build_j_triple(params);
        let w2 = kahler_form(&basis, 1);
        assert_eq!(
            two_form_eval(&w2, TangentIndex::new(1, 1), TangentIndex::new(3, 1)),
            Scalar::from_int(-1)
        );
    }

    #[test]
    fn omega_is_invariant_under_rational_rotation() {
        for n in 2..=3 {
            let params = ModelParams::new(n).unwrap();
            let basis = build_j_triple(params);
            let rotated = basis
                .rotated(Scalar::from_ratio(3, 5), Scalar::from_ratio(4, 5))
                .unwrap();
            rotated.verify_relations().unwrap();
            let a = build_omega(&basis);
            let b = build_omega(&rotated);
            assert!(a.equivalent(&b));
        }
    }

    #[test]
    fn omega_is_nondegenerate_at_n2() {
        let params = p2();
        let omega = build_omega(&build_j_triple(params));
        let sq = wedge(&omega, &omega).unwrap();
        assert!(!sq.is_zero());
        for x in params.tangent_basis() {
            let v = tangent_vector(params, x);
            assert!(!interior(&v, &omega).unwrap().is_zero(), "degenerate at {x:?}");
        }
    }
}
