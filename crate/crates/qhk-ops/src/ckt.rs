//! The algebraic conformal-Killing operator on 4-vector valued 1-forms and
//! the two exact trace identities its coefficients are tuned for.

use qhk_algebra::error::{AlgebraError, Result};
use qhk_algebra::ops::{interior, wedge};
use qhk_algebra::tensor::{tangent_vector, zero_t_multivector, Symmetry};
use qhk_algebra::{LabeledTensor, ModelParams, OneFormField, Scalar};

/// The three coefficients of the operator.  `standard` is the canonical
/// choice; the mutation constructors exist so the verification suite can
/// prove it would notice a perturbed operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CkCoefficients {
    pub value_part: Scalar,
    pub wedge_part: Scalar,
    pub dual_part: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientId {
    ValuePart,
    WedgePart,
    DualPart,
}

impl CkCoefficients {
    /// `4/5`, `1/5`, `1/(4n - 3)`.
    pub fn standard(params: ModelParams) -> Self {
        let n = params.n() as i64;
        Self {
            value_part: Scalar::from_ratio(4, 5),
            wedge_part: Scalar::from_ratio(1, 5),
            dual_part: Scalar::from_ratio(1, 4 * n - 3),
        }
    }

    pub fn with_replaced(params: ModelParams, which: CoefficientId, value: Scalar) -> Self {
        let mut c = Self::standard(params);
        match which {
            CoefficientId::ValuePart => c.value_part = value,
            CoefficientId::WedgePart => c.wedge_part = value,
            CoefficientId::DualPart => c.dual_part = value,
        }
        c
    }
}

fn check_grade4(field: &OneFormField) -> Result<()> {
    let groups = field.value_groups();
    let ok = groups.len() == 1
        && groups[0].sym == Symmetry::Alternating
        && groups[0].block_len == 2
        && groups[0].num_blocks() == 4;
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::DegreeError("operator expects grade-4 values".into()))
    }
}

/// Signed dual tangent vector `beta^b` with `g(beta^b, beta_b) = 1`.
fn dual_vector(params: ModelParams, x: qhk_algebra::TangentIndex) -> LabeledTensor {
    let (sign, d) = params.metric_dual(x);
    tangent_vector(params, d).scale(&Scalar::from_int(sign as i64))
}

/// The operator on a 4-vector valued 1-form, extended from decomposables by
/// linearity:
/// `value_part * eta(X) + wedge_part * sum_b beta^b ^ i_X eta(beta_b)
///  - dual_part * X ^ sum_b i_{beta^b} eta(beta_b)`.
pub fn ck_t(eta: &OneFormField, coeffs: &CkCoefficients) -> Result<OneFormField> {
    check_grade4(eta)?;
    let params = eta.params();
    let mut out = OneFormField::zero_like(&eta.value(params.tangent_basis()[0]));

    // grade-3 contraction sum, computed once
    let mut zeta = zero_t_multivector(params, 3);
    for (&b, value) in eta.support() {
        zeta = zeta.add(&interior(&dual_vector(params, b), value)?)?;
    }

    for x in params.tangent_basis() {
        let xv = tangent_vector(params, x);
        let mut acc = eta.value(x).scale(&coeffs.value_part);
        for (&b, value) in eta.support() {
            let ix = interior(&xv, value)?;
            if ix.is_zero() {
                continue;
            }
            let term = wedge(&dual_vector(params, b), &ix)?;
            acc = acc.add(&term.scale(&coeffs.wedge_part))?;
        }
        acc = acc.sub(&wedge(&xv, &zeta)?.scale(&coeffs.dual_part))?;
        out.set(x, acc)?;
    }
    Ok(out)
}

/// `sum_b beta^b ^ field(beta_b)`, a grade-5 multivector; vanishes exactly
/// on every operator image.
pub fn wedge_trace(field: &OneFormField) -> Result<LabeledTensor> {
    let params = field.params();
    let mut acc = zero_t_multivector(params, 5);
    for (&b, value) in field.support() {
        acc = acc.add(&wedge(&dual_vector(params, b), value)?)?;
    }
    Ok(acc)
}

/// `sum_b i_{beta^b} field(beta_b)`, a grade-3 multivector; vanishes exactly
/// on every operator image.
pub fn contraction_trace(field: &OneFormField) -> Result<LabeledTensor> {
    let params = field.params();
    let mut acc = zero_t_multivector(params, 3);
    for (&b, value) in field.support() {
        acc = acc.add(&interior(&dual_vector(params, b), value)?)?;
    }
    Ok(acc)
}
