//! The exact kernel computation: assemble the matrix of the operator over
//! the whole domain basis, compute its null space by fraction-free
//! elimination (through the conjugate Gram matrix), re-verify every kernel
//! vector, and decompose the kernel across the six summands.

use std::collections::BTreeMap;
use std::time::Instant;

use qhk_algebra::linalg::QMatrix;
use qhk_algebra::{ModelParams, Result, Scalar};
use qhk_model::embed::lambda4_index;
use qhk_model::{decompose_preimage_field, domain_basis, domain_dim, DomainProjectors, Embedding};
use qhk_ops::ck_t;

use crate::checks::{allowed_kernel_bound, degree_guard, CheckContext};
use crate::report::{ComponentNorms, KernelReport};

/// Sparse column representation of one operator image.
type Column = BTreeMap<usize, Scalar>;

fn flatten_image(
    params: ModelParams,
    image: &qhk_algebra::OneFormField,
    lambda4: &BTreeMap<Vec<u8>, usize>,
) -> Column {
    let block = lambda4.len();
    let mut col = Column::new();
    for (x, value) in image.support() {
        let x_pos = params
            .tangent_basis()
            .iter()
            .position(|b| b == x)
            .expect("basis index");
        for (idx, v) in value.entries() {
            col.insert(x_pos * block + lambda4[idx], v.clone());
        }
    }
    col
}

/// Runs the full kernel oracle for one model size.
pub fn kernel_oracle(ctx: &CheckContext, force: bool) -> Result<KernelReport> {
    let started = Instant::now();
    let params = ctx.params;
    degree_guard(params.n(), force)?;
    let emb = Embedding::new(params)?;
    let proj = DomainProjectors::new(params)?;
    let basis = domain_basis(params, &emb)?;
    let dim = basis.len();
    debug_assert_eq!(dim, domain_dim(params));

    let lambda4 = lambda4_index(params);
    let rows = params.dim_t() * lambda4.len();
    let columns: Vec<Column> = basis
        .iter()
        .map(|eta| Ok(flatten_image(params, &ck_t(eta, &ctx.coeffs)?, &lambda4)))
        .collect::<Result<_>>()?;

    // assemble sparse rows, then the conjugate Gram matrix
    let mut matrix = QMatrix::zero(rows, dim);
    for (c, col) in columns.iter().enumerate() {
        for (&r, v) in col {
            matrix.set(r, c, v.clone());
        }
    }
    let gram = matrix.gram();
    let kernel = gram.kernel();
    let kernel_dim = kernel.len();

    // re-verification: the assembled matrix annihilates each kernel vector
    let mut reverified = true;
    for x in &kernel {
        let image = matrix.mul_vec(x);
        if image.iter().any(|v| !v.is_zero()) {
            reverified = false;
            break;
        }
    }

    // decompose each kernel vector directly from its basis coordinates
    let l = emb.l20().len();
    let mut nonzero = [false; 6];
    for x in &kernel {
        let mut pre_field: Option<qhk_algebra::OneFormField> = None;
        for (b, tangent) in params.tangent_basis().iter().enumerate() {
            let coords = &x[b * 3 * l..(b + 1) * 3 * l];
            if coords.iter().all(Scalar::is_zero) {
                continue;
            }
            let pre = emb.preimage_from_coords(coords)?;
            pre_field
                .get_or_insert_with(|| qhk_algebra::OneFormField::zero_like(&pre))
                .set(*tangent, pre)?;
        }
        let Some(pre_field) = pre_field else { continue };
        let comps = decompose_preimage_field(&pre_field, &emb, &proj)?;
        for (i, f) in comps.fields.iter().enumerate() {
            if !f.is_zero() {
                nonzero[i] = true;
            }
        }
    }

    let tag = |i: usize| if nonzero[i] { "nonzero" } else { "zero" };
    let contained = !nonzero[0] && !nonzero[2] && !nonzero[3] && !nonzero[4];
    Ok(KernelReport {
        n: params.n(),
        domain_dim: dim,
        kernel_dim,
        allowed_dim_bound: allowed_kernel_bound(params)?,
        component_norms: ComponentNorms {
            he: tag(0),
            h_l30: tag(1),
            hk: tag(2),
            s3h_e: tag(3),
            s3h_l30: tag(4),
            s3h_k: tag(5),
        },
        contained_in_allowed: contained,
        reverified,
        matrix_layout: "rows: tangent-basis major, grade-4 canonical tuples minor; columns: domain basis (tangent, sigma, beta ordering)".into(),
        elapsed_ms: started.elapsed().as_millis(),
    })
}
