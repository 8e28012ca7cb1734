//! The individual verification checks, each producing a structured report
//! with exact expected/actual serializations.

use std::time::Instant;

use qhk_algebra::linalg::QMatrix;
use qhk_algebra::ops::{interior, wedge};
use qhk_algebra::symplectic::contract_omega_er;
use qhk_algebra::tensor::{e_vector, tangent_vector};
use qhk_algebra::{AlgebraError, LabeledTensor, ModelParams, OneFormField, Result, Scalar};
use qhk_model::probe::{alpha0, gamma0, gamma0_alpha0};
use qhk_model::{build_j_triple, build_omega, domain_basis, l20_dim, DomainProjectors, Embedding};
use qhk_ops::display;
use qhk_ops::{
    cascade_to_heee, ck_t, contraction_trace, pipeline_he, pipeline_hk, pipeline_s3h, wedge_trace,
    CkCoefficients, CoefficientId,
};

use crate::report::{CheckReport, CheckStatus};
use crate::rng::SplitMix64;

/// Everything a check needs: the model and the (possibly mutated) operator
/// coefficients.
#[derive(Debug, Clone)]
pub struct CheckContext {
    pub params: ModelParams,
    pub coeffs: CkCoefficients,
}

impl CheckContext {
    pub fn new(n: u32, flip_omega_h: bool, perturb: Option<CoefficientId>) -> Result<Self> {
        let params = if flip_omega_h {
            ModelParams::with_flipped_omega_h(n)?
        } else {
            ModelParams::new(n)?
        };
        let coeffs = match perturb {
            None => CkCoefficients::standard(params),
            Some(which) => perturbed_coefficients(params, which),
        };
        Ok(Self { params, coeffs })
    }
}

/// The single-coefficient mutations used by the sensitivity checks.
pub fn perturbed_coefficients(params: ModelParams, which: CoefficientId) -> CkCoefficients {
    let n = params.n() as i64;
    let value = match which {
        CoefficientId::ValuePart => Scalar::from_ratio(3, 4),
        CoefficientId::WedgePart => Scalar::from_ratio(1, 4),
        CoefficientId::DualPart => Scalar::from_ratio(1, 4 * n - 2),
    };
    CkCoefficients::with_replaced(params, which, value)
}

struct Comparison {
    name: &'static str,
    pass: bool,
    expected: String,
    actual: String,
}

fn compare_tensors(name: &'static str, expected: &LabeledTensor, actual: &LabeledTensor) -> Comparison {
    Comparison {
        name,
        pass: expected.equivalent(actual),
        expected: expected.ungroup().to_text(),
        actual: actual.ungroup().to_text(),
    }
}

fn compare_nonzero(name: &'static str, value: &LabeledTensor) -> Comparison {
    Comparison {
        name,
        pass: !value.is_zero(),
        expected: "nonzero".into(),
        actual: if value.is_zero() { "zero".into() } else { "nonzero".into() },
    }
}

fn assemble(
    name: &str,
    n: u32,
    description: String,
    comparisons: Vec<Comparison>,
    started: Instant,
) -> CheckReport {
    let status = if comparisons.iter().all(|c| c.pass) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    let join = |f: fn(&Comparison) -> &str| {
        comparisons
            .iter()
            .map(|c| format!("-- {} --\n{}", c.name, f(c)))
            .collect::<Vec<_>>()
            .join("\n")
    };
    CheckReport {
        name: name.into(),
        n,
        status,
        description,
        expected: join(|c| &c.expected),
        actual: join(|c| &c.actual),
        elapsed_ms: started.elapsed().as_millis(),
    }
}

/// Reproduction of the first nonvanishing computation: the interior
/// contraction, both cascade displays, the projected six-term display, and
/// a nonzero skew defect.
pub fn check_lemma1(ctx: &CheckContext) -> Result<CheckReport> {
    let started = Instant::now();
    let params = ctx.params;
    let proj = DomainProjectors::new(params)?;
    let eta = gamma0_alpha0(params)?;
    let mut comparisons = Vec::new();

    let g0 = tangent_vector(params, gamma0(params));
    let igamma = interior(&g0, &alpha0(params))?;
    comparisons.push(compare_tensors(
        "interior_gamma0_alpha0",
        &display::interior_gamma0_alpha0(params),
        &igamma,
    ));

    let raw_heee = cascade_to_heee(&eta.to_tensor())?.pop().expect("cascade").value;
    comparisons.push(compare_tensors(
        "cascade_raw_probe",
        &display::heee_probe_display(params),
        &raw_heee,
    ));

    let result = pipeline_hk(&eta, &ctx.coeffs, &proj)?;
    comparisons.push(compare_tensors(
        "cascade_operator_image",
        &display::heee_ck_display(params),
        result.get("omega_h2").expect("stage"),
    ));
    comparisons.push(compare_tensors(
        "projection_he_l20",
        &display::pr_he_l20_display(params),
        result.get("pr_he_l20").expect("stage"),
    ));
    comparisons.push(compare_nonzero(
        "skew_defect_nonzero",
        result.get("skew_defect").expect("stage"),
    ));

    let lambdas = display::lambda_constants(params);
    let description = format!(
        "four-constant cascade display with lambda = ({}, {}, {}, {}), projected display, nonzero skew defect; probe sums expanded over the full basis with e_(n+j) = tilde(e_j)",
        lambdas[0], lambdas[1], lambdas[2], lambdas[3]
    );
    Ok(assemble("lemma1", params.n(), description, comparisons, started))
}

/// The closed-form value of the `HE` projection of the probe image.
pub fn check_lemma2(ctx: &CheckContext) -> Result<CheckReport> {
    let started = Instant::now();
    let params = ctx.params;
    let eta = gamma0_alpha0(params)?;
    let result = pipeline_he(&eta, &ctx.coeffs)?;
    let expected = display::he_display(params);
    let comparisons = vec![compare_tensors("he_projection", &expected, result.final_value())];
    let n = params.n() as i64;
    let description = format!(
        "HE projection equals {} times h (x) e_2; final trace pairs the first two E slots of the cascade stage in listed order",
        Scalar::from_ratio(8 * n * (2 * n + 1), 5 * (4 * n - 3))
    );
    Ok(assemble("lemma2", params.n(), description, comparisons, started))
}

/// The grade-3 symmetric-side displays, plus the separate nonvanishing
/// report for the primitive part (vacuous where that module is empty).
pub fn check_lemma3(ctx: &CheckContext) -> Result<(CheckReport, CheckReport)> {
    let started = Instant::now();
    let params = ctx.params;
    let eta = gamma0_alpha0(params)?;
    let result = pipeline_s3h(&eta, &ctx.coeffs)?;

    let comparisons = vec![
        compare_tensors(
            "constants_stage",
            &display::ee_s3h_e_ck_display(params),
            result.get("omega_e_l3").expect("stage"),
        ),
        compare_tensors(
            "projection_display",
            &display::s3h_l3e_display(params),
            result.get("pr_s3h_l3e").expect("stage"),
        ),
    ];
    let betas = display::beta_constants(params);
    let description = format!(
        "five-constant pre-projection display with beta = ({}, {}, {}, {}, {}), two-term projected display",
        betas[0], betas[1], betas[2], betas[3], betas[4]
    );
    let main = assemble("lemma3", params.n(), description, comparisons, started);

    let sub_started = Instant::now();
    let l30 = l30_dim_by_rank(params)?;
    let sub = if l30 == 0 {
        CheckReport {
            name: "lemma3_l30_nonvanishing".into(),
            n: params.n(),
            status: CheckStatus::Vacuous,
            description: "primitive grade-3 module is zero-dimensional".into(),
            expected: "vacuous".into(),
            actual: "vacuous".into(),
            elapsed_ms: sub_started.elapsed().as_millis(),
        }
    } else {
        let primitive = result.get("pr_s3h_l30e").expect("stage");
        let cmp = compare_nonzero("primitive_projection_nonzero", primitive);
        assemble(
            "lemma3_l30_nonvanishing",
            params.n(),
            format!("primitive grade-3 component survives (dim {l30})"),
            vec![cmp],
            sub_started,
        )
    };
    Ok((main, sub))
}

/// The closed-form trace finish `(S3H) E` value, plus the separate
/// nonvanishing report for the primitive projection.
pub fn check_corollary(ctx: &CheckContext) -> Result<(CheckReport, CheckReport)> {
    let started = Instant::now();
    let params = ctx.params;
    let eta = gamma0_alpha0(params)?;
    let result = pipeline_s3h(&eta, &ctx.coeffs)?;
    let finish = result.get("omega_e_final").expect("stage");
    let mut comparisons =
        vec![compare_tensors("trace_finish", &display::s3h_e_display(params), finish)];
    comparisons.push(compare_nonzero("trace_finish_nonzero", finish));
    let n = params.n() as i64;
    let description = format!(
        "(S3H)E projection equals {} times sym(h h tilde(h)) (x) e_2",
        Scalar::from_ratio(4 * n * (n + 3), 4 * n - 3)
    );
    let main = assemble("corollary", params.n(), description, comparisons, started);

    let sub_started = Instant::now();
    let l30 = l30_dim_by_rank(params)?;
    let sub = if l30 == 0 {
        CheckReport {
            name: "corollary_d1_nonvanishing".into(),
            n: params.n(),
            status: CheckStatus::Vacuous,
            description: "primitive grade-3 module is zero-dimensional".into(),
            expected: "vacuous".into(),
            actual: "vacuous".into(),
            elapsed_ms: sub_started.elapsed().as_millis(),
        }
    } else {
        let cmp = compare_nonzero(
            "primitive_projection_nonzero",
            result.get("pr_s3h_l30e").expect("stage"),
        );
        assemble(
            "corollary_d1_nonvanishing",
            params.n(),
            "primitive grade-3 projection of the probe image survives".into(),
            vec![cmp],
            sub_started,
        )
    };
    Ok((main, sub))
}

/// Deterministic random domain element: a small-integer combination of a
/// few basis fields.
pub fn random_domain_element(
    basis: &[OneFormField],
    rng: &mut SplitMix64,
    terms: usize,
) -> Result<OneFormField> {
    let mut acc = basis[rng.below(basis.len())].scale(&Scalar::from_int(rng.small_coeff()));
    for _ in 1..terms {
        let pick = basis[rng.below(basis.len())].scale(&Scalar::from_int(rng.small_coeff()));
        acc = acc.add(&pick)?;
    }
    Ok(acc)
}

/// Both exact trace identities of the operator: on the full domain basis at
/// `n = 2`, on seeded random domain elements otherwise.
pub fn check_traces(ctx: &CheckContext, seed: u64, samples: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let params = ctx.params;
    let emb = Embedding::new(params)?;
    let basis = domain_basis(params, &emb)?;
    let elements: Vec<OneFormField> = if params.n() == 2 {
        basis.clone()
    } else {
        let mut rng = SplitMix64::new(seed);
        (0..samples)
            .map(|_| random_domain_element(&basis, &mut rng, 8))
            .collect::<Result<_>>()?
    };
    let mut failures = 0usize;
    for eta in &elements {
        let image = ck_t(eta, &ctx.coeffs)?;
        if !wedge_trace(&image)?.is_zero() || !contraction_trace(&image)?.is_zero() {
            failures += 1;
        }
    }
    let pass = failures == 0;
    Ok(CheckReport {
        name: "traces".into(),
        n: params.n(),
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        description: format!(
            "both trace identities on {} domain elements ({})",
            elements.len(),
            if params.n() == 2 { "full basis" } else { "seeded samples" }
        ),
        expected: "0 failures".into(),
        actual: format!("{failures} failures"),
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// Dimension of the primitive grade-2 module measured as the kernel of the
/// symplectic trace on a full wedge basis.
pub fn l20_dim_by_rank(params: ModelParams) -> Result<usize> {
    let dim_e = params.dim_e() as u8;
    let mut pairs = Vec::new();
    for a in 1..=dim_e {
        for b in a + 1..=dim_e {
            pairs.push(wedge(&e_vector(params, a), &e_vector(params, b))?);
        }
    }
    let mut m = QMatrix::zero(1, pairs.len());
    for (col, p) in pairs.iter().enumerate() {
        let tr = contract_omega_er(p)?.as_scalar()?;
        m.set(0, col, tr);
    }
    Ok(pairs.len() - m.rank())
}

/// Dimension of the primitive grade-3 module measured as the kernel of the
/// symplectic trace on a full wedge basis.
pub fn l30_dim_by_rank(params: ModelParams) -> Result<usize> {
    let dim_e = params.dim_e() as u8;
    let mut triples = Vec::new();
    for a in 1..=dim_e {
        for b in a + 1..=dim_e {
            for c in b + 1..=dim_e {
                triples.push(wedge(
                    &wedge(&e_vector(params, a), &e_vector(params, b))?,
                    &e_vector(params, c),
                )?);
            }
        }
    }
    let mut m = QMatrix::zero(params.dim_e(), triples.len());
    for (col, t) in triples.iter().enumerate() {
        let tr = contract_omega_er(t)?;
        for (idx, v) in tr.entries() {
            m.set((idx[0] - 1) as usize, col, v.clone());
        }
    }
    Ok(triples.len() - m.rank())
}

/// Structure invariants: quaternion relations, rotation invariance of the
/// fundamental 4-form, and the two dimension formulas confirmed by rank.
pub fn check_structure(ctx: &CheckContext) -> Result<CheckReport> {
    let started = Instant::now();
    let params = ctx.params;
    let n = params.n() as usize;
    let mut comparisons = Vec::new();

    let basis = build_j_triple(params);
    let relations_ok = basis.verify_relations().is_ok();
    comparisons.push(Comparison {
        name: "j_triple_relations",
        pass: relations_ok,
        expected: "all quaternion and compatibility identities".into(),
        actual: if relations_ok { "all hold".into() } else { "violated".into() },
    });

    let rotated = basis.rotated(Scalar::from_ratio(3, 5), Scalar::from_ratio(4, 5))?;
    let rotated_ok = rotated.verify_relations().is_ok();
    comparisons.push(Comparison {
        name: "rotated_triple_relations",
        pass: rotated_ok,
        expected: "all quaternion and compatibility identities".into(),
        actual: if rotated_ok { "all hold".into() } else { "violated".into() },
    });

    let omega = build_omega(&basis);
    let omega_rotated = build_omega(&rotated);
    comparisons.push(Comparison {
        name: "fundamental_form_invariance",
        pass: omega.equivalent(&omega_rotated),
        expected: "identical 4-vector from both admissible triples".into(),
        actual: if omega.equivalent(&omega_rotated) { "identical".into() } else { "differs".into() },
    });

    let l20 = l20_dim_by_rank(params)?;
    let l20_formula = 2 * n * n - n - 1;
    comparisons.push(Comparison {
        name: "dim_l20",
        pass: l20 == l20_formula,
        expected: format!("{l20_formula}"),
        actual: format!("{l20}"),
    });

    let l30 = l30_dim_by_rank(params)?;
    let choose3 = (2 * n) * (2 * n - 1) * (2 * n - 2) / 6;
    let l30_formula = choose3 - 2 * n;
    comparisons.push(Comparison {
        name: "dim_l30",
        pass: l30 == l30_formula,
        expected: format!("{l30_formula}"),
        actual: format!("{l30}"),
    });

    Ok(assemble(
        "structure",
        params.n(),
        "quaternion relations, 4-form invariance, dimension formulas by rank".into(),
        comparisons,
        started,
    ))
}

/// Convenience used by the mutation-sensitivity tests: whether every main
/// reproduction check passes in this context.
pub fn reproduction_checks_pass(ctx: &CheckContext) -> Result<bool> {
    let l1 = check_lemma1(ctx)?;
    let l2 = check_lemma2(ctx)?;
    let (l3, _) = check_lemma3(ctx)?;
    let (c4, _) = check_corollary(ctx)?;
    Ok(l1.passed() && l2.passed() && l3.passed() && c4.passed())
}

/// Dimension bookkeeping for the kernel bound.
pub fn allowed_kernel_bound(params: ModelParams) -> Result<usize> {
    let n = params.n() as usize;
    let l30 = l30_dim_by_rank(params)?;
    let k_dim = 2 * n * l20_dim(params) - l30 - 2 * n;
    Ok(2 * l30 + 4 * k_dim)
}

pub fn degree_guard(n: u32, force: bool) -> Result<()> {
    if n > 4 && !force {
        return Err(AlgebraError::DomainError(format!(
            "kernel computation at n = {n} needs the force flag (size guard)"
        )));
    }
    Ok(())
}
