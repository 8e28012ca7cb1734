//! Closed-form expected values for the pipeline stages on the probe
//! element, parametrized by `n`.  Everything here is an explicit tensor
//! constructed term by term; the verification suite compares pipeline
//! outputs against these exactly.

use qhk_algebra::tensor::{free_groups, tangent_vector, zero_t_multivector};
use qhk_algebra::{LabeledTensor, ModelParams, Scalar, SlotLabel, TangentIndex};

/// A signed `E` basis letter, so words can use `tilde(e_i)` directly.
#[derive(Debug, Clone, Copy)]
pub struct Ev {
    pub sign: i8,
    pub idx: u8,
}

pub fn ev(i: u8) -> Ev {
    Ev { sign: 1, idx: i }
}

pub fn tev(params: ModelParams, i: u8) -> Ev {
    let (sign, idx) = params.tilde_e(i);
    Ev { sign, idx }
}

/// Accumulator for `[H E E E]` stage displays (the `H` letter is always the
/// first basis vector of `H`).
pub struct HeeeWords {
    t: LabeledTensor,
}

impl HeeeWords {
    pub fn new(params: ModelParams) -> Self {
        let slots = vec![SlotLabel::H, SlotLabel::E, SlotLabel::E, SlotLabel::E];
        Self { t: LabeledTensor::zero(params, slots, free_groups(4)).expect("valid") }
    }

    pub fn add(&mut self, word: [Ev; 3], c: &Scalar) {
        let sign = (word[0].sign * word[1].sign * word[2].sign) as i64;
        self.t.add_raw(
            vec![1, word[0].idx, word[1].idx, word[2].idx],
            c.scale_int(sign),
        );
    }

    pub fn build(self) -> LabeledTensor {
        self.t
    }
}

/// Accumulator for `[E E (S3H) E]` stage displays; the symmetric block is
/// always `sym(h h tilde(h))` and the three letters fill the free `E` slots
/// in listed order.
pub struct EeS3hWords {
    t: LabeledTensor,
}

const SYM_HHT: [[u8; 3]; 3] = [[1, 1, 2], [1, 2, 1], [2, 1, 1]];

impl EeS3hWords {
    pub fn new(params: ModelParams) -> Self {
        let slots = vec![
            SlotLabel::E,
            SlotLabel::E,
            SlotLabel::H,
            SlotLabel::H,
            SlotLabel::H,
            SlotLabel::E,
        ];
        Self { t: LabeledTensor::zero(params, slots, free_groups(6)).expect("valid") }
    }

    pub fn add(&mut self, word: [Ev; 3], c: &Scalar) {
        let sign = (word[0].sign * word[1].sign * word[2].sign) as i64;
        let third = Scalar::from_ratio(1, 3);
        for arrangement in SYM_HHT {
            self.t.add_raw(
                vec![
                    word[0].idx,
                    word[1].idx,
                    arrangement[0],
                    arrangement[1],
                    arrangement[2],
                    word[2].idx,
                ],
                (c * &third).scale_int(sign),
            );
        }
    }

    pub fn build(self) -> LabeledTensor {
        self.t
    }
}

fn frac(num: i64, den: i64) -> Scalar {
    Scalar::from_ratio(num, den)
}

/// `lambda_1 .. lambda_4` of the `[H E E E]` stage of the probe image.
pub fn lambda_constants(params: ModelParams) -> [Scalar; 4] {
    let n = params.n() as i64;
    let d = 5 * (4 * n - 3);
    [
        frac(8 * (-8 * n * n + 7 * n + 3), d),
        frac(4 * (4 * n * n - n - 9), d),
        frac(-4 * (n + 3), d),
        frac(24 * n - 33, d),
    ]
}

/// `beta_1 .. beta_5` of the `[E E (S3H) E]` stage of the probe image.
pub fn beta_constants(params: ModelParams) -> [Scalar; 5] {
    let n = params.n() as i64;
    let d = 5 * (4 * n - 3);
    [
        frac(-2 * (16 * n * n - 4 * n - 1), d),
        frac(-(8 * n - 11), d),
        frac(-(8 * n - 1), d),
        frac(18 * n - 11, d),
        frac(-2 * (4 * n * n - 11 * n + 11), d),
    ]
}

/// `i_{gamma0} alpha0`: the grade-3 multivector
/// `sum_i e_i h ^ tilde(e_i) h ^ e_2 tilde(h) - 2 e_1 h ^ e_2 h ^ tilde(e_1) tilde(h)`.
pub fn interior_gamma0_alpha0(params: ModelParams) -> LabeledTensor {
    let tv = |e: u8, h: u8| tangent_vector(params, TangentIndex::new(e, h));
    let wedge3 = |a: &LabeledTensor, b: &LabeledTensor, c: &LabeledTensor| {
        qhk_algebra::ops::wedge(&qhk_algebra::ops::wedge(a, b).expect("wedge"), c).expect("wedge")
    };
    let mut acc = zero_t_multivector(params, 3);
    for i in 1..=params.dim_e() as u8 {
        let (sign, ti) = params.tilde_e(i);
        let term = wedge3(&tv(i, 1), &tv(ti, 1), &tv(2, 2));
        acc = acc.add(&term.scale(&Scalar::from_int(sign as i64))).expect("same signature");
    }
    let (s1, t1) = params.tilde_e(1);
    let last = wedge3(&tv(1, 1), &tv(2, 1), &tv(t1, 2));
    acc.sub(&last.scale(&Scalar::from_int(2 * s1 as i64))).expect("same signature")
}

/// The `[H E E E]` cascade value of the raw probe field:
/// `-4n h (tilde(e1) e1 e2 - tilde(e1) e2 e1)`.
pub fn heee_probe_display(params: ModelParams) -> LabeledTensor {
    let n = params.n() as i64;
    let mut w = HeeeWords::new(params);
    let te1 = tev(params, 1);
    w.add([te1, ev(1), ev(2)], &frac(-4 * n, 1));
    w.add([te1, ev(2), ev(1)], &frac(4 * n, 1));
    w.build()
}

/// The `[H E E E]` stage of the operator image of the probe: the
/// four-constant display plus its fixed fractional tail.
pub fn heee_ck_display(params: ModelParams) -> LabeledTensor {
    let [l1, l2, l3, l4] = lambda_constants(params);
    let mut w = HeeeWords::new(params);
    let te1 = tev(params, 1);
    w.add([te1, ev(1), ev(2)], &l1);
    w.add([te1, ev(2), ev(1)], &-l1.clone());
    w.add([ev(2), te1, ev(1)], &l2);
    w.add([ev(1), te1, ev(2)], &-l2.clone());
    for i in 1..=params.dim_e() as u8 {
        let tei = tev(params, i);
        w.add([ev(2), ev(i), tei], &l3);
        w.add([ev(2), tei, ev(i)], &-l3.clone());
        w.add([ev(i), ev(2), tei], &l4);
        w.add([tei, ev(i), ev(2)], &frac(2, 5));
        w.add([ev(i), tei, ev(2)], &frac(-2, 5));
        w.add([tei, ev(2), ev(i)], &frac(-1, 5));
    }
    w.add([ev(1), ev(2), te1], &frac(4, 5));
    w.add([ev(2), ev(1), te1], &frac(-4, 5));
    w.build()
}

/// The six-term projection of the `[H E E E]` stage onto
/// `H (x) E (x) L20E`, including the symplectic-trace tail term.
pub fn pr_he_l20_display(params: ModelParams) -> LabeledTensor {
    let n = params.n() as i64;
    let [l1, l2, _l3, l4] = lambda_constants(params);
    let mut w = HeeeWords::new(params);
    let te1 = tev(params, 1);
    let c1 = l1.scale_int(2);
    w.add([te1, ev(1), ev(2)], &c1);
    w.add([te1, ev(2), ev(1)], &-c1.clone());
    let c2 = l2.clone() + &frac(4, 5);
    w.add([ev(2), te1, ev(1)], &c2);
    w.add([ev(2), ev(1), te1], &-c2.clone());
    w.add([ev(1), te1, ev(2)], &-c2.clone());
    w.add([ev(1), ev(2), te1], &c2);
    let c4 = l4.clone() + &frac(2, 5);
    let trace = (l2 - l4 - frac(1, 5)) * frac(1, 2 * n);
    for i in 1..=params.dim_e() as u8 {
        let tei = tev(params, i);
        w.add([ev(i), ev(2), tei], &c4);
        w.add([ev(i), tei, ev(2)], &-c4.clone());
        w.add([tei, ev(i), ev(2)], &frac(3, 5));
        w.add([tei, ev(2), ev(i)], &frac(-3, 5));
        w.add([ev(2), ev(i), tei], &trace);
        w.add([ev(2), tei, ev(i)], &-trace.clone());
    }
    w.build()
}

/// The `[E E (S3H) E]` stage of the operator image of the probe: the
/// five-constant display plus its fixed fractional tail.
pub fn ee_s3h_e_ck_display(params: ModelParams) -> LabeledTensor {
    let n = params.n() as i64;
    let [b1, b2, b3, b4, b5] = beta_constants(params);
    let mut w = EeS3hWords::new(params);
    let te1 = tev(params, 1);
    w.add([te1, ev(1), ev(2)], &b1);
    w.add([te1, ev(2), ev(1)], &-b1.clone());
    w.add([ev(2), te1, ev(1)], &b5);
    w.add([ev(1), te1, ev(2)], &-b5.clone());
    w.add([ev(1), ev(2), te1], &frac(-2, 4 * n - 3));
    w.add([ev(2), ev(1), te1], &frac(2, 4 * n - 3));
    for i in 1..=params.dim_e() as u8 {
        let tei = tev(params, i);
        w.add([tei, ev(2), ev(i)], &b2);
        w.add([ev(2), tei, ev(i)], &b3);
        w.add([ev(2), ev(i), tei], &-b3.clone());
        w.add([ev(i), ev(2), tei], &b4);
        w.add([ev(i), tei, ev(2)], &frac(-(4 * n - 1), 4 * n - 3));
        w.add([tei, ev(i), ev(2)], &frac(-1, 4 * n - 3));
    }
    w.build()
}

/// The two-term `[(S3H) L3E]` display of the probe image.
pub fn s3h_l3e_display(params: ModelParams) -> LabeledTensor {
    let n = params.n() as i64;
    let sym = sym_hht(params);
    let we = |a: u8| qhk_algebra::tensor::e_vector(params, a);
    let wedge = |x: &LabeledTensor, y: &LabeledTensor| qhk_algebra::ops::wedge(x, y).expect("wedge");
    let mut first = qhk_algebra::tensor::zero_e_multivector(params, 3);
    for i in 1..=params.dim_e() as u8 {
        let (sign, ti) = params.tilde_e(i);
        let term = wedge(&wedge(&we(i), &we(ti)), &we(2));
        first = first.add(&term.scale(&Scalar::from_int(sign as i64))).expect("signature");
    }
    let (s1, t1) = params.tilde_e(1);
    let second = wedge(&wedge(&we(1), &we(2)), &we(t1)).scale(&Scalar::from_int(s1 as i64));
    let combined = first
        .scale(&frac(-6 * (n - 1), 4 * n - 3))
        .add(&second.scale(&frac(-4 * (4 * n * n - 3 * n + 3), 4 * n - 3)))
        .expect("signature");
    outer(&sym, &combined)
}

/// The `[(S3H) E]` display of the probe image: `4n(n+3)/(4n-3)` times
/// `sym(h h tilde(h)) (x) e_2`.
pub fn s3h_e_display(params: ModelParams) -> LabeledTensor {
    let n = params.n() as i64;
    let sym = sym_hht(params);
    let e2 = qhk_algebra::tensor::e_vector(params, 2);
    outer(&sym, &e2).scale(&frac(4 * n * (n + 3), 4 * n - 3))
}

/// The `[H E]` display of the probe image: `8n(2n+1)/(5(4n-3))` times
/// `h (x) e_2`.
pub fn he_display(params: ModelParams) -> LabeledTensor {
    let n = params.n() as i64;
    let mut t = LabeledTensor::zero(
        params,
        vec![SlotLabel::H, SlotLabel::E],
        free_groups(2),
    )
    .expect("valid");
    t.add_raw(vec![1, 2], frac(8 * n * (2 * n + 1), 5 * (4 * n - 3)));
    t
}

/// `sym(h h tilde(h))` as a free `[H H H]` tensor.
pub fn sym_hht(params: ModelParams) -> LabeledTensor {
    let mut t = LabeledTensor::zero(
        params,
        vec![SlotLabel::H, SlotLabel::H, SlotLabel::H],
        free_groups(3),
    )
    .expect("valid");
    let third = frac(1, 3);
    for arrangement in SYM_HHT {
        t.add_raw(arrangement.to_vec(), third.clone());
    }
    t
}

/// Slot-concatenating outer product of two tensors with free slot groups on
/// at least one side; used only for building expected values.
pub fn outer(a: &LabeledTensor, b: &LabeledTensor) -> LabeledTensor {
    let a = a.ungroup();
    let b = b.ungroup();
    let mut slots = a.slots().to_vec();
    slots.extend_from_slice(b.slots());
    let mut out =
        LabeledTensor::zero(a.params(), slots.clone(), free_groups(slots.len())).expect("valid");
    for (ka, va) in a.entries() {
        for (kb, vb) in b.entries() {
            let mut key = ka.clone();
            key.extend_from_slice(kb);
            out.add_raw(key, va * vb);
        }
    }
    out
}
