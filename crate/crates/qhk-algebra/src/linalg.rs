//! Exact sparse linear algebra over Gaussian rationals.
//!
//! The elimination core is fraction-free: rows are cleared to Gaussian
//! integers and updated by cross-multiplication, with the integer content of
//! every updated row stripped immediately.  No floating point, no rounding.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Row-major sparse matrix of exact scalars.
#[derive(Debug, Clone)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        assert!(r < self.rows && c < self.cols);
        let slot = self.data[r].entry(c).or_insert_with(Scalar::zero);
        *slot += v;
        if slot.is_zero() {
            self.data[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (&c, v) in row {
                    if !x[c].is_zero() {
                        acc += &(v * &x[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Conjugate-transpose Gram product `A* A`, accumulated row by row.
    pub fn gram(&self) -> QMatrix {
        let mut g = QMatrix::zero(self.cols, self.cols);
        for row in &self.data {
            for (&i, vi) in row {
                let ci = vi.conj();
                for (&j, vj) in row {
                    g.add_to(i, j, &(&ci * vj));
                }
            }
        }
        g
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }

    /// Exact null-space basis, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let ech = echelon(self);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut x = vec![Scalar::zero(); self.cols];
            x[f] = Scalar::one();
            // back-substitute pivot rows bottom-up
            for &(r, c) in ech.pivots.iter().rev() {
                let row = &ech.rows[r];
                let mut acc = Scalar::zero();
                for (&col, v) in row {
                    if col != c && !x[col].is_zero() {
                        acc += &(&v.to_scalar() * &x[col]);
                    }
                }
                if !acc.is_zero() {
                    x[c] = -(acc * row[&c].to_scalar().inv());
                }
            }
            basis.push(x);
        }
        basis
    }
}

/// Gaussian integer used inside the fraction-free elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn div_int(&self, d: &BigInt) -> Self {
        Self { re: &self.re / d, im: &self.im / d }
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

struct Echelon {
    rows: Vec<BTreeMap<usize, GInt>>,
    /// `(row, col)` of each pivot in elimination order.
    pivots: Vec<(usize, usize)>,
}

/// Clears denominators of a scalar row and strips integer content.
fn integerize(row: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, GInt> {
    let mut lcm = BigInt::one();
    for v in row.values() {
        lcm = lcm.lcm(v.re().denom());
        lcm = lcm.lcm(v.im().denom());
    }
    let mut out: BTreeMap<usize, GInt> = BTreeMap::new();
    for (&c, v) in row {
        let re = v.re().numer() * (&lcm / v.re().denom());
        let im = v.im().numer() * (&lcm / v.im().denom());
        out.insert(c, GInt { re, im });
    }
    strip_content(&mut out);
    out
}

fn strip_content(row: &mut BTreeMap<usize, GInt>) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(&v.re);
        g = g.gcd(&v.im);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.values_mut() {
        *v = v.div_int(&g);
    }
}

fn echelon(m: &QMatrix) -> Echelon {
    let mut rows: Vec<BTreeMap<usize, GInt>> = m.data.iter().map(integerize).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; rows.len()];
    for col in 0..m.cols {
        // deterministic pivot choice: sparsest eligible row, lowest index on ties
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if used[r] || !row.contains_key(&col) {
                continue;
            }
            let lead = *row.keys().next().expect("nonempty");
            if lead != col {
                continue;
            }
            let sz = row.len();
            if best.is_none_or(|(bs, _)| sz < bs) {
                best = Some((sz, r));
            }
        }
        let Some((_, prow)) = best else { continue };
        used[prow] = true;
        pivots.push((prow, col));
        let pivot_val = rows[prow][&col].clone();
        let pivot_row = rows[prow].clone();
        for r in 0..rows.len() {
            if r == prow || used[r] {
                continue;
            }
            let Some(lead) = rows[r].get(&col).cloned() else { continue };
            // row_r := pivot * row_r - lead * pivot_row
            let mut updated: BTreeMap<usize, GInt> = BTreeMap::new();
            for (&c, v) in &rows[r] {
                let nv = pivot_val.mul(v);
                if !nv.is_zero() {
                    updated.insert(c, nv);
                }
            }
            for (&c, v) in &pivot_row {
                let delta = lead.mul(v);
                let entry = updated.entry(c).or_insert_with(GInt::zero);
                *entry = entry.sub(&delta);
                if entry.is_zero() {
                    updated.remove(&c);
                }
            }
            strip_content(&mut updated);
            rows[r] = updated;
        }
    }
    Echelon { rows, pivots }
}

/// Factored solver for repeated exact solves `A x = b` with a fixed `A`.
/// Solutions are verified by substitution before being returned.
pub struct LinearSolver {
    a: QMatrix,
    ops: Vec<RowOp>,
    pivots: Vec<(usize, usize)>,
}

enum RowOp {
    Swap(usize, usize),
    Scale(usize, Scalar),
    /// `row[dst] += c * row[src]`
    AddMul(usize, usize, Scalar),
}

impl LinearSolver {
    pub fn new(a: QMatrix) -> Self {
        let mut work = a.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for col in 0..work.cols {
            let Some(prow) = (next_row..work.rows).find(|&r| work.data[r].contains_key(&col))
            else {
                continue;
            };
            if prow != next_row {
                work.data.swap(prow, next_row);
                ops.push(RowOp::Swap(prow, next_row));
            }
            let inv = work.data[next_row][&col].inv();
            if !inv.is_one() {
                let row = std::mem::take(&mut work.data[next_row]);
                work.data[next_row] = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
                ops.push(RowOp::Scale(next_row, inv.clone()));
            }
            let pivot_row = work.data[next_row].clone();
            for r in 0..work.rows {
                if r == next_row {
                    continue;
                }
                let Some(lead) = work.data[r].get(&col).cloned() else { continue };
                let c = -lead;
                for (&cc, v) in &pivot_row {
                    let add = &c * v;
                    let slot = work.data[r].entry(cc).or_insert_with(Scalar::zero);
                    *slot += &add;
                    if slot.is_zero() {
                        work.data[r].remove(&cc);
                    }
                }
                ops.push(RowOp::AddMul(r, next_row, c));
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == work.rows {
                break;
            }
        }
        Self { a, ops, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solves `A x = b` exactly; `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.a.rows);
        let mut v = b.to_vec();
        for op in &self.ops {
            match op {
                RowOp::Swap(i, j) => v.swap(*i, *j),
                RowOp::Scale(i, c) => v[*i] = &v[*i] * c,
                RowOp::AddMul(dst, src, c) => {
                    let add = c * &v[*src];
                    v[*dst] += &add;
                }
            }
        }
        let mut x = vec![Scalar::zero(); self.a.cols];
        for &(r, c) in &self.pivots {
            x[c] = v[r].clone();
        }
        // rows beyond the rank must have been annihilated
        let pivot_rows: Vec<usize> = self.pivots.iter().map(|&(r, _)| r).collect();
        for (r, val) in v.iter().enumerate() {
            if !pivot_rows.contains(&r) && !val.is_zero() {
                return None;
            }
        }
        if self.a.mul_vec(&x) == b { Some(x) } else { None }
    }
}
