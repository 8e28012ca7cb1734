use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;

/// Index of a basis vector of the complexified tangent space `T = E (x) H`.
///
/// `e` runs over `1..=2n`, `h` over `1..=2` with `1` the basis vector `h`
/// and `2` its quaternionic partner.  The convention `e_{n+j} = tilde(e_j)`
/// is baked into [`ModelParams::tilde_e`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TangentIndex {
    pub e: u8,
    pub h: u8,
}

impl TangentIndex {
    pub fn new(e: u8, h: u8) -> Self {
        Self { e, h }
    }
}

/// The single integer parameter of the model plus the symplectic pairing
/// tables every contraction reads.
///
/// `omega_h_sign` is a test harness knob: the default `+1` fixes
/// `omega_h(h, tilde h) = 1`, flipping it lets the verification suite prove
/// it would detect the opposite convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelParams {
    n: u32,
    omega_h_sign: i8,
}

impl ModelParams {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::InvalidParams(n));
        }
        Ok(Self { n, omega_h_sign: 1 })
    }

    /// Same model with the sign of `omega_H` flipped (mutation-sensitivity knob).
    pub fn with_flipped_omega_h(n: u32) -> Result<Self> {
        let mut p = Self::new(n)?;
        p.omega_h_sign = -1;
        Ok(p)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim_e(&self) -> usize {
        2 * self.n as usize
    }

    pub fn dim_h(&self) -> usize {
        2
    }

    pub fn dim_t(&self) -> usize {
        4 * self.n as usize
    }

    pub fn omega_h_flipped(&self) -> bool {
        self.omega_h_sign < 0
    }

    /// `omega_E(e_a, e_b)`: `+1` on `(e_j, e_{n+j})`, antisymmetric, zero otherwise.
    pub fn omega_e(&self, a: u8, b: u8) -> i8 {
        let (a, b, n) = (a as u32, b as u32, self.n);
        if a >= 1 && a <= n && b == a + n {
            1
        } else if b >= 1 && b <= n && a == b + n {
            -1
        } else {
            0
        }
    }

    /// `omega_H(h_s, h_t)` with the convention `omega_H(h, tilde h) = +1`
    /// (times the harness sign knob).
    pub fn omega_h(&self, s: u8, t: u8) -> i8 {
        match (s, t) {
            (1, 2) => self.omega_h_sign,
            (2, 1) => -self.omega_h_sign,
            _ => 0,
        }
    }

    /// The complex bilinear metric `g = omega_E (x) omega_H` on basis vectors of `T`.
    pub fn metric(&self, x: TangentIndex, y: TangentIndex) -> i8 {
        self.omega_e(x.e, y.e) * self.omega_h(x.h, y.h)
    }

    /// `j_E` on basis vectors: `e_j -> e_{n+j}`, `e_{n+j} -> -e_j`.
    pub fn tilde_e(&self, a: u8) -> (i8, u8) {
        let n = self.n as u16;
        if (a as u16) <= n {
            (1, (a as u16 + n) as u8)
        } else {
            (-1, (a as u16 - n) as u8)
        }
    }

    /// `j_H` on basis vectors: `h -> tilde h`, `tilde h -> -h`.
    pub fn tilde_h(&self, s: u8) -> (i8, u8) {
        if s == 1 {
            (1, 2)
        } else {
            (-1, 1)
        }
    }

    /// All `4n` tangent basis indices in a fixed deterministic order
    /// (`e` major, `h` minor).
    pub fn tangent_basis(&self) -> Vec<TangentIndex> {
        let mut out = Vec::with_capacity(self.dim_t());
        for a in 1..=self.dim_e() as u8 {
            for s in 1..=2u8 {
                out.push(TangentIndex::new(a, s));
            }
        }
        out
    }

    /// The `g`-dual of a tangent basis vector: the signed basis vector `d`
    /// with `g(d, x) = 1`.  Duality is an involution for this metric.
    pub fn metric_dual(&self, x: TangentIndex) -> (i8, TangentIndex) {
        let (_, ae) = self.tilde_e(x.e);
        let ah = if x.h == 1 { 2u8 } else { 1u8 };
        let d = TangentIndex::new(ae, ah);
        let pairing = self.metric(d, x);
        debug_assert!(pairing != 0);
        (pairing, d)
    }

    /// Symplectic dual basis for `E`: returns `(sign, a')` with
    /// `omega_E(sign * e_{a'}, e_a) = 1`.
    pub fn symplectic_dual_e(&self, a: u8) -> (i8, u8) {
        let (s, b) = self.tilde_e(a);
        (-s, b)
    }

    /// Symplectic dual basis for `H`: returns `(sign, s')` with
    /// `omega_H(sign * h_{s'}, h_s) = 1`.
    pub fn symplectic_dual_h(&self, s: u8) -> (i8, u8) {
        let partner = if s == 1 { 2 } else { 1 };
        let w = self.omega_h(partner, s);
        debug_assert!(w != 0);
        (w, partner)
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        Scalar::from_int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_tables_are_antisymmetric() {
        let p = ModelParams::new(3).unwrap();
        for a in 1..=6u8 {
            for b in 1..=6u8 {
                assert_eq!(p.omega_e(a, b), -p.omega_e(b, a));
            }
        }
        for s in 1..=2u8 {
            for t in 1..=2u8 {
                assert_eq!(p.omega_h(s, t), -p.omega_h(t, s));
            }
        }
        assert_eq!(p.omega_e(1, 4), 1);
        assert_eq!(p.omega_e(1, 2), 0);
        assert_eq!(p.omega_h(1, 2), 1);
    }

    #[test]
    fn n_below_two_is_rejected() {
        assert!(matches!(ModelParams::new(1), Err(AlgebraError::InvalidParams(1))));
        assert!(ModelParams::new(2).is_ok());
    }

    #[test]
    fn tilde_squares_to_minus_one() {
        let p = ModelParams::new(2).unwrap();
        for a in 1..=4u8 {
            let (s1, b) = p.tilde_e(a);
            let (s2, c) = p.tilde_e(b);
            assert_eq!((s1 * s2, c), (-1, a));
        }
        for s in 1..=2u8 {
            let (s1, b) = p.tilde_h(s);
            let (s2, c) = p.tilde_h(b);
            assert_eq!((s1 * s2, c), (-1, s));
        }
    }

    #[test]
    fn metric_dual_is_an_involution() {
        let p = ModelParams::new(2).unwrap();
        for x in p.tangent_basis() {
            let (s, d) = p.metric_dual(x);
            assert_eq!(s * p.metric(d, x), 1);
            let (s2, back) = p.metric_dual(d);
            assert_eq!((s * s2, back), (1, x));
        }
    }

    #[test]
    fn symplectic_dual_pairs_to_one() {
        let p = ModelParams::new(3).unwrap();
        for a in 1..=6u8 {
            let (s, b) = p.symplectic_dual_e(a);
            assert_eq!(s * p.omega_e(b, a), 1);
        }
    }
}
