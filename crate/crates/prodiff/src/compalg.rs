//! Composition algebras over Q of dimension 1, 2, 4, 8 via Cayley-Dickson
//! doubling with split constants (doubling parameter +1), so every structure
//! constant is +-1. Elements with polynomial components multiply through the
//! same tables, which is how the Severi fixtures build their equations.

use num_traits::Zero;

use crate::mpoly::MPoly;
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct CompAlgebra {
    pub dim: usize,
    /// mul[i][j] = (sign, k) meaning e_i * e_j = sign * e_k.
    mul: Vec<Vec<(i8, usize)>>,
    /// conj[i] = sign of e_i under conjugation (e_0 -> +, else -).
    conj: Vec<i8>,
}

impl CompAlgebra {
    /// Split Cayley-Dickson algebra of dimension 1, 2, 4 or 8.
    pub fn split(dim: usize) -> Self {
        assert!(matches!(dim, 1 | 2 | 4 | 8), "dimension must be 1, 2, 4 or 8");
        let mut mul = vec![vec![(1i8, 0usize)]];
        let mut d = 1;
        while d < dim {
            mul = double(&mul, d);
            d *= 2;
        }
        let conj = (0..dim).map(|i| if i == 0 { 1 } else { -1 }).collect();
        CompAlgebra { dim, mul, conj }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> (i8, usize) {
        self.mul[i][j]
    }

    /// Product of elements given as component vectors of polynomials.
    pub fn mul_vec(&self, a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let nv = a[0].nvars();
        let mut out = vec![MPoly::zero(nv); self.dim];
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let (s, k) = self.mul[i][j];
                let term = a[i].mul(&b[j]);
                out[k] = if s > 0 {
                    out[k].add(&term)
                } else {
                    out[k].sub(&term)
                };
            }
        }
        out
    }

    pub fn conj_vec(&self, a: &[MPoly]) -> Vec<MPoly> {
        assert_eq!(a.len(), self.dim);
        a.iter()
            .enumerate()
            .map(|(i, p)| if self.conj[i] > 0 { p.clone() } else { p.neg() })
            .collect()
    }

    /// Norm N(a) = (a * conj(a))_0; the other components vanish identically.
    pub fn norm_vec(&self, a: &[MPoly]) -> MPoly {
        let prod = self.mul_vec(a, &self.conj_vec(a));
        for c in prod.iter().skip(1) {
            debug_assert!(c.is_zero(), "x * conj(x) must be scalar");
        }
        prod[0].clone()
    }

    pub fn mul_rat(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                if a[i].is_zero() || b[j].is_zero() {
                    continue;
                }
                let (s, k) = self.mul[i][j];
                let term = a[i].clone() * b[j].clone();
                if s > 0 {
                    out[k] += term;
                } else {
                    out[k] -= term;
                }
            }
        }
        out
    }

    pub fn conj_rat(&self, a: &[Rat]) -> Vec<Rat> {
        a.iter()
            .enumerate()
            .map(|(i, x)| if self.conj[i] > 0 { x.clone() } else { -x.clone() })
            .collect()
    }

    pub fn norm_rat(&self, a: &[Rat]) -> Rat {
        self.mul_rat(a, &self.conj_rat(a))[0].clone()
    }
}

/// One Cayley-Dickson doubling step with parameter gamma = +1:
/// (a,b)(c,d) = (ac + conj(d) b, da + b conj(c)).
fn double(mul: &[Vec<(i8, usize)>], d: usize) -> Vec<Vec<(i8, usize)>> {
    let n = 2 * d;
    let conj_sign = |i: usize| if i == 0 { 1i8 } else { -1 };
    let mut out = vec![vec![(0i8, 0usize); n]; n];
    for i in 0..n {
        for j in 0..n {
            // write e_i = (x, y) with exactly one of x, y a basis vector
            let (lo_i, hi_i) = (i < d, i >= d);
            let (lo_j, hi_j) = (j < d, j >= d);
            let entry = if lo_i && lo_j {
                // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
                let (s, k) = mul[i][j];
                (s, k)
            } else if lo_i && hi_j {
                // (e_i, 0)(0, e_j') = (0, e_j' e_i)
                let jj = j - d;
                let (s, k) = mul[jj][i];
                (s, k + d)
            } else if hi_i && lo_j {
                // (0, e_i')(e_j, 0) = (0, e_i' conj(e_j))
                let ii = i - d;
                let (s, k) = mul[ii][j];
                (s * conj_sign(j), k + d)
            } else {
                // (0, e_i')(0, e_j') = (gamma conj(e_j') e_i', 0), gamma = +1
                let (ii, jj) = (i - d, j - d);
                let (s, k) = mul[jj][ii];
                (s * conj_sign(jj), k)
            };
            out[i][j] = entry;
        }
    }
    debug_assert!(hi_lo_consistent(&out));
    out
}

fn hi_lo_consistent(mul: &[Vec<(i8, usize)>]) -> bool {
    mul.iter().all(|row| row.iter().all(|(s, _)| *s != 0))
}
