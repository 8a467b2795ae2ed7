//! Symmetric tensor spaces S^k T* with canonical monomial bases, polarized
//! contraction, and the GL(T)-decomposition S^2T* (x) T* = S^3T* (+) S21_o T*.
//!
//! Forms are stored as polynomial coefficient vectors in the monomial basis;
//! symmetric-array entries are obtained through the multinomial conversion in
//! `sym_array_entry`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{span_basis, MatQ};
use crate::mpoly::{exps_of_degree, MPoly};
use crate::rat::{binom, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSpace {
    pub n: usize,
    pub k: u32,
    basis: Vec<Vec<u32>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("cannot contract a degree-0 form")]
    DegreeZero,
}

impl SymSpace {
    pub fn new(n: usize, k: u32) -> Self {
        let basis = exps_of_degree(n, k);
        debug_assert_eq!(basis.len(), binom(n + k as usize - 1, k as usize).max(1));
        SymSpace { n, k, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.basis.iter().position(|e| e == exps)
    }
}

/// An element of S^k T*, stored as polynomial coefficients in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    pub space: SymSpace,
    pub coeffs: Vec<Rat>,
}

impl SymForm {
    pub fn zero(n: usize, k: u32) -> Self {
        let space = SymSpace::new(n, k);
        let coeffs = vec![Rat::zero(); space.dim()];
        SymForm { space, coeffs }
    }

    pub fn from_poly(p: &MPoly) -> Self {
        let k = p.total_degree();
        assert!(p.is_homogeneous(), "SymForm requires a homogeneous polynomial");
        let mut f = Self::zero(p.nvars(), k);
        for (e, c) in p.terms() {
            let idx = f.space.index_of(e).expect("exponent in basis");
            f.coeffs[idx] = c.clone();
        }
        f
    }

    pub fn to_poly(&self) -> MPoly {
        let mut p = MPoly::zero(self.space.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(self.space.basis[i].clone(), c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &SymForm) -> SymForm {
        assert_eq!(self.space, other.space);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        SymForm {
            space: self.space.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: &Rat) -> SymForm {
        SymForm {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Symmetric-array entry q_{i1..ik}: the polynomial coefficient divided by
    /// the multinomial factor, so that q(v,..,v) = sum over all index tuples.
    pub fn sym_array_entry(&self, idx: &[usize]) -> Rat {
        assert_eq!(idx.len() as u32, self.space.k);
        let mut exps = vec![0u32; self.space.n];
        for &i in idx {
            exps[i] += 1;
        }
        let pos = match self.space.index_of(&exps) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        let c = self.coeffs[pos].clone();
        c / Rat::from_integer(multinomial(&exps).into())
    }

    /// The quadratic form's symmetric matrix (k = 2 only).
    pub fn gram_matrix(&self) -> MatQ {
        assert_eq!(self.space.k, 2);
        let n = self.space.n;
        let mut m = MatQ::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = self.sym_array_entry(&[i, j]);
            }
        }
        m
    }
}

/// Multinomial coefficient k! / (e1! e2! ...), k = sum of exps.
pub fn multinomial(exps: &[u32]) -> u64 {
    let k: u32 = exps.iter().sum();
    let mut acc: u64 = 1;
    let mut rem = k;
    for &e in exps {
        acc *= binom(rem as usize, e as usize) as u64;
        rem -= e;
    }
    acc
}

/// Product S^a x S^b -> S^(a+b), the plain polynomial product.
pub fn sym_mult(p: &SymForm, q: &SymForm) -> Result<SymForm, TensorError> {
    if p.space.n != q.space.n {
        return Err(TensorError::DimMismatch(format!(
            "{} vs {} variables",
            p.space.n, q.space.n
        )));
    }
    Ok(SymForm::from_poly_in(
        &p.to_poly().mul(&q.to_poly()),
        p.space.n,
        p.space.k + q.space.k,
    ))
}

impl SymForm {
    /// Like `from_poly` but tolerates the zero polynomial (degree ambiguity).
    pub fn from_poly_in(p: &MPoly, n: usize, k: u32) -> SymForm {
        let mut f = SymForm::zero(n, k);
        for (e, c) in p.terms() {
            assert_eq!(e.iter().sum::<u32>(), k, "wrong degree");
            let idx = f.space.index_of(e).expect("exponent in basis");
            f.coeffs[idx] = c.clone();
        }
        f
    }
}

/// Polarized contraction: v -| q = (1/k) d_v q, bilinear in both slots.
pub fn contract(v: &[Rat], q: &SymForm) -> Result<SymForm, TensorError> {
    if q.space.k == 0 {
        return Err(TensorError::DegreeZero);
    }
    if v.len() != q.space.n {
        return Err(TensorError::DimMismatch(format!(
            "vector length {} vs {} variables",
            v.len(),
            q.space.n
        )));
    }
    let p = q.to_poly();
    let mut acc = MPoly::zero(q.space.n);
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&p.partial(i).scale(c));
        }
    }
    let scaled = acc.scale(&(Rat::one() / Rat::from_integer(q.space.k.into())));
    Ok(SymForm::from_poly_in(&scaled, q.space.n, q.space.k - 1))
}

/// An element of S^2 T* (x) T*: one quadric coefficient vector per covector
/// slot. `parts[i]` is the quadric tensored with omega^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2TT {
    pub n: usize,
    pub parts: Vec<SymForm>,
}

impl S2TT {
    pub fn zero(n: usize) -> Self {
        S2TT {
            n,
            parts: (0..n).map(|_| SymForm::zero(n, 2)).collect(),
        }
    }

    pub fn from_pairs(pairs: &[(SymForm, usize)], n: usize) -> Self {
        let mut t = Self::zero(n);
        for (q, i) in pairs {
            t.parts[*i] = t.parts[*i].add(q);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    /// The symmetrization S^2T* (x) T* -> S^3T* (polynomial product).
    pub fn symmetrize(&self) -> SymForm {
        let mut acc = MPoly::zero(self.n);
        for (i, q) in self.parts.iter().enumerate() {
            let omega = MPoly::var(self.n, i);
            acc = acc.add(&q.to_poly().mul(&omega));
        }
        SymForm::from_poly_in(&acc, self.n, 3)
    }

    /// Flat coefficient vector (dim S^2 * n), for linear algebra.
    pub fn flatten(&self) -> Vec<Rat> {
        self.parts.iter().flat_map(|q| q.coeffs.clone()).collect()
    }

    pub fn unflatten(n: usize, v: &[Rat]) -> Self {
        let d2 = SymSpace::new(n, 2).dim();
        assert_eq!(v.len(), d2 * n);
        let parts = (0..n)
            .map(|i| SymForm {
                space: SymSpace::new(n, 2),
                coeffs: v[i * d2..(i + 1) * d2].to_vec(),
            })
            .collect();
        S2TT { n, parts }
    }

    pub fn sub(&self, other: &S2TT) -> S2TT {
        assert_eq!(self.n, other.n);
        S2TT {
            n: self.n,
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.add(&b.scale(&-Rat::one())))
                .collect(),
        }
    }
}

/// The GL-equivariant embedding S^3T* -> S^2T* (x) T*: a cubic c maps to
/// sum_i (1/3) d_i c (x) omega^i, a section of the symmetrization.
pub fn embed_cubic(c: &SymForm) -> S2TT {
    assert_eq!(c.space.k, 3);
    let n = c.space.n;
    let p = c.to_poly();
    let third = Rat::new(1.into(), 3.into());
    let parts = (0..n)
        .map(|i| SymForm::from_poly_in(&p.partial(i).scale(&third), n, 2))
        .collect();
    S2TT { n, parts }
}

/// Unique decomposition t = embed(sym) + s21 with sym in S^3T* and s21 in
/// ker(symmetrization) = S21_o T*.
pub fn split_s21(t: &S2TT) -> (SymForm, S2TT) {
    let sym = t.symmetrize();
    let s21 = t.sub(&embed_cubic(&sym));
    (sym, s21)
}

/// dim S21_o T* = n * dim S^2 - dim S^3.
pub fn s21_dim(n: usize) -> usize {
    n * SymSpace::new(n, 2).dim() - SymSpace::new(n, 3).dim()
}

/// Basis of S21_o T* computed as the kernel of the symmetrization matrix;
/// used as an independent cross-check of `s21_dim`.
pub fn s21_basis_by_kernel(n: usize) -> Vec<Vec<Rat>> {
    let d2 = SymSpace::new(n, 2).dim();
    let s3 = SymSpace::new(n, 3);
    let mut m = MatQ::zero(s3.dim(), d2 * n);
    let s2 = SymSpace::new(n, 2);
    for i in 0..n {
        for (j, e) in s2.basis().iter().enumerate() {
            let mut e3 = e.clone();
            e3[i] += 1;
            let row = s3.index_of(&e3).unwrap();
            *m.at_mut(row, i * d2 + j) += Rat::one();
        }
    }
    m.kernel()
}

/// Canonical basis of the span of a list of equal-degree forms.
pub fn form_span_basis(forms: &[SymForm]) -> Vec<SymForm> {
    if forms.is_empty() {
        return Vec::new();
    }
    let space = forms[0].space.clone();
    let vecs: Vec<Vec<Rat>> = forms.iter().map(|f| f.coeffs.clone()).collect();
    span_basis(&vecs, space.dim())
        .into_iter()
        .map(|coeffs| SymForm {
            space: space.clone(),
            coeffs,
        })
        .collect()
}
