//! Exact dense linear algebra over `Rat`.
//!
//! The workhorse is an integer row-echelon engine: rows are cleared of
//! denominators, kept primitive (content 1), and carried in `i128` until an
//! operation would overflow, at which point the row is promoted to `BigInt`.
//! Reduced row echelon form is unique, so every kernel basis and span basis
//! computed here is canonical and reproducible byte-for-byte.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
}

// ---------------------------------------------------------------------------
// Integer rows with small/big representation
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Row {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Row {

    fn leading(&self, from: usize) -> Option<usize> {
        match self {
            Row::Small(v) => v.iter().skip(from).position(|x| *x != 0).map(|p| p + from),
            Row::Big(v) => v
                .iter()
                .skip(from)
                .position(|x| !x.is_zero())
                .map(|p| p + from),
        }
    }

    fn entry_big(&self, i: usize) -> BigInt {
        match self {
            Row::Small(v) => BigInt::from(v[i]),
            Row::Big(v) => v[i].clone(),
        }
    }

    fn to_big(&self) -> Vec<BigInt> {
        match self {
            Row::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Row::Big(v) => v.clone(),
        }
    }

    /// Divides by the gcd of the entries; early-exits the gcd scan at 1.
    fn reduce_content(&mut self) {
        match self {
            Row::Small(v) => {
                let mut g: i128 = 0;
                for &x in v.iter() {
                    g = gcd_i128(g, x);
                    if g == 1 {
                        return;
                    }
                }
                if g > 1 {
                    for x in v.iter_mut() {
                        *x /= g;
                    }
                }
            }
            Row::Big(v) => {
                let mut g = BigInt::zero();
                for x in v.iter() {
                    g = g.gcd(x);
                    if g.is_one() {
                        break;
                    }
                }
                if !g.is_zero() && !g.is_one() {
                    for x in v.iter_mut() {
                        *x = &*x / &g;
                    }
                }
                // Try to demote back to i128.
                if v.iter().all(|x| x.to_i128().is_some()) {
                    let small: Vec<i128> = v.iter().map(|x| x.to_i128().unwrap()).collect();
                    *self = Row::Small(small);
                }
            }
        }
    }

    /// self = a*self - b*other, then content reduction.
    fn combine(&mut self, a: &BigInt, b: &BigInt, other: &Row) {
        let small_pair = match (&*self, other) {
            (Row::Small(_), Row::Small(_)) => a.to_i128().zip(b.to_i128()),
            _ => None,
        };
        if let Some((sa, sb)) = small_pair {
            if let (Row::Small(v), Row::Small(o)) = (&mut *self, other) {
                let mut ok = true;
                let mut out = Vec::with_capacity(v.len());
                for (x, y) in v.iter().zip(o.iter()) {
                    let t = sa
                        .checked_mul(*x)
                        .zip(sb.checked_mul(*y))
                        .and_then(|(p, q)| p.checked_sub(q));
                    match t {
                        Some(t) => out.push(t),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    *v = out;
                    self.reduce_content();
                    return;
                }
            }
        }
        // BigInt path.
        let ob = other.to_big();
        let mut sb = self.to_big();
        for (x, y) in sb.iter_mut().zip(ob.iter()) {
            *x = a * &*x - b * y;
        }
        *self = Row::Big(sb);
        self.reduce_content();
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn rat_row_to_int(row: &[Rat]) -> Row {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    let big: Vec<BigInt> = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut r = Row::Big(big);
    r.reduce_content();
    r
}

// ---------------------------------------------------------------------------
// Echelon accumulator
// ---------------------------------------------------------------------------

/// Streaming row-echelon form: rows are inserted one at a time and reduced
/// against the pivots already present. `into_rref` finishes the reduction and
/// yields the unique RREF over the rationals.
pub struct Echelon {
    ncols: usize,
    /// Sorted by leading column; each row is primitive with its leading entry
    /// at `lead`.
    rows: Vec<(usize, Row)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert_rat(&mut self, row: &[Rat]) -> bool {
        assert_eq!(row.len(), self.ncols);
        self.insert(rat_row_to_int(row))
    }

    fn insert(&mut self, mut row: Row) -> bool {
        let mut from = 0usize;
        loop {
            let lead = match row.leading(from) {
                Some(l) => l,
                None => return false,
            };
            match self.rows.binary_search_by_key(&lead, |(l, _)| *l) {
                Ok(i) => {
                    let (a, b) = {
                        let pivot = &self.rows[i].1;
                        let pv = pivot.entry_big(lead);
                        let rv = row.entry_big(lead);
                        let g = pv.gcd(&rv);
                        (&pv / &g, &rv / &g)
                    };
                    let pivot_row = self.rows[i].1.clone();
                    row.combine(&a, &b, &pivot_row);
                    from = lead;
                }
                Err(i) => {
                    self.rows.insert(i, (lead, row));
                    return true;
                }
            }
        }
    }

    /// Back-eliminates above the pivots and returns normalized rational rows
    /// (leading entry 1), sorted by leading column.
    pub fn into_rref(mut self) -> Vec<Vec<Rat>> {
        for i in (0..self.rows.len()).rev() {
            let (lead, pivot_row) = (self.rows[i].0, self.rows[i].1.clone());
            let pv = pivot_row.entry_big(lead);
            for j in 0..i {
                let rv = self.rows[j].1.entry_big(lead);
                if rv.is_zero() {
                    continue;
                }
                let g = pv.gcd(&rv);
                let (a, b) = (&pv / &g, &rv / &g);
                self.rows[j].1.combine(&a, &b, &pivot_row);
            }
        }
        self.rows
            .into_iter()
            .map(|(lead, row)| {
                let big = row.to_big();
                let pv = big[lead].clone();
                big.into_iter()
                    .map(|x| Rat::new(x, pv.clone()))
                    .collect::<Vec<Rat>>()
            })
            .collect()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|(l, _)| *l).collect()
    }
}

/// Canonical kernel basis from the RREF of the row list.
fn kernel_from_rref(rref: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let pivots: Vec<usize> = rref
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rref[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl MatQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatQ {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        MatQ {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatQ {
        let mut m = MatQ::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &MatQ) -> MatQ {
        assert_eq!(self.cols, other.rows);
        let mut m = MatQ::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *m.at_mut(i, j) += a.clone() * b.clone();
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc += self.at(i, j).clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Unique reduced row echelon form plus the pivot columns.
    pub fn rref(&self) -> (MatQ, Vec<usize>) {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert_rat(self.row(i));
        }
        let pivots = ech.pivot_cols();
        let rows = ech.into_rref();
        (MatQ::from_rows(rows), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert_rat(self.row(i));
        }
        ech.rank()
    }

    /// Canonical basis of the null space `{v : M v = 0}` derived from the RREF.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert_rat(self.row(i));
        }
        let rref = ech.into_rref();
        kernel_from_rref(&rref, self.cols)
    }

    /// Solves `M x = b`: returns a particular solution (free variables zero
    /// in RREF coordinates) and the kernel basis, or `None` if inconsistent.
    pub fn solve_affine(&self, b: &[Rat]) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
        assert_eq!(b.len(), self.rows);
        let mut ech = Echelon::new(self.cols + 1);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.push(b[i].clone());
            ech.insert_rat(&row);
        }
        let rref = ech.into_rref();
        let mut particular = vec![Rat::zero(); self.cols];
        for r in &rref {
            let lead = r.iter().position(|x| !x.is_zero()).unwrap();
            if lead == self.cols {
                return None; // pivot in the augmented column
            }
            particular[lead] = r[self.cols].clone();
        }
        Some((particular, self.kernel()))
    }

    pub fn inverse(&self) -> Option<MatQ> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut ech = Echelon::new(2 * n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend((0..n).map(|j| {
                if j == i {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            }));
            ech.insert_rat(&row);
        }
        if ech.rank() != n {
            return None;
        }
        let rref = ech.into_rref();
        let mut inv = MatQ::zero(n, n);
        for (i, r) in rref.iter().enumerate() {
            let lead = r.iter().position(|x| !x.is_zero()).unwrap();
            if lead >= n {
                return None;
            }
            debug_assert_eq!(lead, i);
            for j in 0..n {
                *inv.at_mut(i, j) = r[n + j].clone();
            }
        }
        Some(inv)
    }
}

// ---------------------------------------------------------------------------
// Subspace operations (vectors are rows)
// ---------------------------------------------------------------------------

/// Canonical (RREF) basis of the span of the given vectors.
pub fn span_basis(vecs: &[Vec<Rat>], ambient: usize) -> Vec<Vec<Rat>> {
    let mut ech = Echelon::new(ambient);
    for v in vecs {
        assert_eq!(v.len(), ambient, "ambient dimension mismatch");
        ech.insert_rat(v);
    }
    ech.into_rref()
}

pub fn span_dim(vecs: &[Vec<Rat>], ambient: usize) -> usize {
    let mut ech = Echelon::new(ambient);
    for v in vecs {
        ech.insert_rat(v);
    }
    ech.rank()
}

/// Is `v` in the span of `basis` (any spanning set)?
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let ambient = v.len();
    let mut ech = Echelon::new(ambient);
    for b in basis {
        ech.insert_rat(b);
    }
    let r = ech.rank();
    !ech.insert_rat(v) || ech.rank() == r
}

/// Is every vector of `inner` inside the span of `outer`?
pub fn span_contained(inner: &[Vec<Rat>], outer: &[Vec<Rat>], ambient: usize) -> bool {
    let mut ech = Echelon::new(ambient);
    for b in outer {
        ech.insert_rat(b);
    }
    let r = ech.rank();
    for v in inner {
        ech.insert_rat(v);
        if ech.rank() != r {
            return false;
        }
    }
    true
}

pub struct SubspaceOps {
    pub dim_u: usize,
    pub dim_w: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
    pub sum: Vec<Vec<Rat>>,
    pub intersection: Vec<Vec<Rat>>,
}

impl SubspaceOps {
    /// dim U/(U cap W) = dim U - dim(U cap W).
    pub fn quotient_dim(&self) -> usize {
        self.dim_u - self.dim_intersection
    }
}

/// Intersection, sum and the derived quotient dimensions of two spans.
pub fn subspace_ops(
    u: &[Vec<Rat>],
    w: &[Vec<Rat>],
    ambient: usize,
) -> Result<SubspaceOps, LinalgError> {
    for v in u.iter().chain(w) {
        if v.len() != ambient {
            return Err(LinalgError::DimMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                ambient
            )));
        }
    }
    let ub = span_basis(u, ambient);
    let wb = span_basis(w, ambient);
    let all: Vec<Vec<Rat>> = ub.iter().chain(wb.iter()).cloned().collect();
    let sum = span_basis(&all, ambient);
    // lambda . U = mu . W  <=>  (lambda, -mu) in ker [U^T | W^T]
    let k = ub.len() + wb.len();
    let mut m = MatQ::zero(ambient, k);
    for (j, v) in ub.iter().enumerate() {
        for i in 0..ambient {
            *m.at_mut(i, j) = v[i].clone();
        }
    }
    for (j, v) in wb.iter().enumerate() {
        for i in 0..ambient {
            *m.at_mut(i, ub.len() + j) = -v[i].clone();
        }
    }
    let ker = m.kernel();
    let mut inter_vecs = Vec::new();
    for kv in &ker {
        let mut vec = vec![Rat::zero(); ambient];
        for (j, v) in ub.iter().enumerate() {
            if kv[j].is_zero() {
                continue;
            }
            for i in 0..ambient {
                vec[i] += kv[j].clone() * v[i].clone();
            }
        }
        inter_vecs.push(vec);
    }
    let intersection = span_basis(&inter_vecs, ambient);
    Ok(SubspaceOps {
        dim_u: ub.len(),
        dim_w: wb.len(),
        dim_sum: sum.len(),
        dim_intersection: intersection.len(),
        sum,
        intersection,
    })
}

/// Functionals annihilating the span (kernel of the matrix whose rows are the
/// basis vectors). Conditions `phi . v = 0` for these `phi` characterize
/// membership in the span, when combined with dimension counts.
pub fn annihilator(basis: &[Vec<Rat>], ambient: usize) -> Vec<Vec<Rat>> {
    let m = MatQ::from_rows(
        basis
            .iter()
            .map(|v| {
                assert_eq!(v.len(), ambient);
                v.clone()
            })
            .collect(),
    );
    if basis.is_empty() {
        return MatQ::zero(0, ambient).kernel();
    }
    m.kernel()
}

// ---------------------------------------------------------------------------
// Sparse kernel with connected-component splitting
// ---------------------------------------------------------------------------

/// Column-major sparse matrix; row indices are dense `usize` keys.
pub struct SparseMat {
    pub ncols: usize,
    pub col_entries: Vec<Vec<(usize, Rat)>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
            r
        } else {
            x
        }
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = ra.min(rb);
        }
    }
}

/// Kernel of a sparse column map. Columns whose row supports never interact
/// are solved in independent blocks, which is what makes the big graded
/// pullback matrices tractable.
pub fn sparse_kernel(m: &SparseMat) -> Vec<Vec<Rat>> {
    assert_eq!(m.col_entries.len(), m.ncols);
    let nrows = m
        .col_entries
        .iter()
        .flat_map(|c| c.iter().map(|(r, _)| r + 1))
        .max()
        .unwrap_or(0);
    // Union columns sharing a row.
    let mut uf = UnionFind::new(m.ncols);
    let mut row_first: Vec<Option<usize>> = vec![None; nrows];
    for (j, col) in m.col_entries.iter().enumerate() {
        for (r, _) in col {
            match row_first[*r] {
                None => row_first[*r] = Some(j),
                Some(first) => uf.union(first, j),
            }
        }
    }
    // Group columns by representative; empty columns are kernel generators.
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new(); // (first col, vector)
    for j in 0..m.ncols {
        if m.col_entries[j].is_empty() {
            let mut v = vec![Rat::zero(); m.ncols];
            v[j] = Rat::one();
            basis.push((j, v));
        } else {
            let rep = uf.find(j);
            groups.entry(rep).or_default().push(j);
        }
    }
    for (_, cols) in groups {
        // Local dense block: rows touching these columns.
        let mut row_ids: Vec<usize> = cols
            .iter()
            .flat_map(|&j| m.col_entries[j].iter().map(|(r, _)| *r))
            .collect();
        row_ids.sort_unstable();
        row_ids.dedup();
        let row_pos: std::collections::BTreeMap<usize, usize> =
            row_ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut dense: Vec<Vec<Rat>> = vec![vec![Rat::zero(); cols.len()]; row_ids.len()];
        for (local_j, &j) in cols.iter().enumerate() {
            for (r, v) in &m.col_entries[j] {
                dense[row_pos[r]][local_j] = v.clone();
            }
        }
        let mut ech = Echelon::new(cols.len());
        for row in &dense {
            ech.insert_rat(row);
        }
        let rref = ech.into_rref();
        for kv in kernel_from_rref(&rref, cols.len()) {
            let mut v = vec![Rat::zero(); m.ncols];
            for (local_j, &j) in cols.iter().enumerate() {
                v[j] = kv[local_j].clone();
            }
            basis.push((cols[0], v));
        }
    }
    basis.sort_by(|a, b| {
        let la = a.1.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX);
        let lb = b.1.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX);
        la.cmp(&lb)
    });
    basis.into_iter().map(|(_, v)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};
    use crate::rng::SplitMix64;
    use num_traits::Zero;

    /// Fraction-free (Bareiss) elimination rank, used as an independent oracle.
    fn bareiss_rank(rows: &[Vec<Rat>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        // Clear denominators first.
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let mut lcm = BigInt::one();
                for x in r {
                    lcm = lcm.lcm(x.denom());
                }
                r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let (nr, nc) = (m.len(), m[0].len());
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..nc {
            if row >= nr {
                break;
            }
            let piv = (row..nr).find(|&i| !m[i][col].is_zero());
            let Some(piv) = piv else { continue };
            m.swap(row, piv);
            for i in 0..nr {
                if i == row {
                    continue;
                }
                for j in 0..nc {
                    if j == col {
                        continue;
                    }
                    let t = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                    m[i][j] = &t / &prev;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            row += 1;
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> MatQ {
        let mut m = MatQ::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = rat(rng.range_i64(-5, 5));
            }
        }
        m
    }

    #[test]
    fn kernel_identity_is_empty() {
        let m = MatQ::identity(2);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn kernel_zero_matrix_is_full() {
        let m = MatQ::zero(3, 3);
        let k = m.kernel();
        assert_eq!(k.len(), 3);
        // canonical basis: unit vectors
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn kernel_of_random_rank3_matrix() {
        // A 4x6 matrix of rank 3 built as (4x3)*(3x6) with generic factors.
        let mut rng = SplitMix64::new(41);
        let (a, b) = loop {
            let a = random_matrix(&mut rng, 4, 3);
            let b = random_matrix(&mut rng, 3, 6);
            if a.rank() == 3 && b.rank() == 3 {
                break (a, b);
            }
        };
        let m = a.mul(&b);
        let rows: Vec<Vec<Rat>> = (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
        assert_eq!(bareiss_rank(&rows), 3, "oracle rank");
        assert_eq!(m.rank(), 3);
        let k = m.kernel();
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(span_dim(&k, 6), 3);
    }

    #[test]
    fn rank_nullity_on_randoms() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..25 {
            let rows = 1 + (rng.next_u64() % 5) as usize;
            let cols = 1 + (rng.next_u64() % 6) as usize;
            let m = random_matrix(&mut rng, rows, cols);
            let all_rows: Vec<Vec<Rat>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
            assert_eq!(m.rank(), bareiss_rank(&all_rows), "rank vs Bareiss oracle");
            assert_eq!(m.rank() + m.kernel().len(), cols, "rank-nullity");
        }
    }

    #[test]
    fn rref_is_insertion_order_independent() {
        let mut rng = SplitMix64::new(99);
        let m = random_matrix(&mut rng, 5, 5);
        let rows: Vec<Vec<Rat>> = (0..5).map(|i| m.row(i).to_vec()).collect();
        let mut fwd = Echelon::new(5);
        for r in &rows {
            fwd.insert_rat(r);
        }
        let mut rev = Echelon::new(5);
        for r in rows.iter().rev() {
            rev.insert_rat(r);
        }
        assert_eq!(fwd.into_rref(), rev.into_rref());
    }

    #[test]
    fn subspace_examples() {
        // U = span{e1}, W = span{e2} in Q^2.
        let u = vec![vec![rat(1), rat(0)]];
        let w = vec![vec![rat(0), rat(1)]];
        let ops = subspace_ops(&u, &w, 2).unwrap();
        assert_eq!(ops.dim_intersection, 0);
        assert_eq!(ops.dim_sum, 2);
        assert_eq!(ops.quotient_dim(), 1);

        // U = W.
        let ops2 = subspace_ops(&u, &u, 2).unwrap();
        assert_eq!(ops2.dim_intersection, 1);

        // mismatched lengths error
        assert!(subspace_ops(&u, &[vec![rat(1)]], 2).is_err());
    }

    #[test]
    fn subspace_modular_identity_on_randoms() {
        let mut rng = SplitMix64::new(12345);
        for _ in 0..20 {
            let u: Vec<Vec<Rat>> = (0..2)
                .map(|_| (0..5).map(|_| rat(rng.range_i64(-3, 3))).collect())
                .collect();
            let w: Vec<Vec<Rat>> = (0..3)
                .map(|_| (0..5).map(|_| rat(rng.range_i64(-3, 3))).collect())
                .collect();
            let ops = subspace_ops(&u, &w, 5).unwrap();
            assert_eq!(
                ops.dim_intersection,
                ops.dim_u + ops.dim_w - ops.dim_sum,
                "modular identity"
            );
        }
    }

    #[test]
    fn solve_affine_roundtrip() {
        let m = MatQ::from_rows(vec![
            vec![rat(1), rat(2), rat(0)],
            vec![rat(0), rat(1), rat(1)],
        ]);
        let b = vec![ratq(3, 2), rat(2)];
        let (x, null) = m.solve_affine(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert_eq!(null.len(), 1);
        // inconsistent system
        let m2 = MatQ::from_rows(vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]]);
        assert!(m2.solve_affine(&[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = SplitMix64::new(5);
        let m = loop {
            let m = random_matrix(&mut rng, 4, 4);
            if m.rank() == 4 {
                break m;
            }
        };
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatQ::identity(4));
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..10 {
            let rows = 4 + (rng.next_u64() % 4) as usize;
            let cols = 3 + (rng.next_u64() % 5) as usize;
            let m = random_matrix(&mut rng, rows, cols);
            let cols_sparse: Vec<Vec<(usize, Rat)>> = (0..cols)
                .map(|j| {
                    (0..rows)
                        .filter(|&i| !m.at(i, j).is_zero())
                        .map(|i| (i, m.at(i, j).clone()))
                        .collect()
                })
                .collect();
            let sk = sparse_kernel(&SparseMat {
                ncols: cols,
                col_entries: cols_sparse,
            });
            let dk = m.kernel();
            assert_eq!(sk.len(), dk.len());
            assert_eq!(span_dim(&sk, cols), span_dim(&dk, cols));
            for v in &sk {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn big_values_trigger_promotion() {
        // Hilbert-like matrix forces large intermediate numerators.
        let n = 8;
        let mut m = MatQ::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = ratq(1, (i + j + 1) as i64);
            }
        }
        assert_eq!(m.rank(), n);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatQ::identity(n));
    }
}
