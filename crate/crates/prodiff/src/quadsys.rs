//! Systems of quadrics A in S^2 T*: prolongation, linear syzygies (the
//! bracket part), pure relations in each degree with Koszul-style
//! bookkeeping, the constructive syzygy from a quadratic relation, the rank
//! bound for syzygy systems with its sharp construction, codimension
//! threshold predicates, and the graph variety built from a system.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{annihilator, span_dim, MatQ};
use crate::mpoly::{exps_of_degree, MPoly, VarStyle};
use crate::rat::{rat, Rat};
use crate::rng::SplitMix64;
use crate::tensor::{contract, form_span_basis, SymForm, SymSpace};
use crate::variety::{DegSpace, ParamVariety};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadSysError {
    #[error("{0}")]
    BadInput(String),
    #[error("trivial relation")]
    TrivialRelation,
    #[error("independence precondition fails: {0}")]
    Dependence(String),
    #[error("no contraction vector found (cannot occur for a valid relation)")]
    NoVector,
}

/// A system of quadrics: a spanning set together with its canonical basis.
#[derive(Clone, Debug)]
pub struct QuadricSystem {
    pub n: usize,
    pub gens: Vec<SymForm>,
    basis: Vec<SymForm>,
}

impl QuadricSystem {
    pub fn new(n: usize, gens: Vec<SymForm>) -> Self {
        assert!(gens.iter().all(|g| g.space.n == n && g.space.k == 2));
        let basis = form_span_basis(&gens);
        QuadricSystem { n, gens, basis }
    }

    pub fn from_strings(n: usize, quadrics: &[&str]) -> Result<Self, QuadSysError> {
        let forms: Result<Vec<SymForm>, _> = quadrics
            .iter()
            .map(|s| {
                MPoly::parse(s, n, VarStyle::T)
                    .map_err(QuadSysError::BadInput)
                    .and_then(|p| {
                        if p.is_zero() || (p.is_homogeneous() && p.total_degree() == 2) {
                            Ok(SymForm::from_poly_in(&p, n, 2))
                        } else {
                            Err(QuadSysError::BadInput(format!(
                                "`{s}` is not a homogeneous quadric"
                            )))
                        }
                    })
            })
            .collect();
        Ok(Self::new(n, forms?))
    }

    /// Dimension of the span.
    pub fn a(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SymForm] {
        &self.basis
    }

    /// The generators themselves when they are independent (preserving the
    /// caller's labeling), otherwise the canonical extracted basis.
    pub fn labeled_basis(&self) -> &[SymForm] {
        if self.gens.len() == self.basis.len() {
            &self.gens
        } else {
            &self.basis
        }
    }
}

/// On-disk description of a quadric system (JSON).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadricSystemSpec {
    pub n: usize,
    pub quadrics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl QuadricSystemSpec {
    pub fn to_system(&self) -> Result<QuadricSystem, QuadSysError> {
        let refs: Vec<&str> = self.quadrics.iter().map(|s| s.as_str()).collect();
        QuadricSystem::from_strings(self.n, &refs)
    }
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyzygyCert {
    /// sum_mu l_mu q^mu = 0 with covectors l_mu (one per basis quadric).
    Linear { l: Vec<Vec<Rat>> },
    /// sum_E c_E q^E = 0 over degree-e exponent multisets of the basis.
    Relation { degree: u32, coeffs: Vec<Rat> },
}

impl SyzygyCert {
    pub fn is_trivial(&self) -> bool {
        match self {
            SyzygyCert::Linear { l } => l.iter().all(|v| v.iter().all(|x| x.is_zero())),
            SyzygyCert::Relation { coeffs, .. } => coeffs.iter().all(|x| x.is_zero()),
        }
    }

    /// Re-evaluates the certificate; must be exactly zero.
    pub fn verify(&self, sys: &QuadricSystem) -> bool {
        match self {
            SyzygyCert::Linear { l } => {
                if l.len() != sys.a() {
                    return false;
                }
                let mut acc = MPoly::zero(sys.n);
                for (mu, cov) in l.iter().enumerate() {
                    for (g, c) in cov.iter().enumerate() {
                        if !c.is_zero() {
                            let term = sys.basis[mu].to_poly().mul(&MPoly::var(sys.n, g));
                            acc = acc.add(&term.scale(c));
                        }
                    }
                }
                acc.is_zero()
            }
            SyzygyCert::Relation { degree, coeffs } => {
                let exps = exps_of_degree(sys.a(), *degree);
                if exps.len() != coeffs.len() {
                    return false;
                }
                let mut acc = MPoly::zero(sys.n);
                for (e, c) in exps.iter().zip(coeffs) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut prod = MPoly::one(sys.n);
                    for (i, &k) in e.iter().enumerate() {
                        for _ in 0..k {
                            prod = prod.mul(&sys.basis[i].to_poly());
                        }
                    }
                    acc = acc.add(&prod.scale(c));
                }
                acc.is_zero()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Prolongation and bracket part
// ---------------------------------------------------------------------------

/// A^(1) = {P in S^3 T* : v -| P in span A for all v} = (A (x) T*) cap S^3.
pub fn prolongation(sys: &QuadricSystem) -> Vec<SymForm> {
    let n = sys.n;
    let s3 = SymSpace::new(n, 3);
    let s2 = SymSpace::new(n, 2);
    let span: Vec<Vec<Rat>> = sys.basis.iter().map(|f| f.coeffs.clone()).collect();
    let funcs = annihilator(&span, s2.dim());
    // Rows: for each direction i and each annihilator functional phi,
    // phi(e_i -| P) = 0. Columns: S^3 monomial coefficients of P.
    let mut rows = Vec::new();
    for i in 0..n {
        for phi in &funcs {
            let mut row = vec![Rat::zero(); s3.dim()];
            for (col, e3) in s3.basis().iter().enumerate() {
                if e3[i] == 0 {
                    continue;
                }
                // e_i -| monomial = (e3_i / 3) * monomial with one less e_i
                let mut e2 = e3.clone();
                e2[i] -= 1;
                let j = s2.index_of(&e2).unwrap();
                if !phi[j].is_zero() {
                    row[col] = phi[j].clone() * Rat::new(e3[i].into(), 3.into());
                }
            }
            rows.push(row);
        }
    }
    let m = MatQ::from_rows(rows);
    let kernel = if m.nrows() == 0 {
        MatQ::zero(0, s3.dim()).kernel()
    } else {
        m.kernel()
    };
    kernel
        .into_iter()
        .map(|v| SymForm {
            space: s3.clone(),
            coeffs: v,
        })
        .collect()
}

/// Rank-nullity split of the multiplication map A (x) T* -> S^3 T*:
/// (dim of the image A.T*, dim of the kernel A^[1]). The two always sum to
/// a*n, which is the computable content of the tensor decomposition.
pub fn split_dims(sys: &QuadricSystem) -> (usize, usize) {
    let bracket = bracket_part(sys).len();
    let total = sys.a() * sys.n;
    (total - bracket, bracket)
}

/// A^[1]: the linear syzygies, as the kernel of the multiplication map
/// A (x) T* -> S^3 T*. Each kernel element is returned as a certificate.
pub fn bracket_part(sys: &QuadricSystem) -> Vec<SyzygyCert> {
    let n = sys.n;
    let a = sys.a();
    if a == 0 {
        return Vec::new();
    }
    let s3 = SymSpace::new(n, 3);
    // Columns indexed by (mu, gamma): the cubic q^mu * omega^gamma.
    let mut m = MatQ::zero(s3.dim(), a * n);
    for (mu, q) in sys.basis.iter().enumerate() {
        for g in 0..n {
            let cubic = q.to_poly().mul(&MPoly::var(n, g));
            for (e, c) in cubic.terms() {
                let row = s3.index_of(e).unwrap();
                *m.at_mut(row, mu * n + g) = c.clone();
            }
        }
    }
    m.kernel()
        .into_iter()
        .map(|v| {
            let l: Vec<Vec<Rat>> = (0..a).map(|mu| v[mu * n..(mu + 1) * n].to_vec()).collect();
            SyzygyCert::Linear { l }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Relations in each degree
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct RelationsReport {
    pub degree: u32,
    pub dim_relations: usize,
    /// Dimension accounted for by lower-degree relations times the system
    /// (the Koszul-style tautologies are identically zero in this symmetric
    /// formulation, so this is the whole accounted part).
    pub dim_accounted: usize,
    pub dim_new: usize,
}

/// Pure degree-e relations: kernel of S^e(A) -> S^(2e) T*. Returns the
/// relation certificates of degree `e` together with the bookkeeping of how
/// many come from lower degrees.
pub fn relations(sys: &QuadricSystem, e: u32) -> (Vec<SyzygyCert>, RelationsReport) {
    assert!(e >= 2);
    let a = sys.a();
    let n = sys.n;
    let rel_space = DegSpace::new(a, e);
    let target = DegSpace::new(n, 2 * e);
    let mut mat = MatQ::zero(target.dim(), rel_space.dim());
    for (col, exp) in rel_space.exps.iter().enumerate() {
        let mut prod = MPoly::one(n);
        for (i, &k) in exp.iter().enumerate() {
            for _ in 0..k {
                prod = prod.mul(&sys.basis[i].to_poly());
            }
        }
        for (em, c) in prod.terms() {
            let row = target.index_of(em).unwrap();
            *mat.at_mut(row, col) = c.clone();
        }
    }
    let kernel = mat.kernel();
    let dim_relations = kernel.len();
    // Relations generated from degree e-1: multiply each lower relation by a
    // basis quadric (shift the exponent vector).
    let dim_accounted = if e == 2 {
        0
    } else {
        let (lower, _) = relations(sys, e - 1);
        let lower_space = DegSpace::new(a, e - 1);
        let mut vecs = Vec::new();
        for cert in &lower {
            if let SyzygyCert::Relation { coeffs, .. } = cert {
                for j in 0..a {
                    let mut v = vec![Rat::zero(); rel_space.dim()];
                    for (i, c) in coeffs.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut exp = lower_space.exps[i].clone();
                        exp[j] += 1;
                        let idx = rel_space.index_of(&exp).unwrap();
                        v[idx] += c.clone();
                    }
                    vecs.push(v);
                }
            }
        }
        span_dim(&vecs, rel_space.dim())
    };
    let report = RelationsReport {
        degree: e,
        dim_relations,
        dim_accounted,
        dim_new: dim_relations - dim_accounted,
    };
    let certs = kernel
        .into_iter()
        .map(|coeffs| SyzygyCert::Relation { degree: e, coeffs })
        .collect();
    (certs, report)
}

// ---------------------------------------------------------------------------
// Constructive syzygy from a quadratic relation (Lemma route)
// ---------------------------------------------------------------------------

/// From a quadratic relation sum c_{mu nu} q^mu q^nu = 0 builds the linear
/// syzygy l_nu = c_{mu nu} (v -| q^mu) for a deterministically chosen v.
pub fn syzygy_from_relation(
    sys: &QuadricSystem,
    cert: &SyzygyCert,
) -> Result<SyzygyCert, QuadSysError> {
    let a = sys.a();
    let coeffs = match cert {
        SyzygyCert::Relation { degree: 2, coeffs } => coeffs,
        _ => {
            return Err(QuadSysError::BadInput(
                "expected a degree-2 relation certificate".into(),
            ))
        }
    };
    if cert.is_trivial() {
        return Err(QuadSysError::TrivialRelation);
    }
    if !cert.verify(sys) {
        return Err(QuadSysError::BadInput("certificate does not verify".into()));
    }
    // Symmetric matrix c_{mu nu} from the multiset coefficients.
    let rel_space = DegSpace::new(a, 2);
    let mut c = vec![vec![Rat::zero(); a]; a];
    for (i, v) in coeffs.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let e = &rel_space.exps[i];
        let pair: Vec<usize> = (0..a)
            .flat_map(|j| std::iter::repeat(j).take(e[j] as usize))
            .collect();
        let (mu, nu) = (pair[0], pair[1]);
        if mu == nu {
            c[mu][nu] = v.clone();
        } else {
            c[mu][nu] = v.clone() / rat(2);
            c[nu][mu] = v.clone() / rat(2);
        }
    }
    // Candidate vectors: standard basis, then sums of two, then a fallback
    // sweep of small combinations. Deterministic order.
    let n = sys.n;
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    for i in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        candidates.push(v);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v[j] = Rat::one();
            candidates.push(v);
        }
    }
    for s in 2..=4i64 {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v[j] = rat(s);
                candidates.push(v);
            }
        }
    }
    for v in candidates {
        let mut l: Vec<Vec<Rat>> = Vec::with_capacity(a);
        let mut nontrivial = false;
        for nu in 0..a {
            let mut acc = SymForm::zero(n, 1);
            for mu in 0..a {
                if c[mu][nu].is_zero() {
                    continue;
                }
                let contracted = contract(&v, &sys.basis[mu]).expect("degree 2");
                acc = acc.add(&contracted.scale(&c[mu][nu]));
            }
            if !acc.is_zero() {
                nontrivial = true;
            }
            l.push(acc.coeffs.clone());
        }
        if nontrivial {
            let out = SyzygyCert::Linear { l };
            debug_assert!(out.verify(sys));
            return Ok(out);
        }
    }
    Err(QuadSysError::NoVector)
}

// ---------------------------------------------------------------------------
// Rank bound for syzygy systems
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct RankBoundReport {
    pub p: usize,
    pub bound: usize,
    pub max_rank_seen: usize,
    pub pass: bool,
}

/// Checks that every quadric in the span of Q_1..Q_p is of rank <= 2(p-1),
/// given a verified syzygy l^1 Q_1 + ... + l^p Q_p = 0 with independent l's
/// and independent Q's. Deterministic sampling plus `samples` seeded draws.
pub fn rank_bound_check(
    quadrics: &[SymForm],
    ls: &[Vec<Rat>],
    samples: usize,
    seed: u64,
) -> Result<RankBoundReport, QuadSysError> {
    let p = quadrics.len();
    if p == 0 || ls.len() != p {
        return Err(QuadSysError::BadInput("need matching l's and Q's".into()));
    }
    let n = quadrics[0].space.n;
    if span_dim(&ls.to_vec(), n) != p {
        return Err(QuadSysError::Dependence("covectors l^i are dependent".into()));
    }
    let qvecs: Vec<Vec<Rat>> = quadrics.iter().map(|q| q.coeffs.clone()).collect();
    if span_dim(&qvecs, quadrics[0].space.dim()) != p {
        return Err(QuadSysError::Dependence("quadrics Q_i are dependent".into()));
    }
    // Verify the syzygy itself.
    let mut acc = MPoly::zero(n);
    for (q, l) in quadrics.iter().zip(ls) {
        for (g, c) in l.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&q.to_poly().mul(&MPoly::var(n, g)).scale(c));
            }
        }
    }
    if !acc.is_zero() {
        return Err(QuadSysError::BadInput("the proposed syzygy is not zero".into()));
    }
    let bound = 2 * (p - 1);
    let mut max_rank = 0usize;
    let mut check = |coeffs: &[Rat]| {
        let mut q = SymForm::zero(n, 2);
        for (i, c) in coeffs.iter().enumerate() {
            q = q.add(&quadrics[i].scale(c));
        }
        let r = q.gram_matrix().rank();
        max_rank = max_rank.max(r);
    };
    for i in 0..p {
        let mut c = vec![Rat::zero(); p];
        c[i] = Rat::one();
        check(&c);
    }
    for i in 0..p {
        for j in (i + 1)..p {
            let mut c = vec![Rat::zero(); p];
            c[i] = Rat::one();
            c[j] = Rat::one();
            check(&c);
            c[j] = -Rat::one();
            check(&c);
        }
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let c: Vec<Rat> = (0..p).map(|_| rat(rng.range_i64(-5, 5))).collect();
        check(&c);
    }
    Ok(RankBoundReport {
        p,
        bound,
        max_rank_seen: max_rank,
        pass: max_rank <= bound,
    })
}

// ---------------------------------------------------------------------------
// Extremal construction
// ---------------------------------------------------------------------------

pub struct ExtremalOptions {
    /// Seed for the cyclic-sum-zero b-array; `None` means b = 0.
    pub b_seed: Option<u64>,
    /// Use independent complement covectors m^i_j (the sharp case); `false`
    /// sets all m to zero.
    pub independent_m: bool,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        ExtremalOptions {
            b_seed: None,
            independent_m: true,
        }
    }
}

/// Builds p quadrics on n variables with the planted syzygy
/// l^1 q_1 + ... + l^p q_p = 0, where q^j = b^j_{ik} l^i l^k + m^j_k l^k with
/// a first-two-slots-symmetric, cyclic-sum-zero b and antisymmetric m.
/// Requires n >= p + C(p,2) so the m's can be independent.
pub fn extremal_syzygy_system(
    p: usize,
    n: usize,
    opts: &ExtremalOptions,
) -> Result<(QuadricSystem, Vec<SymForm>, Vec<Vec<Rat>>), QuadSysError> {
    let needed = p + p * (p - 1) / 2;
    if n < needed {
        return Err(QuadSysError::BadInput(format!(
            "need n >= p + C(p,2) = {needed}, got {n}"
        )));
    }
    // b[i][j][k], symmetric in the first two slots, cyclic-sum-zero.
    let mut b = vec![vec![vec![Rat::zero(); p]; p]; p];
    if let Some(seed) = opts.b_seed {
        let mut rng = SplitMix64::new(seed);
        for i in 0..p {
            for j in 0..=i {
                for k in 0..p {
                    let v = rat(rng.range_i64(-3, 3));
                    b[i][j][k] = v.clone();
                    b[j][i][k] = v;
                }
            }
        }
        // Project out the cyclic part: b -= cyclic_average(b). The projection
        // preserves the first-two-slot symmetry.
        let third = Rat::new(1.into(), 3.into());
        let orig = b.clone();
        for i in 0..p {
            for j in 0..p {
                for k in 0..p {
                    let cyc = orig[i][j][k].clone() + orig[j][k][i].clone() + orig[k][i][j].clone();
                    b[i][j][k] = orig[i][j][k].clone() - cyc * third.clone();
                }
            }
        }
    }
    // m^j_k: antisymmetric matrix of covectors on the complement.
    let mut m = vec![vec![vec![Rat::zero(); n]; p]; p];
    if opts.independent_m {
        let mut next = p;
        for j in 0..p {
            for k in (j + 1)..p {
                m[j][k][next] = Rat::one();
                m[k][j][next] = -Rat::one();
                next += 1;
            }
        }
    }
    let mut quadrics = Vec::with_capacity(p);
    for j in 0..p {
        let mut q = MPoly::zero(n);
        for i in 0..p {
            for k in 0..p {
                if !b[j][i][k].is_zero() {
                    let term = MPoly::var(n, i).mul(&MPoly::var(n, k));
                    q = q.add(&term.scale(&b[j][i][k]));
                }
            }
        }
        for k in 0..p {
            for (g, c) in m[j][k].iter().enumerate() {
                if !c.is_zero() {
                    q = q.add(&MPoly::var(n, g).mul(&MPoly::var(n, k)).scale(c));
                }
            }
        }
        quadrics.push(SymForm::from_poly_in(&q, n, 2));
    }
    if quadrics.iter().all(|q| q.is_zero()) {
        return Err(QuadSysError::BadInput(
            "degenerate construction: all quadrics zero".into(),
        ));
    }
    let ls: Vec<Vec<Rat>> = (0..p)
        .map(|i| {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v
        })
        .collect();
    // Verify the plant exactly.
    let mut acc = MPoly::zero(n);
    for (j, q) in quadrics.iter().enumerate() {
        acc = acc.add(&q.to_poly().mul(&MPoly::var(n, j)));
    }
    if !acc.is_zero() {
        return Err(QuadSysError::BadInput("construction failed to verify".into()));
    }
    let sys = QuadricSystem::new(n, quadrics.clone());
    Ok((sys, quadrics, ls))
}

// ---------------------------------------------------------------------------
// Threshold predicates
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ThresholdReport {
    pub n: i64,
    pub a: i64,
    pub b_sing: i64,
    /// a < (n + 1 - (b+1)) / 2 forces the prolongation of |II| to vanish.
    pub prolongation_forced_zero: bool,
    /// a < (n - (b+1) + 3) / 3 forces |II| to have no linear syzygies.
    pub no_linear_syzygies_forced: bool,
    /// Under the same bound, a quadric-generated ideal forces a complete
    /// intersection.
    pub ci_if_quadric_generated: bool,
}

pub fn thresholds(n: i64, a: i64, b_sing: i64) -> ThresholdReport {
    assert!(b_sing >= -1);
    let prolongation_forced_zero = 2 * a < n + 1 - (b_sing + 1);
    let no_linear_syzygies_forced = 3 * a < n - (b_sing + 1) + 3;
    ThresholdReport {
        n,
        a,
        b_sing,
        prolongation_forced_zero,
        no_linear_syzygies_forced,
        ci_if_quadric_generated: no_linear_syzygies_forced,
    }
}

// ---------------------------------------------------------------------------
// Graph variety from a system
// ---------------------------------------------------------------------------

/// The rational map t -> [1, t^1, ..., t^n, Q^1(t), ..., Q^a(t)] built from a
/// basis of the system (the given quadrics themselves when independent); its
/// chart at t = 0 has II spanning A and all higher variations zero.
pub fn variety_from_quadrics(sys: &QuadricSystem, label: &str) -> ParamVariety {
    let n = sys.n;
    let mut coords = vec![MPoly::one(n)];
    for i in 0..n {
        coords.push(MPoly::var(n, i));
    }
    for q in sys.labeled_basis() {
        coords.push(q.to_poly());
    }
    ParamVariety::new(n, sys.a(), coords, label).expect("graph parametrization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratq;
    use crate::variety::ideal_slice;

    fn full_s2_n2() -> QuadricSystem {
        QuadricSystem::from_strings(2, &["t1^2", "t1*t2", "t2^2"]).unwrap()
    }

    fn segre_1_2_system() -> QuadricSystem {
        // T = <omega> + <phi1, phi2>, quadrics {omega phi1, omega phi2}.
        QuadricSystem::from_strings(3, &["t1*t2", "t1*t3"]).unwrap()
    }

    #[test]
    fn prolongation_full_system() {
        let sys = full_s2_n2();
        assert_eq!(prolongation(&sys).len(), 4); // all of S^3, n = 2
    }

    #[test]
    fn prolongation_segre_system_vanishes() {
        // Oracle: contraction condition checked over brute-force S^3 basis is
        // the implementation; cross-check by the tensor identity
        // (A (x) T*) cap S^3 via dim A^(1) = a*n - dim(A.T*) ... here just
        // assert emptiness, the dimension law test below covers the identity.
        assert_eq!(prolongation(&segre_1_2_system()).len(), 0);
    }

    #[test]
    fn prolongation_pencil_example() {
        // A = {omega1^2, omega1 omega2}: prolongation contains omega1^3 and
        // omega1^2 omega2; verified against brute force over the 4-dim S^3.
        let sys = QuadricSystem::from_strings(2, &["t1^2", "t1*t2"]).unwrap();
        let pro = prolongation(&sys);
        assert_eq!(pro.len(), 2);
        // brute force: check every kernel member's contractions stay in A
        for f in &pro {
            for i in 0..2 {
                let mut v = vec![Rat::zero(); 2];
                v[i] = Rat::one();
                let c = contract(&v, f).unwrap();
                let vecs: Vec<Vec<Rat>> =
                    sys.basis().iter().map(|q| q.coeffs.clone()).collect();
                assert!(crate::linalg::in_span(&vecs, &c.coeffs));
            }
        }
    }

    #[test]
    fn bracket_part_full_system_dim() {
        // dim A^[1] = 6 - 4 = 2 for the full system on n = 2.
        assert_eq!(bracket_part(&full_s2_n2()).len(), 2);
    }

    #[test]
    fn bracket_part_segre_certificate() {
        let sys = segre_1_2_system();
        let certs = bracket_part(&sys);
        assert_eq!(certs.len(), 1);
        assert!(certs[0].verify(&sys));
        assert!(!certs[0].is_trivial());
    }

    #[test]
    fn bracket_part_generic_two_quadrics_empty() {
        let mut rng = SplitMix64::new(77);
        let n = 4;
        let exps = exps_of_degree(n, 2);
        let mk = |rng: &mut SplitMix64| {
            let mut p = MPoly::zero(n);
            for e in &exps {
                p.add_term(e.clone(), rat(rng.range_i64(-4, 4)));
            }
            SymForm::from_poly_in(&p, n, 2)
        };
        let sys = QuadricSystem::new(n, vec![mk(&mut rng), mk(&mut rng)]);
        assert_eq!(sys.a(), 2);
        assert_eq!(bracket_part(&sys).len(), 0);
    }

    #[test]
    fn dimension_split_law() {
        // image + kernel of the multiplication map = a * n on any system,
        // and the image dimension is verified against a direct span count.
        for sys in [
            full_s2_n2(),
            segre_1_2_system(),
            QuadricSystem::from_strings(2, &["t1^2", "t1*t2"]).unwrap(),
            QuadricSystem::from_strings(3, &["t1*t2", "t1*t3", "t2*t3"]).unwrap(),
        ] {
            let (img, ker) = split_dims(&sys);
            assert_eq!(img + ker, sys.a() * sys.n);
            // oracle for the image: direct span of the products q^mu omega^g
            let s3 = DegSpace::new(sys.n, 3);
            let mut prods = Vec::new();
            for q in sys.basis() {
                for g in 0..sys.n {
                    prods.push(s3.mpoly_to_vec(&q.to_poly().mul(&MPoly::var(sys.n, g))));
                }
            }
            assert_eq!(span_dim(&prods, s3.dim()), img);
        }
    }

    #[test]
    fn relations_triangle_system() {
        // {omega1 omega2, omega1 omega3, omega2 omega3}: no relation in
        // degree 2 or 3.
        let sys = QuadricSystem::from_strings(3, &["t1*t2", "t1*t3", "t2*t3"]).unwrap();
        let (r2, rep2) = relations(&sys, 2);
        assert!(r2.is_empty());
        assert_eq!(rep2.dim_relations, 0);
        let (_, rep3) = relations(&sys, 3);
        assert_eq!(rep3.dim_relations, 0);
    }

    #[test]
    fn relations_full_system_degree_2() {
        // q11 q22 - q12^2 = 0 on the full system, n = 2.
        let sys = full_s2_n2();
        let (certs, rep) = relations(&sys, 2);
        assert_eq!(rep.dim_relations, 1);
        assert!(certs[0].verify(&sys));
    }

    #[test]
    fn syzygy_from_relation_full_system() {
        let sys = full_s2_n2();
        let (certs, _) = relations(&sys, 2);
        let lin = syzygy_from_relation(&sys, &certs[0]).unwrap();
        assert!(lin.verify(&sys));
        assert!(!lin.is_trivial());
    }

    #[test]
    fn syzygy_from_relation_rejects_trivial() {
        let sys = full_s2_n2();
        let cert = SyzygyCert::Relation {
            degree: 2,
            coeffs: vec![Rat::zero(); DegSpace::new(3, 2).dim()],
        };
        assert_eq!(
            syzygy_from_relation(&sys, &cert).unwrap_err(),
            QuadSysError::TrivialRelation
        );
    }

    #[test]
    fn rank_bound_p2_example() {
        // A = {omega1 omega2, omega1 omega3}, syzygy omega3 q1 - omega2 q2.
        let sys = segre_1_2_system();
        let quadrics = sys.basis().to_vec();
        let ls = vec![
            vec![rat(0), rat(0), rat(1)],
            vec![rat(0), rat(-1), rat(0)],
        ];
        let rep = rank_bound_check(&quadrics, &ls, 20, 1).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.bound, 2);
        assert_eq!(rep.max_rank_seen, 2);
    }

    #[test]
    fn extremal_system_p3_sharp() {
        let (sys, quadrics, ls) =
            extremal_syzygy_system(3, 6, &ExtremalOptions::default()).unwrap();
        let rep = rank_bound_check(&quadrics, &ls, 50, 7).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.max_rank_seen, 4, "sharp: rank exactly 2(p-1)");
        assert_eq!(sys.a(), 3);
        // and with random b as well
        let (_, q2, l2) = extremal_syzygy_system(
            3,
            6,
            &ExtremalOptions {
                b_seed: Some(11),
                independent_m: true,
            },
        )
        .unwrap();
        let rep2 = rank_bound_check(&q2, &l2, 50, 8).unwrap();
        assert!(rep2.pass);
    }

    #[test]
    fn extremal_system_p2_small() {
        let (sys, quadrics, ls) = extremal_syzygy_system(
            2,
            3,
            &ExtremalOptions {
                b_seed: Some(5),
                independent_m: true,
            },
        )
        .unwrap();
        assert_eq!(sys.a(), 2);
        let rep = rank_bound_check(&quadrics, &ls, 20, 2).unwrap();
        assert!(rep.pass);
        assert!(rep.max_rank_seen <= 2);
    }

    #[test]
    fn extremal_degenerate_rejected() {
        let err = extremal_syzygy_system(
            2,
            3,
            &ExtremalOptions {
                b_seed: None,
                independent_m: false,
            },
        )
        .unwrap_err();
        assert!(matches!(err, QuadSysError::BadInput(_)));
        // n too small
        assert!(extremal_syzygy_system(3, 4, &ExtremalOptions::default()).is_err());
    }

    #[test]
    fn threshold_examples() {
        let r = thresholds(10, 2, -1);
        assert!(r.prolongation_forced_zero);
        assert!(r.no_linear_syzygies_forced);
        assert!(r.ci_if_quadric_generated);

        let r2 = thresholds(6, 3, -1);
        assert!(r2.prolongation_forced_zero); // 3 < 7/2
        assert!(!r2.no_linear_syzygies_forced); // 3 < 9/3 fails

        let r3 = thresholds(11, 4, -1);
        assert!(r3.no_linear_syzygies_forced); // 4 < 14/3, the boundary case
    }

    #[test]
    fn variety_from_quadrics_conic() {
        let sys = QuadricSystem::from_strings(1, &["t1^2"]).unwrap();
        let v = variety_from_quadrics(&sys, "conic");
        assert_eq!(ideal_slice(&v, 2).len(), 1);
    }

    #[test]
    fn variety_from_segre_system_ideal_count() {
        // a + r + s = 2 + 1 + 0 = 3 quadrics.
        let sys = segre_1_2_system();
        let v = variety_from_quadrics(&sys, "segre-1-2-model");
        assert_eq!(ideal_slice(&v, 2).len(), 3);
    }

    #[test]
    fn lemma_relation_implies_syzygy_on_planted_systems() {
        // Plant q1 q2 = q3 q4 via shared linear factors, then recover a
        // verified linear syzygy through the contraction construction.
        let mut rng = SplitMix64::new(2025);
        for _ in 0..10 {
            let n = 4;
            let mut lin = || {
                let mut p = MPoly::zero(n);
                for i in 0..n {
                    p = p.add(&MPoly::var(n, i).scale(&rat(rng.range_i64(-3, 3))));
                }
                p
            };
            let (l1, l2, l3, l4) = (lin(), lin(), lin(), lin());
            let qs = vec![l1.mul(&l2), l3.mul(&l4), l1.mul(&l3), l2.mul(&l4)];
            if span_dim(
                &qs.iter()
                    .map(|p| SymForm::from_poly_in(p, n, 2).coeffs)
                    .collect::<Vec<_>>(),
                DegSpace::new(n, 2).dim(),
            ) != 4
            {
                continue;
            }
            let sys = QuadricSystem::new(
                n,
                qs.iter().map(|p| SymForm::from_poly_in(p, n, 2)).collect(),
            );
            let (certs, rep) = relations(&sys, 2);
            assert!(rep.dim_relations >= 1, "planted relation is present");
            let lin_syz = syzygy_from_relation(&sys, &certs[0]).unwrap();
            assert!(lin_syz.verify(&sys));
            // Lemma as a property: a quadratic relation forces bracket != 0.
            assert!(!bracket_part(&sys).is_empty());
        }
    }

    #[test]
    fn spec_file_roundtrip() {
        let spec = QuadricSystemSpec {
            n: 3,
            quadrics: vec!["t1*t2".into(), "t1*t3 - 1/2*t2^2".into()],
            label: Some("demo".into()),
        };
        let json = serde_json::to_string(&spec).unwrap();
        let back: QuadricSystemSpec = serde_json::from_str(&json).unwrap();
        let sys = back.to_system().unwrap();
        assert_eq!(sys.a(), 2);
        assert_eq!(sys.basis()[1].sym_array_entry(&[1, 1]), ratq(-1, 2));
    }
}
