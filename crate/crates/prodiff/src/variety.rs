//! Polynomial parametrizations of projective varieties, adapted charts at a
//! marked smooth point, second/third fundamental forms and the higher Taylor
//! invariants, the exact ideal oracle, and the local complete-intersection
//! criterion.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jet::{jet_compose, Jet};
use crate::linalg::{annihilator, span_basis, span_dim, sparse_kernel, Echelon, MatQ, SparseMat};
use crate::mpoly::{exps_of_degree, MPoly, VarStyle};
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::tensor::SymForm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VarietyError {
    #[error("point not on chart: all homogeneous coordinates vanish there")]
    PointNotOnChart,
    #[error("singular point: Jacobian rank {got} < {need}")]
    SingularPoint { got: usize, need: usize },
    #[error("chart cap {have} too small, need at least {need}")]
    CapTooSmall { need: u32, have: u32 },
    #[error("bad variety data: {0}")]
    BadShape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// ParamVariety
// ---------------------------------------------------------------------------

/// A variety given by a polynomial map A^n -> P^(n+a) in homogeneous
/// coordinates `[c_0(t) : ... : c_{n+a}(t)]`.
#[derive(Clone, Debug)]
pub struct ParamVariety {
    pub n: usize,
    pub a: usize,
    pub coords: Vec<MPoly>,
    pub label: String,
}

impl ParamVariety {
    pub fn new(n: usize, a: usize, coords: Vec<MPoly>, label: &str) -> Result<Self, VarietyError> {
        if coords.len() != n + a + 1 {
            return Err(VarietyError::BadShape(format!(
                "expected {} coordinates, got {}",
                n + a + 1,
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.nvars() != n) {
            return Err(VarietyError::BadShape(format!(
                "coordinates must be polynomials in t1..t{n}"
            )));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(VarietyError::BadShape(
                "all coordinates identically zero".into(),
            ));
        }
        Ok(ParamVariety {
            n,
            a,
            coords,
            label: label.to_string(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n + self.a + 1
    }

    pub fn coord_degree(&self) -> u32 {
        self.coords.iter().map(|c| c.total_degree()).max().unwrap()
    }

    /// Reparametrizes by `t -> L t + t0` (exact substitution).
    pub fn reparametrized(&self, lin: &[Vec<Rat>], shift: &[Rat]) -> ParamVariety {
        let n = self.n;
        let args: Vec<MPoly> = (0..n)
            .map(|i| {
                let mut p = MPoly::constant(n, shift[i].clone());
                for (j, c) in lin[i].iter().enumerate() {
                    p = p.add(&MPoly::var(n, j).scale(c));
                }
                p
            })
            .collect();
        let coords = self.coords.iter().map(|c| c.subst(&args)).collect();
        ParamVariety {
            n,
            a: self.a,
            coords,
            label: self.label.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Spec-file round trip
// ---------------------------------------------------------------------------

/// On-disk description of a variety (JSON).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VarietySpec {
    pub label: String,
    pub n: usize,
    pub a: usize,
    pub coords: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
}

impl VarietySpec {
    pub fn from_variety(v: &ParamVariety, point: Option<&[Rat]>) -> Self {
        VarietySpec {
            label: v.label.clone(),
            n: v.n,
            a: v.a,
            coords: v
                .coords
                .iter()
                .map(|c| c.to_string_style(VarStyle::T))
                .collect(),
            point: point.map(|p| p.iter().map(fmt_rat).collect()),
        }
    }

    pub fn to_variety(&self) -> Result<(ParamVariety, Option<Vec<Rat>>), VarietyError> {
        let coords: Result<Vec<MPoly>, _> = self
            .coords
            .iter()
            .map(|s| MPoly::parse(s, self.n, VarStyle::T).map_err(VarietyError::Parse))
            .collect();
        let v = ParamVariety::new(self.n, self.a, coords?, &self.label)?;
        let point = match &self.point {
            None => None,
            Some(p) => {
                if p.len() != self.n {
                    return Err(VarietyError::BadShape(format!(
                        "marked point has {} entries, expected {}",
                        p.len(),
                        self.n
                    )));
                }
                Some(
                    p.iter()
                        .map(|s| parse_rat(s).map_err(VarietyError::Parse))
                        .collect::<Result<Vec<Rat>, _>>()?,
                )
            }
        };
        Ok((v, point))
    }
}

// ---------------------------------------------------------------------------
// Adapted charts
// ---------------------------------------------------------------------------

/// Graph-form chart at a marked smooth point: the point sits at
/// `[1,0,...,0]`, the embedded tangent is `{x^mu = 0}`, and the variety is
/// locally `x^mu = f^mu(t)` with `f` vanishing to second order.
#[derive(Clone, Debug)]
pub struct AdaptedChart {
    pub n: usize,
    pub a: usize,
    /// Graph jets f^mu, mu = 1..a, in t1..tn.
    pub f: Vec<Jet>,
    pub cap: u32,
    /// Columns are the adapted basis vectors: original coords = M * adapted.
    pub change_of_coords: MatQ,
    /// Exact polynomial coordinates in the adapted basis (not truncated),
    /// with the marked point at t = 0.
    pub adapted_coords: Vec<MPoly>,
    /// Max total degree of the source coordinates (stabilization threshold).
    pub coord_degree: u32,
}

/// Extracts graph jets from adapted polynomial coordinates: requires
/// y(0) = e_0, dy^mu(0) = 0 and du^alpha(0) = id after dividing by y^0.
fn graph_jets(y: &[MPoly], n: usize, a: usize, cap: u32) -> Result<Vec<Jet>, VarietyError> {
    let y0 = Jet::new(y[0].clone(), cap);
    if !y0.constant_term().is_one() {
        return Err(VarietyError::BadShape("chart coordinate y0(0) != 1".into()));
    }
    let inv0 = y0.inverse_unit().expect("unit constant term");
    let unit_div = y[0] == MPoly::one(n);
    let u: Vec<Jet> = (1..n + a + 1)
        .map(|b| {
            let j = Jet::new(y[b].clone(), cap);
            if unit_div {
                j
            } else {
                j.mul(&inv0)
            }
        })
        .collect();
    // Invert the tangent part t -> u^alpha(t).
    let identity = (0..n).all(|al| u[al].base() == &MPoly::var(n, al));
    let s_of_t: Vec<Jet> = if identity {
        (0..n).map(|i| Jet::variable(n, i, cap)).collect()
    } else {
        // u^alpha(s) = s^alpha + h^alpha(s), h of order >= 2; iterate
        // s = t - h(s) which gains one order per pass.
        let h: Vec<MPoly> = (0..n)
            .map(|al| u[al].base().sub(&MPoly::var(n, al)))
            .collect();
        if h.iter().any(|p| !p.is_zero() && p.min_degree() < 2) {
            return Err(VarietyError::BadShape(
                "tangent chart is not normalized to first order".into(),
            ));
        }
        let mut s: Vec<Jet> = (0..n).map(|i| Jet::variable(n, i, cap)).collect();
        for _ in 0..cap {
            let mut next = Vec::with_capacity(n);
            for al in 0..n {
                let h_at_s = jet_compose(&h[al], &s, cap);
                next.push(Jet::variable(n, al, cap).sub(&h_at_s));
            }
            if next == s {
                break;
            }
            s = next;
        }
        s
    };
    let f: Vec<Jet> = (0..a)
        .map(|mu| {
            if identity {
                u[n + mu].clone()
            } else {
                jet_compose(u[n + mu].base(), &s_of_t, cap)
            }
        })
        .collect();
    for (mu, fj) in f.iter().enumerate() {
        if !fj.is_zero() && fj.base().min_degree() < 2 {
            return Err(VarietyError::BadShape(format!(
                "graph function f^{} fails to vanish to second order",
                mu + 1
            )));
        }
    }
    Ok(f)
}

/// Adapts coordinates at the parameter point `t0`: translates `t0` to the
/// origin, moves the image point to `[1,0,...,0]` and the embedded tangent to
/// the span of the first n+1 coordinates, and solves the graph form.
pub fn adapt_at_point(
    v: &ParamVariety,
    t0: &[Rat],
    cap: u32,
) -> Result<AdaptedChart, VarietyError> {
    assert_eq!(t0.len(), v.n);
    let (n, a) = (v.n, v.a);
    let dim = n + a + 1;
    // Translate the parameters.
    let shifted: Vec<MPoly> = {
        let args: Vec<MPoly> = (0..n)
            .map(|i| MPoly::var(n, i).add(&MPoly::constant(n, t0[i].clone())))
            .collect();
        if t0.iter().all(|c| c.is_zero()) {
            v.coords.clone()
        } else {
            v.coords.iter().map(|c| c.subst(&args)).collect()
        }
    };
    let zero_args = vec![Rat::zero(); n];
    let p: Vec<Rat> = shifted.iter().map(|c| c.eval(&zero_args)).collect();
    if p.iter().all(|x| x.is_zero()) {
        return Err(VarietyError::PointNotOnChart);
    }
    // Jacobian columns.
    let jac: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            shifted
                .iter()
                .map(|c| c.partial(i).eval(&zero_args))
                .collect()
        })
        .collect();
    // Assemble the adapted basis: point, tangent columns, greedy completion.
    let mut cols: Vec<Vec<Rat>> = vec![p.clone()];
    cols.extend(jac.iter().cloned());
    {
        let mut ech = Echelon::new(dim);
        for c in &cols {
            ech.insert_rat(c);
        }
        if ech.rank() != n + 1 {
            return Err(VarietyError::SingularPoint {
                got: ech.rank().saturating_sub(1),
                need: n,
            });
        }
        for k in 0..dim {
            if cols.len() == dim {
                break;
            }
            let mut e = vec![Rat::zero(); dim];
            e[k] = Rat::one();
            if ech.insert_rat(&e) {
                cols.push(e);
            }
        }
    }
    let mut m = MatQ::zero(dim, dim);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..dim {
            *m.at_mut(i, j) = c[i].clone();
        }
    }
    let minv = m.inverse().expect("basis is invertible");
    // Already-adapted fast path: coords = [1, t^alpha, higher].
    let already = m == MatQ::identity(dim);
    let adapted_coords: Vec<MPoly> = if already {
        shifted.clone()
    } else {
        (0..dim)
            .map(|i| {
                let mut acc = MPoly::zero(n);
                for k in 0..dim {
                    let c = minv.at(i, k);
                    if !c.is_zero() {
                        acc = acc.add(&shifted[k].scale(c));
                    }
                }
                acc
            })
            .collect()
    };
    let f = graph_jets(&adapted_coords, n, a, cap)?;
    Ok(AdaptedChart {
        n,
        a,
        f,
        cap,
        change_of_coords: m,
        adapted_coords,
        coord_degree: v.coord_degree(),
    })
}

impl AdaptedChart {
    /// Transforms a degree-d form in the original coordinates into the
    /// adapted coordinates (substitutes x = M y).
    pub fn to_adapted_form(&self, p: &MPoly) -> MPoly {
        let dim = self.n + self.a + 1;
        assert_eq!(p.nvars(), dim);
        if self.change_of_coords == MatQ::identity(dim) {
            return p.clone();
        }
        let lin: Vec<Vec<Rat>> = (0..dim)
            .map(|i| (0..dim).map(|j| self.change_of_coords.at(i, j).clone()).collect())
            .collect();
        p.subst_linear(&lin)
    }

    /// Exact pullback of a form in adapted coordinates along the chart.
    pub fn pullback_adapted(&self, p: &MPoly) -> MPoly {
        p.subst(&self.adapted_coords)
    }
}

// ---------------------------------------------------------------------------
// Fundamental data
// ---------------------------------------------------------------------------

/// Taylor data of the graph chart: II and the higher variations, stored as
/// homogeneous polynomial forms on the tangent space (one per normal
/// direction). Symmetric-array entries come from `SymForm::sym_array_entry`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundData {
    pub n: usize,
    pub a: usize,
    pub q: Vec<SymForm>,
    pub r3: Vec<SymForm>,
    pub r4: Vec<SymForm>,
    /// Invalidated (absent) after a frame action.
    pub r5: Option<Vec<SymForm>>,
}

pub fn fundamental_data(c: &AdaptedChart) -> Result<FundData, VarietyError> {
    if c.cap < 5 {
        return Err(VarietyError::CapTooSmall {
            need: 5,
            have: c.cap,
        });
    }
    let part = |k: u32| -> Vec<SymForm> {
        c.f.iter()
            .map(|j| SymForm::from_poly_in(&j.base().homogeneous_part(k), c.n, k))
            .collect()
    };
    Ok(FundData {
        n: c.n,
        a: c.a,
        q: part(2),
        r3: part(3),
        r4: part(4),
        r5: Some(part(5)),
    })
}

/// Degree-2 Taylor forms only (works for any cap >= 2).
pub fn second_fundamental_forms(c: &AdaptedChart) -> Vec<SymForm> {
    c.f.iter()
        .map(|j| SymForm::from_poly_in(&j.base().homogeneous_part(2), c.n, 2))
        .collect()
}

/// Basis of |III|: the span of the cubic Taylor parts in the normal
/// directions not already reached by II. Directions are normalized by row
/// reduction of the II coefficient matrix; for a combination with zero
/// quadratic part the cubic part is frame-invariant.
pub fn third_fundamental_form(c: &AdaptedChart) -> Result<Vec<SymForm>, VarietyError> {
    if c.cap < 3 {
        return Err(VarietyError::CapTooSmall {
            need: 3,
            have: c.cap,
        });
    }
    let (n, a) = (c.n, c.a);
    let q = second_fundamental_forms(c);
    let d2 = q.first().map(|f| f.space.dim()).unwrap_or(0);
    // Rows [q-coefficients | identity] reduced: rows with zero q-part give the
    // normal combinations lambda with lambda . q = 0.
    let mut ech = Echelon::new(d2 + a);
    for (mu, qf) in q.iter().enumerate() {
        let mut row = qf.coeffs.clone();
        row.extend((0..a).map(|j| if j == mu { Rat::one() } else { Rat::zero() }));
        ech.insert_rat(&row);
    }
    let rref = ech.into_rref();
    let mut cubics: Vec<SymForm> = Vec::new();
    for row in &rref {
        if row[..d2].iter().any(|x| !x.is_zero()) {
            continue;
        }
        let lambda = &row[d2..];
        let mut acc = MPoly::zero(n);
        for (mu, l) in lambda.iter().enumerate() {
            if !l.is_zero() {
                acc = acc.add(&c.f[mu].base().homogeneous_part(3).scale(l));
            }
        }
        if !acc.is_zero() {
            cubics.push(SymForm::from_poly_in(&acc, n, 3));
        }
    }
    Ok(crate::tensor::form_span_basis(&cubics))
}

/// Builds a polynomial graph variety [1, t, f(t)] from Taylor data.
pub fn graph_variety_from_data(d: &FundData, label: &str) -> ParamVariety {
    let (n, a) = (d.n, d.a);
    let mut coords = vec![MPoly::one(n)];
    for i in 0..n {
        coords.push(MPoly::var(n, i));
    }
    for mu in 0..a {
        let mut f = d.q[mu].to_poly().add(&d.r3[mu].to_poly()).add(&d.r4[mu].to_poly());
        if let Some(r5) = &d.r5 {
            f = f.add(&r5[mu].to_poly());
        }
        coords.push(f);
    }
    ParamVariety::new(n, a, coords, label).expect("well-formed graph")
}

/// Frame-fiber action: moves the tangent frame by `A_alpha += g0_alpha A_0`
/// and the normal frame by `A_mu += sum_alpha g1[alpha][mu] A_alpha`, then
/// re-reads the Taylor data in the moved frame. q is unchanged, r3 and r4
/// transform, and r5 is invalidated.
pub fn frame_action(d: &FundData, g0: &[Rat], g1: &[Vec<Rat>]) -> FundData {
    let (n, a) = (d.n, d.a);
    assert_eq!(g0.len(), n);
    assert_eq!(g1.len(), n);
    assert!(g1.iter().all(|r| r.len() == a));
    let dim = n + a + 1;
    // Columns of the frame matrix.
    let mut m = MatQ::identity(dim);
    for al in 0..n {
        *m.at_mut(0, 1 + al) = g0[al].clone();
    }
    for mu in 0..a {
        for al in 0..n {
            *m.at_mut(1 + al, 1 + n + mu) = g1[al][mu].clone();
        }
    }
    let minv = m.inverse().expect("unipotent frame motion");
    let graph = graph_variety_from_data(d, "frame-moved");
    let moved: Vec<MPoly> = (0..dim)
        .map(|i| {
            let mut acc = MPoly::zero(n);
            for k in 0..dim {
                let c = minv.at(i, k);
                if !c.is_zero() {
                    acc = acc.add(&graph.coords[k].scale(c));
                }
            }
            acc
        })
        .collect();
    let cap = 4; // r5 is not propagated
    let f = graph_jets(&moved, n, a, cap).expect("frame motion preserves adaptation");
    let part = |k: u32| -> Vec<SymForm> {
        f.iter()
            .map(|j| SymForm::from_poly_in(&j.base().homogeneous_part(k), n, k))
            .collect()
    };
    FundData {
        n,
        a,
        q: part(2),
        r3: part(3),
        r4: part(4),
        r5: None,
    }
}

// ---------------------------------------------------------------------------
// Degree-d coefficient spaces and pullbacks
// ---------------------------------------------------------------------------

/// The monomial basis of degree-d forms on a (nvars)-dimensional space.
#[derive(Clone, Debug)]
pub struct DegSpace {
    pub nvars: usize,
    pub d: u32,
    pub exps: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl DegSpace {
    pub fn new(nvars: usize, d: u32) -> Self {
        let exps = exps_of_degree(nvars, d);
        let index = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        DegSpace {
            nvars,
            d,
            exps,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn vec_to_mpoly(&self, v: &[Rat]) -> MPoly {
        let mut p = MPoly::zero(self.nvars);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(self.exps[i].clone(), c.clone());
            }
        }
        p
    }

    pub fn mpoly_to_vec(&self, p: &MPoly) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        for (e, c) in p.terms() {
            let i = self.index_of(e).expect("degree-d monomial");
            v[i] = c.clone();
        }
        v
    }
}

/// Pullbacks of every degree-d monomial along the coordinate map, optionally
/// truncated at total parameter degree `cap`.
pub fn monomial_pullbacks(coords: &[MPoly], space: &DegSpace, cap: Option<u32>) -> Vec<MPoly> {
    let nv = coords[0].nvars();
    let mut pows: Vec<Vec<MPoly>> = coords
        .iter()
        .map(|c| vec![MPoly::one(nv), c.clone()])
        .collect();
    space
        .exps
        .iter()
        .map(|e| {
            let mut acc = MPoly::one(nv);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while pows[i].len() <= k as usize {
                    let next = pows[i].last().unwrap().mul_capped(&coords[i], cap);
                    pows[i].push(next);
                }
                acc = acc.mul_capped(&pows[i][k as usize], cap);
                if acc.is_zero() {
                    break;
                }
            }
            acc
        })
        .collect()
}

/// Kernel of the linear map sending a degree-d form to its pullback, where
/// each column is a parameter-space polynomial. Extra linear functionals can
/// be appended as synthetic rows (e.g. "coefficient of x^mu x0^(d-1) is 0").
pub fn pullback_kernel(
    pullbacks: &[MPoly],
    extra_rows: &[Vec<Rat>],
) -> Vec<Vec<Rat>> {
    let ncols = pullbacks.len();
    let mut row_ids: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(ncols);
    for p in pullbacks {
        let mut entries = Vec::with_capacity(p.num_terms());
        for (e, c) in p.terms() {
            let next = row_ids.len();
            let id = *row_ids.entry(e.clone()).or_insert(next);
            entries.push((id, c.clone()));
        }
        cols.push(entries);
    }
    let base = row_ids.len();
    for (k, row) in extra_rows.iter().enumerate() {
        assert_eq!(row.len(), ncols);
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                cols[j].push((base + k, c.clone()));
            }
        }
    }
    let mut basis = sparse_kernel(&SparseMat {
        ncols,
        col_entries: cols,
    });
    // Sign-normalize: first nonzero coefficient positive.
    for v in &mut basis {
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first < &Rat::zero() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    basis
}

// ---------------------------------------------------------------------------
// Ideal oracle
// ---------------------------------------------------------------------------

/// Exact basis of I_d: all degree-d forms whose full pullback vanishes
/// identically. Deterministic canonical basis.
pub fn ideal_slice(v: &ParamVariety, d: u32) -> Vec<MPoly> {
    let space = DegSpace::new(v.ambient_dim(), d);
    let pullbacks = monomial_pullbacks(&v.coords, &space, None);
    pullback_kernel(&pullbacks, &[])
        .into_iter()
        .map(|vec| space.vec_to_mpoly(&vec))
        .collect()
}

/// Span of `I_{d-1} o V*` inside S^d V* (the forms trivially containing the
/// variety), as coefficient vectors.
pub fn trivial_slice(v: &ParamVariety, prev: &[MPoly], space: &DegSpace) -> Vec<Vec<Rat>> {
    let dim = v.ambient_dim();
    let mut vecs = Vec::new();
    for p in prev {
        for b in 0..dim {
            let q = p.mul(&MPoly::var(dim, b));
            vecs.push(space.mpoly_to_vec(&q));
        }
    }
    span_basis(&vecs, space.dim())
}

// ---------------------------------------------------------------------------
// Conormal differentials, filtration, CI verdict
// ---------------------------------------------------------------------------

/// The differential dP at the marked point, projected to the conormal: in
/// adapted coordinates these are the coefficients of x^mu (x^0)^(k-1).
pub fn conormal_differential(chart: &AdaptedChart, p_original: &MPoly, k: u32) -> Vec<Rat> {
    let (n, a) = (chart.n, chart.a);
    let ad = chart.to_adapted_form(p_original);
    (0..a)
        .map(|mu| {
            let mut e = vec![0u32; n + a + 1];
            e[0] = k - 1;
            e[1 + n + mu] = 1;
            ad.coeff(&e)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub degree_bound: u32,
    /// dim N*_k for k = 1..D.
    pub conormal_dims: Vec<usize>,
    /// (jump degree, increment) pairs.
    pub jumps: Vec<(u32, usize)>,
    pub exhausted: bool,
}

/// The natural filtration of the conormal space: N*_k spanned by the
/// differentials of degree-k ideal elements, for k = 1..D.
pub fn conormal_filtration(
    v: &ParamVariety,
    t0: &[Rat],
    degree_bound: u32,
) -> Result<FiltrationReport, VarietyError> {
    let chart = adapt_at_point(v, t0, 2)?;
    let a = v.a;
    let mut dims = Vec::new();
    let mut jumps = Vec::new();
    let mut cumulative: Vec<Vec<Rat>> = Vec::new();
    let mut prev_dim = 0usize;
    for k in 1..=degree_bound {
        for p in ideal_slice(v, k) {
            cumulative.push(conormal_differential(&chart, &p, k));
        }
        let dim = span_dim(&cumulative, a);
        if dim > prev_dim {
            jumps.push((k, dim - prev_dim));
        }
        dims.push(dim);
        prev_dim = dim;
    }
    Ok(FiltrationReport {
        degree_bound,
        conormal_dims: dims.clone(),
        jumps,
        exhausted: prev_dim == a,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CiDegreeRow {
    pub degree: u32,
    pub dim_ideal: usize,
    pub dim_trivial: usize,
    pub dim_essential: usize,
    pub map_injective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CiReport {
    pub label: String,
    pub degree_bound: u32,
    pub degenerate: bool,
    pub rows: Vec<CiDegreeRow>,
    pub filtration: FiltrationReport,
    /// True iff every degree map is injective and the conormal fills up.
    pub complete_intersection_up_to_bound: bool,
}

/// Local complete-intersection criterion, degree by degree: in each degree k
/// the map [d]_k : I_k/(I_{k-1} o V*) -> N*/d(I_{k-1} o V*) must be
/// injective, and the differentials must span the conormal by degree D.
pub fn ci_verdict(
    v: &ParamVariety,
    t0: &[Rat],
    degree_bound: u32,
) -> Result<CiReport, VarietyError> {
    let chart = adapt_at_point(v, t0, 2)?;
    let a = v.a;
    let dim = v.ambient_dim();
    let mut rows = Vec::new();
    let mut all_injective = true;
    let mut prev_basis: Vec<MPoly> = Vec::new();
    let degenerate = !ideal_slice(v, 1).is_empty();
    for k in 1..=degree_bound {
        let space = DegSpace::new(dim, k);
        let ik = ideal_slice(v, k);
        let trivial = trivial_slice(v, &prev_basis, &space);
        let dim_ik = ik.len();
        let dim_trivial = trivial.len();
        // Differentials of the trivial subspace.
        let d_trivial: Vec<Vec<Rat>> = trivial
            .iter()
            .map(|w| conormal_differential(&chart, &space.vec_to_mpoly(w), k))
            .collect();
        let n1 = span_basis(&d_trivial, a);
        // Functionals vanishing on N1: phi(dP) = 0 characterizes dP in N1.
        let funcs = annihilator(&n1, a);
        // Map I_k -> Q^(#funcs); kernel = {P : dP in N1}.
        let mut mat = MatQ::zero(funcs.len(), dim_ik);
        let diffs: Vec<Vec<Rat>> = ik
            .iter()
            .map(|p| conormal_differential(&chart, p, k))
            .collect();
        for (r, phi) in funcs.iter().enumerate() {
            for (c, dp) in diffs.iter().enumerate() {
                let mut acc = Rat::zero();
                for i in 0..a {
                    if !phi[i].is_zero() && !dp[i].is_zero() {
                        acc += phi[i].clone() * dp[i].clone();
                    }
                }
                *mat.at_mut(r, c) = acc;
            }
        }
        let kernel_combos = mat.kernel();
        // Injective iff every such combination is already trivial.
        let mut injective = true;
        let mut witness = None;
        for combo in &kernel_combos {
            let mut vec = vec![Rat::zero(); space.dim()];
            for (i, c) in combo.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let iv = space.mpoly_to_vec(&ik[i]);
                for (j, x) in iv.iter().enumerate() {
                    if !x.is_zero() {
                        vec[j] += c.clone() * x.clone();
                    }
                }
            }
            if !crate::linalg::in_span(&trivial, &vec) {
                injective = false;
                witness = Some(space.vec_to_mpoly(&vec).to_string_style(VarStyle::X));
                break;
            }
        }
        all_injective &= injective;
        rows.push(CiDegreeRow {
            degree: k,
            dim_ideal: dim_ik,
            dim_trivial,
            dim_essential: dim_ik - dim_trivial,
            map_injective: injective,
            witness,
        });
        prev_basis = ik;
    }
    let filtration = conormal_filtration(v, t0, degree_bound)?;
    let verdict = all_injective && filtration.exhausted;
    Ok(CiReport {
        label: v.label.clone(),
        degree_bound,
        degenerate,
        rows,
        filtration,
        complete_intersection_up_to_bound: verdict,
    })
}

// ---------------------------------------------------------------------------

/// Convenience: check that a degree-d form vanishes identically on the
/// variety (exact ideal membership).
pub fn is_in_ideal(v: &ParamVariety, p: &MPoly) -> bool {
    p.subst(&v.coords).is_zero()
}
