//! Ground-truth fixtures: rational normal curves, Veronese and Segre
//! embeddings, Grassmannians of planes, the ten-dimensional spinor variety,
//! the Severi varieties over split composition algebras, and the worked
//! graph examples. Each entry carries expected data that the oracles verify.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::compalg::CompAlgebra;
use crate::mpoly::MPoly;
use crate::quadsys::{variety_from_quadrics, QuadricSystem};
use crate::rat::{rat, Rat};
use crate::rng::SplitMix64;
use crate::tensor::SymForm;
use crate::variety::ParamVariety;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub variety: ParamVariety,
    /// Marked point used by default (the chart origin).
    pub point: Vec<Rat>,
    pub expected_dim_i2: Option<usize>,
    pub iii_zero: bool,
    /// Linear-syzygy count of |II| where known exactly.
    pub expected_bracket_dim: Option<usize>,
    pub notes: &'static str,
}

fn entry(
    name: &str,
    variety: ParamVariety,
    expected_dim_i2: Option<usize>,
    iii_zero: bool,
    expected_bracket_dim: Option<usize>,
    notes: &'static str,
) -> CatalogEntry {
    let point = vec![Rat::zero(); variety.n];
    CatalogEntry {
        name: name.to_string(),
        variety,
        point,
        expected_dim_i2,
        iii_zero,
        expected_bracket_dim,
        notes,
    }
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

pub fn plane_conic() -> ParamVariety {
    let t = MPoly::var(1, 0);
    ParamVariety::new(1, 1, vec![MPoly::one(1), t.clone(), t.pow(2)], "conic").unwrap()
}

pub fn plane_cubic() -> ParamVariety {
    let t = MPoly::var(1, 0);
    ParamVariety::new(1, 1, vec![MPoly::one(1), t.clone(), t.pow(3)], "plane-cubic").unwrap()
}

pub fn twisted_cubic() -> ParamVariety {
    let t = MPoly::var(1, 0);
    ParamVariety::new(
        1,
        2,
        vec![MPoly::one(1), t.clone(), t.pow(2), t.pow(3)],
        "twisted-cubic",
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Veronese, Segre, Grassmannian
// ---------------------------------------------------------------------------

/// v_2(P^n) in P(S^2 W): coordinates all monomials of degree <= 2 in t.
pub fn veronese(n: usize) -> ParamVariety {
    assert!(n >= 1);
    let mut coords = vec![MPoly::one(n)];
    for i in 0..n {
        coords.push(MPoly::var(n, i));
    }
    for i in 0..n {
        for j in i..n {
            coords.push(MPoly::var(n, i).mul(&MPoly::var(n, j)));
        }
    }
    let a = coords.len() - 1 - n;
    ParamVariety::new(n, a, coords, &format!("veronese-{n}")).unwrap()
}

/// P^m x P^n in P^(mn+m+n): coordinates [1, u, v, u v].
pub fn segre(m: usize, n: usize) -> ParamVariety {
    assert!(m >= 1 && n >= 1);
    let nv = m + n;
    let mut coords = vec![MPoly::one(nv)];
    for i in 0..m {
        coords.push(MPoly::var(nv, i));
    }
    for j in 0..n {
        coords.push(MPoly::var(nv, m + j));
    }
    for i in 0..m {
        for j in 0..n {
            coords.push(MPoly::var(nv, i).mul(&MPoly::var(nv, m + j)));
        }
    }
    ParamVariety::new(nv, m * n, coords, &format!("segre-{m}-{n}")).unwrap()
}

/// G(2, m) by Pluecker coordinates of [I_2 | T], minors in lexicographic
/// column-pair order.
pub fn grass2(m: usize) -> ParamVariety {
    assert!(m >= 4);
    let cols = m - 2;
    let nv = 2 * cols;
    // t[0..cols] = first row, t[cols..2cols] = second row.
    let entry = |r: usize, c: usize| -> MPoly {
        // columns 0,1 are the identity block
        match (r, c) {
            (0, 0) | (1, 1) => MPoly::one(nv),
            (_, 0) | (_, 1) => MPoly::zero(nv),
            (0, c) => MPoly::var(nv, c - 2),
            (1, c) => MPoly::var(nv, cols + c - 2),
            _ => unreachable!(),
        }
    };
    let mut coords = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let p = entry(0, i).mul(&entry(1, j)).sub(&entry(1, i).mul(&entry(0, j)));
            coords.push(p);
        }
    }
    let a = coords.len() - 1 - nv;
    ParamVariety::new(nv, a, coords, &format!("grass2-{m}")).unwrap()
}

// ---------------------------------------------------------------------------
// Spinor variety S^10 in P^15
// ---------------------------------------------------------------------------

/// Lexicographic pairs (i, j), 1 <= i < j <= 5.
fn spinor_pairs() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=5 {
        for j in (i + 1)..=5 {
            v.push((i, j));
        }
    }
    v
}

/// Standard sub-Pfaffian of the skew matrix on the complement of k, in the
/// ten parameters t_{ij} (lex order): pf_k = t_ab t_cd - t_ac t_bd + t_ad t_bc
/// with {a<b<c<d} = {1..5} minus {k}.
fn sub_pfaffian(k: usize) -> MPoly {
    let pairs = spinor_pairs();
    let pidx = |i: usize, j: usize| pairs.iter().position(|&(a, b)| (a, b) == (i, j)).unwrap();
    let comp: Vec<usize> = (1..=5).filter(|&i| i != k).collect();
    let (a, b, c, d) = (comp[0], comp[1], comp[2], comp[3]);
    let term = |p: usize, q: usize, r: usize, s: usize, sgn: i64| {
        MPoly::var(10, pidx(p, q))
            .mul(&MPoly::var(10, pidx(r, s)))
            .scale(&rat(sgn))
    };
    term(a, b, c, d, 1)
        .add(&term(a, c, b, d, -1))
        .add(&term(a, d, b, c, 1))
}

/// The ten spinor quadrics in the 16 coordinates [x0, x^{ij} lex,
/// x^1..x^5]: five Pfaffian rows x^k x^0 - (-1)^k pf_k and five syzygy rows
/// sum_j x^{ij} x^j with alternating signs. The sign convention is the
/// unique one (up to coordinate rescaling) under which both families vanish
/// on the parametrization.
pub fn spinor_equations() -> Vec<MPoly> {
    let pairs = spinor_pairs();
    let pidx = |i: usize, j: usize| -> usize {
        1 + pairs.iter().position(|&(a, b)| (a, b) == (i.min(j), j.max(i))).unwrap()
    };
    let xidx = |i: usize| -> usize { 11 + (i - 1) };
    let nv = 16usize;
    let term2 = |a: usize, b: usize, s: i64| -> MPoly {
        MPoly::var(nv, a).mul(&MPoly::var(nv, b)).scale(&rat(s))
    };
    let mut eqs = Vec::new();
    for k in (1..=5).rev() {
        // x^k x^0 - (-1)^k (x^{ab}x^{cd} - x^{ac}x^{bd} + x^{ad}x^{bc})
        let comp: Vec<usize> = (1..=5).filter(|&i| i != k).collect();
        let (a, b, c, d) = (comp[0], comp[1], comp[2], comp[3]);
        let sgn = if k % 2 == 0 { 1 } else { -1 };
        let p = term2(xidx(k), 0, 1)
            .add(&term2(pidx(a, b), pidx(c, d), -sgn))
            .add(&term2(pidx(a, c), pidx(b, d), sgn))
            .add(&term2(pidx(a, d), pidx(b, c), -sgn));
        eqs.push(p);
    }
    let syz_rows: [[(usize, usize, usize, i64); 4]; 5] = [
        [(1, 5, 5, 1), (1, 4, 4, 1), (1, 3, 3, 1), (1, 2, 2, 1)],
        [(2, 5, 5, 1), (2, 4, 4, 1), (2, 3, 3, 1), (1, 2, 1, -1)],
        [(3, 5, 5, 1), (3, 4, 4, 1), (2, 3, 2, -1), (1, 3, 1, -1)],
        [(4, 5, 5, 1), (3, 4, 3, -1), (2, 4, 2, -1), (1, 4, 1, -1)],
        [(4, 5, 4, 1), (3, 5, 3, 1), (2, 5, 2, 1), (1, 5, 1, 1)],
    ];
    for row in syz_rows {
        let mut p = MPoly::zero(nv);
        for (i, j, k, s) in row {
            p = p.add(&term2(pidx(i, j), xidx(k), s));
        }
        eqs.push(p);
    }
    eqs
}

/// The ten-dimensional spinor variety in P^15: parameters the skew matrix
/// entries t_{ij}, Pfaffian coordinates x^k = (-1)^k pf_k. This is the sign
/// convention under which all five listed syzygy quadrics hold verbatim.
pub fn spinor10() -> ParamVariety {
    static COORDS: OnceLock<Vec<MPoly>> = OnceLock::new();
    let coords = COORDS.get_or_init(|| {
        let nv = 10usize;
        let mut coords = vec![MPoly::one(nv)];
        for k in 0..10 {
            coords.push(MPoly::var(nv, k));
        }
        for k in 1..=5 {
            let sgn = if k % 2 == 0 { 1 } else { -1 };
            coords.push(sub_pfaffian(k).scale(&rat(sgn)));
        }
        coords
    });
    ParamVariety::new(10, 5, coords.clone(), "spinor10").unwrap()
}

// ---------------------------------------------------------------------------
// Severi varieties
// ---------------------------------------------------------------------------

/// Rank-one locus of 3x3 Hermitian matrices over a composition algebra:
/// parameters (u, v) in A^2, coordinates [1, u, v, N(u), N(v), conj(u) v].
pub fn severi(alg: &CompAlgebra) -> ParamVariety {
    let d = alg.dim;
    let nv = 2 * d;
    let u: Vec<MPoly> = (0..d).map(|i| MPoly::var(nv, i)).collect();
    let v: Vec<MPoly> = (0..d).map(|i| MPoly::var(nv, d + i)).collect();
    let mut coords = vec![MPoly::one(nv)];
    coords.extend(u.iter().cloned());
    coords.extend(v.iter().cloned());
    coords.push(alg.norm_vec(&u));
    coords.push(alg.norm_vec(&v));
    let ubar_v = alg.mul_vec(&alg.conj_vec(&u), &v);
    coords.extend(ubar_v);
    let a = d + 2;
    ParamVariety::new(nv, a, coords, &format!("severi-{d}")).unwrap()
}

/// The 2x2 minor equations of the rank-one Hermitian matrix, as quadrics in
/// the ambient coordinates of `severi`. Every component must pull back to
/// zero exactly; this exercises the composition-algebra identities.
pub fn severi_equations(alg: &CompAlgebra) -> Vec<MPoly> {
    let d = alg.dim;
    let nv = 3 * d + 3;
    let scalar = |idx: usize| -> Vec<MPoly> {
        let mut e = vec![MPoly::zero(nv); d];
        e[0] = MPoly::var(nv, idx);
        e
    };
    let element = |start: usize| -> Vec<MPoly> {
        (0..d).map(|i| MPoly::var(nv, start + i)).collect()
    };
    let r1 = scalar(0);
    let u1 = element(1);
    let u2 = element(1 + d);
    let r2 = scalar(2 * d + 1);
    let r3 = scalar(2 * d + 2);
    let u3 = element(2 * d + 3);
    let minors: Vec<Vec<MPoly>> = vec![
        // r1 r2 - u1 conj(u1)
        sub_vec(&alg.mul_vec(&r1, &r2), &alg.mul_vec(&u1, &alg.conj_vec(&u1))),
        // r1 r3 - u2 conj(u2)
        sub_vec(&alg.mul_vec(&r1, &r3), &alg.mul_vec(&u2, &alg.conj_vec(&u2))),
        // r1 u3 - conj(u1) u2
        sub_vec(&alg.mul_vec(&r1, &u3), &alg.mul_vec(&alg.conj_vec(&u1), &u2)),
        // r2 u2 - u1 u3
        sub_vec(&alg.mul_vec(&r2, &u2), &alg.mul_vec(&u1, &u3)),
        // r3 u1 - u2 conj(u3)
        sub_vec(&alg.mul_vec(&r3, &u1), &alg.mul_vec(&u2, &alg.conj_vec(&u3))),
        // r2 r3 - u3 conj(u3)
        sub_vec(&alg.mul_vec(&r2, &r3), &alg.mul_vec(&u3, &alg.conj_vec(&u3))),
    ];
    minors
        .into_iter()
        .flat_map(|m| m.into_iter().filter(|p| !p.is_zero()))
        .collect()
}

fn sub_vec(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

/// The six lacing quadrics on six variables whose graph variety carries one
/// essential cubic equation.
pub fn example_4_24_system() -> QuadricSystem {
    QuadricSystem::from_strings(
        6,
        &[
            "t1*t4", "t2*t5", "t3*t6", "t1*t5", "t2*t6", "t3*t4",
        ],
    )
    .unwrap()
}

pub fn example_4_24() -> ParamVariety {
    let mut v = variety_from_quadrics(&example_4_24_system(), "example-4-24");
    v.label = "example-4-24".into();
    v
}

/// Codimension-2 graph with a nonzero second-stage constant: f^{n+1} = sum
/// t^2, f^{n+2} = sum lambda t^2 + b (f^{n+1})^2. Exactly cut out by the two
/// displayed quadrics.
pub fn example_4_36(n: usize, lambda: &[Rat], b: &Rat) -> ParamVariety {
    assert_eq!(lambda.len(), n);
    let mut q1 = MPoly::zero(n);
    let mut q2 = MPoly::zero(n);
    for i in 0..n {
        q1 = q1.add(&MPoly::var(n, i).pow(2));
        q2 = q2.add(&MPoly::var(n, i).pow(2).scale(&lambda[i]));
    }
    let f2 = q2.add(&q1.mul(&q1).scale(b));
    let mut coords = vec![MPoly::one(n)];
    for i in 0..n {
        coords.push(MPoly::var(n, i));
    }
    coords.push(q1);
    coords.push(f2);
    ParamVariety::new(n, 2, coords, "example-4-36").unwrap()
}

pub fn example_4_36_default() -> ParamVariety {
    let lambda: Vec<Rat> = (1..=4).map(|i| rat(i)).collect();
    example_4_36(4, &lambda, &rat(1))
}

/// The two defining quadrics of `example_4_36`.
pub fn example_4_36_equations(n: usize, lambda: &[Rat], b: &Rat) -> Vec<MPoly> {
    let nv = n + 3;
    let mut g1 = MPoly::var(nv, 0).mul(&MPoly::var(nv, n + 1));
    let mut g2 = MPoly::var(nv, 0).mul(&MPoly::var(nv, n + 2));
    for i in 0..n {
        g1 = g1.sub(&MPoly::var(nv, 1 + i).pow(2));
        g2 = g2.sub(&MPoly::var(nv, 1 + i).pow(2).scale(&lambda[i]));
    }
    g2 = g2.sub(&MPoly::var(nv, n + 1).pow(2).scale(b));
    vec![g1, g2]
}

/// Random graph complete intersection with one generator per listed degree
/// (diagonal plus a small off-diagonal perturbation), seeded.
pub fn ci_random(n: usize, degrees: &[u32], seed: u64) -> ParamVariety {
    let mut rng = SplitMix64::new(seed);
    let mut coords = vec![MPoly::one(n)];
    for i in 0..n {
        coords.push(MPoly::var(n, i));
    }
    for &d in degrees {
        let mut g = MPoly::zero(n);
        for i in 0..n {
            let mut c = rng.range_i64(1, 4);
            if rng.next_u64() % 2 == 0 {
                c = -c;
            }
            g = g.add(&MPoly::var(n, i).pow(d).scale(&rat(c)));
        }
        // one mixed perturbation term
        if n >= 2 {
            let i = (rng.next_u64() % n as u64) as usize;
            let j = ((i + 1 + (rng.next_u64() % (n as u64 - 1)) as usize) % n).min(n - 1);
            let mut e = vec![0u32; n];
            e[i] += d - 1;
            e[j.max((i + 1) % n)] += 1;
            let mono = MPoly::monomial(n, e, rat(rng.range_i64(1, 3)));
            g = g.add(&mono);
        }
        coords.push(g);
    }
    ParamVariety::new(n, degrees.len(), coords, &format!("ci-random-{seed}")).unwrap()
}

/// Random quadric system of dimension a on n variables (seeded).
pub fn random_quadric_system(n: usize, a: usize, seed: u64) -> QuadricSystem {
    let mut rng = SplitMix64::new(seed);
    let exps = crate::mpoly::exps_of_degree(n, 2);
    loop {
        let gens: Vec<SymForm> = (0..a)
            .map(|_| {
                let mut p = MPoly::zero(n);
                for e in &exps {
                    p.add_term(e.clone(), rat(rng.range_i64(-3, 3)));
                }
                SymForm::from_poly_in(&p, n, 2)
            })
            .collect();
        let sys = QuadricSystem::new(n, gens);
        if sys.a() == a {
            return sys;
        }
    }
}

// ---------------------------------------------------------------------------
// The catalog index
// ---------------------------------------------------------------------------

pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "conic",
        "plane-cubic",
        "twisted-cubic",
        "veronese-1",
        "veronese-2",
        "veronese-3",
        "segre-1-1",
        "segre-1-2",
        "segre-2-2",
        "grass2-4",
        "grass2-5",
        "spinor10",
        "severi-1",
        "severi-2",
        "severi-4",
        "severi-8",
        "example-4-24",
        "example-4-36",
    ]
}

pub fn catalog_get(name: &str) -> Option<CatalogEntry> {
    let e = match name {
        "conic" => entry("conic", plane_conic(), Some(1), true, Some(0), ""),
        "plane-cubic" => entry("plane-cubic", plane_cubic(), Some(0), false, None, ""),
        "twisted-cubic" => entry("twisted-cubic", twisted_cubic(), Some(3), false, None, ""),
        "veronese-1" => entry("veronese-1", veronese(1), Some(1), true, Some(0), ""),
        "veronese-2" => entry(
            "veronese-2",
            veronese(2),
            Some(6),
            true,
            Some(2),
            "II is the full quadric system on the tangent plane",
        ),
        "veronese-3" => entry("veronese-3", veronese(3), Some(20), true, None, ""),
        "segre-1-1" => entry("segre-1-1", segre(1, 1), Some(1), true, Some(0), ""),
        "segre-1-2" => entry(
            "segre-1-2",
            segre(1, 2),
            Some(3),
            true,
            Some(1),
            "one linear syzygy from the base-locus point",
        ),
        "segre-2-2" => entry("segre-2-2", segre(2, 2), Some(9), true, None, ""),
        "grass2-4" => entry("grass2-4", grass2(4), Some(1), true, Some(0), ""),
        "grass2-5" => entry("grass2-5", grass2(5), Some(5), true, None, ""),
        "spinor10" => entry(
            "spinor10",
            spinor10(),
            Some(10),
            true,
            None,
            "sign table fixed by requiring the ten listed quadrics to vanish",
        ),
        "severi-1" => entry("severi-1", severi(&CompAlgebra::split(1)), Some(6), true, None, ""),
        "severi-2" => entry("severi-2", severi(&CompAlgebra::split(2)), Some(9), true, None, ""),
        "severi-4" => entry("severi-4", severi(&CompAlgebra::split(4)), Some(15), true, None, ""),
        "severi-8" => entry("severi-8", severi(&CompAlgebra::split(8)), Some(27), true, None, ""),
        "example-4-24" => entry(
            "example-4-24",
            example_4_24(),
            Some(12),
            true,
            Some(6),
            "six lacing quadrics plus their six syzygy quadrics span I_2; one essential cubic",
        ),
        "example-4-36" => entry("example-4-36", example_4_36_default(), Some(2), true, Some(0), ""),
        _ => return None,
    };
    Some(e)
}
