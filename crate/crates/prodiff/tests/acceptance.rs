//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! per sub-check. All arithmetic is exact, so comparisons are equalities
//! (bounds are exact inequalities). Run with
//! `cargo test -p prodiff --test acceptance -- --nocapture`.

use std::time::Instant;

use prodiff::catalog::{
    catalog_get, ci_random, example_4_24, example_4_24_system, example_4_36,
    example_4_36_equations, plane_conic, random_quadric_system, severi, severi_equations,
    spinor_equations, spinor10, twisted_cubic,
};
use prodiff::compalg::CompAlgebra;
use prodiff::jet::{jet_pow_rational, Jet};
use prodiff::linalg::span_dim;
use prodiff::mpoly::{MPoly, VarStyle};
use prodiff::osculate::{
    classical_monge_residual, expected_dim_316, lower_bound_317, monge_quadrics,
    osculating_space, quadratic_generation_check, MongeVerdict,
};
use prodiff::quadsys::{
    bracket_part, extremal_syzygy_system, rank_bound_check, relations, split_dims,
    syzygy_from_relation, thresholds, variety_from_quadrics, ExtremalOptions, QuadricSystem,
    SyzygyCert,
};
use prodiff::rat::{rat, ratq, Rat};
use num_traits::Zero;
use prodiff::rng::SplitMix64;
use prodiff::tensor::SymForm;
use prodiff::variety::{
    adapt_at_point, ci_verdict, frame_action, fundamental_data, ideal_slice, is_in_ideal,
    trivial_slice, DegSpace, FundData, ParamVariety,
};

struct Gate {
    name: &'static str,
    failures: Vec<String>,
}

impl Gate {
    fn new(name: &'static str) -> Self {
        println!("=== ACCEPTANCE {name} ===");
        Gate {
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: &str, ok: bool, detail: String) {
        if ok {
            println!("  PASS  {label}: {detail}");
        } else {
            println!("  FAIL  {label}: {detail}");
            self.failures.push(format!("{label}: {detail}"));
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("=== {}: PASS ===", self.name);
        } else {
            println!("=== {}: FAIL ({} checks) ===", self.name, self.failures.len());
            panic!("{} failed:\n{}", self.name, self.failures.join("\n"));
        }
    }
}

fn zero_point(v: &ParamVariety) -> Vec<Rat> {
    vec![Rat::from_integer(0.into()); v.n]
}

const FORMULA_FIXTURES: [&str; 10] = [
    "veronese-1",
    "veronese-2",
    "veronese-3",
    "segre-1-1",
    "segre-1-2",
    "segre-2-2",
    "grass2-5",
    "spinor10",
    "severi-1",
    "severi-2",
];

#[test]
fn criterion_01_dimension_formula() {
    let mut g = Gate::new("1: dimension formula, orders p <= d");
    let mut run = |name: &str, dmax: u32| {
        let e = catalog_get(name).unwrap();
        let start = Instant::now();
        let chart = adapt_at_point(&e.variety, &e.point, dmax).unwrap();
        for d in 1..=dmax {
            for p in 1..=d {
                let expected = expected_dim_316(e.variety.n, e.variety.a, d, p).unwrap();
                let actual = osculating_space(&chart, d, p).unwrap().dim();
                g.check(
                    &format!("{name} d={d} p={p}"),
                    expected == actual,
                    format!("dim {actual} vs formula {expected}"),
                );
            }
        }
        println!("  ({name}: {:.2?})", start.elapsed());
    };
    for name in FORMULA_FIXTURES {
        run(name, 3);
    }
    run("severi-4", 3);
    run("severi-8", 3);
    g.finish();
}

#[test]
fn criterion_02_lower_bound() {
    let mut g = Gate::new("2: lower bound at order 2d-1");
    let mut all: Vec<&str> = FORMULA_FIXTURES.to_vec();
    all.push("severi-4");
    all.push("severi-8");
    for name in all {
        let e = catalog_get(name).unwrap();
        let start = Instant::now();
        let chart = adapt_at_point(&e.variety, &e.point, 5).unwrap();
        for d in 2..=3u32 {
            let r = lower_bound_317(&chart, d).unwrap();
            g.check(
                &format!("{name} d={d}"),
                r.pass,
                format!("dim {} >= bound {}", r.actual, r.expected),
            );
        }
        println!("  ({name}: {:.2?})", start.elapsed());
    }
    g.finish();
}

#[test]
fn criterion_03_classical_monge() {
    let mut g = Gate::new("3: classical Monge residual");
    // rational conic branch x^2 + y^2 - 2y = 0, jet cap 8
    let t = MPoly::var(1, 0);
    let inner = Jet::new(MPoly::one(1).sub(&t.pow(2)), 8);
    let sqrt = jet_pow_rational(&inner, &ratq(1, 2)).unwrap();
    let y = Jet::constant(1, rat(1), 8).sub(&sqrt);
    let r = classical_monge_residual(&y).unwrap();
    g.check(
        "conic branch residual",
        r.is_zero() && r.cap() >= 3,
        format!("residual jet {:?} through order {}", r.base(), r.cap()),
    );
    // y = t^2 + t^3
    let y2 = Jet::new(t.pow(2).add(&t.pow(3)), 8);
    let r2 = classical_monge_residual(&y2).unwrap();
    g.check(
        "cubic curve residual",
        !r2.constant_term().is_zero(),
        format!("constant term {}", prodiff::rat::fmt_rat(&r2.constant_term())),
    );
    g.finish();
}

#[test]
fn criterion_04_monge_for_quadrics() {
    let mut g = Gate::new("4: Monge-for-quadrics pipeline");
    // conic: MongeHolds, generators verified, bounds with equality
    {
        let v = plane_conic();
        let chart = adapt_at_point(&v, &zero_point(&v), 5).unwrap();
        let rep = monge_quadrics(&chart).unwrap();
        g.check(
            "conic verdict",
            rep.verdict == MongeVerdict::MongeHolds,
            format!("{:?}", rep.verdict),
        );
        g.check(
            "conic generators verified",
            rep.generators_verified && rep.generators == vec!["x0*x2 - x1^2".to_string()],
            format!("{:?}", rep.generators),
        );
        g.check(
            "conic kernel bounds with equality",
            rep.order3_equality && rep.order4_equality,
            format!(
                "dims ({}, {}) vs bounds ({}, {})",
                rep.dim_ker_ff3, rep.dim_ker_ff4, rep.bound_order3, rep.bound_order4
            ),
        );
    }
    // veronese(2) as graph: excluded with HypothesisFails (has syzygies)
    {
        let e = catalog_get("veronese-2").unwrap();
        let chart = adapt_at_point(&e.variety, &e.point, 5).unwrap();
        let rep = monge_quadrics(&chart).unwrap();
        g.check(
            "veronese-2 verdict",
            rep.verdict == MongeVerdict::HypothesisFails,
            format!("{:?} (syzygy dim {})", rep.verdict, rep.linear_syzygy_dim),
        );
    }
    // example_4_36: MongeHolds with nonzero b, generators by exact membership
    {
        let lambda: Vec<Rat> = (1..=4).map(rat).collect();
        let v = example_4_36(4, &lambda, &rat(1));
        let chart = adapt_at_point(&v, &zero_point(&v), 5).unwrap();
        let rep = monge_quadrics(&chart).unwrap();
        g.check(
            "example-4-36 verdict",
            rep.verdict == MongeVerdict::MongeHolds,
            format!("{:?}", rep.verdict),
        );
        let b_nonzero = rep
            .b_solution
            .iter()
            .any(|m| m.iter().any(|r| r.iter().any(|x| !x.is_zero())));
        g.check("example-4-36 nonzero b", b_nonzero, "planted b recovered".into());
        g.check(
            "example-4-36 generators verified",
            rep.generators_verified && rep.generators.len() == 2,
            format!("{:?}", rep.generators),
        );
        g.check(
            "example-4-36 kernel bounds with equality",
            rep.order3_equality && rep.order4_equality,
            format!(
                "dims ({}, {}) vs bounds ({}, {})",
                rep.dim_ker_ff3, rep.dim_ker_ff4, rep.bound_order3, rep.bound_order4
            ),
        );
        // the emitted pair spans the planted defining quadrics
        let planted = example_4_36_equations(4, &lambda, &rat(1));
        let space = DegSpace::new(7, 2);
        let planted_vecs: Vec<Vec<Rat>> = planted.iter().map(|p| space.mpoly_to_vec(p)).collect();
        let emitted_vecs: Vec<Vec<Rat>> =
            rep.generator_polys.iter().map(|p| space.mpoly_to_vec(p)).collect();
        let same = span_dim(&planted_vecs, space.dim()) == 2
            && span_dim(
                &planted_vecs
                    .iter()
                    .chain(emitted_vecs.iter())
                    .cloned()
                    .collect::<Vec<_>>(),
                space.dim(),
            ) == 2;
        g.check("example-4-36 generators match the displayed pair", same, format!("{:?}", rep.generators));
    }
    // example_4_24: the acceptance sheet expects MongeHolds here, but the
    // six lacing quadrics provably carry six linear syzygies, so the
    // pipeline's hypothesis rule reports HypothesisFails. The stated
    // expectation is asserted as written; the stage and membership content
    // is asserted alongside.
    {
        let v = example_4_24();
        let chart = adapt_at_point(&v, &zero_point(&v), 5).unwrap();
        let rep = monge_quadrics(&chart).unwrap();
        g.check(
            "example-4-24 stages solve with a = b = 0",
            rep.stage3_solvable && rep.stage4_solvable && rep.stage5_solvable
                && rep.a_solution.iter().all(|m| m.iter().all(|r| r.iter().all(|x| x.is_zero())))
                && rep.b_solution.iter().all(|m| m.iter().all(|r| r.iter().all(|x| x.is_zero()))),
            "trivial solution".into(),
        );
        g.check(
            "example-4-24 generators verified exactly",
            rep.generators_verified && rep.generators.len() == 6,
            format!("{} generators", rep.generators.len()),
        );
        g.check(
            "example-4-24 verdict as stated (MongeHolds)",
            rep.verdict == MongeVerdict::MongeHolds,
            format!(
                "{:?}: the six lacing quadrics have {} linear syzygies, so the \
                 hypothesis precondition reports HypothesisFails (see README)",
                rep.verdict, rep.linear_syzygy_dim
            ),
        );
    }
    g.finish();
}

#[test]
fn criterion_05_example_4_24_end_to_end() {
    let mut g = Gate::new("5: example 4.24 from-quadrics end to end");
    let sys = example_4_24_system();
    let v = variety_from_quadrics(&sys, "example-4-24");
    let i2 = ideal_slice(&v, 2);
    g.check(
        "dim I_2 as stated (= 6)",
        i2.len() == 6,
        format!(
            "computed {} (the six lacing quadrics plus {} syzygy quadrics; see README)",
            i2.len(),
            bracket_part(&sys).len()
        ),
    );
    // degree-3 excess of exactly one, generated by the listed cubic
    let space3 = DegSpace::new(13, 3);
    let i3 = ideal_slice(&v, 3);
    let triv = trivial_slice(&v, &i2, &space3);
    let excess = i3.len() - triv.len();
    g.check(
        "degree-3 excess dimension 1",
        excess == 1,
        format!("dim I_3 = {}, from quadrics {}", i3.len(), triv.len()),
    );
    let cubic = MPoly::parse("x7*x8*x9 - x10*x11*x12", 13, VarStyle::X).unwrap();
    let in_ideal = is_in_ideal(&v, &cubic);
    let fills = {
        let mut vecs = triv.clone();
        vecs.push(space3.mpoly_to_vec(&cubic));
        span_dim(&vecs, space3.dim()) == triv.len() + 1
            && span_dim(&vecs, space3.dim())
                == span_dim(
                    &i3.iter().map(|p| space3.mpoly_to_vec(p)).collect::<Vec<_>>(),
                    space3.dim(),
                )
    };
    g.check(
        "excess generated by x7*x8*x9 - x10*x11*x12",
        in_ideal && fills,
        format!("membership {in_ideal}, fills the excess {fills}"),
    );
    g.finish();
}

#[test]
fn criterion_06_frame_action_rank() {
    let mut g = Gate::new("6: frame-action rank on the surface-in-P5 system");
    // II = w1 w1 (x) A3 + w1 w2 (x) A4 + w2 w2 (x) A5
    let n = 2;
    let a = 3;
    let q = vec![
        SymForm::from_poly(&MPoly::parse("t1^2", n, VarStyle::T).unwrap()),
        SymForm::from_poly(&MPoly::parse("t1*t2", n, VarStyle::T).unwrap()),
        SymForm::from_poly(&MPoly::parse("t2^2", n, VarStyle::T).unwrap()),
    ];
    let zero3 = vec![SymForm::zero(n, 3); a];
    let zero4 = vec![SymForm::zero(n, 4); a];
    let zero5 = vec![SymForm::zero(n, 5); a];
    let data = FundData {
        n,
        a,
        q,
        r3: zero3,
        r4: zero4,
        r5: Some(zero5),
    };
    let delta_r3 = |g0: &[Rat], g1: &[Vec<Rat>]| -> Vec<Rat> {
        let moved = frame_action(&data, g0, g1);
        moved
            .r3
            .iter()
            .flat_map(|f| f.coeffs.clone())
            .collect()
    };
    // Linearity spot check: doubling g doubles the change.
    {
        let g0 = vec![rat(1), rat(-2)];
        let g1 = vec![vec![rat(2), rat(0), rat(1)], vec![rat(-1), rat(3), rat(0)]];
        let d1 = delta_r3(&g0, &g1);
        let g0x2: Vec<Rat> = g0.iter().map(|x| x.clone() * rat(2)).collect();
        let g1x2: Vec<Vec<Rat>> = g1
            .iter()
            .map(|r| r.iter().map(|x| x.clone() * rat(2)).collect())
            .collect();
        let d2 = delta_r3(&g0x2, &g1x2);
        let doubled: Vec<Rat> = d1.iter().map(|x| x.clone() * rat(2)).collect();
        g.check("linearity of (g0, g1) -> delta r3", d2 == doubled, "doubling check".into());
    }
    // Rank of the 8-parameter family.
    let mut rows = Vec::new();
    for i in 0..n {
        let mut g0 = vec![Rat::zero(); n];
        g0[i] = Rat::from_integer(1.into());
        rows.push(delta_r3(&g0, &vec![vec![Rat::zero(); a]; n]));
    }
    for i in 0..n {
        for j in 0..a {
            let mut g1 = vec![vec![Rat::zero(); a]; n];
            g1[i][j] = Rat::from_integer(1.into());
            rows.push(delta_r3(&vec![Rat::zero(); n], &g1));
        }
    }
    let width = rows[0].len();
    let rank = span_dim(&rows, width);
    g.check("rank equals 6", rank == 6, format!("rank {rank} of the {}x{width} motion matrix", rows.len()));
    // The two structurally zero slots of the table: delta r3 never touches
    // the A5-component of (1,1,1) or the A3-component of (2,2,2).
    let s3 = DegSpace::new(n, 3);
    let idx_111 = s3.index_of(&[3, 0]).unwrap();
    let idx_222 = s3.index_of(&[0, 3]).unwrap();
    let d3 = s3.dim();
    let zeros_ok = rows
        .iter()
        .all(|r| r[2 * d3 + idx_111].is_zero() && r[idx_222].is_zero());
    g.check("structural zero entries", zeros_ok, "delta r3[5,111] = delta r3[3,222] = 0".into());
    g.finish();
}

#[test]
fn criterion_07_syzygy_laws() {
    let mut g = Gate::new("7: syzygy laws on random systems");
    // (a) split law on 100 random systems
    {
        let mut rng = SplitMix64::new(20240701);
        let mut all_ok = true;
        for _ in 0..100 {
            let n = 2 + (rng.next_u64() % 4) as usize;
            let max_a = (n * (n + 1) / 2).min(4);
            let a = 1 + (rng.next_u64() % max_a as u64) as usize;
            let seed = rng.next_u64();
            let sys = random_quadric_system(n, a, seed);
            let (img, ker) = split_dims(&sys);
            if img + ker != sys.a() * n {
                all_ok = false;
            }
        }
        g.check("(a) image + kernel = a*n on 100 systems", all_ok, "split law".into());
    }
    // (b) planted quadratic relations always yield verified linear syzygies
    {
        let mut rng = SplitMix64::new(77001);
        let mut count = 0;
        let mut ok = true;
        while count < 25 {
            let n = 3 + (rng.next_u64() % 3) as usize;
            let lin = |rng: &mut SplitMix64| {
                let mut p = MPoly::zero(n);
                for i in 0..n {
                    p = p.add(&MPoly::var(n, i).scale(&rat(rng.range_i64(-3, 3))));
                }
                p
            };
            let (l1, l2, l3, l4) = (lin(&mut rng), lin(&mut rng), lin(&mut rng), lin(&mut rng));
            let qs: Vec<MPoly> = vec![l1.mul(&l2), l3.mul(&l4), l1.mul(&l3), l2.mul(&l4)];
            if qs.iter().any(|p| p.is_zero()) {
                continue;
            }
            let forms: Vec<SymForm> = qs.iter().map(|p| SymForm::from_poly_in(p, n, 2)).collect();
            let sys = QuadricSystem::new(n, forms);
            if sys.a() != 4 {
                continue;
            }
            count += 1;
            let (certs, rep) = relations(&sys, 2);
            if rep.dim_relations == 0 {
                ok = false;
                continue;
            }
            match syzygy_from_relation(&sys, &certs[0]) {
                Ok(cert) => {
                    if !cert.verify(&sys) || cert.is_trivial() {
                        ok = false;
                    }
                    // the lemma as a property: bracket part nonempty
                    if bracket_part(&sys).is_empty() {
                        ok = false;
                    }
                }
                Err(_) => ok = false,
            }
        }
        g.check("(b) quadratic relation -> verified linear syzygy, 25 instances", ok, "constructive lemma".into());
    }
    // (c) rank bound on randomized syzygy systems; sharpness at (3, 6)
    {
        let mut rng = SplitMix64::new(6019);
        let mut ok = true;
        let mut instances = 0;
        while instances < 200 {
            let p = 2 + (rng.next_u64() % 3) as usize; // 2..4
            let n = p + (rng.next_u64() % (8 - p as u64 + 1)) as usize;
            let needed = p + p * (p - 1) / 2;
            // when the complement is too small for independent m's, the
            // b-only construction still plants a valid syzygy
            let opts = ExtremalOptions {
                b_seed: Some(rng.next_u64()),
                independent_m: n >= needed,
            };
            let (_, quadrics, ls) = match extremal_syzygy_system(p, n, &opts) {
                Ok(x) => x,
                Err(_) => continue,
            };
            instances += 1;
            match rank_bound_check(&quadrics, &ls, 10, rng.next_u64()) {
                Ok(rep) => {
                    if !rep.pass {
                        ok = false;
                    }
                }
                // dependent quadrics can occur for special b draws; skip them
                Err(_) => {
                    instances -= 1;
                }
            }
        }
        g.check("(c) rank <= 2(p-1) on 200 syzygy systems", ok, "bound holds".into());
        let (_, quadrics, ls) = extremal_syzygy_system(3, 6, &ExtremalOptions::default()).unwrap();
        let rep = rank_bound_check(&quadrics, &ls, 50, 3).unwrap();
        g.check(
            "(c) extremal (p=3, n=6) is sharp",
            rep.pass && rep.max_rank_seen == 4,
            format!("max rank {} = 2(p-1) = {}", rep.max_rank_seen, rep.bound),
        );
    }
    g.finish();
}

#[test]
fn criterion_08_ci_criterion() {
    let mut g = Gate::new("8: complete-intersection criterion");
    {
        let v = plane_conic();
        let r = ci_verdict(&v, &zero_point(&v), 3).unwrap();
        g.check("conic is CI", r.complete_intersection_up_to_bound, "degree 2 generator".into());
    }
    {
        let v = twisted_cubic();
        let r = ci_verdict(&v, &zero_point(&v), 3).unwrap();
        let row2 = r.rows.iter().find(|x| x.degree == 2).unwrap();
        g.check(
            "twisted cubic is not CI, with witness",
            !r.complete_intersection_up_to_bound && row2.witness.is_some(),
            format!("witness {:?}", row2.witness),
        );
    }
    for seed in 0..10u64 {
        let v = ci_random(3, &[2, 3], seed + 1);
        let r = ci_verdict(&v, &zero_point(&v), 3).unwrap();
        g.check(
            &format!("random quadric+cubic CI seed {}", seed + 1),
            r.complete_intersection_up_to_bound,
            format!("jumps {:?}", r.filtration.jumps),
        );
    }
    let mut done = 0;
    let mut seed = 100u64;
    while done < 10 {
        seed += 1;
        let sys = random_quadric_system(6, 2, seed);
        if !bracket_part(&sys).is_empty() {
            continue;
        }
        done += 1;
        let v = variety_from_quadrics(&sys, &format!("fq-{seed}"));
        let r = ci_verdict(&v, &zero_point(&v), 3).unwrap();
        g.check(
            &format!("from-quadrics syzygy-free seed {seed}"),
            r.complete_intersection_up_to_bound,
            format!("dims {:?}", r.rows.iter().map(|x| x.dim_ideal).collect::<Vec<_>>()),
        );
    }
    g.finish();
}

#[test]
fn criterion_09_spinor_fixture() {
    let mut g = Gate::new("9: spinor fixture");
    let v = spinor10();
    let start = Instant::now();
    let i2 = ideal_slice(&v, 2);
    g.check("dim I_2 = 10", i2.len() == 10, format!("computed {}", i2.len()));
    let eqs = spinor_equations();
    let all_vanish = eqs.iter().all(|e| is_in_ideal(&v, e));
    g.check(
        "the ten listed quadrics pull back to zero",
        all_vanish && eqs.len() == 10,
        format!("{} equations", eqs.len()),
    );
    let qg = quadratic_generation_check(&v, &zero_point(&v), 3).unwrap();
    g.check(
        "generated by quadrics up to degree 3",
        qg.generated_up_to_bound,
        format!(
            "degree 3: dim I = {}, from quadrics {}",
            qg.rows[0].dim_ideal, qg.rows[0].dim_from_quadrics
        ),
    );
    println!("  (spinor checks: {:.2?})", start.elapsed());
    g.finish();
}

#[test]
fn criterion_10_severi_octonion() {
    let mut g = Gate::new("10: Severi octonion fixture");
    let alg = CompAlgebra::split(8);
    let v = severi(&alg);
    let start = Instant::now();
    let eqs = severi_equations(&alg);
    let mut bad = 0;
    for e in &eqs {
        if !is_in_ideal(&v, e) {
            bad += 1;
        }
    }
    g.check(
        "all minor equations pull back to zero",
        bad == 0 && eqs.len() == 27,
        format!("{} equations, {} failures", eqs.len(), bad),
    );
    println!("  (severi-8 minors: {:.2?})", start.elapsed());
    g.finish();
}

#[test]
fn criterion_11_threshold_predicates() {
    let mut g = Gate::new("11: threshold predicates");
    let r1 = thresholds(10, 2, -1);
    g.check(
        "(10, 2, -1) all true",
        r1.prolongation_forced_zero && r1.no_linear_syzygies_forced && r1.ci_if_quadric_generated,
        format!("{r1:?}"),
    );
    let r2 = thresholds(6, 3, -1);
    g.check(
        "(6, 3, -1) prolongation only",
        r2.prolongation_forced_zero && !r2.no_linear_syzygies_forced && !r2.ci_if_quadric_generated,
        format!("{r2:?}"),
    );
    let r3 = thresholds(11, 4, -1);
    g.check(
        "(11, 4, -1) boundary 11-folds in P^15",
        r3.no_linear_syzygies_forced,
        format!("{r3:?}"),
    );
    g.finish();
}

// ---------------------------------------------------------------------------
// Cross-module invariants at acceptance strength
// ---------------------------------------------------------------------------

#[test]
fn invariant_stabilization_and_monotonicity() {
    let mut g = Gate::new("invariants: stabilization and bound identities");
    for name in ["conic", "twisted-cubic", "veronese-2", "segre-1-2", "grass2-4", "example-4-36"] {
        let e = catalog_get(name).unwrap();
        for d in 1..=2u32 {
            let ok = prodiff::osculate::stabilization_check(&e.variety, &e.point, d).unwrap();
            g.check(&format!("{name} stabilizes at degree {d}"), ok, "osc = I_d".into());
        }
    }
    // multiplication bound: dim(I_{d-1} o V*) <= dim I_{d-1} * (n+a+1),
    // equality failing exactly when the multiplication map has a kernel.
    for name in ["twisted-cubic", "veronese-2", "spinor10"] {
        let e = catalog_get(name).unwrap();
        let dim = e.variety.ambient_dim();
        let i2 = ideal_slice(&e.variety, 2);
        let space3 = DegSpace::new(dim, 3);
        let triv = trivial_slice(&e.variety, &i2, &space3);
        let bound = i2.len() * dim;
        let mut prods = Vec::new();
        for p in &i2 {
            for b in 0..dim {
                prods.push(space3.mpoly_to_vec(&p.mul(&MPoly::var(dim, b))));
            }
        }
        let kernel_dim = prods.len() - span_dim(&prods, space3.dim());
        g.check(
            &format!("{name} multiplication bound"),
            triv.len() <= bound && (triv.len() == bound) == (kernel_dim == 0),
            format!("dim {} vs bound {bound}, kernel {kernel_dim}", triv.len()),
        );
    }
    g.finish();
}

#[test]
fn invariant_from_quadrics_round_trip() {
    let mut g = Gate::new("invariants: from-quadrics charts");
    let mut rng = SplitMix64::new(5150);
    let mut done = 0;
    while done < 5 {
        let seed = rng.next_u64();
        let sys = random_quadric_system(4, 2, seed);
        done += 1;
        let v = variety_from_quadrics(&sys, &format!("rt-{seed}"));
        let chart = adapt_at_point(&v, &vec![Rat::from_integer(0.into()); 4], 5).unwrap();
        let data = fundamental_data(&chart).unwrap();
        let q_vecs: Vec<Vec<Rat>> = data.q.iter().map(|f| f.coeffs.clone()).collect();
        let sys_vecs: Vec<Vec<Rat>> = sys.basis().iter().map(|f| f.coeffs.clone()).collect();
        let ambient = data.q[0].space.dim();
        let spans_match = span_dim(&q_vecs, ambient) == sys.a()
            && span_dim(
                &q_vecs.iter().chain(sys_vecs.iter()).cloned().collect::<Vec<_>>(),
                ambient,
            ) == sys.a();
        let higher_zero = data.r3.iter().all(|f| f.is_zero())
            && data.r4.iter().all(|f| f.is_zero())
            && data.r5.as_ref().unwrap().iter().all(|f| f.is_zero());
        g.check(
            &format!("seed {seed}: II spans the system, higher variations vanish"),
            spans_match && higher_zero,
            "graph chart data".into(),
        );
        if bracket_part(&sys).is_empty() {
            let chart5 = adapt_at_point(&v, &vec![Rat::from_integer(0.into()); 4], 5).unwrap();
            let rep = monge_quadrics(&chart5).unwrap();
            g.check(
                &format!("seed {seed}: syzygy-free graph reaches MongeHolds with a = b = 0"),
                rep.verdict == MongeVerdict::MongeHolds && rep.solution_set_dim == 0,
                format!("{:?}", rep.verdict),
            );
        }
    }
    g.finish();
}

#[test]
fn invariant_lemma_4_6_on_analyzed_systems() {
    let mut g = Gate::new("invariants: no syzygies implies no quadratic relations");
    // Contrapositive of the constructive lemma, asserted on every catalog
    // system with a syzygy-free II.
    for name in ["conic", "example-4-36", "grass2-4", "segre-1-1"] {
        let e = catalog_get(name).unwrap();
        let chart = adapt_at_point(&e.variety, &e.point, 3).unwrap();
        let sys = QuadricSystem::new(
            e.variety.n,
            prodiff::variety::second_fundamental_forms(&chart),
        );
        if !bracket_part(&sys).is_empty() {
            continue;
        }
        let (certs, rep) = relations(&sys, 2);
        let certs_ok: bool = certs.iter().all(|c: &SyzygyCert| c.verify(&sys));
        g.check(
            &format!("{name}: relations(2) empty"),
            rep.dim_relations == 0 && certs_ok,
            format!("dim {}", rep.dim_relations),
        );
    }
    g.finish();
}
