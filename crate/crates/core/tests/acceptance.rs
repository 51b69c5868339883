//! Acceptance criteria 1–14, one line each.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wulffbez_core::corpus::{
    self, centered, centered_triangle, cross_polytope, cube, pyramid, segment_axis, simplex, standard_bodies,
    truncated_simplex3,
};
use wulffbez_core::decomposition::{homothet_chain_check, weak_witness_search};
use wulffbez_core::inequality::{
    counterexample_search, evaluate, random_polytope, simplex_certify, Family, InequalityForm, Verdict,
};
use wulffbez_core::measure::{atom_check, mixed_area_measure, pairing, sum_expansion_sides, surface_area_measure};
use wulffbez_core::mixed::{
    af_gap, minkowski_gap, mixed_volume, mixed_volume_of, mixed_volume_oracle, projection_formula_sides, BodyTuple,
};
use wulffbez_core::scalar::{int, point, rat};
use wulffbez_core::wulff::{
    certified_step, dyadic, grid_support_quotient, perturb, support_derivative, volume_mixed_derivative, wulff_shape,
    CapBump, GridSpec, PerturbationSpec, Side, SupportSpec,
};
use wulffbez_core::{Direction, Polytope, Scalar};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let e = start.elapsed();
    ensure(e < limit, || format!("runtime {e:.2?} exceeds {limit:?}"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn randoms(r: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Polytope> {
    (0..count).map(|_| random_polytope(r, n, 3)).collect()
}

fn corpus_in(n: usize) -> Vec<Polytope> {
    standard_bodies().into_iter().map(|(_, p)| p).filter(|p| p.ambient_dim() == n).collect()
}

fn multisets(len: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i, len, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, size, &mut Vec::new(), &mut out);
    out
}

fn mv(bs: &[&Polytope]) -> Scalar {
    mixed_volume_of(bs).expect("mixed volume")
}

fn c1_simplex_volumes() -> Outcome {
    let start = Instant::now();
    for (n, fact) in [(2, 2), (3, 6), (4, 24)] {
        let v = simplex(n).volume().clone();
        ensure(v == rat(1, fact), || format!("V(simplex-{n}) = {v}"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("1/2, 1/6, 1/24".into())
}

fn c2_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut checked = 0;
    for n in [2, 3] {
        let mut tuples: Vec<Vec<Polytope>> = (0..50).map(|_| randoms(&mut r, n, n)).collect();
        let bodies = corpus_in(n);
        tuples.extend(multisets(bodies.len(), n).into_iter().map(|ix| ix.iter().map(|&i| bodies[i].clone()).collect()));
        for t in tuples {
            let t = BodyTuple::from_bodies(t);
            let (a, b) = (mixed_volume(&t).unwrap(), mixed_volume_oracle(&t).unwrap());
            ensure(a == b, || format!("polarization {a} vs oracle {b}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} tuples agree exactly"))
}

fn c3_property_suite() -> Outcome {
    let mut r = rng(3);
    let mut instances = 0;
    for _ in 0..50 {
        let b = randoms(&mut r, 3, 4);
        let v = mv(&[&b[0], &b[1], &b[2]]);
        ensure(v == mv(&[&b[2], &b[0], &b[1]]) && v == mv(&[&b[0], &b[2], &b[1]]), || "symmetry".into())?;

        let (lam, mu) = (rat(r.gen_range(1..6), r.gen_range(1..4)), rat(r.gen_range(1..6), r.gen_range(1..4)));
        let combo = b[0].scale(&lam).minkowski_sum(&b[3].scale(&mu)).unwrap();
        let lin = &lam * &v + &mu * mv(&[&b[3], &b[1], &b[2]]);
        ensure(mv(&[&combo, &b[1], &b[2]]) == lin, || "multilinearity".into())?;

        let a = vec![rat(r.gen_range(-9..9), 7), rat(r.gen_range(-9..9), 5), int(r.gen_range(-3..3))];
        ensure(mv(&[&b[0].translate(&a), &b[1], &b[2]]) == v, || "translation invariance".into())?;

        let pts: Vec<_> = b[0].vertices().iter().chain(b[3].vertices()).cloned().collect();
        let big = wulffbez_core::convex_hull(&pts, 3).unwrap();
        ensure(big.contains(&b[0]) && v <= mv(&[&big, &b[1], &b[2]]), || "monotonicity".into())?;
        instances += 4;
    }
    Ok(format!("{instances} instances, 0 failures"))
}

fn c4_pairings() -> Outcome {
    let mut count = 0;
    for (name, k) in standard_bodies() {
        ensure(&pairing(&k, &surface_area_measure(&k)).unwrap() == k.volume(), || format!("volume pairing on {name}"))?;
        count += 1;
    }
    let mut r = rng(4);
    for i in 0..50 {
        let n = 2 + i % 2;
        let b = randoms(&mut r, n, n);
        ensure(&pairing(&b[0], &surface_area_measure(&b[0])).unwrap() == b[0].volume(), || "volume pairing".into())?;
        let rest: Vec<&Polytope> = b[1..].iter().collect();
        let mu = mixed_area_measure(&rest).unwrap();
        let all: Vec<&Polytope> = b.iter().collect();
        ensure(pairing(&b[0], &mu).unwrap() == mv(&all), || "mixed pairing".into())?;
        count += 1;
    }
    Ok(format!("{count} bodies/instances"))
}

fn c5_projection_formula() -> Outcome {
    let mut r = rng(5);
    let mut count = 0;
    for i in 0..30 {
        let n = 2 + i % 2;
        let w = loop {
            let v: Vec<i64> = (0..n).map(|_| r.gen_range(-2..=2)).collect();
            if let Ok(d) = Direction::new(v) {
                break d;
            }
        };
        let b = randoms(&mut r, n, n - 1);
        let rest: Vec<&Polytope> = b.iter().collect();
        let (lhs, rhs) = projection_formula_sides(&w, &rest).unwrap();
        ensure(lhs == rhs, || format!("projection formula at {w}: {lhs} vs {rhs}"))?;
        count += 1;
    }
    let q = cube(3);
    let (lhs, _) = projection_formula_sides(&Direction::axis(3, 2), &[&q, &q]).unwrap();
    ensure(lhs == rat(1, 3), || format!("V([0,e3],Q3,Q3) = {lhs}"))?;
    Ok(format!("{count} instances"))
}

fn c6_atom_identity() -> Outcome {
    let (s1, s2) = (segment_axis(3, 0), segment_axis(3, 1));
    let mu = mixed_area_measure(&[&s1, &s2]).unwrap();
    let e3 = Direction::axis(3, 2);
    ensure(mu.atoms().len() == 2 && mu.get(&e3) == rat(1, 2) && mu.get(&e3.neg()) == rat(1, 2), || {
        "two segments in R^3".into()
    })?;
    let mut r = rng(6);
    let mut count = 0;
    let mut atoms = 0;
    for i in 0..30 {
        let mut b = randoms(&mut r, 3, 2);
        match i % 3 {
            1 => b[0] = b[0].face(&Direction::axis(3, i % 3)),
            2 => b[1] = segment_axis(3, i % 3),
            _ => {}
        }
        let pair = [&b[0], &b[1]];
        for (w, c) in mixed_area_measure(&pair).unwrap().atoms() {
            let (atom, faces) = atom_check(&pair, w).unwrap();
            ensure(&atom == c && atom == faces, || format!("atom at {w}: {atom} vs {faces}"))?;
            atoms += 1;
        }
        count += 1;
    }
    Ok(format!("{count} instances, {atoms} atoms"))
}

fn c7_sum_expansion() -> Outcome {
    let mut r = rng(7);
    let mut cases: Vec<(Polytope, Polytope)> = vec![
        (cube(2), cube(2)),
        (cube(3), Polytope::segment(point(&[0, 0, 0]), point(&[1, 1, 1])).unwrap()),
        (simplex(3), simplex(3)),
    ];
    for i in 0..10 {
        let b = randoms(&mut r, 2 + i % 2, 2);
        cases.push((b[0].clone(), b[1].clone()));
    }
    for (l, m) in &cases {
        let (direct, expanded) = sum_expansion_sides(l, m).unwrap();
        ensure(direct == expanded, || "expansion differs from the sum measure".into())?;
    }
    Ok(format!("{} instances", cases.len()))
}

fn c8_wulff_suite() -> Outcome {
    let start = Instant::now();
    for (name, k) in standard_bodies() {
        ensure(wulff_shape(&SupportSpec::of_polytope(&k)).unwrap() == k, || format!("W(h_K) != K for {name}"))?;
    }

    let k = centered_triangle();
    let e2 = Direction::axis(2, 1);
    let spec = PerturbationSpec::new(k.clone(), [(e2.clone(), int(1))].into_iter().collect()).unwrap();
    for t in [rat(1, 4), rat(1, 16), int(3)] {
        ensure(perturb(&spec, &t).unwrap() == k, || format!("K_t != K at t = {t}"))?;
    }
    let right = support_derivative(&spec, &e2, Side::Right, &[]).unwrap();
    ensure(right.exact == Some(int(0)), || format!("right quotient {:?}", right.exact))?;
    let left = support_derivative(&spec, &e2, Side::Left, &[]).unwrap();
    ensure(left.quotients.iter().all(|(_, q)| *q >= int(1)), || "left quotient below 1".into())?;

    let mut r = rng(8);
    let mut specs = 0;
    for (_, body) in standard_bodies() {
        let k = centered(&body);
        let n = k.ambient_dim();
        let mut f: BTreeMap<Direction, Scalar> = BTreeMap::new();
        for w in k.facet_normals() {
            if r.gen_bool(0.6) {
                f.insert(w, rat(r.gen_range(1..4), r.gen_range(1..3)));
            }
        }
        let spec = PerturbationSpec::new(k.clone(), f.clone()).unwrap();
        let d = volume_mixed_derivative(&spec, Side::Left).unwrap();
        let pairing_sum: Scalar =
            k.facets().iter().map(|fc| f.get(&fc.normal).cloned().unwrap_or_default() * &fc.coweight).sum();
        let expected = pairing_sum / int(n as i64);
        let t = certified_step(&spec, Side::Left).unwrap();
        let mut bodies = vec![perturb(&spec, &t).unwrap()];
        bodies.extend(std::iter::repeat_n(k.clone(), n - 1));
        let refs: Vec<&Polytope> = bodies.iter().collect();
        let chord = (mv(&refs) - k.volume()) / &t;
        ensure(d.exact && d.value == expected && chord == expected, || {
            format!("derivative {} vs pairing {expected} vs chord {chord}", d.value)
        })?;
        specs += 1;
    }

    let mut pairs = 0;
    for _ in 0..12 {
        let b = randoms(&mut r, 2, 2);
        let mut dirs: Vec<Direction> = b[0].facet_normals();
        for w in b[1].facet_normals() {
            if !dirs.contains(&w) {
                dirs.push(w);
            }
        }
        let spec_of =
            |k: &Polytope| SupportSpec::from_entries(2, dirs.iter().map(|w| (w.clone(), k.support_value(w)))).unwrap();
        let (g1, g2) = (spec_of(&b[0]), spec_of(&b[1]));
        let lam = rat(r.gen_range(1..4), 4);
        let combined = wulff_shape(&g1.combine(&g2, &lam).unwrap()).unwrap();
        let mink = wulff_shape(&g1)
            .unwrap()
            .scale(&(int(1) - &lam))
            .minkowski_sum(&wulff_shape(&g2).unwrap().scale(&lam))
            .unwrap();
        ensure(combined.contains(&mink), || "superadditivity".into())?;
        pairs += 1;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{specs} derivative specs, {pairs} containment pairs"))
}

fn c9_grid_convergence() -> Outcome {
    let k = centered(&cube(3));
    let u = Direction::axis(3, 2);
    let cap = CapBump { center: u.clone(), radius: 0.5, height: int(1) };
    let fu = cap.value_f64(&u);
    let mut errors = Vec::new();
    for level in 2..=4 {
        let grid = GridSpec::new(&k, level);
        let mut err: f64 = 0.0;
        for t in [dyadic(12), -dyadic(12)] {
            let q = grid_support_quotient(&k, &cap, &grid, &u, &t).unwrap();
            err = err.max((q - fu).abs());
        }
        errors.push(err);
    }
    ensure(errors.windows(2).all(|w| w[1] <= w[0]), || format!("errors not monotone: {errors:?}"))?;
    ensure(errors[2] <= 1e-6, || format!("level-4 error {}", errors[2]))?;
    Ok(format!("max errors at levels 2..4: {errors:?}"))
}

fn c10_exact_cases() -> Outcome {
    let start = Instant::now();
    let s = |n, i| segment_axis(n, i);
    let r = evaluate(InequalityForm::BFull, &[s(2, 0), s(2, 1)], &simplex(2)).unwrap();
    ensure(r.lhs == rat(1, 4) && r.rhs == rat(1, 4) && r.verdict == Verdict::Equality, || "simplex equality".into())?;
    let r = evaluate(InequalityForm::BezoutR(2), &[s(2, 0), s(2, 1)], &cube(2)).unwrap();
    ensure(r.lhs == rat(1, 2) && r.rhs == rat(1, 4) && r.ratio == Some(int(2)), || "square violation".into())?;
    let r = evaluate(InequalityForm::IsoN, &[s(3, 2), s(3, 0), s(3, 1)], &cube(3)).unwrap();
    ensure(r.ratio == Some(int(1)), || format!("cylinder ratio {:?}", r.ratio))?;
    let r = evaluate(InequalityForm::Iso2, &[s(3, 0), s(3, 1)], &pyramid(3)).unwrap();
    ensure(r.ratio == Some(int(1)), || format!("pyramid ratio {:?}", r.ratio))?;
    within(start, Duration::from_secs(5))?;
    Ok("4 exact instances".into())
}

fn c11_certification(n4: &mut Duration) -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in 2..=4 {
        let t = Instant::now();
        let rep = simplex_certify(&simplex(n), 100, 11).unwrap();
        ensure(rep.counts.violated == 0, || format!("{} violations on simplex-{n}", rep.counts.violated))?;
        if n == 4 {
            *n4 += t.elapsed();
        }
        notes.push(format!("simplex-{n}: 0/{}", rep.rows.len()));
    }
    for (name, k, family) in [
        ("square", cube(2), Family::Segments),
        ("cube-3", cube(3), Family::Segments),
        ("octahedron", cross_polytope(3), Family::Truncations),
    ] {
        let out = counterexample_search(&k, family, 1000).unwrap();
        let found = out.report.as_ref().map(|r| r.verdict == Verdict::Violated).unwrap_or(false);
        ensure(found, || format!("no violation for {name}"))?;
        notes.push(format!("{name}: {} evals", out.evaluations));
    }
    within(start, Duration::from_secs(120))?;
    Ok(notes.join(", "))
}

fn c12_gaps() -> Outcome {
    let mut r = rng(12);
    for i in 0..100 {
        let n = 2 + i % 2;
        let b = randoms(&mut r, n, 3);
        let g = minkowski_gap(&b[0], &b[1]).unwrap();
        ensure(!g.is_negative(), || format!("Minkowski gap {g}"))?;
        let rest: Vec<&Polytope> = b[2..].iter().take(n - 2).collect();
        let g = af_gap(&b[0], &b[1], &rest).unwrap();
        ensure(!g.is_negative(), || format!("AF gap {g}"))?;
    }
    Ok("100 + 100 instances".into())
}

fn c13_decomposition(n4: &mut Duration) -> Outcome {
    for (name, k) in [("cube-3", cube(3)), ("prism-3", corpus::prism3()), ("truncated-simplex-3", truncated_simplex3())]
    {
        let s = weak_witness_search(&k, None).unwrap();
        ensure(s.witness.map(|w| w.is_valid()).unwrap_or(false), || format!("no witness for {name}"))?;
    }
    for n in 2..=4 {
        let t = Instant::now();
        let s = weak_witness_search(&simplex(n), None).unwrap();
        ensure(s.witness.is_none() && s.homothetic == s.candidates, || format!("simplex-{n} produced a witness"))?;
        if n == 4 {
            *n4 += t.elapsed();
        }
    }
    for k in [corpus::prism3(), simplex(3), cube(2)] {
        let n = k.ambient_dim();
        let mut a = vec![int(0); n];
        a[0] = rat(3, 2);
        let m = k.scale(&int(2)).translate(&a);
        for r in 0..n {
            let c = homothet_chain_check(&k, &m, r).unwrap();
            ensure(c.holds() && c.lambda == int(2), || format!("chain fails at r = {r}"))?;
        }
    }
    Ok("witnesses found; simplices homothets only; chain exact".into())
}

fn main() {
    let total = Instant::now();
    let mut n4 = Duration::ZERO;
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();
    let mut run = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        results.push((id, name, out, t.elapsed()));
    };
    run(1, "simplex volumes", &mut c1_simplex_volumes);
    run(2, "oracle equivalence", &mut c2_oracle_equivalence);
    run(3, "exact property suite", &mut c3_property_suite);
    run(4, "pairing identities", &mut c4_pairings);
    run(5, "projection formula", &mut c5_projection_formula);
    run(6, "atom identity", &mut c6_atom_identity);
    run(7, "sum expansion", &mut c7_sum_expansion);
    run(8, "wulff suite", &mut c8_wulff_suite);
    run(9, "grid convergence", &mut c9_grid_convergence);
    run(10, "inequality exact cases", &mut c10_exact_cases);
    run(11, "certification asymmetry", &mut || c11_certification(&mut n4));
    run(12, "classical gaps", &mut c12_gaps);
    run(13, "decomposition", &mut || c13_decomposition(&mut n4));
    let elapsed = total.elapsed();
    let low = elapsed.saturating_sub(n4);
    let c14 = if low < Duration::from_secs(300) && n4 < Duration::from_secs(300) {
        Ok(format!("n <= 3 work {low:.1?}, n = 4 smoke {n4:.1?}"))
    } else {
        Err(format!("n <= 3 work {low:.1?}, n = 4 smoke {n4:.1?}"))
    };
    results.push((14, "wall-clock budget", c14, elapsed));

    let mut failed = 0;
    for (id, name, out, t) in &results {
        match out {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({t:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({t:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
