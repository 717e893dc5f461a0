//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fanlab::commands::sweep;
use fanlab::corpus::{fans, polygon, random_cp3_refinements};
use fanlab_core::exactlin::{int_vec, rat, RatMat};
use fanlab_core::fan::{is_locally_convex, Fan};
use fanlab_core::gammasig::{
    f_vector, h_from_gamma, h_vector, signature, signature_summary, signature_zero_predicate, vanishing_monomial_suite,
};
use fanlab_core::istheory::wall_relation;
use fanlab_core::polymat::{
    brute_force_odd_tuples, check_output_compat, check_submodular, clamp, compare_to_extreme, elements,
    for_each_polymatroid, greedy_extreme_point, in_nonzero_region, lift_point, odd_tuple_algorithm, p2_analysis,
    p3_closed_form, permutations, restrict, DimFunction,
};
use fanlab_core::structure::{
    all_rays_in_4cycles, detect_cross_polytope, special_rays_by_conditions, special_rays_by_span, FourCycle,
};
use fanlab_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn convex(f: &Fan) -> bool {
    is_locally_convex(f).map(|r| r.locally_convex).unwrap_or(false)
}

fn nonempty_subsets(c: &[usize]) -> Vec<Vec<usize>> {
    (1u32..1 << c.len()).map(|m| (0..c.len()).filter(|&i| m >> i & 1 == 1).map(|i| c[i]).collect()).collect()
}

/// `h(-1)` straight from the face numbers: `sum_i f_{i-1} (-1)^i 2^{d-i}`.
fn h_at_minus_one(f: &[i64]) -> i64 {
    let d = f.len() as u32;
    (0..=d).map(|i| if i == 0 { 1 } else { f[i as usize - 1] } * (-1i64).pow(i) * 2i64.pow(d - i)).sum()
}

/// Re-checks a cycle against the list of maximal cones only.
fn induced(f: &Fan, c: &FourCycle) -> bool {
    let edge = |x: usize, y: usize| f.max_cones().iter().any(|m| m.contains(&x) && m.contains(&y));
    let r = c.rays;
    r.iter().collect::<BTreeSet<_>>().len() == 4
        && (0..4).all(|i| edge(r[i], r[(i + 1) % 4]))
        && !edge(r[0], r[2])
        && !edge(r[1], r[3])
}

fn naive_region(b: &DimFunction, a: &[i64]) -> bool {
    (1u32..1 << b.n()).all(|m| elements(m).iter().map(|&j| a[j]).sum::<i64>() <= b.get(m))
}

fn cp4_by_hand() -> Fan {
    let mut rays = Vec::new();
    for s in [1i64, -1] {
        for i in 0..4 {
            let mut v = [0i64; 4];
            v[i] = s;
            rays.push(int_vec(&v));
        }
    }
    let cones = (0..16usize).map(|m| (0..4).map(|i| i + 4 * (m >> i & 1)).collect()).collect();
    Fan::new(4, rays, cones).map_err(e).expect("cross-polytope")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = cp4_by_hand();
    let fv = f_vector(&f);
    let expected: Vec<i64> = (1..=4).map(|k| (binom(4, k) << k) as i64).collect();
    ensure!(fv == expected, "f-vector {fv:?}, direct count {expected:?}");
    // Each wall relation, solved as a kernel, is u + u' = 0.
    for w in f.walls().map_err(e)? {
        let mut cols = w.tau.clone();
        cols.extend([w.gamma, w.gamma_prime]);
        let ker = RatMat::from_rows(4, &f.vectors(&cols)).map_err(e)?.transpose().kernel();
        ensure!(ker.len() == 1, "wall {:?}: kernel dimension {}", w.tau, ker.len());
        let k = &ker[0];
        ensure!(k[..w.tau.len()].iter().all(|x| *x == rat(0)), "wall {:?} is not flat: {k:?}", w.tau);
        ensure!(k[w.tau.len()] == k[w.tau.len() + 1], "wall {:?}: {k:?}", w.tau);
        let rel = wall_relation(&f, &w).map_err(e)?;
        ensure!(w.tau.iter().all(|&r| rel.coeff(r) == 0.into()), "library relation at {:?} not flat", w.tau);
    }
    let cross = detect_cross_polytope(&f).map_err(e)?;
    let oracle: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 4)).collect();
    ensure!(cross.pairing.as_ref() == Some(&oracle), "pairing {:?}", cross.pairing);
    let s = signature_summary(&f).map_err(e)?;
    ensure!(s.signature == 0, "signature {}", s.signature);
    ensure!(s.gamma == vec![1, 0, 0], "gamma {:?}", s.gamma);
    let suite = vanishing_monomial_suite(&f).map_err(e)?;
    ensure!(suite.witnesses.is_empty(), "suite has {} witnesses", suite.witnesses.len());
    let cyc = all_rays_in_4cycles(&f).map_err(e)?;
    ensure!(cyc.unwitnessed.is_empty(), "unwitnessed rays {:?}", cyc.unwitnessed);
    for r in &cyc.rays {
        let c = r.cycle.as_ref().ok_or(format!("ray {} has no cycle", r.ray))?;
        ensure!(c.rays.contains(&r.ray) && induced(&f, c), "ray {}: bad cycle {:?}", r.ray, c.rays);
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(5), "took {t:?}");
    Ok(format!("4 pairs, gamma (1,0,0), suite empty, 8/8 rays in 4-cycles, {:.2?}", t))
}

fn criterion_2() -> Outcome {
    for n in 4..=8usize {
        let f = polygon(n).ok_or("polygon missing")?;
        let h = h_vector(&f_vector(&f));
        let n = n as i64;
        ensure!(h == vec![1, n - 2, 1], "n = {n}: h = {h:?}");
        let p = signature_zero_predicate(&f).map_err(e)?;
        ensure!(p.signature == 4 - n, "n = {n}: signature {}", p.signature);
        ensure!(p.predicate == (n == 4), "n = {n}: predicate {}", p.predicate);
    }
    Ok("n = 4..8: signature 4-n, predicate only at n = 4".into())
}

fn routes_agree(name: &str, f: &Fan) -> Result<usize, String> {
    let mut jobs = Vec::new();
    for p in 1..f.dim() {
        for pc in f.faces_of_size(p) {
            for a in nonempty_subsets(&pc) {
                jobs.push((pc.clone(), a));
            }
        }
    }
    jobs.par_iter()
        .map(|(pc, a)| {
            let s = special_rays_by_span(f, pc, a).map_err(e)?;
            let c = special_rays_by_conditions(f, pc, a).map_err(e)?;
            ensure!(s == c, "{name} pcone {pc:?} A {a:?}: span {s:?} vs conditions {c:?}");
            Ok(())
        })
        .collect::<Result<Vec<()>, String>>()?;
    Ok(jobs.len())
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    let mut named = 0;
    for (name, f) in fans().into_iter().filter(|(_, f)| convex(f)) {
        pairs += routes_agree(name, &f)?;
        named += 1;
    }
    let random = random_cp3_refinements(100, 0x5eed);
    for (i, f) in random.iter().enumerate() {
        pairs += routes_agree(&format!("refined cp3 #{i}"), f)?;
    }
    Ok(format!("{pairs} (pcone, A) pairs agree on {named} corpus fans and {} random 3D fans", random.len()))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for (name, f) in fans().into_iter().filter(|(_, f)| convex(f)) {
        let rep = all_rays_in_4cycles(&f).map_err(e)?;
        for c in rep.cycles.iter().chain(rep.rays.iter().filter_map(|r| r.cycle.as_ref())) {
            ensure!(induced(&f, c), "{name}: {:?} is not induced", c.rays);
            checked += 1;
        }
    }
    let pent = fans().into_iter().find(|(n, _)| *n == "pent").ok_or("pent missing")?.1;
    let rep = all_rays_in_4cycles(&pent).map_err(e)?;
    let r4 = &rep.rays[4];
    ensure!(r4.flat_walls.is_empty(), "pent r4 flat walls {:?}", r4.flat_walls);
    ensure!(r4.cycle.is_none() && rep.unwitnessed.contains(&4), "pent r4 is witnessed");
    let sig = signature(&pent).map_err(e)?;
    ensure!(sig != 0, "pent signature is 0");
    Ok(format!("{checked} emitted cycles induced; pent r4 unwitnessed, signature {sig}"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    for n in 1..=4 {
        let r = sweep(n, 14);
        ensure!(r.errors.is_empty(), "N = {n}: {}", r.errors[0]);
        ensure!(r.compatible_not_in_oracle == 0, "N = {n}: {} compatible outputs outside brute force", r.compatible_not_in_oracle);
        ensure!(
            r.empty_oracle_with_compatible_run == 0,
            "N = {n}: {} functions with empty brute force but a compatible run",
            r.empty_oracle_with_compatible_run
        );
        details.push(format!(
            "N={n}: {} functions, {} runs, {} empty oracles, {} missed",
            r.functions, r.runs, r.empty_oracle, r.missed_functions
        ));
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(600), "took {t:?}");
    Ok(format!("{}; {:.1?}", details.join("; "), t))
}

fn worked_triple(values: [i64; 7], compatible: bool) -> Result<(), String> {
    let [b1, b2, b3, b12, b13, b23, b123] = values;
    let b = DimFunction::new(3, vec![0, b1, b2, b12, b3, b13, b23, b123]).map_err(e)?;
    let oracle = brute_force_odd_tuples(&b);
    let pi = [0, 1, 2];
    let (a, trace) = odd_tuple_algorithm(&b, &reversed(&pi)).map_err(e)?;
    let verdict = check_output_compat(&b, &a, &trace).map_err(e)?.compatible;
    let closed = p3_closed_form(&b, &pi).map_err(e)?;
    if compatible {
        ensure!(a == vec![3, 3, 3] && verdict, "{values:?}: algorithm gives {a:?}, compatible {verdict}");
        ensure!(closed.point == a && closed.compatible, "{values:?}: closed form {:?}", closed.point);
        ensure!(oracle.contains(&a), "{values:?}: (3,3,3) missing from brute force");
    } else {
        ensure!(oracle.is_empty(), "{values:?}: brute force found {oracle:?}");
        for p in permutations(3) {
            let (a, t) = odd_tuple_algorithm(&b, &p).map_err(e)?;
            ensure!(!check_output_compat(&b, &a, &t).map_err(e)?.compatible, "{values:?} {p:?}: {a:?} compatible");
        }
        ensure!(!closed.compatible, "{values:?}: closed form says compatible");
    }
    Ok(())
}

/// The closed form lists the point from `sigma(1)` on, while the run peels
/// elements off the full set, so it follows `sigma` backwards.
fn reversed(sigma: &[usize]) -> Vec<usize> {
    sigma.iter().rev().copied().collect()
}

fn criterion_6() -> Outcome {
    let mut p2_cases = 0;
    for b1 in 1..=12i64 {
        for b2 in 1..=12i64 {
            for b12 in b1.max(b2)..=(b1 + b2).min(12) {
                for c in (2..=b12).step_by(2) {
                    let r = p2_analysis(b1, b2, b12, c).map_err(e)?;
                    let exists = (1..=b1.min(c)).step_by(2).any(|x| c - x >= 1 && c - x <= b2);
                    ensure!(r.exists_odd_pair == exists, "({b1}, {b2}, {b12}) C = {c}: {} vs {exists}", r.exists_odd_pair);
                    p2_cases += 1;
                }
            }
        }
    }
    let mut p3_cases = 0;
    let mut degenerate = 0;
    let mut skipped = 0;
    let mut failure = None;
    for_each_polymatroid(3, 13, false, |b| {
        if failure.is_some() {
            return;
        }
        let oracle = brute_force_odd_tuples(b);
        for s in permutations(3) {
            match p3_closed_form(b, &s) {
                Ok(r) => {
                    p3_cases += 1;
                    let run = odd_tuple_algorithm(b, &reversed(&s)).and_then(|(a, t)| Ok((check_output_compat(b, &a, &t)?.compatible, a)));
                    match run {
                        Ok((verdict, a)) if a == r.point && verdict == r.compatible && oracle.contains(&a) == verdict => {}
                        other => {
                            failure = Some(format!("{:?} sigma {s:?}: closed form {:?}/{}, algorithm {other:?}", b.values(), r.point, r.compatible));
                            return;
                        }
                    }
                }
                Err(Error::Degenerate(_)) => degenerate += 1,
                Err(Error::Precondition(_)) => skipped += 1,
                Err(x) => {
                    failure = Some(format!("{:?} sigma {s:?}: {x}", b.values()));
                    return;
                }
            }
        }
    });
    if let Some(f) = failure {
        return Err(f);
    }
    worked_triple([4, 4, 4, 7, 7, 7, 9], true)?;
    worked_triple([3, 4, 4, 7, 7, 7, 9], true)?;
    worked_triple([3, 3, 3, 5, 5, 5, 7], false)?;
    Ok(format!(
        "{p2_cases} pair cases; {p3_cases} closed-form cases ({degenerate} degenerate, {skipped} outside the parity precondition); 3 worked triples"
    ))
}

/// Valid functions as clamped coverage functions, total of the parity of `n`.
fn random_dimfn(rng: &mut ChaCha8Rng, min_n: usize) -> DimFunction {
    let n = rng.gen_range(min_n..=5);
    let k = rng.gen_range(1..=6);
    let sets: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << k)).collect();
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    let cap = rng.gen_bool(0.5).then(|| rng.gen_range(0..=20i64).max(n as i64));
    let mut values = vec![0i64; 1 << n];
    for (m, v) in values.iter_mut().enumerate().skip(1) {
        let cover = (0..n).filter(|&j| m >> j & 1 == 1).fold(0u32, |acc, j| acc | sets[j]);
        let w: i64 = (0..k).filter(|&i| cover >> i & 1 == 1).map(|i| weights[i]).sum();
        *v = m.count_ones() as i64 + w;
        if let Some(c) = cap {
            *v = (*v).min(c);
        }
    }
    let b = DimFunction::new(n, values).expect("coverage values are nonnegative");
    if (b.total() - n as i64) % 2 != 0 {
        clamp(&b, b.total() - 1).expect("clamp")
    } else {
        b
    }
}

const SAMPLES: usize = 10_000;

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..SAMPLES {
        let b = random_dimfn(&mut rng, 1);
        ensure!(check_submodular(&b).ok(), "sample {i}: generator produced {:?}", b.values());
        let c = rng.gen_range(0..=24);
        let cb = clamp(&b, c).map_err(e)?;
        let r = check_submodular(&cb);
        ensure!(r.submodular.is_none() && r.monotone.is_none(), "clamp {c} of {:?}", b.values());
        ensure!(
            (1..1u32 << b.n()).all(|m| cb.get(m) == b.get(m).min(c)),
            "clamp {c} of {:?} gave {:?}",
            b.values(),
            cb.values()
        );
    }
    for _ in 0..SAMPLES {
        let b = random_dimfn(&mut rng, 2);
        let k = rng.gen_range(0..b.n());
        let keep: Vec<usize> = (0..b.n()).filter(|&i| i != k).collect();
        let sub = restrict(&b, &keep).map_err(e)?;
        let mut order: Vec<usize> = (0..keep.len()).collect();
        order.shuffle(&mut rng);
        let point: Vec<i64> = greedy_extreme_point(&sub, &order)
            .map_err(e)?
            .into_iter()
            .map(|x| (x - rng.gen_range(0..=3)).max(0))
            .collect();
        ensure!(naive_region(&sub, &point), "lowered point {point:?} left the region of {:?}", sub.values());
        let lifted = lift_point(&b, &point, k).map_err(e)?;
        ensure!(
            naive_region(&b, &lifted) && in_nonzero_region(&b, &lifted).map_err(e)?.inside,
            "lift of {point:?} at {k} on {:?} gave {lifted:?}",
            b.values()
        );
    }
    for _ in 0..SAMPLES {
        let b = random_dimfn(&mut rng, 1);
        let mut pi: Vec<usize> = (0..b.n()).collect();
        pi.shuffle(&mut rng);
        let v = greedy_extreme_point(&b, &pi).map_err(e)?;
        ensure!(v.iter().sum::<i64>() == b.total() && naive_region(&b, &v), "greedy {pi:?} on {:?} gave {v:?}", b.values());
    }
    for _ in 0..SAMPLES {
        let b = random_dimfn(&mut rng, 1);
        let mut pi: Vec<usize> = (0..b.n()).collect();
        pi.shuffle(&mut rng);
        let (a, trace) = odd_tuple_algorithm(&b, &pi).map_err(e)?;
        let ext = compare_to_extreme(&b, &a, &trace).map_err(e)?;
        ensure!(ext.holds, "extreme comparison fails for {pi:?} on {:?}: {:?}", b.values(), ext.rows);
        let compat = check_output_compat(&b, &a, &trace).map_err(e)?;
        ensure!(compat.compatible == naive_region(&b, &a), "verdict mismatch for {pi:?} on {:?}", b.values());
    }
    Ok(format!("clamp, lift, greedy, compare_to_extreme: {SAMPLES} functions each"))
}

fn even_fans() -> Vec<(&'static str, Fan)> {
    fans().into_iter().filter(|(_, f)| f.dim() % 2 == 0).collect()
}

fn criterion_8() -> Outcome {
    let mut names = Vec::new();
    for (name, f) in even_fans() {
        let s = signature_summary(&f).map_err(e)?;
        let direct = h_at_minus_one(&s.f);
        ensure!(s.signature == direct, "{name}: signature {} vs f-vector {direct}", s.signature);
        ensure!(h_from_gamma(&s.gamma, f.dim()) == s.h, "{name}: gamma {:?} does not expand to h", s.gamma);
        ensure!(s.signature == s.signed_top_gamma, "{name}: signature {} vs {}", s.signature, s.signed_top_gamma);
        names.push(name);
    }
    Ok(format!("holds on {}", names.join(", ")))
}

fn criterion_9() -> Outcome {
    let mut names = Vec::new();
    for (name, f) in even_fans().into_iter().filter(|(_, f)| convex(f)) {
        let sig = signature(&f).map_err(e)?;
        let empty = vanishing_monomial_suite(&f).map_err(e)?.witnesses.is_empty();
        ensure!((sig == 0) == empty, "{name}: signature {sig}, suite empty {empty}");
        names.push(format!("{name} ({sig})"));
    }
    for needed in ["sq2xsq2", "sq2xpent"] {
        ensure!(names.iter().any(|n| n.starts_with(needed)), "{needed} was not checked");
    }
    Ok(format!("holds on {}", names.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("criterion {k}: PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
