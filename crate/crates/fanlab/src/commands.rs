//! Command implementations shared by the binary and the test suites.

use std::path::Path;

use fanlab_core::fan::{is_flag, is_locally_convex, require_locally_convex, validate, Fan};
use fanlab_core::gammasig::{signature, signature_summary, signature_zero_predicate};
use fanlab_core::polymat::{
    brute_force_odd_tuples, check_output_compat, compare_to_extreme, for_each_polymatroid, in_nonzero_region, odd_tuple_algorithm, odd_tuple_algorithm_unchecked,
    permutations, require_valid, DimFunction,
};
use fanlab_core::structure::{
    all_rays_in_4cycles, detect_cross_polytope, pcone_dichotomy_with, ray_special_sets, special_block_cover,
    special_rays_unchecked, suspension_structure_unchecked,
};
use fanlab_core::Error;
use rayon::prelude::*;

use crate::error::CliError;
use crate::report::*;
use crate::schema::read_fan;

pub const THREADS_VAR: &str = "FANLAB_THREADS";

/// Sizes the global worker pool from `threads`, else from `FANLAB_THREADS`.
pub fn configure_threads(threads: Option<usize>) -> Result<(), CliError> {
    let n = match threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_VAR) {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| CliError::Schema(format!("{THREADS_VAR}={s:?} is not a count")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        // A pool already built by an earlier call keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

pub fn validate_fan(fan: &Fan) -> Result<ValidateReport, CliError> {
    let v = validate(fan);
    if !v.is_complete() {
        return Ok(ValidateReport::new(&v, None, None));
    }
    let flag = is_flag(fan);
    let conv = is_locally_convex(fan)?;
    Ok(ValidateReport::new(&v, Some(&flag), Some(&conv)))
}

/// Reads a fan and rejects it unless it is a complete simplicial fan.
pub fn load_fan(path: &Path) -> Result<Fan, CliError> {
    let fan = read_fan(path)?;
    let v = validate(&fan);
    if let Some(c) = v.failures().next() {
        return Err(CliError::Predicate(format!("{}: check {} failed: {}", path.display(), c.name, c.detail)));
    }
    Ok(fan)
}

fn resolve_p_max(fan: &Fan, p_max: Option<usize>) -> Result<usize, CliError> {
    let cap = fan.dim() / 2;
    match p_max {
        None => Ok(cap),
        Some(p) if (1..=cap).contains(&p) => Ok(p),
        Some(p) => Err(Error::Precondition(format!("p_max = {p} must lie in 1..={cap}")).into()),
    }
}

fn pcones(fan: &Fan, p_max: usize) -> Vec<Vec<usize>> {
    (1..=p_max).flat_map(|p| fan.faces_of_size(p)).collect()
}

fn nonempty_subsets(c: &[usize]) -> Vec<Vec<usize>> {
    (1u32..1 << c.len()).map(|m| (0..c.len()).filter(|&i| m >> i & 1 == 1).map(|i| c[i]).collect()).collect()
}

pub fn signature_report(fan: &Fan) -> Result<SignatureReport, CliError> {
    let s = signature_summary(fan)?;
    let p = signature_zero_predicate(fan)?;
    Ok(SignatureReport::new(fan.dim(), &s, &p))
}

pub fn special_rays_report(fan: &Fan, p_max: Option<usize>) -> Result<SpecialRaysReport, CliError> {
    require_locally_convex(fan)?;
    let p_max = resolve_p_max(fan, p_max)?;
    let jobs: Vec<(Vec<usize>, Vec<usize>)> =
        pcones(fan, p_max).into_iter().flat_map(|pc| nonempty_subsets(&pc).into_iter().map(move |a| (pc.clone(), a))).collect();
    let entries = jobs
        .par_iter()
        .map(|(pc, a)| special_rays_unchecked(fan, pc, a).map(|r| SpecialEntry::from(&r)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpecialRaysReport { p_max, entries })
}

pub fn suspensions_report(fan: &Fan) -> Result<SuspensionsReport, CliError> {
    require_locally_convex(fan)?;
    let cross = detect_cross_polytope(fan)?;
    let rays = (0..fan.num_rays())
        .into_par_iter()
        .map(|r| suspension_structure_unchecked(fan, r).map(|s| SuspensionDto::from(&s)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuspensionsReport { cross_polytope: CrossDto::from(&cross), rays })
}

pub fn four_cycles_report(fan: &Fan) -> Result<FourCyclesReport, CliError> {
    Ok(FourCyclesReport::from(&all_rays_in_4cycles(fan)?))
}

pub fn blocks_report(fan: &Fan) -> Result<BlocksReport, CliError> {
    Ok(BlocksReport::from(&special_block_cover(fan)?))
}

pub fn dichotomy_report(fan: &Fan, p_max: Option<usize>) -> Result<DichotomyListReport, CliError> {
    require_locally_convex(fan)?;
    let p_max = resolve_p_max(fan, p_max)?;
    let sig = if fan.dim() % 2 == 0 { Some(signature(fan)?) } else { None };
    let specials = ray_special_sets(fan)?;
    let entries = pcones(fan, p_max)
        .par_iter()
        .map(|pc| pcone_dichotomy_with(fan, pc, &specials, sig == Some(0)).map(|r| DichotomyEntry::from(&r)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DichotomyListReport { p_max, signature: sig, entries })
}

/// Parses `"123"` (digits) or `"1,2,3"` into a 0-based permutation of `[n]`.
pub fn parse_perm(s: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let parts: Option<Vec<usize>> = if s.contains(',') {
        s.split(',').map(|x| x.trim().parse::<usize>().ok()).collect()
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    let bad = || CliError::Schema(format!("{s:?} is not a permutation of 1..={n}"));
    let p = parts.ok_or_else(bad)?;
    let mut seen = vec![false; n];
    if p.len() != n || p.iter().any(|&x| x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true)) {
        return Err(bad());
    }
    Ok(p.into_iter().map(|x| x - 1).collect())
}

pub fn oddtuple_report(b: &DimFunction, perms: &[Vec<usize>], oracle: bool) -> Result<OddTupleReport, CliError> {
    require_valid(b)?;
    let runs = perms
        .par_iter()
        .map(|pi| -> Result<RunDto, Error> {
            let (a, trace) = odd_tuple_algorithm(b, pi)?;
            let compat = check_output_compat(b, &a, &trace)?;
            let ext = compare_to_extreme(b, &a, &trace)?;
            Ok(RunDto::new(&a, &trace, &compat, &ext))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let oracle = oracle.then(|| {
        let tuples = brute_force_odd_tuples(b);
        let agree = runs.iter().all(|r| r.compatible == tuples.contains(&r.tuple));
        OracleDto { tuples, agree }
    });
    Ok(OddTupleReport { n: b.n(), total: b.total(), runs, oracle })
}

/// The compatibility verdict is the region test, which is what the subset
/// ledgers of `check_output_compat` reduce to; the ledgers themselves are skipped.
fn sweep_one(b: &DimFunction, perms: &[Vec<usize>]) -> SweepReport {
    let mut r = SweepReport { functions: 1, ..Default::default() };
    let oracle = brute_force_odd_tuples(b);
    let mut any_compatible = false;
    for pi in perms {
        let run = odd_tuple_algorithm_unchecked(b, pi).and_then(|(a, _)| Ok((in_nonzero_region(b, &a)?.inside, a)));
        match run {
            Ok((compatible, a)) => {
                r.runs += 1;
                let listed = oracle.contains(&a);
                if compatible {
                    r.compatible_runs += 1;
                    any_compatible = true;
                    r.compatible_not_in_oracle += usize::from(!listed);
                } else {
                    r.incompatible_in_oracle += usize::from(listed);
                }
            }
            Err(Error::ParityMismatch { .. }) => {
                r.parity_skipped = 1;
                break;
            }
            Err(e) => r.errors.push(format!("{:?} {pi:?}: {e}", b.values())),
        }
    }
    if oracle.is_empty() {
        r.empty_oracle = 1;
        r.empty_oracle_with_compatible_run = usize::from(any_compatible);
    } else if r.parity_skipped == 0 && !any_compatible {
        r.missed_functions = 1;
    }
    r
}

/// Runs every permutation on every valid function on `[n]` with
/// `b_[n] <= max_total` (one per relabeling orbit) and compares with brute force.
pub fn sweep(n: usize, max_total: i64) -> SweepReport {
    const CHUNK: usize = 1 << 14;
    let mut total = SweepReport { n, max_total, ..Default::default() };
    let mut batch = Vec::with_capacity(CHUNK);
    let perms = permutations(n);
    let flush = |batch: &mut Vec<DimFunction>, total: &mut SweepReport| {
        let parts: Vec<SweepReport> = batch.par_iter().map(|b| sweep_one(b, &perms)).collect();
        for p in parts {
            total.functions += p.functions;
            total.parity_skipped += p.parity_skipped;
            total.runs += p.runs;
            total.compatible_runs += p.compatible_runs;
            total.compatible_not_in_oracle += p.compatible_not_in_oracle;
            total.incompatible_in_oracle += p.incompatible_in_oracle;
            total.empty_oracle += p.empty_oracle;
            total.empty_oracle_with_compatible_run += p.empty_oracle_with_compatible_run;
            total.missed_functions += p.missed_functions;
            total.errors.extend(p.errors);
        }
        batch.clear();
    };
    for_each_polymatroid(n, max_total, true, |b| {
        batch.push(b.clone());
        if batch.len() == CHUNK {
            flush(&mut batch, &mut total);
        }
    });
    flush(&mut batch, &mut total);
    total
}
