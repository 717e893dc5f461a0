//! Polymatroid dimension functions and odd exponent tuples.
//!
//! A [`DimFunction`] assigns `b_A` to every subset `A` of `[N]`, stored densely
//! by bitmask (`b_∅ = 0`). An exponent tuple `a` lies in the nonzero region
//! when `sum_{j in A} a_j <= b_A` for every `A`. Elements are 0-based; a
//! permutation `pi` lists elements in step order, so `pi[q - 1]` is the
//! element handled at step `q`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Subset = u32;

pub const MAX_N: usize = 20;

pub fn mask_of(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |m, &e| m | (1 << e))
}

pub fn elements(mask: Subset) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Subset label with 1-based digits, e.g. `{0, 2}` -> `"13"`.
pub fn subset_label(mask: Subset) -> String {
    let mut s = String::new();
    for e in elements(mask) {
        s.push_str(&format!("{}", e + 1));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimFunction {
    n: usize,
    values: Vec<i64>,
}

impl DimFunction {
    /// `values[mask]` is `b_mask`; `values[0]` must be 0 and all values nonnegative.
    pub fn new(n: usize, values: Vec<i64>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidDimFunction(format!("ground set size {n} outside 1..={MAX_N}")));
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidDimFunction(format!("expected {} values, got {}", 1usize << n, values.len())));
        }
        if values[0] != 0 {
            return Err(Error::InvalidDimFunction("value of the empty set must be 0".into()));
        }
        if let Some(m) = values.iter().position(|&v| v < 0) {
            return Err(Error::InvalidDimFunction(format!("negative value at subset {}", subset_label(m as Subset))));
        }
        Ok(DimFunction { n, values })
    }

    /// Builds from `(subset, value)` pairs; every nonempty subset must be given once.
    pub fn from_pairs(n: usize, pairs: &[(Vec<usize>, i64)]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidDimFunction(format!("ground set size {n} outside 1..={MAX_N}")));
        }
        let mut values = vec![0i64; 1 << n];
        let mut seen = vec![false; 1 << n];
        for (s, v) in pairs {
            if s.is_empty() || s.iter().any(|&e| e >= n) {
                return Err(Error::InvalidDimFunction(format!("subset {s:?} is empty or out of range")));
            }
            let m = mask_of(s) as usize;
            if seen[m] {
                return Err(Error::InvalidDimFunction(format!("subset {} given twice", subset_label(m as Subset))));
            }
            seen[m] = true;
            values[m] = *v;
        }
        if let Some(m) = (1..1usize << n).find(|&m| !seen[m]) {
            return Err(Error::InvalidDimFunction(format!("missing value for subset {}", subset_label(m as Subset))));
        }
        Self::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Subset {
        ((1u64 << self.n) - 1) as Subset
    }

    pub fn get(&self, mask: Subset) -> i64 {
        self.values[mask as usize]
    }

    pub fn total(&self) -> i64 {
        self.get(self.full())
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `b` with elements renamed by `perm` (element `e` becomes `perm[e]`).
    pub fn relabel(&self, perm: &[usize]) -> DimFunction {
        let mut values = vec![0i64; self.values.len()];
        for (m, &v) in self.values.iter().enumerate() {
            let image = elements(m as Subset).iter().fold(0usize, |acc, &e| acc | (1 << perm[e]));
            values[image] = v;
        }
        DimFunction { n: self.n, values }
    }
}

/// Result of the three invariant checks, each with its first violation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubmodularReport {
    /// `(S, T)` with `b_S + b_T < b_{S∪T} + b_{S∩T}`.
    pub submodular: Option<(Subset, Subset)>,
    /// `(R, S)` with `R ⊆ S` and `b_R > b_S`.
    pub monotone: Option<(Subset, Subset)>,
    /// `A` with `b_A < |A|`.
    pub rank: Option<Subset>,
}

impl SubmodularReport {
    pub fn ok(&self) -> bool {
        self.submodular.is_none() && self.monotone.is_none() && self.rank.is_none()
    }
}

/// Checks submodularity, monotonicity and `b_A >= |A|` through their local
/// forms, which are equivalent to the global ones.
pub fn check_submodular(b: &DimFunction) -> SubmodularReport {
    let mut r = SubmodularReport::default();
    let n = b.n;
    for s in 0..(1u32 << n) {
        for i in (0..n).filter(|&i| s >> i & 1 == 0) {
            let si = s | 1 << i;
            if r.monotone.is_none() && b.get(s) > b.get(si) {
                r.monotone = Some((s, si));
            }
            for j in (i + 1..n).filter(|&j| s >> j & 1 == 0) {
                let sj = s | 1 << j;
                if r.submodular.is_none() && b.get(si) + b.get(sj) < b.get(si | sj) + b.get(s) {
                    r.submodular = Some((si, sj));
                }
            }
        }
        if r.rank.is_none() && s != 0 && b.get(s) < s.count_ones() as i64 {
            r.rank = Some(s);
        }
    }
    r
}

pub fn require_valid(b: &DimFunction) -> Result<()> {
    let r = check_submodular(b);
    if let Some((s, t)) = r.submodular {
        return Err(Error::InvalidDimFunction(format!(
            "submodularity fails for S={}, T={}",
            subset_label(s),
            subset_label(t)
        )));
    }
    if let Some((s, t)) = r.monotone {
        return Err(Error::InvalidDimFunction(format!("monotonicity fails for {} ⊆ {}", subset_label(s), subset_label(t))));
    }
    if let Some(a) = r.rank {
        return Err(Error::InvalidDimFunction(format!("b_{} is below |A|", subset_label(a))));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionReport {
    pub inside: bool,
    pub witness: Option<Subset>,
}

/// `sum_{j in A} a_j <= b_A` for every nonempty `A`; the witness is the first
/// violated subset in mask order.
pub fn in_nonzero_region(b: &DimFunction, a: &[i64]) -> Result<RegionReport> {
    if a.len() != b.n {
        return Err(Error::Shape { expected: b.n, found: a.len() });
    }
    if a.iter().any(|&x| x < 0) {
        return Err(Error::Precondition("exponent tuples have nonnegative entries".into()));
    }
    let mut sums = vec![0i64; 1 << b.n];
    for m in 1..(1usize << b.n) {
        let low = m.trailing_zeros() as usize;
        sums[m] = sums[m & (m - 1)] + a[low];
        if sums[m] > b.values[m] {
            return Ok(RegionReport { inside: false, witness: Some(m as Subset) });
        }
    }
    Ok(RegionReport { inside: true, witness: None })
}

/// `c_A = min(C, b_A)`.
pub fn clamp(b: &DimFunction, c: i64) -> Result<DimFunction> {
    if c < 0 {
        return Err(Error::Precondition(format!("clamp bound {c} is negative")));
    }
    let values = b.values.iter().map(|&v| v.min(c)).collect();
    DimFunction::new(b.n, values)
}

/// Restriction of `b` to the elements of `keep`, renumbered in increasing order.
pub fn restrict(b: &DimFunction, keep: &[usize]) -> Result<DimFunction> {
    let n = keep.len();
    let mut values = vec![0i64; 1 << n];
    for (m, v) in values.iter_mut().enumerate() {
        let full = elements(m as Subset).iter().fold(0u32, |acc, &i| acc | 1 << keep[i]);
        *v = b.get(full);
    }
    DimFunction::new(n, values)
}

/// Appends `a_k = b_[N] - b_{[N] \ k}` to a region point of `[N] \ {k}`.
pub fn lift_point(b: &DimFunction, point: &[i64], k: usize) -> Result<Vec<i64>> {
    let n = b.n;
    if k >= n || n < 2 {
        return Err(Error::Precondition(format!("element {k} cannot be lifted in a ground set of size {n}")));
    }
    if point.len() != n - 1 {
        return Err(Error::Shape { expected: n - 1, found: point.len() });
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let sub = restrict(b, &keep)?;
    let r = in_nonzero_region(&sub, point)?;
    if let Some(w) = r.witness {
        let orig: Vec<usize> = elements(w).iter().map(|&i| keep[i]).collect();
        return Err(Error::Precondition(format!(
            "point violates the inequality for subset {}",
            subset_label(mask_of(&orig))
        )));
    }
    let mut out = vec![0i64; n];
    for (i, &e) in keep.iter().enumerate() {
        out[e] = point[i];
    }
    out[k] = b.total() - b.get(b.full() & !(1 << k));
    Ok(out)
}

fn check_perm(n: usize, pi: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if pi.len() != n || pi.iter().any(|&e| e >= n || core::mem::replace(&mut seen[e], true)) {
        return Err(Error::Precondition(format!("{pi:?} is not a permutation of {n} elements")));
    }
    Ok(())
}

/// Complements `b_{[N] \ pi([q])}` for `q = 0..=N`.
fn complement_bounds(b: &DimFunction, pi: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(pi.len() + 1);
    let mut m = b.full();
    out.push(b.get(m));
    for &e in pi {
        m &= !(1 << e);
        out.push(b.get(m));
    }
    out
}

/// `v_{pi(q)} = b_{[N] \ pi([q-1])} - b_{[N] \ pi([q])}`.
pub fn greedy_extreme_point(b: &DimFunction, pi: &[usize]) -> Result<Vec<i64>> {
    check_perm(b.n, pi)?;
    let r = complement_bounds(b, pi);
    let mut v = vec![0i64; b.n];
    for (q, &e) in pi.iter().enumerate() {
        v[e] = r[q] - r[q + 1];
    }
    Ok(v)
}

/// Full state of one run of the odd-tuple algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgorithmTrace {
    pub pi: Vec<usize>,
    /// `T_1..T_{N+1}`; `T_q` is the sum still to be assigned before step `q`.
    pub t: Vec<i64>,
    /// `R_0..R_N` with `R_q = b_{[N] \ pi([q])}`.
    pub bounds: Vec<i64>,
    /// Transition steps `w_1 < ... < w_l` (1-based), where `T_w > R_w`.
    pub blocks: Vec<usize>,
    /// `eps_0..eps_l`: 1 when `R_{w_i}` has the parity opposite to `N - w_i`.
    pub parity_flags: Vec<i64>,
    /// `mu_i = a_{pi(w_i)} - (R_{w_{i-1}} - R_{w_i} - (w_i - w_{i-1} - 1))`.
    pub mus: Vec<i64>,
    /// `alpha_i`: 1 when `R_{w_{i-1}}` has the parity opposite to `N - w_{i-1}`.
    pub alphas: Vec<i64>,
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

/// Runs the odd-tuple recurrence along `pi` and returns the tuple (indexed by
/// element) with its trace.
pub fn odd_tuple_algorithm(b: &DimFunction, pi: &[usize]) -> Result<(Vec<i64>, AlgorithmTrace)> {
    require_valid(b)?;
    odd_tuple_algorithm_unchecked(b, pi)
}

/// [`odd_tuple_algorithm`] for a function already known to be valid.
pub fn odd_tuple_algorithm_unchecked(b: &DimFunction, pi: &[usize]) -> Result<(Vec<i64>, AlgorithmTrace)> {
    check_perm(b.n, pi)?;
    let n = b.n as i64;
    if odd(b.total()) != odd(n) {
        return Err(Error::ParityMismatch { n: b.n, total: b.total() });
    }
    let bounds = complement_bounds(b, pi);
    let mut t = vec![b.total()];
    let mut a = vec![0i64; b.n];
    let mut blocks = Vec::new();
    for q in 1..=b.n {
        let tq = t[q - 1];
        let r = bounds[q];
        let next = if tq <= r {
            tq - 1
        } else {
            blocks.push(q);
            if (tq - r) % 2 == 0 {
                r - 1
            } else {
                r
            }
        };
        a[pi[q - 1]] = tq - next;
        t.push(next);
    }
    let flag = |w: usize| -> i64 { i64::from(odd(bounds[w]) != odd(n - w as i64)) };
    let mut parity_flags = vec![flag(0)];
    let mut mus = Vec::new();
    let mut alphas = Vec::new();
    let mut prev = 0usize;
    for &w in &blocks {
        parity_flags.push(flag(w));
        let mu = a[pi[w - 1]] - (bounds[prev] - bounds[w] - (w - prev - 1) as i64);
        let table = parity_flags[parity_flags.len() - 1] - parity_flags[parity_flags.len() - 2];
        if mu != table {
            return Err(Error::Inconsistent(format!("parity adjustment at step {w} is {mu}, table gives {table}")));
        }
        mus.push(mu);
        alphas.push(flag(prev));
        prev = w;
    }
    let trace = AlgorithmTrace { pi: pi.to_vec(), t, bounds, blocks, parity_flags, mus, alphas };
    if let Some(q) = (1..=b.n).find(|&q| trace.t[q - 1] - trace.t[q] <= 0 || !odd(trace.t[q - 1] - trace.t[q])) {
        return Err(Error::Degenerate(format!(
            "entry for element {} at step {q} is {} (T = {:?})",
            pi[q - 1] + 1,
            trace.t[q - 1] - trace.t[q],
            trace.t
        )));
    }
    if trace.t[b.n] != 0 {
        return Err(Error::Inconsistent(format!("running total ends at {}", trace.t[b.n])));
    }
    Ok((a, trace))
}

/// One step of a subset ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerStep {
    pub element: usize,
    /// Step of the element in the run (1-based).
    pub step: usize,
    pub transition: bool,
    /// `b_{A ∪ j} - b_A - a_j`.
    pub change: i64,
    /// For transition steps: `(b_{A ∪ j} - b_A) - (R_{q-1} - R_q)`, nonnegative by submodularity.
    pub submodular_slack: i64,
    /// For transition steps: `(R_{q-1} - R_q) - a_j`.
    pub extreme_slack: i64,
    pub running: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetLedger {
    pub subset: Subset,
    /// `b_{j_1} - a_{j_1}` for the element handled last in the run.
    pub initial: i64,
    pub steps: Vec<LedgerStep>,
    pub final_difference: i64,
    pub negative_changes: usize,
    pub positive_total: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub compatible: bool,
    pub ledgers: Vec<SubsetLedger>,
    /// First subset whose final difference is negative.
    pub witness: Option<Subset>,
}

/// Running-total ledger of `b_S - sum_{j in S} a_j` for every subset, adding
/// elements in decreasing step order.
pub fn check_output_compat(b: &DimFunction, a: &[i64], trace: &AlgorithmTrace) -> Result<CompatReport> {
    if a.len() != b.n || trace.pi.len() != b.n {
        return Err(Error::Shape { expected: b.n, found: a.len() });
    }
    let mut pos = vec![0usize; b.n];
    for (q, &e) in trace.pi.iter().enumerate() {
        pos[e] = q + 1;
    }
    let mut ledgers = Vec::with_capacity((1 << b.n) - 1);
    let mut witness = None;
    let by_step: Vec<usize> = trace.pi.iter().rev().copied().collect();
    let mut elems = Vec::with_capacity(b.n);
    for s in 1..(1u32 << b.n) {
        elems.clear();
        elems.extend(by_step.iter().copied().filter(|&e| s >> e & 1 == 1));
        let first = elems[0];
        let initial = b.get(1 << first) - a[first];
        let mut acc: Subset = 1 << first;
        let mut running = initial;
        let mut steps = Vec::with_capacity(elems.len() - 1);
        let (mut negatives, mut positive_total) = (0usize, initial);
        for &j in &elems[1..] {
            let q = pos[j];
            let inc = b.get(acc | 1 << j) - b.get(acc);
            let change = inc - a[j];
            let transition = trace.blocks.contains(&q);
            let ext = trace.bounds[q - 1] - trace.bounds[q];
            let (submodular_slack, extreme_slack) = if transition { (inc - ext, ext - a[j]) } else { (0, 0) };
            running += change;
            acc |= 1 << j;
            if change < 0 {
                negatives += (-change) as usize;
            } else {
                positive_total += change;
            }
            steps.push(LedgerStep { element: j, step: q, transition, change, submodular_slack, extreme_slack, running });
        }
        debug_assert_eq!(running, b.get(s) - elems.iter().map(|&e| a[e]).sum::<i64>());
        if running < 0 && witness.is_none() {
            witness = Some(s);
        }
        ledgers.push(SubsetLedger {
            subset: s,
            initial,
            steps,
            final_difference: running,
            negative_changes: negatives,
            positive_total,
        });
    }
    let compatible = witness.is_none();
    let region = in_nonzero_region(b, a)?;
    if region.inside != compatible {
        return Err(Error::Inconsistent("ledger verdict disagrees with the region test".into()));
    }
    Ok(CompatReport { compatible, ledgers, witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeRow {
    pub w: usize,
    pub a: i64,
    /// `b_{[N] \ pi([w-1])} - b_{[N] \ pi([w])}`.
    pub bound: i64,
    /// Offset from the parity of `b_{[N] \ pi([w_i])}`.
    pub alpha: i64,
    /// Offset from the parity of `b_{[N] \ pi([w_{i-1}])}`.
    pub alpha_previous: i64,
    pub holds: bool,
    pub holds_with_previous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeReport {
    pub rows: Vec<ExtremeRow>,
    pub holds: bool,
    pub violations_with_previous: usize,
}

/// Compares each transition value with the extreme-point increment:
/// `a_{pi(w_i)} - alpha_i <= b_{[N] \ pi([w_i - 1])} - b_{[N] \ pi([w_i])}`.
pub fn compare_to_extreme(b: &DimFunction, a: &[i64], trace: &AlgorithmTrace) -> Result<ExtremeReport> {
    if a.len() != b.n {
        return Err(Error::Shape { expected: b.n, found: a.len() });
    }
    let mut rows = Vec::new();
    for (i, &w) in trace.blocks.iter().enumerate() {
        let aw = a[trace.pi[w - 1]];
        let bound = trace.bounds[w - 1] - trace.bounds[w];
        let alpha = trace.parity_flags[i + 1];
        let alpha_previous = trace.alphas[i];
        rows.push(ExtremeRow {
            w,
            a: aw,
            bound,
            alpha,
            alpha_previous,
            holds: aw - alpha <= bound,
            holds_with_previous: aw - alpha_previous <= bound,
        });
    }
    let holds = rows.iter().all(|r| r.holds);
    let violations_with_previous = rows.iter().filter(|r| !r.holds_with_previous).count();
    Ok(ExtremeReport { rows, holds, violations_with_previous })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Report {
    pub exists_odd_pair: bool,
    pub entry_point: (i64, i64),
    pub exit_point: (i64, i64),
    pub witness: Option<(i64, i64)>,
}

/// Odd pairs on the segment `a_1 + a_2 = C` inside the region of `(b1, b2, b12)`.
pub fn p2_analysis(b1: i64, b2: i64, b12: i64, c: i64) -> Result<P2Report> {
    if c < 2 || c % 2 != 0 {
        return Err(Error::Precondition(format!("C = {c} must be even and at least 2")));
    }
    if c > b12 {
        return Err(Error::Precondition(format!("C = {c} exceeds b12 = {b12}")));
    }
    if b1 < 1 || b2 < 1 || b12 > b1 + b2 || b12 < b1.max(b2) {
        return Err(Error::Precondition(format!("({b1}, {b2}, {b12}) is not a valid pair of dimensions")));
    }
    let lo = (c - b2).max(0);
    let hi = b1.min(c);
    let exists = c < b1 + b2 || (c == b1 + b2 && odd(b1) && odd(b2));
    let witness = (lo..=hi).find(|&x| odd(x) && odd(c - x)).map(|x| (x, c - x));
    if witness.is_some() != exists {
        return Err(Error::Inconsistent(format!("odd-pair verdict for ({b1}, {b2}, {b12}, {c}) disagrees with the segment")));
    }
    Ok(P2Report { exists_odd_pair: exists, entry_point: (lo, c - lo), exit_point: (hi, c - hi), witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P3Report {
    pub part: u8,
    /// Point indexed by element.
    pub point: Vec<i64>,
    pub conditions: Vec<Condition>,
    pub compatible: bool,
}

/// Closed form for `N = 3` with all `b_[3] - b_{[3] \ l}` even.
pub fn p3_closed_form(b: &DimFunction, sigma: &[usize]) -> Result<P3Report> {
    if b.n != 3 {
        return Err(Error::Precondition(format!("closed form needs N = 3, got {}", b.n)));
    }
    require_valid(b)?;
    check_perm(3, sigma)?;
    let total = b.total();
    if !odd(total) {
        return Err(Error::Precondition(format!("b_123 = {total} is even")));
    }
    for l in 0..3 {
        if odd(total - b.get(b.full() & !(1 << l))) {
            return Err(Error::Precondition(format!(
                "b_123 - b_[3]\\{} is odd; set a_{} from it and reduce with lift_point",
                l + 1,
                l + 1
            )));
        }
    }
    let (s1, s2, s3) = (sigma[0], sigma[1], sigma[2]);
    let name = |m: Subset| subset_label(m);
    let b1 = b.get(1 << s1);
    let b3 = b.get(1 << s3);
    let b12 = b.get(1 << s1 | 1 << s2);
    let b13 = b.get(1 << s1 | 1 << s3);
    let b23 = b.get(1 << s2 | 1 << s3);
    let mut point = vec![0i64; 3];
    let cond = |label: String, lhs: i64, rhs: i64| Condition { label, lhs, rhs, holds: lhs <= rhs };
    let first = cond(format!("b_123 - b_{} <= b_{} - 1", name(1 << s2 | 1 << s3), name(1 << s1)), total - b23, b1 - 1);
    let second = cond(format!("b_123 - b_{} <= b_{} - 1", name(1 << s1 | 1 << s2), name(1 << s3)), total - b12, b3 - 1);
    let (part, conditions) = if !odd(b1) {
        point[s1] = b1 - 1;
        point[s2] = b12 - b1;
        point[s3] = total - b12 + 1;
        (1u8, vec![first, second])
    } else {
        if b12 == b1 {
            return Err(Error::Degenerate(format!(
                "b_{} = b_{} makes the closed-form entry for element {} equal to -1",
                name(1 << s1 | 1 << s2),
                name(1 << s1),
                s2 + 1
            )));
        }
        point[s1] = b1;
        point[s2] = b12 - b1 - 1;
        point[s3] = total - b12 + 1;
        let third = cond(
            format!("b_123 - b_{} <= b_{} - b_{} - 1", name(1 << s1 | 1 << s2), name(1 << s1 | 1 << s3), name(1 << s1)),
            total - b12,
            b13 - b1 - 1,
        );
        (2u8, vec![first, second, third])
    };
    let compatible = conditions.iter().all(|c| c.holds);
    Ok(P3Report { part, point, conditions, compatible })
}

/// All odd tuples summing to `b_[N]` inside the region, in lexicographic order.
pub fn brute_force_odd_tuples(b: &DimFunction) -> Vec<Vec<i64>> {
    let n = b.n;
    let mut out = Vec::new();
    if odd(b.total()) != odd(n as i64) {
        return out;
    }
    let mut a = vec![0i64; n];
    let mut sums = vec![0i64; 1 << n];
    fn rec(b: &DimFunction, k: usize, a: &mut Vec<i64>, sums: &mut Vec<i64>, used: i64, out: &mut Vec<Vec<i64>>) {
        let n = b.n;
        if k == n {
            if used == b.total() {
                out.push(a.clone());
            }
            return;
        }
        let remaining_min = (n - k - 1) as i64;
        let cap = b.get(1 << k).min(b.total() - used - remaining_min);
        let mut v = 1;
        while v <= cap {
            // Subsets whose largest element is k.
            let ok = (0..1usize << k).all(|lower| {
                let m = lower | 1 << k;
                let s = sums[lower] + v;
                sums[m] = s;
                s <= b.values[m]
            });
            if ok {
                a[k] = v;
                rec(b, k + 1, a, sums, used + v, out);
            }
            v += 2;
        }
    }
    rec(b, 0, &mut a, &mut sums, 0, &mut out);
    out
}

/// Calls `f` on every valid dimension function on `[n]` with `b_[n] <= max_total`.
/// With `canonical`, only the lexicographically least member of each orbit
/// under relabeling is visited (values compared by subset size, then mask).
pub fn for_each_polymatroid<F: FnMut(&DimFunction)>(n: usize, max_total: i64, canonical: bool, mut f: F) {
    let order = mask_order(n);
    let tables = preimage_tables(n);
    let mut values = vec![0i64; 1 << n];
    fn rec<F: FnMut(&DimFunction)>(
        n: usize,
        idx: usize,
        order: &[usize],
        tables: &[Vec<usize>],
        max_total: i64,
        canonical: bool,
        values: &mut Vec<i64>,
        f: &mut F,
    ) {
        if idx == order.len() {
            if !canonical || is_canonical(values, order, tables) {
                f(&DimFunction { n, values: values.clone() });
            }
            return;
        }
        let m = order[idx];
        let size = m.count_ones() as i64;
        let mut lo = size;
        let mut hi = max_total;
        let bits: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
        for &i in &bits {
            lo = lo.max(values[m & !(1 << i)]);
        }
        for x in 0..bits.len() {
            for y in x + 1..bits.len() {
                let (i, j) = (bits[x], bits[y]);
                hi = hi.min(values[m & !(1 << i)] + values[m & !(1 << j)] - values[m & !(1 << i) & !(1 << j)]);
            }
        }
        if canonical && size == 1 && m > 1 {
            lo = lo.max(values[m >> 1]);
        }
        for v in lo..=hi {
            values[m] = v;
            rec(n, idx + 1, order, tables, max_total, canonical, values, f);
        }
        values[m] = 0;
    }
    rec(n, 0, &order, &tables, max_total, canonical, &mut values, &mut f);
}

fn mask_order(n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (1..1usize << n).collect();
    order.sort_by_key(|&m| (m.count_ones(), m));
    order
}

/// For each relabeling, `t[m]` is the mask whose value lands on `m`.
fn preimage_tables(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
        .iter()
        .map(|p| (0..1usize << n).map(|m| (0..n).filter(|&e| m >> p[e] & 1 == 1).fold(0, |acc, e| acc | 1 << e)).collect())
        .collect()
}

fn is_canonical(values: &[i64], order: &[usize], tables: &[Vec<usize>]) -> bool {
    tables.iter().all(|t| {
        for &m in order {
            let (own, other) = (values[m], values[t[m]]);
            if own != other {
                return own < other;
            }
        }
        true
    })
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}
