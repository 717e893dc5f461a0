//! Structural analysis of locally convex fans through conormal restrictions:
//! special rays, flat links, suspensions, cross-polytope detection, special
//! ray covers, the p-cone dichotomy, p = d/2 certificates and induced
//! 4-cycles.
//!
//! Ray indices in reports are parent-fan indices unless a field says
//! otherwise. Subspaces of a link live in the coordinates of its quotient
//! realization (see [`crate::fan::LinkFan`]).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{basis_completion, dot, rat, Int, RatMat, RatVec, Subspace};
use crate::fan::{is_flag, require_locally_convex, ConeRef, Fan, LinkFan};
use crate::istheory::{
    cartier_data, divisor_polytope, intersection_with, is_trivial_on_walls, minkowski_dim_function, wall_relation,
    Conormal, Divisor, Polytope,
};
use crate::polymat::{DimFunction, Subset};

fn sorted_union(a: &[usize], b: &[usize]) -> ConeRef {
    let mut v: ConeRef = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn without(c: &[usize], x: usize) -> ConeRef {
    c.iter().copied().filter(|&r| r != x).collect()
}

fn check_subset(pcone: &[usize], a: &[usize]) -> Result<(ConeRef, ConeRef)> {
    let mut p = pcone.to_vec();
    p.sort_unstable();
    p.dedup();
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    if a.is_empty() {
        return Err(Error::Precondition("the ray subset A is empty".into()));
    }
    if let Some(r) = a.iter().find(|r| p.binary_search(r).is_err()) {
        return Err(Error::Precondition(format!("ray {r} of A is not in the cone {p:?}")));
    }
    Ok((p, a))
}

/// Sum over `a` of the wall-relation coefficients at the parent wall `tau`.
fn relation_sum(fan: &Fan, tau: &[usize], a: &[usize]) -> Result<Int> {
    let rel = wall_relation(fan, &fan.wall(tau)?)?;
    Ok(a.iter().map(|&j| rel.coeff(j)).sum())
}

/// One intersection step of the span route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Link wall in parent indices.
    pub wall: ConeRef,
    pub dim_after: usize,
}

/// Counts for the two necessary conditions satisfied by special rays.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionStats {
    /// Center divisors meet every wall `sigma \ gamma` trivially for special `gamma`.
    pub center_checks: usize,
    pub center_violations: usize,
    /// Non-special `delta` meets `sigma \ gamma` trivially for special `gamma` in `sigma`.
    pub cross_checks: usize,
    pub cross_violations: usize,
}

#[derive(Clone, Debug)]
pub struct SpecialRayReport {
    pub pcone: ConeRef,
    pub a: ConeRef,
    pub link_rays: Vec<usize>,
    pub special: Vec<usize>,
    pub non_special: Vec<usize>,
    /// Intersection of the spans of the non-flat link walls.
    pub subspace: Subspace,
    pub trace: Vec<TraceStep>,
    pub polytope_dim: usize,
    /// Special rays per maximal link cone, in link cone order.
    pub per_cone_counts: Vec<usize>,
    pub uniform: bool,
    /// The special rays span `subspace`.
    pub spans_subspace: bool,
    pub conditions: ConditionStats,
}

/// Special rays of `lk(pcone)` with respect to `a`, computed by the span
/// route and by the wall-condition route, which must agree.
pub fn special_rays(fan: &Fan, pcone: &[usize], a: &[usize]) -> Result<SpecialRayReport> {
    require_locally_convex(fan)?;
    special_rays_unchecked(fan, pcone, a)
}

/// [`special_rays`] without the local convexity check, for callers that did it once.
pub fn special_rays_unchecked(fan: &Fan, pcone: &[usize], a: &[usize]) -> Result<SpecialRayReport> {
    let (pcone, a) = check_subset(pcone, a)?;
    let cn = Conormal::new(fan, &pcone)?;
    let d = cn.divisor(&a)?;
    let link = &cn.link;
    let q = &link.quotient;

    let (subspace, trace) = span_route(link, &d)?;
    let poly = divisor_polytope(q, &d)?;
    if poly.direction_space.orthogonal_complement() != subspace {
        return Err(Error::Inconsistent(format!(
            "span intersection for {pcone:?} differs from the polytope complement"
        )));
    }
    let span_special: BTreeSet<usize> =
        (0..link.rays.len()).filter(|&k| subspace.contains(q.ray_q(k))).collect();

    let flat = FlatWalls::new(fan, link, &a);
    let cond_special = condition_route(fan, link, &flat)?;
    if span_special != cond_special {
        return Err(Error::Inconsistent(format!(
            "special rays of {pcone:?} w.r.t. {a:?}: span route {:?}, condition route {:?}",
            link.to_parent(&span_special.iter().copied().collect::<Vec<_>>()),
            link.to_parent(&cond_special.iter().copied().collect::<Vec<_>>())
        )));
    }

    let special: Vec<usize> = span_special.iter().map(|&k| link.rays[k]).collect();
    let non_special: Vec<usize> = link.rays.iter().copied().filter(|r| special.binary_search(r).is_err()).collect();
    let per_cone_counts: Vec<usize> =
        link.cones.iter().map(|c| c.iter().filter(|r| special.binary_search(r).is_ok()).count()).collect();
    let uniform = per_cone_counts.windows(2).all(|w| w[0] == w[1]);
    let spanned = Subspace::span(q.dim(), &span_special.iter().map(|&k| q.ray_q(k).clone()).collect::<Vec<_>>())?;
    let conditions = condition_stats(fan, link, &a, &special)?;
    Ok(SpecialRayReport {
        pcone,
        a,
        link_rays: link.rays.clone(),
        special,
        non_special,
        spans_subspace: spanned == subspace,
        subspace,
        trace,
        polytope_dim: poly.dim(),
        per_cone_counts,
        uniform,
        conditions,
    })
}

/// Special rays by intersecting the spans of the non-flat link walls alone.
pub fn special_rays_by_span(fan: &Fan, pcone: &[usize], a: &[usize]) -> Result<Vec<usize>> {
    let (pcone, a) = check_subset(pcone, a)?;
    let cn = Conormal::new(fan, &pcone)?;
    let (subspace, _) = span_route(&cn.link, &cn.divisor(&a)?)?;
    let q = &cn.link.quotient;
    Ok((0..cn.link.rays.len()).filter(|&k| subspace.contains(q.ray_q(k))).map(|k| cn.link.rays[k]).collect())
}

/// Special rays from the parent wall relations alone.
pub fn special_rays_by_conditions(fan: &Fan, pcone: &[usize], a: &[usize]) -> Result<Vec<usize>> {
    let (pcone, a) = check_subset(pcone, a)?;
    let lk = crate::fan::link(fan, &pcone)?;
    let flat = FlatWalls::new(fan, &lk, &a);
    Ok(condition_route(fan, &lk, &flat)?.into_iter().map(|k| lk.rays[k]).collect())
}

/// Breadth-first traversal of the link cones from cone 0, intersecting the
/// spans of walls the divisor meets nontrivially.
fn span_route(link: &LinkFan, d: &Divisor) -> Result<(Subspace, Vec<TraceStep>)> {
    let q = &link.quotient;
    let cd = cartier_data(q, d)?;
    let mut s = Subspace::full(q.dim());
    let mut trace = Vec::new();
    if q.max_cones().is_empty() || q.dim() == 0 {
        return Ok((s, trace));
    }
    let mut seen_cone = vec![false; q.max_cones().len()];
    let mut seen_wall = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    seen_cone[0] = true;
    while let Some(ci) = queue.pop_front() {
        let cone = q.cone(ci).clone();
        for &omega in &cone {
            let tau = without(&cone, omega);
            if !seen_wall.insert(tau.clone()) {
                continue;
            }
            let w = q.wall(&tau)?;
            if !intersection_with(q, &cd, &w).is_zero() {
                s = s.intersect(&Subspace::span(q.dim(), &q.vectors(&tau))?)?;
                trace.push(TraceStep { wall: link.to_parent(&tau), dim_after: s.dim() });
            }
            let next = if w.sigma == ci { w.sigma_prime } else { w.sigma };
            if !seen_cone[next] {
                seen_cone[next] = true;
                queue.push_back(next);
            }
        }
    }
    Ok((s, trace))
}

/// Flatness of link walls read off the parent wall relations.
struct FlatWalls<'a> {
    fan: &'a Fan,
    center: &'a [usize],
    a: &'a [usize],
    cache: core::cell::RefCell<BTreeMap<ConeRef, bool>>,
}

impl<'a> FlatWalls<'a> {
    fn new(fan: &'a Fan, link: &'a LinkFan, a: &'a [usize]) -> Self {
        FlatWalls { fan, center: &link.center, a, cache: Default::default() }
    }

    /// `tau` is a link wall in parent indices.
    fn flat(&self, tau: &[usize]) -> Result<bool> {
        if let Some(&f) = self.cache.borrow().get(tau) {
            return Ok(f);
        }
        let f = relation_sum(self.fan, &sorted_union(tau, self.center), self.a)?.is_zero();
        self.cache.borrow_mut().insert(tau.to_vec(), f);
        Ok(f)
    }
}

/// `gamma` is special iff in every link cone each ray carrying a nonzero
/// coefficient of `u_gamma` spans a flat wall with the rest of the cone.
fn condition_route(fan: &Fan, link: &LinkFan, flat: &FlatWalls) -> Result<BTreeSet<usize>> {
    let d = fan.dim();
    let mut bases = Vec::with_capacity(link.cones.len());
    for c in &link.cones {
        let full = sorted_union(c, &link.center);
        let m = RatMat::from_rows(d, &fan.vectors(&full))?.transpose();
        bases.push((full, m));
    }
    let mut out = BTreeSet::new();
    'rays: for (k, &g) in link.rays.iter().enumerate() {
        for (c, (full, m)) in link.cones.iter().zip(&bases) {
            let x = m.solve(fan.ray_q(g)).ok_or_else(|| Error::InvalidFan(format!("cone {full:?} is singular")))?;
            for (pos, &r) in full.iter().enumerate() {
                if link.center.contains(&r) || x[pos].is_zero() {
                    continue;
                }
                if !flat.flat(&without(c, r))? {
                    continue 'rays;
                }
            }
        }
        out.insert(k);
    }
    Ok(out)
}

fn condition_stats(fan: &Fan, link: &LinkFan, a: &[usize], special: &[usize]) -> Result<ConditionStats> {
    let mut st = ConditionStats::default();
    for c in &link.cones {
        for &g in c.iter().filter(|r| special.binary_search(r).is_ok()) {
            let tau = sorted_union(&without(c, g), &link.center);
            let rel = wall_relation(fan, &fan.wall(&tau)?)?;
            for &j in a {
                st.center_checks += 1;
                if !rel.coeff(j).is_zero() {
                    st.center_violations += 1;
                }
            }
            for &delta in c.iter().filter(|r| special.binary_search(r).is_err()) {
                st.cross_checks += 1;
                if !rel.coeff(delta).is_zero() {
                    st.cross_violations += 1;
                }
            }
        }
    }
    Ok(st)
}

/// Special sets of `lk(rho)` with respect to `rho`, for every ray.
pub fn ray_special_sets(fan: &Fan) -> Result<Vec<Vec<usize>>> {
    (0..fan.num_rays()).map(|r| Ok(special_rays_unchecked(fan, &[r], &[r])?.special)).collect()
}

/// First pair `(i, j)` of `pcone` with `j` special in `lk(i)`, if any.
pub fn special_pair(pcone: &[usize], specials: &[Vec<usize>]) -> Option<(usize, usize)> {
    for &i in pcone {
        for &j in pcone {
            if i != j && specials[i].binary_search(&j).is_ok() {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLinkReport {
    pub flat: bool,
    pub subspace: Option<Subspace>,
    /// Span dimensions of the maximal cones of `lk(pcone ∪ M)` in the lift.
    pub cone_span_dims: Vec<usize>,
}

/// Whether `lk(pcone ∪ M)` lifted to `N(pcone \ A)` is a vector subspace:
/// all its maximal cones span one common positive-dimensional subspace.
pub fn flat_link(fan: &Fan, pcone: &[usize], a: &[usize], m: &[usize]) -> Result<FlatLinkReport> {
    let rep = special_rays(fan, pcone, a)?;
    let mut m = m.to_vec();
    m.sort_unstable();
    m.dedup();
    let cn_link = crate::fan::link(fan, &rep.pcone)?;
    let is_block = cn_link.cones.iter().any(|c| {
        let ns: ConeRef = c.iter().copied().filter(|r| rep.non_special.binary_search(r).is_ok()).collect();
        ns == m
    });
    if !is_block {
        return Err(Error::Precondition(format!(
            "{m:?} is not the non-special part of a maximal cone of the link of {:?}",
            rep.pcone
        )));
    }
    let c_rays: ConeRef = rep.pcone.iter().copied().filter(|r| rep.a.binary_search(r).is_err()).collect();
    let d = fan.dim();
    let lift_dim = d - c_rays.len();
    let completion = if c_rays.is_empty() {
        None
    } else {
        Some(basis_completion(d, &c_rays.iter().map(|&r| fan.ray(r).clone()).collect::<Vec<_>>())?)
    };
    let lift = |r: usize| -> RatVec {
        match &completion {
            None => fan.ray_q(r).clone(),
            Some(bc) => bc.quotient_coords(fan.ray_q(r)),
        }
    };
    let base = sorted_union(&rep.pcone, &m);
    let mut spans = Vec::new();
    for ci in fan.cones_containing(&base) {
        let rest: Vec<RatVec> = fan.cone(ci).iter().filter(|r| base.binary_search(r).is_err()).map(|&r| lift(r)).collect();
        spans.push(Subspace::span(lift_dim, &rest)?);
    }
    let cone_span_dims = spans.iter().map(Subspace::dim).collect();
    let common = spans.windows(2).all(|w| w[0] == w[1]);
    let flat = common && spans.first().is_some_and(|s| s.dim() > 0);
    Ok(FlatLinkReport { flat, subspace: flat.then(|| spans[0].clone()), cone_span_dims })
}

/// Conormal restriction of `-D_r` over `cone` is zero (trivial on all link walls).
pub fn conormal_vanishes(fan: &Fan, cone: &[usize], r: usize) -> Result<bool> {
    let cn = Conormal::new(fan, cone)?;
    let d = cn.divisor(&[r])?;
    Ok(is_trivial_on_walls(&cartier_data(&cn.link.quotient, &d)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossReport {
    /// Antipodal pairs `(rho, -rho)` with `rho < -rho`.
    pub pairing: Option<Vec<(usize, usize)>>,
    /// First ray with a nonzero conormal.
    pub witness: Option<usize>,
    /// Why the pairing was not certified although all conormals vanish.
    pub failure: Option<String>,
}

/// Certifies the cross-polytope structure when every conormal vanishes.
pub fn detect_cross_polytope(fan: &Fan) -> Result<CrossReport> {
    for r in 0..fan.num_rays() {
        if !conormal_vanishes(fan, &[r], r)? {
            return Ok(CrossReport { pairing: None, witness: Some(r), failure: None });
        }
    }
    let fail = |msg: String| Ok(CrossReport { pairing: None, witness: None, failure: Some(msg) });
    let n = fan.num_rays();
    let mut partner = vec![usize::MAX; n];
    for r in 0..n {
        let neg: Vec<Int> = fan.ray(r).iter().map(|x| -x).collect();
        match (0..n).find(|&s| *fan.ray(s) == neg) {
            Some(s) => partner[r] = s,
            None => return fail(format!("ray {r} has no antipode")),
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).filter(|&r| r < partner[r]).map(|r| (r, partner[r])).collect();
    if pairs.len() != fan.dim() || 2 * pairs.len() != n {
        return fail(format!("{} antipodal pairs in dimension {}", pairs.len(), fan.dim()));
    }
    if fan.max_cones().len() != 1 << fan.dim() {
        return fail(format!("{} maximal cones, expected {}", fan.max_cones().len(), 1usize << fan.dim()));
    }
    for c in fan.max_cones() {
        if pairs.iter().any(|&(x, y)| c.contains(&x) == c.contains(&y)) {
            return fail(format!("cone {c:?} does not pick one ray per pair"));
        }
    }
    Ok(CrossReport { pairing: Some(pairs), witness: None, failure: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeReport {
    pub beta: Option<usize>,
    pub candidates: Vec<usize>,
    pub unique: bool,
    /// `u_beta + u_r` lies in the span of the remaining cone rays.
    pub antipodal: Option<bool>,
}

/// The ray `beta` replacing `r` in `pcone`: outside `lk(r)`, with vanishing
/// conormal over `pcone \ r ∪ beta` and the same link as `pcone`.
pub fn antipode_partner(fan: &Fan, pcone: &[usize], r: usize) -> Result<AntipodeReport> {
    let (pcone, _) = check_subset(pcone, &[r])?;
    if !conormal_vanishes(fan, &pcone, r)? {
        return Err(Error::Precondition(format!("the conormal restriction of ray {r} over {pcone:?} is nonzero")));
    }
    let rest = without(&pcone, r);
    let target: BTreeSet<ConeRef> = crate::fan::link(fan, &pcone)?.cones.into_iter().collect();
    let mut candidates = Vec::new();
    for beta in 0..fan.num_rays() {
        if beta == r || fan.adjacent(beta, r) || pcone.contains(&beta) {
            continue;
        }
        let cone = sorted_union(&rest, &[beta]);
        if !fan.is_cone(&cone) || !conormal_vanishes(fan, &cone, beta)? {
            continue;
        }
        let lk: BTreeSet<ConeRef> = crate::fan::link(fan, &cone)?.cones.into_iter().collect();
        if lk == target {
            candidates.push(beta);
        }
    }
    let beta = candidates.first().copied();
    let antipodal = match beta {
        None => None,
        Some(b) => {
            let sum: RatVec = fan.ray_q(b).iter().zip(fan.ray_q(r)).map(|(x, y)| x + y).collect();
            Some(Subspace::span(fan.dim(), &fan.vectors(&rest))?.contains(&sum))
        }
    };
    Ok(AntipodeReport { beta, unique: candidates.len() <= 1, candidates, antipodal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionDecomposition {
    pub ray: usize,
    pub core: Subspace,
    pub core_rays: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub residual: Vec<usize>,
    /// Residual empty and `pairs = dim lk - dim core`.
    pub valid: bool,
}

/// Splits `lk(rho)` into the span of its special rays and suspension pairs of
/// non-special rays.
pub fn suspension_structure(fan: &Fan, rho: usize) -> Result<SuspensionDecomposition> {
    require_locally_convex(fan)?;
    suspension_structure_unchecked(fan, rho)
}

pub fn suspension_structure_unchecked(fan: &Fan, rho: usize) -> Result<SuspensionDecomposition> {
    let rep = special_rays_unchecked(fan, &[rho], &[rho])?;
    let adjacent_in_link = |x: usize, y: usize| fan.is_cone(&sorted_union(&[rho], &[x, y]));
    let ns = &rep.non_special;
    let partners: Vec<Vec<usize>> =
        ns.iter().map(|&x| ns.iter().copied().filter(|&y| y != x && !adjacent_in_link(x, y)).collect()).collect();
    let mut pairs = Vec::new();
    let mut matched = BTreeSet::new();
    for (i, &x) in ns.iter().enumerate() {
        if let [y] = partners[i][..] {
            let j = ns.binary_search(&y).expect("non-special ray");
            if x < y && partners[j] == [x] {
                pairs.push((x, y));
                matched.insert(x);
                matched.insert(y);
            }
        }
    }
    let residual: Vec<usize> = ns.iter().copied().filter(|x| !matched.contains(x)).collect();
    let link_dim = fan.dim() - 1;
    let valid = residual.is_empty() && pairs.len() + rep.subspace.dim() == link_dim;
    Ok(SuspensionDecomposition { ray: rho, core: rep.subspace, core_rays: rep.special, pairs, residual, valid })
}

/// Cone or repeated suspension of a cone: non-adjacency is a perfect
/// matching on the paired rays, and every transversal with the rest is a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterStructure {
    pub pairs: Vec<(usize, usize)>,
    pub apex: Vec<usize>,
    pub holds: bool,
}

pub fn center_structure(fan: &Fan, centers: &[usize]) -> CenterStructure {
    let non_adj: Vec<Vec<usize>> = centers
        .iter()
        .map(|&x| centers.iter().copied().filter(|&y| y != x && !fan.adjacent(x, y)).collect())
        .collect();
    let mut pairs = Vec::new();
    let mut apex = Vec::new();
    let mut holds = true;
    for (i, &x) in centers.iter().enumerate() {
        match non_adj[i][..] {
            [] => apex.push(x),
            [y] => {
                let j = centers.binary_search(&y).expect("center");
                if non_adj[j] != [x] {
                    holds = false;
                } else if x < y {
                    pairs.push((x, y));
                }
            }
            _ => holds = false,
        }
    }
    if holds && pairs.len() < 16 {
        for mask in 0u32..(1 << pairs.len()) {
            let pick: Vec<usize> =
                pairs.iter().enumerate().map(|(k, &(x, y))| if mask >> k & 1 == 0 { x } else { y }).collect();
            if !fan.is_cone(&sorted_union(&apex, &pick)) {
                holds = false;
                break;
            }
        }
    } else {
        holds = false;
    }
    CenterStructure { pairs, apex, holds }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCoverReport {
    /// `(gamma, centers)` for every ray special in some ray link.
    pub centers: Vec<(usize, Vec<usize>)>,
    pub structures: Vec<CenterStructure>,
    pub structure_holds: bool,
    /// Mutually non-special adjacent pairs checked for sharing.
    pub pairs_checked: usize,
    /// `(rho1, rho2, gamma)`: different blocks yet `gamma` special for both.
    pub sharing_counterexamples: Vec<(usize, usize, usize)>,
}

/// Two mutually non-special adjacent rays lie in a common block when the
/// link of their 2-cone has a special ray with respect to both.
pub fn special_block_cover(fan: &Fan) -> Result<BlockCoverReport> {
    require_locally_convex(fan)?;
    let specials = ray_special_sets(fan)?;
    let mut centers_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (rho, s) in specials.iter().enumerate() {
        for &g in s {
            centers_of.entry(g).or_default().push(rho);
        }
    }
    let centers: Vec<(usize, Vec<usize>)> = centers_of.into_iter().collect();
    let structures: Vec<CenterStructure> = centers.iter().map(|(_, c)| center_structure(fan, c)).collect();
    let structure_holds = structures.iter().all(|s| s.holds);
    let mut pairs_checked = 0;
    let mut sharing_counterexamples = Vec::new();
    for e in fan.faces_of_size(2) {
        let (x, y) = (e[0], e[1]);
        if special_pair(&e, &specials).is_some() {
            continue;
        }
        pairs_checked += 1;
        let shared: Vec<usize> = specials[x].iter().copied().filter(|g| specials[y].binary_search(g).is_ok()).collect();
        if shared.is_empty() {
            continue;
        }
        if special_rays_unchecked(fan, &e, &e)?.special.is_empty() {
            sharing_counterexamples.extend(shared.iter().map(|&g| (x, y, g)));
        }
    }
    Ok(BlockCoverReport { centers, structures, structure_holds, pairs_checked, sharing_counterexamples })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DichotomyCase {
    VanishingConormal { ray: usize },
    /// Some ray of the cone is special in the link of another.
    Trivial { pair: (usize, usize) },
    FlatSubspace { polytope_dim: usize },
    /// Per cone ray, its special set in the link of the cone.
    AllNonspecialSuspension { specials: Vec<(usize, Vec<usize>)> },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub pcone: ConeRef,
    pub case: DichotomyCase,
    pub polytope_dim: usize,
    /// No case applies although the fan has signature zero.
    pub inconsistent: bool,
}

/// Classifies a p-cone. Cases are tried in the order: vanishing conormal,
/// trivial (not pairwise non-special), flat subspace, all non-special.
pub fn pcone_dichotomy(fan: &Fan, pcone: &[usize]) -> Result<DichotomyReport> {
    require_locally_convex(fan)?;
    let specials = ray_special_sets(fan)?;
    let signature_zero = fan.dim() % 2 == 0 && crate::gammasig::signature(fan)? == 0;
    pcone_dichotomy_with(fan, pcone, &specials, signature_zero)
}

pub fn pcone_dichotomy_with(
    fan: &Fan,
    pcone: &[usize],
    specials: &[Vec<usize>],
    signature_zero: bool,
) -> Result<DichotomyReport> {
    let (pcone, _) = check_subset(pcone, pcone)?;
    let cn = Conormal::new(fan, &pcone)?;
    let q = &cn.link.quotient;
    let total = cn.divisor(&pcone)?;
    let polytope_dim = divisor_polytope(q, &total)?.dim();
    let report = |case| Ok(DichotomyReport { pcone: pcone.clone(), case, polytope_dim, inconsistent: false });
    for (j, part) in cn.parts.iter().enumerate() {
        if is_trivial_on_walls(&cartier_data(q, part)?) {
            return report(DichotomyCase::VanishingConormal { ray: pcone[j] });
        }
    }
    if let Some(pair) = special_pair(&pcone, specials) {
        return report(DichotomyCase::Trivial { pair });
    }
    if polytope_dim < q.dim() {
        return report(DichotomyCase::FlatSubspace { polytope_dim });
    }
    let mut per_ray = Vec::new();
    for &r in &pcone {
        per_ray.push((r, special_rays_unchecked(fan, &pcone, &[r])?.special));
    }
    let common = cn.link.rays.iter().any(|x| per_ray.iter().all(|(_, s)| s.binary_search(x).is_ok()));
    if !common {
        return report(DichotomyCase::AllNonspecialSuspension { specials: per_ray });
    }
    Ok(DichotomyReport { pcone, case: DichotomyCase::None, polytope_dim, inconsistent: signature_zero })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingCertificate {
    pub order: Vec<usize>,
    /// Dimensions of the running Minkowski sums.
    pub running: Vec<usize>,
    /// First `k` (1-based) with running dimension at most `k - 1`.
    pub threshold: Option<usize>,
    /// Steps `k` whose summand adds no dimension; `omega_{P_{k-1}} ⊆ omega_{Q_k}` verified.
    pub zero_gain: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodularEquality {
    /// Mask over the tuple positions.
    pub small: Subset,
    pub large: Subset,
    pub new: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pdover2Report {
    pub tuple: Vec<usize>,
    pub b: DimFunction,
    pub orderings: Vec<OrderingCertificate>,
    /// Smallest subset (by size, then mask) with `b_S <= |S| - 1`.
    pub subset_certificate: Option<Subset>,
    /// Equality cases `b_{L ∪ k} - b_L = b_{S ∪ k} - b_S` with `S ⊊ L`, each
    /// verified as `omega_S ⊆ omega_L + omega_k`.
    pub equalities: Vec<SubmodularEquality>,
}

/// Dimension certificates for a tuple of `d/2` adjacent rays.
pub fn pdover2_certificates(fan: &Fan, tuple: &[usize]) -> Result<Pdover2Report> {
    let d = fan.dim();
    if d % 2 != 0 {
        return Err(Error::OddDimension(d));
    }
    if tuple.len() != d / 2 {
        return Err(Error::Precondition(format!("tuple has {} rays, expected {}", tuple.len(), d / 2)));
    }
    require_locally_convex(fan)?;
    let (pcone, _) = check_subset(tuple, tuple)?;
    if pcone.len() != tuple.len() {
        return Err(Error::Precondition("tuple repeats a ray".into()));
    }
    let cn = Conormal::new(fan, &pcone)?;
    let q = &cn.link.quotient;
    let pos = cn.positions(tuple)?;
    let polys: Vec<Polytope> = pos.iter().map(|&j| divisor_polytope(q, &cn.parts[j])).collect::<Result<_>>()?;
    let b = minkowski_dim_function(&polys)?;
    let n = tuple.len();
    let space = |mask: Subset| -> Result<Subspace> {
        let mut s = Subspace::zero(q.dim());
        for k in 0..n {
            if mask >> k & 1 == 1 {
                s = s.sum(&polys[k].direction_space)?;
            }
        }
        Ok(s)
    };
    let mut orderings = Vec::new();
    for order in crate::polymat::permutations(n) {
        let mut mask: Subset = 0;
        let mut running = Vec::with_capacity(n);
        let mut threshold = None;
        let mut zero_gain = Vec::new();
        for (k, &j) in order.iter().enumerate() {
            let prev = b.get(mask);
            let prev_space = space(mask)?;
            mask |= 1 << j;
            let cur = b.get(mask);
            running.push(cur as usize);
            if threshold.is_none() && cur <= k as i64 {
                threshold = Some(k + 1);
            }
            if cur == prev {
                let omega_p = prev_space.orthogonal_complement();
                let omega_q = polys[j].direction_space.orthogonal_complement();
                if !omega_q.contains_subspace(&omega_p) {
                    return Err(Error::Inconsistent(format!("zero-gain step {} without containment", k + 1)));
                }
                zero_gain.push(k + 1);
            }
        }
        orderings.push(OrderingCertificate { order: order.iter().map(|&j| tuple[j]).collect(), running, threshold, zero_gain });
    }
    let subset_certificate = (1..(1 as Subset) << n)
        .filter(|&m| b.get(m) < m.count_ones() as i64)
        .min_by_key(|&m| (m.count_ones(), m));
    if subset_certificate.is_none() {
        return Err(Error::Inconsistent(format!("no subset of {tuple:?} has a dimension deficit")));
    }
    let mut equalities = Vec::new();
    for large in 0..(1 as Subset) << n {
        for k in (0..n).filter(|&k| large >> k & 1 == 0) {
            let gain_l = b.get(large | 1 << k) - b.get(large);
            let mut small = large;
            loop {
                small = small.wrapping_sub(1) & large;
                if small == large {
                    break;
                }
                if b.get(small | 1 << k) - b.get(small) == gain_l {
                    let lhs = space(small)?.orthogonal_complement();
                    let rhs = space(large)?.orthogonal_complement().sum(&polys[k].direction_space.orthogonal_complement())?;
                    if !rhs.contains_subspace(&lhs) {
                        return Err(Error::Inconsistent("equal dimension gains without the complement relation".into()));
                    }
                    equalities.push(SubmodularEquality { small, large, new: k });
                }
                if small == 0 {
                    break;
                }
            }
        }
    }
    Ok(Pdover2Report { tuple: tuple.to_vec(), b, orderings, subset_certificate, equalities })
}

/// An induced 4-cycle `(alpha, gamma, alpha', gamma')`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourCycle {
    pub rays: [usize; 4],
}

impl FourCycle {
    /// Least rotation or reflection.
    pub fn canonical(&self) -> FourCycle {
        let r = self.rays;
        let mut best = r;
        for s in 0..4 {
            let rot = [r[s], r[(s + 1) % 4], r[(s + 2) % 4], r[(s + 3) % 4]];
            let rev = [rot[0], rot[3], rot[2], rot[1]];
            best = best.min(rot).min(rev);
        }
        FourCycle { rays: best }
    }

    /// Consecutive rays form 2-cones, opposite ones do not.
    pub fn is_induced(&self, fan: &Fan) -> bool {
        let r = self.rays;
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| r[i] != r[j]));
        distinct && (0..4).all(|i| fan.adjacent(r[i], r[(i + 1) % 4])) && !fan.adjacent(r[0], r[2]) && !fan.adjacent(r[1], r[3])
    }
}

fn flat_for(fan: &Fan, tau: &[usize], alpha: usize) -> Result<bool> {
    if !tau.contains(&alpha) {
        return Err(Error::Precondition(format!("ray {alpha} is not on the wall {tau:?}")));
    }
    Ok(wall_relation(fan, &fan.wall(tau)?)?.coeff(alpha).is_zero())
}

/// `alpha*`: the covector dual to `alpha` in the ray basis of `sigma'`.
fn dual_in_sigma_prime(fan: &Fan, tau: &[usize], alpha: usize) -> Result<(RatVec, usize, usize)> {
    let w = fan.wall(tau)?;
    let sp = fan.cone(w.sigma_prime).clone();
    let m = RatMat::from_rows(fan.dim(), &fan.vectors(&sp))?;
    let e: RatVec = sp.iter().map(|&r| if r == alpha { rat(1) } else { rat(0) }).collect();
    let dual = m.solve(&e).ok_or_else(|| Error::InvalidFan(format!("cone {sp:?} is singular")))?;
    Ok((dual, w.gamma, w.gamma_prime))
}

/// Builds the 4-cycle through a wall on which `D_alpha` is flat.
pub fn four_cycle_from_flat_wall(fan: &Fan, tau: &[usize], alpha: usize) -> Result<FourCycle> {
    if let Some(w) = is_flag(fan).witness {
        return Err(Error::NotFlag(w));
    }
    require_locally_convex(fan)?;
    four_cycle_unchecked(fan, tau, alpha)
}

fn four_cycle_unchecked(fan: &Fan, tau: &[usize], alpha: usize) -> Result<FourCycle> {
    if !flat_for(fan, tau, alpha)? {
        return Err(Error::Precondition(format!("D_{alpha} meets the wall {tau:?} nontrivially")));
    }
    let (dual, g, gp) = dual_in_sigma_prime(fan, tau, alpha)?;
    let base = without(tau, alpha);
    let cands: Vec<usize> = (0..fan.num_rays())
        .filter(|&b| b != alpha && b != g && b != gp && !base.contains(&b))
        .filter(|&b| fan.is_cone(&sorted_union(&base, &[b, g])) && fan.is_cone(&sorted_union(&base, &[b, gp])))
        .filter(|&b| dot(&dual, fan.ray_q(b)).is_negative())
        .collect();
    match cands[..] {
        [b] => {
            let c = FourCycle { rays: [alpha, g, b, gp] };
            if !c.is_induced(fan) {
                return Err(Error::Inconsistent(format!("{:?} is not an induced 4-cycle", c.rays)));
            }
            Ok(c)
        }
        [] => Err(Error::Inconsistent(format!("no ray replaces {alpha} across the wall {tau:?}"))),
        _ => Err(Error::Inconsistent(format!("rays {cands:?} all replace {alpha} across the wall {tau:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideReport {
    /// `(x, sign of <alpha*, u_x>)` for the walls `tau \ alpha ∪ x`.
    pub sides: Vec<(usize, i8)>,
    pub tau_positive: bool,
    pub replacements_on_hyperplane: bool,
    pub negative: Vec<usize>,
    pub exactly_one_negative: bool,
    pub partner_wall: Option<ConeRef>,
    /// `D_{alpha'}` meets the partner wall trivially.
    pub partner_flat: Option<bool>,
}

pub fn verify_4cycle_side_structure(fan: &Fan, tau: &[usize], alpha: usize) -> Result<SideReport> {
    require_locally_convex(fan)?;
    if !flat_for(fan, tau, alpha)? {
        return Err(Error::Precondition(format!("D_{alpha} meets the wall {tau:?} nontrivially")));
    }
    let (dual, g, gp) = dual_in_sigma_prime(fan, tau, alpha)?;
    let base = without(tau, alpha);
    let link_rays: BTreeSet<usize> = fan
        .cones_containing(&base)
        .into_iter()
        .flat_map(|ci| fan.cone(ci).clone())
        .filter(|r| !base.contains(r))
        .collect();
    let sides: Vec<(usize, i8)> = link_rays
        .iter()
        .map(|&x| {
            let v = dot(&dual, fan.ray_q(x));
            (x, if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 })
        })
        .collect();
    let sign = |x: usize| sides.iter().find(|s| s.0 == x).map(|s| s.1);
    let negative: Vec<usize> = sides.iter().filter(|s| s.1 < 0).map(|s| s.0).collect();
    let (partner_wall, partner_flat) = match negative[..] {
        [ap] => {
            let t = sorted_union(&base, &[ap]);
            let flat = match fan.wall(&t) {
                Ok(w) => Some(wall_relation(fan, &w)?.coeff(ap).is_zero()),
                Err(_) => None,
            };
            (Some(t), flat)
        }
        _ => (None, None),
    };
    Ok(SideReport {
        tau_positive: sign(alpha) == Some(1),
        replacements_on_hyperplane: sign(g) == Some(0) && sign(gp) == Some(0),
        exactly_one_negative: negative.len() == 1,
        negative,
        sides,
        partner_wall,
        partner_flat,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayWitness {
    pub ray: usize,
    pub flat_walls: Vec<ConeRef>,
    pub cycle: Option<FourCycle>,
    /// Construction failures on flat walls, as `(wall, message)`.
    pub failures: Vec<(ConeRef, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourCycleReport {
    pub rays: Vec<RayWitness>,
    pub unwitnessed: Vec<usize>,
    /// Distinct canonical cycles over all flat walls.
    pub cycles: Vec<FourCycle>,
}

/// Tries every flat wall of every ray; the first successful construction
/// witnesses the ray.
pub fn all_rays_in_4cycles(fan: &Fan) -> Result<FourCycleReport> {
    require_locally_convex(fan)?;
    let flag = is_flag(fan);
    let walls = fan.walls()?;
    let mut rays = Vec::with_capacity(fan.num_rays());
    let mut cycles = BTreeSet::new();
    for r in 0..fan.num_rays() {
        let mut wit = RayWitness { ray: r, flat_walls: Vec::new(), cycle: None, failures: Vec::new() };
        for w in walls.iter().filter(|w| w.tau.contains(&r)) {
            if !wall_relation(fan, w)?.coeff(r).is_zero() {
                continue;
            }
            wit.flat_walls.push(w.tau.clone());
            if let Some(nf) = &flag.witness {
                wit.failures.push((w.tau.clone(), format!("{}", Error::NotFlag(nf.clone()))));
                continue;
            }
            match four_cycle_unchecked(fan, &w.tau, r) {
                Ok(c) => {
                    cycles.insert(c.canonical());
                    if wit.cycle.is_none() {
                        wit.cycle = Some(c);
                    }
                }
                Err(e) => wit.failures.push((w.tau.clone(), format!("{e}"))),
            }
        }
        rays.push(wit);
    }
    let unwitnessed = rays.iter().filter(|w| w.cycle.is_none()).map(|w| w.ray).collect();
    Ok(FourCycleReport { rays, unwitnessed, cycles: cycles.into_iter().collect() })
}
