//! Simplicial fans: the data model, validation, walls, links, flagness and
//! local convexity.
//!
//! Cones are sorted ray-index sets. The maximal-cone list is kept in
//! lexicographic order, which fixes the orientation of every [`Wall`]
//! (`sigma` is the lexicographically smaller of its two cones).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    basis_completion, content, dot, primitive_rat, rank_of, to_rat_vec, BasisCompletion, IntVec, Rat, RatMat,
    RatVec,
};
use crate::istheory;

pub type ConeRef = Vec<usize>;

/// A fan given by primitive integer rays and maximal cones of size `dim`.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVec>,
    rays_q: Vec<RatVec>,
    max_cones: Vec<ConeRef>,
    faces: BTreeSet<ConeRef>,
    wall_cones: BTreeMap<ConeRef, Vec<usize>>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

/// A codimension-one cone with the two maximal cones containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub tau: ConeRef,
    pub sigma: usize,
    pub sigma_prime: usize,
    pub gamma: usize,
    pub gamma_prime: usize,
}

impl Fan {
    /// Builds a fan after shape checks: ray lengths, index ranges, cone sizes
    /// and duplicate cones. Geometric invariants are checked by [`validate`].
    pub fn new(dim: usize, rays: Vec<IntVec>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::InvalidFan(format!("ray {i} has length {}, expected {dim}", r.len())));
            }
        }
        let mut max_cones = Vec::with_capacity(cones.len());
        for c in cones {
            let mut c = c;
            c.sort_unstable();
            let n = c.len();
            c.dedup();
            if c.len() != n {
                return Err(Error::InvalidFan(format!("cone {c:?} repeats a ray")));
            }
            if c.len() != dim {
                return Err(Error::InvalidFan(format!("cone {c:?} has {} rays, expected {dim}", c.len())));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {c:?} uses unknown ray {bad}")));
            }
            max_cones.push(c);
        }
        max_cones.sort();
        if let Some(w) = max_cones.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidFan(format!("cone {:?} listed twice", w[0])));
        }
        let rays_q = rays.iter().map(|r| to_rat_vec(r)).collect();
        let mut faces = BTreeSet::new();
        let mut wall_cones: BTreeMap<ConeRef, Vec<usize>> = BTreeMap::new();
        let mut adjacency = vec![BTreeSet::new(); rays.len()];
        for (ci, c) in max_cones.iter().enumerate() {
            for mask in 0u64..(1u64 << c.len()) {
                let f: ConeRef = c.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &r)| r).collect();
                faces.insert(f);
            }
            for skip in 0..c.len() {
                let w: ConeRef = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
                wall_cones.entry(w).or_default().push(ci);
            }
            for &a in c {
                for &b in c {
                    if a != b {
                        adjacency[a].insert(b);
                    }
                }
            }
        }
        if dim == 0 {
            wall_cones.clear();
        }
        Ok(Fan { dim, rays, rays_q, max_cones, faces, wall_cones, adjacency })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVec {
        &self.rays[i]
    }

    pub fn ray_q(&self, i: usize) -> &RatVec {
        &self.rays_q[i]
    }

    pub fn max_cones(&self) -> &[ConeRef] {
        &self.max_cones
    }

    pub fn cone(&self, i: usize) -> &ConeRef {
        &self.max_cones[i]
    }

    /// True iff the sorted set `c` is a face of some maximal cone.
    pub fn is_cone(&self, c: &[usize]) -> bool {
        self.faces.contains(c)
    }

    /// All faces of size `k`, in lexicographic order.
    pub fn faces_of_size(&self, k: usize) -> Vec<ConeRef> {
        self.faces.iter().filter(|f| f.len() == k).cloned().collect()
    }

    pub fn num_faces_of_size(&self, k: usize) -> usize {
        self.faces.iter().filter(|f| f.len() == k).count()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn neighbors(&self, a: usize) -> &BTreeSet<usize> {
        &self.adjacency[a]
    }

    /// Indices of maximal cones containing every ray of `c`.
    pub fn cones_containing(&self, c: &[usize]) -> Vec<usize> {
        (0..self.max_cones.len()).filter(|&i| c.iter().all(|r| self.max_cones[i].binary_search(r).is_ok())).collect()
    }

    /// Maximal-cone indices of a wall candidate.
    pub fn wall_cones(&self, tau: &[usize]) -> Option<&[usize]> {
        self.wall_cones.get(tau).map(|v| v.as_slice())
    }

    /// The wall with the given ray set.
    pub fn wall(&self, tau: &[usize]) -> Result<Wall> {
        let cs = self.wall_cones(tau).ok_or_else(|| Error::NotACone(tau.to_vec()))?;
        if cs.len() != 2 {
            return Err(Error::NotComplete(format!("wall {tau:?} lies in {} maximal cones", cs.len())));
        }
        let (s, sp) = (cs[0], cs[1]);
        let off = |ci: usize| *self.max_cones[ci].iter().find(|r| tau.binary_search(r).is_err()).expect("cone has one more ray than its wall");
        Ok(Wall { tau: tau.to_vec(), sigma: s, sigma_prime: sp, gamma: off(s), gamma_prime: off(sp) })
    }

    /// Every wall once, ordered by ray set.
    pub fn walls(&self) -> Result<Vec<Wall>> {
        self.wall_cones.keys().map(|t| self.wall(t)).collect()
    }

    /// Vectors of the rays in `c`.
    pub fn vectors(&self, c: &[usize]) -> Vec<RatVec> {
        c.iter().map(|&i| self.rays_q[i].clone()).collect()
    }

    /// Coordinates of `v` in the ray basis of maximal cone `ci`.
    pub fn cone_coords(&self, ci: usize, v: &[Rat]) -> Option<RatVec> {
        let m = RatMat::from_rows(self.dim, &self.vectors(&self.max_cones[ci])).ok()?;
        m.transpose().solve(v)
    }
}

/// Product fan in the direct sum: rays of `a` then rays of `b`, cones are
/// unions of a cone of each factor.
pub fn product(a: &Fan, b: &Fan) -> Result<Fan> {
    let n = a.num_rays();
    let mut rays = Vec::with_capacity(n + b.num_rays());
    for r in &a.rays {
        let mut v = r.clone();
        v.extend(core::iter::repeat_n(Zero::zero(), b.dim));
        rays.push(v);
    }
    for r in &b.rays {
        let mut v: IntVec = vec![Zero::zero(); a.dim];
        v.extend(r.iter().cloned());
        rays.push(v);
    }
    let mut cones = Vec::with_capacity(a.max_cones.len() * b.max_cones.len());
    for ca in &a.max_cones {
        for cb in &b.max_cones {
            let mut c = ca.clone();
            c.extend(cb.iter().map(|&r| r + n));
            cones.push(c);
        }
    }
    Fan::new(a.dim + b.dim, rays, cones)
}

/// Stellar subdivision of the 2-cone `{a, b}` by the primitive ray along
/// `u_a + u_b`, appended as the last ray.
pub fn subdivide_edge(fan: &Fan, a: usize, b: usize) -> Result<Fan> {
    if a == b || !fan.is_cone(&{
        let mut e = vec![a, b];
        e.sort_unstable();
        e
    }) {
        return Err(Error::NotACone(vec![a, b]));
    }
    let sum: IntVec = fan.rays[a].iter().zip(&fan.rays[b]).map(|(x, y)| x + y).collect();
    let g = content(&sum);
    let w: IntVec = sum.iter().map(|x| x / &g).collect();
    let new = fan.num_rays();
    let mut rays = fan.rays.clone();
    rays.push(w);
    let mut cones = Vec::with_capacity(fan.max_cones.len() + 8);
    for c in &fan.max_cones {
        if c.binary_search(&a).is_ok() && c.binary_search(&b).is_ok() {
            for drop in [a, b] {
                let mut nc: ConeRef = c.iter().copied().filter(|&r| r != drop).collect();
                nc.push(new);
                cones.push(nc);
            }
        } else {
            cones.push(c.clone());
        }
    }
    Fan::new(fan.dim, rays, cones)
}

/// One named check of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// Simplicial with at most two cones per wall.
    pub fn is_valid(&self) -> bool {
        self.checks.iter().filter(|c| !c.name.starts_with("complete")).all(|c| c.passed)
    }

    pub fn is_complete(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &'static str, failure: Option<(Vec<usize>, String)>) -> Check {
    match failure {
        None => Check { name, passed: true, witness: None, detail: String::new() },
        Some((w, detail)) => Check { name, passed: false, witness: Some(w), detail },
    }
}

fn find_failure<I, F>(items: I, mut f: F) -> Option<(Vec<usize>, String)>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Option<(Vec<usize>, String)>,
{
    items.into_iter().find_map(|x| f(x))
}

/// Normal covector of the hyperplane spanned by a wall.
pub fn wall_normal(fan: &Fan, tau: &[usize]) -> Option<RatVec> {
    if fan.dim == 0 {
        return None;
    }
    let m = RatMat::from_rows(fan.dim, &fan.vectors(tau)).ok()?;
    let k = if tau.is_empty() { RatMat::identity(fan.dim).rows_vec() } else { m.kernel() };
    if k.len() == 1 {
        k.into_iter().next()
    } else {
        None
    }
}

/// Checks every fan invariant and reports a witness for each failure.
pub fn validate(fan: &Fan) -> ValidationReport {
    let d = fan.dim;
    let mut checks = Vec::new();
    checks.push(check(
        "rays_primitive",
        find_failure(0..fan.num_rays(), |i| {
            let g = content(&fan.rays[i]);
            (!g.is_one()).then(|| (vec![i], format!("ray {i} has content {g}")))
        }),
    ));
    checks.push(check(
        "rays_distinct",
        find_failure(0..fan.num_rays(), |i| {
            (i + 1..fan.num_rays()).find(|&j| fan.rays[i] == fan.rays[j]).map(|j| (vec![i, j], format!("rays {i} and {j} coincide")))
        }),
    ));
    let simplicial_failure = find_failure(fan.max_cones.iter(), |c| {
        (rank_of(d, &fan.vectors(c)) != d).then(|| (c.clone(), format!("rays of cone {c:?} are dependent")))
    });
    let simplicial = simplicial_failure.is_none();
    checks.push(check("simplicial", simplicial_failure));
    checks.push(check(
        "wall_multiplicity",
        find_failure(fan.wall_cones.iter(), |(w, cs)| {
            (cs.len() > 2).then(|| (w.clone(), format!("wall {w:?} lies in {} cones", cs.len())))
        }),
    ));
    checks.push(check(
        "complete_walls_closed",
        find_failure(fan.wall_cones.iter(), |(w, cs)| {
            (cs.len() != 2).then(|| (w.clone(), format!("wall {w:?} lies in {} cone(s)", cs.len())))
        }),
    ));
    let sep = if simplicial {
        find_failure(fan.wall_cones.iter(), |(w, cs)| {
            if cs.len() != 2 {
                return None;
            }
            let normal = wall_normal(fan, w)?;
            let wall = fan.wall(w).ok()?;
            let a = dot(&normal, &fan.rays_q[wall.gamma]);
            let b = dot(&normal, &fan.rays_q[wall.gamma_prime]);
            let opposite = (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive());
            (!opposite).then(|| (w.clone(), format!("off-wall rays {} and {} are not separated by wall {w:?}", wall.gamma, wall.gamma_prime)))
        })
    } else {
        Some((Vec::new(), String::from("skipped: fan not simplicial")))
    };
    checks.push(check("complete_walls_separate", sep));
    checks.push(check("complete_dual_graph_connected", dual_graph_failure(fan)));
    let sheet = if simplicial { single_sheet_failure(fan) } else { Some((Vec::new(), String::from("skipped: fan not simplicial"))) };
    checks.push(check("complete_single_sheet", sheet));
    ValidationReport { checks }
}

fn dual_graph_failure(fan: &Fan) -> Option<(Vec<usize>, String)> {
    let n = fan.max_cones.len();
    if n == 0 {
        return Some((Vec::new(), String::from("no maximal cones")));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for cs in fan.wall_cones.values() {
        for w in cs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (1..n)
        .find(|&i| find(&mut parent, i) != root)
        .map(|i| (fan.max_cones[i].clone(), format!("cone {:?} is not connected to cone {:?}", fan.max_cones[i], fan.max_cones[0])))
}

/// An interior point of the first maximal cone must lie in no other maximal
/// cone; this rules out fans that wrap around the space more than once.
fn single_sheet_failure(fan: &Fan) -> Option<(Vec<usize>, String)> {
    if fan.dim == 0 || fan.max_cones.is_empty() {
        return None;
    }
    let c0 = &fan.max_cones[0];
    let mut p = vec![Rat::zero(); fan.dim];
    for (k, &r) in c0.iter().enumerate() {
        let w = Rat::from_integer((k as i64 + 1).into());
        for (x, y) in p.iter_mut().zip(&fan.rays_q[r]) {
            *x += &w * y;
        }
    }
    (1..fan.max_cones.len()).find_map(|ci| {
        let coords = fan.cone_coords(ci, &p)?;
        coords.iter().all(|x| !x.is_negative()).then(|| {
            (fan.max_cones[ci].clone(), format!("interior point of cone {c0:?} also lies in cone {:?}", fan.max_cones[ci]))
        })
    })
}

/// Validates and returns an error naming the first failed check.
pub fn require_complete(fan: &Fan) -> Result<()> {
    let r = validate(fan);
    let out = match r.failures().next() {
        None => Ok(()),
        Some(c) if c.name.starts_with("complete") => Err(Error::NotComplete(c.detail.clone())),
        Some(c) => Err(Error::InvalidFan(format!("{}: {}", c.name, c.detail))),
    };
    out
}

/// The link of a cone with its realization in the quotient `N / span(center)`.
#[derive(Clone, Debug)]
pub struct LinkFan {
    pub center: ConeRef,
    /// Parent indices of the link rays, ascending; link-local index = position.
    pub rays: Vec<usize>,
    /// Maximal link cones in parent indices.
    pub cones: Vec<ConeRef>,
    /// The link realized as a complete fan in the quotient lattice, in local indices.
    pub quotient: Fan,
    /// Completion of the center rays; its trailing covectors project onto the quotient.
    pub completion: BasisCompletion,
    /// Positive scalars with quotient image of ray `rays[k]` = `c[k]` times its primitive image.
    pub c: Vec<Rat>,
    /// Coordinates of each link ray along the center rays.
    pub center_coords: Vec<RatVec>,
}

impl LinkFan {
    pub fn local(&self, parent_ray: usize) -> Option<usize> {
        self.rays.binary_search(&parent_ray).ok()
    }

    pub fn to_parent(&self, local: &[usize]) -> ConeRef {
        local.iter().map(|&i| self.rays[i]).collect()
    }

    pub fn to_local(&self, parent: &[usize]) -> Option<ConeRef> {
        let mut v: Vec<usize> = parent.iter().map(|&r| self.local(r)).collect::<Option<_>>()?;
        v.sort_unstable();
        Some(v)
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// Link of `center`, realized in the quotient by the deterministic basis completion.
pub fn link(fan: &Fan, center: &[usize]) -> Result<LinkFan> {
    let mut center = center.to_vec();
    center.sort_unstable();
    center.dedup();
    if !fan.is_cone(&center) {
        return Err(Error::NotACone(center));
    }
    let completion = basis_completion(fan.dim, &center.iter().map(|&i| fan.rays[i].clone()).collect::<Vec<_>>())?;
    let mut cones = Vec::new();
    let mut rayset = BTreeSet::new();
    for c in &fan.max_cones {
        if center.iter().all(|r| c.binary_search(r).is_ok()) {
            let rest: ConeRef = c.iter().copied().filter(|r| center.binary_search(r).is_err()).collect();
            rayset.extend(rest.iter().copied());
            cones.push(rest);
        }
    }
    let rays: Vec<usize> = rayset.into_iter().collect();
    let k = center.len();
    let mut images = Vec::with_capacity(rays.len());
    let mut c = Vec::with_capacity(rays.len());
    let mut center_coords = Vec::with_capacity(rays.len());
    for &r in &rays {
        let coords = completion.coords(&fan.rays_q[r]);
        let (scale, prim) = primitive_rat(&coords[k..]).map_err(|_| Error::DegenerateConormal { ray: r })?;
        images.push(prim);
        c.push(scale);
        center_coords.push(coords[..k].to_vec());
    }
    let local_cones: Vec<Vec<usize>> =
        cones.iter().map(|cone| cone.iter().map(|r| rays.binary_search(r).expect("link ray")).collect()).collect();
    let quotient = Fan::new(fan.dim - k, images, local_cones)?;
    Ok(LinkFan { center, rays, cones, quotient, completion, c, center_coords })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagReport {
    pub flag: bool,
    /// A minimal non-face of size at least three.
    pub witness: Option<ConeRef>,
}

/// Flagness: every clique of the 1-skeleton is a face.
pub fn is_flag(fan: &Fan) -> FlagReport {
    // A minimal non-face has all proper subsets as faces, so its size is at most dim + 1.
    for k in 3..=fan.dim + 1 {
        for f in fan.faces.iter().filter(|f| f.len() == k - 1) {
            let last = *f.last().expect("k - 1 >= 2");
            for &r in fan.adjacency[last].range(last + 1..) {
                if !f.iter().all(|&x| fan.adjacent(x, r)) {
                    continue;
                }
                let mut cand = f.clone();
                cand.push(r);
                if fan.is_cone(&cand) {
                    continue;
                }
                let all_sub = (0..cand.len()).all(|skip| {
                    let sub: ConeRef = cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                    fan.is_cone(&sub)
                });
                if all_sub {
                    return FlagReport { flag: false, witness: Some(cand) };
                }
            }
        }
    }
    FlagReport { flag: true, witness: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityReport {
    pub locally_convex: bool,
    /// `(ray, wall)` with positive self-intersection of the ray divisor.
    pub witness: Option<(usize, ConeRef)>,
}

/// Local convexity by the nef criterion on every star: each on-wall ray has
/// a nonpositive coefficient in the wall relation.
pub fn is_locally_convex(fan: &Fan) -> Result<ConvexityReport> {
    for w in fan.walls()? {
        let rel = istheory::wall_relation(fan, &w)?;
        for &r in &w.tau {
            if rel.coeff(r).is_positive() {
                return Ok(ConvexityReport { locally_convex: false, witness: Some((r, w.tau.clone())) });
            }
        }
    }
    Ok(ConvexityReport { locally_convex: true, witness: None })
}

pub fn require_locally_convex(fan: &Fan) -> Result<()> {
    match is_locally_convex(fan)?.witness {
        None => Ok(()),
        Some((ray, wall)) => Err(Error::NotLocallyConvex { ray, wall }),
    }
}

#[cfg(test)]
pub(crate) mod samples {
    use super::*;
    use crate::exactlin::int_vec;

    pub fn fan(d: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
        Fan::new(d, rays.iter().map(|r| int_vec(r)).collect(), cones.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    pub fn sq2() -> Fan {
        fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
    }

    pub fn pent() -> Fan {
        fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1]], &[&[0, 4], &[4, 1], &[1, 2], &[2, 3], &[3, 0]])
    }

    pub fn p2() -> Fan {
        fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
    }

    /// Rays `e1..ed, -e1..-ed`; cones are all sign choices.
    pub fn cross(d: usize) -> Fan {
        let mut rays = Vec::new();
        for s in [1i64, -1] {
            for i in 0..d {
                let mut v = vec![0i64; d];
                v[i] = s;
                rays.push(int_vec(&v));
            }
        }
        let cones = (0..1usize << d).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { i + d } else { i }).collect()).collect();
        Fan::new(d, rays, cones).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate(&sq2()).is_complete());
        assert!(validate(&pent()).is_complete());
        assert!(validate(&cross(4)).is_complete());
        let bad = fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0], &[0, 2]]);
        let r = validate(&bad);
        let c = r.checks.iter().find(|c| c.name == "simplicial").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness, Some(vec![0, 2]));
        let open = fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[3, 0]]);
        let r = validate(&open);
        assert!(r.is_valid());
        let c = r.checks.iter().find(|c| c.name == "complete_walls_closed").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness, Some(vec![2]));
    }

    #[test]
    fn double_cover_is_rejected() {
        // Nine rays about 80 degrees apart, winding twice around the origin.
        let rays: &[&[i64]] = &[&[1, 0], &[1, 6], &[-3, 1], &[-1, -2], &[4, -3], &[6, 5], &[-1, 2], &[-3, -1], &[1, -6]];
        let cones: Vec<Vec<usize>> = (0..9).map(|i| vec![i, (i + 1) % 9]).collect();
        let cones: Vec<&[usize]> = cones.iter().map(|c| c.as_slice()).collect();
        let r = validate(&fan(2, rays, &cones));
        for c in &r.checks {
            assert_eq!(c.passed, c.name != "complete_single_sheet", "{}", c.name);
        }
    }

    #[test]
    fn walls_examples() {
        let w = sq2().walls().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w[0], Wall { tau: vec![0], sigma: 0, sigma_prime: 1, gamma: 1, gamma_prime: 3 });
        assert_eq!(sq2().cone(w[0].sigma), &vec![0, 1]);
        assert_eq!(sq2().cone(w[0].sigma_prime), &vec![0, 3]);
        assert_eq!(pent().walls().unwrap().len(), 5);
        assert_eq!(cross(4).walls().unwrap().len(), 32);
    }

    #[test]
    fn link_examples() {
        let l = link(&sq2(), &[0]).unwrap();
        assert_eq!(l.rays, vec![1, 3]);
        assert_eq!(l.dim(), 1);
        assert!(validate(&l.quotient).is_complete());
        let l = link(&cross(4), &[0]).unwrap();
        assert_eq!(l.rays, vec![1, 2, 3, 5, 6, 7]);
        assert_eq!(l.cones.len(), 8);
        assert!(validate(&l.quotient).is_complete());
        assert_eq!(link(&pent(), &[4]).unwrap().rays, vec![0, 1]);
        assert!(link(&sq2(), &[0, 2]).is_err());
    }

    #[test]
    fn flag_examples() {
        assert!(is_flag(&sq2()).flag);
        assert_eq!(is_flag(&p2()), FlagReport { flag: false, witness: Some(vec![0, 1, 2]) });
        assert!(is_flag(&cross(4)).flag);
    }

    #[test]
    fn convexity_examples() {
        assert!(is_locally_convex(&sq2()).unwrap().locally_convex);
        assert!(is_locally_convex(&pent()).unwrap().locally_convex);
        assert_eq!(is_locally_convex(&p2()).unwrap().witness, Some((0, vec![0])));
    }
}
