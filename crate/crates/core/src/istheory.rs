//! Intersection numbers of torus-invariant divisors with wall curves.
//!
//! Intersection numbers are computed up to a positive rational factor per
//! wall, so only their sign and vanishing are meaningful. Two independent
//! routes exist: the kernel of the wall relation, and the pairing of the
//! Cartier data of neighbouring cones.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{dot, sub_vec, Int, Rat, RatMat, RatVec, Subspace};
use crate::fan::{link, ConeRef, Fan, LinkFan, Wall};
use crate::polymat::DimFunction;

/// `D = sum a_rho D_rho`, indexed by ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub coeffs: Vec<Rat>,
}

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor { coeffs: vec![Rat::zero(); n] }
    }

    pub fn ray(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.coeffs[i] = Rat::one();
        d
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Divisor { coeffs: v.iter().map(|&x| Rat::from_integer(x.into())).collect() }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// The primitive relation among the rays of the two cones at a wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRelation {
    pub wall: Wall,
    /// Sorted rays of `sigma ∪ sigma'`.
    pub rays: Vec<usize>,
    pub coeffs: Vec<Int>,
}

impl WallRelation {
    pub fn coeff(&self, ray: usize) -> Int {
        match self.rays.binary_search(&ray) {
            Ok(k) => self.coeffs[k].clone(),
            Err(_) => Int::zero(),
        }
    }
}

pub fn wall_relation(fan: &Fan, wall: &Wall) -> Result<WallRelation> {
    let mut rays = wall.tau.clone();
    rays.push(wall.gamma);
    rays.push(wall.gamma_prime);
    rays.sort_unstable();
    let m = RatMat::from_rows(fan.dim(), &fan.vectors(&rays))?.transpose();
    let k = m.kernel();
    if k.len() != 1 {
        return Err(Error::InvalidFan(alloc::format!("wall {:?} has a {}-dimensional relation space", wall.tau, k.len())));
    }
    let v = &k[0];
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let mut ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(Int::zero(), |g, x| g.gcd(x));
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    let gpos = rays.binary_search(&wall.gamma).expect("gamma is in the relation");
    if ints[gpos].is_negative() {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    let gp = rays.binary_search(&wall.gamma_prime).expect("gamma' is in the relation");
    if !ints[gpos].is_positive() || !ints[gp].is_positive() {
        return Err(Error::InvalidFan(alloc::format!("off-wall rays of wall {:?} are not separated", wall.tau)));
    }
    Ok(WallRelation { wall: wall.clone(), rays, coeffs: ints })
}

/// `m_sigma` per maximal cone with `<m_sigma, u_rho> = -a_rho` on `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierData {
    pub m: Vec<RatVec>,
}

pub fn cartier_data(fan: &Fan, d: &Divisor) -> Result<CartierData> {
    if d.coeffs.len() != fan.num_rays() {
        return Err(Error::Shape { expected: fan.num_rays(), found: d.coeffs.len() });
    }
    let mut m = Vec::with_capacity(fan.max_cones().len());
    for c in fan.max_cones() {
        if fan.dim() == 0 {
            m.push(Vec::new());
            continue;
        }
        let u = RatMat::from_rows(fan.dim(), &fan.vectors(c))?;
        let rhs: RatVec = c.iter().map(|&r| -d.coeffs[r].clone()).collect();
        let sol = u.solve(&rhs).ok_or_else(|| Error::InvalidFan(alloc::format!("cone {c:?} is not simplicial")))?;
        m.push(sol);
    }
    Ok(CartierData { m })
}

/// `<m_sigma - m_sigma', u_gamma'>` from precomputed Cartier data.
pub fn intersection_with(fan: &Fan, cd: &CartierData, wall: &Wall) -> Rat {
    if fan.dim() == 0 {
        return Rat::zero();
    }
    dot(&sub_vec(&cd.m[wall.sigma], &cd.m[wall.sigma_prime]), fan.ray_q(wall.gamma_prime))
}

pub fn intersection_number(fan: &Fan, d: &Divisor, wall: &Wall) -> Result<Rat> {
    Ok(intersection_with(fan, &cartier_data(fan, d)?, wall))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefReport {
    pub nef: bool,
    pub witness: Option<ConeRef>,
}

pub fn is_nef(fan: &Fan, d: &Divisor) -> Result<NefReport> {
    let cd = cartier_data(fan, d)?;
    for w in fan.walls()? {
        if intersection_with(fan, &cd, &w).is_negative() {
            return Ok(NefReport { nef: false, witness: Some(w.tau) });
        }
    }
    Ok(NefReport { nef: true, witness: None })
}

/// True iff the divisor meets every wall trivially, i.e. all `m_sigma` agree.
pub fn is_trivial_on_walls(cd: &CartierData) -> bool {
    cd.m.windows(2).all(|w| w[0] == w[1])
}

/// Convex hull data: distinct vertices and the span of their differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub vertices: Vec<RatVec>,
    pub direction_space: Subspace,
}

impl Polytope {
    pub fn from_points(ambient_dim: usize, points: &[RatVec]) -> Result<Polytope> {
        let mut vertices = points.to_vec();
        vertices.sort();
        vertices.dedup();
        let diffs: Vec<RatVec> = vertices.iter().skip(1).map(|v| sub_vec(v, &vertices[0])).collect();
        let direction_space = Subspace::span(ambient_dim, &diffs)?;
        Ok(Polytope { vertices, direction_space })
    }

    pub fn dim(&self) -> usize {
        self.direction_space.dim()
    }
}

/// The polytope of a nef divisor, as the hull of its Cartier data.
pub fn divisor_polytope(fan: &Fan, d: &Divisor) -> Result<Polytope> {
    let nef = is_nef(fan, d)?;
    if let Some(wall) = nef.witness {
        return Err(Error::NotNef { wall });
    }
    let cd = cartier_data(fan, d)?;
    Polytope::from_points(fan.dim(), &cd.m)
}

/// Conormal restriction data of a cone: the link and, per center ray, the
/// restriction of `-D_rho` to the orbit closure of the center.
#[derive(Clone, Debug)]
pub struct Conormal {
    pub link: LinkFan,
    /// `parts[j]` represents `-D_{center[j]}` restricted, on the link's quotient fan.
    pub parts: Vec<Divisor>,
}

impl Conormal {
    pub fn new(fan: &Fan, pcone: &[usize]) -> Result<Conormal> {
        let link = link(fan, pcone)?;
        let parts = (0..link.center.len())
            .map(|j| Divisor {
                coeffs: link.center_coords.iter().zip(&link.c).map(|(x, c)| &x[j] / c).collect(),
            })
            .collect();
        Ok(Conormal { link, parts })
    }

    /// Positions in the center of the given parent rays.
    pub fn positions(&self, a: &[usize]) -> Result<Vec<usize>> {
        a.iter()
            .map(|r| {
                self.link.center.binary_search(r).map_err(|_| Error::Precondition(alloc::format!("ray {r} is not in the cone {:?}", self.link.center)))
            })
            .collect()
    }

    /// `sum_{j in A} (-D_j)` restricted, for parent rays `A` of the center.
    pub fn divisor(&self, a: &[usize]) -> Result<Divisor> {
        if a.is_empty() {
            return Err(Error::Precondition("the ray subset A is empty".into()));
        }
        let pos = self.positions(a)?;
        let mut d = Divisor::zero(self.link.rays.len());
        for j in pos {
            d = d.add(&self.parts[j]);
        }
        Ok(d)
    }
}

/// The link over `pcone` with the restriction of `sum_{j in A} (-D_j)`.
pub fn restrict_conormal(fan: &Fan, pcone: &[usize], a: &[usize]) -> Result<(LinkFan, Divisor)> {
    let c = Conormal::new(fan, pcone)?;
    let d = c.divisor(a)?;
    Ok((c.link, d))
}

/// `b_A = dim sum_{j in A} Q_j` from the direction spaces.
pub fn minkowski_dim_function(polys: &[Polytope]) -> Result<DimFunction> {
    let n = polys.len();
    if n == 0 {
        return Err(Error::Precondition("no polytopes given".into()));
    }
    let amb = polys[0].direction_space.ambient_dim();
    let mut spaces: Vec<Subspace> = vec![Subspace::zero(amb); 1 << n];
    let mut values = vec![0i64; 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        spaces[mask] = spaces[rest].sum(&polys[low].direction_space)?;
        values[mask] = spaces[mask].dim() as i64;
    }
    let b = DimFunction::new(n, values)?;
    let r = crate::polymat::check_submodular(&b);
    if r.submodular.is_some() || r.monotone.is_some() {
        return Err(Error::Inconsistent("Minkowski dimension function is not a polymatroid".into()));
    }
    Ok(b)
}
