//! Face, h- and gamma-vectors, the signature, and the signature-zero suite
//! of odd mixed-volume monomials on conormal restrictions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fan::{require_locally_convex, ConeRef, Fan};
use crate::istheory::{divisor_polytope, minkowski_dim_function, Conormal, Polytope};
use crate::polymat::in_nonzero_region;
use crate::structure::{ray_special_sets, special_pair};

/// `f[i]` counts the faces with `i + 1` rays.
pub fn f_vector(fan: &Fan) -> Vec<i64> {
    (1..=fan.dim()).map(|k| fan.num_faces_of_size(k) as i64).collect()
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `h_k = sum_{i<=k} (-1)^{k-i} C(d-i, k-i) f_{i-1}` with `f_{-1} = 1`.
pub fn h_vector(f: &[i64]) -> Vec<i64> {
    let d = f.len() as i64;
    let fx = |i: i64| if i == 0 { 1 } else { f[(i - 1) as usize] };
    (0..=d)
        .map(|k| (0..=k).map(|i| if (k - i) % 2 == 0 { 1 } else { -1 } * binom(d - i, k - i) * fx(i)).sum())
        .collect()
}

/// The unique `gamma` with `h(t) = sum_i gamma_i t^i (1 + t)^{d - 2i}`.
pub fn gamma_vector(h: &[i64]) -> Result<Vec<i64>> {
    if h.is_empty() || (0..h.len()).any(|i| h[i] != h[h.len() - 1 - i]) {
        return Err(Error::NotPalindromic(h.to_vec()));
    }
    let d = (h.len() - 1) as i64;
    let mut g: Vec<i64> = Vec::with_capacity(h.len() / 2 + 1);
    for i in 0..=d / 2 {
        let v = h[i as usize] - (0..i).map(|j| g[j as usize] * binom(d - 2 * j, i - j)).sum::<i64>();
        g.push(v);
    }
    Ok(g)
}

/// `h(-1)`.
pub fn signature(fan: &Fan) -> Result<i64> {
    if fan.dim() % 2 != 0 {
        return Err(Error::OddDimension(fan.dim()));
    }
    let h = h_vector(&f_vector(fan));
    Ok(h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).sum())
}

/// `(-1)^{d/2}` times the top gamma component.
pub fn signed_top_gamma(gamma: &[i64], d: usize) -> i64 {
    let top = *gamma.last().expect("gamma is nonempty");
    if (d / 2) % 2 == 0 {
        top
    } else {
        -top
    }
}

/// A nonvanishing monomial: odd exponents on the conormal parts of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p: usize,
    pub cone: ConeRef,
    pub tuple: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub cones_checked: usize,
    pub tuples_checked: usize,
    pub witnesses: Vec<Witness>,
}

/// All odd tuples of length `p` summing to `total`, lexicographically.
pub fn odd_tuples(p: usize, total: i64) -> Vec<Vec<i64>> {
    fn rec(p: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == p {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (p - cur.len() - 1) as i64;
        let mut v = 1;
        while v <= left - slots {
            cur.push(v);
            rec(p, left - v, cur, out);
            cur.pop();
            v += 2;
        }
    }
    let mut out = Vec::new();
    rec(p, total, &mut Vec::new(), &mut out);
    out
}

/// Cones with `1 <= p <= d/2` rays whose rays are pairwise non-special.
pub fn suite_cones(fan: &Fan, specials: &[Vec<usize>]) -> Vec<ConeRef> {
    let mut out = Vec::new();
    for p in 1..=fan.dim() / 2 {
        out.extend(fan.faces_of_size(p).into_iter().filter(|c| special_pair(c, specials).is_none()));
    }
    out
}

/// Nonvanishing odd monomials supported on one cone, with the number of tuples tried.
pub fn suite_cone(fan: &Fan, cone: &[usize]) -> Result<(Vec<Witness>, usize)> {
    let d = fan.dim();
    let p = cone.len();
    let cn = Conormal::new(fan, cone)?;
    let q = &cn.link.quotient;
    let polys: Vec<Polytope> = cn.parts.iter().map(|part| divisor_polytope(q, part)).collect::<Result<_>>()?;
    let b = minkowski_dim_function(&polys)?;
    let tuples = odd_tuples(p, (d - p) as i64);
    let mut out = Vec::new();
    for t in &tuples {
        if in_nonzero_region(&b, t)?.inside {
            out.push(Witness { p, cone: cone.to_vec(), tuple: t.clone() });
        }
    }
    Ok((out, tuples.len()))
}

pub fn vanishing_monomial_suite(fan: &Fan) -> Result<SuiteReport> {
    if fan.dim() % 2 != 0 {
        return Err(Error::OddDimension(fan.dim()));
    }
    require_locally_convex(fan)?;
    let specials = ray_special_sets(fan)?;
    let cones = suite_cones(fan, &specials);
    let mut witnesses = Vec::new();
    let mut tuples_checked = 0;
    for c in &cones {
        let (w, n) = suite_cone(fan, c)?;
        witnesses.extend(w);
        tuples_checked += n;
    }
    Ok(SuiteReport { cones_checked: cones.len(), tuples_checked, witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateReport {
    /// No nonvanishing monomial exists.
    pub predicate: bool,
    pub signature: i64,
    /// The predicate agrees with `signature == 0`.
    pub consistent: bool,
    pub suite: SuiteReport,
}

pub fn signature_zero_predicate(fan: &Fan) -> Result<PredicateReport> {
    let suite = vanishing_monomial_suite(fan)?;
    let signature = signature(fan)?;
    let predicate = suite.witnesses.is_empty();
    Ok(PredicateReport { predicate, signature, consistent: predicate == (signature == 0), suite })
}

/// Everything at once, for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSummary {
    pub f: Vec<i64>,
    pub h: Vec<i64>,
    pub gamma: Vec<i64>,
    pub signature: i64,
    pub signed_top_gamma: i64,
}

pub fn signature_summary(fan: &Fan) -> Result<SignatureSummary> {
    let f = f_vector(fan);
    let h = h_vector(&f);
    let gamma = gamma_vector(&h)?;
    let signature = signature(fan)?;
    let signed_top_gamma = signed_top_gamma(&gamma, fan.dim());
    Ok(SignatureSummary { f, h, gamma, signature, signed_top_gamma })
}

/// Expands `sum_i gamma_i t^i (1 + t)^{d - 2i}`.
pub fn h_from_gamma(gamma: &[i64], d: usize) -> Vec<i64> {
    let mut h = vec![0i64; d + 1];
    for (i, &g) in gamma.iter().enumerate() {
        for k in 0..=d - 2 * i {
            h[i + k] += g * binom((d - 2 * i) as i64, k as i64);
        }
    }
    h
}
