#![allow(dead_code)]

use fanlab_core::exactlin::int_vec;
use fanlab_core::fan::{product, Fan};
use fanlab_core::polymat::DimFunction;

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

/// Rays in counterclockwise order; consecutive pairs are the cones.
pub fn polygon(n: usize) -> Fan {
    let rays: Vec<[i64; 2]> = match n {
        4 => vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
        5 => vec![[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]],
        6 => vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        7 => vec![[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1]],
        8 => vec![[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]],
        _ => panic!("no polygon with {n} rays"),
    };
    let cones = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Fan::new(2, rays.iter().map(|r| int_vec(r)).collect(), cones).unwrap()
}

/// Complete fans used by the invariant tests, all locally convex except `p2`.
pub fn corpus() -> Vec<(&'static str, Fan)> {
    vec![
        ("sq2", sq2()),
        ("pent", pent()),
        ("p2", p2()),
        ("hex", polygon(6)),
        ("hept", polygon(7)),
        ("oct", polygon(8)),
        ("cp3", cross(3)),
        ("cp4", cross(4)),
        ("sq2xsq2", product(&sq2(), &sq2()).unwrap()),
        ("sq2xpent", product(&sq2(), &pent()).unwrap()),
        ("sq2xp2", product(&sq2(), &p2()).unwrap()),
    ]
}

/// `b_A = |A| + sum of the weights covered by the sets of A`, optionally
/// clamped; always a valid dimension function when `clamp >= n`.
pub fn coverage(n: usize, sets: &[u32], weights: &[i64], clamp: Option<i64>) -> DimFunction {
    let mut values = vec![0i64; 1 << n];
    for (m, v) in values.iter_mut().enumerate().skip(1) {
        let cover = (0..n).filter(|&j| m >> j & 1 == 1).fold(0u32, |acc, j| acc | sets[j]);
        let w: i64 = weights.iter().enumerate().filter(|&(k, _)| cover >> k & 1 == 1).map(|(_, &w)| w).sum();
        *v = m.count_ones() as i64 + w;
        if let Some(c) = clamp {
            *v = (*v).min(c.max(n as i64));
        }
    }
    DimFunction::new(n, values).unwrap()
}
