//! Named fans and dimension functions shipped in `corpus/`, plus the builders
//! that generate them.

use std::fs;
use std::path::Path;

use fanlab_core::exactlin::int_vec;
use fanlab_core::fan::{is_locally_convex, product, subdivide_edge, validate, Fan};
use fanlab_core::polymat::DimFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::schema::{write_json, DimFunctionFile, FanFile};

fn fan(d: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(d, rays.iter().map(|r| int_vec(r)).collect(), cones.iter().map(|c| c.to_vec()).collect())
        .expect("built-in fan")
}

pub fn sq2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
}

/// SQ2 with `r4 = (1, 1)` inserted between `r0` and `r1`.
pub fn pent() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1]], &[&[0, 4], &[4, 1], &[1, 2], &[2, 3], &[3, 0]])
}

/// Normal fan of the triangle; not locally convex.
pub fn p2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
}

/// Rays `e1..ed, -e1..-ed`; one maximal cone per sign pattern.
pub fn cross(d: usize) -> Fan {
    let mut rays = Vec::with_capacity(2 * d);
    for s in [1i64, -1] {
        for i in 0..d {
            let mut v = vec![0i64; d];
            v[i] = s;
            rays.push(int_vec(&v));
        }
    }
    let cones = (0..1usize << d).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { i + d } else { i }).collect()).collect();
    Fan::new(d, rays, cones).expect("cross-polytope fan")
}

/// Locally convex complete fan in the plane with `n` rays, `4 <= n <= 8`,
/// rays in counterclockwise order.
pub fn polygon(n: usize) -> Option<Fan> {
    let rays: &[[i64; 2]] = match n {
        4 => &[[1, 0], [0, 1], [-1, 0], [0, -1]],
        5 => &[[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]],
        6 => &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        7 => &[[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1]],
        8 => &[[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]],
        _ => return None,
    };
    let cones = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Some(Fan::new(2, rays.iter().map(|r| int_vec(r)).collect(), cones).expect("polygon fan"))
}

/// `count` locally convex refinements of CP3 by random edge subdivisions.
pub fn random_cp3_refinements(count: usize, seed: u64) -> Vec<Fan> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let steps = rng.gen_range(1..=6);
        let mut f = cross(3);
        for _ in 0..steps {
            let edges = f.faces_of_size(2);
            let e = &edges[rng.gen_range(0..edges.len())];
            f = subdivide_edge(&f, e[0], e[1]).expect("edge of a simplicial fan");
        }
        if validate(&f).is_complete() && is_locally_convex(&f).expect("complete fan").locally_convex {
            out.push(f);
        }
    }
    out
}

/// The bundled fans by file stem.
pub fn fans() -> Vec<(&'static str, Fan)> {
    let mut v = vec![("sq2", sq2()), ("pent", pent()), ("p2", p2()), ("cp3", cross(3)), ("cp4", cross(4))];
    for (name, n) in [("polygon6", 6), ("polygon7", 7), ("polygon8", 8)] {
        v.push((name, polygon(n).expect("n in range")));
    }
    v.push(("sq2xsq2", product(&sq2(), &sq2()).expect("product")));
    v.push(("sq2xpent", product(&sq2(), &pent()).expect("product")));
    v
}

fn dimfn(pairs: &[(&str, i64)]) -> DimFunction {
    let n = pairs.iter().map(|(k, _)| k.len()).max().expect("nonempty");
    let mut values = vec![0i64; 1 << n];
    for (k, v) in pairs {
        let m = k.chars().fold(0usize, |m, c| m | 1 << (c.to_digit(10).expect("digit") - 1));
        values[m] = *v;
    }
    DimFunction::new(n, values).expect("built-in dimension function")
}

/// The bundled dimension functions by file stem.
pub fn dimfns() -> Vec<(&'static str, DimFunction)> {
    vec![
        ("modular-triple", dimfn(&[("1", 3), ("2", 3), ("3", 3), ("12", 6), ("13", 6), ("23", 6), ("123", 9)])),
        ("incompat-triple", dimfn(&[("1", 3), ("2", 3), ("3", 3), ("12", 5), ("13", 5), ("23", 5), ("123", 7)])),
        ("uniform-four", dimfn(&[("1", 4), ("2", 4), ("3", 4), ("12", 7), ("13", 7), ("23", 7), ("123", 9)])),
        ("order-dependent", dimfn(&[("1", 2), ("2", 3), ("3", 3), ("12", 5), ("13", 5), ("23", 5), ("123", 7)])),
        ("parity-mismatch", dimfn(&[("1", 1), ("2", 2), ("12", 3)])),
    ]
}

/// Writes every bundled fan and dimension function into `dir`.
pub fn write_corpus(dir: &Path) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    let mut written = Vec::new();
    for (name, f) in fans() {
        let file = format!("{name}.json");
        write_json(&dir.join(&file), &FanFile::from_fan(&f))?;
        written.push(file);
    }
    for (name, b) in dimfns() {
        let file = format!("{name}.json");
        write_json(&dir.join(&file), &DimFunctionFile::from_dimfn(&b))?;
        written.push(file);
    }
    Ok(written)
}
