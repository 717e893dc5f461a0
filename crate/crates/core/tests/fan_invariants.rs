mod common;

use fanlab_core::exactlin::{int_vec, lattice_basis_extend, primitive, rat, to_rat_vec, RatMat, RatVec, Subspace};
use fanlab_core::fan::{is_flag, is_locally_convex, link, subdivide_edge, validate, Fan};
use fanlab_core::gammasig::f_vector;
use fanlab_core::istheory::{
    cartier_data, divisor_polytope, intersection_number, intersection_with, is_nef, is_trivial_on_walls,
    minkowski_dim_function, wall_relation, Conormal, Divisor,
};
use fanlab_core::polymat::check_submodular;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rvecs(vs: &[Vec<i64>]) -> Vec<RatVec> {
    vs.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect()
}

fn subspace() -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..=3).prop_map(|vs| Subspace::span(4, &rvecs(&vs)).unwrap())
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn random_cp3_refinement(seeds: &[usize]) -> Fan {
    let mut f = common::cross(3);
    for &s in seeds {
        let edges = f.faces_of_size(2);
        let e = &edges[s % edges.len()];
        f = subdivide_edge(&f, e[0], e[1]).unwrap();
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn intersection_laws(a in subspace(), b in subspace(), c in subspace()) {
        let ab = a.intersect(&b).unwrap();
        prop_assert_eq!(&ab, &b.intersect(&a).unwrap());
        prop_assert_eq!(ab.intersect(&c).unwrap(), a.intersect(&b.intersect(&c).unwrap()).unwrap());
        prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
        prop_assert!(ab.dim() + 4 >= a.dim() + b.dim());
        prop_assert!(a.contains_subspace(&ab) && b.contains_subspace(&ab));
    }

    #[test]
    fn primitive_ignores_positive_scale(v in prop::collection::vec(-30i64..=30, 1..=5), k in 1i64..=9) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let scaled: Vec<i64> = v.iter().map(|&x| x * k).collect();
        prop_assert_eq!(primitive(&int_vec(&scaled)).unwrap(), primitive(&int_vec(&v)).unwrap());
    }

    #[test]
    fn unimodular_extension(v in prop::collection::vec(-12i64..=12, 2..=5)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let p = primitive(&int_vec(&v)).unwrap();
        let d = p.len();
        let c = lattice_basis_extend(d, &[p.clone()]).unwrap();
        prop_assert_eq!(&c.basis[0], &p);
        let m = RatMat::from_int_rows(d, &c.basis).unwrap();
        prop_assert!(m.det().unwrap().abs().is_one());
        for (i, row) in c.basis.iter().enumerate() {
            let coords = c.coords(&to_rat_vec(row));
            for (j, x) in coords.iter().enumerate() {
                prop_assert_eq!(x.is_one(), i == j);
                prop_assert!(i == j || x.is_zero());
            }
        }
    }

    #[test]
    fn refinements_of_cp3(seeds in prop::collection::vec(0usize..1000, 0..=6)) {
        let f = random_cp3_refinement(&seeds);
        prop_assert!(validate(&f).is_complete());
        prop_assert_eq!(f_vector(&f).iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).sum::<i64>(), 2);
        if is_locally_convex(&f).unwrap().locally_convex {
            prop_assert!(is_flag(&f).flag);
        }
    }

    #[test]
    fn random_divisors_meet_walls_consistently(k in 0usize..11, coeffs in prop::collection::vec(-3i64..=3, 9)) {
        let (_, f) = &common::corpus()[k];
        let d = Divisor::from_ints(&coeffs[..f.num_rays().min(9)].iter().copied().chain(std::iter::repeat(0)).take(f.num_rays()).collect::<Vec<_>>());
        let cd = cartier_data(f, &d).unwrap();
        let walls = f.walls().unwrap();
        let all_zero = walls.iter().all(|w| intersection_with(f, &cd, w).is_zero());
        prop_assert_eq!(all_zero, is_trivial_on_walls(&cd));
        if is_nef(f, &d).unwrap().nef {
            prop_assert_eq!(divisor_polytope(f, &d).unwrap().dim() == 0, all_zero);
        }
    }
}

#[test]
fn spheres_have_the_right_euler_characteristic() {
    for (name, f) in common::corpus() {
        assert!(validate(&f).is_complete(), "{name}");
        let chi: i64 = f_vector(&f).iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).sum();
        let expected = if f.dim() % 2 == 1 { 2 } else { 0 };
        assert_eq!(chi, expected, "{name}");
    }
}

#[test]
fn locally_convex_fans_are_flag() {
    for (name, f) in common::corpus() {
        if is_locally_convex(&f).unwrap().locally_convex {
            assert!(is_flag(&f).flag, "{name}");
        }
    }
}

#[test]
fn links_of_links() {
    for (name, f) in common::corpus() {
        for omega in (1..f.dim()).flat_map(|k| f.faces_of_size(k)) {
            let lk = link(&f, &omega).unwrap();
            for tau in (1..lk.dim()).flat_map(|k| lk.quotient.faces_of_size(k)) {
                let inner = link(&lk.quotient, &tau).unwrap();
                let mut via: Vec<Vec<usize>> = inner
                    .cones
                    .iter()
                    .map(|c| {
                        let mut v = lk.to_parent(c);
                        v.sort_unstable();
                        v
                    })
                    .collect();
                via.sort();
                let mut union: Vec<usize> = omega.iter().copied().chain(lk.to_parent(&tau)).collect();
                union.sort_unstable();
                let mut direct = link(&f, &union).unwrap().cones;
                direct.sort();
                assert_eq!(via, direct, "{name} {omega:?} {tau:?}");
            }
        }
    }
}

#[test]
fn wall_relation_signs_match_intersection_numbers() {
    for (name, f) in common::corpus() {
        let walls = f.walls().unwrap();
        let cds: Vec<_> = (0..f.num_rays()).map(|r| cartier_data(&f, &Divisor::ray(f.num_rays(), r)).unwrap()).collect();
        for w in &walls {
            let rel = wall_relation(&f, w).unwrap();
            for r in 0..f.num_rays() {
                let a = intersection_with(&f, &cds[r], w);
                let c = rel.coeff(r);
                let cs = if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 };
                assert_eq!(sign(&a), cs, "{name} ray {r} wall {:?}", w.tau);
            }
            assert_eq!(
                sign(&intersection_number(&f, &Divisor::ray(f.num_rays(), w.gamma), w).unwrap()),
                1,
                "{name} {:?}",
                w.tau
            );
        }
    }
}

#[test]
fn conormal_polytopes_add() {
    for (name, f) in common::corpus() {
        if f.dim() < 3 || !is_locally_convex(&f).unwrap().locally_convex {
            continue;
        }
        for pc in f.faces_of_size(2) {
            let cn = Conormal::new(&f, &pc).unwrap();
            let q = &cn.link.quotient;
            let p0 = divisor_polytope(q, &cn.parts[0]).unwrap();
            let p1 = divisor_polytope(q, &cn.parts[1]).unwrap();
            for (s, t) in [(1i64, 1i64), (2, 3), (0, 1)] {
                let scale = |d: &Divisor, k: i64| Divisor { coeffs: d.coeffs.iter().map(|x| x * rat(k)).collect() };
                let sum = scale(&cn.parts[0], s).add(&scale(&cn.parts[1], t));
                let ps = divisor_polytope(q, &sum).unwrap();
                let mut expected = Subspace::zero(q.dim());
                if s != 0 {
                    expected = expected.sum(&p0.direction_space).unwrap();
                }
                if t != 0 {
                    expected = expected.sum(&p1.direction_space).unwrap();
                }
                assert_eq!(ps.direction_space, expected, "{name} {pc:?} ({s}, {t})");
            }
            let b = minkowski_dim_function(&[p0, p1]).unwrap();
            assert!(check_submodular(&b).submodular.is_none(), "{name} {pc:?}");
        }
    }
}
