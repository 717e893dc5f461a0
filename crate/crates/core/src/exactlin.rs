//! Exact linear algebra over `Q` and `Z`.
//!
//! Matrices are dense and row-major. Subspaces are kept in reduced
//! row-echelon form so that equality of subspaces is structural equality.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;
pub type IntVec = Vec<Int>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().cloned().map(Rat::from_integer).collect()
}

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(c: &Rat, v: &[Rat]) -> RatVec {
    v.iter().map(|x| c * x).collect()
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x)?;
            }
        }
        f.write_str("]")
    }
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[RatVec]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(RatMat { rows: rows.len(), cols, data })
    }

    pub fn from_int_rows(cols: usize, rows: &[IntVec]) -> Result<Self> {
        let rs: Vec<RatVec> = rows.iter().map(|r| to_rat_vec(r)).collect();
        Self::from_rows(cols, &rs)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<RatVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::Shape { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<RatVec> {
        if v.len() != self.cols {
            return Err(Error::Shape { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = &f * m.get(r, j);
                    if !sub.is_zero() {
                        let v = m.get(i, j) - sub;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column,
    /// with a 1 in that free column.
    pub fn kernel(&self) -> Vec<RatVec> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(i, free).clone();
            }
            out.push(x);
        }
        out
    }

    pub fn inverse(&self) -> Option<RatMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solves `M x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &[Rat]) -> Option<RatVec> {
        if self.rows != self.cols || b.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some((0..n).map(|i| r.get(i, n).clone()).collect())
    }

    pub fn det(&self) -> Option<Rat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Some(Rat::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = m.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Some(det)
    }
}

pub fn rank(m: &RatMat) -> usize {
    m.rank()
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of(dim: usize, vs: &[RatVec]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    RatMat::from_rows(dim, vs).map(|m| m.rank()).unwrap_or(0)
}

/// A linear subspace of `Q^n` stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<RatVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, &RatMat::identity(ambient_dim).rows_vec())
            .expect("identity rows have the ambient length")
    }

    pub fn span(ambient_dim: usize, vs: &[RatVec]) -> Result<Self> {
        if vs.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = RatMat::from_rows(ambient_dim, vs)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank_of(self.ambient_dim, &rows) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &rows)
    }

    /// Annihilator under the standard pairing.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient_dim);
        }
        let m = RatMat::from_rows(self.ambient_dim, &self.basis).expect("basis rows have ambient length");
        Subspace::span(self.ambient_dim, &m.kernel()).expect("kernel vectors have ambient length")
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let c = self.orthogonal_complement().sum(&other.orthogonal_complement())?;
        Ok(c.orthogonal_complement())
    }
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// Gcd of the entries, nonnegative.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn primitive(v: &[Int]) -> Result<IntVec> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Writes a nonzero rational vector as `c * p` with `c > 0` and `p` primitive integral.
pub fn primitive_rat(v: &[Rat]) -> Result<(Rat, IntVec)> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = content(&ints);
    let p: IntVec = ints.iter().map(|x| x / &g).collect();
    Ok((Rat::new(g, l), p))
}

/// A basis of `Q^d` whose first members are given integer vectors and whose
/// remaining members span a lattice complement, with the dual covectors.
#[derive(Clone, Debug)]
pub struct BasisCompletion {
    pub basis: Vec<IntVec>,
    /// `dual[i]` pairs to 1 with `basis[i]` and to 0 with the others.
    pub dual: Vec<RatVec>,
    /// `|det|` of the basis; 1 exactly when it is a basis of `Z^d`.
    pub index: Int,
    pub given: usize,
}

impl BasisCompletion {
    /// Coordinates of `v` in the completed basis.
    pub fn coords(&self, v: &[Rat]) -> RatVec {
        self.dual.iter().map(|c| dot(c, v)).collect()
    }

    /// Coordinates along the completing vectors only.
    pub fn quotient_coords(&self, v: &[Rat]) -> RatVec {
        self.dual[self.given..].iter().map(|c| dot(c, v)).collect()
    }
}

fn col_combine(m: &mut [IntVec], i: usize, j: usize, a: [&Int; 4]) {
    // (col_i, col_j) <- (a0 col_i + a1 col_j, a2 col_i + a3 col_j)
    for row in m.iter_mut() {
        let ci = row[i].clone();
        let cj = row[j].clone();
        row[i] = a[0] * &ci + a[1] * &cj;
        row[j] = a[2] * &ci + a[3] * &cj;
    }
}

/// Completes linearly independent integer vectors to a basis of `Q^d` via
/// column-style Hermite reduction. The completion spans a lattice complement
/// of the saturation of the input.
pub fn basis_completion(d: usize, vs: &[IntVec]) -> Result<BasisCompletion> {
    let k = vs.len();
    for v in vs {
        if v.len() != d {
            return Err(Error::Shape { expected: d, found: v.len() });
        }
    }
    if rank_of(d, &vs.iter().map(|v| to_rat_vec(v)).collect::<Vec<_>>()) != k {
        return Err(Error::DependentInput);
    }
    // m = V U, u tracks U; both stored row-major with d columns.
    let mut m: Vec<IntVec> = vs.to_vec();
    let mut u: Vec<IntVec> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let one = Int::one();
    let zero = Int::zero();
    for i in 0..k {
        for j in i + 1..d {
            if m[i][j].is_zero() {
                continue;
            }
            let a = m[i][i].clone();
            let b = m[i][j].clone();
            if a.is_zero() {
                let neg = -Int::one();
                col_combine(&mut m, i, j, [&zero, &one, &neg, &zero]);
                col_combine(&mut u, i, j, [&zero, &one, &neg, &zero]);
            } else if (&b % &a).is_zero() {
                let q = -(&b / &a);
                col_combine(&mut m, i, j, [&one, &zero, &q, &one]);
                col_combine(&mut u, i, j, [&one, &zero, &q, &one]);
            } else {
                let e = a.extended_gcd(&b);
                let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
                if g.is_negative() {
                    g = -g;
                    x = -x;
                    y = -y;
                }
                let p = -(&b / &g);
                let q = &a / &g;
                col_combine(&mut m, i, j, [&x, &y, &p, &q]);
                col_combine(&mut u, i, j, [&x, &y, &p, &q]);
            }
        }
        if m[i][i].is_negative() {
            for row in m.iter_mut() {
                row[i] = -row[i].clone();
            }
            for row in u.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
    }
    let mut index = Int::one();
    for (i, row) in m.iter().enumerate().take(k) {
        index *= &row[i];
    }
    let umat = RatMat::from_int_rows(d, &u)?;
    let uinv = umat.inverse().ok_or(Error::DependentInput)?;
    let mut basis: Vec<IntVec> = vs.to_vec();
    for r in k..d {
        basis.push(uinv.row(r).iter().map(|x| x.to_integer()).collect());
    }
    let bmat = RatMat::from_int_rows(d, &basis)?;
    let binv = bmat.inverse().ok_or(Error::DependentInput)?;
    let dual = binv.transpose().rows_vec();
    Ok(BasisCompletion { basis, dual, index: index.abs(), given: k })
}

/// Completes `vs` to a basis of `Z^d`; fails unless such a completion exists.
pub fn lattice_basis_extend(d: usize, vs: &[IntVec]) -> Result<BasisCompletion> {
    let c = basis_completion(d, vs)?;
    if !c.index.is_one() {
        return Err(Error::NotExtendable { index: c.index.to_string() });
    }
    Ok(c)
}
