//! Integer linear algebra (Smith and Hermite forms, kernels) and exact
//! geometry of rational polyhedral cones and fans.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::util::{combinations, int_rat};
use crate::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        IntMatrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
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
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + int_rat(self.get(i, j)) * &v[j]))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            // bring the smallest entry of row t / column t to the pivot
            let mut small = (t, t);
            for i in t + 1..m {
                if !d.get(i, t).is_zero() && d.get(i, t).abs() < d.get(small.0, small.1).abs() {
                    small = (i, t);
                }
            }
            for j in t + 1..n {
                if !d.get(t, j).is_zero() && d.get(t, j).abs() < d.get(small.0, small.1).abs() {
                    small = (t, j);
                }
            }
            if small.0 != t {
                d.swap_rows(t, small.0);
                u.swap_rows(t, small.0);
            }
            if small.1 != t {
                d.swap_cols(t, small.1);
                v.swap_cols(t, small.1);
            }
            let p = d.get(t, t).clone();
            for i in t + 1..m {
                if !d.get(i, t).is_zero() {
                    let q = -d.get(i, t).div_floor(&p);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
            }
            for j in t + 1..n {
                if !d.get(t, j).is_zero() {
                    let q = -d.get(t, j).div_floor(&p);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
            }
            let clean = (t + 1..m).all(|i| d.get(i, t).is_zero()) && (t + 1..n).all(|j| d.get(t, j).is_zero());
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

/// Hermite basis of the lattice spanned by `vectors`, pivots taken from the
/// first coordinate onwards. Pivots are positive and entries above a pivot
/// are reduced into `[0, pivot)`.
pub fn hermite_basis(vectors: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..ncols {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by(|&&a, &&b| rows[a][c].abs().cmp(&rows[b][c].abs())).unwrap();
            for &i in &nz {
                if i != p {
                    let q = rows[i][c].div_floor(&rows[p][c]);
                    let pr = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(pr.iter()) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.remove(i);
            if r[c].is_negative() {
                for x in r.iter_mut() {
                    *x = -&*x;
                }
            }
            for (prev, &pc) in out.iter_mut().zip(pivots.iter()) {
                let _ = pc;
                let q = prev[c].div_floor(&r[c]);
                if !q.is_zero() {
                    for (x, y) in prev.iter_mut().zip(r.iter()) {
                        *x -= &q * y;
                    }
                }
            }
            out.push(r);
            pivots.push(c);
        }
        rows.retain(|v| v.iter().any(|x| !x.is_zero()));
    }
    out
}

/// Like [`hermite_basis`] but with pivots taken from the last coordinate
/// backwards; each basis vector's last nonzero entry is its positive pivot.
/// Output is sorted by pivot position, smallest first.
pub fn hermite_basis_from_right(vectors: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let rev: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let mut out: Vec<Vec<BigInt>> = hermite_basis(&rev, ncols).into_iter().map(|v| v.into_iter().rev().collect()).collect();
    out.reverse();
    out
}

/// Generators of the kernel of `Z^cols -> Z^free ⊕ ⊕ Z/m_i`, where the last
/// `torsion_orders.len()` rows of `a` are read modulo the given orders.
/// The result is a lattice basis in right-pivoted Hermite form.
pub fn integer_kernel(a: &IntMatrix, torsion_orders: &[BigInt]) -> Vec<Vec<BigInt>> {
    let t = torsion_orders.len();
    assert!(t <= a.rows, "more torsion orders than rows");
    let free = a.rows - t;
    let n = a.cols;
    let mut m = IntMatrix::zeros(a.rows, n + t);
    for i in 0..a.rows {
        for j in 0..n {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for (k, ord) in torsion_orders.iter().enumerate() {
        m.set(free + k, n + k, ord.clone());
    }
    let s = smith_normal_form(&m);
    let r = s.rank();
    let gens: Vec<Vec<BigInt>> = (r..n + t).map(|j| s.v.col(j)[..n].to_vec()).collect();
    hermite_basis_from_right(&gens, n)
}

/// Whether `v` lies in the lattice spanned by a Hermite basis from
/// [`hermite_basis`].
pub fn lattice_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for b in basis {
        let Some(p) = b.iter().position(|x| !x.is_zero()) else { continue };
        if w[..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        if !w[p].is_multiple_of(&b[p]) {
            return false;
        }
        let q = &w[p] / &b[p];
        for (x, y) in w.iter_mut().zip(b.iter()) {
            *x -= &q * y;
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> IntMatrix {
    let n = a.rows;
    assert_eq!(n, a.cols);
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rat> = a.row(i).iter().map(int_rat).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, piv) = rref(rows);
    assert_eq!(piv.len(), n, "matrix is singular");
    let out: Vec<Vec<BigInt>> = red
        .iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "matrix is not unimodular");
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(out, n)
}

// ---------------------------------------------------------------------------
// rational linear algebra

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows.to_vec()).1.len()
}

/// Basis of `{x : row·x = 0 for every row}` in `Q^ncols`.
pub(crate) fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (red, piv) = rref(rows.to_vec());
    let mut out = Vec::new();
    for f in 0..ncols {
        if piv.contains(&f) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (r, &p) in red.iter().zip(piv.iter()) {
            v[p] = -r[f].clone();
        }
        out.push(v);
    }
    out
}

/// Some solution of `sum_j x_j cols[j] = b`, if one exists.
pub(crate) fn solve_columns(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = cols.len();
    let d = b.len();
    let rows: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            let mut r: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    if d == 0 {
        return Some(vec![Rat::zero(); n]);
    }
    let (red, piv) = rref(rows);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in red.iter().zip(piv.iter()) {
        x[p] = r[n].clone();
    }
    Some(x)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Scale to a canonical representative of the ray it spans (first nonzero
/// entry of absolute value one, sign kept).
fn normalize_direction(v: &[Rat]) -> Vec<Rat> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(f) => {
            let s = f.abs().recip();
            v.iter().map(|x| x * &s).collect()
        }
        None => v.to_vec(),
    }
}

// ---------------------------------------------------------------------------
// cones

/// H- and V-description of a cone spanned by finitely many vectors.
#[derive(Clone, Debug)]
pub(crate) struct ConeGeometry {
    pub gens: Vec<Vec<Rat>>,
    /// basis of the orthogonal complement of the span
    pub eqs: Vec<Vec<Rat>>,
    /// inward facet normals, chosen inside the span
    pub facets: Vec<Vec<Rat>>,
    pub dim: usize,
}

impl ConeGeometry {
    pub fn new(gens: Vec<Vec<Rat>>, ambient: usize) -> Self {
        let eqs = nullspace(&gens, ambient);
        let dim = ambient - eqs.len();
        let mut facets: Vec<Vec<Rat>> = Vec::new();
        if dim > 0 {
            for sub in combinations(gens.len(), dim - 1) {
                let rows: Vec<Vec<Rat>> = sub.iter().map(|&i| gens[i].clone()).collect();
                if rank(&rows) != dim - 1 {
                    continue;
                }
                let mut all = rows;
                all.extend(eqs.iter().cloned());
                let ns = nullspace(&all, ambient);
                if ns.len() != 1 {
                    continue;
                }
                let n = &ns[0];
                let vals: Vec<Rat> = gens.iter().map(|g| dot(n, g)).collect();
                let n = if vals.iter().all(|x| !x.is_negative()) {
                    n.clone()
                } else if vals.iter().all(|x| !x.is_positive()) {
                    n.iter().map(|x| -x).collect()
                } else {
                    continue;
                };
                let n = normalize_direction(&n);
                if !facets.contains(&n) {
                    facets.push(n);
                }
            }
        }
        ConeGeometry { gens, eqs, facets, dim }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.eqs.iter().all(|e| dot(e, v).is_zero()) && self.facets.iter().all(|n| !dot(n, v).is_negative())
    }

    /// Generator indices of the smallest face containing all of `pts`
    /// (which must lie in the cone).
    pub fn min_face(&self, pts: &[Vec<Rat>]) -> Vec<usize> {
        let active: Vec<&Vec<Rat>> = self.facets.iter().filter(|n| pts.iter().all(|p| dot(n, p).is_zero())).collect();
        (0..self.gens.len()).filter(|&i| active.iter().all(|n| dot(n, &self.gens[i]).is_zero())).collect()
    }

    pub fn is_pointed(&self) -> bool {
        self.dim == 0 || rank(&self.facets) == self.dim
    }
}

/// Extreme rays of `{x : eqs·x = 0, ineqs·x >= 0}`, assumed pointed.
fn extreme_rays(eqs: &[Vec<Rat>], ineqs: &[Vec<Rat>], ambient: usize) -> Vec<Vec<Rat>> {
    let re = rank(eqs);
    let mut out: Vec<Vec<Rat>> = Vec::new();
    if re + 1 > ambient {
        return out;
    }
    let need = ambient - 1 - re;
    for sub in combinations(ineqs.len(), need) {
        let mut rows: Vec<Vec<Rat>> = eqs.to_vec();
        rows.extend(sub.iter().map(|&i| ineqs[i].clone()));
        let ns = nullspace(&rows, ambient);
        if ns.len() != 1 {
            continue;
        }
        for sign in [1i64, -1] {
            let x: Vec<Rat> = ns[0].iter().map(|v| v * Rat::from_integer(sign.into())).collect();
            if ineqs.iter().all(|n| !dot(n, &x).is_negative()) {
                let x = normalize_direction(&x);
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// fans

/// A cone of a fan, given by the (sorted) indices of its generating rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub rays: Vec<usize>,
}

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone { rays }
    }

    pub fn zero() -> Self {
        Cone { rays: Vec::new() }
    }

    pub fn contains_ray(&self, i: usize) -> bool {
        self.rays.binary_search(&i).is_ok()
    }
}

/// Finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub torsion_orders: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanError {
    RayDimension { ray: usize },
    ZeroRay { ray: usize },
    NonPrimitiveRay { ray: usize },
    DuplicateRay { ray: usize },
    RayIndex { cone: usize, index: usize },
    NotStrictlyConvex { cone: usize },
    NotExtremal { cone: usize, ray: usize },
    BadIntersection { first: usize, second: usize },
    NotAFace,
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::RayDimension { ray } => write!(f, "ray {} has the wrong dimension", ray + 1),
            FanError::ZeroRay { ray } => write!(f, "ray {} is zero", ray + 1),
            FanError::NonPrimitiveRay { ray } => write!(f, "ray {} is not primitive", ray + 1),
            FanError::DuplicateRay { ray } => write!(f, "ray {} is listed twice", ray + 1),
            FanError::RayIndex { cone, index } => write!(f, "cone {} refers to unknown ray {}", cone + 1, index + 1),
            FanError::NotStrictlyConvex { cone } => write!(f, "cone {} is not strictly convex", cone + 1),
            FanError::NotExtremal { cone, ray } => write!(f, "ray {} is not extremal in cone {}", ray + 1, cone + 1),
            FanError::BadIntersection { first, second } => {
                write!(f, "cones {} and {} do not meet in a common face", first + 1, second + 1)
            }
            FanError::NotAFace => f.write_str("cone is not a cone of the fan"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FanError {}

#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    virtual_rays: Vec<Vec<i64>>,
    cones: Vec<Cone>,
    geometry: Vec<ConeGeometry>,
}

fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

fn primitive_i64(v: &[BigInt]) -> Vec<i64> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    v.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            i64::try_from(y).expect("ray coordinate overflow")
        })
        .collect()
}

impl Fan {
    /// Validate and build a fan from rays and cones (0-based ray indices).
    /// Cones that are faces of other listed cones are dropped.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::RayDimension { ray: i });
            }
            let g = r.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g == 0 {
                return Err(FanError::ZeroRay { ray: i });
            }
            if g != 1 {
                return Err(FanError::NonPrimitiveRay { ray: i });
            }
            if rays[..i].contains(r) {
                return Err(FanError::DuplicateRay { ray: i });
            }
        }
        let mut cs: Vec<Cone> = Vec::new();
        for (ci, c) in cones.iter().enumerate() {
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::RayIndex { cone: ci, index: bad });
            }
            cs.push(Cone::new(c.clone()));
        }
        let maximal: Vec<Cone> = cs
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !cs.iter().enumerate().any(|(j, d)| {
                    j != *i && c.rays.iter().all(|r| d.contains_ray(*r)) && (c.rays.len() < d.rays.len() || j < *i)
                })
            })
            .map(|(_, c)| c.clone())
            .collect();
        let maximal = if maximal.is_empty() { vec![Cone::zero()] } else { maximal };
        let geometry: Vec<ConeGeometry> =
            maximal.iter().map(|c| ConeGeometry::new(c.rays.iter().map(|&i| to_rat(&rays[i])).collect(), dim)).collect();
        for (ci, (c, g)) in maximal.iter().zip(geometry.iter()).enumerate() {
            if !g.is_pointed() {
                return Err(FanError::NotStrictlyConvex { cone: ci });
            }
            for (k, &r) in c.rays.iter().enumerate() {
                if g.min_face(&[g.gens[k].clone()]) != vec![k] {
                    return Err(FanError::NotExtremal { cone: ci, ray: r });
                }
            }
        }
        for a in 0..maximal.len() {
            for b in a + 1..maximal.len() {
                if !meets_in_common_face(&maximal[a], &geometry[a], &maximal[b], &geometry[b], &rays, dim) {
                    return Err(FanError::BadIntersection { first: a, second: b });
                }
            }
        }
        let virtual_rays = complement_rays(&rays, dim);
        Ok(Fan { dim, rays, virtual_rays, cones: maximal, geometry })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn virtual_rays(&self) -> &[Vec<i64>] {
        &self.virtual_rays
    }

    /// Rays followed by virtual rays.
    pub fn all_rays(&self) -> Vec<Vec<i64>> {
        let mut v = self.rays.clone();
        v.extend(self.virtual_rays.iter().cloned());
        v
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    /// `dim x (rays + virtual rays)` matrix whose columns are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        let all = self.all_rays();
        let mut m = IntMatrix::zeros(self.dim, all.len());
        for (j, r) in all.iter().enumerate() {
            for i in 0..self.dim {
                m.set(i, j, BigInt::from(r[i]));
            }
        }
        m
    }

    /// Smallest cone containing the named rays; `None` if no cone does (or if
    /// a virtual ray is named).
    pub fn minimal_containing_cone(&self, ray_subset: &[usize]) -> Option<Cone> {
        if ray_subset.iter().any(|&i| i >= self.rays.len()) {
            return None;
        }
        for (c, g) in self.cones.iter().zip(self.geometry.iter()) {
            if ray_subset.iter().all(|&i| c.contains_ray(i)) {
                let pts: Vec<Vec<Rat>> = ray_subset.iter().map(|&i| to_rat(&self.rays[i])).collect();
                let local = g.min_face(&pts);
                return Some(Cone::new(local.iter().map(|&k| c.rays[k]).collect()));
            }
        }
        None
    }

    /// Smallest cone containing `v`, or `None` when `v` is outside the support.
    pub fn support_membership(&self, v: &[Rat]) -> Option<Cone> {
        assert_eq!(v.len(), self.dim);
        for (c, g) in self.cones.iter().zip(self.geometry.iter()) {
            if g.contains(v) {
                let local = g.min_face(&[v.to_vec()]);
                return Some(Cone::new(local.iter().map(|&k| c.rays[k]).collect()));
            }
        }
        None
    }

    /// Whether `sigma` is a cone of the fan.
    pub fn is_cone(&self, sigma: &Cone) -> bool {
        self.minimal_containing_cone(&sigma.rays).as_ref() == Some(sigma)
    }

    /// Every maximal cone is generated by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| {
            let cols: Vec<Vec<i64>> = c.rays.iter().map(|&i| self.rays[i].clone()).collect();
            let m = IntMatrix::from_i64(&cols, self.dim);
            let s = smith_normal_form(&m);
            s.rank() == c.rays.len() && s.diagonal().iter().all(|x| x.is_one() || x.is_zero())
        })
    }

    /// Support is all of `R^dim`: every maximal cone is full-dimensional and
    /// every facet is shared with exactly one other maximal cone.
    pub fn is_complete(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        if self.geometry.iter().any(|g| g.dim != self.dim) {
            return false;
        }
        for (c, g) in self.cones.iter().zip(self.geometry.iter()) {
            for f in &g.facets {
                let on: Vec<usize> = c
                    .rays
                    .iter()
                    .zip(g.gens.iter())
                    .filter(|(_, v)| dot(f, v).is_zero())
                    .map(|(&r, _)| r)
                    .collect();
                let others = self.cones.iter().filter(|d| *d != c && on.iter().all(|&r| d.contains_ray(r))).count();
                if others != 1 {
                    return false;
                }
            }
        }
        true
    }

    pub fn star_and_quotient(&self, sigma: &Cone) -> Result<StarQuotient, FanError> {
        if !self.is_cone(sigma) {
            return Err(FanError::NotAFace);
        }
        let star_cones: Vec<(Cone, ConeGeometry)> = self
            .cones
            .iter()
            .zip(self.geometry.iter())
            .filter(|(c, _)| sigma.rays.iter().all(|r| c.contains_ray(*r)))
            .map(|(c, g)| (c.clone(), g.clone()))
            .collect();
        let star = Fan {
            dim: self.dim,
            rays: self.rays.clone(),
            virtual_rays: self.virtual_rays.clone(),
            cones: star_cones.iter().map(|(c, _)| c.clone()).collect(),
            geometry: star_cones.iter().map(|(_, g)| g.clone()).collect(),
        };
        let projection = if sigma.rays.is_empty() {
            IntMatrix::identity(self.dim)
        } else {
            let cols: Vec<Vec<i64>> = sigma.rays.iter().map(|&i| self.rays[i].clone()).collect();
            let a = IntMatrix::from_i64(&cols, self.dim).transpose();
            let s = smith_normal_form(&a);
            let k = s.rank();
            IntMatrix::from_rows((k..self.dim).map(|i| s.u.row(i)).collect(), self.dim)
        };
        let qdim = projection.rows();
        let mut qrays: Vec<Vec<i64>> = Vec::new();
        let mut qcones: Vec<Vec<usize>> = Vec::new();
        for (c, _) in &star_cones {
            let mut idx = Vec::new();
            for &r in &c.rays {
                if sigma.contains_ray(r) {
                    continue;
                }
                let img = projection.mul_vec(&self.rays[r].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
                let p = primitive_i64(&img);
                let pos = match qrays.iter().position(|q| *q == p) {
                    Some(i) => i,
                    None => {
                        qrays.push(p);
                        qrays.len() - 1
                    }
                };
                if !idx.contains(&pos) {
                    idx.push(pos);
                }
            }
            // keep only extremal images
            let g = ConeGeometry::new(idx.iter().map(|&i| to_rat(&qrays[i])).collect(), qdim);
            let ext: Vec<usize> =
                (0..idx.len()).filter(|&k| g.min_face(&[g.gens[k].clone()]) == vec![k]).map(|k| idx[k]).collect();
            qcones.push(ext);
        }
        // drop rays that ended up non-extremal everywhere
        let used: Vec<usize> = (0..qrays.len()).filter(|i| qcones.iter().any(|c| c.contains(i))).collect();
        let remap = |i: usize| used.iter().position(|&u| u == i).unwrap();
        let qrays2: Vec<Vec<i64>> = used.iter().map(|&i| qrays[i].clone()).collect();
        let qcones2: Vec<Vec<usize>> = qcones.iter().map(|c| c.iter().map(|&i| remap(i)).collect()).collect();
        let quotient = Fan::new(qdim, qrays2, qcones2)?;
        let l = projection.mul(&self.ray_matrix());
        Ok(StarQuotient { star, quotient, l, projection })
    }
}

/// Result of [`Fan::star_and_quotient`].
#[derive(Clone, Debug)]
pub struct StarQuotient {
    pub star: Fan,
    pub quotient: Fan,
    /// ray lattice (rays then virtual rays) to `N / <sigma>`
    pub l: IntMatrix,
    /// `N -> N / <sigma>`
    pub projection: IntMatrix,
}

fn meets_in_common_face(a: &Cone, ga: &ConeGeometry, b: &Cone, gb: &ConeGeometry, rays: &[Vec<i64>], dim: usize) -> bool {
    let common: Vec<usize> = a.rays.iter().copied().filter(|r| b.contains_ray(*r)).collect();
    let pts: Vec<Vec<Rat>> = common.iter().map(|&i| to_rat(&rays[i])).collect();
    let face_a: Vec<usize> = ga.min_face(&pts).iter().map(|&k| a.rays[k]).collect();
    let face_b: Vec<usize> = gb.min_face(&pts).iter().map(|&k| b.rays[k]).collect();
    if face_a != common || face_b != common {
        return false;
    }
    let mut eqs = ga.eqs.clone();
    eqs.extend(gb.eqs.iter().cloned());
    let mut ineqs = ga.facets.clone();
    ineqs.extend(gb.facets.iter().cloned());
    let cg = ConeGeometry::new(pts, dim);
    extreme_rays(&eqs, &ineqs, dim).iter().all(|x| cg.contains(x))
}

/// Primitive vectors completing the saturated span of `rays` to `Z^dim`.
fn complement_rays(rays: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    if rays.is_empty() {
        return (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
    }
    let a = IntMatrix::from_i64(rays, dim).transpose();
    let s = smith_normal_form(&a);
    let k = s.rank();
    if k == dim {
        return Vec::new();
    }
    let uinv = unimodular_inverse(&s.u);
    (k..dim).map(|j| primitive_i64(&uinv.col(j))).collect()
}
