//! Exact linear algebra over the rationals and the integers.
//!
//! Everything here is dense and sized for root-system work (dimension at
//! most a few hundred in the homology code, at most 8 elsewhere).

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used by the geometric code.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_cols(dim: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Q::zero(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    pub fn scale(&self, c: Q) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| *x * c).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self[(i, i)])
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in 0..self.cols {
                self[(r, j)] *= inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)];
                    for j in 0..self.cols {
                        let x = self[(r, j)];
                        self[(i, j)] -= f * x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
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
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    pub fn determinant(&self) -> Q {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)];
            det *= piv;
            for i in c + 1..n {
                let f = m[(i, c)] / piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let x = m[(c, j)];
                    m[(i, j)] -= f * x;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` exactly; `None` when no solution exists.
    /// For rank-deficient systems an arbitrary particular solution is returned.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)];
        }
        Some(x)
    }

    /// Coefficients `c_0..c_n` of `det(x I - self)`, lowest degree first.
    pub fn characteristic_polynomial(&self) -> Vec<Q> {
        assert!(self.is_square());
        let n = self.rows;
        // Faddeev-LeVerrier.
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = Self::zeros(n, n);
        let ident = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m).add(&ident.scale(coeffs[n - k + 1]));
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / q(k as i64);
        }
        coeffs
    }

    pub fn to_int_rows(&self) -> Option<Vec<Vec<i64>>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| *self[(i, j)].numer()).collect())
                .collect(),
        )
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + *x * *y)
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Least common multiple of the denominators of `v`.
pub fn common_denominator(v: &[Q]) -> i64 {
    v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

/// Reduces each coordinate into `[0, 1)`.
pub fn mod_one(v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| *x - x.floor()).collect()
}

/// Result of `smith_normal_form`: `u * m * v = d` with `u`, `v` unimodular.
/// `u_inv` is kept alongside `u` so callers can map back to the original
/// coordinates without another inversion.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub diagonal: Vec<T>,
    pub u: Vec<Vec<T>>,
    pub u_inv: Vec<Vec<T>>,
    pub v: Vec<Vec<T>>,
}

impl<T: Clone + Zero> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

fn identity_int<T: Clone + Zero + One>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// Smith normal form of an integer matrix given by rows.
///
/// Diagonal entries are nonnegative and each divides the next. Pivoting is
/// deterministic (smallest nonzero absolute value, first in row-major order).
pub fn smith_normal_form<T>(m: &[Vec<T>], track: bool) -> Smith<T>
where
    T: Integer + Signed + Clone,
{
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut u: Vec<Vec<T>> = if track { identity_int(rows) } else { Vec::new() };
    let mut u_inv: Vec<Vec<T>> = if track { identity_int(rows) } else { Vec::new() };
    let mut v: Vec<Vec<T>> = if track { identity_int(cols) } else { Vec::new() };

    // row_i += c * row_j
    let row_add = |a: &mut Vec<Vec<T>>, u: &mut Vec<Vec<T>>, u_inv: &mut Vec<Vec<T>>, i: usize, j: usize, c: &T| {
        for k in 0..cols {
            let x = a[j][k].clone() * c.clone();
            a[i][k] = a[i][k].clone() + x;
        }
        if track {
            for k in 0..rows {
                let x = u[j][k].clone() * c.clone();
                u[i][k] = u[i][k].clone() + x;
            }
            // inverse gets column_j -= c * column_i
            for k in 0..rows {
                let x = u_inv[k][i].clone() * c.clone();
                u_inv[k][j] = u_inv[k][j].clone() - x;
            }
        }
    };
    let col_add = |a: &mut Vec<Vec<T>>, v: &mut Vec<Vec<T>>, i: usize, j: usize, c: &T| {
        for row in a.iter_mut() {
            let x = row[j].clone() * c.clone();
            row[i] = row[i].clone() + x;
        }
        if track {
            for row in v.iter_mut() {
                let x = row[j].clone() * c.clone();
                row[i] = row[i].clone() + x;
            }
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if track {
            u.swap(t, pi);
            for row in u_inv.iter_mut() {
                row.swap(t, pi);
            }
        }
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        if track {
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (qt, _) = a[i][t].div_mod_floor(&a[t][t]);
                let c = -qt;
                row_add(&mut a, &mut u, &mut u_inv, i, t, &c);
                if !a[i][t].is_zero() {
                    // remainder smaller than pivot: swap it in
                    a.swap(t, i);
                    if track {
                        u.swap(t, i);
                        for row in u_inv.iter_mut() {
                            row.swap(t, i);
                        }
                    }
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (qt, _) = a[t][j].div_mod_floor(&a[t][t]);
                let c = -qt;
                col_add(&mut a, &mut v, j, t, &c);
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    if track {
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let piv = a[t][t].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&piv));
            match offender {
                Some((i, _)) => {
                    let one = T::one();
                    row_add(&mut a, &mut u, &mut u_inv, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for k in 0..cols {
                a[t][k] = -a[t][k].clone();
            }
            if track {
                for k in 0..rows {
                    u[t][k] = -u[t][k].clone();
                    u_inv[k][t] = -u_inv[k][t].clone();
                }
            }
        }
        t += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    Smith { diagonal, u, u_inv, v }
}

/// Basis (as rows) of the integer kernel `{x in Z^n : m x = 0}`.
pub fn integer_kernel(m: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    }
    let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let snf = smith_normal_form(&wide, true);
    let rank = snf.rank();
    let mut basis: Vec<Vec<i64>> = (rank..n)
        .map(|j| (0..n).map(|i| snf.v[i][j] as i64).collect())
        .collect();
    hermite_rows(&mut basis);
    basis
}

/// Row-style Hermite normal form in place; zero rows are dropped.
pub fn hermite_rows(rows: &mut Vec<Vec<i64>>) {
    let n = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        // pivot on the row with smallest nonzero |entry| in column c among r..
        while let Some(p) = (r..rows.len())
            .filter(|&i| rows[i][c] != 0)
            .min_by_key(|&i| rows[i][c].abs())
        {
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let f = rows[i][c].div_euclid(rows[r][c]);
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                    if rows[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && rows[r][c] != 0 {
            if rows[r][c] < 0 {
                for x in rows[r].iter_mut() {
                    *x = -*x;
                }
            }
            let pivot_row = rows[r].clone();
            for i in 0..r {
                let f = rows[i][c].div_euclid(pivot_row[c]);
                if f != 0 {
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
}

/// Basis of the lattice generated by rational vectors, returned in a
/// canonical (Hermite) form so equal lattices give equal bases.
pub fn lattice_basis(generators: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let denom = generators.iter().fold(1i64, |acc, g| acc.lcm(&common_denominator(g)));
    let mut rows: Vec<Vec<i64>> = generators
        .iter()
        .map(|g| g.iter().map(|x| (*x * q(denom)).to_integer()).collect())
        .filter(|r: &Vec<i64>| r.iter().any(|&x| x != 0))
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    hermite_rows(&mut rows);
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| Q::new(x, denom)).collect())
        .collect()
}
