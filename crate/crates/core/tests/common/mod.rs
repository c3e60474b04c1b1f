//! Independent oracles shared by the integration tests. They use the
//! library's element types but none of its enumeration or arithmetic.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use alcove::coxeter::AffineElement;
use alcove::linalg::Q;

pub type IMat = Vec<Vec<i64>>;

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn imat_identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Breadth-first closure of integer matrices under left multiplication by
/// the generators.
pub fn matrix_closure(gens: &[IMat]) -> Vec<IMat> {
    let n = gens[0].len();
    let id = imat_identity(n);
    let mut seen: HashSet<IMat> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = imat_mul(g, &x);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
                assert!(out.len() < 100_000, "matrix group too large for the oracle");
            }
        }
    }
    out
}

/// Closure of affine maps under composition, with `cap` as a safety limit.
pub fn affine_closure(gens: &[AffineElement], dim: usize, cap: usize) -> Vec<AffineElement> {
    let id = AffineElement::identity(dim);
    let mut seen: HashSet<AffineElement> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for g in gens {
            let y = g.compose(&out[k]);
            if seen.insert(y.clone()) {
                out.push(y);
                assert!(out.len() <= cap, "affine closure exceeded {cap}");
            }
        }
        k += 1;
    }
    out
}

/// Affine elements reachable by words of length at most `max_len`.
pub fn affine_ball(gens: &[AffineElement], dim: usize, max_len: usize) -> Vec<AffineElement> {
    let id = AffineElement::identity(dim);
    let mut seen: HashSet<AffineElement> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id.clone()];
    let mut out = vec![id];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = g.compose(x);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn to_int_rows(m: &alcove::linalg::QMatrix) -> IMat {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let x = m[(i, j)];
                    assert!(x.is_integer(), "non-integral entry {x}");
                    *x.numer()
                })
                .collect()
        })
        .collect()
}

pub type Poly = Vec<i128>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// `det(I + c·x·g)` as a polynomial in `x`, by the Leibniz expansion.
pub fn det_one_plus(g: &IMat, c: i128) -> Poly {
    let n = g.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: Poly = vec![0];
    loop {
        let mut term: Poly = vec![permutation_sign(&perm)];
        for (i, &j) in perm.iter().enumerate() {
            let entry = vec![i128::from(i == j), c * g[i][j] as i128];
            term = poly_mul(&term, &entry);
        }
        total = poly_add(&total, &term);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

fn permutation_sign(p: &[usize]) -> i128 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Power series `num / den` through degree `n`, for `den(0) = 1`.
pub fn series_div(num: &Poly, den: &Poly, n: usize) -> Vec<i128> {
    assert_eq!(den[0], 1);
    let mut out = vec![0i128; n + 1];
    for k in 0..=n {
        let mut c = num.get(k).copied().unwrap_or(0);
        for j in 1..=k.min(den.len() - 1) {
            c -= den[j] * out[k - j];
        }
        out[k] = c;
    }
    out
}

/// `Σ_g det(1 + t g) / det(1 - t² g)` through degree `n`, unnormalized.
pub fn molien_numerator_sum(elements: &[IMat], n: usize) -> Vec<i128> {
    let mut total = vec![0i128; n + 1];
    for g in elements {
        let num = det_one_plus(g, 1);
        let d = det_one_plus(g, -1);
        // substitute x = t²
        let mut den = vec![0i128; 2 * d.len() - 1];
        for (i, c) in d.iter().enumerate() {
            den[2 * i] = *c;
        }
        for (k, c) in series_div(&num, &den, n).into_iter().enumerate() {
            total[k] += c;
        }
    }
    total
}

/// `Π (1 + t^{2d-1}) / (1 - t^{2d})` through degree `n`.
pub fn degree_product_oracle(degrees: &[u32], n: usize) -> Vec<i128> {
    let mut s = vec![0i128; n + 1];
    s[0] = 1;
    for &d in degrees {
        let d = d as usize;
        let mut with_num = s.clone();
        for k in (2 * d - 1)..=n {
            with_num[k] += s[k - (2 * d - 1)];
        }
        // divide by 1 - t^{2d}
        for k in (2 * d)..=n {
            with_num[k] += with_num[k - 2 * d];
        }
        s = with_num;
    }
    s
}

/// Rank over ℚ by Gaussian elimination on big rationals.
pub fn rank_q(m: &[Vec<i64>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone() * inv.clone();
                for k in c..cols {
                    let v = a[rank][k].clone() * f.clone();
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p`.
pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let (rows, cols) = (a.len(), a[0].len());
    let inv = |x: i64| -> i64 {
        let mut r = 1i64;
        let mut b = x;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * s % p;
                for k in c..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Integer determinant by cofactor expansion, for small matrices.
pub fn det_q(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = Q::zero();
    for j in 0..n {
        let minor: Vec<Vec<Q>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
            .collect();
        let term = m[0][j] * det_q(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Solves `B c = v` by Cramer's rule, `B` given by its columns.
pub fn cramer(cols: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = v.len();
    let rows = |cs: &[Vec<Q>]| -> Vec<Vec<Q>> { (0..n).map(|i| cs.iter().map(|c| c[i]).collect()).collect() };
    let d = det_q(&rows(cols));
    if d.is_zero() {
        return None;
    }
    Some(
        (0..n)
            .map(|k| {
                let mut cs = cols.to_vec();
                cs[k] = v.to_vec();
                det_q(&rows(&cs)) / d
            })
            .collect(),
    )
}

/// Sorted coset keys `gH` for every `g` in `elements`.
pub fn cosets(elements: &[AffineElement], sub: &[AffineElement]) -> BTreeSet<Vec<Vec<(i64, i64)>>> {
    elements
        .iter()
        .map(|g| {
            let mut keys: Vec<Vec<(i64, i64)>> = sub.iter().map(|h| g.compose(h).sort_key()).collect();
            keys.sort();
            keys
        })
        .collect()
}
