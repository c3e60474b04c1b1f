//! Root systems of the simple types A–G and their affine extensions.
//!
//! Conventions used throughout the crate:
//!
//! * a point of `X_*(T) ⊗ Q` is written in the simple coroot basis;
//! * a weight (in particular a root, viewed as a linear functional) is
//!   written in the fundamental weight basis, so the pairing of a weight
//!   with a point is the ordinary dot product;
//! * a root may also be given by its coefficient vector on the simple roots.
//!
//! The Cartan matrix is `cartan[i][j] = <α_j, α_i^∨>`, so column `j` is the
//! simple root `α_j` in fundamental weight coordinates.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, int_vec, q, qf, QMatrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Cartan type such as `B2` or `E8`, always in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    /// Validates and canonicalizes: `B1`, `C1` → `A1`, `C2` → `B2`, `D3` → `A3`.
    pub fn new(family: Family, rank: usize) -> Result<TypeLabel> {
        let out_of_range = || Error::RankOutOfRange {
            family: family.letter(),
            rank,
        };
        let (family, rank) = match (family, rank) {
            (_, 0) => return Err(out_of_range()),
            (Family::A, n) => (Family::A, n),
            (Family::B | Family::C, 1) => (Family::A, 1),
            (Family::C, 2) => (Family::B, 2),
            (Family::B, n) => (Family::B, n),
            (Family::C, n) => (Family::C, n),
            (Family::D, 1 | 2) => return Err(out_of_range()),
            (Family::D, 3) => (Family::A, 3),
            (Family::D, n) => (Family::D, n),
            (Family::E, 6..=8) => (Family::E, rank),
            (Family::F, 4) => (Family::F, 4),
            (Family::G, 2) => (Family::G, 2),
            _ => return Err(out_of_range()),
        };
        Ok(TypeLabel { family, rank })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<TypeLabel> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let digits = chars.as_str().trim_start_matches('_');
        let rank: usize = digits.parse().map_err(|_| Error::UnknownType(s.to_string()))?;
        TypeLabel::new(family, rank)
    }
}

/// Simple roots in orthonormal (epsilon) coordinates, Bourbaki numbering.
fn epsilon_simple_roots(label: TypeLabel) -> Vec<Vec<Q>> {
    let n = label.rank;
    let unit = |dim: usize, i: usize| -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v
    };
    let diff = |dim: usize, i: usize, j: usize| -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v[j] = -Q::one();
        v
    };
    match label.family {
        Family::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        Family::B => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            r.push(unit(n, n - 1));
            r
        }
        Family::C => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = unit(n, n - 1);
            last[n - 1] = q(2);
            r.push(last);
            r
        }
        Family::D => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 2] = Q::one();
            last[n - 1] = Q::one();
            r.push(last);
            r
        }
        Family::E => {
            let h = qf(1, 2);
            let mut a1 = vec![-h; 8];
            a1[0] = h;
            a1[7] = h;
            let mut a2 = vec![Q::zero(); 8];
            a2[0] = Q::one();
            a2[1] = Q::one();
            let mut r = vec![a1, a2];
            for i in 0..6 {
                r.push(diff(8, i + 1, i));
            }
            r.truncate(n);
            r
        }
        Family::F => {
            let h = qf(1, 2);
            vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3), vec![h, -h, -h, -h]]
        }
        Family::G => vec![vec![q(1), q(-1), q(0)], vec![q(-2), q(1), q(1)]],
    }
}

/// Product of the degrees for each type, used to cross-check the
/// eigenvalue computation.
fn tabulated_degrees(label: TypeLabel) -> Vec<u32> {
    let n = label.rank as u32;
    match label.family {
        Family::A => (2..=n + 1).collect(),
        Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
        Family::D => {
            let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            d.sort_unstable();
            d
        }
        Family::E => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        Family::F => vec![2, 6, 8, 12],
        Family::G => vec![2, 6],
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: TypeLabel,
    /// `cartan[i][j] = <α_j, α_i^∨>`.
    pub cartan: Vec<Vec<i64>>,
    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub gram: Vec<Vec<Q>>,
    /// Positive roots as coefficient vectors on the simple roots, sorted
    /// by height and then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub degrees: Vec<u32>,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.label.rank
    }

    /// Simple root `α_j` in fundamental weight coordinates.
    pub fn simple_root(&self, j: usize) -> Vec<i64> {
        (0..self.rank()).map(|i| self.cartan[i][j]).collect()
    }

    /// Simple roots in fundamental weight coordinates.
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|j| self.simple_root(j)).collect()
    }

    /// Simple coroots in the simple coroot basis (the standard basis).
    pub fn simple_coroots(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
    }

    /// Converts a root coefficient vector to fundamental weight coordinates.
    pub fn root_weight(&self, coeffs: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| self.cartan[i][j] * coeffs[j]).sum())
            .collect()
    }

    pub fn root_norm(&self, coeffs: &[i64]) -> Q {
        let r = self.rank();
        let mut s = Q::zero();
        for i in 0..r {
            for j in 0..r {
                s += self.gram[i][j] * q(coeffs[i] * coeffs[j]);
            }
        }
        s
    }

    /// Coroot of a root, in the simple coroot basis.
    pub fn coroot(&self, coeffs: &[i64]) -> Vec<i64> {
        let n = self.root_norm(coeffs);
        (0..self.rank())
            .map(|j| {
                let c = q(coeffs[j]) * self.gram[j][j] / n;
                assert!(c.is_integer(), "coroot coefficients are integral");
                c.to_integer()
            })
            .collect()
    }

    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.positive_roots.clone();
        out.extend(
            self.positive_roots
                .iter()
                .map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        out
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn highest_coroot(&self) -> Vec<i64> {
        self.coroot(&self.highest_root)
    }

    /// Order of the finite Weyl group, as the product of the degrees.
    pub fn weyl_order(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    /// Matrix of the simple reflection `s_i` on the coroot space:
    /// `x ↦ x - <α_i, x> α_i^∨`.
    pub fn simple_reflection(&self, i: usize) -> QMatrix {
        let r = self.rank();
        let mut m = QMatrix::identity(r);
        for k in 0..r {
            m[(i, k)] -= q(self.cartan[k][i]);
        }
        m
    }

    /// Reflection in an arbitrary root (coefficient vector) on coroot space.
    pub fn reflection(&self, coeffs: &[i64]) -> QMatrix {
        let r = self.rank();
        let w = self.root_weight(coeffs);
        let cv = self.coroot(coeffs);
        let mut m = QMatrix::identity(r);
        for i in 0..r {
            for k in 0..r {
                m[(i, k)] -= q(cv[i] * w[k]);
            }
        }
        m
    }

    /// Fundamental coweight `ω_i^∨` in the simple coroot basis.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<Q> {
        let r = self.rank();
        let ct = QMatrix::from_int_rows(&self.cartan).transpose();
        let mut e = vec![Q::zero(); r];
        e[i] = Q::one();
        ct.solve(&e).expect("Cartan matrix is invertible")
    }
}

fn simple_reflect(cartan: &[Vec<i64>], i: usize, c: &[i64]) -> Vec<i64> {
    let pairing: i64 = (0..c.len()).map(|j| cartan[i][j] * c[j]).sum();
    let mut out = c.to_vec();
    out[i] -= pairing;
    out
}

/// Closure of the simple roots under the simple reflections.
pub(crate) fn root_closure(cartan: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let r = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..r).map(|j| (0..r).map(|k| i64::from(j == k)).collect()).collect();
    for f in &frontier {
        seen.insert(f.clone());
    }
    while let Some(c) = frontier.pop() {
        for i in 0..r {
            let img = simple_reflect(cartan, i, &c);
            if seen.insert(img.clone()) {
                frontier.push(img);
            }
        }
    }
    seen
}

// --- integer polynomials (lowest degree first) used for the degree oracle ---

fn poly_trim(p: &mut Vec<i64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Exact division by a monic polynomial; `None` if the remainder is nonzero.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() - 1 < dd {
        return if rem.iter().all(|&x| x == 0) {
            Some(vec![0])
        } else {
            None
        };
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    if rem.iter().all(|&x| x == 0) {
        Some(quot)
    } else {
        None
    }
}

fn cyclotomic(d: u32) -> Vec<i64> {
    // x^d - 1 divided by Φ_e for every proper divisor e of d.
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = poly_div_exact(&p, &cyclotomic(e)).expect("cyclotomic factorization");
        }
    }
    p
}

/// Degrees from the eigenvalues `e^{2πi m/h}` of a Coxeter element.
pub fn degrees_from_coxeter_element(cartan: &[Vec<i64>]) -> Vec<u32> {
    let r = cartan.len();
    let reflection = |i: usize| {
        let mut m = QMatrix::identity(r);
        for k in 0..r {
            m[(i, k)] -= q(cartan[k][i]);
        }
        m
    };
    let mut cox = QMatrix::identity(r);
    for i in 0..r {
        cox = cox.mul(&reflection(i));
    }
    let mut h = 1u32;
    let mut power = cox.clone();
    while !power.is_identity() {
        power = power.mul(&cox);
        h += 1;
        assert!(h <= 64, "Coxeter element of a finite Weyl group has small order");
    }
    let mut charpoly: Vec<i64> = cox
        .characteristic_polynomial()
        .into_iter()
        .map(|c| c.to_integer())
        .collect();
    let mut exponents = Vec::new();
    for d in (1..=h).filter(|d| h.is_multiple_of(*d)) {
        let phi = cyclotomic(d);
        while let Some(rest) = poly_div_exact(&charpoly, &phi) {
            if charpoly.len() == 1 {
                break;
            }
            charpoly = rest;
            exponents.extend((1..h).filter(|m| h / m.gcd(&h) == d));
        }
    }
    assert_eq!(exponents.len(), r, "char poly factors into cyclotomics");
    let mut degrees: Vec<u32> = exponents.into_iter().map(|m| m + 1).collect();
    degrees.sort_unstable();
    degrees
}

pub fn build_root_system(label: TypeLabel) -> RootSystem {
    let eps = epsilon_simple_roots(label);
    let r = label.rank;
    let gram: Vec<Vec<Q>> = (0..r)
        .map(|i| (0..r).map(|j| dot(&eps[i], &eps[j])).collect())
        .collect();
    let cartan: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let c = q(2) * gram[j][i] / gram[i][i];
                    c.to_integer()
                })
                .collect()
        })
        .collect();
    let closure = root_closure(&cartan);
    let mut positive: Vec<Vec<i64>> = closure.into_iter().filter(|c| c.iter().all(|&x| x >= 0)).collect();
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let highest_root = positive.last().cloned().expect("nonempty root system");
    let degrees = degrees_from_coxeter_element(&cartan);
    debug_assert_eq!(degrees, tabulated_degrees(label));
    RootSystem {
        label,
        cartan,
        gram,
        positive_roots: positive,
        highest_root,
        degrees,
    }
}

/// Parses, canonicalizes and builds in one step.
pub fn root_system(label: &str) -> Result<RootSystem> {
    Ok(build_root_system(label.parse()?))
}

pub fn weyl_degrees(system: &RootSystem) -> Vec<u32> {
    system.degrees.clone()
}

/// Tabulated degrees, kept separate from the eigenvalue computation.
pub fn degree_table(label: TypeLabel) -> Vec<u32> {
    tabulated_degrees(label)
}

/// An affine simple root: the functional `x ↦ <linear, x> + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRoot {
    /// Linear part in fundamental weight coordinates.
    pub linear: Vec<i64>,
    pub offset: Q,
    /// Coroot of the linear part, in the simple coroot basis.
    pub coroot: Vec<i64>,
    /// Squared length of the linear part.
    pub norm: Q,
}

impl AffineRoot {
    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&int_vec(&self.linear), x) + self.offset
    }
}

#[derive(Clone, Debug)]
pub struct AffineRootData {
    pub system: RootSystem,
    /// Node 0 is `α_0 = 1 - α_h`; node `i ≥ 1` is the simple root `α_i`.
    pub roots: Vec<AffineRoot>,
    /// Coefficient of each node in the null root `α_0 + α_h` (node 0 gets 1).
    pub marks: Vec<i64>,
    /// `vertices[t]` lies on every wall except wall `t`.
    pub vertices: Vec<Vec<Q>>,
    /// `affine_cartan[i][j] = <α_j, α_i^∨>` on linear parts.
    pub affine_cartan: Vec<Vec<i64>>,
}

impl AffineRootData {
    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn num_nodes(&self) -> usize {
        self.roots.len()
    }

    pub fn node_name(i: usize) -> String {
        format!("a{i}")
    }

    /// An interior point of the fundamental alcove (vertex barycenter).
    pub fn interior_point(&self) -> Vec<Q> {
        let r = self.rank();
        let n = q(self.vertices.len() as i64);
        (0..r)
            .map(|k| self.vertices.iter().fold(Q::zero(), |acc, v| acc + v[k]) / n)
            .collect()
    }

    /// Alcove inequalities `α(x) ≥ 0` for every affine simple root.
    pub fn contains(&self, x: &[Q]) -> bool {
        self.roots.iter().all(|a| a.eval(x) >= Q::zero())
    }

    /// Order of `s_i s_j` read off the affine Cartan matrix.
    pub fn cartan_bond_order(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        match self.affine_cartan[i][j] * self.affine_cartan[j][i] {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }
}

pub fn affine_root_data(system: &RootSystem) -> AffineRootData {
    let r = system.rank();
    let theta = system.root_weight(&system.highest_root);
    let theta_coroot = system.highest_coroot();
    let theta_norm = system.root_norm(&system.highest_root);
    let mut roots = vec![AffineRoot {
        linear: theta.iter().map(|x| -x).collect(),
        offset: Q::one(),
        coroot: theta_coroot.iter().map(|x| -x).collect(),
        norm: theta_norm,
    }];
    for j in 0..r {
        let mut e = vec![0i64; r];
        e[j] = 1;
        roots.push(AffineRoot {
            linear: system.simple_root(j),
            offset: Q::zero(),
            coroot: e,
            norm: system.gram[j][j],
        });
    }
    let mut marks = vec![1i64];
    marks.extend(system.highest_root.iter().copied());

    let vertices: Vec<Vec<Q>> = (0..=r)
        .map(|t| {
            let tight: Vec<&AffineRoot> = roots
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != t)
                .map(|(_, a)| a)
                .collect();
            let rows: Vec<Vec<Q>> = tight.iter().map(|a| int_vec(&a.linear)).collect();
            let rhs: Vec<Q> = tight.iter().map(|a| -a.offset).collect();
            QMatrix::from_rows(&rows)
                .solve(&rhs)
                .expect("alcove vertex is a finite point")
        })
        .collect();

    let n = r + 1;
    let affine_cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| roots[j].linear.iter().zip(&roots[i].coroot).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();

    AffineRootData {
        system: system.clone(),
        roots,
        marks,
        vertices,
        affine_cartan,
    }
}

/// Identifies a connected finite Cartan matrix from its root count, its
/// rank and the number of long roots. `gram` is the Gram matrix of the
/// simple roots the Cartan matrix was built from.
pub fn classify_cartan(cartan: &[Vec<i64>], gram: &[Vec<Q>]) -> Option<TypeLabel> {
    let n = cartan.len();
    let roots = root_closure(cartan);
    let count = roots.len();
    let norm = |c: &Vec<i64>| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                s += gram[i][j] * q(c[i] * c[j]);
            }
        }
        s
    };
    let norms: Vec<Q> = roots.iter().map(norm).collect();
    let longest = norms.iter().copied().max()?;
    let long = norms.iter().filter(|&&x| x == longest).count();
    let simply_laced = long == count;
    let (family, rank) = match (n, count, simply_laced) {
        (1, 2, _) => (Family::A, 1),
        (_, c, true) if c == n * (n + 1) => (Family::A, n),
        (_, c, true) if n >= 4 && c == 2 * n * (n - 1) => (Family::D, n),
        (6, 72, true) => (Family::E, 6),
        (7, 126, true) => (Family::E, 7),
        (8, 240, true) => (Family::E, 8),
        (2, 12, false) => (Family::G, 2),
        (4, 48, false) => (Family::F, 4),
        (2, 8, false) => (Family::B, 2),
        (_, c, false) if c == 2 * n * n && long == 2 * n * (n - 1) => (Family::B, n),
        (_, c, false) if c == 2 * n * n && long == 2 * n => (Family::C, n),
        _ => return None,
    };
    TypeLabel::new(family, rank).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        root_system(s).unwrap()
    }

    #[test]
    fn root_counts() {
        for (label, count) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A3", 12),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("F4", 48),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            assert_eq!(rs(label).all_roots().len(), count, "{label}");
        }
    }

    #[test]
    fn degrees_match_examples_and_table() {
        assert_eq!(rs("A1").degrees, vec![2]);
        assert_eq!(rs("A2").degrees, vec![2, 3]);
        assert_eq!(rs("B2").degrees, vec![2, 4]);
        assert_eq!(rs("G2").degrees, vec![2, 6]);
        assert_eq!(rs("C3").degrees, vec![2, 4, 6]);
        assert_eq!(rs("C3").weyl_order(), 48);
        for label in ["A4", "B4", "C4", "D4", "D5", "F4", "E6", "E7", "E8"] {
            let r = rs(label);
            assert_eq!(r.degrees, degree_table(r.label), "{label}");
            let exps: u32 = r.degrees.iter().map(|d| d - 1).sum();
            assert_eq!(exps as usize, r.num_positive_roots(), "{label}");
        }
    }

    #[test]
    fn cartan_classification_recovers_labels() {
        for label in ["A1", "A4", "B2", "B3", "C3", "C4", "D4", "D5", "G2", "F4", "E6", "E7"] {
            let r = rs(label);
            assert_eq!(classify_cartan(&r.cartan, &r.gram), Some(r.label), "{label}");
        }
    }

    #[test]
    fn aliases_canonicalize() {
        assert_eq!("C2".parse::<TypeLabel>().unwrap().to_string(), "B2");
        assert_eq!("B1".parse::<TypeLabel>().unwrap().to_string(), "A1");
        assert_eq!("D3".parse::<TypeLabel>().unwrap().to_string(), "A3");
        assert_eq!("C3".parse::<TypeLabel>().unwrap().to_string(), "C3");
    }

    #[test]
    fn invalid_labels_are_rejected() {
        assert!(matches!("E9".parse::<TypeLabel>(), Err(Error::RankOutOfRange { .. })));
        assert!(matches!("G3".parse::<TypeLabel>(), Err(Error::RankOutOfRange { .. })));
        assert!(matches!("D2".parse::<TypeLabel>(), Err(Error::RankOutOfRange { .. })));
        assert!(matches!("A0".parse::<TypeLabel>(), Err(Error::RankOutOfRange { .. })));
        assert!(matches!("X3".parse::<TypeLabel>(), Err(Error::UnknownType(_))));
        assert!(matches!("A".parse::<TypeLabel>(), Err(Error::UnknownType(_))));
    }

    #[test]
    fn cartan_matrix_shape() {
        let b2 = rs("B2");
        assert_eq!(b2.cartan, vec![vec![2, -1], vec![-2, 2]]);
        let g2 = rs("G2");
        assert_eq!(g2.cartan, vec![vec![2, -3], vec![-1, 2]]);
        for r in [rs("F4"), rs("E8"), rs("C3")] {
            for i in 0..r.rank() {
                assert_eq!(r.cartan[i][i], 2);
                for j in 0..r.rank() {
                    if i != j {
                        assert!(r.cartan[i][j] <= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn highest_root_dominates() {
        for label in ["A3", "B3", "C3", "G2", "F4", "E6"] {
            let r = rs(label);
            for beta in &r.positive_roots {
                assert!(r.highest_root.iter().zip(beta).all(|(h, b)| h >= b), "{label}");
            }
        }
        assert_eq!(rs("G2").highest_root, vec![3, 2]);
        assert_eq!(rs("E8").highest_root, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn affine_a1_alcove_is_half_coroot_segment() {
        let a = affine_root_data(&rs("A1"));
        assert_eq!(a.num_nodes(), 2);
        assert_eq!(a.vertices, vec![vec![q(0)], vec![qf(1, 2)]]);
        assert_eq!(a.roots[0].offset, q(1));
        assert_eq!(a.roots[0].linear, vec![-2]);
    }

    #[test]
    fn affine_a2_is_a_triangle_of_order_three_bonds() {
        let a = affine_root_data(&rs("A2"));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(a.cartan_bond_order(i, j), Some(3));
                }
            }
        }
        assert_eq!(affine_root_data(&rs("A1")).cartan_bond_order(0, 1), None);
    }

    #[test]
    fn alcove_vertices_satisfy_all_inequalities() {
        for label in ["A3", "B3", "C3", "G2", "F4", "E8"] {
            let a = affine_root_data(&rs(label));
            for (t, v) in a.vertices.iter().enumerate() {
                assert!(a.contains(v));
                for (i, root) in a.roots.iter().enumerate() {
                    let val = root.eval(v);
                    if i == t {
                        assert!(val > Q::zero());
                    } else {
                        assert!(val.is_zero());
                    }
                }
            }
            assert!(a.contains(&a.interior_point()));
        }
    }
}
