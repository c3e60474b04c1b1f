use std::fmt;

use num_traits::Zero;

use crate::linalg::{dot, vec_add, QMatrix, Q};
use crate::rootsys::AffineRoot;

/// An affine map `x ↦ linear·x + translation`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub linear: QMatrix,
    pub translation: Vec<Q>,
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, [", self.linear)?;
        for (i, x) in self.translation.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "])")
    }
}

impl AffineElement {
    pub fn new(linear: QMatrix, translation: Vec<Q>) -> Self {
        assert_eq!(linear.rows(), translation.len());
        AffineElement { linear, translation }
    }

    pub fn identity(dim: usize) -> Self {
        AffineElement {
            linear: QMatrix::identity(dim),
            translation: vec![Q::zero(); dim],
        }
    }

    pub fn translation_by(v: Vec<Q>) -> Self {
        AffineElement {
            linear: QMatrix::identity(v.len()),
            translation: v,
        }
    }

    /// Reflection in the zero set of an affine root: `x ↦ x - a(x) a^∨`.
    pub fn reflection(root: &AffineRoot) -> Self {
        let r = root.coroot.len();
        let mut m = QMatrix::identity(r);
        for i in 0..r {
            for k in 0..r {
                m[(i, k)] -= Q::from_integer(root.coroot[i] * root.linear[k]);
            }
        }
        let t = root.coroot.iter().map(|&c| -root.offset * Q::from_integer(c)).collect();
        AffineElement::new(m, t)
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            linear: self.linear.mul(&other.linear),
            translation: vec_add(&self.linear.mul_vec(&other.translation), &self.translation),
        }
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        vec_add(&self.linear.mul_vec(x), &self.translation)
    }

    pub fn inverse(&self) -> AffineElement {
        let inv = self
            .linear
            .inverse()
            .expect("affine Weyl group elements are invertible");
        let t = inv.mul_vec(&self.translation).into_iter().map(|x| -x).collect();
        AffineElement {
            linear: inv,
            translation: t,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.is_pure_translation_by_zero()
    }

    fn is_pure_translation_by_zero(&self) -> bool {
        self.translation.iter().all(|x| x.is_zero())
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    /// Order of the element, or `None` if it exceeds `cap`.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// The functional `x ↦ a(self⁻¹ x)` for `a(x) = <linear, x> + offset`.
    pub fn act_on_functional(&self, linear: &[Q], offset: Q) -> (Vec<Q>, Q) {
        let inv = self.inverse();
        let new_linear = inv.linear.transpose().mul_vec(linear);
        let new_offset = offset + dot(linear, &inv.translation);
        (new_linear, new_offset)
    }

    /// Stable total order used to make element lists deterministic.
    pub fn sort_key(&self) -> Vec<(i64, i64)> {
        let n = self.dim();
        let mut key = Vec::with_capacity(n * n + n);
        for i in 0..n {
            for j in 0..n {
                let x = self.linear[(i, j)];
                key.push((*x.numer(), *x.denom()));
            }
        }
        for x in &self.translation {
            key.push((*x.numer(), *x.denom()));
        }
        key
    }
}

impl Default for AffineElement {
    fn default() -> Self {
        AffineElement::identity(0)
    }
}
