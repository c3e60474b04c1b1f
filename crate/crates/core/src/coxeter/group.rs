//! Finite groups of integer matrices, stored as explicit element lists.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::classify::{CoxeterComponent, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix};

/// Square integer matrix, row-major.
pub type IntMatrix = Vec<i64>;

pub fn int_matrix_from_q(m: &QMatrix) -> Option<IntMatrix> {
    if !m.is_integral() {
        return None;
    }
    let n = m.rows();
    Some(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| *m[(i, j)].numer())
            .collect(),
    )
}

pub fn int_matrix_to_q(m: &IntMatrix, dim: usize) -> QMatrix {
    let mut out = QMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(i, j)] = q(m[i * dim + j]);
        }
    }
    out
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix, n: usize) -> IntMatrix {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn identity(n: usize) -> IntMatrix {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    dim: usize,
    elements: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// The group generated by `gens`; element 0 is the identity and the
    /// remaining elements appear in breadth-first order.
    pub fn generate(dim: usize, gens: &[IntMatrix], budget: usize) -> Result<FiniteGroup> {
        let id = identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut k = 0;
        while k < elements.len() {
            for g in gens {
                let p = mat_mul(g, &elements[k], dim);
                if !index.contains_key(&p) {
                    if elements.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            budget,
                            context: format!("enumerating a finite matrix group of degree {dim}"),
                        });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            k += 1;
        }
        let mut generators: Vec<usize> = Vec::new();
        for g in gens {
            let i = index[g];
            if i != 0 && !generators.contains(&i) {
                generators.push(i);
            }
        }
        Ok(FiniteGroup {
            dim,
            elements,
            index,
            generators,
        })
    }

    pub fn trivial(dim: usize) -> FiniteGroup {
        FiniteGroup::generate(dim, &[], 1).expect("trivial group fits any budget")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn element_q(&self, i: usize) -> QMatrix {
        int_matrix_to_q(&self.elements[i], self.dim)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = mat_mul(&self.elements[a], &self.elements[b], self.dim);
        self.index[&p]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut x = a;
        let mut prev = 0;
        while x != 0 {
            prev = x;
            x = self.mul(x, a);
        }
        // a^k = 1, so a^(k-1) is the inverse
        if a == 0 {
            0
        } else {
            prev
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by the given elements, as sorted indices.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut list = vec![0usize];
        let mut k = 0;
        while k < list.len() {
            for &g in gens {
                let p = self.mul(g, list[k]);
                if !seen[p] {
                    seen[p] = true;
                    list.push(p);
                }
            }
            k += 1;
        }
        list.sort_unstable();
        list
    }

    /// Whether a set of element indices is closed under products.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &i in set {
            member[i] = true;
        }
        set.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Conjugacy classes within a subgroup (given as sorted indices, or the
    /// whole group when `None`), each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self, within: Option<&[usize]>) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.order()).collect();
        let members = within.unwrap_or(&all);
        let conj_gens: Vec<usize> = match within {
            None => self.generators.clone(),
            Some(set) => self.generating_subset(set),
        };
        let conj_inv: Vec<usize> = conj_gens.iter().map(|&g| self.inverse(g)).collect();
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for &x in members {
            if assigned[x] {
                continue;
            }
            assigned[x] = true;
            let mut class = vec![x];
            let mut k = 0;
            while k < class.len() {
                let y = class[k];
                for (&g, &gi) in conj_gens.iter().zip(&conj_inv) {
                    let c = self.mul(self.mul(g, y), gi);
                    if !assigned[c] {
                        assigned[c] = true;
                        class.push(c);
                    }
                }
                k += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// A few elements of `set` (assumed to be a subgroup) generating it.
    pub fn generating_subset(&self, set: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in set {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup(&gens);
            }
        }
        gens
    }

    pub fn num_conjugacy_classes(&self) -> usize {
        self.conjugacy_classes(None).len()
    }

    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order()).filter(|&i| self.mul(i, i) == 0).collect()
    }

    /// Searches for elements satisfying the Coxeter relations of `m` that
    /// generate the whole group. Stops after `budget` candidate checks.
    pub fn find_coxeter_generators(&self, m: &CoxeterMatrix, budget: usize) -> Option<Vec<usize>> {
        let k = m.len();
        if k == 0 {
            return (self.order() == 1).then(Vec::new);
        }
        // Prefer the stored generators so natural presentations are found first.
        let mut candidates: Vec<usize> = self
            .generators
            .iter()
            .copied()
            .filter(|&g| g != 0 && self.mul(g, g) == 0)
            .collect();
        for i in self.involutions() {
            if !candidates.contains(&i) {
                candidates.push(i);
            }
        }
        let mut chosen = Vec::with_capacity(k);
        let mut steps = 0usize;
        self.coxeter_search(m, &candidates, &mut chosen, &mut steps, budget)
    }

    fn coxeter_search(
        &self,
        m: &CoxeterMatrix,
        candidates: &[usize],
        chosen: &mut Vec<usize>,
        steps: &mut usize,
        budget: usize,
    ) -> Option<Vec<usize>> {
        let depth = chosen.len();
        if depth == m.len() {
            return (self.subgroup(chosen).len() == self.order()).then(|| chosen.clone());
        }
        for &c in candidates {
            *steps += 1;
            if *steps > budget {
                return None;
            }
            if chosen.contains(&c) {
                continue;
            }
            let ok = chosen.iter().enumerate().all(|(i, &g)| {
                let want = m[i][depth];
                let got = self.element_order(self.mul(g, c));
                want == Some(got as u32)
            });
            if !ok {
                continue;
            }
            chosen.push(c);
            if let Some(found) = self.coxeter_search(m, candidates, chosen, steps, budget) {
                return Some(found);
            }
            chosen.pop();
            if *steps > budget {
                return None;
            }
        }
        None
    }

    /// Names the group in the vocabulary trivial / S_n / D_n / S_n ⋉ {±1}^n.
    pub fn label(&self) -> GroupLabel {
        identify(self, 2_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Trivial,
    Symmetric(usize),
    Dihedral(usize),
    Hyperoctahedral(usize),
    Unrecognized,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupLabel {
    pub kind: GroupKind,
    pub order: usize,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Trivial => write!(f, "1"),
            GroupKind::Symmetric(n) => write!(f, "S{n}"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::Hyperoctahedral(n) => write!(f, "S{n}⋉{{±1}}^{n}"),
            GroupKind::Unrecognized => write!(f, "order {} (unrecognized)", self.order),
        }
    }
}

fn line_matrix(k: usize, heavy_last: Option<u32>) -> CoxeterMatrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    Some(if i == j {
                        1
                    } else if i.abs_diff(j) == 1 {
                        if i.max(j) == k - 1 {
                            heavy_last.unwrap_or(3)
                        } else {
                            3
                        }
                    } else {
                        2
                    })
                })
                .collect()
        })
        .collect()
}

fn dihedral_matrix(m: usize) -> CoxeterMatrix {
    vec![vec![Some(1), Some(m as u32)], vec![Some(m as u32), Some(1)]]
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Candidate labels with Coxeter presentations, in preference order.
fn candidates(order: usize) -> Vec<(GroupKind, CoxeterMatrix)> {
    let mut out = Vec::new();
    for n in 2.. {
        match factorial(n) {
            Some(f) if f < order => continue,
            Some(f) if f == order => out.push((GroupKind::Symmetric(n), line_matrix(n - 1, None))),
            _ => {}
        }
        break;
    }
    if order.is_multiple_of(2) && order >= 4 {
        let m = order / 2;
        out.push((GroupKind::Dihedral(m), dihedral_matrix(m)));
    }
    for n in 2.. {
        let Some(f) = factorial(n).and_then(|f| f.checked_mul(1usize << n)) else {
            break;
        };
        if f > order {
            break;
        }
        if f == order {
            out.push((GroupKind::Hyperoctahedral(n), line_matrix(n, Some(4))));
        }
    }
    out
}

/// A genuine isomorphism test: a set of generators satisfying the Coxeter
/// relations of a candidate of the same order gives a surjection from the
/// candidate, hence an isomorphism.
pub fn identify(g: &FiniteGroup, budget: usize) -> GroupLabel {
    let order = g.order();
    if order == 1 {
        return GroupLabel {
            kind: GroupKind::Trivial,
            order,
        };
    }
    for (kind, matrix) in candidates(order) {
        if g.find_coxeter_generators(&matrix, budget).is_some() {
            return GroupLabel { kind, order };
        }
    }
    GroupLabel {
        kind: GroupKind::Unrecognized,
        order,
    }
}

/// Order of a product of finite Coxeter components, if all are finite.
pub fn coxeter_order(components: &[CoxeterComponent]) -> Option<u128> {
    components.iter().try_fold(1u128, |acc, c| c.order().map(|o| acc * o))
}
