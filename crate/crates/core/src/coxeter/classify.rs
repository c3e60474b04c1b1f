//! Recognition of finite and affine Coxeter types from a Coxeter matrix.
//!
//! Entries are `Some(m)` for a finite product order and `None` for `∞`.

use std::fmt;

use serde::{Deserialize, Serialize};

pub type CoxeterMatrix = Vec<Vec<Option<u32>>>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoxeterComponent {
    pub affine: bool,
    pub family: char,
    /// Rank of the finite type (the number of nodes minus one when affine).
    pub rank: usize,
    /// Bond label for the dihedral family `I2(m)`.
    pub bond: u32,
}

impl fmt::Display for CoxeterComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.affine {
            write!(f, "~")?;
        }
        if self.family == 'I' {
            write!(f, "I2({})", self.bond)
        } else {
            write!(f, "{}{}", self.family, self.rank)
        }
    }
}

impl CoxeterComponent {
    fn finite(family: char, rank: usize) -> Self {
        CoxeterComponent {
            affine: false,
            family,
            rank,
            bond: 0,
        }
    }

    fn affine(family: char, rank: usize) -> Self {
        CoxeterComponent {
            affine: true,
            family,
            rank,
            bond: 0,
        }
    }

    /// Group order of a finite component.
    pub fn order(&self) -> Option<u128> {
        if self.affine {
            return None;
        }
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        Some(match (self.family, self.rank) {
            ('A', _) => fact(n + 1),
            ('B', _) => (1u128 << n) * fact(n),
            ('D', _) => (1u128 << (n - 1)) * fact(n),
            ('E', 6) => 51_840,
            ('E', 7) => 2_903_040,
            ('E', 8) => 696_729_600,
            ('F', 4) => 1_152,
            ('G', 2) => 12,
            ('H', 3) => 120,
            ('H', 4) => 14_400,
            ('I', _) => 2 * self.bond as u128,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterType {
    pub components: Vec<CoxeterComponent>,
}

impl CoxeterType {
    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| !c.affine)
    }

    pub fn order(&self) -> Option<u128> {
        self.components
            .iter()
            .try_fold(1u128, |acc, c| c.order().map(|o| acc * o))
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "trivial");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Classifies a Coxeter matrix; `None` if it is not a valid Coxeter matrix
/// or some component is neither of finite nor of affine type.
pub fn classify(m: &CoxeterMatrix) -> Option<CoxeterType> {
    let n = m.len();
    for i in 0..n {
        if m[i].len() != n || m[i][i] != Some(1) {
            return None;
        }
        for j in 0..n {
            if m[i][j] != m[j][i] || (i != j && m[i][j] == Some(1)) {
                return None;
            }
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && m[i][j] != Some(2) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        components.push(classify_connected(m, &comp)?);
    }
    components.sort();
    Some(CoxeterType { components })
}

fn classify_connected(m: &CoxeterMatrix, nodes: &[usize]) -> Option<CoxeterComponent> {
    let k = nodes.len();
    if k == 1 {
        return Some(CoxeterComponent::finite('A', 1));
    }
    // edges with label >= 3 (None = ∞)
    let mut edges: Vec<(usize, usize, Option<u32>)> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let x = m[nodes[a]][nodes[b]];
            if x != Some(2) {
                edges.push((a, b, x));
            }
        }
    }
    if edges.iter().any(|e| e.2.is_none()) {
        return (k == 2).then(|| CoxeterComponent::affine('A', 1));
    }
    if k == 2 {
        let b = edges[0].2.unwrap();
        return Some(match b {
            3 => CoxeterComponent::finite('A', 2),
            4 => CoxeterComponent::finite('B', 2),
            6 => CoxeterComponent::finite('G', 2),
            _ => CoxeterComponent {
                affine: false,
                family: 'I',
                rank: 2,
                bond: b,
            },
        });
    }
    let mut degree = vec![0usize; k];
    let mut adj = vec![Vec::new(); k];
    for &(a, b, x) in &edges {
        degree[a] += 1;
        degree[b] += 1;
        adj[a].push((b, x.unwrap()));
        adj[b].push((a, x.unwrap()));
    }
    let heavy: Vec<u32> = edges.iter().map(|e| e.2.unwrap()).filter(|&x| x > 3).collect();

    if edges.len() == k {
        // a cycle with all labels 3 is ~A_{k-1}
        if heavy.is_empty() && degree.iter().all(|&d| d == 2) {
            return Some(CoxeterComponent::affine('A', k - 1));
        }
        return None;
    }
    if edges.len() != k - 1 {
        return None;
    }
    let leaves: Vec<usize> = (0..k).filter(|&i| degree[i] == 1).collect();
    let branch: Vec<usize> = (0..k).filter(|&i| degree[i] >= 3).collect();

    // arm lengths from a branch node
    let arm_lengths = |center: usize| -> Vec<usize> {
        let mut lens = Vec::new();
        for &(start, _) in &adj[center] {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while degree[cur] == 2 {
                let next = adj[cur].iter().map(|e| e.0).find(|&x| x != prev).unwrap();
                prev = cur;
                cur = next;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    };

    if heavy.is_empty() {
        if branch.is_empty() {
            return Some(CoxeterComponent::finite('A', k));
        }
        if branch.len() == 1 {
            let c = branch[0];
            let arms = arm_lengths(c);
            return match arms.as_slice() {
                [1, 1, _] => Some(CoxeterComponent::finite('D', k)),
                [1, 2, 2] => Some(CoxeterComponent::finite('E', 6)),
                [1, 2, 3] => Some(CoxeterComponent::finite('E', 7)),
                [1, 2, 4] => Some(CoxeterComponent::finite('E', 8)),
                [2, 2, 2] => Some(CoxeterComponent::affine('E', 6)),
                [1, 3, 3] => Some(CoxeterComponent::affine('E', 7)),
                [1, 2, 5] => Some(CoxeterComponent::affine('E', 8)),
                [1, 1, 1, 1] => Some(CoxeterComponent::affine('D', 4)),
                _ => None,
            };
        }
        if branch.len() == 2 && branch.iter().all(|&c| degree[c] == 3) {
            let forked = branch
                .iter()
                .all(|&c| adj[c].iter().filter(|e| degree[e.0] == 1).count() >= 2);
            if forked && leaves.len() == 4 {
                return Some(CoxeterComponent::affine('D', k - 1));
            }
        }
        return None;
    }

    let heavy_edges: Vec<&(usize, usize, Option<u32>)> = edges.iter().filter(|e| e.2.unwrap() > 3).collect();
    let at_leaf = |e: &(usize, usize, Option<u32>)| degree[e.0] == 1 || degree[e.1] == 1;

    if heavy == [6] {
        // ~G2: path of three nodes with the 6 at one end
        if k == 3 && branch.is_empty() && at_leaf(heavy_edges[0]) {
            return Some(CoxeterComponent::affine('G', 2));
        }
        return None;
    }
    if heavy == [5] {
        if branch.is_empty() && at_leaf(heavy_edges[0]) && (k == 3 || k == 4) {
            return Some(CoxeterComponent::finite('H', k));
        }
        return None;
    }
    if heavy.iter().all(|&x| x == 4) {
        if heavy.len() == 2 {
            if branch.is_empty() && heavy_edges.iter().all(|e| at_leaf(e)) {
                return Some(CoxeterComponent::affine('C', k - 1));
            }
            return None;
        }
        if heavy.len() != 1 {
            return None;
        }
        let e = heavy_edges[0];
        if branch.is_empty() {
            if at_leaf(e) {
                return Some(CoxeterComponent::finite('B', k));
            }
            // 4 in the interior of a path: sides of the edge
            let side = |from: usize, avoid: usize| -> usize {
                let (mut prev, mut cur, mut len) = (avoid, from, 1);
                while degree[cur] == 2 {
                    let next = adj[cur].iter().map(|x| x.0).find(|&x| x != prev).unwrap();
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            };
            let mut sides = [side(e.0, e.1), side(e.1, e.0)];
            sides.sort_unstable();
            return match sides {
                [2, 2] => Some(CoxeterComponent::finite('F', 4)),
                [2, 3] => Some(CoxeterComponent::affine('F', 4)),
                _ => None,
            };
        }
        if branch.len() == 1 && degree[branch[0]] == 3 && at_leaf(e) {
            let c = branch[0];
            let simple_leaves = adj[c].iter().filter(|x| degree[x.0] == 1 && x.1 == 3).count();
            if simple_leaves >= 2 {
                return Some(CoxeterComponent::affine('B', k - 1));
            }
        }
        return None;
    }
    None
}

/// Coxeter matrix of a Cartan matrix (bond orders from `a_ij a_ji`).
pub fn coxeter_matrix_of_cartan(cartan: &[Vec<i64>]) -> CoxeterMatrix {
    let n = cartan.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        return Some(1);
                    }
                    match cartan[i][j] * cartan[j][i] {
                        0 => Some(2),
                        1 => Some(3),
                        2 => Some(4),
                        3 => Some(6),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect()
}
