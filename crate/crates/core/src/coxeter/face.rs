use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, Q};
use crate::rootsys::{classify_cartan, AffineRootData, TypeLabel};

/// One simple factor of the Levi subsystem of a face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviFactor {
    pub nodes: Vec<usize>,
    pub label: TypeLabel,
}

/// A proper subset `I` of the affine simple roots, i.e. a face of the
/// closed fundamental alcove.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveFace {
    pub ambient: TypeLabel,
    pub nodes: Vec<usize>,
    pub factors: Vec<LeviFactor>,
    pub z_dimension: usize,
    /// Integer basis of `{v : <α, v> = 0 for α in I}` in coroot coordinates.
    pub cocharacter_lattice: Vec<Vec<i64>>,
}

impl AlcoveFace {
    pub fn name(&self) -> String {
        face_name(&self.nodes)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    /// Factor types joined by `x` in sorted order, e.g. `A1xB2`.
    pub fn factor_key(&self) -> String {
        let mut labels: Vec<String> = self.factors.iter().map(|f| f.label.to_string()).collect();
        labels.sort();
        labels.join("x")
    }

    /// Whether this is a vertex of the alcove (`|I| = rank`).
    pub fn is_vertex(&self) -> bool {
        self.z_dimension == 0
    }
}

impl fmt::Display for AlcoveFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub fn face_name(nodes: &[usize]) -> String {
    let names: Vec<String> = nodes.iter().map(|&i| format!("a{i}")).collect();
    format!("{{{}}}", names.join(","))
}

/// Parses a selector such as `a0,a2` (or an empty string / `{}` for the
/// empty face) into sorted node indices, checking it names a proper subset.
pub fn parse_face_selector(selector: &str, num_nodes: usize) -> Result<Vec<usize>> {
    let bad = |reason: String| Error::InvalidFace {
        selector: selector.to_string(),
        reason,
    };
    let trimmed = selector.trim().trim_start_matches('{').trim_end_matches('}').trim();
    let mut nodes = Vec::new();
    if !trimmed.is_empty() && trimmed != "-" {
        for part in trimmed.split(',') {
            let part = part.trim();
            let idx: usize = part
                .strip_prefix('a')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| bad(format!("`{part}` is not a node name a0..a{}", num_nodes - 1)))?;
            if idx >= num_nodes {
                return Err(bad(format!(
                    "node a{idx} does not exist (nodes are a0..a{})",
                    num_nodes - 1
                )));
            }
            if nodes.contains(&idx) {
                return Err(bad(format!("node a{idx} is repeated")));
            }
            nodes.push(idx);
        }
    }
    nodes.sort_unstable();
    if nodes.len() == num_nodes {
        return Err(bad("the full set of affine simple roots is not a proper face".into()));
    }
    Ok(nodes)
}

/// Gram matrix of the linear parts of the affine simple roots.
pub fn affine_gram(data: &AffineRootData) -> Vec<Vec<Q>> {
    let sys = &data.system;
    let r = sys.rank();
    let n = data.num_nodes();
    let mut coeffs: Vec<Vec<i64>> = vec![sys.highest_root.iter().map(|x| -x).collect()];
    for j in 0..r {
        let mut e = vec![0i64; r];
        e[j] = 1;
        coeffs.push(e);
    }
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut s = Q::from_integer(0);
                    for i in 0..r {
                        for j in 0..r {
                            s += sys.gram[i][j] * Q::from_integer(coeffs[a][i] * coeffs[b][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn build_face(data: &AffineRootData, nodes: &[usize]) -> AlcoveFace {
    let gram = affine_gram(data);
    let r = data.rank();
    let mut nodes = nodes.to_vec();
    nodes.sort_unstable();

    // connected components of the affine diagram restricted to I
    let mut seen = vec![false; nodes.len()];
    let mut factors = Vec::new();
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let a = nodes[comp[k]];
            for (j, &b) in nodes.iter().enumerate() {
                if !seen[j] && data.affine_cartan[a][b] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        let mut comp_nodes: Vec<usize> = comp.iter().map(|&i| nodes[i]).collect();
        comp_nodes.sort_unstable();
        let cartan: Vec<Vec<i64>> = comp_nodes
            .iter()
            .map(|&a| comp_nodes.iter().map(|&b| data.affine_cartan[a][b]).collect())
            .collect();
        let sub_gram: Vec<Vec<Q>> = comp_nodes
            .iter()
            .map(|&a| comp_nodes.iter().map(|&b| gram[a][b]).collect())
            .collect();
        let label =
            classify_cartan(&cartan, &sub_gram).expect("proper subsets of an affine diagram are of finite type");
        factors.push(LeviFactor {
            nodes: comp_nodes,
            label,
        });
    }
    factors.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.nodes.cmp(&b.nodes)));

    let rows: Vec<Vec<i64>> = nodes.iter().map(|&i| data.roots[i].linear.clone()).collect();
    let cocharacter_lattice = integer_kernel(&rows, r);
    AlcoveFace {
        ambient: data.system.label,
        z_dimension: r - nodes.len(),
        nodes,
        factors,
        cocharacter_lattice,
    }
}

/// All proper subsets of the affine simple roots, sorted by size and then
/// lexicographically.
pub fn enumerate_faces(data: &AffineRootData) -> Vec<AlcoveFace> {
    let n = data.num_nodes();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1u32 << n) - 1)
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets.iter().map(|s| build_face(data, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{affine_root_data, root_system};

    fn data(t: &str) -> AffineRootData {
        affine_root_data(&root_system(t).unwrap())
    }

    #[test]
    fn face_counts() {
        assert_eq!(enumerate_faces(&data("A1")).len(), 3);
        assert_eq!(enumerate_faces(&data("A2")).len(), 7);
        assert_eq!(enumerate_faces(&data("C3")).len(), 15);
        let names: Vec<String> = enumerate_faces(&data("A1")).iter().map(|f| f.name()).collect();
        assert_eq!(names, vec!["{}", "{a0}", "{a1}"]);
    }

    #[test]
    fn levi_factors_of_g2_vertices() {
        let d = data("G2");
        let key = |nodes: &[usize]| build_face(&d, nodes).factor_key();
        assert_eq!(key(&[1, 2]), "G2");
        assert_eq!(key(&[0, 2]), "A2");
        assert_eq!(key(&[0, 1]), "A1xA1");
    }

    #[test]
    fn levi_factors_of_c3_and_b3() {
        let c3 = data("C3");
        assert_eq!(build_face(&c3, &[0, 1, 2]).factor_key(), "C3");
        assert_eq!(build_face(&c3, &[0, 2, 3]).factor_key(), "A1xB2");
        assert_eq!(build_face(&c3, &[0, 3]).factor_key(), "A1xA1");
        let b3 = data("B3");
        assert_eq!(build_face(&b3, &[0, 1, 2]).factor_key(), "A3");
        assert_eq!(build_face(&b3, &[0, 2, 3]).factor_key(), "B3");
    }

    #[test]
    fn cocharacter_lattice_rank_matches_z_dimension() {
        for t in ["A2", "B2", "G2", "A3", "B3", "C3"] {
            let d = data(t);
            for f in enumerate_faces(&d) {
                assert_eq!(f.cocharacter_lattice.len(), f.z_dimension, "{t} {}", f.name());
                for v in &f.cocharacter_lattice {
                    for &i in &f.nodes {
                        let p: i64 = d.roots[i].linear.iter().zip(v).map(|(a, b)| a * b).sum();
                        assert_eq!(p, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn selectors() {
        assert_eq!(parse_face_selector("a0,a2", 3).unwrap(), vec![0, 2]);
        assert_eq!(parse_face_selector("", 3).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_face_selector("{a2, a1}", 3).unwrap(), vec![1, 2]);
        assert!(matches!(parse_face_selector("a3", 3), Err(Error::InvalidFace { .. })));
        assert!(matches!(
            parse_face_selector("a0,a1,a2", 3),
            Err(Error::InvalidFace { .. })
        ));
        assert!(matches!(
            parse_face_selector("a1,a1", 3),
            Err(Error::InvalidFace { .. })
        ));
        assert!(matches!(parse_face_selector("x1", 3), Err(Error::InvalidFace { .. })));
    }
}
