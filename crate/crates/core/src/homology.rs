//! Augmented coset chain complexes of Coxeter groups and their homology.
//!
//! Position `k` of the complex is `⊕_{|I| = k} ℤ[W/W_I]` for `I ⊆ S`, the
//! last position `I = S` being the single coset `W/W = ℤ`. The differential
//! sends `wW_I` to `Σ_{s ∉ I} ε(I, s) wW_{I ∪ s}` with
//! `ε(I, s) = (-1)^{#{t ∈ I : t < s}}`. Position `k` is simplicial degree
//! `|S| - 1 - k`, so the augmentation sits in degree `-1`.
//!
//! For infinite `W`, cosets are kept when their minimal representative has
//! length at most `N`. This is a finite stand-in for the full complex.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{classify, simple_reflection, AffineElement, CoxeterMatrix, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::smith_normal_form;
use crate::rootsys::{affine_root_data, build_root_system, TypeLabel};

/// Simple reflections of the finite Weyl group (nodes `a1..ar`).
pub fn finite_weyl_generators(label: TypeLabel) -> Vec<AffineElement> {
    let data = affine_root_data(&build_root_system(label));
    (1..data.num_nodes()).map(|i| simple_reflection(&data, i)).collect()
}

/// Simple reflections of the affine Weyl group (nodes `a0..ar`).
pub fn affine_weyl_generators(label: TypeLabel) -> Vec<AffineElement> {
    let data = affine_root_data(&build_root_system(label));
    (0..data.num_nodes()).map(|i| simple_reflection(&data, i)).collect()
}

/// Word lengths of all elements up to `max_length` (everything if `None`).
fn length_ball(
    dim: usize,
    gens: &[AffineElement],
    max_length: Option<usize>,
    budget: usize,
) -> Result<HashMap<AffineElement, usize>> {
    let id = AffineElement::identity(dim);
    let mut len = HashMap::new();
    len.insert(id.clone(), 0);
    let mut frontier = vec![id];
    let mut depth = 0;
    while !frontier.is_empty() && max_length.is_none_or(|m| depth < m) {
        let mut next = Vec::new();
        for w in &frontier {
            for s in gens {
                let ws = w.compose(s);
                if !len.contains_key(&ws) {
                    if len.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            budget,
                            context: "enumerating a length ball".into(),
                        });
                    }
                    len.insert(ws.clone(), depth + 1);
                    next.push(ws);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(len)
}

fn sign(subset: &[usize], s: usize) -> i64 {
    if subset.iter().filter(|&&t| t < s).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect();
    out.sort();
    out
}

/// One basis element `wW_I`, with `w` the minimal representative.
#[derive(Clone, Debug)]
pub struct Cell {
    pub subset: Vec<usize>,
    pub representative: AffineElement,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct CosetComplex {
    pub num_generators: usize,
    pub truncation: Option<usize>,
    /// `cells[k]`: basis of position `k`, grouped by subset in lex order.
    pub cells: Vec<Vec<Cell>>,
    /// `boundaries[k]`: matrix of `C^k → C^{k+1}`, rows indexed by targets.
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

impl CosetComplex {
    /// Builds the complex for the Coxeter system generated by `gens`.
    ///
    /// `truncation` must be given when `gens` generate an infinite group.
    pub fn build(gens: &[AffineElement], truncation: Option<usize>, exec: Execution) -> Result<CosetComplex> {
        let n = gens.len();
        let dim = gens.first().map_or(0, |g| g.dim());
        let budget = DEFAULT_BUDGET;
        let len = length_ball(dim, gens, truncation.map(|t| t + 1), budget)?;
        let max = truncation.unwrap_or(usize::MAX);
        let length = |w: &AffineElement| len.get(w).copied();
        // w is minimal in wW_I iff no s in I shortens it
        let minimal = |w: &AffineElement, subset: &[usize]| {
            let l = length(w).expect("in ball");
            subset
                .iter()
                .all(|&s| length(&w.compose(&gens[s])).is_none_or(|ls| ls > l))
        };
        let mut elements: Vec<(&AffineElement, usize)> =
            len.iter().map(|(w, &l)| (w, l)).filter(|(_, l)| *l <= max).collect();
        elements.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.sort_key().cmp(&b.0.sort_key())));

        let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(n + 1);
        let mut index: Vec<HashMap<(Vec<usize>, AffineElement), usize>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut level = Vec::new();
            let mut idx = HashMap::new();
            for subset in subsets_of_size(n, k) {
                for &(w, l) in &elements {
                    if minimal(w, &subset) {
                        idx.insert((subset.clone(), w.clone()), level.len());
                        level.push(Cell {
                            subset: subset.clone(),
                            representative: w.clone(),
                            length: l,
                        });
                    }
                }
            }
            cells.push(level);
            index.push(idx);
        }

        let min_rep = |w: &AffineElement, subset: &[usize]| -> Option<AffineElement> {
            let mut w = w.clone();
            loop {
                let l = length(&w)?;
                match subset
                    .iter()
                    .map(|&s| w.compose(&gens[s]))
                    .find(|ws| length(ws).is_some_and(|x| x < l))
                {
                    Some(shorter) => w = shorter,
                    None => return Some(w),
                }
            }
        };

        let boundaries: Vec<Result<Vec<Vec<i64>>>> = exec.map_range(n, |k| {
            let mut m = vec![vec![0i64; cells[k].len()]; cells[k + 1].len()];
            for (j, cell) in cells[k].iter().enumerate() {
                for s in (0..n).filter(|s| !cell.subset.contains(s)) {
                    let mut bigger = cell.subset.clone();
                    bigger.push(s);
                    bigger.sort_unstable();
                    let target = min_rep(&cell.representative, &bigger)
                        .and_then(|r| index[k + 1].get(&(bigger.clone(), r)).copied())
                        .ok_or_else(|| {
                            Error::InconsistentComplex(format!(
                                "face {bigger:?} of a cell at position {k} is missing from the truncation"
                            ))
                        })?;
                    m[target][j] += sign(&cell.subset, s);
                }
            }
            Ok(m)
        });
        let boundaries = boundaries.into_iter().collect::<Result<Vec<_>>>()?;
        let complex = CosetComplex {
            num_generators: n,
            truncation,
            cells,
            boundaries,
        };
        complex.check_square_zero()?;
        Ok(complex)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    /// Number of cells at position `k` belonging to the subset `I`.
    pub fn cells_for(&self, subset: &[usize]) -> usize {
        self.cells
            .get(subset.len())
            .map_or(0, |c| c.iter().filter(|x| x.subset == subset).count())
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for k in 0..self.boundaries.len().saturating_sub(1) {
            let (a, b) = (&self.boundaries[k + 1], &self.boundaries[k]);
            for (i, row) in a.iter().enumerate() {
                for j in 0..self.cells[k].len() {
                    let v: i64 = row.iter().zip(b).map(|(x, col)| x * col[j]).sum();
                    if v != 0 {
                        return Err(Error::InconsistentComplex(format!(
                            "d∘d is nonzero at position {k}, entry ({i}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub position: usize,
    /// Simplicial degree; `-1` is the augmentation.
    pub degree: i64,
    pub chain_rank: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub truncation: Option<usize>,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyReport {
    pub fn nonzero(&self) -> Vec<&HomologyGroup> {
        self.groups.iter().filter(|g| !g.is_zero()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.nonzero().is_empty()
    }

    /// Exactly one nonzero group, and it is `ℤ`.
    pub fn is_single_z(&self) -> bool {
        let nz = self.nonzero();
        nz.len() == 1 && nz[0].free_rank == 1 && nz[0].torsion.is_empty()
    }
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Integer homology at every position, from Smith normal forms.
pub fn homology_report(c: &CosetComplex, exec: Execution) -> HomologyReport {
    // (rank, invariant factors > 1) of each differential
    let forms: Vec<(usize, Vec<BigInt>)> = exec.map(&c.boundaries, |m| {
        if m.is_empty() || m[0].is_empty() {
            return (0, Vec::new());
        }
        let s = smith_normal_form(&to_big(m), false);
        let rank = s.rank();
        let tors = s.diagonal.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        (rank, tors)
    });
    report_from(c, &forms)
}

fn report_from(c: &CosetComplex, forms: &[(usize, Vec<BigInt>)]) -> HomologyReport {
    let n = c.num_generators;
    let groups = (0..=n)
        .map(|k| {
            let out_rank = forms.get(k).map_or(0, |f| f.0);
            let (in_rank, torsion) = if k == 0 { (0, Vec::new()) } else { forms[k - 1].clone() };
            let m = c.cells[k].len();
            HomologyGroup {
                position: k,
                degree: n as i64 - 1 - k as i64,
                chain_rank: m,
                free_rank: m - out_rank - in_rank,
                torsion: torsion.iter().map(|d| d.to_string()).collect(),
            }
        })
        .collect();
    HomologyReport {
        truncation: c.truncation,
        groups,
    }
}

/// Rank over ℚ by fraction-free elimination.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a = to_big(m);
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Acyclicity over ℚ only, skipping Smith normal forms.
pub fn rationally_acyclic(c: &CosetComplex, exec: Execution) -> bool {
    let ranks = exec.map(&c.boundaries, |m| rational_rank(m));
    (0..c.cells.len()).all(|k| {
        let out = ranks.get(k).copied().unwrap_or(0);
        let inn = if k == 0 { 0 } else { ranks[k - 1] };
        c.cells[k].len() == out + inn
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitReport {
    pub max_length: usize,
    pub pairs_checked: usize,
    /// Pairs `(I, I′)` with `W_I ∩ W_{I′} ≠ W_{I ∩ I′}` on the ball.
    pub intersection_failures: Vec<(Vec<usize>, Vec<usize>)>,
    /// Finite `I` whose enumerated `W_I` is smaller than its Coxeter order.
    pub injectivity_failures: Vec<Vec<usize>>,
    /// Subsets whose `W_I` is infinite; injectivity there is not checked.
    pub infinite_subsets: Vec<Vec<usize>>,
}

impl ColimitReport {
    pub fn passed(&self) -> bool {
        self.intersection_failures.is_empty() && self.injectivity_failures.is_empty()
    }
}

fn coxeter_matrix(gens: &[AffineElement], subset: &[usize]) -> CoxeterMatrix {
    subset
        .iter()
        .map(|&i| {
            subset
                .iter()
                .map(|&j| {
                    if i == j {
                        Some(1)
                    } else {
                        gens[i].compose(&gens[j]).order(64)
                    }
                })
                .collect()
        })
        .collect()
}

/// Checks `W_I ∩ W_{I′} = W_{I ∩ I′}` on elements of length at most
/// `max_length`, and that each finite `W_I` has its Coxeter order.
pub fn check_colimit_hypotheses(gens: &[AffineElement], max_length: usize) -> Result<ColimitReport> {
    let n = gens.len();
    let dim = gens.first().map_or(0, |g| g.dim());
    let ball = length_ball(dim, gens, Some(max_length), DEFAULT_BUDGET)?;
    let all_subsets: Vec<Vec<usize>> = (0..=n).flat_map(|k| subsets_of_size(n, k)).collect();
    let mut parabolic: HashMap<Vec<usize>, BTreeSet<Vec<(i64, i64)>>> = HashMap::new();
    for subset in &all_subsets {
        let sub: Vec<AffineElement> = subset.iter().map(|&i| gens[i].clone()).collect();
        let in_ball: BTreeSet<Vec<(i64, i64)>> = length_ball(dim, &sub, Some(max_length), DEFAULT_BUDGET)?
            .into_keys()
            .filter(|w| ball.contains_key(w))
            .map(|w| w.sort_key())
            .collect();
        parabolic.insert(subset.clone(), in_ball);
    }
    let mut intersection_failures = Vec::new();
    let mut pairs_checked = 0;
    for (a, i) in all_subsets.iter().enumerate() {
        for j in &all_subsets[a + 1..] {
            pairs_checked += 1;
            let meet: Vec<usize> = i.iter().copied().filter(|x| j.contains(x)).collect();
            let lhs: BTreeSet<_> = parabolic[i].intersection(&parabolic[j]).cloned().collect();
            if lhs != parabolic[&meet] {
                intersection_failures.push((i.clone(), j.clone()));
            }
        }
    }
    let mut injectivity_failures = Vec::new();
    let mut infinite_subsets = Vec::new();
    for subset in &all_subsets {
        let order = classify(&coxeter_matrix(gens, subset)).and_then(|t| t.order());
        match order {
            Some(order) => {
                let sub: Vec<AffineElement> = subset.iter().map(|&i| gens[i].clone()).collect();
                let got = length_ball(dim, &sub, None, DEFAULT_BUDGET)?.len() as u128;
                if got != order {
                    injectivity_failures.push(subset.clone());
                }
            }
            None => infinite_subsets.push(subset.clone()),
        }
    }
    Ok(ColimitReport {
        max_length,
        pairs_checked,
        intersection_failures,
        injectivity_failures,
        infinite_subsets,
    })
}
