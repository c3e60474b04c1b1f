//! The relative affine Weyl group `W̃^I = N(W̃_I)/W̃_I` acting on the affine
//! span `𝔸_I` of a face, with its decomposition `W^I ⋉ Λ_I`.

use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::affine::AffineElement;
use crate::coxeter::classify::{classify, CoxeterMatrix, CoxeterType};
use crate::coxeter::face::AlcoveFace;
use crate::coxeter::group::{int_matrix_from_q, FiniteGroup, GroupLabel, IntMatrix};
use crate::coxeter::parabolic::{preserves_simple_roots, wall_element};
use crate::error::{Error, Result};
use crate::linalg::{int_vec, lattice_basis, mod_one, vec_sub, QMatrix, Q};
use crate::rootsys::AffineRootData;

/// Default cap on the number of finite-part elements enumerated per face.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Product orders above this are treated as infinite.
pub const ORDER_CAP: u32 = 12;

/// Affine coordinates on `𝔸_I`: `x = base + Σ y_k basis_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub base: Vec<Q>,
    /// Integer basis of the direction lattice, in coroot coordinates.
    pub basis: Vec<Vec<i64>>,
    pinv: QMatrix,
    basis_matrix: QMatrix,
}

impl Chart {
    pub fn new(base: Vec<Q>, basis: Vec<Vec<i64>>) -> Chart {
        let r = base.len();
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| int_vec(b)).collect();
        let bm = QMatrix::from_cols(r, &cols);
        let bt = bm.transpose();
        let gram_inv = bt.mul(&bm).inverse().expect("chart basis vectors are independent");
        let pinv = gram_inv.mul(&bt);
        Chart {
            base,
            basis,
            pinv,
            basis_matrix: bm,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_chart(&self, x: &[Q]) -> Vec<Q> {
        self.pinv.mul_vec(&vec_sub(x, &self.base))
    }

    pub fn from_chart(&self, y: &[Q]) -> Vec<Q> {
        let mut x = self.basis_matrix.mul_vec(y);
        for (xi, bi) in x.iter_mut().zip(&self.base) {
            *xi += *bi;
        }
        x
    }

    /// Expresses an element preserving `𝔸_I` in chart coordinates.
    pub fn restrict(&self, g: &AffineElement) -> AffineElement {
        let linear = self.pinv.mul(&g.linear).mul(&self.basis_matrix);
        let moved = vec_sub(&g.apply(&self.base), &self.base);
        AffineElement::new(linear, self.pinv.mul_vec(&moved))
    }
}

#[derive(Clone, Debug)]
pub struct WallGenerator {
    pub node: usize,
    /// `v_s` on the full space, in coroot coordinates.
    pub element: AffineElement,
    /// `v_s` in chart coordinates on `𝔸_I`.
    pub restricted: AffineElement,
}

#[derive(Clone, Debug)]
pub struct RelativeWeylGroup {
    pub face: AlcoveFace,
    pub chart: Chart,
    pub generators: Vec<WallGenerator>,
    /// Nodes `s ∉ I` whose `v_s` does not normalize `W̃_I`.
    pub non_normalizing: Vec<usize>,
    pub coxeter_matrix: CoxeterMatrix,
    pub coxeter_type: Option<CoxeterType>,
    /// Linear parts, acting on chart coordinates.
    pub finite_part: FiniteGroup,
    /// Canonical basis of `Λ_I` in chart coordinates.
    pub lattice: Vec<Vec<Q>>,
    /// Whether the chart origin is a special vertex, so that the finite
    /// part is realized by the stabilizer of the origin.
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub max_length: usize,
    pub elements: usize,
    pub failures: usize,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A point of `Λ_I^* ⊗ Q/Z`, coordinates reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionPoint {
    pub coords: Vec<Q>,
}

impl TorsionPoint {
    pub fn new(coords: Vec<Q>) -> TorsionPoint {
        TorsionPoint {
            coords: mod_one(&coords),
        }
    }

    pub fn zero(dim: usize) -> TorsionPoint {
        TorsionPoint {
            coords: vec![Q::zero(); dim],
        }
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> i64 {
        crate::linalg::common_denominator(&self.coords)
    }
}

impl std::fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn lattice_matrix(basis: &[Vec<Q>], dim: usize) -> QMatrix {
    QMatrix::from_cols(dim, basis)
}

/// Coordinates of `v` on a lattice basis, if `v` lies in its span.
fn coordinates(basis: &[Vec<Q>], dim: usize, v: &[Q]) -> Option<Vec<Q>> {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    lattice_matrix(basis, dim).solve(v)
}

fn in_lattice(basis: &[Vec<Q>], dim: usize, v: &[Q]) -> bool {
    coordinates(basis, dim, v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
}

impl RelativeWeylGroup {
    pub fn z_dimension(&self) -> usize {
        self.face.z_dimension
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice.len()
    }

    /// Whether every `v_s` normalizes `W̃_I`, so the generators account for
    /// all of `Δ̃ ∖ I`.
    pub fn coxeter_certified(&self) -> bool {
        self.non_normalizing.is_empty()
    }

    pub fn finite_label(&self) -> GroupLabel {
        self.finite_part.label()
    }

    pub fn in_lattice(&self, v: &[Q]) -> bool {
        in_lattice(&self.lattice, self.z_dimension(), v)
    }

    /// `v_s² = 1` on `𝔸_I` for every generator.
    pub fn generators_are_involutions(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.restricted.compose(&g.restricted).is_identity() && !g.restricted.is_identity())
    }

    /// Each `v_s` fixes the wall `A_I ∩ {α_s = 0}` pointwise, checked on
    /// its vertices.
    pub fn generators_fix_walls(&self, data: &AffineRootData) -> bool {
        self.generators.iter().all(|g| {
            (0..data.num_nodes())
                .filter(|&t| t != g.node && !self.face.contains(t))
                .all(|t| g.element.apply(&data.vertices[t]) == data.vertices[t])
        })
    }

    /// Checks that every element of word length at most `max_length` in the
    /// generators splits as (finite part, lattice translation).
    pub fn verify_factorization(&self, max_length: usize, cap: usize) -> FactorizationReport {
        let z = self.z_dimension();
        let id = AffineElement::identity(z);
        let mut seen: HashSet<AffineElement> = HashSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        let mut all = frontier.clone();
        for _ in 0..max_length {
            let mut next = Vec::new();
            for g in &frontier {
                for gen in &self.generators {
                    let p = gen.restricted.compose(g);
                    if seen.len() < cap && seen.insert(p.clone()) {
                        next.push(p);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        let failures = all
            .iter()
            .filter(|g| {
                let linear_ok = int_matrix_from_q(&g.linear).is_some_and(|m| self.finite_part.contains(&m));
                !(linear_ok && self.in_lattice(&g.translation))
            })
            .count();
        FactorizationReport {
            max_length,
            elements: all.len(),
            failures,
        }
    }

    /// `[Λ_I : X_*(Z_I^0)]`; chart coordinates make `X_*(Z_I^0) = Z^z`.
    pub fn cocharacter_index(&self) -> Result<u64> {
        let z = self.z_dimension();
        if z == 0 {
            return Ok(1);
        }
        let fail = |detail: String| Error::Containment {
            face: self.face.name(),
            detail,
        };
        if self.lattice.len() < z {
            return Err(fail(format!(
                "translation lattice has rank {} < {}",
                self.lattice.len(),
                z
            )));
        }
        let b = lattice_matrix(&self.lattice, z);
        let inv = b.inverse().ok_or_else(|| fail("degenerate lattice basis".into()))?;
        if !inv.is_integral() {
            return Err(fail("cocharacters of the center are not all translations".into()));
        }
        let index = b.determinant().abs().recip();
        if !index.is_integer() || !index.is_positive() {
            return Err(fail(format!("index {index} is not a positive integer")));
        }
        Ok(*index.numer() as u64)
    }

    /// Matrix of finite-part element `i` on `Λ_I` (in the lattice basis).
    pub fn action_on_lattice(&self, i: usize) -> QMatrix {
        let k = self.lattice_rank();
        let z = self.z_dimension();
        if k == 0 {
            return QMatrix::identity(0);
        }
        let b = lattice_matrix(&self.lattice, z);
        let m = self.finite_part.element_q(i);
        // columns: coordinates of m b_j on the basis
        let cols: Vec<Vec<Q>> = (0..k)
            .map(|j| {
                let img = m.mul_vec(&b.col(j));
                coordinates(&self.lattice, z, &img).expect("finite part preserves the lattice")
            })
            .collect();
        QMatrix::from_cols(k, &cols)
    }

    /// Finite part as integer matrices on `Λ_I`, in element order.
    pub fn lattice_representation(&self) -> Vec<IntMatrix> {
        (0..self.finite_part.order())
            .map(|i| int_matrix_from_q(&self.action_on_lattice(i)).expect("integral on the lattice"))
            .collect()
    }

    /// Matrices of the finite part on `Λ_I^*` (inverse transposes of the
    /// lattice action), in element order.
    pub fn dual_action(&self) -> Vec<QMatrix> {
        (0..self.finite_part.order())
            .map(|i| {
                self.action_on_lattice(i)
                    .inverse()
                    .expect("finite-part elements are invertible")
                    .transpose()
            })
            .collect()
    }

    /// Action of finite-part element `i` on `Λ_I^* ⊗ Q/Z`.
    pub fn act_on_torsion(&self, i: usize, s: &TorsionPoint) -> TorsionPoint {
        let dual = self
            .action_on_lattice(i)
            .inverse()
            .expect("finite-part elements are invertible")
            .transpose();
        TorsionPoint::new(dual.mul_vec(&s.coords))
    }

    /// `{w ∈ W^I : w·s ≡ s}` as sorted finite-part indices.
    pub fn stabilizer(&self, s: &TorsionPoint) -> Vec<usize> {
        stabilizer_with(&self.dual_action(), s)
    }

    pub fn orbit(&self, s: &TorsionPoint) -> Vec<TorsionPoint> {
        orbit_with(&self.dual_action(), s)
    }

    /// Representatives (orbit minima) of the `W^I`-orbits on torsion points
    /// whose coordinates have denominator dividing `bound`.
    pub fn torsion_orbit_representatives(&self, bound: u32) -> Vec<TorsionPoint> {
        let k = self.lattice_rank();
        let n = bound.max(1) as i64;
        let dual = self.dual_action();
        let mut reps = Vec::new();
        let mut done: HashSet<TorsionPoint> = HashSet::new();
        let total = (n as usize).pow(k as u32);
        for idx in 0..total {
            let mut rem = idx;
            let coords: Vec<Q> = (0..k)
                .map(|_| {
                    let c = (rem % n as usize) as i64;
                    rem /= n as usize;
                    Q::new(c, n)
                })
                .collect();
            let s = TorsionPoint::new(coords);
            if done.contains(&s) {
                continue;
            }
            let orbit = orbit_with(&dual, &s);
            reps.push(orbit[0].clone());
            done.extend(orbit);
        }
        reps.sort();
        reps
    }
}

pub(crate) fn stabilizer_with(dual: &[QMatrix], s: &TorsionPoint) -> Vec<usize> {
    (0..dual.len())
        .filter(|&i| TorsionPoint::new(dual[i].mul_vec(&s.coords)) == *s)
        .collect()
}

pub(crate) fn orbit_with(dual: &[QMatrix], s: &TorsionPoint) -> Vec<TorsionPoint> {
    let mut pts: Vec<TorsionPoint> = dual.iter().map(|d| TorsionPoint::new(d.mul_vec(&s.coords))).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Builds `W̃^I` for a face, enumerating at most `budget` finite-part
/// elements.
pub fn relative_weyl_group(data: &AffineRootData, face: &AlcoveFace, budget: usize) -> Result<RelativeWeylGroup> {
    let z = face.z_dimension;
    let outside: Vec<usize> = (0..data.num_nodes()).filter(|&t| !face.contains(t)).collect();
    let mut full_gens = Vec::new();
    let mut non_normalizing = Vec::new();
    // For a vertex, I ∪ {s} is all of Δ̃ and there is nothing to restrict to.
    if z > 0 {
        for &s in &outside {
            let v = wall_element(data, &face.nodes, s);
            if preserves_simple_roots(data, &v, &face.nodes) {
                full_gens.push((s, v));
            } else {
                non_normalizing.push(s);
            }
        }
    }

    let first_vertex = data.vertices[outside[0]].clone();
    let mut chart = Chart::new(first_vertex, face.cocharacter_lattice.clone());
    let restrict_all = |chart: &Chart| -> Vec<WallGenerator> {
        full_gens
            .iter()
            .map(|(s, v)| WallGenerator {
                node: *s,
                element: v.clone(),
                restricted: chart.restrict(v),
            })
            .collect()
    };
    let mut generators = restrict_all(&chart);

    let linear_gens: Vec<IntMatrix> = generators
        .iter()
        .map(|g| int_matrix_from_q(&g.restricted.linear).expect("integral on the cocharacter lattice"))
        .collect();
    let finite_part = FiniteGroup::generate(z, &linear_gens, budget)?;
    let lattice = schreier_lattice(&generators, z, budget)?;

    // Rebase at a special vertex of A_I when one exists.
    let mut split = z == 0;
    if z > 0 {
        for &t in &outside {
            let y = chart.to_chart(&data.vertices[t]);
            let special = generators.iter().all(|g| {
                let img = g.restricted.apply(&y);
                in_lattice(&lattice, z, &vec_sub(&y, &img))
            });
            if special {
                chart = Chart::new(data.vertices[t].clone(), face.cocharacter_lattice.clone());
                generators = restrict_all(&chart);
                split = true;
                break;
            }
        }
    }

    let k = generators.len();
    let coxeter_matrix: CoxeterMatrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        Some(1)
                    } else {
                        generators[i]
                            .restricted
                            .compose(&generators[j].restricted)
                            .order(ORDER_CAP)
                    }
                })
                .collect()
        })
        .collect();
    let coxeter_type = if non_normalizing.is_empty() {
        classify(&coxeter_matrix)
    } else {
        None
    };

    Ok(RelativeWeylGroup {
        face: face.clone(),
        chart,
        generators,
        non_normalizing,
        coxeter_matrix,
        coxeter_type,
        finite_part,
        lattice,
        split,
    })
}

/// Translation subgroup via Schreier generators: with a transversal `g_w`
/// of the linear-part map, the elements `g_{mw}⁻¹ γ g_w` are translations
/// and generate the kernel.
fn schreier_lattice(generators: &[WallGenerator], z: usize, budget: usize) -> Result<Vec<Vec<Q>>> {
    let id = AffineElement::identity(z);
    let key = |g: &AffineElement| int_matrix_from_q(&g.linear).expect("integral linear part");
    let mut index: HashMap<IntMatrix, usize> = HashMap::new();
    index.insert(key(&id), 0);
    let mut reps = vec![id];
    let mut found: HashSet<Vec<Q>> = HashSet::new();
    let mut pending: Vec<Vec<Q>> = Vec::new();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut k = 0;
    while k < reps.len() {
        for gen in generators {
            let p = gen.restricted.compose(&reps[k]);
            let m = key(&p);
            match index.get(&m) {
                Some(&j) => {
                    let t = reps[j].inverse().compose(&p);
                    debug_assert!(t.is_translation());
                    if t.translation.iter().any(|x| !x.is_zero()) && found.insert(t.translation.clone()) {
                        pending.push(t.translation);
                        if pending.len() >= 64 {
                            pending.append(&mut basis);
                            basis = lattice_basis(&pending, z);
                            pending.clear();
                        }
                    }
                }
                None => {
                    if reps.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            budget,
                            context: "building a transversal of the finite part".into(),
                        });
                    }
                    index.insert(m, reps.len());
                    reps.push(p);
                }
            }
        }
        k += 1;
    }
    pending.append(&mut basis);
    Ok(lattice_basis(&pending, z))
}
