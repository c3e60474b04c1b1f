//! Block decomposition over the faces of the fundamental alcove, torsion
//! parameters of each block, and restriction between partial unions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::coxeter::lemma::normalizer_cosets;
use crate::coxeter::{
    build_face, enumerate_faces, face_name, relative_weyl_group, AlcoveFace, FiniteGroup, GroupLabel, IntMatrix,
    RelativeWeylGroup, TorsionPoint, DEFAULT_BUDGET,
};
use crate::cuspidal::{cuspidal_count, CuspidalTable};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::molien::{GradedSeries, MatrixGroupAction};
use crate::rootsys::{affine_root_data, build_root_system, AffineRootData, TypeLabel};

/// Node lists serialized as `["a0", "a2"]`.
mod node_names {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(nodes: &[usize], s: S) -> Result<S::Ok, S::Error> {
        let names: Vec<String> = nodes.iter().map(|i| format!("a{i}")).collect();
        names.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names
            .iter()
            .map(|n| {
                n.strip_prefix('a')
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| serde::de::Error::custom(format!("bad node name `{n}`")))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub label: String,
    pub order: usize,
}

impl From<&GroupLabel> for GroupInfo {
    fn from(l: &GroupLabel) -> GroupInfo {
        GroupInfo {
            label: l.to_string(),
            order: l.order,
        }
    }
}

/// One face with `c_I > 0`, i.e. one component of the spectral side
/// repeated `c` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    #[serde(with = "node_names")]
    pub face: Vec<usize>,
    pub c: u64,
    pub torus_rank: usize,
    pub group: GroupInfo,
    /// `|I| = r`: the component is a point.
    pub cuspidal: bool,
    pub description: String,
    pub z_dimension: usize,
    /// `[Λ_I : X_*(Z_I^0)]`.
    pub cocharacter_index: u64,
    /// Rendered as a bare point although `W̃^I` is nontrivial.
    pub point_with_nontrivial_group: bool,
}

impl Block {
    pub fn face_name(&self) -> String {
        face_name(&self.face)
    }
}

/// `L(C^x)^d/Γ`, or `*` when `d = 0`.
pub fn describe(torus_rank: usize, group: &str) -> String {
    match torus_rank {
        0 => "*".to_string(),
        1 => format!("L(C^x)/{group}"),
        d => format!("L(C^x)^{d}/{group}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    #[serde(rename = "type")]
    pub type_label: String,
    pub components: Vec<Block>,
}

impl BlockDecomposition {
    /// `(torus rank, group label, c)` per component, sorted.
    pub fn multiset(&self) -> Vec<(usize, String, u64)> {
        let mut v: Vec<(usize, String, u64)> = self
            .components
            .iter()
            .map(|b| (b.torus_rank, b.group.label.clone(), b.c))
            .collect();
        v.sort();
        v
    }

    /// Components joined by `⊔`, with `^⊔c` for multiplicities above one.
    pub fn render_text(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|b| match b.c {
                1 => b.description.clone(),
                c if b.torus_rank == 0 => format!("{}^⊔{c}", b.description),
                c => format!("({})^⊔{c}", b.description),
            })
            .collect();
        parts.join(" ⊔ ")
    }

    /// `Σ_{|I| = r} c_I`.
    pub fn cuspidal_multiplicity(&self) -> u64 {
        self.components.iter().filter(|b| b.cuspidal).map(|b| b.c).sum()
    }

    pub fn torus_block(&self) -> Option<&Block> {
        self.components.iter().find(|b| b.face.is_empty())
    }
}

fn face_block(data: &AffineRootData, table: &CuspidalTable, face: &AlcoveFace) -> Result<Option<Block>> {
    let count = cuspidal_count(table, data, face)?;
    if count.count == 0 {
        return Ok(None);
    }
    let rwg = relative_weyl_group(data, face, DEFAULT_BUDGET)?;
    Ok(Some(block_of(&rwg, count.count, data.rank())?))
}

fn block_of(rwg: &RelativeWeylGroup, c: u64, rank: usize) -> Result<Block> {
    let label = rwg.finite_label();
    let group = GroupInfo::from(&label);
    let torus_rank = rwg.lattice_rank();
    let cuspidal = rwg.face.len() == rank;
    Ok(Block {
        face: rwg.face.nodes.clone(),
        c,
        torus_rank,
        description: describe(torus_rank, &group.label),
        point_with_nontrivial_group: torus_rank == 0 && group.order > 1,
        group,
        cuspidal,
        z_dimension: rwg.z_dimension(),
        cocharacter_index: rwg.cocharacter_index()?,
    })
}

/// Face data shared by the block-level operations.
pub struct Ambient {
    pub data: AffineRootData,
    pub faces: Vec<AlcoveFace>,
}

impl Ambient {
    pub fn new(label: TypeLabel) -> Ambient {
        let data = affine_root_data(&build_root_system(label));
        let faces = enumerate_faces(&data);
        Ambient { data, faces }
    }
}

pub fn decompose(label: TypeLabel, table: &CuspidalTable, exec: Execution) -> Result<BlockDecomposition> {
    let amb = Ambient::new(label);
    let blocks = exec.map(&amb.faces, |f| face_block(&amb.data, table, f));
    let mut components = Vec::new();
    for b in blocks {
        if let Some(b) = b? {
            components.push(b);
        }
    }
    Ok(BlockDecomposition {
        type_label: label.to_string(),
        components,
    })
}

/// A point `(I, F, s)` together with its stabilizer `W^I_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleParameter {
    #[serde(with = "node_names")]
    pub face: Vec<usize>,
    /// Which of the `c_I` cuspidal sheaves, `0..c_I`.
    pub cuspidal_index: u64,
    /// Minimum of the `W^I`-orbit of `s`, in coordinates dual to `Λ_I`.
    pub point: TorsionPoint,
    pub stabilizer: GroupInfo,
    /// Number of irreducible `ρ`, i.e. of conjugacy classes of `W^I_s`.
    pub num_irreducibles: usize,
    /// `W^I_s` acting on `z_I` (chart coordinates): dimension and generators.
    pub action_dim: usize,
    pub stabilizer_generators: Vec<IntMatrix>,
}

impl IrreducibleParameter {
    /// Same face, same cuspidal index and same orbit of `s`.
    pub fn same_block_point(&self, other: &IrreducibleParameter) -> bool {
        self.face == other.face && self.cuspidal_index == other.cuspidal_index && self.point == other.point
    }

    pub fn stabilizer_action(&self) -> Result<MatrixGroupAction> {
        MatrixGroupAction::from_generators(self.action_dim, &self.stabilizer_generators, DEFAULT_BUDGET)
    }
}

fn block_parameters(rwg: &RelativeWeylGroup, c: u64, bound: u32) -> Result<Vec<IrreducibleParameter>> {
    let fp = &rwg.finite_part;
    let mut out = Vec::new();
    for s in rwg.torsion_orbit_representatives(bound) {
        let stab = rwg.stabilizer(&s);
        let classes = fp.conjugacy_classes(Some(&stab)).len();
        let gens: Vec<IntMatrix> = fp
            .generating_subset(&stab)
            .iter()
            .map(|&i| fp.element(i).clone())
            .collect();
        let label = FiniteGroup::generate(fp.dim(), &gens, DEFAULT_BUDGET)?.label();
        for index in 0..c {
            out.push(IrreducibleParameter {
                face: rwg.face.nodes.clone(),
                cuspidal_index: index,
                point: s.clone(),
                stabilizer: GroupInfo::from(&label),
                num_irreducibles: classes,
                action_dim: fp.dim(),
                stabilizer_generators: gens.clone(),
            });
        }
    }
    Ok(out)
}

/// All parameters with torsion denominators dividing `bound`, ordered by
/// face, cuspidal index and point.
pub fn irreducible_parameters(
    label: TypeLabel,
    bound: u32,
    table: &CuspidalTable,
    exec: Execution,
) -> Result<Vec<IrreducibleParameter>> {
    if bound == 0 {
        return Err(Error::InvalidArgument("denominator bound must be at least 1".into()));
    }
    let amb = Ambient::new(label);
    let per_face = exec.map(&amb.faces, |f| -> Result<Vec<IrreducibleParameter>> {
        let c = cuspidal_count(table, &amb.data, f)?.count;
        if c == 0 {
            return Ok(Vec::new());
        }
        let rwg = relative_weyl_group(&amb.data, f, DEFAULT_BUDGET)?;
        let mut ps = block_parameters(&rwg, c, bound)?;
        ps.sort_by(|a, b| {
            a.cuspidal_index
                .cmp(&b.cuspidal_index)
                .then_with(|| a.point.cmp(&b.point))
        });
        Ok(ps)
    });
    let mut out = Vec::new();
    for ps in per_face {
        out.extend(ps?);
    }
    Ok(out)
}

/// Image of one source block under restriction from `J′` to `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inclusion {
    /// `|W^{I′}_J|`.
    pub inner_order: usize,
    /// `|W^{I′}_{J′}|`.
    pub outer_order: usize,
    /// The inner cosets were all found among the outer ones.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionEntry {
    #[serde(with = "node_names")]
    pub source: Vec<usize>,
    pub c: u64,
    /// `None` when the block restricts to zero (`I′ ⊄ J`).
    pub image: Option<Inclusion>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionStructure {
    #[serde(rename = "type")]
    pub type_label: String,
    #[serde(with = "node_names")]
    pub inner: Vec<usize>,
    #[serde(with = "node_names")]
    pub outer: Vec<usize>,
    pub entries: Vec<RestrictionEntry>,
}

impl RestrictionStructure {
    pub fn entry(&self, source: &[usize]) -> Option<&RestrictionEntry> {
        self.entries.iter().find(|e| e.source == source)
    }
}

/// Restriction from the union indexed by `outer = J′` to `inner = J`, for
/// `J ⊆ J′ ⊊ Δ̃`, on every source label `I′ ⊆ J′`.
pub fn restriction_structure(
    label: TypeLabel,
    inner: &[usize],
    outer: &[usize],
    table: &CuspidalTable,
) -> Result<RestrictionStructure> {
    let data = affine_root_data(&build_root_system(label));
    let n = data.num_nodes();
    let inner: BTreeSet<usize> = inner.iter().copied().collect();
    let outer: BTreeSet<usize> = outer.iter().copied().collect();
    if let Some(bad) = inner.iter().chain(&outer).find(|&&i| i >= n) {
        return Err(Error::InvalidFace {
            selector: format!("a{bad}"),
            reason: format!("node does not exist (nodes are a0..a{})", n - 1),
        });
    }
    if !inner.is_subset(&outer) {
        return Err(Error::InvalidArgument(format!(
            "J = {} is not contained in J' = {}",
            face_name(&inner.iter().copied().collect::<Vec<_>>()),
            face_name(&outer.iter().copied().collect::<Vec<_>>())
        )));
    }
    let outer_v: Vec<usize> = outer.iter().copied().collect();
    let inner_v: Vec<usize> = inner.iter().copied().collect();
    if outer.len() == n {
        return Err(Error::InvalidFace {
            selector: face_name(&outer_v),
            reason: "J' must be a proper subset of the affine simple roots".into(),
        });
    }
    let mut sources: Vec<Vec<usize>> = (0u32..(1u32 << outer_v.len()))
        .map(|mask| {
            (0..outer_v.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| outer_v[i])
                .collect()
        })
        .collect();
    sources.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut entries = Vec::new();
    for src in sources {
        let c = cuspidal_count(table, &data, &build_face(&data, &src))?.count;
        let image = if src.iter().all(|i| inner.contains(i)) {
            let small = normalizer_cosets(&data, &src, &inner_v, DEFAULT_BUDGET)?;
            let big = normalizer_cosets(&data, &src, &outer_v, DEFAULT_BUDGET)?;
            Some(Inclusion {
                inner_order: small.len(),
                outer_order: big.len(),
                verified: small.is_subset(&big),
            })
        } else {
            None
        };
        entries.push(RestrictionEntry { source: src, c, image });
    }
    Ok(RestrictionStructure {
        type_label: label.to_string(),
        inner: inner_v,
        outer: outer_v,
        entries,
    })
}

/// Poincaré series `|W^I| (1 - t²)^{-z}` of the endomorphism algebra.
pub fn end_algebra_series(block: &Block, truncation: usize) -> GradedSeries {
    let one = BigRational::one();
    let denom = GradedSeries::one(truncation).sub(&GradedSeries::monomial(one, 2, truncation));
    let inv = denom.inverse().expect("unit constant term");
    let mut s = GradedSeries::one(truncation);
    for _ in 0..block.z_dimension {
        s = s.mul(&inv);
    }
    s.scale(&BigRational::from_integer(BigInt::from(block.group.order)))
}
