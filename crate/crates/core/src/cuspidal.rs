//! Cuspidal multiplicities `c_I` of alcove faces.
//!
//! The counts come from a shipped data table keyed by the Levi factor types
//! and the component group of the center, plus a closed rule for products
//! of type A factors. See `data/cuspidal_table.txt` for the grammar.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coxeter::{AlcoveFace, LeviFactor};
use crate::error::{Error, Result};
use crate::linalg::{mod_one, smith_normal_form, QMatrix, Q};
use crate::rootsys::{AffineRootData, Family, TypeLabel};

pub const BUILTIN_TABLE: &str = include_str!("../data/cuspidal_table.txt");

/// Character group of `Z(L_I)/Z(L_I)^0`, i.e. the torsion of `X^*(T)/ℤI`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterData {
    /// Invariant factors greater than one, each dividing the next.
    pub invariant_factors: Vec<u64>,
    /// Weight representatives (fundamental weight coordinates) of the
    /// cyclic generators, one per invariant factor.
    pub generators: Vec<Vec<i64>>,
    /// `projections[g][k]` is the image of generator `g` on the center of
    /// Levi factor `k`, as simple root coefficients of that factor, mod 1.
    pub projections: Vec<Vec<Vec<Q>>>,
}

impl CenterData {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Invariant factors as written in the table, `1` for the trivial group.
    pub fn key(&self) -> String {
        if self.invariant_factors.is_empty() {
            "1".to_string()
        } else {
            let parts: Vec<String> = self.invariant_factors.iter().map(|d| d.to_string()).collect();
            parts.join(",")
        }
    }

    /// For every character, its order on each Levi factor.
    pub fn factor_orders(&self, num_factors: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut digits = vec![0u64; self.invariant_factors.len()];
        loop {
            let orders = (0..num_factors)
                .map(|k| {
                    let len = self.projections.first().map_or(0, |p| p[k].len());
                    let mut v = vec![Q::zero(); len];
                    for (g, &n) in digits.iter().enumerate() {
                        for (x, y) in v.iter_mut().zip(&self.projections[g][k]) {
                            *x += *y * Q::from_integer(n as i64);
                        }
                    }
                    v.iter()
                        .fold(1u64, |acc, x| acc.lcm(&(x.fract().denom().unsigned_abs())))
                })
                .collect();
            out.push(orders);
            // odometer over the product of cyclic groups
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return out;
                }
                digits[pos] += 1;
                if digits[pos] < self.invariant_factors[pos] {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
}

pub fn center_data(data: &AffineRootData, face: &AlcoveFace) -> CenterData {
    let r = data.rank();
    if face.is_empty() {
        return CenterData {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
            projections: Vec::new(),
        };
    }
    // columns are the linear parts of the roots in I
    let m: Vec<Vec<i64>> = (0..r)
        .map(|row| face.nodes.iter().map(|&i| data.roots[i].linear[row]).collect())
        .collect();
    let snf = smith_normal_form(&m, true);
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in snf.diagonal.iter().enumerate() {
        if *d > 1 {
            invariant_factors.push(*d as u64);
            generators.push((0..r).map(|row| snf.u_inv[row][i]).collect::<Vec<i64>>());
        }
    }
    let projections = generators
        .iter()
        .map(|lambda| face.factors.iter().map(|f| project(data, f, lambda)).collect())
        .collect();
    CenterData {
        invariant_factors,
        generators,
        projections,
    }
}

fn project(data: &AffineRootData, factor: &LeviFactor, lambda: &[i64]) -> Vec<Q> {
    let p: Vec<Q> = factor
        .nodes
        .iter()
        .map(|&j| Q::from_integer(lambda.iter().zip(&data.roots[j].coroot).map(|(a, b)| a * b).sum()))
        .collect();
    let cartan: Vec<Vec<i64>> = factor
        .nodes
        .iter()
        .map(|&a| factor.nodes.iter().map(|&b| data.affine_cartan[a][b]).collect())
        .collect();
    let inv = QMatrix::from_int_rows(&cartan)
        .inverse()
        .expect("Cartan matrices of finite type are invertible");
    mod_one(&inv.mul_vec(&p))
}

/// Whether a table record is pinned by the rank three figures or extends them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Verified,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterPattern {
    Any,
    Exact(Vec<u64>),
}

impl CenterPattern {
    fn matches(&self, c: &CenterData) -> bool {
        match self {
            CenterPattern::Any => true,
            CenterPattern::Exact(v) => v == &c.invariant_factors,
        }
    }
}

impl fmt::Display for CenterPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterPattern::Any => write!(f, "*"),
            CenterPattern::Exact(v) if v.is_empty() => write!(f, "1"),
            CenterPattern::Exact(v) => {
                let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub factors: String,
    pub center: CenterPattern,
    pub chars: u64,
    pub source: String,
    pub ambient: Option<TypeLabel>,
    pub status: EntryStatus,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalTable {
    pub version: u32,
    pub entries: Vec<TableEntry>,
}

fn canonical_factors(text: &str) -> std::result::Result<String, String> {
    let mut labels = Vec::new();
    for part in text.split('x') {
        let label = TypeLabel::from_str(part.trim()).map_err(|e| e.to_string())?;
        labels.push(label.to_string());
    }
    labels.sort();
    Ok(labels.join("x"))
}

impl CuspidalTable {
    pub fn builtin() -> CuspidalTable {
        CuspidalTable::parse(BUILTIN_TABLE).expect("the shipped cuspidal table parses")
    }

    pub fn parse(text: &str) -> Result<CuspidalTable> {
        let mut version = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::TableParse { line, message };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(v) = trimmed.strip_prefix("version=") {
                if version.is_some() || !entries.is_empty() {
                    return Err(err("version must appear once, before any record".into()));
                }
                version = Some(v.trim().parse::<u32>().map_err(|_| err(format!("bad version `{v}`")))?);
                continue;
            }
            let mut factors = None;
            let mut center = None;
            let mut chars = None;
            let mut source = None;
            let mut ambient = None;
            let mut status = EntryStatus::Verified;
            for field in trimmed.split(';') {
                let field = field.trim();
                if field.is_empty() {
                    continue;
                }
                let (key, value) = field
                    .split_once('=')
                    .ok_or_else(|| err(format!("field `{field}` is not key=value")))?;
                let (key, value) = (key.trim(), value.trim());
                let slot_taken = |taken: bool| {
                    if taken {
                        Err(err(format!("duplicate field `{key}`")))
                    } else {
                        Ok(())
                    }
                };
                match key {
                    "type" => {
                        slot_taken(factors.is_some())?;
                        factors = Some(canonical_factors(value).map_err(|m| err(format!("bad type `{value}`: {m}")))?);
                    }
                    "center" => {
                        slot_taken(center.is_some())?;
                        center = Some(match value {
                            "*" => CenterPattern::Any,
                            "1" => CenterPattern::Exact(Vec::new()),
                            _ => {
                                let mut v = Vec::new();
                                for part in value.split(',') {
                                    let d: u64 = part
                                        .trim()
                                        .parse()
                                        .map_err(|_| err(format!("bad invariant factor `{part}`")))?;
                                    if d < 2 {
                                        return Err(err(format!("invariant factor {d} must be at least 2")));
                                    }
                                    if let Some(prev) = v.last() {
                                        if !d.is_multiple_of(*prev) {
                                            return Err(err(format!("invariant factor {prev} does not divide {d}")));
                                        }
                                    }
                                    v.push(d);
                                }
                                CenterPattern::Exact(v)
                            }
                        });
                    }
                    "chars" => {
                        slot_taken(chars.is_some())?;
                        chars = Some(
                            value
                                .parse::<u64>()
                                .map_err(|_| err(format!("chars must be a nonnegative integer, got `{value}`")))?,
                        );
                    }
                    "source" => {
                        slot_taken(source.is_some())?;
                        source = Some(value.to_string());
                    }
                    "ambient" => {
                        slot_taken(ambient.is_some())?;
                        ambient = Some(TypeLabel::from_str(value).map_err(|e| err(e.to_string()))?);
                    }
                    "status" => {
                        status = match value {
                            "verified" => EntryStatus::Verified,
                            "unverified" => EntryStatus::Unverified,
                            _ => return Err(err(format!("unknown status `{value}`"))),
                        };
                    }
                    _ => return Err(err(format!("unknown field `{key}`"))),
                }
            }
            let missing = |name: &str| err(format!("missing field `{name}`"));
            entries.push(TableEntry {
                factors: factors.ok_or_else(|| missing("type"))?,
                center: center.ok_or_else(|| missing("center"))?,
                chars: chars.ok_or_else(|| missing("chars"))?,
                source: source.ok_or_else(|| missing("source"))?,
                ambient,
                status,
                line,
            });
        }
        Ok(CuspidalTable {
            version: version.unwrap_or(1),
            entries,
        })
    }

    fn find(&self, ambient: TypeLabel, factors: &str, center: &CenterData) -> Option<&TableEntry> {
        let hit = |e: &&TableEntry, amb: Option<TypeLabel>| {
            e.ambient == amb && e.factors == factors && e.center.matches(center)
        };
        self.entries
            .iter()
            .find(|e| hit(e, Some(ambient)))
            .or_else(|| self.entries.iter().find(|e| hit(e, None)))
    }
}

/// How a count was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CountSource {
    Torus,
    Table {
        line: usize,
        source: String,
        status: EntryStatus,
    },
    TypeARule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalCount {
    pub count: u64,
    pub center: CenterData,
    pub source: CountSource,
}

fn type_a_rule(face: &AlcoveFace, center: &CenterData) -> Option<u64> {
    if !face.factors.iter().all(|f| f.label.family == Family::A) {
        return None;
    }
    let wanted: Vec<u64> = face.factors.iter().map(|f| f.label.rank as u64 + 1).collect();
    let n = center
        .factor_orders(face.factors.len())
        .into_iter()
        .filter(|orders| *orders == wanted)
        .count();
    Some(n as u64)
}

/// `c_I` for a face, with the center data used and the rule that applied.
pub fn cuspidal_count(table: &CuspidalTable, data: &AffineRootData, face: &AlcoveFace) -> Result<CuspidalCount> {
    let center = center_data(data, face);
    if face.is_empty() {
        return Ok(CuspidalCount {
            count: 1,
            center,
            source: CountSource::Torus,
        });
    }
    let key = face.factor_key();
    if let Some(e) = table.find(face.ambient, &key, &center) {
        return Ok(CuspidalCount {
            count: e.chars,
            source: CountSource::Table {
                line: e.line,
                source: e.source.clone(),
                status: e.status,
            },
            center,
        });
    }
    if let Some(count) = type_a_rule(face, &center) {
        return Ok(CuspidalCount {
            count,
            center,
            source: CountSource::TypeARule,
        });
    }
    Err(Error::Unclassified {
        key: format!(
            "type={key}; center={} (face {} of {})",
            center.key(),
            face.name(),
            face.ambient
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_face, enumerate_faces};
    use crate::rootsys::{affine_root_data, root_system};

    fn data(t: &str) -> AffineRootData {
        affine_root_data(&root_system(t).unwrap())
    }

    // gcd of the maximal minors of an integer matrix with full column rank
    fn minor_gcd(m: &[Vec<i64>], cols: usize) -> i64 {
        let rows = m.len();
        let mut g = 0i64;
        let mut pick = Vec::new();
        fn rec(m: &[Vec<i64>], rows: usize, cols: usize, start: usize, pick: &mut Vec<usize>, g: &mut i64) {
            if pick.len() == cols {
                let sub: Vec<Vec<i64>> = pick.iter().map(|&i| m[i].clone()).collect();
                let d = QMatrix::from_int_rows(&sub).determinant();
                *g = g.gcd(&d.to_integer());
                return;
            }
            for i in start..rows {
                pick.push(i);
                rec(m, rows, cols, i + 1, pick, g);
                pick.pop();
            }
        }
        rec(m, rows, cols, 0, &mut pick, &mut g);
        g
    }

    #[test]
    fn center_order_is_gcd_of_maximal_minors() {
        for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "D4"] {
            let d = data(t);
            for f in enumerate_faces(&d) {
                if f.is_empty() {
                    continue;
                }
                let m: Vec<Vec<i64>> = (0..d.rank())
                    .map(|row| f.nodes.iter().map(|&i| d.roots[i].linear[row]).collect())
                    .collect();
                let c = center_data(&d, &f);
                assert_eq!(c.order() as i64, minor_gcd(&m, f.len()), "{t} {}", f.name());
            }
        }
    }

    #[test]
    fn center_examples() {
        let a1 = data("A1");
        assert_eq!(center_data(&a1, &build_face(&a1, &[1])).invariant_factors, vec![2]);
        assert!(center_data(&a1, &build_face(&a1, &[])).is_trivial());
        let b2 = data("B2");
        assert_eq!(
            center_data(&b2, &build_face(&b2, &[0, 1])).invariant_factors,
            vec![2, 2]
        );
        assert_eq!(center_data(&b2, &build_face(&b2, &[1])).invariant_factors, vec![2]);
        assert!(center_data(&b2, &build_face(&b2, &[2])).is_trivial());
    }

    #[test]
    fn counts_from_the_examples() {
        let table = CuspidalTable::builtin();
        let count = |t: &str, nodes: &[usize]| {
            let d = data(t);
            cuspidal_count(&table, &d, &build_face(&d, nodes)).unwrap().count
        };
        assert_eq!(count("A1", &[]), 1);
        assert_eq!(count("A2", &[0, 1]), 2);
        assert_eq!(count("A2", &[1]), 0);
        assert_eq!(count("G2", &[0, 2]), 2);
        assert_eq!(count("G2", &[1, 2]), 1);
        assert_eq!(count("G2", &[0, 1]), 0);
    }

    #[test]
    fn missing_entry_is_unclassified() {
        let table = CuspidalTable::parse("version=1\n").unwrap();
        let d = data("B2");
        let err = cuspidal_count(&table, &d, &build_face(&d, &[1, 2])).unwrap_err();
        match err {
            Error::Unclassified { key } => assert!(key.contains("type=B2"), "{key}"),
            other => panic!("unexpected {other:?}"),
        }
        // the type A rule still applies without a table
        assert_eq!(cuspidal_count(&table, &d, &build_face(&d, &[0, 1])).unwrap().count, 1);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let bad = "version=1\ntype=B2; center=*; chars=-1; source=x\n";
        assert!(matches!(
            CuspidalTable::parse(bad),
            Err(Error::TableParse { line: 2, .. })
        ));
        let bad = "type=Q2; center=*; chars=1; source=x\n";
        assert!(matches!(
            CuspidalTable::parse(bad),
            Err(Error::TableParse { line: 1, .. })
        ));
        let bad = "type=B2; center=3,4; chars=1; source=x\n";
        assert!(CuspidalTable::parse(bad).is_err());
        let bad = "type=B2; chars=1; source=x\n";
        assert!(CuspidalTable::parse(bad).is_err());
    }

    #[test]
    fn builtin_table_flags_extended_entries() {
        let t = CuspidalTable::builtin();
        assert_eq!(t.version, 1);
        let e8 = t.entries.iter().find(|e| e.factors == "E8").unwrap();
        assert_eq!(e8.status, EntryStatus::Unverified);
        assert!(t
            .entries
            .iter()
            .filter(|e| e.factors == "B2")
            .all(|e| e.status == EntryStatus::Verified));
    }
}
