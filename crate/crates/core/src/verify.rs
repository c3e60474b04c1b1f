//! Golden and property suites behind `verify`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::blocks::decompose;
use crate::coxeter::lemma::lemma_holds;
use crate::coxeter::{enumerate_faces, relative_weyl_group, DEFAULT_BUDGET};
use crate::cuspidal::{center_data, cuspidal_count, CuspidalTable};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::homology::{
    affine_weyl_generators, check_colimit_hypotheses, finite_weyl_generators, homology_report, CosetComplex,
};
use crate::molien::{adjoint_quotient_series, hom_series, weyl_group_action, Character};
use crate::rootsys::{affine_root_data, build_root_system, TypeLabel};

pub const EXAMPLE_TYPES: [&str; 7] = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    #[serde(rename = "paper-examples")]
    Examples,
    Invariants,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "paper-examples" => Ok(Suite::Examples),
            "invariants" => Ok(Suite::Invariants),
            _ => Err(Error::InvalidArgument(format!(
                "unknown suite `{s}` (expected paper-examples or invariants)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Examples => "paper-examples",
            Suite::Invariants => "invariants",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {}", c.name));
            if !c.passed {
                out.push_str(&format!("\n    {}", c.detail.replace('\n', "\n    ")));
            }
            out.push('\n');
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{}: {n}/{} checks passed\n", self.suite, self.checks.len()));
        out
    }
}

fn check(name: impl Into<String>, outcome: Result<std::result::Result<(), String>>) -> Check {
    let (passed, detail) = match outcome {
        Ok(Ok(())) => (true, String::new()),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn label(t: &str) -> TypeLabel {
    t.parse().expect("built-in type label")
}

/// Components `(torus rank, group, c)` as listed in the example decompositions.
pub fn golden_decomposition(t: &str) -> Vec<(usize, &'static str, u64)> {
    let (s3b, d4, d6) = ("S3⋉{±1}^3", "D4", "D6");
    let mut v = match t {
        "A1" => vec![(1, "S2", 1), (0, "1", 1), (0, "1", 1)],
        "A2" => vec![(2, "S3", 1), (0, "1", 2), (0, "1", 2), (0, "1", 2)],
        "B2" => vec![(2, d4, 1), (1, "S2", 1), (1, "S2", 1), (0, "1", 1)],
        "G2" => vec![(2, d6, 1), (0, "1", 1), (0, "1", 2)],
        "A3" => vec![
            (3, "S4", 1),
            (1, "S2", 1),
            (1, "S2", 1),
            (0, "1", 2),
            (0, "1", 2),
            (0, "1", 2),
            (0, "1", 2),
        ],
        "B3" => vec![(3, s3b, 1), (1, "S2", 1), (1, "S2", 1), (1, "S2", 1)],
        "C3" => vec![
            (3, s3b, 1),
            (2, d4, 1),
            (2, d4, 1),
            (1, "S2", 1),
            (0, "1", 1),
            (0, "1", 1),
        ],
        _ => Vec::new(),
    };
    v.sort();
    v
}

/// Figure markings: `c_I` values per face dimension, highest dimension first.
pub fn golden_figure(t: &str) -> Vec<Vec<u64>> {
    match t {
        "A1" => vec![vec![1], vec![1, 1]],
        "A2" => vec![vec![1], vec![0, 0, 0], vec![2, 2, 2]],
        "B2" => vec![vec![1], vec![0, 1, 1], vec![0, 0, 1]],
        "G2" => vec![vec![1], vec![0, 0, 0], vec![0, 1, 2]],
        "A3" => vec![vec![1], vec![0; 4], vec![0, 0, 0, 0, 1, 1], vec![2; 4]],
        "B3" => vec![vec![1], vec![0; 4], vec![0, 0, 0, 1, 1, 1], vec![0; 4]],
        "C3" => vec![vec![1], vec![0, 0, 1, 1], vec![0, 0, 0, 0, 0, 1], vec![0, 0, 1, 1]],
        _ => Vec::new(),
    }
}

fn decomposition_check(t: &str, table: &CuspidalTable, exec: Execution) -> Result<std::result::Result<(), String>> {
    let d = decompose(label(t), table, exec)?;
    let got = d.multiset();
    let want: Vec<(usize, String, u64)> = golden_decomposition(t)
        .into_iter()
        .map(|(a, b, c)| (a, b.to_string(), c))
        .collect();
    if got == want {
        Ok(Ok(()))
    } else {
        Ok(Err(format!(
            "expected {want:?}\n got      {got:?}\n rendered {}",
            d.render_text()
        )))
    }
}

fn figure_check(t: &str, table: &CuspidalTable) -> Result<std::result::Result<(), String>> {
    let data = affine_root_data(&build_root_system(label(t)));
    let faces = enumerate_faces(&data);
    let r = data.rank();
    let mut diffs = Vec::new();
    for (i, want) in golden_figure(t).iter().enumerate() {
        let dim = r - i;
        let mut named = Vec::new();
        for f in faces.iter().filter(|f| f.z_dimension == dim) {
            named.push((f.name(), cuspidal_count(table, &data, f)?.count));
        }
        let mut got: Vec<u64> = named.iter().map(|x| x.1).collect();
        got.sort_unstable();
        if &got != want {
            let faces: Vec<String> = named.iter().map(|(n, c)| format!("{n}={c}")).collect();
            diffs.push(format!(
                "dimension {dim}: expected {want:?}, got {got:?} ({})",
                faces.join(" ")
            ));
        }
    }
    Ok(if diffs.is_empty() {
        Ok(())
    } else {
        Err(diffs.join("\n"))
    })
}

pub fn example_suite(table: &CuspidalTable, exec: Execution) -> VerifyReport {
    let mut checks = Vec::new();
    for t in EXAMPLE_TYPES {
        checks.push(check(format!("decomposition {t}"), decomposition_check(t, table, exec)));
    }
    for t in EXAMPLE_TYPES {
        checks.push(check(format!("figure labels {t}"), figure_check(t, table)));
    }
    VerifyReport {
        suite: Suite::Examples,
        checks,
    }
}

fn expect(cond: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

pub fn invariants(table: &CuspidalTable, exec: Execution) -> VerifyReport {
    let mut checks = Vec::new();

    for t in EXAMPLE_TYPES {
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let sys = build_root_system(label(t));
            let prod: u128 = sys.degrees.iter().map(|&d| d as u128).product();
            let sum: usize = sys.degrees.iter().map(|&d| d as usize - 1).sum();
            let w = weyl_group_action(&sys, DEFAULT_BUDGET)?;
            Ok(expect(
                w.order() as u128 == prod && sys.num_positive_roots() == sum,
                || {
                    format!(
                        "|W| = {}, Π d_i = {prod}, |Φ+| = {}",
                        w.order(),
                        sys.num_positive_roots()
                    )
                },
            ))
        })();
        checks.push(check(format!("rootsys degrees {t}"), outcome));
    }

    for t in EXAMPLE_TYPES {
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let data = affine_root_data(&build_root_system(label(t)));
            let mut bad = Vec::new();
            for f in enumerate_faces(&data) {
                let c = cuspidal_count(table, &data, &f)?;
                if f.is_empty() && c.count != 1 {
                    bad.push("c of the empty face is not 1".to_string());
                }
                let center = center_data(&data, &f);
                if center.invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
                    bad.push(format!(
                        "{}: invariant factors {:?}",
                        f.name(),
                        center.invariant_factors
                    ));
                }
                if c.count == 0 {
                    continue;
                }
                let g = relative_weyl_group(&data, &f, DEFAULT_BUDGET)?;
                if !g.coxeter_certified() || !g.generators_are_involutions() || !g.generators_fix_walls(&data) {
                    bad.push(format!("{}: wall generators", f.name()));
                }
                if !g.verify_factorization(8, 20_000).passed() {
                    bad.push(format!("{}: factorization through W^I ⋉ Λ_I", f.name()));
                }
                if g.cocharacter_index().is_err() {
                    bad.push(format!("{}: index of the center cocharacters", f.name()));
                }
            }
            Ok(expect(bad.is_empty(), || bad.join("; ")))
        })();
        checks.push(check(format!("relative Weyl groups {t}"), outcome));
    }

    for t in ["A1", "A2", "B2", "G2"] {
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let data = affine_root_data(&build_root_system(label(t)));
            let faces = enumerate_faces(&data);
            let mut bad = Vec::new();
            for outer in &faces {
                for inner in faces
                    .iter()
                    .filter(|f| f.len() < outer.len() && f.nodes.iter().all(|i| outer.contains(*i)))
                {
                    if !lemma_holds(&data, &inner.nodes, &outer.nodes, DEFAULT_BUDGET)? {
                        bad.push(format!("{} in {}", inner.name(), outer.name()));
                    }
                }
            }
            Ok(expect(bad.is_empty(), || bad.join("; ")))
        })();
        checks.push(check(format!("normalizer quotient {t}"), outcome));
    }

    for t in EXAMPLE_TYPES {
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let seq = decompose(label(t), table, Execution::Sequential)?;
            let par = decompose(label(t), table, exec)?;
            let torus = seq
                .torus_block()
                .ok_or_else(|| Error::InvalidArgument("no torus block".into()))?;
            let sys = build_root_system(label(t));
            Ok(expect(
                seq == par
                    && seq.components.iter().filter(|b| b.face.is_empty()).count() == 1
                    && torus.group.order as u128 == sys.weyl_order()
                    && torus.torus_rank == sys.rank()
                    && seq.components.iter().all(|b| b.torus_rank <= b.z_dimension && b.c > 0),
                || format!("decomposition {}", seq.render_text()),
            ))
        })();
        checks.push(check(format!("block structure {t}"), outcome));
    }

    for t in EXAMPLE_TYPES {
        let outcome = adjoint_quotient_series(&build_root_system(label(t)), 20, exec).map(|_| Ok(()));
        checks.push(check(format!("Molien identity {t}"), outcome));
    }

    for t in ["A1", "A2", "B2"] {
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let act = weyl_group_action(&build_root_system(label(t)), DEFAULT_BUDGET)?;
            let chars = [Character::Trivial, Character::Determinant, Character::Trace];
            let mut bad = Vec::new();
            for a in &chars {
                for b in &chars {
                    let (ca, cb) = (a.evaluate(&act)?, b.evaluate(&act)?);
                    let s = hom_series(&act, &ca, &cb, 4, exec)?;
                    let ip = ca.inner_product(&cb);
                    let c0 = s.coefficient(0);
                    if *c0.numer() != (*ip.numer()).into() || *c0.denom() != (*ip.denom()).into() {
                        bad.push(format!("<{a:?}, {b:?}>: {c0} vs {ip}"));
                    }
                }
            }
            let triv = Character::Trivial.evaluate(&act)?;
            let c0 = hom_series(&act, &triv, &triv, 0, exec)?.coefficient(0);
            if !c0.is_one() {
                bad.push(format!("trivial self-pairing {c0}"));
            }
            Ok(expect(bad.is_empty() && !act.order().is_zero(), || bad.join("; ")))
        })();
        checks.push(check(format!("character orthogonality {t}"), outcome));
    }

    for t in ["A1", "A2", "B2"] {
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let c = CosetComplex::build(&finite_weyl_generators(label(t)), None, exec)?;
            let h = homology_report(&c, exec);
            Ok(expect(h.is_single_z(), || format!("{:?}", h.nonzero())))
        })();
        checks.push(check(format!("sphere homology {t}"), outcome));
    }
    for t in ["A1", "A2"] {
        for n in [4, 6, 8] {
            let outcome = (|| -> Result<std::result::Result<(), String>> {
                let c = CosetComplex::build(&affine_weyl_generators(label(t)), Some(n), exec)?;
                let h = homology_report(&c, exec);
                Ok(expect(h.is_acyclic(), || format!("{:?}", h.nonzero())))
            })();
            checks.push(check(format!("ball acyclicity {t} N={n}"), outcome));
        }
    }
    for (name, gens) in [
        ("A2", finite_weyl_generators(label("A2"))),
        ("B2", finite_weyl_generators(label("B2"))),
        ("affine A1", affine_weyl_generators(label("A1"))),
    ] {
        let outcome = check_colimit_hypotheses(&gens, 10).map(|r| expect(r.passed(), || format!("{r:?}")));
        checks.push(check(format!("colimit hypotheses {name}"), outcome));
    }

    VerifyReport {
        suite: Suite::Invariants,
        checks,
    }
}

pub fn run_suite(suite: Suite, table: &CuspidalTable, exec: Execution) -> VerifyReport {
    match suite {
        Suite::Examples => example_suite(table, exec),
        Suite::Invariants => invariants(table, exec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_sizes_agree_with_face_counts() {
        for t in EXAMPLE_TYPES {
            let r = label(t).rank;
            let fig = golden_figure(t);
            assert_eq!(fig.len(), r + 1);
            let total: usize = fig.iter().map(|v| v.len()).sum();
            assert_eq!(total, (1 << (r + 1)) - 1, "{t}");
        }
    }

    #[test]
    fn example_suite_passes_with_builtin_table() {
        let r = example_suite(&CuspidalTable::builtin(), Execution::Parallel);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn tampered_table_names_a_face() {
        let text = crate::cuspidal::BUILTIN_TABLE.replace("type=G2; center=1; chars=1", "type=G2; center=1; chars=3");
        let r = example_suite(&CuspidalTable::parse(&text).unwrap(), Execution::Sequential);
        let fails = r.failures();
        assert!(fails
            .iter()
            .any(|c| c.name == "figure labels G2" && c.detail.contains("{a1,a2}=3")));
    }
}
