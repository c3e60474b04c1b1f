//! Command-line front end for the `alcove` engine.
//!
//! Every subcommand prints either a text rendering or a JSON document.
//! The JSON documents are the `*Report` types below (or core types), and
//! all of them deserialize back to the same value.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use alcove::blocks::{decompose, irreducible_parameters, GroupInfo};
use alcove::coxeter::{
    build_face, enumerate_faces, parse_face_selector, relative_weyl_group, AlcoveFace, FactorizationReport,
    DEFAULT_BUDGET,
};
use alcove::cuspidal::{center_data, cuspidal_count, CountSource, CuspidalCount, CuspidalTable, EntryStatus};
use alcove::exec::Execution;
use alcove::homology::{
    affine_weyl_generators, check_colimit_hypotheses, finite_weyl_generators, homology_report, ColimitReport,
    CosetComplex, HomologyReport,
};
use alcove::molien::{adjoint_quotient_series, hom_series, Character, GradedSeries};
use alcove::rootsys::{affine_root_data, build_root_system, AffineRootData, TypeLabel};
use alcove::verify::{run_suite, Suite, VerifyReport};
use alcove::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_UNCLASSIFIED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "alcove",
    version,
    about = "Alcove faces, relative affine Weyl groups and block decompositions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Replace the built-in cuspidal table with this file.
    #[arg(long, value_name = "PATH", global = true)]
    pub cuspidal_table: Option<PathBuf>,

    /// Run every loop sequentially (output is identical).
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Block decomposition: one component per face with c_I > 0.
    Decompose(TypeArg),
    /// All proper faces I of the fundamental alcove with their c_I.
    Faces(TypeArg),
    /// The relative affine Weyl group of a face.
    Relweyl {
        #[command(flatten)]
        face: FaceArg,
        /// Word length for the factorization check.
        #[arg(long, default_value_t = 8)]
        length: usize,
    },
    /// Center data and cuspidal count of a face.
    Cuspidal(FaceArg),
    /// Hom series over the stabilizers W^I_s on a face.
    Hom {
        #[command(flatten)]
        face: FaceArg,
        /// Torsion points s with denominators dividing this bound.
        #[arg(long, default_value_t = 1)]
        bound: u32,
        #[arg(long = "order", visible_alias = "truncation", default_value_t = 6)]
        order: usize,
        /// trivial, det, trace, or signs on the generators such as `1,-1`.
        #[arg(long, default_value = "trivial")]
        rho: String,
        #[arg(long, default_value = "trivial")]
        rho_prime: String,
    },
    /// Graded dimension of the cohomology of the adjoint quotient.
    AdjointSeries {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long = "order", visible_alias = "truncation", default_value_t = 10)]
        order: usize,
    },
    /// Homology of the augmented coset complex of W (or of the affine W̃).
    Homology {
        #[command(flatten)]
        ty: TypeArg,
        /// Use the affine Weyl group; requires a truncation.
        #[arg(long)]
        affine: bool,
        /// Keep cosets whose minimal representative has length at most N.
        #[arg(long = "truncation", visible_alias = "order")]
        truncation: Option<usize>,
        /// Word length for the colimit hypothesis check.
        #[arg(long, default_value_t = 8)]
        length: usize,
    },
    /// Run a built-in check suite.
    Verify {
        #[arg(long, default_value = "paper-examples")]
        suite: String,
    },
}

#[derive(Args, Debug)]
pub struct TypeArg {
    /// Simple type such as A2, B3, G2.
    #[arg(long = "type", value_name = "TYPE")]
    pub type_label: String,
}

#[derive(Args, Debug)]
pub struct FaceArg {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Comma-separated affine node names, e.g. `a0,a2`; empty for ∅.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub face: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRow {
    pub face: String,
    pub size: usize,
    pub z_dimension: usize,
    /// Levi type, `-` for the empty face.
    pub levi: String,
    pub center: Vec<u64>,
    /// `None` when no rule or table entry covers the face.
    pub c: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub faces: Vec<FaceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelWeylReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub face: String,
    pub z_dimension: usize,
    /// Node `s` of each generator `v_s`.
    pub generators: Vec<String>,
    /// Orders of `v_s v_t`; `null` is infinite.
    pub coxeter_matrix: Vec<Vec<Option<u32>>>,
    pub coxeter_type: Option<String>,
    pub non_normalizing: Vec<String>,
    pub finite_part: GroupInfo,
    pub lattice_rank: usize,
    /// Basis of `Λ_I` in chart coordinates.
    pub lattice: Vec<Vec<String>>,
    pub cocharacter_index: Option<u64>,
    pub factorization: FactorizationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub face: String,
    pub levi: String,
    pub result: CuspidalCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub point: Vec<String>,
    pub stabilizer: GroupInfo,
    pub series: GradedSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub face: String,
    pub c: u64,
    pub bound: u32,
    pub rho: String,
    pub rho_prime: String,
    pub entries: Vec<HomEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub series: GradedSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyOutput {
    #[serde(rename = "type")]
    pub type_label: String,
    pub affine: bool,
    pub cells: Vec<usize>,
    pub homology: HomologyReport,
    pub colimit: ColimitReport,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unclassified { .. } => EXIT_UNCLASSIFIED,
        _ => EXIT_DOMAIN,
    }
}

fn parse_type(s: &str) -> alcove::Result<TypeLabel> {
    s.parse()
}

fn levi_name(face: &AlcoveFace) -> String {
    if face.is_empty() {
        "-".into()
    } else {
        face.factor_key()
    }
}

fn face_of(data: &AffineRootData, selector: &str) -> alcove::Result<AlcoveFace> {
    let nodes = parse_face_selector(selector, data.num_nodes())?;
    Ok(build_face(data, &nodes))
}

fn node_list(nodes: &[usize]) -> Vec<String> {
    nodes.iter().map(|&i| AffineRootData::node_name(i)).collect()
}

fn parse_character(s: &str) -> alcove::Result<Character> {
    match s {
        "trivial" => Ok(Character::Trivial),
        "det" | "sign" => Ok(Character::Determinant),
        "trace" | "reflection" => Ok(Character::Trace),
        _ => {
            let signs: Option<Vec<i64>> = s.split(',').map(|x| x.trim().parse().ok()).collect();
            signs
                .map(Character::Linear)
                .ok_or_else(|| Error::BadCharacter(format!("`{s}` is not trivial, det, trace or a list of signs")))
        }
    }
}

fn load_table(path: &Option<PathBuf>) -> alcove::Result<CuspidalTable> {
    match path {
        None => Ok(CuspidalTable::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidArgument(format!("cannot read cuspidal table {}: {e}", p.display())))?;
            CuspidalTable::parse(&text)
        }
    }
}

/// A rendered document: text and JSON forms.
struct Doc {
    text: String,
    json: String,
}

fn doc<T: Serialize>(value: &T, text: String) -> Doc {
    Doc {
        text,
        json: serde_json::to_string_pretty(value).expect("reports serialize"),
    }
}

pub fn faces_report(label: TypeLabel, table: &CuspidalTable) -> FacesReport {
    let data = affine_root_data(&build_root_system(label));
    let faces = enumerate_faces(&data)
        .iter()
        .map(|f| FaceRow {
            face: f.name(),
            size: f.len(),
            z_dimension: f.z_dimension,
            levi: levi_name(f),
            center: center_data(&data, f).invariant_factors,
            c: cuspidal_count(table, &data, f).ok().map(|c| c.count),
        })
        .collect();
    FacesReport {
        type_label: label.to_string(),
        faces,
    }
}

fn render_faces(r: &FacesReport) -> String {
    let mut out = format!("{}: {} faces\n", r.type_label, r.faces.len());
    for f in &r.faces {
        let c = f.c.map_or("unclassified".to_string(), |c| c.to_string());
        let center = if f.center.is_empty() {
            "1".to_string()
        } else {
            f.center.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        };
        out.push_str(&format!(
            "{:<14} dim {}  levi {:<8} center {:<6} c = {c}\n",
            f.face, f.z_dimension, f.levi, center
        ));
    }
    out
}

pub fn relweyl_report(label: TypeLabel, selector: &str, length: usize) -> alcove::Result<RelWeylReport> {
    let data = affine_root_data(&build_root_system(label));
    let face = face_of(&data, selector)?;
    let g = relative_weyl_group(&data, &face, DEFAULT_BUDGET)?;
    Ok(RelWeylReport {
        type_label: label.to_string(),
        face: face.name(),
        z_dimension: g.z_dimension(),
        generators: g.generators.iter().map(|v| AffineRootData::node_name(v.node)).collect(),
        coxeter_matrix: g.coxeter_matrix.clone(),
        coxeter_type: g.coxeter_type.as_ref().map(|t| t.to_string()),
        non_normalizing: node_list(&g.non_normalizing),
        finite_part: GroupInfo::from(&g.finite_label()),
        lattice_rank: g.lattice_rank(),
        lattice: g
            .lattice
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect(),
        cocharacter_index: g.cocharacter_index().ok(),
        factorization: g.verify_factorization(length, 20_000),
    })
}

fn render_relweyl(r: &RelWeylReport) -> String {
    let m: Vec<String> = r
        .coxeter_matrix
        .iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|x| x.map_or("∞".to_string(), |x| x.to_string()))
                .collect();
            format!("[{}]", cells.join(" "))
        })
        .collect();
    let lattice: Vec<String> = r.lattice.iter().map(|v| format!("({})", v.join(", "))).collect();
    let mut out = format!("{} face {}: z_I of dimension {}\n", r.type_label, r.face, r.z_dimension);
    out.push_str(&format!("generators   v_s for s in {{{}}}\n", r.generators.join(",")));
    out.push_str(&format!("coxeter      {}\n", m.join(" ")));
    out.push_str(&format!(
        "type         {}\n",
        r.coxeter_type.as_deref().unwrap_or("not a recognized Coxeter type")
    ));
    if !r.non_normalizing.is_empty() {
        out.push_str(&format!("not normalizing W_I: {}\n", r.non_normalizing.join(",")));
    }
    out.push_str(&format!(
        "finite part  {} (order {})\n",
        r.finite_part.label, r.finite_part.order
    ));
    out.push_str(&format!(
        "lattice      rank {} basis {}\n",
        r.lattice_rank,
        lattice.join(" ")
    ));
    out.push_str(&format!(
        "index        {}\n",
        r.cocharacter_index.map_or("undefined".to_string(), |i| i.to_string())
    ));
    out.push_str(&format!(
        "factorization {} elements up to length {}: {}\n",
        r.factorization.elements,
        r.factorization.max_length,
        if r.factorization.passed() {
            "ok".to_string()
        } else {
            format!("{} failures", r.factorization.failures)
        }
    ));
    out
}

pub fn cuspidal_report(label: TypeLabel, selector: &str, table: &CuspidalTable) -> alcove::Result<CuspidalReport> {
    let data = affine_root_data(&build_root_system(label));
    let face = face_of(&data, selector)?;
    Ok(CuspidalReport {
        type_label: label.to_string(),
        face: face.name(),
        levi: levi_name(&face),
        result: cuspidal_count(table, &data, &face)?,
    })
}

fn render_cuspidal(r: &CuspidalReport) -> String {
    let c = &r.result;
    let source = match &c.source {
        CountSource::Torus => "torus (empty face)".to_string(),
        CountSource::TypeARule => "type A rule".to_string(),
        CountSource::Table { line, source, status } => {
            let flag = match status {
                EntryStatus::Verified => "",
                EntryStatus::Unverified => ", unverified",
            };
            format!("table line {line} ({source}{flag})")
        }
    };
    format!(
        "{} face {}: levi {}, center {}, c = {}\nsource {source}\n",
        r.type_label,
        r.face,
        r.levi,
        c.center.key(),
        c.count
    )
}

#[allow(clippy::too_many_arguments)]
pub fn hom_report(
    label: TypeLabel,
    selector: &str,
    bound: u32,
    order: usize,
    rho: &str,
    rho_prime: &str,
    table: &CuspidalTable,
    exec: Execution,
) -> alcove::Result<HomReport> {
    let data = affine_root_data(&build_root_system(label));
    let face = face_of(&data, selector)?;
    let c = cuspidal_count(table, &data, &face)?.count;
    if c == 0 {
        return Err(Error::InvalidArgument(format!(
            "face {} of {label} carries no cuspidal sheaf (c = 0), so it has no parameters",
            face.name()
        )));
    }
    let (chi, chi_prime) = (parse_character(rho)?, parse_character(rho_prime)?);
    let mut entries = Vec::new();
    for p in irreducible_parameters(label, bound, table, exec)? {
        if p.face != face.nodes || p.cuspidal_index != 0 {
            continue;
        }
        let action = p.stabilizer_action()?;
        let series = hom_series(
            &action,
            &chi.evaluate(&action)?,
            &chi_prime.evaluate(&action)?,
            order,
            exec,
        )?;
        entries.push(HomEntry {
            point: p.point.coords.iter().map(|x| x.to_string()).collect(),
            stabilizer: p.stabilizer.clone(),
            series,
        });
    }
    Ok(HomReport {
        type_label: label.to_string(),
        face: face.name(),
        c,
        bound,
        rho: rho.to_string(),
        rho_prime: rho_prime.to_string(),
        entries,
    })
}

fn render_hom(r: &HomReport) -> String {
    let mut out = format!(
        "{} face {} (c = {}), Hom({}, S ⊗ {}), points with denominator dividing {}\n",
        r.type_label, r.face, r.c, r.rho, r.rho_prime, r.bound
    );
    for e in &r.entries {
        out.push_str(&format!(
            "s = ({})  stabilizer {}  {}\n",
            e.point.join(", "),
            e.stabilizer.label,
            e.series
        ));
    }
    out
}

pub fn homology_output(
    label: TypeLabel,
    affine: bool,
    truncation: Option<usize>,
    length: usize,
    exec: Execution,
) -> alcove::Result<HomologyOutput> {
    let gens = if affine {
        if truncation.is_none() {
            return Err(Error::InvalidArgument(
                "the affine Weyl group is infinite; pass --truncation N".into(),
            ));
        }
        affine_weyl_generators(label)
    } else {
        finite_weyl_generators(label)
    };
    let complex = CosetComplex::build(&gens, truncation, exec)?;
    Ok(HomologyOutput {
        type_label: label.to_string(),
        affine,
        cells: complex.ranks(),
        homology: homology_report(&complex, exec),
        colimit: check_colimit_hypotheses(&gens, length)?,
    })
}

fn render_homology(r: &HomologyOutput) -> String {
    let which = if r.affine { "affine" } else { "finite" };
    let trunc = r
        .homology
        .truncation
        .map_or(String::new(), |n| format!(", length ≤ {n}"));
    let mut out = format!("{which} {}{trunc}: cells {:?}\n", r.type_label, r.cells);
    for g in &r.homology.groups {
        let mut parts = Vec::new();
        if g.free_rank == 1 {
            parts.push("Z".to_string());
        } else if g.free_rank > 1 {
            parts.push(format!("Z^{}", g.free_rank));
        }
        parts.extend(g.torsion.iter().map(|d| format!("Z/{d}")));
        let h = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        };
        out.push_str(&format!("H at position {} (degree {}): {h}\n", g.position, g.degree));
    }
    let verdict = if r.homology.is_acyclic() {
        "acyclic"
    } else if r.homology.is_single_z() {
        "a single Z"
    } else {
        "other"
    };
    out.push_str(&format!("homology: {verdict}\n"));
    out.push_str(&format!(
        "colimit hypotheses (length ≤ {}, {} pairs): {}\n",
        r.colimit.max_length,
        r.colimit.pairs_checked,
        if r.colimit.passed() { "pass" } else { "fail" }
    ));
    out
}

fn execute(cli: &Cli, exec: Execution) -> alcove::Result<(Doc, i32)> {
    let table = load_table(&cli.cuspidal_table)?;
    let ok = |d: Doc| Ok((d, EXIT_OK));
    match &cli.command {
        Command::Decompose(t) => {
            let d = decompose(parse_type(&t.type_label)?, &table, exec)?;
            let text = format!("{}\n", d.render_text());
            ok(doc(&d, text))
        }
        Command::Faces(t) => {
            let r = faces_report(parse_type(&t.type_label)?, &table);
            ok(doc(&r, render_faces(&r)))
        }
        Command::Relweyl { face, length } => {
            let r = relweyl_report(parse_type(&face.ty.type_label)?, &face.face, *length)?;
            ok(doc(&r, render_relweyl(&r)))
        }
        Command::Cuspidal(face) => {
            let r = cuspidal_report(parse_type(&face.ty.type_label)?, &face.face, &table)?;
            ok(doc(&r, render_cuspidal(&r)))
        }
        Command::Hom {
            face,
            bound,
            order,
            rho,
            rho_prime,
        } => {
            let r = hom_report(
                parse_type(&face.ty.type_label)?,
                &face.face,
                *bound,
                *order,
                rho,
                rho_prime,
                &table,
                exec,
            )?;
            ok(doc(&r, render_hom(&r)))
        }
        Command::AdjointSeries { ty, order } => {
            let label = parse_type(&ty.type_label)?;
            let series = adjoint_quotient_series(&build_root_system(label), *order, exec)?;
            let text = format!("{series}\n");
            let r = SeriesReport {
                type_label: label.to_string(),
                series,
            };
            ok(doc(&r, text))
        }
        Command::Homology {
            ty,
            affine,
            truncation,
            length,
        } => {
            let r = homology_output(parse_type(&ty.type_label)?, *affine, *truncation, *length, exec)?;
            ok(doc(&r, render_homology(&r)))
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let r: VerifyReport = run_suite(suite, &table, exec);
            let code = if r.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let text = r.render_text();
            Ok((doc(&r, text), code))
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match execute(cli, exec) {
        Ok((d, code)) => {
            let stdout = match cli.format {
                Format::Text => d.text,
                Format::Json => format!("{}\n", d.json),
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            Outcome { code, stdout, stderr }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_names() {
        assert_eq!(parse_character("det").unwrap(), Character::Determinant);
        assert_eq!(parse_character("1,-1").unwrap(), Character::Linear(vec![1, -1]));
        assert!(parse_character("spin").is_err());
    }

    #[test]
    fn node_lists_use_affine_names() {
        assert_eq!(node_list(&[0, 2]), vec!["a0", "a2"]);
        assert_eq!(alcove::coxeter::face_name(&[0, 2]), "{a0,a2}");
    }
}
