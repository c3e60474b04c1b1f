//! Graded Hom series as Molien sums over finite matrix groups.
//!
//! Generators of the coefficient algebra sit in degree 1 (exterior) and
//! degree 2 (symmetric), so an element `g` contributes
//! `det(1 + t g) / det(1 - t² g)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::blocks::IrreducibleParameter;
use crate::coxeter::group::int_matrix_from_q;
use crate::coxeter::{FiniteGroup, IntMatrix, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::Q;
use crate::rootsys::RootSystem;

fn big(x: Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// A power series in `t` truncated after degree `truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SeriesRepr", try_from = "SeriesRepr")]
pub struct GradedSeries {
    coeffs: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    truncation: usize,
    coefficients: Vec<String>,
}

impl From<GradedSeries> for SeriesRepr {
    fn from(s: GradedSeries) -> SeriesRepr {
        SeriesRepr {
            truncation: s.truncation(),
            coefficients: s.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for GradedSeries {
    type Error = String;

    fn try_from(r: SeriesRepr) -> std::result::Result<GradedSeries, String> {
        if r.coefficients.len() != r.truncation + 1 {
            return Err(format!(
                "{} coefficients for truncation {}",
                r.coefficients.len(),
                r.truncation
            ));
        }
        let coeffs = r
            .coefficients
            .iter()
            .map(|c| {
                c.parse::<BigRational>()
                    .map_err(|e| format!("bad coefficient `{c}`: {e}"))
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(GradedSeries { coeffs })
    }
}

impl GradedSeries {
    pub fn zero(truncation: usize) -> GradedSeries {
        GradedSeries {
            coeffs: vec![BigRational::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> GradedSeries {
        GradedSeries::monomial(BigRational::one(), 0, truncation)
    }

    pub fn monomial(c: BigRational, degree: usize, truncation: usize) -> GradedSeries {
        let mut s = GradedSeries::zero(truncation);
        if degree <= truncation {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Coefficients lowest degree first; extra terms are dropped and missing
    /// ones are zero.
    pub fn from_coefficients(mut coeffs: Vec<BigRational>, truncation: usize) -> GradedSeries {
        coeffs.resize(truncation + 1, BigRational::zero());
        GradedSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], truncation: usize) -> GradedSeries {
        GradedSeries::from_coefficients(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            truncation,
        )
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, degree: usize) -> BigRational {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn common(&self, other: &GradedSeries) -> usize {
        self.truncation().min(other.truncation())
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        let n = self.common(other);
        GradedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        let n = self.common(other);
        GradedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> GradedSeries {
        GradedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let n = self.common(other);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        GradedSeries { coeffs: out }
    }

    /// Multiplicative inverse, defined when the constant term is nonzero.
    pub fn inverse(&self) -> Option<GradedSeries> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let n = self.truncation();
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -s * &inv0;
        }
        Some(GradedSeries { coeffs: out })
    }

    pub fn div(&self, other: &GradedSeries) -> Option<GradedSeries> {
        Some(self.mul(&other.inverse()?))
    }

    /// Coefficients as integers, failing on the first one that is not a
    /// nonnegative integer.
    pub fn nonnegative_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(degree, c)| {
                if c.is_integer() && !c.is_negative() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegral {
                        degree,
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let a = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if a.is_integer() {
                a.to_string()
            } else {
                format!("({a})")
            };
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A finite group of integer matrices acting on a rational vector space.
#[derive(Clone, Debug)]
pub struct MatrixGroupAction {
    pub group: FiniteGroup,
}

impl MatrixGroupAction {
    pub fn new(group: FiniteGroup) -> MatrixGroupAction {
        MatrixGroupAction { group }
    }

    pub fn from_generators(dim: usize, gens: &[IntMatrix], budget: usize) -> Result<MatrixGroupAction> {
        Ok(MatrixGroupAction::new(FiniteGroup::generate(dim, gens, budget)?))
    }

    pub fn trivial(dim: usize) -> MatrixGroupAction {
        MatrixGroupAction::new(FiniteGroup::trivial(dim))
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }
}

/// Rational-valued class function on the elements of an action, in
/// element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Q>,
}

impl ClassFunction {
    /// Checks the length and constancy on conjugacy classes.
    pub fn new(action: &MatrixGroupAction, values: Vec<Q>) -> Result<ClassFunction> {
        let g = &action.group;
        if values.len() != g.order() {
            return Err(Error::BadCharacter(format!(
                "{} values for a group of order {}",
                values.len(),
                g.order()
            )));
        }
        for &h in g.generators() {
            let hi = g.inverse(h);
            for x in 0..g.order() {
                let y = g.mul(g.mul(h, x), hi);
                if values[x] != values[y] {
                    return Err(Error::BadCharacter(format!(
                        "value {} at element {x} differs from {} at its conjugate {y}",
                        values[x], values[y]
                    )));
                }
            }
        }
        Ok(ClassFunction { values })
    }

    /// `(1/|Γ|) Σ χ(g) ψ(g)`; both characters are rational, hence real.
    pub fn inner_product(&self, other: &ClassFunction) -> Q {
        let s: Q = self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum();
        s / Q::from_integer(self.values.len() as i64)
    }
}

/// Characters available without a character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Character {
    Trivial,
    /// `det g` on the given representation.
    Determinant,
    /// `tr g` on the given representation.
    Trace,
    /// A homomorphism to `{±1}` given by its signs on the group generators.
    Linear(Vec<i64>),
    /// Explicit values in element order.
    Values(Vec<Q>),
}

impl Character {
    pub fn evaluate(&self, action: &MatrixGroupAction) -> Result<ClassFunction> {
        let g = &action.group;
        let values = match self {
            Character::Trivial => vec![Q::one(); g.order()],
            Character::Determinant => (0..g.order()).map(|i| g.element_q(i).determinant()).collect(),
            Character::Trace => (0..g.order()).map(|i| g.element_q(i).trace()).collect(),
            Character::Linear(signs) => linear_character(g, signs)?,
            Character::Values(v) => v.clone(),
        };
        ClassFunction::new(action, values)
    }
}

fn linear_character(g: &FiniteGroup, signs: &[i64]) -> Result<Vec<Q>> {
    let gens = g.generators();
    if signs.len() != gens.len() || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::BadCharacter(format!(
            "need one sign ±1 per generator ({} generators)",
            gens.len()
        )));
    }
    let mut value: Vec<Option<i64>> = vec![None; g.order()];
    value[0] = Some(1);
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        let vx = value[x].expect("visited");
        for (&h, &s) in gens.iter().zip(signs) {
            let y = g.mul(h, x);
            match value[y] {
                None => {
                    value[y] = Some(s * vx);
                    queue.push(y);
                }
                Some(vy) if vy != s * vx => {
                    return Err(Error::BadCharacter(format!(
                        "signs {signs:?} do not define a homomorphism"
                    )));
                }
                Some(_) => {}
            }
        }
        k += 1;
    }
    Ok(value
        .into_iter()
        .map(|v| Q::from_integer(v.expect("group is generated")))
        .collect())
}

/// `det(1 + t g) / det(1 - t² g)` from the characteristic polynomial of `g`.
fn element_series(charpoly: &[Q], truncation: usize) -> GradedSeries {
    let n = charpoly.len() - 1;
    // det(1 + t g) = sum_k c_k (-1)^(n-k) t^(n-k)
    let mut num = vec![BigRational::zero(); n + 1];
    // det(1 - s g) = sum_k c_k s^(n-k), with s = t²
    let mut den = vec![BigRational::zero(); 2 * n + 1];
    for (k, c) in charpoly.iter().enumerate() {
        let c = big(*c);
        let e = n - k;
        num[e] = if e.is_multiple_of(2) { c.clone() } else { -c.clone() };
        den[2 * e] = c;
    }
    let num = GradedSeries::from_coefficients(num, truncation);
    let den = GradedSeries::from_coefficients(den, truncation);
    num.div(&den).expect("det(1) = 1")
}

/// `(1/|Γ|) Σ_g w(g) det(1 + t g) / det(1 - t² g)`.
///
/// Elements are grouped by characteristic polynomial, so each distinct
/// rational function is expanded once.
pub fn molien_sum(action: &MatrixGroupAction, weights: &[Q], truncation: usize, exec: Execution) -> GradedSeries {
    let g = &action.group;
    let polys = exec.map_range(g.order(), |i| g.element_q(i).characteristic_polynomial());
    let mut grouped: BTreeMap<Vec<Q>, Q> = BTreeMap::new();
    for (p, w) in polys.into_iter().zip(weights) {
        *grouped.entry(p).or_insert_with(Q::zero) += *w;
    }
    let entries: Vec<(Vec<Q>, Q)> = grouped.into_iter().filter(|(_, w)| !w.is_zero()).collect();
    let terms = exec.map(&entries, |(p, w)| element_series(p, truncation).scale(&big(*w)));
    let mut total = GradedSeries::zero(truncation);
    for t in &terms {
        total = total.add(t);
    }
    total.scale(&BigRational::new(BigInt::one(), BigInt::from(g.order())))
}

/// Graded dimension of `Hom_Γ(ρ, 𝕊 ⊗ ρ′)`, checked to have nonnegative
/// integer coefficients.
pub fn hom_series(
    action: &MatrixGroupAction,
    rho: &ClassFunction,
    rho_prime: &ClassFunction,
    truncation: usize,
    exec: Execution,
) -> Result<GradedSeries> {
    let weights: Vec<Q> = rho.values.iter().zip(&rho_prime.values).map(|(a, b)| a * b).collect();
    let s = molien_sum(action, &weights, truncation, exec);
    s.nonnegative_integers()?;
    Ok(s)
}

/// `Π_i (1 + t^{2d_i - 1}) / (1 - t^{2d_i})`.
pub fn degree_product(degrees: &[u32], truncation: usize) -> GradedSeries {
    let mut s = GradedSeries::one(truncation);
    for &d in degrees {
        let d = d as usize;
        let one = BigRational::one();
        let num = GradedSeries::one(truncation).add(&GradedSeries::monomial(one.clone(), 2 * d - 1, truncation));
        let den = GradedSeries::one(truncation).sub(&GradedSeries::monomial(one, 2 * d, truncation));
        s = s.mul(&num).div(&den).expect("unit constant term");
    }
    s
}

/// The Weyl group on the reflection representation (simple coroot
/// coordinates).
pub fn weyl_group_action(sys: &RootSystem, budget: usize) -> Result<MatrixGroupAction> {
    let gens: Vec<IntMatrix> = (0..sys.rank())
        .map(|i| int_matrix_from_q(&sys.simple_reflection(i)).expect("simple reflections are integral"))
        .collect();
    MatrixGroupAction::from_generators(sys.rank(), &gens, budget)
}

/// Molien sum over `W` with trivial characters, checked against the
/// degree product through `truncation`.
pub fn adjoint_quotient_series(sys: &RootSystem, truncation: usize, exec: Execution) -> Result<GradedSeries> {
    let action = weyl_group_action(sys, DEFAULT_BUDGET)?;
    let ones = vec![Q::one(); action.order()];
    let sum = molien_sum(&action, &ones, truncation, exec);
    let closed = degree_product(&sys.degrees, truncation);
    for degree in 0..=truncation {
        if sum.coefficient(degree) != closed.coefficient(degree) {
            return Err(Error::MolienMismatch {
                type_label: sys.label.to_string(),
                degree,
                sum: sum.coefficient(degree).to_string(),
                closed: closed.coefficient(degree).to_string(),
            });
        }
    }
    Ok(sum)
}

/// Hom series between two irreducible parameters: zero unless the face,
/// cuspidal index and orbit of `s` all agree.
pub fn cross_block_hom(
    a: &IrreducibleParameter,
    chi_a: &Character,
    b: &IrreducibleParameter,
    chi_b: &Character,
    truncation: usize,
    exec: Execution,
) -> Result<GradedSeries> {
    if !a.same_block_point(b) {
        return Ok(GradedSeries::zero(truncation));
    }
    let action = a.stabilizer_action()?;
    let rho = chi_a.evaluate(&action)?;
    let rho_prime = chi_b.evaluate(&action)?;
    hom_series(&action, &rho, &rho_prime, truncation, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::root_system;

    fn sign_line() -> MatrixGroupAction {
        MatrixGroupAction::from_generators(1, &[vec![-1]], 10).unwrap()
    }

    #[test]
    fn negation_on_a_line() {
        let act = sign_line();
        let triv = Character::Trivial.evaluate(&act).unwrap();
        let s = hom_series(&act, &triv, &triv, 8, Execution::Sequential).unwrap();
        assert_eq!(s, GradedSeries::from_integers(&[1, 0, 0, 1, 1, 0, 0, 1, 1], 8));
        assert_eq!(s.to_string(), "1 + t^3 + t^4 + t^7 + t^8");
    }

    #[test]
    fn sign_isotypic_part_on_a_line() {
        let act = sign_line();
        let triv = Character::Trivial.evaluate(&act).unwrap();
        let sign = Character::Determinant.evaluate(&act).unwrap();
        let s = hom_series(&act, &triv, &sign, 4, Execution::Sequential).unwrap();
        // ½ ((1+t)/(1-t²) - (1-t)/(1+t²))
        let one = BigRational::one();
        let plus = GradedSeries::from_integers(&[1, 1], 4)
            .div(&GradedSeries::from_integers(&[1, 0, -1], 4))
            .unwrap();
        let minus = GradedSeries::from_integers(&[1, -1], 4)
            .div(&GradedSeries::from_integers(&[1, 0, 1], 4))
            .unwrap();
        let expected = plus.sub(&minus).scale(&(one / BigRational::from_integer(2.into())));
        assert_eq!(s, expected);
        assert_eq!(s.to_string(), "t + t^2");
    }

    #[test]
    fn trivial_group_on_a_point() {
        let act = MatrixGroupAction::trivial(0);
        let triv = Character::Trivial.evaluate(&act).unwrap();
        let s = hom_series(&act, &triv, &triv, 5, Execution::Sequential).unwrap();
        assert_eq!(s, GradedSeries::one(5));
    }

    #[test]
    fn adjoint_series_matches_degrees() {
        for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3"] {
            let sys = root_system(t).unwrap();
            adjoint_quotient_series(&sys, 20, Execution::Parallel).unwrap();
        }
        let a1 = adjoint_quotient_series(&root_system("A1").unwrap(), 8, Execution::Sequential).unwrap();
        assert_eq!(a1.to_string(), "1 + t^3 + t^4 + t^7 + t^8");
    }

    #[test]
    fn non_class_function_is_rejected() {
        let sys = root_system("A2").unwrap();
        let act = weyl_group_action(&sys, 100).unwrap();
        let mut v = vec![Q::zero(); 6];
        v[1] = Q::one();
        assert!(matches!(
            Character::Values(v).evaluate(&act),
            Err(Error::BadCharacter(_))
        ));
        assert!(Character::Linear(vec![1, -1]).evaluate(&act).is_err());
        assert!(Character::Linear(vec![-1, -1]).evaluate(&act).is_ok());
    }

    #[test]
    fn series_arithmetic_and_json() {
        let a = GradedSeries::from_integers(&[1, -1], 6);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, GradedSeries::from_integers(&[1; 7], 6));
        assert_eq!(a.mul(&inv), GradedSeries::one(6));
        let half = GradedSeries::monomial(BigRational::new(1.into(), 2.into()), 2, 3);
        assert_eq!(half.to_string(), "(1/2)t^2");
        assert!(matches!(
            half.nonnegative_integers(),
            Err(Error::NonIntegral { degree: 2, .. })
        ));
        let json = serde_json::to_string(&half).unwrap();
        assert_eq!(serde_json::from_str::<GradedSeries>(&json).unwrap(), half);
        assert_eq!(GradedSeries::zero(2).to_string(), "0");
        assert_eq!(GradedSeries::from_integers(&[0, -2, 1], 2).to_string(), "-2t + t^2");
    }
}
