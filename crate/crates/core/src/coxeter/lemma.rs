//! Comparison of the subgroup of `W̃^I` generated by `{v_s : s ∈ I′ ∖ I}`
//! with the normalizer quotient `N_{W̃_{I′}}(W̃_I)/W̃_I`, both realized as
//! sets of cosets inside the finite group `W̃_{I′}`.

use std::collections::{BTreeSet, HashSet};

use crate::coxeter::affine::AffineElement;
use crate::coxeter::parabolic::{closure, parabolic_elements, preserves_simple_roots, simple_reflection, wall_element};
use crate::error::Result;
use crate::rootsys::AffineRootData;

/// A coset `g W̃_I`, stored as the sorted keys of its elements.
pub type Coset = Vec<Vec<(i64, i64)>>;

fn coset(g: &AffineElement, parabolic: &[AffineElement]) -> Coset {
    let mut keys: Vec<Vec<(i64, i64)>> = parabolic.iter().map(|h| g.compose(h).sort_key()).collect();
    keys.sort();
    keys
}

/// Cosets of `W̃_I` met by the subgroup generated by the normalizing `v_s`,
/// `s ∈ outer ∖ inner`.
pub fn generated_cosets(
    data: &AffineRootData,
    inner: &[usize],
    outer: &[usize],
    budget: usize,
) -> Result<BTreeSet<Coset>> {
    let gens: Vec<AffineElement> = outer
        .iter()
        .filter(|s| !inner.contains(s))
        .map(|&s| wall_element(data, inner, s))
        .filter(|v| preserves_simple_roots(data, v, inner))
        .collect();
    let mut all_gens = gens;
    all_gens.extend(inner.iter().map(|&i| simple_reflection(data, i)));
    let h = closure(&all_gens, data.rank(), budget, "generating a relative Weyl subgroup")?;
    let par = parabolic_elements(data, inner, budget)?;
    Ok(h.iter().map(|g| coset(g, &par)).collect())
}

/// Cosets of `W̃_I` in its normalizer inside `W̃_{I′}`, by exhaustive search.
pub fn normalizer_cosets(
    data: &AffineRootData,
    inner: &[usize],
    outer: &[usize],
    budget: usize,
) -> Result<BTreeSet<Coset>> {
    let big = parabolic_elements(data, outer, budget)?;
    let par = parabolic_elements(data, inner, budget)?;
    let members: HashSet<&AffineElement> = par.iter().collect();
    let refl: Vec<AffineElement> = inner.iter().map(|&i| simple_reflection(data, i)).collect();
    Ok(big
        .iter()
        .filter(|g| {
            let gi = g.inverse();
            refl.iter().all(|s| members.contains(&g.compose(s).compose(&gi)))
        })
        .map(|g| coset(g, &par))
        .collect())
}

/// Whether the two constructions agree element for element.
pub fn lemma_holds(data: &AffineRootData, inner: &[usize], outer: &[usize], budget: usize) -> Result<bool> {
    Ok(generated_cosets(data, inner, outer, budget)? == normalizer_cosets(data, inner, outer, budget)?)
}
