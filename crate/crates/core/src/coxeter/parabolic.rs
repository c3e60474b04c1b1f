//! Finite parabolic subgroups `W̃_J` of the affine Weyl group.

use std::collections::HashSet;

use num_traits::Zero;

use crate::coxeter::affine::AffineElement;
use crate::error::{Error, Result};
use crate::linalg::{int_vec, Q};
use crate::rootsys::AffineRootData;

pub fn simple_reflection(data: &AffineRootData, node: usize) -> AffineElement {
    AffineElement::reflection(&data.roots[node])
}

/// Longest element of `W̃_J` for a proper subset `J`.
///
/// Starting from the identity, multiply on the left by `s_j` while the
/// image of an interior point lies on the positive side of wall `j`; each
/// step increases the length, and the process stops exactly at `w₀(J)`.
pub fn longest_element(data: &AffineRootData, nodes: &[usize]) -> AffineElement {
    assert!(nodes.len() < data.num_nodes(), "W̃_J is finite only for proper J");
    let b = data.interior_point();
    let refl: Vec<AffineElement> = nodes.iter().map(|&j| simple_reflection(data, j)).collect();
    let mut w = AffineElement::identity(data.rank());
    loop {
        let p = w.apply(&b);
        let step = nodes.iter().position(|&j| data.roots[j].eval(&p) > Q::zero());
        match step {
            Some(k) => w = refl[k].compose(&w),
            None => return w,
        }
    }
}

/// All elements of the finite group `W̃_J`, sorted by `sort_key`.
pub fn parabolic_elements(data: &AffineRootData, nodes: &[usize], budget: usize) -> Result<Vec<AffineElement>> {
    let gens: Vec<AffineElement> = nodes.iter().map(|&j| simple_reflection(data, j)).collect();
    closure(&gens, data.rank(), budget, "enumerating a parabolic subgroup")
}

/// Closure of a set of affine elements under composition.
pub fn closure(gens: &[AffineElement], dim: usize, budget: usize, context: &str) -> Result<Vec<AffineElement>> {
    let id = AffineElement::identity(dim);
    let mut seen: HashSet<AffineElement> = HashSet::new();
    seen.insert(id.clone());
    let mut list = vec![id];
    let mut k = 0;
    while k < list.len() {
        for g in gens {
            let p = g.compose(&list[k]);
            if seen.insert(p.clone()) {
                if list.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        context: context.to_string(),
                    });
                }
                list.push(p);
            }
        }
        k += 1;
    }
    list.sort_by_key(|g| g.sort_key());
    Ok(list)
}

/// Whether `g` permutes the affine simple roots indexed by `nodes`.
pub fn preserves_simple_roots(data: &AffineRootData, g: &AffineElement, nodes: &[usize]) -> bool {
    nodes.iter().all(|&i| {
        let a = &data.roots[i];
        let (lin, off) = g.act_on_functional(&int_vec(&a.linear), a.offset);
        nodes.iter().any(|&k| {
            let b = &data.roots[k];
            off == b.offset && lin == int_vec(&b.linear)
        })
    })
}

/// The element `v_s = w₀(I ∪ {s}) w₀(I)`.
pub fn wall_element(data: &AffineRootData, nodes: &[usize], s: usize) -> AffineElement {
    let mut bigger = nodes.to_vec();
    bigger.push(s);
    bigger.sort_unstable();
    longest_element(data, &bigger).compose(&longest_element(data, nodes))
}
