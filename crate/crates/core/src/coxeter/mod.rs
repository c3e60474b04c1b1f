//! Alcove faces, parabolic subgroups and relative affine Weyl groups.

pub mod affine;
pub mod classify;
pub mod face;
pub mod group;
pub mod lemma;
pub mod parabolic;
pub mod relweyl;

pub use affine::AffineElement;
pub use classify::{classify, CoxeterComponent, CoxeterMatrix, CoxeterType};
pub use face::{build_face, enumerate_faces, face_name, parse_face_selector, AlcoveFace, LeviFactor};
pub use group::{FiniteGroup, GroupKind, GroupLabel, IntMatrix};
pub use parabolic::{longest_element, parabolic_elements, simple_reflection};
pub use relweyl::{
    relative_weyl_group, Chart, FactorizationReport, RelativeWeylGroup, TorsionPoint, WallGenerator, DEFAULT_BUDGET,
};
