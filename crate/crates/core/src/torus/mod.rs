//! Torus arithmetic, box tilings, ε-copies of Hamming balls and orbit searches.

mod alpha;
mod boxes;
mod copy;
mod equidist;
mod point;

pub use alpha::{alpha_parts, check_copy, choose_alpha, copy_cayley_vertices, AlphaChoice, CoverageFailure};
pub use boxes::{
    box_intersection_lemma_check, box_tiling, i_eps, lcm_unit, to_units, translate_bits, v_eps, Arc, BoxSet, TBox,
};
pub use copy::{
    lift_nonrecurrence, lift_with, point_in_thick_ball, tilde_h_member, verify_lift, CopySpec, Lift, LiftFailure,
};
pub use equidist::{empirical_box_density, AlphaRep, GOLDEN_FRAC_64};
pub use point::TorusPoint;
