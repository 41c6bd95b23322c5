//! Residue arithmetic for `Z_n`: the sets, closures and verdicts that decide
//! admissibility and bound the pertinency without touching the algebra.

pub mod admissible;
pub mod arith;
pub mod bounds;
pub mod lambda;
pub mod psi;
pub mod sets;
pub mod special;

pub use admissible::{
    admissible, admissible_with, AdmissibilityVerdict, Certificate, LocalStore, Verdict, VerdictStore,
};
pub use arith::{gcd, mop, Mop};
pub use bounds::{pertinency_bounds, pertinency_bounds_with, PertinencyBounds};
pub use lambda::{lambda_closure, LambdaClosure, LambdaMove, LambdaRule};
pub use psi::{psi_saturate, PsiEntry, PsiTable};
pub use sets::{omega2, orbit_semigroup, phi2, phi_orbit_certified, ResidueSet};
pub use special::{is_n_special, spl_certified, SpecialReport, SpecialVerdict};
