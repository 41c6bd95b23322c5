//! The (-1)-skew polynomial ring in the `b`/`c` presentation, its quotients by
//! central generators, the smash product and the index-map homomorphisms.

pub mod basis;
pub mod context;
pub mod element;
pub mod maps;
pub mod monomial;
pub mod parse;
pub mod rewrite;
pub mod smash;

pub use basis::{basis_by_weight, basis_count, basis_enumerate};
pub use context::Context;
pub use element::AlgebraElement;
pub use maps::{apply_f_lambda, lift_theta, lift_theta_to, project_pi};
pub use monomial::Monomial;
pub use rewrite::{normal_form, normal_form_with, Strategy, Token};
pub use smash::SmashElement;
