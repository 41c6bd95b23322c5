//! Truncated linear algebra for the right ideals `B_j A`: generators, echelon
//! forms, membership, nilpotency exponents, Hilbert functions and the
//! pertinency pipeline built on them.

pub mod crosscheck;
pub mod echelon;
pub mod generators;
pub mod hilbert;
pub mod nilpotency;
pub mod phi_n;
pub mod report;

pub use crosscheck::{smash_crosscheck, CrosscheckDegree, CrosscheckReport};
pub use echelon::{BlockRunner, BlockTask, EchelonBasis, EchelonOptions, Seeding, Sequential};
pub use generators::{generators_bj, GeneratorSet};
pub use hilbert::{
    classification_window, gk_classify, hilbert_quotient, hilbert_quotient_with, GrowthClass, HilbertProfile,
};
pub use nilpotency::{nilpotency_in, nilpotency_search, Nilpotency, NilpotencyWitness};
pub use phi_n::{phi_n_certify, phi_n_certify_with, PhiCertificate, PhiEntry};
pub use report::{
    pertinency_report, pertinency_report_with, PertinencyReport, PhiMember, PhiPolicy, PhiWitness, ReportOptions,
    ReportStatus,
};
