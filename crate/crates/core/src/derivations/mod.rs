//! Replayable derivation scripts: named chains of commutators and products
//! whose every intermediate value is compared exactly against the engine.

pub mod builtin;
pub mod script;

pub use builtin::{builtin_scripts, double_move_instance, select, single_move_instance};
pub use script::{replay, DerivationScript, MemberReport, Operation, ReplayOptions, ScriptReport, Step, StepReport};
