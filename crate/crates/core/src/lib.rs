//! Finite instruction sequences over Boolean-register services:
//! semantics, instruction equivalence, and size-bounded
//! functional-completeness analysis.

pub mod completeness;
pub mod equivalence;
pub mod isa;
pub mod report;
pub mod semantics;
pub mod testgen;
pub mod verify;

pub use completeness::{
    all_targets, analysis_focus, canonical_base, corollary3_check, find_witness,
    incompleteness_certificate,
    realizes, rewrite_psi_prime, strict_bound, sweep_subsets, target_of, theorem3_fixtures,
    verify_fixtures, Certificate, Corollary3Report, Target, TranslationMap, Verdict,
};
pub use equivalence::{
    check_axioms, eeqv, equivalence_classes, feqv, minimal_method_sets, summarize, AxiomReport,
    AxiomSchema, EffectSummary, EquivError, EquivalenceClass, Outcome,
};
pub use isa::{
    enumerate_instructions, enumerate_methods, parse_sequence, render_sequence, Focus,
    InstructionSeq, Method, MethodSet, ParseError, PrimitiveInstruction, TestKind, UnaryFn,
};
pub use report::{ClassReport, SubsetReport, SweepReport, VerdictReport};
pub use semantics::{
    apply_thread, encapsulate, family_compose, run_positional, service_step, thread_extract,
    use_thread, Reply, ServiceFamily, ServiceState, TerminationKind, Thread,
};
