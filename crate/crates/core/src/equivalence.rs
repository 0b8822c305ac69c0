//! Effect summaries, the effectual-equivalence relation and its axiom
//! system, the 16 equivalence classes, minimal method sets, and
//! functional equivalence of sequences.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::isa::{
    enumerate_instructions, Focus, InstructionSeq, Method, MethodSet, PrimitiveInstruction,
    TestKind, UnaryFn,
};
use crate::semantics::{
    apply_thread, run_positional, thread_extract, ServiceFamily, ServiceState, TerminationKind,
    Thread, use_thread,
};

/// Observable outcome of running a single-focus sequence on one input
/// content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Deadlock,
    /// The termination instruction was reached inside the sequence.
    Halted(bool),
    /// Control left the sequence towards the `offset`-th instruction
    /// after its end (`offset >= 1`).
    Exit { offset: u64, content: bool },
}

/// Per-input observable effect of a single-focus sequence. Equality of
/// summaries decides effectual equivalence and witness matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EffectSummary {
    pub on0: Outcome,
    pub on1: Outcome,
}

impl EffectSummary {
    pub fn on(&self, input: bool) -> Outcome {
        if input {
            self.on1
        } else {
            self.on0
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquivError {
    #[error("sequence mentions focus {found} but was summarized at {expected}")]
    ForeignFocus { expected: Focus, found: Focus },
    #[error("effectual equivalence is defined on basic instructions only")]
    NotBasic,
    #[error("instructions are on different foci")]
    FocusMismatch,
    #[error("focus {0} occurs in a sequence but not in the given focus list")]
    FociIncomplete(Focus),
    #[error("functional equivalence is capped at 16 foci")]
    TooManyFoci,
}

/// Runs `seq` positionally on `focus ↦ BR_full(b)` for both inputs `b`
/// and records the observable outcome of each run.
pub fn summarize(seq: &InstructionSeq, focus: &Focus) -> Result<EffectSummary, EquivError> {
    for instr in seq.items() {
        if let Some((_, f, _)) = instr.as_basic() {
            if f != focus {
                return Err(EquivError::ForeignFocus {
                    expected: focus.clone(),
                    found: f.clone(),
                });
            }
        }
    }
    Ok(EffectSummary {
        on0: outcome_on(seq, false),
        on1: outcome_on(seq, true),
    })
}

fn outcome_on(seq: &InstructionSeq, input: bool) -> Outcome {
    let items = seq.items();
    let n = items.len() as u64;
    let mut pc = 0u64;
    let mut content = input;
    loop {
        if pc >= n {
            return Outcome::Exit { offset: pc - n + 1, content };
        }
        match &items[pc as usize] {
            PrimitiveInstruction::Halt => return Outcome::Halted(content),
            PrimitiveInstruction::Jump(0) => return Outcome::Deadlock,
            PrimitiveInstruction::Jump(l) => pc += l,
            instr => {
                let (kind, _, method) = instr.as_basic().expect("remaining variants are basic");
                let reply = method.reply.apply(content);
                content = method.transform.apply(content);
                pc += match kind {
                    TestKind::Plain => 1,
                    TestKind::PosTest => {
                        if reply {
                            1
                        } else {
                            2
                        }
                    }
                    TestKind::NegTest => {
                        if reply {
                            2
                        } else {
                            1
                        }
                    }
                };
            }
        }
    }
}

/// Oracle path for [`summarize`]: derives the same outcome from thread
/// extraction plus use/apply of `seq ∘ !^n` for increasing `n`.
pub fn summarize_axiomatic(seq: &InstructionSeq, focus: &Focus) -> Result<EffectSummary, EquivError> {
    for instr in seq.items() {
        if let Some((_, f, _)) = instr.as_basic() {
            if f != focus {
                return Err(EquivError::ForeignFocus {
                    expected: focus.clone(),
                    found: f.clone(),
                });
            }
        }
    }
    let max_label = seq
        .items()
        .iter()
        .filter_map(|i| match i {
            PrimitiveInstruction::Jump(l) => Some(*l),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let cap = seq.len() as u64 + max_label + 2;
    Ok(EffectSummary {
        on0: axiomatic_outcome(seq, focus, false, cap),
        on1: axiomatic_outcome(seq, focus, true, cap),
    })
}

fn axiomatic_outcome(seq: &InstructionSeq, focus: &Focus, input: bool, cap: u64) -> Outcome {
    let family = ServiceFamily::singleton(focus.clone(), ServiceState::full_register(input));
    for n in 0..=cap {
        let probe = seq.with_halts(n as usize);
        let thread = thread_extract(&probe);
        if *use_thread(&thread, &family) == Thread::Stop {
            let result = apply_thread(&thread, &family);
            let content = match result.get(focus) {
                Some(ServiceState::Register { content, .. }) => *content,
                other => panic!("full register cannot degrade: {other:?}"),
            };
            return if n == 0 {
                Outcome::Halted(content)
            } else {
                Outcome::Exit { offset: n, content }
            };
        }
    }
    Outcome::Deadlock
}

/// Effectual equivalence of two basic instructions on a common focus.
pub fn eeqv(u: &PrimitiveInstruction, v: &PrimitiveInstruction) -> Result<bool, EquivError> {
    let (_, fu, _) = u.as_basic().ok_or(EquivError::NotBasic)?;
    let (_, fv, _) = v.as_basic().ok_or(EquivError::NotBasic)?;
    if fu != fv {
        return Err(EquivError::FocusMismatch);
    }
    let su = summarize(&InstructionSeq::single(u.clone()), fu)?;
    let sv = summarize(&InstructionSeq::single(v.clone()), fu)?;
    Ok(su == sv)
}

/// One effectual-equivalence class of the 48 single-focus instructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub representative: PrimitiveInstruction,
    pub members: Vec<PrimitiveInstruction>,
    pub summary: EffectSummary,
}

impl EquivalenceClass {
    /// Methods occurring in the class members, as a mask.
    pub fn method_support(&self) -> MethodSet {
        let mut set = MethodSet::EMPTY;
        for member in &self.members {
            if let Some((_, _, m)) = member.as_basic() {
                set = set.with(m);
            }
        }
        set
    }
}

/// The class representatives in the order the classes are listed, as
/// `(kind, method code)` pairs.
pub const REPRESENTATIVES: [(TestKind, &str); 16] = [
    (TestKind::PosTest, "ff"),
    (TestKind::NegTest, "tt"),
    (TestKind::NegTest, "ti"),
    (TestKind::NegTest, "tc"),
    (TestKind::Plain, "ff"),
    (TestKind::Plain, "tt"),
    (TestKind::Plain, "ii"),
    (TestKind::Plain, "cc"),
    (TestKind::PosTest, "if"),
    (TestKind::PosTest, "it"),
    (TestKind::PosTest, "ii"),
    (TestKind::NegTest, "cc"),
    (TestKind::NegTest, "if"),
    (TestKind::NegTest, "it"),
    (TestKind::NegTest, "ii"),
    (TestKind::PosTest, "cc"),
];

fn representative_instruction(i: usize, focus: &Focus) -> PrimitiveInstruction {
    let (kind, code) = REPRESENTATIVES[i];
    PrimitiveInstruction::basic(kind, focus.clone(), Method::from_code(code).unwrap())
}

/// Display order inside a class: positive tests, then negative tests,
/// then plain instructions, each by method.
fn member_display_rank(instr: &PrimitiveInstruction) -> (u8, usize) {
    let (kind, _, m) = instr.as_basic().expect("class members are basic");
    let kind_rank = match kind {
        TestKind::PosTest => 0,
        TestKind::NegTest => 1,
        TestKind::Plain => 2,
    };
    (kind_rank, m.index())
}

/// Partitions the 48 instructions at `focus` by effect summary.
///
/// Returns exactly 16 classes, in listing order, each headed by its
/// canonical representative.
pub fn equivalence_classes(focus: &Focus) -> Vec<EquivalenceClass> {
    let mut by_summary: HashMap<EffectSummary, Vec<PrimitiveInstruction>> = HashMap::new();
    for instr in enumerate_instructions(MethodSet::FULL, focus) {
        let s = summarize(&InstructionSeq::single(instr.clone()), focus).unwrap();
        by_summary.entry(s).or_default().push(instr);
    }
    assert_eq!(by_summary.len(), 16, "the 48 instructions form 16 classes");
    let mut classes = Vec::with_capacity(16);
    for i in 0..16 {
        let repr = representative_instruction(i, focus);
        let summary = summarize(&InstructionSeq::single(repr.clone()), focus).unwrap();
        let mut members = by_summary
            .remove(&summary)
            .unwrap_or_else(|| panic!("representative {repr} not found in any class"));
        members.sort_by_key(member_display_rank);
        classes.push(EquivalenceClass { representative: repr, members, summary });
    }
    assert!(by_summary.is_empty(), "every class has a listed representative");
    classes
}

/// The five axiom schemas for effectual equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomSchema {
    /// `+f.m(F,p) ≡ -f.m(T,p)`
    PosFNegT,
    /// `+f.m(T,p) ≡ -f.m(F,p)`
    PosTNegF,
    /// `+f.m(I,p) ≡ -f.m(C,p)`
    PosINegC,
    /// `+f.m(C,p) ≡ -f.m(I,p)`
    PosCNegI,
    /// `+f.m(T,p) ≡ f.m(q,p)`
    PosTPlain,
}

impl AxiomSchema {
    pub const ALL: [AxiomSchema; 5] = [
        AxiomSchema::PosFNegT,
        AxiomSchema::PosTNegF,
        AxiomSchema::PosINegC,
        AxiomSchema::PosCNegI,
        AxiomSchema::PosTPlain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomSchema::PosFNegT => "+f.m(F,p) == -f.m(T,p)",
            AxiomSchema::PosTNegF => "+f.m(T,p) == -f.m(F,p)",
            AxiomSchema::PosINegC => "+f.m(I,p) == -f.m(C,p)",
            AxiomSchema::PosCNegI => "+f.m(C,p) == -f.m(I,p)",
            AxiomSchema::PosTPlain => "+f.m(T,p) == f.m(q,p)",
        }
    }

    /// All ground instances at `focus`, with `p` (and `q`) ranging over
    /// the four unary functions.
    pub fn instances(self, focus: &Focus) -> Vec<(PrimitiveInstruction, PrimitiveInstruction)> {
        let pair = |r1: UnaryFn, r2: UnaryFn| {
            UnaryFn::ALL
                .iter()
                .map(|&p| {
                    (
                        PrimitiveInstruction::PosTest(focus.clone(), Method::new(r1, p)),
                        PrimitiveInstruction::NegTest(focus.clone(), Method::new(r2, p)),
                    )
                })
                .collect::<Vec<_>>()
        };
        match self {
            AxiomSchema::PosFNegT => pair(UnaryFn::F, UnaryFn::T),
            AxiomSchema::PosTNegF => pair(UnaryFn::T, UnaryFn::F),
            AxiomSchema::PosINegC => pair(UnaryFn::I, UnaryFn::C),
            AxiomSchema::PosCNegI => pair(UnaryFn::C, UnaryFn::I),
            AxiomSchema::PosTPlain => {
                let mut out = Vec::with_capacity(16);
                for p in UnaryFn::ALL {
                    for q in UnaryFn::ALL {
                        out.push((
                            PrimitiveInstruction::PosTest(focus.clone(), Method::new(UnaryFn::T, p)),
                            PrimitiveInstruction::Plain(focus.clone(), Method::new(q, p)),
                        ));
                    }
                }
                out
            }
        }
    }
}

/// Result of checking the axiom system against the computed relation.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// Ground instances whose two sides have different summaries.
    pub violations: Vec<(AxiomSchema, PrimitiveInstruction, PrimitiveInstruction)>,
    /// Whether the closure of the axiom instances partitions the 48
    /// instructions exactly like the computed summaries do.
    pub closure_matches: bool,
    pub closure_class_count: usize,
}

impl AxiomReport {
    pub fn sound_and_complete(&self) -> bool {
        self.violations.is_empty() && self.closure_matches
    }
}

fn instr_index(instr: &PrimitiveInstruction) -> usize {
    let (kind, _, m) = instr.as_basic().expect("axioms range over basic instructions");
    let k = match kind {
        TestKind::Plain => 0,
        TestKind::PosTest => 1,
        TestKind::NegTest => 2,
    };
    m.index() * 3 + k
}

/// Partition of the 48 instructions induced by the reflexive-symmetric-
/// transitive closure of the given schemas' ground instances.
pub fn closure_partition(focus: &Focus, schemas: &[AxiomSchema]) -> Vec<BTreeSet<PrimitiveInstruction>> {
    let mut parent: Vec<usize> = (0..48).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for schema in schemas {
        for (u, v) in schema.instances(focus) {
            let (a, b) = (instr_index(&u), instr_index(&v));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut groups: HashMap<usize, BTreeSet<PrimitiveInstruction>> = HashMap::new();
    for instr in enumerate_instructions(MethodSet::FULL, focus) {
        let root = find(&mut parent, instr_index(&instr));
        groups.entry(root).or_default().insert(instr);
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort();
    out
}

fn summary_partition(focus: &Focus) -> Vec<BTreeSet<PrimitiveInstruction>> {
    let mut out: Vec<BTreeSet<PrimitiveInstruction>> = equivalence_classes(focus)
        .into_iter()
        .map(|c| c.members.into_iter().collect())
        .collect();
    out.sort();
    out
}

/// Checks soundness (every ground instance holds under summaries) and
/// completeness (closure partition equals the computed partition) of the
/// full axiom system.
pub fn check_axioms(focus: &Focus) -> AxiomReport {
    check_axioms_with(focus, &AxiomSchema::ALL)
}

pub fn check_axioms_with(focus: &Focus, schemas: &[AxiomSchema]) -> AxiomReport {
    let mut violations = Vec::new();
    for &schema in schemas {
        for (u, v) in schema.instances(focus) {
            if !eeqv(&u, &v).unwrap() {
                violations.push((schema, u, v));
            }
        }
    }
    let closure = closure_partition(focus, schemas);
    let computed = summary_partition(focus);
    AxiomReport {
        violations,
        closure_matches: closure == computed,
        closure_class_count: closure.len(),
    }
}

/// All inclusion-minimal method sets whose instructions hit every one of
/// the 16 equivalence classes, sorted by mask.
pub fn minimal_method_sets() -> Vec<MethodSet> {
    let focus = Focus::new("f").unwrap();
    let supports: Vec<MethodSet> = equivalence_classes(&focus)
        .iter()
        .map(|c| c.method_support())
        .collect();
    let hits_all = |mask: u16| supports.iter().all(|s| s.0 & mask != 0);
    let mut out = Vec::new();
    for mask in 0..=u16::MAX {
        if !hits_all(mask) {
            continue;
        }
        // Minimal for an upward-closed property: every member is needed.
        let minimal = (0..16)
            .filter(|i| mask & (1 << i) != 0)
            .all(|i| !hits_all(mask & !(1 << i)));
        if minimal {
            out.push(MethodSet(mask));
        }
    }
    out
}

/// Functional equivalence of two sequences over the given foci: on every
/// content assignment both must terminate or deadlock identically and
/// leave identical final families.
pub fn feqv(x: &InstructionSeq, y: &InstructionSeq, foci: &[Focus]) -> Result<bool, EquivError> {
    if foci.len() > 16 {
        return Err(EquivError::TooManyFoci);
    }
    for seq in [x, y] {
        for occurring in seq.foci() {
            if !foci.contains(&occurring) {
                return Err(EquivError::FociIncomplete(occurring));
            }
        }
    }
    for assignment in 0u32..(1 << foci.len()) {
        let mut family = ServiceFamily::empty();
        for (i, focus) in foci.iter().enumerate() {
            let content = assignment & (1 << i) != 0;
            family.insert(focus.clone(), ServiceState::full_register(content));
        }
        let (kx, fx) = run_positional(x, &family);
        let (ky, fy) = run_positional(y, &family);
        // With covering foci and full method sets the use-result is
        // always Stop or DeadEnd, so comparing termination kinds is
        // comparing use-results.
        let _ = TerminationKind::Terminated;
        if kx != ky || fx != fy {
            return Ok(false);
        }
    }
    Ok(true)
}
