//! Execution semantics: thread extraction, Boolean-register services,
//! service families with composition and encapsulation, the abstracting
//! use and apply operators, and a fast positional interpreter.
//!
//! The positional interpreter is the performance path; the thread-based
//! path exists as the oracle the rest of the crate is cross-checked
//! against.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::isa::{Focus, InstructionSeq, Method, MethodSet, PrimitiveInstruction, TestKind};

/// Reply of a service to a method request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reply {
    False,
    True,
    Div,
}

/// A Boolean-register service state, or the empty service.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ServiceState {
    /// Unable to process any method.
    Empty,
    /// Register with the given content, able to process exactly the
    /// methods in `methods`.
    Register { content: bool, methods: MethodSet },
}

impl ServiceState {
    pub fn register(content: bool, methods: MethodSet) -> ServiceState {
        ServiceState::Register { content, methods }
    }

    pub fn full_register(content: bool) -> ServiceState {
        ServiceState::register(content, MethodSet::FULL)
    }
}

/// Processes one method request: reply plus successor state.
///
/// A register processes `m(p,q)` iff it is in its method set, replying
/// `p(content)` and updating the content to `q(content)`. Anything else
/// replies `Div` and leaves the empty service behind.
pub fn service_step(s: ServiceState, m: Method) -> (Reply, ServiceState) {
    match s {
        ServiceState::Register { content, methods } if methods.contains(m) => {
            let reply = if m.reply.apply(content) { Reply::True } else { Reply::False };
            (reply, ServiceState::register(m.transform.apply(content), methods))
        }
        _ => (Reply::Div, ServiceState::Empty),
    }
}

/// A finite map from foci to service states.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ServiceFamily(BTreeMap<Focus, ServiceState>);

impl ServiceFamily {
    pub fn empty() -> ServiceFamily {
        ServiceFamily::default()
    }

    pub fn singleton(focus: Focus, state: ServiceState) -> ServiceFamily {
        let mut map = BTreeMap::new();
        map.insert(focus, state);
        ServiceFamily(map)
    }

    pub fn get(&self, focus: &Focus) -> Option<&ServiceState> {
        self.0.get(focus)
    }

    pub fn insert(&mut self, focus: Focus, state: ServiceState) {
        self.0.insert(focus, state);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Focus, &ServiceState)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Service family composition `⊕`: union of entries, with any focus
    /// present on both sides collapsing to the empty service.
    #[must_use]
    pub fn compose(&self, other: &ServiceFamily) -> ServiceFamily {
        let mut map = self.0.clone();
        for (focus, state) in &other.0 {
            map.entry(focus.clone())
                .and_modify(|s| *s = ServiceState::Empty)
                .or_insert(*state);
        }
        ServiceFamily(map)
    }

    /// Encapsulation `∂_F`: removes all entries whose focus is in `hidden`.
    #[must_use]
    pub fn encapsulate(&self, hidden: &[Focus]) -> ServiceFamily {
        ServiceFamily(
            self.0
                .iter()
                .filter(|(f, _)| !hidden.contains(f))
                .map(|(f, s)| (f.clone(), *s))
                .collect(),
        )
    }
}

/// Composes a family from the given entries.
pub fn family_compose(u: &ServiceFamily, v: &ServiceFamily) -> ServiceFamily {
    u.compose(v)
}

pub fn encapsulate(hidden: &[Focus], u: &ServiceFamily) -> ServiceFamily {
    u.encapsulate(hidden)
}

/// A finite thread: termination, inaction, or postconditional
/// composition on a basic action.
///
/// Subtrees are reference counted so that extraction of test-heavy
/// sequences shares structure instead of duplicating it.
#[derive(Debug)]
pub enum Thread {
    Stop,
    DeadEnd,
    Post(Focus, Method, Rc<Thread>, Rc<Thread>),
}

impl PartialEq for Thread {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Thread::Stop, Thread::Stop) | (Thread::DeadEnd, Thread::DeadEnd) => true,
            (Thread::Post(f1, m1, t1, e1), Thread::Post(f2, m2, t2, e2)) => {
                f1 == f2
                    && m1 == m2
                    && (Rc::ptr_eq(t1, t2) || t1 == t2)
                    && (Rc::ptr_eq(e1, e2) || e1 == e2)
            }
            _ => false,
        }
    }
}

impl Eq for Thread {}

impl Thread {
    pub fn stop() -> Rc<Thread> {
        Rc::new(Thread::Stop)
    }

    pub fn dead_end() -> Rc<Thread> {
        Rc::new(Thread::DeadEnd)
    }

    pub fn post(focus: Focus, method: Method, then: Rc<Thread>, els: Rc<Thread>) -> Rc<Thread> {
        Rc::new(Thread::Post(focus, method, then, els))
    }

    /// Longest chain of actions, respecting sharing.
    pub fn depth(&self) -> usize {
        fn go(t: &Thread, memo: &mut std::collections::HashMap<*const Thread, usize>) -> usize {
            let key = t as *const Thread;
            if let Some(&d) = memo.get(&key) {
                return d;
            }
            let d = match t {
                Thread::Stop | Thread::DeadEnd => 0,
                Thread::Post(_, _, a, b) => 1 + go(a, memo).max(go(b, memo)),
            };
            memo.insert(key, d);
            d
        }
        go(self, &mut std::collections::HashMap::new())
    }
}

/// Thread extraction `|X|`.
///
/// Memoized by sequence position, so extraction is linear in the number
/// of positions while consecutive tests share their subtrees.
pub fn thread_extract(seq: &InstructionSeq) -> Rc<Thread> {
    let items = seq.items();
    let n = items.len();
    let mut memo: Vec<Option<Rc<Thread>>> = vec![None; n];
    for i in (0..n).rev() {
        let at = |j: usize, memo: &[Option<Rc<Thread>>]| -> Rc<Thread> {
            if j < n {
                memo[j].clone().expect("filled right to left")
            } else {
                Thread::dead_end()
            }
        };
        let t = match &items[i] {
            PrimitiveInstruction::Halt => Thread::stop(),
            PrimitiveInstruction::Jump(0) => Thread::dead_end(),
            PrimitiveInstruction::Jump(l) => {
                let target = i.checked_add(*l as usize);
                match target {
                    Some(j) if j < n => memo[j].clone().unwrap(),
                    _ => Thread::dead_end(),
                }
            }
            PrimitiveInstruction::Plain(f, m) => {
                let next = at(i + 1, &memo);
                Thread::post(f.clone(), *m, next.clone(), next)
            }
            PrimitiveInstruction::PosTest(f, m) => {
                Thread::post(f.clone(), *m, at(i + 1, &memo), at(i + 2, &memo))
            }
            PrimitiveInstruction::NegTest(f, m) => {
                Thread::post(f.clone(), *m, at(i + 2, &memo), at(i + 1, &memo))
            }
        };
        memo[i] = Some(t);
    }
    memo[0].clone().expect("sequences are non-empty")
}

/// Abstracting use `//`: runs the thread against the family, abstracting
/// processed actions away. Actions whose focus is absent from the family
/// are kept; a `Div` reply yields inaction.
pub fn use_thread(t: &Rc<Thread>, u: &ServiceFamily) -> Rc<Thread> {
    match &**t {
        Thread::Stop => Thread::stop(),
        Thread::DeadEnd => Thread::dead_end(),
        Thread::Post(focus, method, then, els) => match u.get(focus) {
            None => Thread::post(
                focus.clone(),
                *method,
                use_thread(then, u),
                use_thread(els, u),
            ),
            Some(state) => {
                let (reply, next_state) = service_step(*state, *method);
                match reply {
                    Reply::Div => Thread::dead_end(),
                    Reply::True | Reply::False => {
                        let mut next = u.clone();
                        next.insert(focus.clone(), next_state);
                        let branch = if reply == Reply::True { then } else { els };
                        use_thread(branch, &next)
                    }
                }
            }
        },
    }
}

/// Apply `•`: runs the thread against the family and returns the final
/// family. Inaction, an absent focus, and a `Div` reply all yield the
/// empty family.
pub fn apply_thread(t: &Rc<Thread>, u: &ServiceFamily) -> ServiceFamily {
    match &**t {
        Thread::Stop => u.clone(),
        Thread::DeadEnd => ServiceFamily::empty(),
        Thread::Post(focus, method, then, els) => match u.get(focus) {
            None => ServiceFamily::empty(),
            Some(state) => {
                let (reply, next_state) = service_step(*state, *method);
                match reply {
                    Reply::Div => ServiceFamily::empty(),
                    Reply::True | Reply::False => {
                        let mut next = u.clone();
                        next.insert(focus.clone(), next_state);
                        let branch = if reply == Reply::True { then } else { els };
                        apply_thread(branch, &next)
                    }
                }
            }
        },
    }
}

/// How a positional run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationKind {
    Terminated,
    Deadlocked,
}

/// Direct program-counter interpretation of a sequence against a family.
///
/// Agrees with `use`/`apply` of the extracted thread: a jump to label 0,
/// control leaving the sequence, an absent focus, and a `Div` reply all
/// deadlock, returning the empty family.
pub fn run_positional(
    seq: &InstructionSeq,
    family: &ServiceFamily,
) -> (TerminationKind, ServiceFamily) {
    let items = seq.items();
    let n = items.len();
    let mut fam = family.clone();
    let mut pc = 0usize;
    loop {
        if pc >= n {
            return (TerminationKind::Deadlocked, ServiceFamily::empty());
        }
        match &items[pc] {
            PrimitiveInstruction::Halt => return (TerminationKind::Terminated, fam),
            PrimitiveInstruction::Jump(0) => {
                return (TerminationKind::Deadlocked, ServiceFamily::empty())
            }
            PrimitiveInstruction::Jump(l) => match pc.checked_add(*l as usize) {
                Some(next) => pc = next,
                None => return (TerminationKind::Deadlocked, ServiceFamily::empty()),
            },
            instr => {
                let (kind, focus, method) = instr.as_basic().expect("remaining variants are basic");
                let Some(state) = fam.get(focus) else {
                    return (TerminationKind::Deadlocked, ServiceFamily::empty());
                };
                let (reply, next_state) = service_step(*state, method);
                let taken = match reply {
                    Reply::Div => return (TerminationKind::Deadlocked, ServiceFamily::empty()),
                    Reply::True => true,
                    Reply::False => false,
                };
                fam.insert(focus.clone(), next_state);
                pc += match kind {
                    TestKind::Plain => 1,
                    TestKind::PosTest => {
                        if taken {
                            1
                        } else {
                            2
                        }
                    }
                    TestKind::NegTest => {
                        if taken {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isa::{parse_sequence, UnaryFn};

    fn f() -> Focus {
        Focus::new("f").unwrap()
    }

    fn g() -> Focus {
        Focus::new("g").unwrap()
    }

    fn m(code: &str) -> Method {
        Method::from_code(code).unwrap()
    }

    #[test]
    fn service_step_examples() {
        let (r, s) = service_step(ServiceState::full_register(true), m("cc"));
        assert_eq!(r, Reply::False);
        assert_eq!(s, ServiceState::full_register(false));

        let only_ii = MethodSet::from_methods(&[m("ii")]);
        let (r, s) = service_step(ServiceState::register(false, only_ii), m("tt"));
        assert_eq!(r, Reply::Div);
        assert_eq!(s, ServiceState::Empty);

        let (r, s) = service_step(ServiceState::Empty, m("ff"));
        assert_eq!(r, Reply::Div);
        assert_eq!(s, ServiceState::Empty);
    }

    #[test]
    fn extraction_base_cases() {
        let stop = thread_extract(&parse_sequence("!").unwrap());
        assert_eq!(*stop, Thread::Stop);

        let dead = thread_extract(&parse_sequence("#0 ; !").unwrap());
        assert_eq!(*dead, Thread::DeadEnd);

        // |+f.ii ; ! ; !| = Stop <(f, ii)> Stop, via |#2;!;!| = |#1;!| = S.
        let t = thread_extract(&parse_sequence("+f.ii ; ! ; !").unwrap());
        match &*t {
            Thread::Post(focus, method, a, b) => {
                assert_eq!(focus, &f());
                assert_eq!(*method, m("ii"));
                assert_eq!(**a, Thread::Stop);
                assert_eq!(**b, Thread::Stop);
            }
            other => panic!("unexpected thread {other:?}"),
        }
    }

    #[test]
    fn extraction_of_long_test_chain_is_linear_and_shallow() {
        let text = std::iter::repeat("+f.ii")
            .take(64)
            .collect::<Vec<_>>()
            .join(" ; ");
        let seq = parse_sequence(&text).unwrap();
        let t = thread_extract(&seq);
        assert!(t.depth() <= 64);
    }

    #[test]
    fn family_compose_axioms() {
        let u = ServiceFamily::singleton(f(), ServiceState::full_register(true));
        assert_eq!(u.compose(&ServiceFamily::empty()), u);

        let v = ServiceFamily::singleton(f(), ServiceState::full_register(false));
        let collapsed = u.compose(&v);
        assert_eq!(collapsed.get(&f()), Some(&ServiceState::Empty));

        let w = ServiceFamily::singleton(g(), ServiceState::full_register(false));
        assert_eq!(u.compose(&w), w.compose(&u));
    }

    #[test]
    fn encapsulate_removes_named_entries() {
        let u = ServiceFamily::singleton(f(), ServiceState::full_register(true))
            .compose(&ServiceFamily::singleton(g(), ServiceState::full_register(false)));
        let only_g = u.encapsulate(&[f()]);
        assert!(only_g.get(&f()).is_none());
        assert!(only_g.get(&g()).is_some());
        assert_eq!(u.encapsulate(&[]), u);
        assert!(u.encapsulate(&[f(), g()]).is_empty());
    }

    #[test]
    fn use_and_apply_examples() {
        let fam = ServiceFamily::singleton(f(), ServiceState::full_register(true));
        assert_eq!(*use_thread(&Thread::stop(), &fam), Thread::Stop);

        // (Stop <(f,ii)> DeadEnd) // f.BR(1) = Stop, reply I(1) = true.
        let t = Thread::post(f(), m("ii"), Thread::stop(), Thread::dead_end());
        assert_eq!(*use_thread(&t, &fam), Thread::Stop);

        // Action on an absent focus is kept with both branches used.
        let t = Thread::post(g(), m("ii"), Thread::stop(), Thread::dead_end());
        match &*use_thread(&t, &fam) {
            Thread::Post(focus, _, a, b) => {
                assert_eq!(focus, &g());
                assert_eq!(**a, Thread::Stop);
                assert_eq!(**b, Thread::DeadEnd);
            }
            other => panic!("unexpected thread {other:?}"),
        }

        assert_eq!(apply_thread(&Thread::stop(), &fam), fam);
        assert!(apply_thread(&Thread::dead_end(), &fam).is_empty());

        // Plain f.cc on content 0: content becomes 1 on either branch.
        let fam0 = ServiceFamily::singleton(f(), ServiceState::full_register(false));
        let t = Thread::post(f(), m("cc"), Thread::stop(), Thread::stop());
        assert_eq!(
            apply_thread(&t, &fam0),
            ServiceFamily::singleton(f(), ServiceState::full_register(true))
        );
    }

    #[test]
    fn positional_base_cases() {
        let fam = ServiceFamily::singleton(f(), ServiceState::full_register(true));
        let (kind, out) = run_positional(&parse_sequence("!").unwrap(), &fam);
        assert_eq!(kind, TerminationKind::Terminated);
        assert_eq!(out, fam);

        let (kind, out) = run_positional(&parse_sequence("#0 ; !").unwrap(), &fam);
        assert_eq!(kind, TerminationKind::Deadlocked);
        assert!(out.is_empty());

        // Negative test on reply C(1) = false proceeds to the halt.
        let (kind, out) = run_positional(&parse_sequence("-f.ci ; ! ; #0").unwrap(), &fam);
        assert_eq!(kind, TerminationKind::Terminated);
        assert_eq!(out, fam);
        let _ = UnaryFn::C;
    }
}
