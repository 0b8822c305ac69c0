//! The instruction model: unary Boolean functions, register methods,
//! primitive instructions, finite instruction sequences, and their
//! concrete text syntax.
//!
//! A register method `m(p,q)` replies `p(content)` and updates the
//! register content to `q(content)`; `p` and `q` range over the four
//! unary Boolean functions. Methods are written as two-letter codes,
//! reply first: `ii` is `m(I,I)`, `tc` is `m(T,C)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the four unary Boolean functions.
///
/// Canonical order is `F < T < I < C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UnaryFn {
    /// Constant false.
    F,
    /// Constant true.
    T,
    /// Identity.
    I,
    /// Complement.
    C,
}

impl UnaryFn {
    pub const ALL: [UnaryFn; 4] = [UnaryFn::F, UnaryFn::T, UnaryFn::I, UnaryFn::C];

    pub fn apply(self, b: bool) -> bool {
        match self {
            UnaryFn::F => false,
            UnaryFn::T => true,
            UnaryFn::I => b,
            UnaryFn::C => !b,
        }
    }

    /// Pointwise composition: `compose(g, f)(b) = g(f(b))`.
    pub fn compose(g: UnaryFn, f: UnaryFn) -> UnaryFn {
        Self::from_table(g.apply(f.apply(false)), g.apply(f.apply(true)))
    }

    /// The unique function with the given values at 0 and 1.
    pub fn from_table(at0: bool, at1: bool) -> UnaryFn {
        match (at0, at1) {
            (false, false) => UnaryFn::F,
            (true, true) => UnaryFn::T,
            (false, true) => UnaryFn::I,
            (true, false) => UnaryFn::C,
        }
    }

    pub fn index(self) -> usize {
        match self {
            UnaryFn::F => 0,
            UnaryFn::T => 1,
            UnaryFn::I => 2,
            UnaryFn::C => 3,
        }
    }

    pub fn code(self) -> char {
        match self {
            UnaryFn::F => 'f',
            UnaryFn::T => 't',
            UnaryFn::I => 'i',
            UnaryFn::C => 'c',
        }
    }

    pub fn from_code(c: char) -> Option<UnaryFn> {
        match c {
            'f' => Some(UnaryFn::F),
            't' => Some(UnaryFn::T),
            'i' => Some(UnaryFn::I),
            'c' => Some(UnaryFn::C),
            _ => None,
        }
    }

    fn from_index(i: usize) -> UnaryFn {
        Self::ALL[i]
    }
}

/// A Boolean-register method `m(reply, transform)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Method {
    pub reply: UnaryFn,
    pub transform: UnaryFn,
}

impl Method {
    pub fn new(reply: UnaryFn, transform: UnaryFn) -> Method {
        Method { reply, transform }
    }

    /// Canonical index: reply major, transform minor, `F<T<I<C`.
    pub fn index(self) -> usize {
        self.reply.index() * 4 + self.transform.index()
    }

    pub fn from_index(i: usize) -> Method {
        debug_assert!(i < 16);
        Method::new(UnaryFn::from_index(i / 4), UnaryFn::from_index(i % 4))
    }

    pub fn code(self) -> String {
        let mut s = String::with_capacity(2);
        s.push(self.reply.code());
        s.push(self.transform.code());
        s
    }

    pub fn from_code(code: &str) -> Option<Method> {
        let mut chars = code.chars();
        let (r, t) = (chars.next()?, chars.next()?);
        if chars.next().is_some() {
            return None;
        }
        Some(Method::new(UnaryFn::from_code(r)?, UnaryFn::from_code(t)?))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.reply.code(), self.transform.code())
    }
}

/// All 16 methods in canonical order.
pub fn enumerate_methods() -> Vec<Method> {
    (0..16).map(Method::from_index).collect()
}

/// A service name. Must match `[a-z][a-z0-9]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Focus(Arc<str>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid focus name {0:?}: must match [a-z][a-z0-9]*")]
pub struct InvalidFocus(pub String);

impl Focus {
    pub fn new(name: &str) -> Result<Focus, InvalidFocus> {
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {
                chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
            }
            _ => false,
        };
        if ok {
            Ok(Focus(Arc::from(name)))
        } else {
            Err(InvalidFocus(name.to_owned()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Focus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Focus {
    type Err = InvalidFocus;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Focus::new(s)
    }
}

/// A subset of the 16 methods, as a 16-bit mask indexed by
/// [`Method::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct MethodSet(pub u16);

impl MethodSet {
    pub const EMPTY: MethodSet = MethodSet(0);
    pub const FULL: MethodSet = MethodSet(0xffff);

    pub fn from_methods(methods: &[Method]) -> MethodSet {
        let mut mask = 0u16;
        for m in methods {
            mask |= 1 << m.index();
        }
        MethodSet(mask)
    }

    /// Parses a comma-separated list of two-letter codes, e.g. `ff,tt,ii`.
    pub fn parse_codes(s: &str) -> Result<MethodSet, ParseError> {
        let mut set = MethodSet::EMPTY;
        for part in s.split(',') {
            let part = part.trim();
            let m = Method::from_code(part).ok_or_else(|| ParseError::Syntax {
                pos: 0,
                msg: format!("bad method code {part:?}"),
            })?;
            set = set.with(m);
        }
        Ok(set)
    }

    pub fn contains(self, m: Method) -> bool {
        self.0 & (1 << m.index()) != 0
    }

    #[must_use]
    pub fn with(self, m: Method) -> MethodSet {
        MethodSet(self.0 | (1 << m.index()))
    }

    #[must_use]
    pub fn without(self, m: Method) -> MethodSet {
        MethodSet(self.0 & !(1 << m.index()))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: MethodSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in canonical order.
    pub fn iter(self) -> impl Iterator<Item = Method> {
        (0..16).filter(move |i| self.0 & (1 << i) != 0).map(Method::from_index)
    }

    pub fn codes(self) -> Vec<String> {
        self.iter().map(|m| m.code()).collect()
    }
}

impl fmt::Display for MethodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.codes().join(","))
    }
}

/// The three shapes a basic instruction can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TestKind {
    Plain,
    PosTest,
    NegTest,
}

impl TestKind {
    pub const ALL: [TestKind; 3] = [TestKind::Plain, TestKind::PosTest, TestKind::NegTest];
}

/// One of the five primitive instruction kinds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PrimitiveInstruction {
    Plain(Focus, Method),
    PosTest(Focus, Method),
    NegTest(Focus, Method),
    /// Forward jump. Label 0 is legal and deadlocks on execution.
    Jump(u64),
    Halt,
}

use PrimitiveInstruction as PI;

impl PrimitiveInstruction {
    pub fn basic(kind: TestKind, focus: Focus, method: Method) -> PrimitiveInstruction {
        match kind {
            TestKind::Plain => PI::Plain(focus, method),
            TestKind::PosTest => PI::PosTest(focus, method),
            TestKind::NegTest => PI::NegTest(focus, method),
        }
    }

    /// `(kind, focus, method)` for the three basic-instruction variants.
    pub fn as_basic(&self) -> Option<(TestKind, &Focus, Method)> {
        match self {
            PI::Plain(f, m) => Some((TestKind::Plain, f, *m)),
            PI::PosTest(f, m) => Some((TestKind::PosTest, f, *m)),
            PI::NegTest(f, m) => Some((TestKind::NegTest, f, *m)),
            _ => None,
        }
    }

    pub fn is_basic(&self) -> bool {
        self.as_basic().is_some()
    }

    fn order_key(&self) -> (u8, u64, Option<(&str, usize, u8)>) {
        match self {
            PI::Jump(l) => (0, *l, None),
            PI::Halt => (1, 0, None),
            PI::Plain(f, m) => (2, 0, Some((f.name(), m.index(), 0))),
            PI::PosTest(f, m) => (2, 0, Some((f.name(), m.index(), 1))),
            PI::NegTest(f, m) => (2, 0, Some((f.name(), m.index(), 2))),
        }
    }
}

// Canonical order: jumps by label, then halt, then basic instructions by
// focus, method, and plain < postest < negtest within each method.
impl Ord for PrimitiveInstruction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for PrimitiveInstruction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimitiveInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PI::Plain(focus, m) => write!(f, "{focus}.{m}"),
            PI::PosTest(focus, m) => write!(f, "+{focus}.{m}"),
            PI::NegTest(focus, m) => write!(f, "-{focus}.{m}"),
            PI::Jump(l) => write!(f, "#{l}"),
            PI::Halt => f.write_str("!"),
        }
    }
}

/// `PI_br(M)` restricted to one focus: for each method of `M` in canonical
/// order, the plain, positive-test, and negative-test instruction.
pub fn enumerate_instructions(set: MethodSet, focus: &Focus) -> Vec<PrimitiveInstruction> {
    let mut out = Vec::with_capacity(3 * set.len());
    for m in set.iter() {
        for kind in TestKind::ALL {
            out.push(PI::basic(kind, focus.clone(), m));
        }
    }
    out
}

/// A non-empty finite instruction sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstructionSeq(Vec<PrimitiveInstruction>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("instruction sequences must be non-empty")]
pub struct EmptySequence;

impl InstructionSeq {
    pub fn new(items: Vec<PrimitiveInstruction>) -> Result<InstructionSeq, EmptySequence> {
        if items.is_empty() {
            Err(EmptySequence)
        } else {
            Ok(InstructionSeq(items))
        }
    }

    pub fn single(instr: PrimitiveInstruction) -> InstructionSeq {
        InstructionSeq(vec![instr])
    }

    pub fn items(&self) -> &[PrimitiveInstruction] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Concatenation (PGA's `∘` on finite sequences).
    #[must_use]
    pub fn concat(&self, other: &InstructionSeq) -> InstructionSeq {
        let mut items = self.0.clone();
        items.extend(other.0.iter().cloned());
        InstructionSeq(items)
    }

    /// The sequence followed by `n` halt instructions.
    #[must_use]
    pub fn with_halts(&self, n: usize) -> InstructionSeq {
        let mut items = self.0.clone();
        items.extend(std::iter::repeat(PI::Halt).take(n));
        InstructionSeq(items)
    }

    /// Foci occurring in basic instructions, deduplicated, in order of
    /// first occurrence.
    pub fn foci(&self) -> Vec<Focus> {
        let mut out: Vec<Focus> = Vec::new();
        for instr in &self.0 {
            if let Some((_, f, _)) = instr.as_basic() {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for InstructionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, instr) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{instr}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("repetition operator at position {pos} is not supported (finite sequences only)")]
    UnsupportedRepetition { pos: usize },
    #[error("empty instruction sequence")]
    Empty,
}

/// Canonical rendering: instructions joined with `" ; "`.
pub fn render_sequence(seq: &InstructionSeq) -> String {
    seq.to_string()
}

/// Parses the concrete sequence grammar:
///
/// ```text
/// seq    := instr (";" instr)* ;
/// instr  := test? focus "." method | "#" nat | "!" ;
/// test   := "+" | "-" ;
/// focus  := [a-z][a-z0-9]* ;
/// method := [ftic][ftic] ;
/// nat    := [0-9]+ ;
/// ```
///
/// Whitespace around tokens is ignored. The repetition operator `*` is
/// rejected with a dedicated error.
pub fn parse_sequence(text: &str) -> Result<InstructionSeq, ParseError> {
    if let Some(pos) = text.find('*') {
        return Err(ParseError::UnsupportedRepetition { pos });
    }
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut items = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return if items.is_empty() {
                Err(ParseError::Empty)
            } else {
                Err(ParseError::Syntax { pos, msg: "expected instruction".into() })
            };
        }
        let instr = parse_instruction(text, &mut pos)?;
        items.push(instr);
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] == b';' {
            pos += 1;
        } else {
            return Err(ParseError::Syntax {
                pos,
                msg: format!("expected ';' or end of input, found {:?}", text[pos..].chars().next().unwrap()),
            });
        }
    }
    Ok(InstructionSeq(items))
}

fn parse_instruction(text: &str, pos: &mut usize) -> Result<PrimitiveInstruction, ParseError> {
    let bytes = text.as_bytes();
    match bytes[*pos] {
        b'!' => {
            *pos += 1;
            Ok(PI::Halt)
        }
        b'#' => {
            *pos += 1;
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                return Err(ParseError::Syntax { pos: *pos, msg: "expected jump label".into() });
            }
            let label: u64 = text[start..*pos].parse().map_err(|_| ParseError::Syntax {
                pos: start,
                msg: "jump label out of range".into(),
            })?;
            Ok(PI::Jump(label))
        }
        c @ (b'+' | b'-') => {
            *pos += 1;
            let (focus, method) = parse_basic(text, pos)?;
            Ok(if c == b'+' {
                PI::PosTest(focus, method)
            } else {
                PI::NegTest(focus, method)
            })
        }
        c if c.is_ascii_lowercase() => {
            let (focus, method) = parse_basic(text, pos)?;
            Ok(PI::Plain(focus, method))
        }
        c => Err(ParseError::Syntax {
            pos: *pos,
            msg: format!("unexpected character {:?}", c as char),
        }),
    }
}

fn parse_basic(text: &str, pos: &mut usize) -> Result<(Focus, Method), ParseError> {
    let bytes = text.as_bytes();
    let start = *pos;
    if *pos >= bytes.len() || !bytes[*pos].is_ascii_lowercase() {
        return Err(ParseError::Syntax { pos: *pos, msg: "expected focus name".into() });
    }
    *pos += 1;
    while *pos < bytes.len() && (bytes[*pos].is_ascii_lowercase() || bytes[*pos].is_ascii_digit()) {
        *pos += 1;
    }
    let focus = Focus::new(&text[start..*pos]).expect("scanner only accepts valid focus chars");
    if *pos >= bytes.len() || bytes[*pos] != b'.' {
        return Err(ParseError::Syntax { pos: *pos, msg: "expected '.' after focus".into() });
    }
    *pos += 1;
    let mstart = *pos;
    if *pos + 2 > bytes.len() {
        return Err(ParseError::Syntax { pos: *pos, msg: "expected two-letter method code".into() });
    }
    let code = &text[mstart..mstart + 2];
    let method = Method::from_code(code).ok_or_else(|| ParseError::Syntax {
        pos: mstart,
        msg: format!("bad method code {code:?}"),
    })?;
    *pos += 2;
    // Method code must not run into further identifier characters.
    if *pos < bytes.len() && (bytes[*pos].is_ascii_alphanumeric()) {
        return Err(ParseError::Syntax { pos: *pos, msg: "trailing characters after method code".into() });
    }
    Ok((focus, method))
}
