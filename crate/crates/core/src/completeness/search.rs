//! Minimal-witness search.
//!
//! For each candidate length the search runs both register contents
//! through the partially built sequence at once, resolving a run as soon
//! as it leaves the candidate, and memoizes joint states that cannot be
//! completed. Instructions are tried in canonical order, so the first
//! hit at the first feasible length is the length-lexicographically
//! least witness.

use std::collections::HashSet;

use crate::isa::{
    enumerate_instructions, InstructionSeq, MethodSet, PrimitiveInstruction, TestKind,
};

use super::{analysis_focus, realizes, Target};

/// Candidate alphabet at length `len`: jumps `#0..#(len+1)`, halt, and
/// the method set's instructions, in canonical order.
fn alphabet(m: MethodSet, len: usize) -> Vec<PrimitiveInstruction> {
    let focus = analysis_focus();
    let mut out: Vec<PrimitiveInstruction> =
        (0..=len as u64 + 1).map(PrimitiveInstruction::Jump).collect();
    out.push(PrimitiveInstruction::Halt);
    out.extend(enumerate_instructions(m, &focus));
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

/// State of one input's run through the candidate prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Run {
    /// Already exited the candidate with the required offset and content.
    Done,
    At { pos: usize, content: bool },
}

struct Search<'a> {
    len: usize,
    alphabet: &'a [PrimitiveInstruction],
    /// Required `(offset, content)` per input.
    goals: [(u64, bool); 2],
    /// Joint states with no completing suffix.
    dead: HashSet<(usize, Run, Run)>,
}

impl Search<'_> {
    /// Advances one run past slot `i` holding `instr`. `None` means the
    /// run can no longer meet its goal.
    fn step(&self, run: Run, i: usize, instr: &PrimitiveInstruction, which: usize) -> Option<Run> {
        let (pos, content) = match run {
            Run::Done => return Some(Run::Done),
            Run::At { pos, content } => {
                if pos != i {
                    return Some(run);
                }
                (pos, content)
            }
        };
        match instr {
            PrimitiveInstruction::Halt => None,
            PrimitiveInstruction::Jump(0) => None,
            PrimitiveInstruction::Jump(l) => self.land(pos + *l as usize, content, which),
            basic => {
                let (kind, _, method) = basic.as_basic().expect("remaining variants are basic");
                let reply = method.reply.apply(content);
                let content = method.transform.apply(content);
                let delta = match kind {
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
                self.land(pos + delta, content, which)
            }
        }
    }

    fn land(&self, pos: usize, content: bool, which: usize) -> Option<Run> {
        if pos < self.len {
            return Some(Run::At { pos, content });
        }
        let offset = (pos - self.len + 1) as u64;
        if (offset, content) == self.goals[which] {
            Some(Run::Done)
        } else {
            None
        }
    }

    /// Fills slots `i..len` lexicographically; on success `out` holds
    /// the whole candidate.
    fn fill(&mut self, i: usize, s0: Run, s1: Run, out: &mut Vec<PrimitiveInstruction>) -> bool {
        if s0 == Run::Done && s1 == Run::Done {
            // Any suffix works; the least one is all #0.
            out.resize(self.len, PrimitiveInstruction::Jump(0));
            return true;
        }
        debug_assert!(i < self.len, "live runs resolve before the end");
        if self.dead.contains(&(i, s0, s1)) {
            return false;
        }
        for instr in self.alphabet {
            let (Some(n0), Some(n1)) =
                (self.step(s0, i, instr, 0), self.step(s1, i, instr, 1))
            else {
                continue;
            };
            out.push(instr.clone());
            if self.fill(i + 1, n0, n1, out) {
                return true;
            }
            out.pop();
        }
        self.dead.insert((i, s0, s1));
        false
    }
}

/// Shortest sequence over `m`'s instructions plus jumps and halt whose
/// effect is exactly `t`, or `None` if none exists with length ≤ `kmax`.
/// Ties are broken by canonical instruction order.
pub fn find_witness(m: MethodSet, t: &Target, kmax: usize) -> Option<InstructionSeq> {
    assert!(kmax >= 1);
    for len in 1..=kmax {
        let alphabet = alphabet(m, len);
        let mut search = Search {
            len,
            alphabet: &alphabet,
            goals: [t.goal(false), t.goal(true)],
            dead: HashSet::new(),
        };
        let start0 = Run::At { pos: 0, content: false };
        let start1 = Run::At { pos: 0, content: true };
        let mut out = Vec::with_capacity(len);
        if search.fill(0, start0, start1, &mut out) {
            return Some(InstructionSeq::new(out).unwrap());
        }
    }
    None
}

/// Reference search: plain enumeration of all candidates in
/// length-lexicographic order. Only usable for small `kmax`.
pub fn find_witness_naive(m: MethodSet, t: &Target, kmax: usize) -> Option<InstructionSeq> {
    let focus = analysis_focus();
    for len in 1..=kmax {
        let alphabet = alphabet(m, len);
        let mut odometer = vec![0usize; len];
        loop {
            let items: Vec<PrimitiveInstruction> =
                odometer.iter().map(|&d| alphabet[d].clone()).collect();
            let seq = InstructionSeq::new(items).unwrap();
            if realizes(&seq, t, &focus).unwrap() {
                return Some(seq);
            }
            // Increment with the leftmost slot most significant.
            let mut slot = len;
            loop {
                if slot == 0 {
                    break;
                }
                slot -= 1;
                odometer[slot] += 1;
                if odometer[slot] < alphabet.len() {
                    break;
                }
                odometer[slot] = 0;
            }
            if odometer.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::{all_targets, target_of};
    use crate::isa::parse_sequence;

    fn target(text: &str) -> Target {
        let instr = parse_sequence(text).unwrap().items()[0].clone();
        target_of(&instr, &analysis_focus()).unwrap()
    }

    #[test]
    fn cc_reaches_the_plain_ff_target_in_two() {
        let m = MethodSet::parse_codes("cc").unwrap();
        let w = find_witness(m, &target("f.ff"), 3).unwrap();
        assert_eq!(w.len(), 2);
        assert!(realizes(&w, &target("f.ff"), &analysis_focus()).unwrap());
        assert!(realizes(
            &parse_sequence("+f.cc ; f.cc").unwrap(),
            &target("f.ff"),
            &analysis_focus()
        )
        .unwrap());
    }

    #[test]
    fn full_set_has_length_one_witnesses() {
        let m = MethodSet::parse_codes("ff,tt,ii,cc,if,it,ti,tc").unwrap();
        for t in all_targets(&analysis_focus()) {
            let w = find_witness(m, &t, 1).unwrap();
            assert_eq!(w.len(), 1, "target {}", t.code());
        }
    }

    #[test]
    fn ff_alone_cannot_write_true() {
        let m = MethodSet::parse_codes("ff").unwrap();
        assert_eq!(find_witness(m, &target("f.tt"), 6), None);
    }

    #[test]
    fn witness_is_length_lex_least() {
        let m = MethodSet::parse_codes("cc").unwrap();
        for t in all_targets(&analysis_focus()) {
            assert_eq!(
                find_witness(m, &t, 3),
                find_witness_naive(m, &t, 3),
                "target {}",
                t.code()
            );
        }
    }
}
