//! Seeded generators for randomized suites. Everything is driven by an
//! explicit ChaCha stream so suites are reproducible from a single
//! seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::rc::Rc;

use crate::isa::{
    enumerate_methods, Focus, InstructionSeq, MethodSet, PrimitiveInstruction, TestKind,
};
use crate::semantics::{ServiceFamily, ServiceState, Thread};

/// Fixed default seed for the randomized suites.
pub const DEFAULT_SEED: u64 = 0xB001;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_method(rng: &mut ChaCha8Rng) -> crate::isa::Method {
    enumerate_methods()[rng.gen_range(0..16)]
}

/// Non-empty method set with each method kept with probability 1/2.
pub fn random_method_set(rng: &mut ChaCha8Rng) -> MethodSet {
    loop {
        let set = MethodSet(rng.gen());
        if !set.is_empty() {
            return set;
        }
    }
}

pub fn random_instruction(
    rng: &mut ChaCha8Rng,
    foci: &[Focus],
    max_label: u64,
) -> PrimitiveInstruction {
    match rng.gen_range(0..5) {
        0 => PrimitiveInstruction::Jump(rng.gen_range(0..=max_label)),
        1 => PrimitiveInstruction::Halt,
        k => {
            let kind = [TestKind::Plain, TestKind::PosTest, TestKind::NegTest][k - 2];
            let focus = foci[rng.gen_range(0..foci.len())].clone();
            PrimitiveInstruction::basic(kind, focus, random_method(rng))
        }
    }
}

pub fn random_sequence(rng: &mut ChaCha8Rng, max_len: usize, foci: &[Focus]) -> InstructionSeq {
    let len = rng.gen_range(1..=max_len);
    let items = (0..len)
        .map(|_| random_instruction(rng, foci, len as u64 + 2))
        .collect();
    InstructionSeq::new(items).unwrap()
}

/// Family of full-method registers with random contents over a random
/// non-empty subset of `foci`.
pub fn random_family(rng: &mut ChaCha8Rng, foci: &[Focus]) -> ServiceFamily {
    let mut family = ServiceFamily::empty();
    loop {
        for focus in foci {
            if rng.gen_bool(0.7) {
                family.insert(focus.clone(), ServiceState::full_register(rng.gen()));
            }
        }
        if !family.is_empty() || foci.is_empty() {
            return family;
        }
    }
}

/// Random finite thread of the given maximum depth.
pub fn random_thread(rng: &mut ChaCha8Rng, depth: usize, foci: &[Focus]) -> Rc<Thread> {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen() { Thread::stop() } else { Thread::dead_end() };
    }
    let focus = foci[rng.gen_range(0..foci.len())].clone();
    let then = random_thread(rng, depth - 1, foci);
    let alt = random_thread(rng, depth - 1, foci);
    Thread::post(focus, random_method(rng), then, alt)
}

pub fn focus_pool(n: usize) -> Vec<Focus> {
    ["f", "g", "h", "k"][..n]
        .iter()
        .map(|name| Focus::new(name).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let foci = focus_pool(2);
        let mut a = rng(DEFAULT_SEED);
        let mut b = rng(DEFAULT_SEED);
        for _ in 0..50 {
            assert_eq!(random_sequence(&mut a, 12, &foci), random_sequence(&mut b, 12, &foci));
            assert_eq!(random_family(&mut a, &foci), random_family(&mut b, &foci));
        }
    }
}
