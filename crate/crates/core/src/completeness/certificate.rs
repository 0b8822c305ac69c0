//! Sound impossibility arguments for unrealizable targets. A
//! certificate is only ever issued when no bounded search could find a
//! witness; it upgrades that absence to a proof.

use serde::{Deserialize, Serialize};

use crate::isa::{MethodSet, UnaryFn};

use super::Target;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The required final content is unreachable from the input under
    /// any composition of the set's transform functions.
    Unwritable { input: bool, required: bool },
    /// Every reply in the set is constant, so control flow cannot
    /// depend on the input, yet the target demands it (different exit
    /// offsets) or demands an unreachable content transform.
    InputBlindBranching,
}

/// Monoid generated by `m`'s transform functions and the identity,
/// sorted canonically.
pub fn transform_monoid(m: MethodSet) -> Vec<UnaryFn> {
    let mut elems = vec![UnaryFn::I];
    for method in m.iter() {
        if !elems.contains(&method.transform) {
            elems.push(method.transform);
        }
    }
    loop {
        let mut grew = false;
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                let h = UnaryFn::compose(elems[i], elems[j]);
                if !elems.contains(&h) {
                    elems.push(h);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    elems.sort_by_key(|g| g.index());
    elems
}

/// Tries both impossibility arguments against `t`; `None` means neither
/// applies (which never asserts realizability).
pub fn incompleteness_certificate(m: MethodSet, t: &Target) -> Option<Certificate> {
    let monoid = transform_monoid(m);
    for input in [false, true] {
        let (_, required) = t.goal(input);
        if !monoid.iter().any(|g| g.apply(input) == required) {
            return Some(Certificate::Unwritable { input, required });
        }
    }
    let replies_constant = m
        .iter()
        .all(|method| matches!(method.reply, UnaryFn::F | UnaryFn::T));
    if replies_constant {
        let (off0, c0) = t.goal(false);
        let (off1, c1) = t.goal(true);
        let content_fn = UnaryFn::from_table(c0, c1);
        if off0 != off1 || !monoid.contains(&content_fn) {
            return Some(Certificate::InputBlindBranching);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::{all_targets, analysis_focus, target_of};
    use crate::isa::parse_sequence;

    fn target(text: &str) -> Target {
        let instr = parse_sequence(text).unwrap().items()[0].clone();
        target_of(&instr, &analysis_focus()).unwrap()
    }

    #[test]
    fn monoid_examples() {
        let m = MethodSet::parse_codes("ff").unwrap();
        assert_eq!(transform_monoid(m), vec![UnaryFn::F, UnaryFn::I]);

        let m = MethodSet::parse_codes("cc").unwrap();
        assert_eq!(transform_monoid(m), vec![UnaryFn::I, UnaryFn::C]);

        let m = MethodSet::parse_codes("if,it").unwrap();
        assert_eq!(transform_monoid(m), vec![UnaryFn::F, UnaryFn::T, UnaryFn::I]);
    }

    #[test]
    fn ff_cannot_write_true() {
        let m = MethodSet::parse_codes("ff").unwrap();
        assert_eq!(
            incompleteness_certificate(m, &target("f.tt")),
            Some(Certificate::Unwritable { input: false, required: true })
        );
    }

    #[test]
    fn constant_reply_cannot_branch() {
        let m = MethodSet::parse_codes("tc").unwrap();
        assert_eq!(
            incompleteness_certificate(m, &target("+f.ii")),
            Some(Certificate::InputBlindBranching)
        );
    }

    #[test]
    fn complete_singleton_yields_no_certificate() {
        let m = MethodSet::parse_codes("cc").unwrap();
        for t in all_targets(&analysis_focus()) {
            assert_eq!(incompleteness_certificate(m, &t), None, "target {}", t.code());
        }
    }
}
