//! Instruction-set translation maps and the jump-adjusting rewriter.
//!
//! A translation map sends every basic instruction to a sequence over a
//! smaller method set with the same observable effect, uniformly in the
//! focus. The rewriter splices those images into a sequence and
//! stretches each forward jump by the extra length of the expansions it
//! skips over.
//!
//! Jump stretching preserves functional equivalence, but a test
//! instruction's skip-exit is not a jump and cannot be stretched: it
//! always moves exactly two positions. When a test is directly
//! followed by an instruction whose image is longer than one
//! instruction, the skip lands inside that image and equivalence can
//! break (see `skip_into_long_image_breaks_equivalence`). Rewrites are
//! equivalence-preserving on sequences free of that pattern.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivalence::equivalence_classes;
use crate::isa::{
    parse_sequence, Focus, InstructionSeq, Method, MethodSet, ParseError, PrimitiveInstruction,
    TestKind,
};

use super::{analysis_focus, realizes, target_of};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("no translation entry for {0}")]
    MissingMapping(PrimitiveInstruction),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapBuildError {
    #[error("entries for class of {representative} disagree")]
    ConflictingEntries { representative: PrimitiveInstruction },
    #[error("class of {representative} has no entry and no member over the method set")]
    UncoveredClass { representative: PrimitiveInstruction },
    #[error("entry for {instr} does not have that instruction's effect")]
    WrongEffect { instr: PrimitiveInstruction },
    #[error("bad entry syntax: {0}")]
    Bad(#[from] ParseError),
}

/// A total, class-constant map from basic instructions to equivalent
/// sequences over `methods` (plus jumps and halt). Entries are stored
/// focus-abstractly and reapplied at any focus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationMap {
    pub methods: MethodSet,
    entries: BTreeMap<(TestKind, Method), InstructionSeq>,
}

impl TranslationMap {
    /// Builds a map from explicitly listed entries, completing every
    /// unlisted class with its canonically least member over `methods`.
    pub fn build(
        methods: MethodSet,
        listed: &[(TestKind, Method, &str)],
    ) -> Result<TranslationMap, MapBuildError> {
        let focus = analysis_focus();
        let mut parsed: Vec<(PrimitiveInstruction, InstructionSeq)> = Vec::new();
        for (kind, method, text) in listed {
            let instr = PrimitiveInstruction::basic(*kind, focus.clone(), *method);
            parsed.push((instr, parse_sequence(text)?));
        }
        let mut entries = BTreeMap::new();
        for class in equivalence_classes(&focus) {
            let in_class: Vec<&(PrimitiveInstruction, InstructionSeq)> = parsed
                .iter()
                .filter(|(instr, _)| class.members.contains(instr))
                .collect();
            let image = match in_class.as_slice() {
                [] => {
                    let fallback = class
                        .members
                        .iter()
                        .filter(|i| {
                            i.as_basic().is_some_and(|(_, _, m)| methods.contains(m))
                        })
                        .min()
                        .ok_or(MapBuildError::UncoveredClass {
                            representative: class.representative.clone(),
                        })?;
                    InstructionSeq::single(fallback.clone())
                }
                [(_, seq)] => seq.clone(),
                [(_, first), rest @ ..] => {
                    if rest.iter().any(|(_, seq)| seq != first) {
                        return Err(MapBuildError::ConflictingEntries {
                            representative: class.representative.clone(),
                        });
                    }
                    first.clone()
                }
            };
            let t = target_of(&class.representative, &focus).expect("representative is basic");
            if !realizes(&image, &t, &focus).expect("entries are single-focus") {
                return Err(MapBuildError::WrongEffect {
                    instr: class.representative.clone(),
                });
            }
            for member in &class.members {
                let (kind, _, method) = member.as_basic().unwrap();
                entries.insert((kind, method), image.clone());
            }
        }
        Ok(TranslationMap { methods, entries })
    }

    /// Image of a basic instruction, rendered at `focus`.
    pub fn image(
        &self,
        kind: TestKind,
        focus: &Focus,
        method: Method,
    ) -> Option<InstructionSeq> {
        self.entries
            .get(&(kind, method))
            .map(|seq| refocus(seq, focus))
    }

    pub fn image_len(&self, kind: TestKind, method: Method) -> Option<usize> {
        self.entries.get(&(kind, method)).map(|seq| seq.len())
    }

    /// Largest image length: the `k` of the size bound the map attests.
    pub fn max_image_len(&self) -> usize {
        self.entries.values().map(|seq| seq.len()).max().unwrap_or(1)
    }

    /// Whether every instruction occurring in an image is mapped to
    /// itself, the precondition of [`rewrite_psi_prime`].
    pub fn is_identity_on_codomain(&self) -> bool {
        self.entries.values().all(|seq| {
            seq.items().iter().all(|instr| match instr.as_basic() {
                None => true,
                Some((kind, _, method)) => {
                    self.entries.get(&(kind, method)).map(|img| img.items())
                        == Some(std::slice::from_ref(instr))
                }
            })
        })
    }
}

fn refocus(seq: &InstructionSeq, focus: &Focus) -> InstructionSeq {
    let items = seq
        .items()
        .iter()
        .map(|instr| match instr.as_basic() {
            Some((kind, _, method)) => {
                PrimitiveInstruction::basic(kind, focus.clone(), method)
            }
            None => instr.clone(),
        })
        .collect();
    InstructionSeq::new(items).unwrap()
}

/// Serialized form: method codes plus entries keyed by the instruction
/// rendered at the analysis focus.
#[derive(Serialize, Deserialize)]
struct TranslationMapDto {
    methods: Vec<String>,
    entries: BTreeMap<String, String>,
}

impl Serialize for TranslationMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let focus = analysis_focus();
        let dto = TranslationMapDto {
            methods: self.methods.codes(),
            entries: self
                .entries
                .iter()
                .map(|((kind, method), seq)| {
                    let key = PrimitiveInstruction::basic(*kind, focus.clone(), *method);
                    (key.to_string(), seq.to_string())
                })
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TranslationMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let dto = TranslationMapDto::deserialize(deserializer)?;
        let methods = MethodSet::parse_codes(&dto.methods.join(","))
            .map_err(|e| D::Error::custom(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for (key, value) in &dto.entries {
            let parsed = parse_sequence(key).map_err(|e| D::Error::custom(e.to_string()))?;
            let (kind, _, method) = parsed.items()[0]
                .as_basic()
                .ok_or_else(|| D::Error::custom(format!("entry key {key} is not basic")))?;
            let seq = parse_sequence(value).map_err(|e| D::Error::custom(e.to_string()))?;
            entries.insert((kind, method), seq);
        }
        Ok(TranslationMap { methods, entries })
    }
}

/// Rewrites `x` through `psi`: basic instructions are replaced by their
/// images, halts are kept, and each jump `#l` becomes `#l'` with `l'`
/// grown by the image excess of every instruction the jump moves past.
///
/// Functional equivalence with `x` is guaranteed only when no test
/// instruction in `x` is directly followed by an instruction with a
/// multi-instruction image; see the module documentation.
pub fn rewrite_psi_prime(
    x: &InstructionSeq,
    psi: &TranslationMap,
) -> Result<InstructionSeq, RewriteError> {
    let items = x.items();
    let n = items.len();
    let mut excess = vec![0u64; n];
    for (i, instr) in items.iter().enumerate() {
        if let Some((kind, _, method)) = instr.as_basic() {
            let len = psi
                .image_len(kind, method)
                .ok_or_else(|| RewriteError::MissingMapping(instr.clone()))?;
            excess[i] = len as u64 - 1;
        }
    }
    let mut out = Vec::new();
    for (i, instr) in items.iter().enumerate() {
        match instr {
            PrimitiveInstruction::Halt => out.push(PrimitiveInstruction::Halt),
            PrimitiveInstruction::Jump(l) => {
                let end = n.min(i.saturating_add(usize::try_from(*l).unwrap_or(n)));
                let grown: u64 = excess[i..end].iter().sum();
                out.push(PrimitiveInstruction::Jump(l + grown));
            }
            basic => {
                let (kind, focus, method) = basic.as_basic().unwrap();
                let image = psi.image(kind, focus, method).expect("checked above");
                out.extend(image.items().iter().cloned());
            }
        }
    }
    Ok(InstructionSeq::new(out).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::theorem3_fixtures;
    use crate::equivalence::feqv;

    fn part_map(part: u8) -> TranslationMap {
        theorem3_fixtures()[&part][0].clone()
    }

    #[test]
    fn jump_stretches_over_an_expanded_instruction() {
        let psi = part_map(1);
        let x = parse_sequence("#2 ; -f.tc ; !").unwrap();
        let y = rewrite_psi_prime(&x, &psi).unwrap();
        assert_eq!(y.to_string(), "#3 ; f.cc ; #2 ; !");
        assert!(feqv(&x, &y, &[analysis_focus()]).unwrap());
    }

    #[test]
    fn identity_inside_the_target_alphabet() {
        let psi = part_map(2);
        let x = parse_sequence("+f.ii ; #2 ; f.cc ; -f.tt ; !").unwrap();
        assert_eq!(rewrite_psi_prime(&x, &psi).unwrap(), x);
    }

    #[test]
    fn fixture_maps_are_identity_on_their_codomain() {
        for part in [1u8, 2, 4, 5] {
            for map in &theorem3_fixtures()[&part] {
                assert!(map.is_identity_on_codomain(), "part {part}");
            }
        }
    }

    #[test]
    fn skip_into_long_image_breaks_equivalence() {
        // `+f.fi` always skips, so in `x` control passes straight to
        // the halt with the register untouched. Its image `#2` also
        // moves two positions, but that now lands in the middle of the
        // three-instruction image of `-f.cf`, which zeroes the
        // register before halting. No choice of jump labels can fix
        // this: the skip distance of a test is not rewritable.
        let psi = part_map(2);
        let x = parse_sequence("+f.fi ; -f.cf ; !").unwrap();
        let y = rewrite_psi_prime(&x, &psi).unwrap();
        assert_eq!(y.to_string(), "#2 ; +f.ii ; +f.ff ; +f.ff ; !");
        assert!(!feqv(&x, &y, &[analysis_focus()]).unwrap());
    }

    #[test]
    fn map_round_trips_through_json() {
        let psi = part_map(4);
        let text = serde_json::to_string(&psi).unwrap();
        let back: TranslationMap = serde_json::from_str(&text).unwrap();
        assert_eq!(psi, back);
    }

    #[test]
    fn missing_entry_is_reported() {
        let methods = MethodSet::parse_codes("cc").unwrap();
        let partial = TranslationMap { methods, entries: BTreeMap::new() };
        let x = parse_sequence("f.ff").unwrap();
        assert!(matches!(
            rewrite_psi_prime(&x, &partial),
            Err(RewriteError::MissingMapping(_))
        ));
    }
}
