//! The verified translation tables behind the strict bounds for the six
//! named method sets. Each fixture is one listed witness; the tables
//! assemble them into total translation maps, one per listed
//! alternative column.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::isa::{parse_sequence, Method, MethodSet, PrimitiveInstruction, TestKind};

use super::{analysis_focus, realizes, target_of, TranslationMap};

/// One listed witness: part number, identifying label, the instruction
/// it translates, and the replacement sequence.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub part: u8,
    pub id: &'static str,
    pub kind: TestKind,
    pub method: &'static str,
    pub seq: &'static str,
}

use TestKind::{NegTest, Plain, PosTest};

const fn fx(
    part: u8,
    id: &'static str,
    kind: TestKind,
    method: &'static str,
    seq: &'static str,
) -> Fixture {
    Fixture { part, id, kind, method, seq }
}

/// Every listed witness, including all alternatives.
pub const FIXTURES: [Fixture; 61] = [
    fx(1, "a", NegTest, "ti", "#2"),
    fx(1, "b", NegTest, "tc", "f.cc ; #2"),
    fx(2, "c1", PosTest, "if", "+f.ii ; +f.ff ; +f.ff"),
    fx(2, "c2", PosTest, "if", "-f.cc ; +f.ff ; +f.ff"),
    fx(2, "c3", PosTest, "if", "+f.ii ; +f.cc ; #2"),
    fx(2, "c4", PosTest, "if", "-f.cc ; #2 ; +f.cc"),
    fx(2, "d1", NegTest, "if", "-f.ii ; +f.ff ; +f.ff"),
    fx(2, "d2", NegTest, "if", "+f.cc ; +f.ff ; +f.ff"),
    fx(2, "d3", NegTest, "if", "-f.ii ; #2 ; +f.cc"),
    fx(2, "d4", NegTest, "if", "+f.cc ; +f.cc ; #2"),
    fx(2, "e1", PosTest, "it", "+f.ii ; -f.tt ; -f.tt"),
    fx(2, "e2", PosTest, "it", "-f.cc ; -f.tt ; -f.tt"),
    fx(2, "e3", PosTest, "it", "+f.ii ; #2 ; -f.cc"),
    fx(2, "e4", PosTest, "it", "-f.cc ; -f.cc ; #2"),
    fx(2, "f1", NegTest, "it", "-f.ii ; -f.tt ; -f.tt"),
    fx(2, "f2", NegTest, "it", "+f.cc ; -f.tt ; -f.tt"),
    fx(2, "f3", NegTest, "it", "-f.ii ; -f.cc ; #2"),
    fx(2, "f4", NegTest, "it", "+f.cc ; #2 ; -f.cc"),
    fx(3, "g", Plain, "cc", "+f.ii ; +f.ff ; f.tt"),
    fx(3, "h", PosTest, "cc", "-f.ii ; -f.tt ; +f.ff"),
    fx(3, "i", NegTest, "cc", "+f.ii ; +f.ff ; -f.tt"),
    fx(3, "j", NegTest, "tc", "+f.ii ; +f.ff ; f.tt ; #2"),
    fx(4, "k", Plain, "ff", "+f.cc ; f.cc"),
    fx(4, "l", PosTest, "ff", "+f.cc ; f.cc ; #2"),
    fx(4, "m", Plain, "tt", "-f.cc ; f.cc"),
    fx(4, "n", NegTest, "tt", "-f.cc ; f.cc ; #2"),
    fx(4, "o", Plain, "ii", "f.cc ; f.cc"),
    fx(4, "p", PosTest, "ii", "f.cc ; +f.cc"),
    fx(4, "q", NegTest, "ii", "f.cc ; -f.cc"),
    fx(5, "r", Plain, "ff", "f.if"),
    fx(5, "s", PosTest, "ff", "f.if ; #2"),
    fx(5, "t", Plain, "tt", "f.it"),
    fx(5, "u", NegTest, "tt", "f.it ; #2"),
    fx(5, "v1", Plain, "ii", "+f.if ; +f.it ; -f.if"),
    fx(5, "v2", Plain, "ii", "+f.it ; -f.it ; +f.if"),
    fx(5, "v3", Plain, "ii", "+f.if ; +f.it ; #1"),
    fx(5, "v4", Plain, "ii", "+f.it ; #2 ; +f.if"),
    fx(5, "w1", PosTest, "ii", "+f.if ; +f.it ; +f.if"),
    fx(5, "w2", PosTest, "ii", "+f.it ; -f.it ; -f.if"),
    fx(5, "w3", PosTest, "ii", "+f.if ; +f.it ; #2"),
    fx(5, "w4", PosTest, "ii", "+f.it ; #2 ; -f.if"),
    fx(5, "x1", NegTest, "ii", "-f.if ; +f.if ; +f.it"),
    fx(5, "x2", NegTest, "ii", "-f.it ; -f.if ; -f.it"),
    fx(5, "x3", NegTest, "ii", "-f.if ; #2 ; +f.it"),
    fx(5, "x4", NegTest, "ii", "-f.it ; -f.if ; #2"),
    fx(5, "y1", Plain, "cc", "+f.if ; +f.if ; -f.it"),
    fx(5, "y2", Plain, "cc", "+f.it ; -f.if ; +f.it"),
    fx(5, "y3", Plain, "cc", "+f.if ; #2 ; -f.it"),
    fx(5, "y4", Plain, "cc", "+f.it ; -f.if ; #1"),
    fx(5, "z1", PosTest, "cc", "-f.if ; +f.it ; +f.if"),
    fx(5, "z2", PosTest, "cc", "-f.it ; -f.it ; -f.if"),
    fx(5, "z3", PosTest, "cc", "-f.if ; +f.it ; #2"),
    fx(5, "z4", PosTest, "cc", "-f.it ; #2 ; -f.if"),
    fx(5, "aa1", NegTest, "cc", "+f.if ; +f.if ; +f.it"),
    fx(5, "aa2", NegTest, "cc", "+f.it ; -f.if ; -f.it"),
    fx(5, "aa3", NegTest, "cc", "+f.if ; #2 ; +f.it"),
    fx(5, "aa4", NegTest, "cc", "+f.it ; -f.if ; #2"),
    fx(5, "ab1", NegTest, "tc", "+f.if ; +f.if ; -f.it ; #2"),
    fx(5, "ab2", NegTest, "tc", "+f.it ; -f.if ; +f.it ; #2"),
    fx(5, "ab3", NegTest, "tc", "+f.if ; #2 ; -f.it ; #2"),
    fx(5, "ab4", NegTest, "tc", "+f.it ; -f.if ; #1 ; #2"),
];

/// Method set each part translates into.
pub fn part_methods(part: u8) -> MethodSet {
    let codes = match part {
        1 => "ff,tt,ii,cc,if,it",
        2 => "ff,tt,ii,cc",
        3 => "ff,tt,ii",
        4 => "cc",
        5 => "if,it",
        _ => panic!("parts are 1..=5"),
    };
    MethodSet::parse_codes(codes).unwrap()
}

/// Size bound each part attests.
pub fn part_bound(part: u8) -> usize {
    match part {
        1 => 2,
        2 | 4 => 3,
        3 | 5 => 4,
        _ => panic!("parts are 1..=5"),
    }
}

fn lookup(id: &str) -> Fixture {
    *FIXTURES.iter().find(|f| f.id == id).unwrap_or_else(|| panic!("no fixture {id}"))
}

fn build_map(part: u8, ids: &[&str]) -> TranslationMap {
    let listed: Vec<(TestKind, Method, &'static str)> = ids
        .iter()
        .map(|id| {
            let f = lookup(id);
            (f.kind, Method::from_code(f.method).unwrap(), f.seq)
        })
        .collect();
    TranslationMap::build(part_methods(part), &listed)
        .unwrap_or_else(|e| panic!("part {part} map {ids:?}: {e}"))
}

/// The listed translation maps, one per alternative column of each
/// part. Parts 1 and 4 list a single map, part 3 lists two (the first
/// and third columns of the shared alternatives), parts 2 and 5 list
/// four.
pub fn theorem3_fixtures() -> BTreeMap<u8, Vec<TranslationMap>> {
    let mut out = BTreeMap::new();
    out.insert(1, vec![build_map(1, &["a", "b"])]);
    out.insert(
        2,
        (1..=4)
            .map(|i| {
                let ids: Vec<String> =
                    ["c", "d", "e", "f"].iter().map(|s| format!("{s}{i}")).collect();
                let mut refs: Vec<&str> = vec!["a", "b"];
                refs.extend(ids.iter().map(String::as_str));
                build_map(2, &refs)
            })
            .collect(),
    );
    out.insert(
        3,
        [1usize, 3]
            .iter()
            .map(|i| {
                let ids: Vec<String> =
                    ["c", "d", "e", "f"].iter().map(|s| format!("{s}{i}")).collect();
                let mut refs: Vec<&str> = vec!["a", "g", "h", "i", "j"];
                refs.extend(ids.iter().map(String::as_str));
                build_map(3, &refs)
            })
            .collect(),
    );
    out.insert(
        4,
        vec![build_map(4, &["a", "b", "c4", "d4", "e4", "f4", "k", "l", "m", "n", "o", "p", "q"])],
    );
    out.insert(
        5,
        (1..=4)
            .map(|i| {
                let ids: Vec<String> = ["v", "w", "x", "y", "z", "aa", "ab"]
                    .iter()
                    .map(|s| format!("{s}{i}"))
                    .collect();
                let mut refs: Vec<&str> = vec!["a", "r", "s", "t", "u"];
                refs.extend(ids.iter().map(String::as_str));
                build_map(5, &refs)
            })
            .collect(),
    );
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("fixture {id}: {problem}")]
pub struct FixtureInvalid {
    pub id: &'static str,
    pub problem: String,
}

/// Checks every listed witness: it must have its key instruction's
/// effect and respect its part's size bound.
pub fn verify_fixtures() -> Result<(), FixtureInvalid> {
    let focus = analysis_focus();
    for f in FIXTURES {
        let fail = |problem: String| FixtureInvalid { id: f.id, problem };
        let method = Method::from_code(f.method)
            .ok_or_else(|| fail(format!("bad method code {}", f.method)))?;
        let key = PrimitiveInstruction::basic(f.kind, focus.clone(), method);
        let seq = parse_sequence(f.seq).map_err(|e| fail(e.to_string()))?;
        if seq.len() > part_bound(f.part) {
            return Err(fail(format!(
                "length {} exceeds part bound {}",
                seq.len(),
                part_bound(f.part)
            )));
        }
        let t = target_of(&key, &focus).map_err(|e| fail(e.to_string()))?;
        if !realizes(&seq, &t, &focus).map_err(|e| fail(e.to_string()))? {
            return Err(fail(format!("{} does not realize {}", seq, key)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_verify() {
        verify_fixtures().unwrap();
    }

    #[test]
    fn map_counts_per_part() {
        let maps = theorem3_fixtures();
        let counts: Vec<usize> = (1..=5).map(|p| maps[&p].len()).collect();
        assert_eq!(counts, vec![1, 4, 2, 1, 4]);
    }

    #[test]
    fn map_image_lengths_respect_part_bounds() {
        for (part, maps) in theorem3_fixtures() {
            for map in maps {
                assert!(map.max_image_len() <= part_bound(part), "part {part}");
            }
        }
    }
}
