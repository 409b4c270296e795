//! Bundled reference designs and arrays.

use crate::constructions::{parse_array, ArrayFile};
use crate::design::{parse_design, ResolvableDesign};

/// The Schur-optimal ECD(4) in `D(9,4;6,3)`, in the design file format.
pub const ECD4_TEXT: &str = include_str!("../fixtures/ecd4_9_4.txt");

/// A design in `D(9,5;5,4)`; its first four replicates form an ECD(3).
pub const GROUP_AFFINE_TEXT: &str = include_str!("../fixtures/ga_9_5_1112.txt");

/// The four printed uniform four-group arrays, in the array file format.
pub const GROUPED_ARRAY_TEXTS: [(&str, &str); 4] = [
    ("GBA(9,(1,1,1,2),2;2)", include_str!("../fixtures/gba_9_1112_2.txt")),
    ("GBA(13,(1,1,1,2),2;3)", include_str!("../fixtures/gba_13_1112_3.txt")),
    ("GBA(17,(2,2,2,3),2;4)", include_str!("../fixtures/gba_17_2223_4.txt")),
    ("GBA(21,(2,2,2,3),2;5)", include_str!("../fixtures/gba_21_2223_5.txt")),
];

pub fn ecd4() -> ResolvableDesign {
    parse_design(ECD4_TEXT).expect("bundled ECD(4) design parses")
}

pub fn group_affine_9_5() -> ResolvableDesign {
    parse_design(GROUP_AFFINE_TEXT).expect("bundled group-affine design parses")
}

/// `(name, array file)` for each bundled grouped array.
pub fn grouped_arrays() -> Vec<(&'static str, ArrayFile)> {
    GROUPED_ARRAY_TEXTS
        .iter()
        .map(|&(name, text)| (name, parse_array(text).expect("bundled array parses")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::verify_gba;

    #[test]
    fn bundled_files_parse_and_verify() {
        assert_eq!(ecd4().setting().to_string(), "D(9,4;6,3)");
        assert_eq!(group_affine_9_5().setting().to_string(), "D(9,5;5,4)");
        for (name, f) in grouped_arrays() {
            let groups = f.groups.clone().unwrap();
            let c = verify_gba(&f.array, &groups);
            assert!(c.is_gba, "{name}");
            assert_eq!(c.theta, Some(f.theta), "{name}");
        }
    }

    #[test]
    fn grouped_array_headlines() {
        use crate::classify::{all_verdicts, classify_full, headline};
        for (_, f) in grouped_arrays() {
            let d = f.to_design().unwrap();
            let t: Vec<String> = f.groups.unwrap().iter().map(usize::to_string).collect();
            let want = format!("group-affine t=({}); E-Schur-optimal (Theorem 15)", t.join(","));
            assert_eq!(headline(&classify_full(&d), &all_verdicts(&d).unwrap()), want);
        }
    }
}
