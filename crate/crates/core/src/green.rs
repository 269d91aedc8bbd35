//! Green's relations via row and column keys of the eggbox picture.
//!
//! Rows (R-classes) are indexed by the type I component, with every type II
//! word in the row of `ab`; columns (L-classes) by the type II component,
//! with every type I word and `ab` itself in the column of `ab`.

use std::fmt;

use crate::arith::{Prefix, Suffix};
use crate::word::{ReducedWord, WordType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RKey {
    Rab,
    Prefix(Prefix),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LKey {
    Lab,
    Suffix(Suffix),
}

impl fmt::Display for RKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RKey::Rab => f.write_str("R_ab"),
            RKey::Prefix(p) => write!(f, "prefix({},{})", p.i, p.m),
        }
    }
}

impl fmt::Display for LKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LKey::Lab => f.write_str("L_ab"),
            LKey::Suffix(s) => write!(f, "suffix({},{})", s.n, s.j),
        }
    }
}

pub fn r_key(x: ReducedWord) -> RKey {
    match x.prefix() {
        Some(p) => RKey::Prefix(p),
        None => RKey::Rab,
    }
}

pub fn l_key(x: ReducedWord) -> LKey {
    match x.classify() {
        WordType::I | WordType::IIImproper => LKey::Lab,
        WordType::IIProper | WordType::III => {
            LKey::Suffix(x.suffix().expect("type II and III words have a suffix"))
        }
    }
}

pub fn green_keys(x: ReducedWord) -> (RKey, LKey) {
    (r_key(x), l_key(x))
}

pub fn r_related(x: ReducedWord, y: ReducedWord) -> bool {
    r_key(x) == r_key(y)
}

pub fn l_related(x: ReducedWord, y: ReducedWord) -> bool {
    l_key(x) == l_key(y)
}

/// H is trivial, so this holds only for `x == y`.
pub fn h_related(x: ReducedWord, y: ReducedWord) -> bool {
    r_related(x, y) && l_related(x, y)
}

/// The semigroup is bisimple.
pub fn d_related(_x: ReducedWord, _y: ReducedWord) -> bool {
    true
}

pub fn in_r_class(x: ReducedWord, base: ReducedWord) -> bool {
    r_related(x, base)
}

pub fn in_l_class(x: ReducedWord, base: ReducedWord) -> bool {
    l_related(x, base)
}

/// The element sitting in the eggbox cell `(row, column)`: the prefix of the
/// row followed by the suffix of the column.
pub fn cell(row: RKey, col: LKey) -> ReducedWord {
    match (row, col) {
        (RKey::Rab, LKey::Lab) => ReducedWord::AB,
        (RKey::Rab, LKey::Suffix(s)) => ReducedWord::raw(0, 0, s.n, s.j),
        (RKey::Prefix(p), LKey::Lab) => ReducedWord::raw(p.i, p.m, 0, 0),
        (RKey::Prefix(p), LKey::Suffix(s)) => ReducedWord::raw(p.i, p.m, s.n, s.j),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::params;

    fn q(i: u64, m: u64, n: u64, j: u64) -> ReducedWord {
        ReducedWord::new(i, m, n, j, params("inf", "inf").unwrap()).unwrap()
    }

    #[test]
    fn key_examples() {
        assert_eq!(
            green_keys(ReducedWord::B),
            (RKey::Prefix(Prefix { i: 0, m: 1 }), LKey::Lab)
        );
        assert_eq!(
            green_keys(q(0, 0, 2, 1)),
            (RKey::Rab, LKey::Suffix(Suffix { n: 2, j: 1 }))
        );
        assert_eq!(
            green_keys(q(1, 2, 1, 0)),
            (
                RKey::Prefix(Prefix { i: 1, m: 2 }),
                LKey::Suffix(Suffix { n: 1, j: 0 })
            )
        );
        assert_eq!(green_keys(ReducedWord::AB), (RKey::Rab, LKey::Lab));
    }

    #[test]
    fn relation_examples() {
        assert!(r_related(ReducedWord::B, q(0, 1, 2, 1)));
        assert!(l_related(ReducedWord::A, q(0, 1, 1, 0)));
        assert!(!h_related(ReducedWord::AB, ReducedWord::B));
        assert!(d_related(ReducedWord::A, q(0, 3, 2, 1)));

        assert!(in_r_class(q(0, 2, 3, 1), q(0, 2, 0, 0)));
        assert!(in_l_class(q(1, 2, 2, 0), q(0, 0, 2, 0)));
        assert!(!in_r_class(ReducedWord::A, ReducedWord::B));
    }

    #[test]
    fn cells_carry_their_keys() {
        let p = params("3", "2").unwrap();
        for x in ReducedWord::window(p, 5) {
            let (r, l) = green_keys(x);
            assert_eq!(cell(r, l), x);
        }
    }
}
