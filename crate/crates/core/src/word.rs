//! Parameters, the reduced-word grammar and free words over `{a, b}`.
//!
//! Every element of `O(ν,μ)(a,b)` has a unique reduced form `a^i b^m a^n b^j`
//! of one of three shapes:
//!
//! * type I: `n = j = 0`, `m > i`;
//! * type II: `i = m = 0`, `n ≥ 1`, `n ≥ j` (`n = j = 1` is the improper word `ab`);
//! * type III: `m > i`, `n > j`.
//!
//! The parameter bounds only constrain exponents that sit next to a rewriting
//! context: `m ≤ μ` when `i = 1` and `n ≤ ν` when `j = 1`. Pure powers `a^k`,
//! `b^k` exist for every `k`.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent accepted from user input.
pub const MAX_EXPONENT: u64 = 1 << 32;

/// A positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub fn finite(value: u64) -> Result<Self> {
        if value == 0 {
            return Err(Error::InvalidParam(value.to_string()));
        }
        if value > MAX_EXPONENT {
            return Err(Error::Overflow(value));
        }
        Ok(ExtNat::Fin(value))
    }

    pub fn as_finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(v) => Some(v),
            ExtNat::Inf => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtNat::Inf
    }

    /// `true` when `value` exceeds this bound; never for infinity.
    pub fn exceeded_by(self, value: u64) -> bool {
        matches!(self, ExtNat::Fin(b) if value > b)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "∞" | "infinity" => Ok(ExtNat::Inf),
            _ => {
                let v: i128 = s.parse().map_err(|_| Error::InvalidParam(s.to_string()))?;
                if v <= 0 {
                    return Err(Error::InvalidParam(s.to_string()));
                }
                ExtNat::finite(u64::try_from(v).map_err(|_| Error::Overflow(u64::MAX))?)
            }
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(v) => serializer.serialize_u64(*v),
            ExtNat::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExtNatVisitor;

        impl Visitor<'_> for ExtNatVisitor {
            type Value = ExtNat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtNat, E> {
                ExtNat::finite(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtNat, E> {
                if v <= 0 {
                    return Err(E::custom(Error::InvalidParam(v.to_string())));
                }
                ExtNat::finite(v as u64).map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtNat, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExtNatVisitor)
    }
}

/// The pair `(ν, μ)` selecting `O(ν,μ)(a,b)`.
///
/// `nu` is the least `n` with `a^(n+1) b = a^n`, `mu` the least `m` with
/// `a b^(m+1) = b^m`. `(1, 1)` is the bicyclic semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    nu: ExtNat,
    mu: ExtNat,
}

impl Params {
    pub fn new(nu: ExtNat, mu: ExtNat) -> Result<Self> {
        for v in [nu, mu] {
            if let ExtNat::Fin(k) = v {
                ExtNat::finite(k)?;
            }
        }
        Ok(Params { nu, mu })
    }

    pub fn nu(&self) -> ExtNat {
        self.nu
    }

    pub fn mu(&self) -> ExtNat {
        self.mu
    }

    pub fn is_bicyclic(&self) -> bool {
        self.nu == ExtNat::Fin(1) && self.mu == ExtNat::Fin(1)
    }

    /// `μ > 1 or ν > 1`, required by the structural checks.
    pub fn is_nontrivial(&self) -> bool {
        self.nu > ExtNat::Fin(1) || self.mu > ExtNat::Fin(1)
    }

    /// Parameters of the opposite semigroup, read with the generators swapped.
    pub fn dual(&self) -> Params {
        Params {
            nu: self.mu,
            mu: self.nu,
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.nu, self.mu)
    }
}

/// Shorthand used throughout the tests: `params("2", "inf")`.
pub fn params(nu: &str, mu: &str) -> Result<Params> {
    Params::new(nu.parse()?, mu.parse()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordType {
    I,
    IIProper,
    IIImproper,
    III,
}

impl WordType {
    pub fn tag(self) -> &'static str {
        match self {
            WordType::I => "I",
            WordType::IIProper => "II",
            WordType::IIImproper => "II*",
            WordType::III => "III",
        }
    }

    pub fn is_type_ii(self) -> bool {
        matches!(self, WordType::IIProper | WordType::IIImproper)
    }
}

impl fmt::Display for WordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The reduced word `a^i b^m a^n b^j` naming one element.
///
/// Field order gives the derived `Ord` the lexicographic order on `(i, m, n, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    i: u64,
    m: u64,
    n: u64,
    j: u64,
}

impl ReducedWord {
    pub const A: ReducedWord = ReducedWord::raw(0, 0, 1, 0);
    pub const B: ReducedWord = ReducedWord::raw(0, 1, 0, 0);
    pub const AB: ReducedWord = ReducedWord::raw(0, 0, 1, 1);

    /// Builds a word without checking any invariant.
    pub(crate) const fn raw(i: u64, m: u64, n: u64, j: u64) -> Self {
        ReducedWord { i, m, n, j }
    }

    /// Validates `(i, m, n, j)` against the shape rules and the bounds of `p`.
    pub fn new(i: u64, m: u64, n: u64, j: u64, p: Params) -> Result<Self> {
        for v in [m, n] {
            if v > MAX_EXPONENT {
                return Err(Error::Overflow(v));
            }
        }
        if i > 1 || j > 1 || shape_of(i, m, n, j).is_none() {
            return Err(Error::Shape { i, m, n, j });
        }
        if i == 1 && p.mu.exceeded_by(m) {
            return Err(Error::Bound {
                i,
                m,
                n,
                j,
                reason: "a b^m with m > μ",
            });
        }
        if j == 1 && p.nu.exceeded_by(n) {
            return Err(Error::Bound {
                i,
                m,
                n,
                j,
                reason: "a^n b with n > ν",
            });
        }
        Ok(ReducedWord { i, m, n, j })
    }

    pub fn a_pow(k: u64) -> Self {
        assert!(k >= 1, "a^0 is not an element");
        ReducedWord::raw(0, 0, k, 0)
    }

    pub fn b_pow(k: u64) -> Self {
        assert!(k >= 1, "b^0 is not an element");
        ReducedWord::raw(0, k, 0, 0)
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn quadruple(&self) -> (u64, u64, u64, u64) {
        (self.i, self.m, self.n, self.j)
    }

    pub fn classify(&self) -> WordType {
        shape_of(self.i, self.m, self.n, self.j).expect("reduced word has a valid shape")
    }

    pub fn max_exponent(&self) -> u64 {
        self.i.max(self.m).max(self.n).max(self.j)
    }

    pub fn exponent_sum(&self) -> u64 {
        self.i + self.m + self.n + self.j
    }

    /// Checks the invariants again under `p`.
    pub fn is_valid(&self, p: Params) -> bool {
        ReducedWord::new(self.i, self.m, self.n, self.j, p).is_ok()
    }

    /// The literal letter sequence.
    pub fn expand(&self) -> FreeWord {
        let mut w = FreeWord::default();
        w.push(Letter::A, self.i);
        w.push(Letter::B, self.m);
        w.push(Letter::A, self.n);
        w.push(Letter::B, self.j);
        w
    }

    /// Every valid reduced word under `p` whose exponents are all `≤ cap`,
    /// in lexicographic order.
    pub fn window(p: Params, cap: u64) -> Vec<ReducedWord> {
        let mut out = Vec::new();
        for i in 0..=1 {
            for m in 0..=cap {
                for n in 0..=cap {
                    for j in 0..=1 {
                        if let Ok(w) = ReducedWord::new(i, m, n, j, p) {
                            out.push(w);
                        }
                    }
                }
            }
        }
        out
    }
}

fn shape_of(i: u64, m: u64, n: u64, j: u64) -> Option<WordType> {
    if i > 1 || j > 1 {
        return None;
    }
    if n == 0 && j == 0 && m > i {
        Some(WordType::I)
    } else if i == 0 && m == 0 && n >= 1 && n >= j {
        if n == 1 && j == 1 {
            Some(WordType::IIImproper)
        } else {
            Some(WordType::IIProper)
        }
    } else if m > i && n > j {
        Some(WordType::III)
    } else {
        None
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, letter: char, k: u64) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => write!(f, "{letter}"),
        _ => write!(f, "{letter}^{k}"),
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_power(f, 'a', self.i)?;
        write_power(f, 'b', self.m)?;
        write_power(f, 'a', self.n)?;
        write_power(f, 'b', self.j)
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ReducedWord", 6)?;
        s.serialize_field("i", &self.i)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("j", &self.j)?;
        s.serialize_field("type", self.classify().tag())?;
        s.serialize_field("display", &self.to_string())?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A nonempty word over `{a, b}`, stored run-length encoded.
///
/// Runs are kept maximal so structural equality is equality of letter sequences.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    runs: Vec<(Letter, u64)>,
}

impl FreeWord {
    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Parse {
                input: String::new(),
                reason: "empty word".into(),
            });
        }
        let mut w = FreeWord::default();
        for &l in letters {
            w.push(l, 1);
        }
        Ok(w)
    }

    fn push(&mut self, letter: Letter, count: u64) {
        if count == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((l, c)) if *l == letter => *c += count,
            _ => self.runs.push((letter, count)),
        }
    }

    pub fn runs(&self) -> &[(Letter, u64)] {
        &self.runs
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs
            .iter()
            .flat_map(|&(l, c)| std::iter::repeat_n(l, c as usize))
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(l, c) in &other.runs {
            w.push(l, c);
        }
        w
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Parses `(("a"|"b")("^" [1-9][0-9]*)?)+`, ignoring whitespace.
pub fn parse_word(text: &str) -> Result<FreeWord> {
    let err = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty word"));
    }
    let mut w = FreeWord::default();
    let mut pos = 0;
    while pos < chars.len() {
        let letter = match chars[pos] {
            'a' => Letter::A,
            'b' => Letter::B,
            c => return Err(err(&format!("illegal character {c:?}"))),
        };
        pos += 1;
        let mut count = 1u64;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            if digits.is_empty() {
                return Err(err("missing exponent after '^'"));
            }
            if digits.bytes().all(|d| d == b'0') {
                return Err(err("zero exponent"));
            }
            if digits.starts_with('0') {
                return Err(err("exponent has a leading zero"));
            }
            count = digits
                .parse()
                .ok()
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or_else(|| err("exponent exceeds 2^32"))?;
        }
        w.push(letter, count);
    }
    Ok(w)
}
