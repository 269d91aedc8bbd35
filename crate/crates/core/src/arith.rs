//! Multiplication of reduced words.
//!
//! A reduced word splits into an optional type I prefix `a^i b^m` and an
//! optional type II suffix `a^n b^j`. Products are assembled from three
//! primitive products on these fragments, each followed by at most one
//! application of `a b^(μ+1) = b^μ` or `a^(ν+1) b = a^ν`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::word::{ExtNat, FreeWord, Letter, Params, ReducedWord, WordType};

/// Type I fragment `a^i b^m` with `m > i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prefix {
    pub i: u64,
    pub m: u64,
}

/// Type II fragment `a^n b^j` with `n ≥ j`; `(1, 1)` is the improper `ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Suffix {
    pub n: u64,
    pub j: u64,
}

impl Suffix {
    pub fn is_improper(&self) -> bool {
        self.n == 1 && self.j == 1
    }
}

/// Result of a suffix-times-prefix product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    Prefix(Prefix),
    Suffix(Suffix),
}

impl ReducedWord {
    /// The type I component, if any.
    pub fn prefix(&self) -> Option<Prefix> {
        match self.classify() {
            WordType::I | WordType::III => Some(Prefix {
                i: self.i(),
                m: self.m(),
            }),
            _ => None,
        }
    }

    /// The type II component, if any (the whole word for type II).
    pub fn suffix(&self) -> Option<Suffix> {
        match self.classify() {
            WordType::I => None,
            _ => Some(Suffix {
                n: self.n(),
                j: self.j(),
            }),
        }
    }
}

/// Applies `a b^k = b^(k-1)` when `k > μ`. One application always suffices.
fn rewrite_prefix(p: Params, i: u64, m: u64) -> Prefix {
    if i == 1 && p.mu().exceeded_by(m) {
        let out = Prefix { i: 0, m: m - 1 };
        debug_assert!(out.m > 0);
        out
    } else {
        Prefix { i, m }
    }
}

/// Applies `a^k b = a^(k-1)` when `k > ν`. One application always suffices.
fn rewrite_suffix(p: Params, n: u64, j: u64) -> Suffix {
    if j == 1 && p.nu().exceeded_by(n) {
        let out = Suffix { n: n - 1, j: 0 };
        debug_assert!(out.n > 0);
        out
    } else {
        Suffix { n, j }
    }
}

/// `(a^i b^m)(a^i' b^m') = a^i b^(m+m'-i')`.
pub fn mul_prefixes(p: Params, x: Prefix, y: Prefix) -> Prefix {
    rewrite_prefix(p, x.i, x.m + y.m - y.i)
}

/// `(a^n b^j)(a^n' b^j') = a^(n+n'-j) b^j'`.
pub fn mul_suffixes(p: Params, x: Suffix, y: Suffix) -> Suffix {
    rewrite_suffix(p, x.n + y.n - x.j, y.j)
}

/// `(a^n b^j)(a^i b^m)` is `a b^(d1-d2+1)` when `d1 = m-i > d2 = n-j`,
/// otherwise `a^(d2-d1+1) b` (the improper `ab` when `d1 = d2`).
pub fn mul_suffix_prefix(p: Params, y: Suffix, x: Prefix) -> Fragment {
    let d1 = x.m - x.i;
    let d2 = y.n - y.j;
    if d1 > d2 {
        Fragment::Prefix(rewrite_prefix(p, 1, d1 - d2 + 1))
    } else {
        Fragment::Suffix(rewrite_suffix(p, d2 - d1 + 1, 1))
    }
}

fn attach(prefix: Option<Prefix>, suffix: Option<Suffix>) -> ReducedWord {
    match (prefix, suffix) {
        (Some(x), None) => ReducedWord::raw(x.i, x.m, 0, 0),
        (Some(x), Some(y)) if y.is_improper() => ReducedWord::raw(x.i, x.m, 0, 0),
        (Some(x), Some(y)) => ReducedWord::raw(x.i, x.m, y.n, y.j),
        (None, Some(y)) => ReducedWord::raw(0, 0, y.n, y.j),
        (None, None) => unreachable!("every reduced word has a prefix or a suffix"),
    }
}

/// The product `xy` in `O(ν,μ)(a,b)`.
pub fn multiply(x: ReducedWord, y: ReducedWord, p: Params) -> ReducedWord {
    let (p1, q1) = (x.prefix(), x.suffix());
    let (p2, q2) = (y.prefix(), y.suffix());
    let middle = match (q1, p2) {
        (None, None) => None,
        (Some(q), None) => Some(Fragment::Suffix(q)),
        (None, Some(r)) => Some(Fragment::Prefix(r)),
        (Some(q), Some(r)) => Some(mul_suffix_prefix(p, q, r)),
    };
    let out = match middle {
        None => attach(p1, q2),
        Some(Fragment::Prefix(z)) => {
            let left = p1.map_or(z, |x1| mul_prefixes(p, x1, z));
            attach(Some(left), q2)
        }
        Some(Fragment::Suffix(z)) => {
            let right = q2.map_or(z, |y2| mul_suffixes(p, z, y2));
            attach(p1, Some(right))
        }
    };
    debug_assert!(out.is_valid(p), "{x} * {y} = {out:?} is not reduced under {p}");
    out
}

fn generator_power(letter: Letter, k: u64) -> ReducedWord {
    match letter {
        Letter::A => ReducedWord::a_pow(k),
        Letter::B => ReducedWord::b_pow(k),
    }
}

/// Left fold of `multiply` over the letters of `w`.
///
/// Runs of equal letters are folded as one generator power; the powers
/// `a^k`, `b^k` are reduced words in their own right.
pub fn reduce_word(w: &FreeWord, p: Params) -> ReducedWord {
    let mut runs = w.runs().iter();
    let &(l, k) = runs.next().expect("free words are nonempty");
    runs.fold(generator_power(l, k), |acc, &(l, k)| {
        multiply(acc, generator_power(l, k), p)
    })
}

/// `x^k` for `k ≥ 1`, by repeated squaring.
pub fn power(x: ReducedWord, k: u64, p: Params) -> Result<ReducedWord> {
    if k == 0 {
        return Err(Error::InvalidArgument("power exponent must be at least 1".into()));
    }
    let mut base = x;
    let mut k = k;
    let mut acc: Option<ReducedWord> = None;
    while k > 0 {
        if k & 1 == 1 {
            acc = Some(acc.map_or(base, |a| multiply(a, base, p)));
        }
        k >>= 1;
        if k > 0 {
            base = multiply(base, base, p);
        }
    }
    Ok(acc.expect("k >= 1"))
}

pub fn is_idempotent(x: ReducedWord, p: Params) -> bool {
    multiply(x, x, p) == x
}

/// Natural order on idempotents: `e ≤ f` iff `ef = fe = e`.
pub fn natural_le(e: ReducedWord, f: ReducedWord, p: Params) -> Result<bool> {
    for x in [e, f] {
        if !is_idempotent(x, p) {
            return Err(Error::NonIdempotent(x));
        }
    }
    Ok(multiply(e, f, p) == e && multiply(f, e, p) == e)
}

/// `x ⊥ y`: `xyx = x` and `yxy = y`.
pub fn is_inverse_pair(x: ReducedWord, y: ReducedWord, p: Params) -> bool {
    multiply(multiply(x, y, p), x, p) == x && multiply(multiply(y, x, p), y, p) == y
}

/// Inverses of `x` among words whose exponents are all `≤ cap`, in
/// lexicographic order. This is a truncation of the full inverse set.
pub fn inverses_within(x: ReducedWord, p: Params, cap: u64) -> Result<BTreeSet<ReducedWord>> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    Ok(ReducedWord::window(p, cap)
        .into_iter()
        .filter(|&y| is_inverse_pair(x, y, p))
        .collect())
}

/// `1` for idempotents, infinity otherwise (the semigroup is combinatorial
/// and its nonidempotents have infinite order).
pub fn order_of(x: ReducedWord, p: Params) -> ExtNat {
    if is_idempotent(x, p) {
        ExtNat::Fin(1)
    } else {
        ExtNat::Inf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{params, parse_word};

    fn w(s: &str, p: Params) -> ReducedWord {
        reduce_word(&parse_word(s).unwrap(), p)
    }

    fn q(i: u64, m: u64, n: u64, j: u64, p: Params) -> ReducedWord {
        ReducedWord::new(i, m, n, j, p).unwrap()
    }

    #[test]
    fn product_formulas() {
        let inf = params("inf", "inf").unwrap();
        let p22 = params("2", "2").unwrap();
        let nu_1 = params("inf", "1").unwrap();

        assert_eq!(multiply(q(0, 2, 0, 0, inf), q(1, 3, 0, 0, inf), inf), q(0, 4, 0, 0, inf));
        assert_eq!(multiply(q(0, 0, 2, 1, inf), q(0, 0, 3, 1, inf), inf), q(0, 0, 4, 1, inf));
        assert_eq!(multiply(ReducedWord::AB, ReducedWord::B, nu_1), ReducedWord::B);
        for p in [inf, p22, nu_1] {
            assert_eq!(multiply(ReducedWord::AB, ReducedWord::AB, p), ReducedWord::AB);
        }
        assert_eq!(multiply(q(0, 0, 2, 0, p22), q(0, 3, 0, 0, p22), p22), q(1, 2, 0, 0, p22));
        assert_eq!(multiply(q(0, 0, 2, 1, inf), q(1, 3, 0, 0, inf), inf), q(1, 2, 0, 0, inf));
        let ba = q(0, 1, 1, 0, p22);
        assert_eq!(multiply(q(0, 1, 2, 1, p22), ba, p22), ba);
        assert!(is_idempotent(ba, p22));
    }

    #[test]
    fn improper_suffix_on_the_right() {
        let p = params("inf", "inf").unwrap();
        // identity on type I words and on words ending in b
        for x in [q(0, 2, 0, 0, p), q(1, 3, 0, 0, p), q(1, 2, 2, 1, p), q(0, 0, 3, 1, p)] {
            assert_eq!(multiply(x, ReducedWord::AB, p), x);
        }
        // a^n (ab) = a^(n+1) b, also inside a type III word
        assert_eq!(multiply(ReducedWord::A, ReducedWord::AB, p), q(0, 0, 2, 1, p));
        assert_eq!(multiply(q(0, 1, 3, 0, p), ReducedWord::AB, p), q(0, 1, 4, 1, p));
        let p2 = params("3", "inf").unwrap();
        assert_eq!(multiply(q(0, 1, 3, 0, p2), ReducedWord::AB, p2), q(0, 1, 3, 0, p2));
    }

    #[test]
    fn reduce_examples() {
        let inf = params("inf", "inf").unwrap();
        assert_eq!(w("aba", inf), ReducedWord::A);
        assert_eq!(w("bab", inf), ReducedWord::B);
        assert_eq!(w("aabb", inf), ReducedWord::AB);
        assert_eq!(w("a^3b", params("2", "inf").unwrap()), q(0, 0, 2, 0, inf));
        assert_eq!(w("a^3b", inf), q(0, 0, 3, 1, inf));
        assert_eq!(w("abb", params("inf", "1").unwrap()), ReducedWord::B);
    }

    #[test]
    fn powers() {
        let inf = params("inf", "inf").unwrap();
        let p22 = params("2", "2").unwrap();
        assert_eq!(power(ReducedWord::A, 3, inf).unwrap(), q(0, 0, 3, 0, inf));
        assert_eq!(power(ReducedWord::AB, 7, p22).unwrap(), ReducedWord::AB);
        assert_eq!(power(q(1, 2, 0, 0, inf), 2, inf).unwrap(), q(1, 3, 0, 0, inf));
        assert!(power(ReducedWord::A, 0, inf).is_err());
        let x = q(1, 2, 3, 0, inf);
        assert_eq!(power(x, 1, inf).unwrap(), x);
        let mut acc = x;
        for k in 2..20 {
            acc = multiply(acc, x, inf);
            assert_eq!(power(x, k, inf).unwrap(), acc);
        }
    }

    #[test]
    fn idempotents_and_order() {
        let inf = params("inf", "inf").unwrap();
        let p22 = params("2", "2").unwrap();
        assert!(is_idempotent(ReducedWord::AB, inf));
        assert!(is_idempotent(q(0, 2, 2, 0, p22), p22));
        assert!(!is_idempotent(ReducedWord::A, inf));

        assert_eq!(order_of(ReducedWord::AB, inf), ExtNat::Fin(1));
        assert_eq!(order_of(ReducedWord::A, inf), ExtNat::Inf);
        assert_eq!(order_of(q(0, 1, 1, 0, p22), p22), ExtNat::Fin(1));
    }

    #[test]
    fn natural_order_examples() {
        let inf = params("inf", "inf").unwrap();
        let p22 = params("2", "2").unwrap();
        assert!(natural_le(q(1, 2, 2, 1, inf), ReducedWord::AB, inf).unwrap());
        assert!(natural_le(ReducedWord::AB, ReducedWord::AB, inf).unwrap());
        let ba = q(0, 1, 1, 0, p22);
        assert!(!natural_le(ba, ReducedWord::AB, p22).unwrap());
        assert!(!natural_le(ReducedWord::AB, ba, p22).unwrap());
        assert_eq!(
            natural_le(ReducedWord::A, ReducedWord::AB, inf),
            Err(Error::NonIdempotent(ReducedWord::A))
        );
    }

    #[test]
    fn inverse_examples() {
        let inf = params("inf", "inf").unwrap();
        assert!(is_inverse_pair(ReducedWord::A, ReducedWord::B, inf));
        assert!(is_inverse_pair(q(0, 0, 2, 1, inf), q(1, 2, 0, 0, inf), inf));
        assert!(!is_inverse_pair(ReducedWord::A, ReducedWord::A, inf));

        assert!(inverses_within(ReducedWord::A, inf, 3).unwrap().contains(&ReducedWord::B));
        assert!(inverses_within(q(0, 1, 2, 0, inf), inf, 4)
            .unwrap()
            .contains(&q(0, 2, 1, 0, inf)));
        assert!(inverses_within(ReducedWord::AB, inf, 2)
            .unwrap()
            .contains(&ReducedWord::AB));
        let inv: Vec<_> = inverses_within(ReducedWord::A, inf, 4).unwrap().into_iter().collect();
        let mut sorted = inv.clone();
        sorted.sort();
        assert_eq!(inv, sorted);
        assert!(inverses_within(ReducedWord::A, inf, 0).is_err());
    }
}
