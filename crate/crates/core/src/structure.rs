//! Generated subsemigroups, bicyclic pieces and the decompositions of
//! `O(ν,μ)(a,b)` into bicyclic subsemigroups and cyclic ones.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::arith::{is_idempotent, multiply, power, reduce_word};
use crate::error::{Error, Result};
use crate::green::{in_l_class, in_r_class, l_key, r_key};
use crate::word::{parse_word, ExtNat, Params, ReducedWord, WordType};

/// Reduces a caret-notation word; panics on malformed input, so only for literals.
pub(crate) fn elt(text: &str, p: Params) -> ReducedWord {
    reduce_word(&parse_word(text).expect("literal word"), p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub elements: BTreeSet<ReducedWord>,
    pub complete: bool,
    pub cap: u64,
}

/// Breadth-first closure of `gens` under multiplication. Products with an
/// exponent above `cap` are dropped and mark the result incomplete.
pub fn closure(gens: &[ReducedWord], p: Params, cap: u64) -> Result<ClosureResult> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("closure needs at least one generator".into()));
    }
    if let Some(g) = gens.iter().find(|g| g.max_exponent() > cap) {
        return Err(Error::InvalidArgument(format!(
            "generator {g} has an exponent above the cap {cap}"
        )));
    }
    let mut elements = BTreeSet::new();
    let mut queue: VecDeque<ReducedWord> = VecDeque::new();
    let mut complete = true;
    for &g in gens {
        if elements.insert(g) {
            queue.push_back(g);
        }
    }
    while let Some(x) = queue.pop_front() {
        let snapshot: Vec<ReducedWord> = elements.iter().copied().collect();
        for y in snapshot {
            for z in [multiply(x, y, p), multiply(y, x, p)] {
                if z.max_exponent() > cap {
                    complete = false;
                } else if elements.insert(z) {
                    queue.push_back(z);
                }
            }
        }
    }
    Ok(ClosureResult {
        elements,
        complete,
        cap,
    })
}

/// `qrq = q`, `rqr = r`, `q²r = q`, `qr² = r`, with `q` in the role of `a`.
pub fn satisfies_bicyclic_presentation(q: ReducedWord, r: ReducedWord, p: Params) -> bool {
    let qr = multiply(q, r, p);
    let rq = multiply(r, q, p);
    multiply(qr, q, p) == q
        && multiply(rq, r, p) == r
        && multiply(multiply(q, q, p), r, p) == q
        && multiply(q, multiply(r, r, p), p) == r
}

/// A bicyclic subsemigroup `B(q, r)` given by a generating pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bicyclic {
    pub q: ReducedWord,
    pub r: ReducedWord,
}

impl Bicyclic {
    pub fn new(q: ReducedWord, r: ReducedWord, p: Params) -> Result<Self> {
        if !satisfies_bicyclic_presentation(q, r, p) {
            return Err(Error::NotBicyclic { q, r });
        }
        Ok(Bicyclic { q, r })
    }

    pub fn identity(&self, p: Params) -> ReducedWord {
        multiply(self.q, self.r, p)
    }

    /// `r^m q^n`, with `r^0 q^0` the identity `qr`.
    pub fn element(&self, m: u64, n: u64, p: Params) -> ReducedWord {
        match (m, n) {
            (0, 0) => self.identity(p),
            (0, n) => power(self.q, n, p).expect("n >= 1"),
            (m, 0) => power(self.r, m, p).expect("m >= 1"),
            (m, n) => multiply(
                power(self.r, m, p).expect("m >= 1"),
                power(self.q, n, p).expect("n >= 1"),
                p,
            ),
        }
    }

    /// The pair `(m, n)` with `m + n ≤ cap` and `r^m q^n = x`, if any.
    pub fn coords(&self, x: ReducedWord, p: Params, cap: u64) -> Option<(u64, u64)> {
        let r_pows = powers_with_identity(self.r, self.identity(p), p, cap);
        let q_pows = powers_with_identity(self.q, self.identity(p), p, cap);
        for total in 0..=cap {
            for m in 0..=total {
                let n = total - m;
                let z = match (m, n) {
                    (0, 0) => r_pows[0],
                    (0, n) => q_pows[n as usize],
                    (m, 0) => r_pows[m as usize],
                    (m, n) => multiply(r_pows[m as usize], q_pows[n as usize], p),
                };
                if z == x {
                    return Some((m, n));
                }
            }
        }
        None
    }

    /// Membership with the search bound `exponent_sum(x) + 2`.
    pub fn contains(&self, x: ReducedWord, p: Params) -> bool {
        self.coords(x, p, membership_bound(x)).is_some()
    }
}

/// Powers `g^0 = identity, g, g^2, ..., g^cap`.
fn powers_with_identity(g: ReducedWord, identity: ReducedWord, p: Params, cap: u64) -> Vec<ReducedWord> {
    let mut out = Vec::with_capacity(cap as usize + 1);
    out.push(identity);
    let mut acc = g;
    for _ in 1..=cap {
        out.push(acc);
        acc = multiply(acc, g, p);
    }
    out
}

/// Search bound for coordinates in a bicyclic piece. The exponent sum of
/// `r^m q^n` never falls below `m + n - 2` for the pieces used here.
pub fn membership_bound(x: ReducedWord) -> u64 {
    x.exponent_sum() + 2
}

pub fn bicyclic_coords(
    x: ReducedWord,
    q: ReducedWord,
    r: ReducedWord,
    p: Params,
    cap: u64,
) -> Result<Option<(u64, u64)>> {
    Ok(Bicyclic::new(q, r, p)?.coords(x, p, cap))
}

/// The union pieces covering `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[allow(non_camel_case_types)]
pub enum PieceTag {
    /// `B(a²b, ab²)`
    B_A2B_AB2,
    /// `B(ba³b, b²a²b)`
    B_BA3B_B2A2B,
    /// `B(ba², b²a)`
    B_BA2_B2A,
    /// `B(ab²a², ab³a)`
    B_AB2A2_AB3A,
    /// `B(a²b, b)`, the collapsed form of `B(a²b, ab²)` when `μ = 1`
    B_A2B_B,
    /// `B(a, ab²)`, the collapsed form of `B(a²b, ab²)` when `ν = 1`
    B_A_AB2,
    CYC_A,
    CYC_B,
}

impl PieceTag {
    /// Generating pair of a bicyclic piece, `None` for the cyclic ones.
    pub fn generators(self, p: Params) -> Option<(ReducedWord, ReducedWord)> {
        let pair = |q: &str, r: &str| Some((elt(q, p), elt(r, p)));
        match self {
            PieceTag::B_A2B_AB2 => pair("a^2b", "ab^2"),
            PieceTag::B_BA3B_B2A2B => pair("ba^3b", "b^2a^2b"),
            PieceTag::B_BA2_B2A => pair("ba^2", "b^2a"),
            PieceTag::B_AB2A2_AB3A => pair("ab^2a^2", "ab^3a"),
            PieceTag::B_A2B_B => pair("a^2b", "b"),
            PieceTag::B_A_AB2 => pair("a", "ab^2"),
            PieceTag::CYC_A | PieceTag::CYC_B => None,
        }
    }

    pub fn contains(self, x: ReducedWord, p: Params) -> bool {
        match self {
            PieceTag::CYC_A => x.classify() == WordType::IIProper && x.j() == 0,
            PieceTag::CYC_B => x.classify() == WordType::I && x.i() == 0,
            tag => {
                let (q, r) = tag.generators(p).expect("bicyclic piece");
                Bicyclic { q, r }.contains(x, p)
            }
        }
    }
}

impl fmt::Display for PieceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PieceTag::B_A2B_AB2 => "B(a^2b,ab^2)",
            PieceTag::B_BA3B_B2A2B => "B(ba^3b,b^2a^2b)",
            PieceTag::B_BA2_B2A => "B(ba^2,b^2a)",
            PieceTag::B_AB2A2_AB3A => "B(ab^2a^2,ab^3a)",
            PieceTag::B_A2B_B => "B(a^2b,b)",
            PieceTag::B_A_AB2 => "B(a,ab^2)",
            PieceTag::CYC_A => "<a>",
            PieceTag::CYC_B => "<b>",
        };
        f.write_str(s)
    }
}

fn require_nontrivial(p: Params) -> Result<()> {
    if p.is_nontrivial() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{p} needs μ > 1 or ν > 1")))
    }
}

/// The pieces whose union is `S` for these parameters: six in general,
/// three when `μ = 1` or `ν = 1`.
pub fn decomposition(p: Params) -> Result<Vec<PieceTag>> {
    require_nontrivial(p)?;
    use PieceTag::*;
    Ok(if p.mu() == ExtNat::Fin(1) {
        vec![B_A2B_B, B_BA2_B2A, CYC_A]
    } else if p.nu() == ExtNat::Fin(1) {
        vec![B_A_AB2, B_BA2_B2A, CYC_B]
    } else {
        vec![B_A2B_AB2, B_BA3B_B2A2B, B_BA2_B2A, B_AB2A2_AB3A, CYC_A, CYC_B]
    })
}

/// Pieces of the decomposition containing `x`; `cap` bounds the coordinate
/// search and must be at least `exponent_sum(x) + 2`.
pub fn decomposition_pieces(x: ReducedWord, p: Params, cap: u64) -> Result<BTreeSet<PieceTag>> {
    let tags = decomposition(p)?;
    let needed = membership_bound(x);
    if cap < needed {
        return Err(Error::CapTooSmall { x, cap, needed });
    }
    let mut out = BTreeSet::new();
    for tag in tags {
        let hit = match tag.generators(p) {
            Some((q, r)) => Bicyclic::new(q, r, p)?.coords(x, p, cap).is_some(),
            None => tag.contains(x, p),
        };
        if hit {
            out.insert(tag);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DClassShape {
    #[serde(rename = "SINGLETON")]
    Singleton,
    #[serde(rename = "RIGHT2")]
    Right2,
    #[serde(rename = "LEFT2")]
    Left2,
    #[serde(rename = "RECT4")]
    Rect4,
}

impl fmt::Display for DClassShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DClassShape::Singleton => "SINGLETON",
            DClassShape::Right2 => "RIGHT2",
            DClassShape::Left2 => "LEFT2",
            DClassShape::Rect4 => "RECT4",
        })
    }
}

/// `e D f` in the band of idempotents: `efe = e` and `fef = f`.
pub fn band_d_related(e: ReducedWord, f: ReducedWord, p: Params) -> bool {
    multiply(multiply(e, f, p), e, p) == e && multiply(multiply(f, e, p), f, p) == f
}

/// The D-class of `e` in the band of idempotents and its shape. Band
/// D-classes here sit within one exponent of `e`, so a window two larger
/// than `e` holds the whole class.
pub fn idempotent_dclass(e: ReducedWord, p: Params) -> Result<(BTreeSet<ReducedWord>, DClassShape)> {
    if !is_idempotent(e, p) {
        return Err(Error::NonIdempotent(e));
    }
    let class: BTreeSet<ReducedWord> = ReducedWord::window(p, e.max_exponent() + 2)
        .into_iter()
        .filter(|&f| is_idempotent(f, p) && band_d_related(e, f, p))
        .collect();
    let rows = class.iter().map(|&x| r_key(x)).collect::<BTreeSet<_>>().len();
    let cols = class.iter().map(|&x| l_key(x)).collect::<BTreeSet<_>>().len();
    let shape = match (rows, cols) {
        (1, 1) => DClassShape::Singleton,
        (1, 2) => DClassShape::Right2,
        (2, 1) => DClassShape::Left2,
        (2, 2) => DClassShape::Rect4,
        _ => {
            return Err(Error::Precondition(format!(
                "band D-class of {e} is a {rows}x{cols} rectangular band"
            )))
        }
    };
    Ok((class, shape))
}

/// Outcome of a window-scale check of a structural identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Params,
    pub window: u64,
    pub checked: usize,
    pub violations: Vec<String>,
    pub not_machine_checked: Vec<String>,
}

impl Report {
    fn new(check: &str, p: Params, window: u64) -> Self {
        Report {
            check: check.to_string(),
            params: p,
            window,
            checked: 0,
            violations: Vec::new(),
            not_machine_checked: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `B(a²b, ab²)` is everything outside the rows `R_{b^k}`, `1 ≤ k < μ`, and
/// the columns `L_{a^l}`, `1 ≤ l < ν`, checked over every word with
/// exponents `≤ window`.
pub fn check_piece_complement(p: Params, window: u64) -> Result<Report> {
    require_nontrivial(p)?;
    if window < 4 {
        return Err(Error::InvalidArgument("window must be at least 4".into()));
    }
    let piece = Bicyclic::new(elt("a^2b", p), elt("ab^2", p), p)?;
    let below = |bound: ExtNat| -> Vec<u64> {
        // a row R_{b^k} or column L_{a^l} meets the window only for k, l ≤ window
        (1..=window).filter(|&k| ExtNat::Fin(k) < bound).collect()
    };
    let rows = below(p.mu());
    let cols = below(p.nu());
    let mut report = Report::new("piece-complement", p, window);
    for x in ReducedWord::window(p, window) {
        let excluded = rows.iter().any(|&k| in_r_class(x, ReducedWord::b_pow(k)))
            || cols.iter().any(|&l| in_l_class(x, ReducedWord::a_pow(l)));
        let member = piece.contains(x, p);
        report.checked += 1;
        if member == excluded {
            report.violations.push(format!(
                "{x}: in B(a^2b,ab^2) = {member}, in an excluded R/L class = {excluded}"
            ));
        }
    }
    Ok(report)
}

fn fin(v: ExtNat) -> Option<u64> {
    v.as_finite()
}

type Pair = (String, String);

struct Claim {
    pair: Pair,
    within: Vec<PieceTag>,
}

/// Window-scale checks of the intersection claims for the pieces of the
/// decomposition: presentation and containment of the claimed largest
/// bicyclic subsemigroups, and emptiness or nonemptiness of the
/// intersection of the two derived pieces.
pub fn check_intersection_claims(p: Params, window: u64) -> Result<Report> {
    require_nontrivial(p)?;
    use PieceTag::*;
    let (nu, mu) = (p.nu(), p.mu());
    let one = ExtNat::Fin(1);
    let pow_pair = |k: u64| (format!("b^{k}a^{}", k + 1), format!("b^{}a^{k}", k + 1));

    let mut claims: Vec<Claim> = Vec::new();
    // the two derived pieces and, when they meet, the pair generating the
    // largest bicyclic subsemigroup of their intersection
    let mut derived: Option<(Pair, Pair, Option<u64>)> = None;
    let name;
    if nu > mu && mu > one {
        name = "intersection:nu>mu>1";
        let k = fin(mu).expect("μ < ν is finite");
        let first = (format!("b^{k}a^{}b", k + 2), format!("b^{}a^{}b", k + 1, k + 1));
        let second = pow_pair(k);
        claims.push(Claim {
            pair: first.clone(),
            within: vec![B_A2B_AB2, B_BA3B_B2A2B],
        });
        claims.push(Claim {
            pair: second.clone(),
            within: vec![B_AB2A2_AB3A, B_BA2_B2A],
        });
        derived = Some((first, second, fin(nu)));
    } else if mu > nu && nu > one {
        name = "intersection:mu>nu>1";
        let l = fin(nu).expect("ν < μ is finite");
        let first = (format!("ab^{}a^{}", l + 1, l + 1), format!("ab^{}a^{l}", l + 2));
        let second = pow_pair(l);
        claims.push(Claim {
            pair: first.clone(),
            within: vec![B_A2B_AB2, B_AB2A2_AB3A],
        });
        claims.push(Claim {
            pair: second.clone(),
            within: vec![B_BA3B_B2A2B, B_BA2_B2A],
        });
        derived = Some((first, second, fin(mu)));
    } else if nu == mu && nu > one && !nu.is_infinite() {
        name = "intersection:nu=mu";
        let l = fin(nu).expect("finite");
        claims.push(Claim {
            pair: pow_pair(l),
            within: vec![B_A2B_AB2, B_BA3B_B2A2B],
        });
        claims.push(Claim {
            pair: pow_pair(l),
            within: vec![B_AB2A2_AB3A, B_BA2_B2A],
        });
    } else if mu == one && nu > one {
        name = "intersection:mu=1";
        if let Some(l) = fin(nu) {
            claims.push(Claim {
                pair: pow_pair(l),
                within: vec![B_A2B_B, B_BA2_B2A],
            });
        }
    } else if nu == one && mu > one {
        name = "intersection:nu=1";
        if let Some(k) = fin(mu) {
            claims.push(Claim {
                pair: pow_pair(k),
                within: vec![B_A_AB2, B_BA2_B2A],
            });
        }
    } else {
        return Err(Error::Precondition(format!(
            "{p} matches none of ν>μ>1, μ>ν>1, ν=μ finite, μ=1<ν, ν=1<μ"
        )));
    }

    let mut report = Report::new(name, p, window);
    if claims.is_empty() {
        report
            .not_machine_checked
            .push("no intersection claim is made for these parameters".into());
    }
    for claim in &claims {
        let (q, r) = (elt(&claim.pair.0, p), elt(&claim.pair.1, p));
        let name = format!("B({q},{r})");
        report.checked += 1;
        if !satisfies_bicyclic_presentation(q, r, p) {
            report
                .violations
                .push(format!("{name} fails the bicyclic presentation"));
            continue;
        }
        let cap = window.max(q.max_exponent()).max(r.max_exponent());
        let generated = closure(&[q, r], p, cap)?;
        for x in &generated.elements {
            for tag in &claim.within {
                report.checked += 1;
                if !tag.contains(*x, p) {
                    report
                        .violations
                        .push(format!("{x} in {name} but not in {tag}"));
                }
            }
        }
        let within: Vec<String> = claim.within.iter().map(|t| t.to_string()).collect();
        report.not_machine_checked.push(format!(
            "maximality of {name} among bicyclic subsemigroups of {}",
            within.join(" ∩ ")
        ));
    }

    if let Some((first, second, meet)) = derived {
        let first = Bicyclic::new(elt(&first.0, p), elt(&first.1, p), p);
        let second = Bicyclic::new(elt(&second.0, p), elt(&second.1, p), p);
        if let (Ok(first), Ok(second)) = (first, second) {
            let scan = match meet {
                Some(l) => window.max(l + 2),
                None => window,
            };
            let common: Vec<ReducedWord> = ReducedWord::window(p, scan)
                .into_iter()
                .filter(|&x| first.contains(x, p) && second.contains(x, p))
                .collect();
            report.checked += 1;
            match meet {
                None if !common.is_empty() => report.violations.push(format!(
                    "derived pieces should be disjoint but share {}",
                    common[0]
                )),
                Some(_) if common.is_empty() => report
                    .violations
                    .push("derived pieces should intersect but share nothing in the window".into()),
                _ => {}
            }
            if let Some(l) = meet {
                let (q, r) = pow_pair(l);
                let (q, r) = (elt(&q, p), elt(&r, p));
                let name = format!("B({q},{r})");
                report.checked += 1;
                if !satisfies_bicyclic_presentation(q, r, p) {
                    report
                        .violations
                        .push(format!("{name} fails the bicyclic presentation"));
                } else {
                    let cap = window.max(q.max_exponent()).max(r.max_exponent());
                    for x in closure(&[q, r], p, cap)?.elements {
                        report.checked += 1;
                        if !(first.contains(x, p) && second.contains(x, p)) {
                            report.violations.push(format!(
                                "{x} in {name} but outside the intersection of the derived pieces"
                            ));
                        }
                    }
                    report.not_machine_checked.push(format!(
                        "maximality of {name} in the intersection of the derived pieces"
                    ));
                }
            }
        }
    }
    Ok(report)
}
