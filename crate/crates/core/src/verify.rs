//! Verification suites run over a window of elements for one parameter pair.
//!
//! Each suite either passes, fails with a list of counterexamples, or is
//! skipped because its statement does not apply to the parameters.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{
    inverses_within, is_idempotent, is_inverse_pair, multiply, natural_le, order_of, power,
    reduce_word,
};
use crate::error::{Error, Result};
use crate::green::{cell, green_keys, in_l_class, in_r_class, l_related, r_related};
use crate::oracle::{build_congruence, cross_check, CongruenceTable};
use crate::structure::{
    check_intersection_claims, check_piece_complement, closure, decomposition,
    decomposition_pieces, elt, idempotent_dclass, membership_bound, Bicyclic, DClassShape,
};
use crate::word::{parse_word, ExtNat, Params, ReducedWord, WordType};

/// The parameter pairs every suite is run against by `verify all`.
pub const MATRIX: [(ExtNat, ExtNat); 9] = [
    (ExtNat::Inf, ExtNat::Inf),
    (ExtNat::Fin(2), ExtNat::Inf),
    (ExtNat::Inf, ExtNat::Fin(3)),
    (ExtNat::Fin(2), ExtNat::Fin(2)),
    (ExtNat::Fin(3), ExtNat::Fin(2)),
    (ExtNat::Fin(2), ExtNat::Fin(3)),
    (ExtNat::Fin(1), ExtNat::Fin(2)),
    (ExtNat::Fin(2), ExtNat::Fin(1)),
    (ExtNat::Fin(1), ExtNat::Fin(1)),
];

pub fn matrix() -> Vec<Params> {
    MATRIX
        .iter()
        .map(|&(nu, mu)| Params::new(nu, mu).expect("matrix entries are valid"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Associativity on random triples, distinct powers, print/parse round trip.
    Assoc,
    /// Orthodoxy, partial order, inverses, regularity, band D-class shapes.
    Band,
    /// H-triviality, R/L witnesses, every row meets every column.
    Green,
    /// Word type against membership in `R_ab` and `L_ab`.
    Types,
    /// `R_ab`, `L_ab` and their complements are closed.
    Principal,
    /// `S \ R_b` is closed iff `μ > 1`, dually `S \ L_a` iff `ν > 1`.
    Complement,
    /// The band is normal and each principal order ideal is a chain.
    Normal,
    /// The named bicyclic pieces, their identities and band D-classes.
    Bicyclic,
    /// Decomposition coverage and the intersection claims.
    Pieces,
    /// `B(a²b, ab²)` is the complement of the low rows and columns.
    Identity,
    /// The multiplication engine against the congruence-closure oracle.
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Assoc,
        Suite::Band,
        Suite::Green,
        Suite::Types,
        Suite::Principal,
        Suite::Complement,
        Suite::Normal,
        Suite::Bicyclic,
        Suite::Pieces,
        Suite::Identity,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Assoc => "assoc",
            Suite::Band => "band",
            Suite::Green => "green",
            Suite::Types => "types",
            Suite::Principal => "principal",
            Suite::Complement => "complement",
            Suite::Normal => "normal",
            Suite::Bicyclic => "bicyclic",
            Suite::Pieces => "pieces",
            Suite::Identity => "identity",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random triples for associativity.
    pub triples: usize,
    /// Random pairs for the closure checks.
    pub pairs: usize,
    /// Exponent bound of the exhaustive window.
    pub window: u64,
    pub oracle_bound: usize,
    pub oracle_len: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            triples: 100_000,
            pairs: 10_000,
            window: 6,
            oracle_bound: 12,
            oracle_len: 7,
            cache_dir: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub params: Params,
    pub status: Status,
    pub checked: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

const FAILURE_LIMIT: usize = 20;

impl SuiteReport {
    fn new(suite: Suite, params: Params) -> Self {
        SuiteReport {
            suite,
            params,
            status: Status::Passed,
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn skipped(suite: Suite, params: Params, why: &str) -> Self {
        let mut r = SuiteReport::new(suite, params);
        r.status = Status::Skipped;
        r.notes.push(why.to_string());
        r
    }

    /// Records one check; `detail` is only rendered on failure.
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            self.status = Status::Failed;
            if self.failures.len() < FAILURE_LIMIT {
                self.failures.push(detail());
            }
        }
    }

    fn absorb(&mut self, r: crate::structure::Report) {
        self.checked += r.checked as u64;
        for v in r.violations {
            self.check(false, || v);
        }
        self.notes.extend(r.not_machine_checked);
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Failed
    }
}

fn rng_for(seed: u64, suite: Suite, p: Params) -> ChaCha8Rng {
    let tag = format!("{suite}{p}");
    let mixed = tag
        .bytes()
        .fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(mixed)
}

fn idempotents(p: Params, window: u64) -> Vec<ReducedWord> {
    ReducedWord::window(p, window)
        .into_iter()
        .filter(|&x| is_idempotent(x, p))
        .collect()
}

pub fn run_suite(suite: Suite, p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Assoc => assoc(p, cfg),
        Suite::Band => band(p, cfg),
        Suite::Green => green(p, cfg),
        Suite::Types => types(p, cfg),
        Suite::Principal => principal(p, cfg),
        Suite::Complement => complement(p, cfg),
        Suite::Normal => normal(p, cfg),
        Suite::Bicyclic => bicyclic(p, cfg),
        Suite::Pieces => pieces(p, cfg),
        Suite::Identity => identity(p, cfg),
        Suite::Oracle => oracle(p, cfg),
    }
}

/// Runs each suite over each parameter pair, in that order.
pub fn run_all(suites: &[Suite], params: &[Params], cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    for &suite in suites {
        for &p in params {
            out.push(run_suite(suite, p, cfg)?);
        }
    }
    Ok(out)
}

fn assoc(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Assoc, p);
    let mut rng = rng_for(cfg.seed, Suite::Assoc, p);
    let pool = ReducedWord::window(p, 12);
    for _ in 0..cfg.triples {
        let (x, y, z) = (
            *pool.choose(&mut rng).expect("nonempty"),
            *pool.choose(&mut rng).expect("nonempty"),
            *pool.choose(&mut rng).expect("nonempty"),
        );
        let left = multiply(multiply(x, y, p), z, p);
        let right = multiply(x, multiply(y, z, p), p);
        r.check(left == right, || format!("({x}·{y})·{z} = {left} but {x}·({y}·{z}) = {right}"));
    }

    let mut bases = vec![ReducedWord::A, ReducedWord::B];
    let others: Vec<ReducedWord> = ReducedWord::window(p, cfg.window)
        .into_iter()
        .filter(|&x| !is_idempotent(x, p))
        .collect();
    bases.extend(others.choose_multiple(&mut rng, 20));
    for x in bases {
        let mut seen = BTreeSet::new();
        let mut acc = x;
        for _ in 1..=50 {
            seen.insert(acc);
            acc = multiply(acc, x, p);
        }
        r.check(seen.len() == 50, || format!("powers of {x} repeat below 50"));
        r.check(order_of(x, p) == ExtNat::Inf, || format!("{x} reported with finite order"));
    }

    for x in ReducedWord::window(p, cfg.window.max(8)) {
        let back = reduce_word(&parse_word(&x.to_string())?, p);
        r.check(back == x, || format!("{x} prints and parses back as {back}"));
        let again = reduce_word(&x.expand(), p);
        r.check(again == x, || format!("{x} expands and reduces to {again}"));
    }
    Ok(r)
}

fn band(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Band, p);
    let es = idempotents(p, cfg.window);
    for &e in &es {
        for &f in &es {
            let ef = multiply(e, f, p);
            r.check(is_idempotent(ef, p), || format!("{e}·{f} = {ef} is not idempotent"));
        }
    }

    let n = es.len();
    let mut le = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            le[a][b] = natural_le(es[a], es[b], p)?;
        }
    }
    for a in 0..n {
        r.check(le[a][a], || format!("{} ≰ itself", es[a]));
        for b in 0..n {
            if a != b {
                r.check(!(le[a][b] && le[b][a]), || {
                    format!("{} and {} are mutually below each other", es[a], es[b])
                });
            }
            for c in 0..n {
                if le[a][b] && le[b][c] {
                    r.check(le[a][c], || format!("{} ≤ {} ≤ {} breaks transitivity", es[a], es[b], es[c]));
                }
            }
        }
    }

    let small = ReducedWord::window(p, cfg.window.min(4));
    for &x in &small {
        for &y in &small {
            let xy = is_inverse_pair(x, y, p);
            r.check(xy == is_inverse_pair(y, x, p), || format!("{x} ⊥ {y} is not symmetric"));
            if xy {
                for k in 2..=6 {
                    let (xk, yk) = (power(x, k, p)?, power(y, k, p)?);
                    r.check(is_inverse_pair(xk, yk, p), || format!("{x}^{k} and {y}^{k} are not inverse"));
                }
            }
        }
    }
    for x in ReducedWord::window(p, cfg.window) {
        let found = inverses_within(x, p, x.max_exponent() + 2)?;
        r.check(!found.is_empty(), || format!("no inverse of {x} with exponents ≤ {}", x.max_exponent() + 2));
    }

    for &e in es.iter().filter(|e| e.max_exponent() + 2 <= cfg.window) {
        let (class, shape) = idempotent_dclass(e, p)?;
        let members: Vec<ReducedWord> = class.iter().copied().collect();
        let mut left_zero = true;
        let mut right_zero = true;
        for &x in &members {
            for &y in &members {
                let xy = multiply(x, y, p);
                r.check(multiply(xy, x, p) == x, || format!("D-class of {e}: {x}{y}{x} ≠ {x}"));
                left_zero &= xy == x;
                right_zero &= xy == y;
            }
        }
        let shape_ok = match shape {
            DClassShape::Singleton => members.len() == 1,
            DClassShape::Right2 => members.len() == 2 && right_zero,
            DClassShape::Left2 => members.len() == 2 && left_zero,
            DClassShape::Rect4 => members.len() == 4 && !left_zero && !right_zero,
        };
        r.check(shape_ok, || format!("D-class of {e} does not have shape {shape}"));
    }

    if p.is_bicyclic() {
        let chain: Vec<ReducedWord> = std::iter::once(ReducedWord::AB)
            .chain((1..=5).map(|k| elt(&format!("b^{k}a^{k}"), p)))
            .collect();
        for pair in chain.windows(2) {
            let below = natural_le(pair[1], pair[0], p)? && pair[0] != pair[1];
            r.check(below, || format!("{} is not strictly below {}", pair[1], pair[0]));
        }
        for x in ReducedWord::window(p, cfg.window) {
            let shape = x == ReducedWord::AB || (x.i() == 0 && x.j() == 0);
            r.check(shape, || format!("{x} is not of the form b^m a^n"));
        }
        for &e in &es {
            for &f in &es {
                r.check(natural_le(e, f, p)? || natural_le(f, e, p)?, || {
                    format!("idempotents {e} and {f} are incomparable")
                });
            }
        }
    }
    Ok(r)
}

fn green(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Green, p);
    let window = ReducedWord::window(p, cfg.window);
    let mut by_keys = HashMap::new();
    for &x in &window {
        if let Some(y) = by_keys.insert(green_keys(x), x) {
            r.check(false, || format!("{x} and {y} are H-related"));
        } else {
            r.check(true, String::new);
        }
    }

    let small = ReducedWord::window(p, cfg.window.min(4));
    let search = ReducedWord::window(p, 8);
    let right_witness = |x: ReducedWord, y: ReducedWord| search.iter().any(|&u| multiply(x, u, p) == y);
    let left_witness = |x: ReducedWord, y: ReducedWord| search.iter().any(|&u| multiply(u, x, p) == y);
    for &x in &small {
        for &y in &small {
            if x < y && r_related(x, y) {
                r.check(right_witness(x, y) && right_witness(y, x), || {
                    format!("no right multipliers between R-related {x} and {y}")
                });
            }
            if x < y && l_related(x, y) {
                r.check(left_witness(x, y) && left_witness(y, x), || {
                    format!("no left multipliers between L-related {x} and {y}")
                });
            }
        }
    }

    let rows: BTreeSet<_> = window.iter().map(|&x| green_keys(x).0).collect();
    let cols: BTreeSet<_> = window.iter().map(|&x| green_keys(x).1).collect();
    for &row in &rows {
        for &col in &cols {
            let x = cell(row, col);
            r.check(x.is_valid(p) && green_keys(x) == (row, col), || {
                format!("cell {row:?} × {col:?} holds {x} with other keys")
            });
        }
    }
    Ok(r)
}

fn nontrivial_or_skip(suite: Suite, p: Params) -> Option<SuiteReport> {
    (!p.is_nontrivial()).then(|| SuiteReport::skipped(suite, p, "needs μ > 1 or ν > 1"))
}

fn types(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    if let Some(r) = nontrivial_or_skip(Suite::Types, p) {
        return Ok(r);
    }
    let mut r = SuiteReport::new(Suite::Types, p);
    let ab = ReducedWord::AB;
    for x in ReducedWord::window(p, cfg.window) {
        let in_l = l_related(x, ab) && x != ab;
        let in_r = r_related(x, ab);
        let ok = match x.classify() {
            WordType::I => in_l && !in_r,
            WordType::IIProper | WordType::IIImproper => in_r && !in_l,
            WordType::III => !in_l && !in_r,
        };
        r.check(ok, || format!("{x} of type {} has L_ab: {in_l}, R_ab: {in_r}", x.classify().tag()));
    }
    Ok(r)
}

fn closed_under_products(
    r: &mut SuiteReport,
    rng: &mut ChaCha8Rng,
    p: Params,
    pool: &[ReducedWord],
    pairs: usize,
    name: &str,
    inside: impl Fn(ReducedWord) -> bool,
) {
    let members: Vec<ReducedWord> = pool.iter().copied().filter(|&x| inside(x)).collect();
    if members.is_empty() {
        r.notes.push(format!("{name} meets no window element"));
        return;
    }
    for _ in 0..pairs {
        let x = *members.choose(rng).expect("nonempty");
        let y = *members.choose(rng).expect("nonempty");
        let xy = multiply(x, y, p);
        r.check(inside(xy), || format!("{x}·{y} = {xy} leaves {name}"));
    }
}

fn principal(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Principal, p);
    let mut rng = rng_for(cfg.seed, Suite::Principal, p);
    let pool = ReducedWord::window(p, cfg.window);
    let ab = ReducedWord::AB;
    closed_under_products(&mut r, &mut rng, p, &pool, cfg.pairs, "R_ab", |x| r_related(x, ab));
    closed_under_products(&mut r, &mut rng, p, &pool, cfg.pairs, "L_ab", |x| l_related(x, ab));
    closed_under_products(&mut r, &mut rng, p, &pool, cfg.pairs, "S \\ R_ab", |x| !r_related(x, ab));
    closed_under_products(&mut r, &mut rng, p, &pool, cfg.pairs, "S \\ L_ab", |x| !l_related(x, ab));
    Ok(r)
}

fn complement(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Complement, p);
    let mut rng = rng_for(cfg.seed, Suite::Complement, p);
    let pool = ReducedWord::window(p, cfg.window);
    let (a, b) = (ReducedWord::A, ReducedWord::B);

    let outside_rb = |x: ReducedWord| !in_r_class(x, b);
    if p.mu() == ExtNat::Fin(1) {
        let b2 = ReducedWord::b_pow(2);
        let prod = multiply(a, b2, p);
        r.check(outside_rb(a) && outside_rb(b2) && !outside_rb(prod), || {
            format!("a·b^2 = {prod} does not witness that S \\ R_b is open")
        });
    } else {
        closed_under_products(&mut r, &mut rng, p, &pool, cfg.pairs, "S \\ R_b", outside_rb);
    }

    let outside_la = |x: ReducedWord| !in_l_class(x, a);
    if p.nu() == ExtNat::Fin(1) {
        let a2 = ReducedWord::a_pow(2);
        let prod = multiply(a2, b, p);
        r.check(outside_la(a2) && outside_la(b) && !outside_la(prod), || {
            format!("a^2·b = {prod} does not witness that S \\ L_a is open")
        });
    } else {
        closed_under_products(&mut r, &mut rng, p, &pool, cfg.pairs, "S \\ L_a", outside_la);
    }
    Ok(r)
}

fn normal(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Normal, p);
    let es = idempotents(p, cfg.window);
    for &e in &es {
        for &f in &es {
            let ef = multiply(e, f, p);
            for &g in &es {
                let left = multiply(multiply(ef, g, p), e, p);
                let right = multiply(multiply(multiply(e, g, p), f, p), e, p);
                r.check(left == right, || format!("{e}{f}{g}{e} = {left} but {e}{g}{f}{e} = {right}"));
            }
        }
    }
    for &e in &es {
        let below: Vec<ReducedWord> = es
            .iter()
            .copied()
            .filter(|&f| natural_le(f, e, p).unwrap_or(false))
            .collect();
        for &f in &below {
            for &g in &below {
                r.check(natural_le(f, g, p)? || natural_le(g, f, p)?, || {
                    format!("{f} and {g} below {e} are incomparable")
                });
            }
        }
    }
    Ok(r)
}

fn set(words: &[String], p: Params) -> BTreeSet<ReducedWord> {
    words.iter().map(|w| elt(w, p)).collect()
}

fn bicyclic(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    if let Some(r) = nontrivial_or_skip(Suite::Bicyclic, p) {
        return Ok(r);
    }
    let mut r = SuiteReport::new(Suite::Bicyclic, p);
    let named = [
        ("a^2b", "ab^2", "ab"),
        ("ab^2a^2", "ab^3a", "ab^2a"),
        ("ba^2", "b^2a", "ba"),
        ("ba^3b", "b^2a^2b", "ba^2b"),
    ];
    for (qs, rs, ids) in named {
        let (q, rr, id) = (elt(qs, p), elt(rs, p), elt(ids, p));
        r.check(is_inverse_pair(q, rr, p), || format!("{q} and {rr} are not mutually inverse"));
        let piece = match Bicyclic::new(q, rr, p) {
            Ok(piece) => piece,
            Err(_) => {
                r.check(false, || format!("B({q},{rr}) fails the bicyclic presentation"));
                continue;
            }
        };
        r.check(piece.identity(p) == id, || format!("identity of B({q},{rr}) is not {id}"));
        let cap = cfg.window.max(q.max_exponent()).max(rr.max_exponent());
        for x in closure(&[q, rr], p, cap)?.elements {
            r.check(piece.contains(x, p), || format!("{x} generated by {q}, {rr} has no coordinates"));
        }
        let next = piece.element(1, 1, p);
        r.check(next != id && natural_le(next, id, p)?, || {
            format!("{next} is not strictly below the identity of B({q},{rr})")
        });
    }

    let min_exp = p.nu().min(p.mu());
    if min_exp > ExtNat::Fin(1) {
        for k in (2..=cfg.window).take_while(|&k| ExtNat::Fin(k - 1) < min_exp) {
            let words = [
                format!("ab^{k}a^{k}b"),
                format!("ab^{k}a^{}", k - 1),
                format!("b^{}a^{}", k - 1, k - 1),
                format!("b^{}a^{k}b", k - 1),
            ];
            let expected = set(&words, p);
            let (class, shape) = idempotent_dclass(elt(&words[0], p), p)?;
            r.check(class == expected && shape == DClassShape::Rect4, || {
                format!("D-class of ab^{k}a^{k}b is {class:?} ({shape})")
            });
            let generated = closure(&[elt(&words[0], p), elt(&words[2], p)], p, k + 1)?;
            r.check(generated.elements == expected, || {
                format!("{} and {} generate {:?}", words[0], words[2], generated.elements)
            });
        }
    }
    if p.mu() == ExtNat::Fin(1) {
        r.check(elt("ab^2", p) == elt("b", p), || "ab^2 ≠ b when μ = 1".into());
        r.check(
            (elt("ba^2", p), elt("b^2a", p)) == (elt("ab^2a^2", p), elt("ab^3a", p)),
            || "B(ba^2,b^2a) and B(ab^2a^2,ab^3a) differ when μ = 1".into(),
        );
        for k in (2..=cfg.window).take_while(|&k| ExtNat::Fin(k - 1) < p.nu()) {
            let words = [format!("b^{}a^{k}b", k - 1), format!("b^{}a^{}", k - 1, k - 1)];
            let (class, shape) = idempotent_dclass(elt(&words[0], p), p)?;
            r.check(class == set(&words, p) && shape == DClassShape::Right2, || {
                format!("D-class of {} is {class:?} ({shape})", words[0])
            });
        }
    }
    if p.nu() == ExtNat::Fin(1) {
        r.check(elt("a^2b", p) == elt("a", p), || "a^2b ≠ a when ν = 1".into());
        r.check(
            (elt("ba^2", p), elt("b^2a", p)) == (elt("ba^3b", p), elt("b^2a^2b", p)),
            || "B(ba^2,b^2a) and B(ba^3b,b^2a^2b) differ when ν = 1".into(),
        );
        for k in (2..=cfg.window).take_while(|&k| ExtNat::Fin(k - 1) < p.mu()) {
            let words = [format!("ab^{k}a^{}", k - 1), format!("b^{}a^{}", k - 1, k - 1)];
            let (class, shape) = idempotent_dclass(elt(&words[0], p), p)?;
            r.check(class == set(&words, p) && shape == DClassShape::Left2, || {
                format!("D-class of {} is {class:?} ({shape})", words[0])
            });
        }
    }
    Ok(r)
}

fn pieces(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    if let Some(r) = nontrivial_or_skip(Suite::Pieces, p) {
        return Ok(r);
    }
    let mut r = SuiteReport::new(Suite::Pieces, p);
    let window = cfg.window.min(5);
    for x in ReducedWord::window(p, window) {
        let tags = decomposition_pieces(x, p, membership_bound(x))?;
        r.check(!tags.is_empty(), || format!("{x} lies in no piece"));
    }

    let identities: Vec<(String, ReducedWord)> = decomposition(p)?
        .into_iter()
        .filter_map(|tag| tag.generators(p))
        .map(|(q, rr)| (format!("B({q},{rr})"), multiply(q, rr, p)))
        .collect();
    for (i, (a, e)) in identities.iter().enumerate() {
        for (b, f) in &identities[i + 1..] {
            let comparable = natural_le(*e, *f, p)? || natural_le(*f, *e, p)?;
            r.check(!comparable, || format!("identities of {a} and {b} are comparable"));
        }
    }
    r.notes
        .push("containment of every bicyclic subsemigroup with a piece's identity in that piece".into());

    match check_intersection_claims(p, window) {
        Ok(report) => r.absorb(report),
        Err(Error::Precondition(why)) => r.notes.push(why),
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn identity(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    if let Some(r) = nontrivial_or_skip(Suite::Identity, p) {
        return Ok(r);
    }
    let mut r = SuiteReport::new(Suite::Identity, p);
    r.absorb(check_piece_complement(p, cfg.window.clamp(4, 5))?);
    Ok(r)
}

fn oracle(p: Params, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Oracle, p);
    // the bicyclic case is checked against the bare presentation
    let with_idempotents = !p.is_bicyclic();
    let table = match &cfg.cache_dir {
        Some(dir) => CongruenceTable::load_or_build(dir, p, cfg.oracle_bound, with_idempotents, false)?,
        None => build_congruence(p, cfg.oracle_bound, with_idempotents)?,
    };
    let report = cross_check(&table, p, cfg.oracle_len)?;
    r.checked += report.yes_pairs;
    for (u, v) in &report.soundness_examples {
        r.check(false, || format!("oracle equates {u} and {v} but their normal forms differ"));
    }
    r.failure_count = r.failure_count.max(report.soundness_violations);
    if report.soundness_violations > 0 {
        r.status = Status::Failed;
    }
    if p.is_bicyclic() {
        for w in &report.reachability_examples {
            r.check(false, || format!("unreached normal form: {w}"));
        }
        r.failure_count = r.failure_count.max(report.soundness_violations + report.reachability_failures);
        if report.reachability_failures > 0 {
            r.status = Status::Failed;
        }
    } else {
        r.notes.push(format!(
            "{} of {} words not joined to their normal form within length {}",
            report.reachability_failures, report.words, cfg.oracle_bound
        ));
    }
    Ok(r)
}
