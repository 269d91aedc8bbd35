//! Bounded congruence closure of free words under the defining relations.
//!
//! This is an equality oracle that never consults the multiplication engine:
//! two words share a class only if a chain of relation substitutions (inside
//! words of length at most `L`) connects them. Equal classes therefore imply
//! equal elements; distinct classes prove nothing unless the caller assumes
//! the bounded closure is complete.
//!
//! Words of length `1..=L` are indexed in shortlex order (`a < b`): a word of
//! length `k` with letters read as bits (`a = 0`, `b = 1`, first letter most
//! significant) has index `2^k - 2 + bits`. A class id is the index of the
//! shortlex-least word in the class.
//!
//! Cache files are JSON:
//!
//! ```text
//! {"nu": 2 | "inf", "mu": 2 | "inf", "L": 12, "idem": false, "version": 1,
//!  "classes": [class id of word 0, class id of word 1, ...]}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arith::reduce_word;
use crate::error::{Error, Result};
use crate::word::{ExtNat, FreeWord, Letter, Params};

pub const MIN_BOUND: usize = 4;
pub const MAX_BOUND: usize = 16;
pub const CACHE_VERSION: u32 = 1;

/// A word of length `len ≤ 16` packed into bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Packed {
    len: usize,
    bits: u32,
}

impl Packed {
    fn index(self) -> usize {
        (1usize << self.len) - 2 + self.bits as usize
    }

    fn from_index(idx: usize) -> Self {
        let mut len = 1;
        while idx >= (1usize << (len + 1)) - 2 {
            len += 1;
        }
        Packed {
            len,
            bits: (idx - ((1usize << len) - 2)) as u32,
        }
    }

    fn from_word(w: &FreeWord) -> Option<Self> {
        let len = usize::try_from(w.len()).ok()?;
        if len == 0 || len > MAX_BOUND {
            return None;
        }
        let bits = w
            .letters()
            .fold(0u32, |acc, l| (acc << 1) | u32::from(l == Letter::B));
        Some(Packed { len, bits })
    }

    fn to_word(self) -> FreeWord {
        let letters: Vec<Letter> = (0..self.len)
            .map(|k| {
                if (self.bits >> (self.len - 1 - k)) & 1 == 1 {
                    Letter::B
                } else {
                    Letter::A
                }
            })
            .collect();
        FreeWord::from_letters(&letters).expect("len >= 1")
    }

    /// Letters `start..start + len` as a word.
    fn slice(self, start: usize, len: usize) -> Packed {
        let shift = self.len - start - len;
        Packed {
            len,
            bits: (self.bits >> shift) & ((1u32 << len) - 1),
        }
    }

    fn concat(self, other: Packed) -> Packed {
        Packed {
            len: self.len + other.len,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    fn empty() -> Packed {
        Packed { len: 0, bits: 0 }
    }
}

fn word_count(bound: usize) -> usize {
    (1usize << (bound + 1)) - 2
}

fn lit(text: &str) -> FreeWord {
    text.parse().expect("literal word")
}

/// Idempotents drawn in the band diagrams, as literal words of length
/// `≤ max_len`: `ab`, `ab^k a^k b` (`2 ≤ k ≤ min(μ,ν)`), `ab^k a^(k-1)`
/// (`2 ≤ k ≤ μ`), `b^(k-1) a^k b` (`2 ≤ k ≤ ν`) and `b^k a^k` (`k ≥ 1`).
pub fn idempotent_catalogue(p: Params, max_len: usize) -> Vec<FreeWord> {
    let within = |k: u64, bound: ExtNat| ExtNat::Fin(k) <= bound;
    let mut out = vec![lit("ab")];
    for k in 1..=(max_len as u64) {
        if k >= 2 && within(k, p.mu()) && within(k, p.nu()) {
            out.push(lit(&format!("ab^{k}a^{k}b")));
        }
        if k >= 2 && within(k, p.mu()) {
            out.push(lit(&format!("ab^{k}a^{}", k - 1)));
        }
        if k >= 2 && within(k, p.nu()) {
            out.push(lit(&format!("b^{}a^{k}b", k - 1)));
        }
        out.push(lit(&format!("b^{k}a^{k}")));
    }
    out.retain(|w| w.len() as usize <= max_len);
    out
}

/// Unordered defining relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub pairs: Vec<(FreeWord, FreeWord)>,
}

impl RelationSet {
    /// `aba = a`, `bab = b`, `aabb = ab`, plus `a^(ν+1) b = a^ν` and
    /// `a b^(μ+1) = b^μ` for finite parameters. With `with_idempotents`,
    /// adds `ee = e` for catalogued idempotents with `|ee| ≤ bound`.
    pub fn for_params(p: Params, with_idempotents: bool, bound: usize) -> Self {
        let mut pairs = vec![
            (lit("aba"), lit("a")),
            (lit("bab"), lit("b")),
            (lit("aabb"), lit("ab")),
        ];
        if let Some(nu) = p.nu().as_finite() {
            pairs.push((lit(&format!("a^{}b", nu + 1)), lit(&format!("a^{nu}"))));
        }
        if let Some(mu) = p.mu().as_finite() {
            pairs.push((lit(&format!("ab^{}", mu + 1)), lit(&format!("b^{mu}"))));
        }
        if with_idempotents {
            for e in idempotent_catalogue(p, bound / 2) {
                pairs.push((e.concat(&e), e));
            }
        }
        RelationSet { pairs }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Merges two classes keeping the smaller index as root.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleAnswer {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
    #[serde(rename = "NO_OR_UNKNOWN")]
    NoOrUnknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceTable {
    params: Params,
    bound: usize,
    with_idempotents: bool,
    classes: Vec<u32>,
    boundary: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    nu: ExtNat,
    mu: ExtNat,
    #[serde(rename = "L")]
    bound: usize,
    idem: bool,
    version: u32,
    classes: Vec<u32>,
}

/// Closes the relations under substitution inside all words of length
/// `≤ bound`. Each pass rewrites every factor of every word to the least
/// word of its class; passes repeat until nothing merges.
pub fn build_congruence(p: Params, bound: usize, with_idempotents: bool) -> Result<CongruenceTable> {
    if !(MIN_BOUND..=MAX_BOUND).contains(&bound) {
        return Err(Error::InvalidArgument(format!(
            "length bound {bound} outside {MIN_BOUND}..={MAX_BOUND}"
        )));
    }
    let total = word_count(bound);
    let mut uf = UnionFind::new(total);
    for (u, v) in &RelationSet::for_params(p, with_idempotents, bound).pairs {
        if let (Some(u), Some(v)) = (Packed::from_word(u), Packed::from_word(v)) {
            if u.len <= bound && v.len <= bound {
                uf.union(u.index() as u32, v.index() as u32);
            }
        }
    }
    loop {
        let mut merged = false;
        for idx in 0..total {
            let w = Packed::from_index(idx);
            for start in 0..w.len {
                for len in 1..=(w.len - start) {
                    if len == w.len {
                        continue;
                    }
                    let factor = w.slice(start, len);
                    let rep = uf.find(factor.index() as u32);
                    if rep as usize == factor.index() {
                        continue;
                    }
                    let head = if start == 0 {
                        Packed::empty()
                    } else {
                        w.slice(0, start)
                    };
                    let tail_len = w.len - start - len;
                    let tail = if tail_len == 0 {
                        Packed::empty()
                    } else {
                        w.slice(start + len, tail_len)
                    };
                    let rewritten = head
                        .concat(Packed::from_index(rep as usize))
                        .concat(tail);
                    merged |= uf.union(idx as u32, rewritten.index() as u32);
                }
            }
        }
        if !merged {
            break;
        }
    }
    let classes: Vec<u32> = (0..total as u32).map(|x| uf.find(x)).collect();
    Ok(CongruenceTable::from_classes(p, bound, with_idempotents, classes))
}

impl CongruenceTable {
    fn from_classes(params: Params, bound: usize, with_idempotents: bool, classes: Vec<u32>) -> Self {
        let mut boundary = vec![false; classes.len()];
        let first_of_max_len = (1usize << bound) - 2;
        for &c in &classes[first_of_max_len..] {
            boundary[c as usize] = true;
        }
        CongruenceTable {
            params,
            bound,
            with_idempotents,
            classes,
            boundary,
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn with_idempotents(&self) -> bool {
        self.with_idempotents
    }

    fn packed(&self, w: &FreeWord) -> Result<Packed> {
        let len = w.len() as usize;
        if len > self.bound {
            return Err(Error::WordTooLong {
                len,
                bound: self.bound,
            });
        }
        Packed::from_word(w).ok_or(Error::WordTooLong {
            len,
            bound: self.bound,
        })
    }

    pub fn class_of(&self, w: &FreeWord) -> Result<u32> {
        Ok(self.classes[self.packed(w)?.index()])
    }

    /// Shortlex-least word of the class containing `w`.
    pub fn representative(&self, w: &FreeWord) -> Result<FreeWord> {
        Ok(Packed::from_index(self.class_of(w)? as usize).to_word())
    }

    /// Whether the class of `w` contains a word of length exactly `L`.
    pub fn is_boundary_suspect(&self, w: &FreeWord) -> Result<bool> {
        Ok(self.boundary[self.class_of(w)? as usize])
    }

    pub fn class_count(&self) -> usize {
        self.classes
            .iter()
            .enumerate()
            .filter(|&(idx, &c)| idx == c as usize)
            .count()
    }

    /// All words of length `≤ len_bound`, in shortlex order.
    pub fn words_up_to(len_bound: usize) -> impl Iterator<Item = FreeWord> {
        (0..word_count(len_bound)).map(|idx| Packed::from_index(idx).to_word())
    }

    fn cache_path(dir: &Path, p: Params, bound: usize, with_idempotents: bool) -> PathBuf {
        dir.join(format!(
            "congruence-nu{}-mu{}-L{}-idem{}.json",
            p.nu(),
            p.mu(),
            bound,
            u8::from(with_idempotents)
        ))
    }

    pub fn to_json(&self) -> Result<String> {
        let file = CacheFile {
            nu: self.params.nu(),
            mu: self.params.mu(),
            bound: self.bound,
            idem: self.with_idempotents,
            version: CACHE_VERSION,
            classes: self.classes.clone(),
        };
        serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CacheFile = serde_json::from_str(text).map_err(|e| Error::Cache(e.to_string()))?;
        if file.version != CACHE_VERSION {
            return Err(Error::Cache(format!("unsupported version {}", file.version)));
        }
        if !(MIN_BOUND..=MAX_BOUND).contains(&file.bound) || file.classes.len() != word_count(file.bound) {
            return Err(Error::Cache("class vector does not match the length bound".into()));
        }
        if file
            .classes
            .iter()
            .enumerate()
            .any(|(idx, &c)| c as usize > idx || file.classes[c as usize] != c)
        {
            return Err(Error::Cache("class ids are not canonical representatives".into()));
        }
        let p = Params::new(file.nu, file.mu)?;
        Ok(CongruenceTable::from_classes(p, file.bound, file.idem, file.classes))
    }

    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
        let path = Self::cache_path(dir, self.params, self.bound, self.with_idempotents);
        fs::write(&path, self.to_json()?).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(path)
    }

    /// Loads the cached table for these settings, building (and caching)
    /// it when absent, stale or `rebuild` is set.
    pub fn load_or_build(
        dir: &Path,
        p: Params,
        bound: usize,
        with_idempotents: bool,
        rebuild: bool,
    ) -> Result<Self> {
        let path = Self::cache_path(dir, p, bound, with_idempotents);
        if !rebuild {
            if let Ok(text) = fs::read_to_string(&path) {
                if let Ok(table) = Self::from_json(&text) {
                    if table.params == p && table.bound == bound && table.with_idempotents == with_idempotents {
                        return Ok(table);
                    }
                }
            }
        }
        let table = build_congruence(p, bound, with_idempotents)?;
        table.save(dir)?;
        Ok(table)
    }
}

/// `Yes` iff the words share a class. Distinct classes give `NoOrUnknown`,
/// or `No` when `assume_complete` is set and neither class touches length `L`.
pub fn oracle_equal(
    t: &CongruenceTable,
    w1: &FreeWord,
    w2: &FreeWord,
    assume_complete: bool,
) -> Result<OracleAnswer> {
    let (c1, c2) = (t.class_of(w1)?, t.class_of(w2)?);
    if c1 == c2 {
        return Ok(OracleAnswer::Yes);
    }
    if assume_complete && !t.boundary[c1 as usize] && !t.boundary[c2 as usize] {
        return Ok(OracleAnswer::No);
    }
    Ok(OracleAnswer::NoOrUnknown)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub params: Params,
    #[serde(rename = "L")]
    pub bound: usize,
    pub len_bound: usize,
    pub words: usize,
    pub yes_pairs: u64,
    pub soundness_violations: u64,
    pub soundness_examples: Vec<(String, String)>,
    pub reachability_failures: u64,
    pub reachability_examples: Vec<String>,
}

const EXAMPLE_LIMIT: usize = 10;

/// Soundness: oracle-equal words must reduce to the same normal form.
/// Reachability: each word should be oracle-equal to the expansion of its
/// normal form; failures here only say the bounded closure fell short.
pub fn cross_check(t: &CongruenceTable, p: Params, len_bound: usize) -> Result<CrossCheckReport> {
    if p != t.params {
        return Err(Error::InvalidArgument(format!(
            "table was built for {} but checked against {p}",
            t.params
        )));
    }
    if len_bound + 4 > t.bound {
        return Err(Error::InvalidArgument(format!(
            "len_bound {len_bound} leaves less than 4 letters of slack below L = {}",
            t.bound
        )));
    }
    let mut by_class: BTreeMap<u32, HashMap<crate::word::ReducedWord, (u64, FreeWord)>> = BTreeMap::new();
    let mut report = CrossCheckReport {
        params: p,
        bound: t.bound,
        len_bound,
        words: 0,
        yes_pairs: 0,
        soundness_violations: 0,
        soundness_examples: Vec::new(),
        reachability_failures: 0,
        reachability_examples: Vec::new(),
    };
    for w in CongruenceTable::words_up_to(len_bound) {
        report.words += 1;
        let normal = reduce_word(&w, p);
        let class = t.class_of(&w)?;
        let entry = by_class.entry(class).or_default().entry(normal).or_insert((0, w.clone()));
        entry.0 += 1;

        let expanded = normal.expand();
        let reached = (expanded.len() as usize) <= t.bound
            && oracle_equal(t, &w, &expanded, false)? == OracleAnswer::Yes;
        if !reached {
            report.reachability_failures += 1;
            if report.reachability_examples.len() < EXAMPLE_LIMIT {
                report.reachability_examples.push(format!("{w} -/-> {normal}"));
            }
        }
    }
    for groups in by_class.values() {
        let total: u64 = groups.values().map(|(c, _)| c).sum();
        let pairs = |k: u64| k * k.saturating_sub(1) / 2;
        let agreeing: u64 = groups.values().map(|(c, _)| pairs(*c)).sum();
        report.yes_pairs += pairs(total);
        report.soundness_violations += pairs(total) - agreeing;
        if groups.len() > 1 && report.soundness_examples.len() < EXAMPLE_LIMIT {
            let mut witnesses = groups.values().map(|(_, w)| w.to_string());
            let first = witnesses.next().expect("nonempty");
            let second = witnesses.next().expect("two groups");
            report.soundness_examples.push((first, second));
        }
    }
    Ok(report)
}
