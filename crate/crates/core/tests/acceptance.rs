//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;

use orthomon::green::{green_keys, in_l_class, in_r_class, l_related, r_related};
use orthomon::oracle::{build_congruence, cross_check, oracle_equal, CongruenceTable, OracleAnswer};
use orthomon::render::{band_hasse, eggbox_grid};
use orthomon::structure::{
    check_intersection_claims, check_piece_complement, closure, decomposition_pieces,
    idempotent_dclass, membership_bound, DClassShape,
};
use orthomon::verify::matrix;
use orthomon::word::params;
use orthomon::{
    is_idempotent, multiply, natural_le, parse_word, reduce_word, Error, ExtNat, FreeWord, Params,
    ReducedWord, WordType,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn elt(text: &str, p: Params) -> ReducedWord {
    reduce_word(&parse_word(text).unwrap(), p)
}

fn set(words: &[&str], p: Params) -> BTreeSet<ReducedWord> {
    words.iter().map(|w| elt(w, p)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn associativity() -> Outcome {
    let mut total = 0u64;
    for p in matrix() {
        let pool = ReducedWord::window(p, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..100_000 {
            let x = *pool.choose(&mut rng).unwrap();
            let y = *pool.choose(&mut rng).unwrap();
            let z = *pool.choose(&mut rng).unwrap();
            let (l, r) = (multiply(multiply(x, y, p), z, p), multiply(x, multiply(y, z, p), p));
            ensure(l == r, || format!("{p}: ({x}{y}){z} = {l} but {x}({y}{z}) = {r}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} triples, 0 failures"))
}

fn oracle_soundness() -> Outcome {
    let words: Vec<FreeWord> = CongruenceTable::words_up_to(7).collect();
    let mut yes = 0u64;
    for p in matrix() {
        for with_idempotents in [false, true] {
            let table = build_congruence(p, 12, with_idempotents).map_err(|e| e.to_string())?;
            let normal: Vec<ReducedWord> = words.iter().map(|w| reduce_word(w, p)).collect();
            for a in 0..words.len() {
                for b in a + 1..words.len() {
                    if oracle_equal(&table, &words[a], &words[b], false).unwrap() == OracleAnswer::Yes {
                        yes += 1;
                        ensure(normal[a] == normal[b], || {
                            format!("{p}: oracle equates {} and {}", words[a], words[b])
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{} words, {yes} oracle-equal pairs, 0 violations", words.len()))
}

fn bicyclic_baseline() -> Outcome {
    let p = params("1", "1").unwrap();
    let table = build_congruence(p, 12, false).map_err(|e| e.to_string())?;
    let report = cross_check(&table, p, 7).map_err(|e| e.to_string())?;
    ensure(report.soundness_violations == 0, || format!("{} soundness violations", report.soundness_violations))?;
    ensure(report.reachability_failures == 0, || {
        format!("{} unreached: {:?}", report.reachability_failures, report.reachability_examples)
    })?;
    for m in 0..=8u64 {
        for n in 0..=8u64 {
            if m + n == 0 {
                continue;
            }
            let mut text = String::new();
            if m > 0 {
                text.push_str(&format!("b^{m}"));
            }
            if n > 0 {
                text.push_str(&format!("a^{n}"));
            }
            let x = elt(&text, p);
            ensure(x.quadruple() == (0, m, n, 0), || format!("{text} reduces to {x}"))?;
        }
    }
    for x in ReducedWord::window(p, 8) {
        ensure(x == ReducedWord::AB || (x.i() == 0 && x.j() == 0), || format!("{x} is not b^m a^n"))?;
    }
    let chain: Vec<ReducedWord> = std::iter::once(ReducedWord::AB)
        .chain((1..=5).map(|k| elt(&format!("b^{k}a^{k}"), p)))
        .collect();
    for w in chain.windows(2) {
        let below = natural_le(w[1], w[0], p).unwrap() && w[0] != w[1];
        ensure(below, || format!("{} is not below {}", w[1], w[0]))?;
    }
    Ok(format!("{} words reached their normal form; chain of 6 idempotents", report.words))
}

fn closure_identities() -> Outcome {
    let p = params("2", "2").unwrap();
    let first = closure(&[elt("ab", p), elt("ba", p)], p, 6).unwrap();
    ensure(first.complete, || "closure of {ab, ba} incomplete".into())?;
    let expected = set(&["ab", "ba", "ab^2a", "ba^2b", "ab^2a^2b"], p);
    ensure(first.elements == expected, || format!("closure of {{ab, ba}} is {:?}", first.elements))?;
    let second = closure(&[elt("ab", p), elt("ab^2a", p)], p, 6).unwrap();
    ensure(second.complete && second.elements.len() == 3, || {
        format!("closure of {{ab, ab^2a}} is {:?}", second.elements)
    })?;
    Ok("5 and 3 elements, both complete".into())
}

fn nontrivial_matrix() -> Vec<Params> {
    matrix().into_iter().filter(|p| p.is_nontrivial()).collect()
}

fn types_by_class() -> Outcome {
    let ab = ReducedWord::AB;
    let mut checked = 0;
    for p in nontrivial_matrix() {
        for x in ReducedWord::window(p, 6) {
            let in_l = l_related(x, ab) && x != ab;
            let in_r = r_related(x, ab);
            let ok = match x.classify() {
                WordType::I => in_l && !in_r,
                WordType::IIProper | WordType::IIImproper => in_r && !in_l,
                WordType::III => !in_l && !in_r,
            };
            ensure(ok, || format!("{p}: {x}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} elements, 0 exceptions"))
}

fn complement_dichotomy() -> Outcome {
    let (a, b) = (ReducedWord::A, ReducedWord::B);
    let mut witnesses = 0;
    let mut sampled = 0;
    for p in matrix() {
        let pool = ReducedWord::window(p, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(205);
        let sides: [(ExtNat, ReducedWord, ReducedWord, Box<dyn Fn(ReducedWord) -> bool>); 2] = [
            (p.mu(), a, ReducedWord::b_pow(2), Box::new(move |x| !in_r_class(x, b))),
            (p.nu(), ReducedWord::a_pow(2), b, Box::new(move |x| !in_l_class(x, a))),
        ];
        for (bound, u, v, outside) in sides {
            if bound == ExtNat::Fin(1) {
                let uv = multiply(u, v, p);
                ensure(outside(u) && outside(v) && !outside(uv), || format!("{p}: {u}·{v} = {uv}"))?;
                witnesses += 1;
            } else {
                let members: Vec<ReducedWord> = pool.iter().copied().filter(|&x| outside(x)).collect();
                for _ in 0..10_000 {
                    let x = *members.choose(&mut rng).unwrap();
                    let y = *members.choose(&mut rng).unwrap();
                    let xy = multiply(x, y, p);
                    ensure(outside(xy), || format!("{p}: {x}·{y} = {xy} falls into the class"))?;
                    sampled += 1;
                }
            }
        }
    }
    Ok(format!("{witnesses} witnesses, {sampled} sampled products closed"))
}

fn band_properties() -> Outcome {
    let mut checked = 0u64;
    for p in matrix() {
        let es: Vec<ReducedWord> = ReducedWord::window(p, 6).into_iter().filter(|&x| is_idempotent(x, p)).collect();
        for &e in &es {
            ensure(natural_le(e, e, p).unwrap(), || format!("{p}: {e} not reflexive"))?;
            for &f in &es {
                let ef = multiply(e, f, p);
                ensure(is_idempotent(ef, p), || format!("{p}: {e}{f} not idempotent"))?;
                let le = natural_le(e, f, p).unwrap();
                if e != f {
                    ensure(!(le && natural_le(f, e, p).unwrap()), || format!("{p}: {e}, {f} antisymmetry"))?;
                }
                for &g in &es {
                    let efge = multiply(multiply(ef, g, p), e, p);
                    let egfe = multiply(multiply(multiply(e, g, p), f, p), e, p);
                    ensure(efge == egfe, || format!("{p}: {e}{f}{g}{e} ≠ {e}{g}{f}{e}"))?;
                    if le && natural_le(f, g, p).unwrap() {
                        ensure(natural_le(e, g, p).unwrap(), || format!("{p}: {e} ≤ {f} ≤ {g}"))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    let p = params("2", "2").unwrap();
    let expected = set(&["ab^2a^2b", "ab^2a", "ba", "ba^2b"], p);
    let (class, shape) = idempotent_dclass(elt("ba", p), p).unwrap();
    ensure(class == expected && shape == DClassShape::Rect4, || format!("{class:?} {shape}"))?;
    let mut left_zero = true;
    let mut right_zero = true;
    for &e in &class {
        for &f in &class {
            let ef = multiply(e, f, p);
            ensure(multiply(ef, e, p) == e, || format!("{e}{f}{e} ≠ {e}"))?;
            left_zero &= ef == e;
            right_zero &= ef == f;
        }
    }
    ensure(!left_zero && !right_zero, || "the four-element class is singular".into())?;
    Ok(format!("{checked} idempotent triples; four-element class is a nonsingular rectangular band"))
}

fn piece_complement() -> Outcome {
    let mut checked = 0;
    for (nu, mu) in [("2", "2"), ("3", "2"), ("2", "3"), ("3", "3"), ("2", "1"), ("1", "2")] {
        let report = check_piece_complement(params(nu, mu).unwrap(), 5).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("({nu}, {mu}): {:?}", report.violations))?;
        checked += report.checked;
    }
    Ok(format!("{checked} elements, 0 violations"))
}

fn decomposition_coverage() -> Outcome {
    let mut covered = 0;
    let mut claims = 0;
    for p in nontrivial_matrix().into_iter().chain([params("3", "3").unwrap()]) {
        for x in ReducedWord::window(p, 5) {
            let tags = decomposition_pieces(x, p, membership_bound(x)).map_err(|e| e.to_string())?;
            ensure(!tags.is_empty(), || format!("{p}: {x} in no piece"))?;
            covered += 1;
        }
        match check_intersection_claims(p, 5) {
            Ok(report) => {
                ensure(report.passed(), || format!("{p}: {:?}", report.violations))?;
                ensure(!report.not_machine_checked.is_empty(), || format!("{p}: maximality not reported"))?;
                claims += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("{covered} elements covered; {claims} parameter pairs with intersection claims"))
}

const GOLDEN_TSV: &str = include_str!("golden/eggbox_inf_inf_5x5.tsv");

fn golden_renders() -> Outcome {
    let grid = eggbox_grid(params("inf", "inf").unwrap(), 5, 5).unwrap();
    ensure(grid.to_tsv() == GOLDEN_TSV, || format!("TSV differs:\n{}", grid.to_tsv()))?;
    let p = params("2", "1").unwrap();
    let diagram = band_hasse(p, 4).unwrap();
    let nodes: BTreeSet<ReducedWord> = diagram.nodes.iter().copied().collect();
    let expected = set(&["ab", "ba^2b", "ba", "b^2a^2", "b^3a^3", "b^4a^4"], p);
    ensure(nodes == expected, || format!("band nodes {nodes:?}"))?;
    let dot = diagram.to_dot();
    for edge in ["\"b^2a^2\" -- \"b^3a^3\" [style=bold];", "\"b^3a^3\" -- \"b^4a^4\" [style=bold];"] {
        ensure(dot.contains(edge), || format!("missing {edge}"))?;
    }
    Ok("TSV identical; 6 band nodes with chain b^2a^2 > b^3a^3 > b^4a^4".into())
}

fn h_trivial_infinite_order() -> Outcome {
    for p in matrix() {
        let window = ReducedWord::window(p, 6);
        for &x in &window {
            for &y in &window {
                if r_related(x, y) && l_related(x, y) {
                    ensure(x == y, || format!("{p}: {x} H {y}"))?;
                }
            }
        }
        let keys: BTreeSet<_> = window.iter().map(|&x| green_keys(x)).collect();
        ensure(keys.len() == window.len(), || format!("{p}: repeated keys"))?;
        let powers: BTreeSet<ReducedWord> = (1..=50).map(ReducedWord::a_pow).collect();
        let mut acc = ReducedWord::A;
        let mut computed = BTreeSet::new();
        for _ in 1..=50 {
            computed.insert(acc);
            acc = multiply(acc, ReducedWord::A, p);
        }
        ensure(computed == powers && computed.len() == 50, || format!("{p}: powers of a repeat"))?;
    }
    Ok("H trivial on every window; a, ..., a^50 distinct".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("associativity fuzz", associativity),
        ("oracle soundness sweep", oracle_soundness),
        ("bicyclic baseline", bicyclic_baseline),
        ("finite closure identities", closure_identities),
        ("word types against R_ab and L_ab", types_by_class),
        ("complement dichotomy", complement_dichotomy),
        ("band properties", band_properties),
        ("B(a^2b,ab^2) as a complement", piece_complement),
        ("decomposition coverage and intersections", decomposition_coverage),
        ("golden renders", golden_renders),
        ("H-triviality and infinite order", h_trivial_infinite_order),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
