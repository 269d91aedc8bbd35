use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orthomon::green::{d_related, green_keys, h_related, l_related, r_related};
use orthomon::oracle::{cross_check, oracle_equal, CongruenceTable};
use orthomon::render::{band_hasse, eggbox_grid};
use orthomon::structure::{closure, decomposition, decomposition_pieces, membership_bound};
use orthomon::verify::{matrix, run_all, Status, Suite, VerifyConfig};
use orthomon::{
    inverses_within, is_idempotent, multiply, natural_le, order_of, parse_word, power,
    reduce_word, ExtNat, Params, ReducedWord,
};

#[derive(Parser)]
#[command(name = "orthomon", version, about = "Exact arithmetic in the semigroups O(nu,mu)(a,b)")]
struct Cli {
    /// Least n with a^(n+1)b = a^n, or "inf".
    #[arg(long, global = true, default_value = "inf")]
    nu: ExtNat,
    /// Least m with ab^(m+1) = b^m, or "inf".
    #[arg(long, global = true, default_value = "inf")]
    mu: ExtNat,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Where oracle tables are cached.
    #[arg(long, global = true, env = "ORTHOMON_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridFormat {
    Tsv,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BandFormat {
    Dot,
    Ascii,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced form of a word.
    Normalize { word: String },
    /// Product of two or more words.
    Mul {
        #[arg(num_args = 2.., required = true)]
        words: Vec<String>,
    },
    /// Whether two words denote the same element.
    Eq { left: String, right: String },
    /// The k-th power of a word.
    Pow { word: String, k: u64 },
    /// Type, quadruple and order of an element.
    Classify { word: String },
    Idempotent { word: String },
    /// Natural order between two idempotents.
    Leq { e: String, f: String },
    /// Green keys of one element, or the relations between two.
    Green {
        word: String,
        other: Option<String>,
    },
    /// Inverses with exponents up to the cap.
    Inverses {
        word: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Subsemigroup generated by the words, truncated at the cap.
    Closure {
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long, default_value_t = 6)]
        cap: u64,
    },
    /// Pieces of the decomposition, or those containing a word.
    Pieces { word: Option<String> },
    /// Window of the eggbox picture around ab.
    Eggbox {
        #[arg(long, default_value_t = 5)]
        rows: usize,
        #[arg(long, default_value_t = 5)]
        cols: usize,
        #[arg(long, value_enum, default_value_t = GridFormat::Tsv)]
        format: GridFormat,
    },
    /// Idempotents with their order covers and R/L partners.
    Band {
        #[arg(long, default_value_t = 4)]
        depth: u64,
        #[arg(long, value_enum, default_value_t = BandFormat::Dot)]
        format: BandFormat,
    },
    /// Equality by bounded congruence closure, or a sweep against the engine.
    Oracle {
        words: Vec<String>,
        /// Longest word in the table.
        #[arg(long, default_value_t = 12)]
        length: usize,
        /// Add ee = e for the catalogued idempotents.
        #[arg(long)]
        idempotents: bool,
        #[arg(long)]
        rebuild: bool,
        /// Report NO for distinct classes away from the length bound.
        #[arg(long)]
        assume_complete: bool,
        /// Cross-check all words up to this length.
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Run verification suites; "all" runs every suite over the standard matrix.
    Verify {
        #[arg(required = true)]
        suites: Vec<String>,
        /// Exponent bound of exhaustive checks.
        #[arg(long, default_value_t = 6)]
        window: u64,
        /// Random triples for associativity.
        #[arg(long, default_value_t = 100_000)]
        triples: usize,
        /// Random pairs for closure checks.
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        /// Run the named suites over the standard matrix.
        #[arg(long)]
        matrix: bool,
    },
}

struct Ctx {
    p: Params,
    output: Output,
}

impl Ctx {
    fn elt(&self, text: &str) -> Result<ReducedWord> {
        Ok(reduce_word(&parse_word(text)?, self.p))
    }

    fn emit(&self, text: impl AsRef<str>, value: Value) {
        match self.output {
            Output::Text => println!("{}", text.as_ref()),
            Output::Json => println!("{value}"),
        }
    }
}

fn list(xs: impl IntoIterator<Item = ReducedWord>) -> (String, Value) {
    let xs: Vec<ReducedWord> = xs.into_iter().collect();
    let text = xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    (text, json!(xs))
}

fn run(cli: Cli) -> Result<bool> {
    let p = Params::new(cli.nu, cli.mu)?;
    let ctx = Ctx { p, output: cli.output };
    match cli.command {
        Command::Normalize { word } => {
            let x = ctx.elt(&word)?;
            ctx.emit(x.to_string(), json!(x));
        }
        Command::Mul { words } => {
            let mut acc = ctx.elt(&words[0])?;
            for w in &words[1..] {
                acc = multiply(acc, ctx.elt(w)?, p);
            }
            ctx.emit(acc.to_string(), json!(acc));
        }
        Command::Eq { left, right } => {
            let (x, y) = (ctx.elt(&left)?, ctx.elt(&right)?);
            ctx.emit((x == y).to_string(), json!({"equal": x == y, "left": x, "right": y}));
        }
        Command::Pow { word, k } => {
            let x = power(ctx.elt(&word)?, k, p)?;
            ctx.emit(x.to_string(), json!(x));
        }
        Command::Classify { word } => {
            let x = ctx.elt(&word)?;
            let (i, m, n, j) = x.quadruple();
            let order = order_of(x, p);
            ctx.emit(
                format!("{x}\t{}\t({i},{m},{n},{j})\torder {order}", x.classify().tag()),
                json!({"element": x, "order": order}),
            );
        }
        Command::Idempotent { word } => {
            let x = ctx.elt(&word)?;
            let e = is_idempotent(x, p);
            ctx.emit(e.to_string(), json!({"element": x, "idempotent": e}));
        }
        Command::Leq { e, f } => {
            let (e, f) = (ctx.elt(&e)?, ctx.elt(&f)?);
            let le = natural_le(e, f, p)?;
            ctx.emit(le.to_string(), json!({"e": e, "f": f, "leq": le}));
        }
        Command::Green { word, other } => {
            let x = ctx.elt(&word)?;
            match other {
                None => {
                    let (r, l) = green_keys(x);
                    ctx.emit(
                        format!("{x}\t{r}\t{l}"),
                        json!({"element": x, "r_key": r.to_string(), "l_key": l.to_string()}),
                    );
                }
                Some(other) => {
                    let y = ctx.elt(&other)?;
                    let rel = [
                        ("R", r_related(x, y)),
                        ("L", l_related(x, y)),
                        ("H", h_related(x, y)),
                        ("D", d_related(x, y)),
                    ];
                    let text = rel.iter().map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>().join("\t");
                    ctx.emit(
                        text,
                        json!({"left": x, "right": y, "R": rel[0].1, "L": rel[1].1, "H": rel[2].1, "D": rel[3].1}),
                    );
                }
            }
        }
        Command::Inverses { word, cap } => {
            let x = ctx.elt(&word)?;
            let cap = cap.unwrap_or(x.max_exponent() + 2);
            let (text, value) = list(inverses_within(x, p, cap)?);
            ctx.emit(text, json!({"element": x, "cap": cap, "inverses": value}));
        }
        Command::Closure { words, cap } => {
            let gens = words.iter().map(|w| ctx.elt(w)).collect::<Result<Vec<_>>>()?;
            let result = closure(&gens, p, cap)?;
            let (text, _) = list(result.elements.iter().copied());
            let status = if result.complete { "complete" } else { "incomplete" };
            ctx.emit(
                format!("{} elements ({status}): {text}", result.elements.len()),
                json!(result),
            );
        }
        Command::Pieces { word } => match word {
            None => {
                let tags = decomposition(p)?;
                let text = tags.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                let names: Vec<String> = tags.iter().map(ToString::to_string).collect();
                ctx.emit(text, json!({"pieces": tags, "names": names}));
            }
            Some(word) => {
                let x = ctx.elt(&word)?;
                let tags = decomposition_pieces(x, p, membership_bound(x))?;
                let text = tags.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                let names: Vec<String> = tags.iter().map(ToString::to_string).collect();
                ctx.emit(text, json!({"element": x, "pieces": tags, "names": names}));
            }
        },
        Command::Eggbox { rows, cols, format } => {
            let grid = eggbox_grid(p, rows, cols)?;
            let text = match format {
                GridFormat::Tsv => grid.to_tsv(),
                GridFormat::Ascii => grid.to_ascii(),
            };
            ctx.emit(text.trim_end(), json!(grid));
        }
        Command::Band { depth, format } => {
            let diagram = band_hasse(p, depth)?;
            let text = match format {
                BandFormat::Dot => diagram.to_dot(),
                BandFormat::Ascii => diagram.to_ascii(),
            };
            ctx.emit(text.trim_end(), json!(diagram));
        }
        Command::Oracle {
            words,
            length,
            idempotents,
            rebuild,
            assume_complete,
            sweep,
        } => {
            if words.len() != 2 && sweep.is_none() {
                bail!("oracle needs two words or --sweep");
            }
            let table = match &cli.cache_dir {
                Some(dir) => CongruenceTable::load_or_build(dir, p, length, idempotents, rebuild)?,
                None => orthomon::oracle::build_congruence(p, length, idempotents)?,
            };
            if let [left, right] = words.as_slice() {
                let (u, v) = (parse_word(left)?, parse_word(right)?);
                let answer = oracle_equal(&table, &u, &v, assume_complete)?;
                let text = serde_json::to_value(answer)?.as_str().unwrap_or_default().to_string();
                ctx.emit(text, json!({"left": u.to_string(), "right": v.to_string(), "answer": answer}));
            }
            if let Some(len) = sweep {
                let report = cross_check(&table, p, len)?;
                ctx.emit(
                    format!(
                        "{} words, {} equal pairs, {} soundness violations, {} unreached",
                        report.words, report.yes_pairs, report.soundness_violations, report.reachability_failures
                    ),
                    json!(report),
                );
                if report.soundness_violations > 0 {
                    return Ok(false);
                }
            }
        }
        Command::Verify {
            suites,
            window,
            triples,
            pairs,
            matrix: over_matrix,
        } => {
            let all = suites.iter().any(|s| s == "all");
            let chosen: Vec<Suite> = if all {
                Suite::ALL.to_vec()
            } else {
                suites.iter().map(|s| s.parse()).collect::<orthomon::Result<_>>()?
            };
            let params = if all || over_matrix { matrix() } else { vec![p] };
            let cfg = VerifyConfig {
                seed: cli.seed,
                triples,
                pairs,
                window,
                cache_dir: cli.cache_dir.clone(),
                ..VerifyConfig::default()
            };
            let reports = run_all(&chosen, &params, &cfg)?;
            for r in &reports {
                let status = match r.status {
                    Status::Passed => "PASS",
                    Status::Failed => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let mut text = format!("{status} {} {} ({} checks)", r.suite, r.params, r.checked);
                for f in &r.failures {
                    text.push_str(&format!("\n  {f}"));
                }
                ctx.emit(text, json!(r));
            }
            return Ok(reports.iter().all(|r| r.passed()));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
