//! Eggbox grids and band diagrams as TSV, ASCII and DOT.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{is_idempotent, multiply, natural_le, Prefix, Suffix};
use crate::error::{Error, Result};
use crate::green::{l_key, r_key, LKey, RKey};
use crate::structure::band_d_related;
use crate::word::{ExtNat, Params, ReducedWord};

/// A rectangular window of the eggbox picture around `ab`.
///
/// Rows are labelled `ab^k` (above), `ab` (the row of type II words) and
/// `b^k` (below); columns `a^k b` (left), `ab` and `a^k` (right). Each cell
/// is the product of its row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EggboxGrid {
    pub params: Params,
    pub rows: Vec<ReducedWord>,
    pub cols: Vec<ReducedWord>,
    pub cells: Vec<Vec<ReducedWord>>,
}

fn side_split(total: usize, bound: ExtNat) -> (usize, usize) {
    let mut before = (total - 1) / 2;
    if let Some(b) = bound.as_finite() {
        before = before.min(b.saturating_sub(1).try_into().unwrap_or(usize::MAX));
    }
    (before, total - 1 - before)
}

pub fn eggbox_grid(p: Params, rows: usize, cols: usize) -> Result<EggboxGrid> {
    if rows < 2 || cols < 2 {
        return Err(Error::InvalidArgument(format!(
            "eggbox needs at least 2 rows and 2 columns, got {rows}x{cols}"
        )));
    }
    let (above, below) = side_split(rows, p.mu());
    let (left, right) = side_split(cols, p.nu());

    let mut row_labels: Vec<ReducedWord> = (2..2 + above as u64)
        .rev()
        .map(|k| ReducedWord::raw(1, k, 0, 0))
        .collect();
    row_labels.push(ReducedWord::AB);
    row_labels.extend((1..=below as u64).map(ReducedWord::b_pow));

    let mut col_labels: Vec<ReducedWord> = (2..2 + left as u64)
        .rev()
        .map(|k| ReducedWord::raw(0, 0, k, 1))
        .collect();
    col_labels.push(ReducedWord::AB);
    col_labels.extend((1..=right as u64).map(ReducedWord::a_pow));

    let cells = row_labels
        .iter()
        .map(|&r| col_labels.iter().map(|&c| multiply(r, c, p)).collect())
        .collect();
    Ok(EggboxGrid {
        params: p,
        rows: row_labels,
        cols: col_labels,
        cells,
    })
}

impl EggboxGrid {
    pub fn row_key(&self, row: usize) -> RKey {
        let label = self.rows[row];
        if label == ReducedWord::AB {
            RKey::Rab
        } else {
            RKey::Prefix(Prefix {
                i: label.i(),
                m: label.m(),
            })
        }
    }

    pub fn col_key(&self, col: usize) -> LKey {
        let label = self.cols[col];
        if label == ReducedWord::AB {
            LKey::Lab
        } else {
            LKey::Suffix(Suffix {
                n: label.n(),
                j: label.j(),
            })
        }
    }

    /// Cells whose Green keys disagree with their row or column.
    pub fn key_mismatches(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if !x.is_valid(self.params) || r_key(x) != self.row_key(r) || l_key(x) != self.col_key(c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    fn table(&self) -> Vec<Vec<String>> {
        let mut out = Vec::with_capacity(self.rows.len() + 1);
        out.push(
            std::iter::once(String::new())
                .chain(self.cols.iter().map(ToString::to_string))
                .collect(),
        );
        for (label, row) in self.rows.iter().zip(&self.cells) {
            out.push(
                std::iter::once(label.to_string())
                    .chain(row.iter().map(ToString::to_string))
                    .collect(),
            );
        }
        out
    }

    /// Header row, then one line per row: label followed by cells.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for line in self.table() {
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_ascii(&self) -> String {
        let table = self.table();
        let widths: Vec<usize> = (0..table[0].len())
            .map(|c| table.iter().map(|line| line[c].chars().count()).max().unwrap_or(0))
            .collect();
        let rule: String = widths
            .iter()
            .map(|w| "-".repeat(w + 2))
            .collect::<Vec<_>>()
            .join("+");
        let mut out = String::new();
        for (idx, line) in table.iter().enumerate() {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!(" {s:<w$} "))
                .collect();
            out.push_str(cells.join("|").trim_end());
            out.push('\n');
            if idx == 0 {
                out.push_str(&rule);
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Serialize)]
struct GridJson {
    params: Params,
    rows: Vec<String>,
    cols: Vec<String>,
    cells: Vec<Vec<String>>,
}

impl Serialize for EggboxGrid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GridJson {
            params: self.params,
            rows: self.rows.iter().map(ToString::to_string).collect(),
            cols: self.cols.iter().map(ToString::to_string).collect(),
            cells: self
                .cells
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ThinKind {
    R,
    L,
}

/// Idempotents of a window with their covering pairs and R/L partners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandDiagram {
    pub params: Params,
    pub depth: u64,
    pub nodes: Vec<ReducedWord>,
    /// `(upper, lower)` node indices.
    pub covers: Vec<(usize, usize)>,
    pub thin: Vec<(usize, usize, ThinKind)>,
    /// Band D-classes, as sorted node indices.
    pub classes: Vec<Vec<usize>>,
    pub boundary: Vec<bool>,
}

pub fn band_hasse(p: Params, depth: u64) -> Result<BandDiagram> {
    if depth < 2 {
        return Err(Error::InvalidArgument(format!("depth must be at least 2, got {depth}")));
    }
    let nodes: Vec<ReducedWord> = ReducedWord::window(p, depth)
        .into_iter()
        .filter(|&x| is_idempotent(x, p))
        .collect();
    let n = nodes.len();
    let mut below = vec![vec![false; n]; n];
    for (a, &e) in nodes.iter().enumerate() {
        for (b, &f) in nodes.iter().enumerate() {
            below[a][b] = a != b && natural_le(e, f, p)?;
        }
    }
    let mut covers = Vec::new();
    for upper in 0..n {
        for lower in 0..n {
            if below[lower][upper] && !(0..n).any(|g| below[lower][g] && below[g][upper]) {
                covers.push((upper, lower));
            }
        }
    }
    let mut thin = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r_key(nodes[a]) == r_key(nodes[b]) {
                thin.push((a, b, ThinKind::R));
            } else if l_key(nodes[a]) == l_key(nodes[b]) {
                thin.push((a, b, ThinKind::L));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        match classes
            .iter_mut()
            .find(|class| band_d_related(nodes[class[0]], nodes[a], p))
        {
            Some(class) => class.push(a),
            None => classes.push(vec![a]),
        }
    }
    let boundary = nodes.iter().map(|x| x.max_exponent() + 1 >= depth).collect();
    Ok(BandDiagram {
        params: p,
        depth,
        nodes,
        covers,
        thin,
        classes,
        boundary,
    })
}

impl BandDiagram {
    pub fn index_of(&self, x: ReducedWord) -> Option<usize> {
        self.nodes.iter().position(|&y| y == x)
    }

    /// Lower covers of `x` among the nodes.
    pub fn covers_of(&self, x: ReducedWord) -> Vec<ReducedWord> {
        let Some(idx) = self.index_of(x) else {
            return Vec::new();
        };
        self.covers
            .iter()
            .filter(|&&(upper, _)| upper == idx)
            .map(|&(_, lower)| self.nodes[lower])
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph band {{");
        let _ = writeln!(
            out,
            "  label=\"idempotents of O{}, exponents <= {}\";",
            self.params, self.depth
        );
        let _ = writeln!(out, "  node [shape=plaintext];");
        for (k, class) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{k} {{");
            let _ = writeln!(out, "    style=dotted;");
            for &idx in class {
                let attrs = if self.boundary[idx] {
                    " [class=\"boundary\"]"
                } else {
                    ""
                };
                let _ = writeln!(out, "    \"{}\"{attrs};", self.nodes[idx]);
            }
            let _ = writeln!(out, "  }}");
        }
        for &(upper, lower) in &self.covers {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [style=bold];",
                self.nodes[upper], self.nodes[lower]
            );
        }
        for &(a, b, kind) in &self.thin {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{kind:?}\"];",
                self.nodes[a], self.nodes[b]
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for (k, class) in self.classes.iter().enumerate() {
            let names: Vec<String> = class.iter().map(|&i| self.nodes[i].to_string()).collect();
            let _ = writeln!(out, "D{k}: {}", names.join(" "));
        }
        for (idx, &x) in self.nodes.iter().enumerate() {
            let lower: Vec<String> = self.covers_of(x).iter().map(ToString::to_string).collect();
            let partners: Vec<String> = self
                .thin
                .iter()
                .filter_map(|&(a, b, kind)| match (a == idx, b == idx) {
                    (true, _) => Some(format!("{kind:?}:{}", self.nodes[b])),
                    (_, true) => Some(format!("{kind:?}:{}", self.nodes[a])),
                    _ => None,
                })
                .collect();
            let mark = if self.boundary[idx] { " (boundary)" } else { "" };
            let _ = writeln!(
                out,
                "{x}{mark} > [{}] ~ [{}]",
                lower.join(" "),
                partners.join(" ")
            );
        }
        out
    }
}
