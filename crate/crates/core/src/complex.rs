//! Multigraded free chain complexes with sparse monomial differentials.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::integer::Integer;
use crate::monomial::{Monomial, Ring, VarSet};

/// `[h, u]`: basis element index `h` and squarefree exterior part `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub h: usize,
    pub u: VarSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GenLabel {
    Symbol(Symbol),
    /// A face of the Taylor simplex, as sorted generator indices.
    Face(Vec<usize>),
    Opaque(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: GenLabel,
    pub multidegree: Monomial,
}

/// Nonzero matrix entry `coeff * mono` in row `row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub coeff: Integer,
    pub mono: Monomial,
}

/// Column-major sparse matrix; each column is sorted by row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<Entry>>,
}

impl SparseMatrix {
    /// Builds a matrix from columns, merging entries that share a row and
    /// dropping zero coefficients.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<Entry>>) -> SparseMatrix {
        let cols = cols
            .into_iter()
            .map(|mut col| {
                col.sort_by_key(|e| e.row);
                let mut merged: Vec<Entry> = Vec::with_capacity(col.len());
                for e in col {
                    assert!(e.row < nrows, "row {} out of range {nrows}", e.row);
                    match merged.last_mut() {
                        Some(last) if last.row == e.row => {
                            assert_eq!(last.mono, e.mono, "inhomogeneous merge at row {}", e.row);
                            last.coeff = &last.coeff + &e.coeff;
                        }
                        _ => merged.push(e),
                    }
                }
                merged.retain(|e| !e.coeff.is_zero());
                merged
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[Entry] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[Vec<Entry>] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Entry> {
        let column = &self.cols[col];
        column
            .binary_search_by_key(&row, |e| e.row)
            .ok()
            .map(|p| &column[p])
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Mutable access for tests that need to corrupt a matrix on purpose.
    pub fn column_mut(&mut self, c: usize) -> &mut Vec<Entry> {
        &mut self.cols[c]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    PommaretSeiler,
    EliahouKervaire,
    Taylor,
    Cellular,
    /// Output of a Morse or unit-entry reduction of another complex.
    Reduced,
    Custom,
}

/// A free resolution candidate `... -> F_1 -> F_0 -> I -> 0`.
///
/// `F_0 -> I` sends each generator to its multidegree with coefficient 1.
/// `differentials[i - 1]` is `d_i : F_i -> F_{i-1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    n: usize,
    elements: Vec<Monomial>,
    ideal: MonomialIdeal,
    provenance: Provenance,
    modules: Vec<Vec<Generator>>,
    differentials: Vec<SparseMatrix>,
}

impl FreeComplex {
    /// `elements` is the list that symbol and face labels index into.
    pub fn new(
        ideal: MonomialIdeal,
        elements: Vec<Monomial>,
        provenance: Provenance,
        modules: Vec<Vec<Generator>>,
        differentials: Vec<SparseMatrix>,
    ) -> Result<FreeComplex> {
        if modules.is_empty() {
            return Err(Error::NotAComplex("no modules".into()));
        }
        if differentials.len() + 1 != modules.len() {
            return Err(Error::NotAComplex(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.nrows() != modules[i].len() || d.ncols() != modules[i + 1].len() {
                return Err(Error::NotAComplex(format!(
                    "d_{} has shape {}x{}, expected {}x{}",
                    i + 1,
                    d.nrows(),
                    d.ncols(),
                    modules[i].len(),
                    modules[i + 1].len()
                )));
            }
        }
        let n = ideal.n();
        Ok(FreeComplex {
            n,
            elements,
            ideal,
            provenance,
            modules,
            differentials,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Top homological degree.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn modules(&self) -> &[Vec<Generator>] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &[Generator] {
        self.modules.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.module(i).len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.modules.iter().map(Vec::len).sum()
    }

    /// `d_i` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &SparseMatrix {
        assert!(i >= 1 && i <= self.differentials.len(), "no differential d_{i}");
        &self.differentials[i - 1]
    }

    pub fn differentials(&self) -> &[SparseMatrix] {
        &self.differentials
    }

    pub fn differential_mut(&mut self, i: usize) -> &mut SparseMatrix {
        &mut self.differentials[i - 1]
    }

    /// Generator index with the given label in degree `i`.
    pub fn find(&self, i: usize, label: &GenLabel) -> Option<usize> {
        self.module(i).iter().position(|g| &g.label == label)
    }

    pub fn find_symbol(&self, i: usize, h: &Monomial, u: &VarSet) -> Option<usize> {
        let h = self.elements.iter().position(|e| e == h)?;
        self.find(i, &GenLabel::Symbol(Symbol { h, u: u.clone() }))
    }

    /// Entries whose monomial is 1 (scalar entries), as `(degree, row, col)`.
    pub fn scalar_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (k, d) in self.differentials.iter().enumerate() {
            for (c, col) in d.columns().iter().enumerate() {
                for e in col {
                    if e.mono.is_one() {
                        out.push((k + 1, e.row, c));
                    }
                }
            }
        }
        out
    }

    /// Minimal means no differential entry is a nonzero scalar.
    pub fn is_minimal(&self) -> bool {
        self.scalar_entries().is_empty()
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut by_degree = BTreeMap::new();
        let mut by_multidegree = BTreeMap::new();
        for (i, module) in self.modules.iter().enumerate() {
            for g in module {
                *by_degree.entry((i, g.multidegree.degree())).or_insert(0) += 1;
                *by_multidegree
                    .entry((i, g.multidegree.clone()))
                    .or_insert(0) += 1;
            }
        }
        BettiTable {
            by_degree,
            by_multidegree,
        }
    }

    pub fn label_string(&self, ring: &Ring, g: &Generator) -> String {
        match &g.label {
            GenLabel::Symbol(s) => {
                let h = ring.format(&self.elements[s.h]);
                if s.u.is_empty() {
                    format!("[{h}]")
                } else {
                    format!("[{h}, {}]", ring.format_varset(&s.u))
                }
            }
            GenLabel::Face(f) => {
                let parts: Vec<String> = f.iter().map(|&v| ring.format(&self.elements[v])).collect();
                format!("{{{}}}", parts.join(", "))
            }
            GenLabel::Opaque(id) => format!("g{id}"),
        }
    }

    /// Plain-text rendering: generator lists and each differential with rows
    /// labelled by generator symbols.
    pub fn render_text(&self, ring: &Ring) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ranks: {:?}", self.ranks());
        for (i, module) in self.modules.iter().enumerate() {
            let labels: Vec<String> = module.iter().map(|g| self.label_string(ring, g)).collect();
            let _ = writeln!(out, "F_{i} ({}): {}", module.len(), labels.join(" "));
        }
        let d0: Vec<String> = self.module(0).iter().map(|g| ring.format(&g.multidegree)).collect();
        let _ = writeln!(out, "d_0 = ( {} )", d0.join("  "));
        for i in 1..=self.length() {
            let d = self.differential(i);
            let _ = writeln!(out, "d_{i}:");
            let row_labels: Vec<String> = self
                .module(i - 1)
                .iter()
                .map(|g| self.label_string(ring, g))
                .collect();
            let width = row_labels.iter().map(String::len).max().unwrap_or(0);
            let mut cells = vec![vec![String::from("0"); d.ncols()]; d.nrows()];
            for (c, col) in d.columns().iter().enumerate() {
                for e in col {
                    cells[e.row][c] = format_entry(ring, &e.coeff, &e.mono);
                }
            }
            let col_width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            for (r, row) in cells.iter().enumerate() {
                let _ = write!(out, "  {:>width$} |", row_labels[r]);
                for cell in row {
                    let _ = write!(out, " {cell:>col_width$}");
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct GenOut<'a> {
            #[serde(skip_serializing_if = "Option::is_none")]
            h: Option<&'a Monomial>,
            #[serde(skip_serializing_if = "Option::is_none")]
            u: Option<&'a VarSet>,
            #[serde(skip_serializing_if = "Option::is_none")]
            face: Option<Vec<&'a Monomial>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            id: Option<usize>,
            multidegree: &'a Monomial,
        }
        #[derive(Serialize)]
        struct EntryOut<'a> {
            row: usize,
            col: usize,
            coeff: &'a Integer,
            mono: &'a Monomial,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            n: usize,
            modules: Vec<Vec<GenOut<'a>>>,
            differentials: Vec<Vec<EntryOut<'a>>>,
        }
        let modules = self
            .modules
            .iter()
            .map(|m| {
                m.iter()
                    .map(|g| {
                        let mut out = GenOut {
                            h: None,
                            u: None,
                            face: None,
                            id: None,
                            multidegree: &g.multidegree,
                        };
                        match &g.label {
                            GenLabel::Symbol(s) => {
                                out.h = Some(&self.elements[s.h]);
                                out.u = Some(&s.u);
                            }
                            GenLabel::Face(f) => {
                                out.face = Some(f.iter().map(|&v| &self.elements[v]).collect());
                            }
                            GenLabel::Opaque(id) => out.id = Some(*id),
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let one = Integer::ONE;
        let mut differentials = vec![self
            .module(0)
            .iter()
            .enumerate()
            .map(|(c, g)| EntryOut {
                row: 0,
                col: c,
                coeff: &one,
                mono: &g.multidegree,
            })
            .collect::<Vec<_>>()];
        for d in &self.differentials {
            let mut entries = Vec::with_capacity(d.nnz());
            for (c, col) in d.columns().iter().enumerate() {
                for e in col {
                    entries.push(EntryOut {
                        row: e.row,
                        col: c,
                        coeff: &e.coeff,
                        mono: &e.mono,
                    });
                }
            }
            differentials.push(entries);
        }
        serde_json::to_value(Out {
            n: self.n,
            modules,
            differentials,
        })
        .expect("complex serializes")
    }
}

/// `±c·m` in the style of the displayed matrices: unit coefficients are
/// omitted in front of nontrivial monomials.
pub fn format_entry(ring: &Ring, coeff: &Integer, mono: &Monomial) -> String {
    if mono.is_one() {
        return coeff.to_string();
    }
    let m = ring.format(mono);
    match coeff.to_i64() {
        Some(1) => m,
        Some(-1) => format!("-{m}"),
        _ => format!("{coeff}·{m}"),
    }
}

/// Graded and multigraded Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub by_degree: BTreeMap<(usize, u32), usize>,
    pub by_multidegree: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    /// Total Betti numbers `beta_0, beta_1, ...`.
    pub fn totals(&self) -> Vec<usize> {
        let top = self.by_degree.keys().map(|(i, _)| *i).max();
        let mut out = vec![0; top.map_or(0, |t| t + 1)];
        for ((i, _), c) in &self.by_degree {
            out[*i] += c;
        }
        out
    }

    /// Top homological degree with a nonzero Betti number.
    pub fn pd(&self) -> usize {
        self.by_degree.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `max (j - i)` over nonzero `beta_{i,j}`.
    pub fn reg(&self) -> i64 {
        self.by_degree
            .keys()
            .map(|(i, j)| *j as i64 - *i as i64)
            .max()
            .unwrap_or(0)
    }

    /// Macaulay2-style table: rows `j - i`, columns `i`.
    pub fn render(&self) -> String {
        let totals = self.totals();
        let min_row = self
            .by_degree
            .keys()
            .map(|(i, j)| *j as i64 - *i as i64)
            .min()
            .unwrap_or(0);
        let max_row = self.reg();
        let mut out = String::new();
        let _ = write!(out, "{:>6}", "");
        for i in 0..totals.len() {
            let _ = write!(out, "{i:>6}");
        }
        out.push('\n');
        let _ = write!(out, "{:>6}", "total:");
        for t in &totals {
            let _ = write!(out, "{t:>6}");
        }
        out.push('\n');
        for row in min_row..=max_row {
            let _ = write!(out, "{:>6}", format!("{row}:"));
            for i in 0..totals.len() {
                let j = row + i as i64;
                let c = if j < 0 {
                    0
                } else {
                    self.by_degree.get(&(i, j as u32)).copied().unwrap_or(0)
                };
                if c == 0 {
                    let _ = write!(out, "{:>6}", ".");
                } else {
                    let _ = write!(out, "{c:>6}");
                }
            }
            out.push('\n');
        }
        out
    }
}
