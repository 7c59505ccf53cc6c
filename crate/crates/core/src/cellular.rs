//! The CW-complex supporting the Pommaret-Seiler resolution.
//!
//! Cells are keyed by `(h, tau)`. A cell is the union of the simplices
//! `ch(h, tau, sigma)` traced out by the decomposition function along each
//! ordering `sigma` of `tau`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::basis::PommaretBasis;
use crate::complex::{Entry, FreeComplex, GenLabel, Generator, Provenance, SparseMatrix, Symbol};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::integer::Integer;
use crate::monomial::{Monomial, Ring, VarSet};
use crate::verify::equivalence::sign_equivalence;

#[derive(Clone, Debug)]
pub struct Cell {
    pub h: usize,
    pub tau: VarSet,
    pub dim: usize,
    /// Basis elements reached by some ordering of `tau`, sorted.
    pub vertices: Vec<usize>,
    /// `h * prod_{j in tau} x_j`.
    pub label: Monomial,
    pub degenerate_perms: usize,
    /// `(vertex chain, degenerate)` for each ordering of `tau`, in
    /// lexicographic permutation order.
    pub chains: Vec<(Vec<usize>, bool)>,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    ideal: MonomialIdeal,
    elements: Vec<Monomial>,
    cells: Vec<Vec<Cell>>,
    /// `boundary[p][c]`: signed facets of cell `c` of dimension `p`, as
    /// indices into `cells[p - 1]`. Empty for `p = 0`.
    boundary: Vec<Vec<Vec<(usize, i64)>>>,
}

/// Vertex chain `[h, b(x_{s1} h), b(x_{s2} b(x_{s1} h)), ...]` along `sigma`,
/// returned with its degeneracy flag (some vertex repeats).
pub fn chain_vertices(
    basis: &PommaretBasis,
    h: usize,
    tau: &VarSet,
    sigma: &[usize],
) -> Result<(Vec<usize>, bool)> {
    if !tau.is_subset(&basis.non_multiplicative(h)) {
        return Err(Error::TauNotNonMultiplicative);
    }
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    if sorted != tau.as_slice() {
        return Err(Error::TauNotNonMultiplicative);
    }
    let mut chain = vec![h];
    let mut current = h;
    for &j in sigma {
        let next = basis
            .involutive_divisor(&basis.element(current).mul_var(j))
            .expect("multiples of basis elements lie in the ideal");
        chain.push(next);
        current = next;
    }
    let distinct: BTreeSet<usize> = chain.iter().copied().collect();
    let degenerate = distinct.len() < chain.len();
    Ok((chain, degenerate))
}

fn sign_of(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Builds one cell per Pommaret-Seiler generator `[h, tau]`, with boundary
///
/// `d U(h, tau) = sum_i (-1)^i U(h, tau/j_i) - sum_i (-1)^i U(h_Delta(h, j_i), tau/j_i)`
///
/// where the second kind of facet is omitted when `tau/j_i` is not
/// non-multiplicative for `h_Delta`.
pub fn build_cell_complex(basis: &PommaretBasis) -> CellComplex {
    let n = basis.n();
    let top = n - basis.min_class();
    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let mut level = Vec::new();
        for h in 0..basis.len() {
            for tau in basis.non_multiplicative(h).subsets_of_size(p) {
                let chains: Vec<(Vec<usize>, bool)> = tau
                    .iter()
                    .permutations(p)
                    .map(|sigma| chain_vertices(basis, h, &tau, &sigma).expect("valid tau"))
                    .collect();
                let vertices: BTreeSet<usize> =
                    chains.iter().flat_map(|(c, _)| c.iter().copied()).collect();
                level.push(Cell {
                    h,
                    dim: p,
                    label: basis.element(h).mul(&Monomial::from_varset(n, &tau)),
                    degenerate_perms: chains.iter().filter(|(_, d)| *d).count(),
                    vertices: vertices.into_iter().collect(),
                    tau,
                    chains,
                });
            }
        }
        cells.push(level);
    }
    let mut boundary = vec![vec![Vec::new(); cells[0].len()]];
    for p in 1..=top {
        let index: HashMap<(usize, &VarSet), usize> = cells[p - 1]
            .iter()
            .enumerate()
            .map(|(k, c)| ((c.h, &c.tau), k))
            .collect();
        let level = cells[p]
            .iter()
            .map(|cell| {
                let mut facets = Vec::with_capacity(2 * p);
                for (pos, j) in cell.tau.iter().enumerate() {
                    let s = sign_of(pos + 1);
                    let face = cell.tau.without(j);
                    facets.push((index[&(cell.h, &face)], s));
                    let d = basis.delta_map(cell.h, j).expect("j non-multiplicative");
                    if let Some(&k) = index.get(&(d.target, &face)) {
                        facets.push((k, -s));
                    }
                }
                facets
            })
            .collect();
        boundary.push(level);
    }
    CellComplex {
        ideal: basis.ideal().clone(),
        elements: basis.elements().to_vec(),
        cells,
        boundary,
    }
}

impl CellComplex {
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn cells(&self) -> &[Vec<Cell>] {
        &self.cells
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn boundary(&self, p: usize, c: usize) -> &[(usize, i64)] {
        &self.boundary[p][c]
    }

    /// Vertex coordinates: the exponent vectors of the basis elements.
    pub fn coords(&self, v: usize) -> &[u32] {
        self.elements[v].exps()
    }

    /// Integer cellular chain complex squares to zero.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..=self.dimension()).all(|p| {
            self.boundary[p].iter().all(|facets| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(f, s) in facets {
                    for &(g, t) in &self.boundary[p - 1][f] {
                        *acc.entry(g).or_insert(0) += s * t;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }

    /// Every cell label is the lcm of its vertex monomials.
    pub fn labels_are_lcms(&self) -> bool {
        self.cells.iter().flatten().all(|c| {
            let l = c
                .vertices
                .iter()
                .map(|&v| self.elements[v].clone())
                .reduce(|a, b| a.lcm(&b))
                .expect("cells have vertices");
            l == c.label
        })
    }

    /// Facet labels divide cell labels.
    pub fn grading_is_monotone(&self) -> bool {
        (1..=self.dimension()).all(|p| {
            self.cells[p].iter().enumerate().all(|(c, cell)| {
                self.boundary[p][c]
                    .iter()
                    .all(|&(f, _)| self.cells[p - 1][f].label.divides(&cell.label))
            })
        })
    }

    /// Each degenerate chain lies inside the vertex set of a non-degenerate
    /// chain of the same cell.
    pub fn degenerate_chains_are_faces(&self) -> bool {
        self.cells.iter().flatten().all(|cell| {
            let good: Vec<BTreeSet<usize>> = cell
                .chains
                .iter()
                .filter(|(_, d)| !d)
                .map(|(c, _)| c.iter().copied().collect())
                .collect();
            cell.chains.iter().filter(|(_, d)| *d).all(|(c, _)| {
                let vs: BTreeSet<usize> = c.iter().copied().collect();
                good.iter().any(|g| vs.is_subset(g))
            })
        })
    }

    /// The label-weighted cellular chain complex as a free complex.
    pub fn to_free_complex(&self) -> FreeComplex {
        let modules: Vec<Vec<Generator>> = self
            .cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|c| Generator {
                        label: GenLabel::Symbol(Symbol {
                            h: c.h,
                            u: c.tau.clone(),
                        }),
                        multidegree: c.label.clone(),
                    })
                    .collect()
            })
            .collect();
        let differentials = (1..=self.dimension())
            .map(|p| {
                let cols = self.boundary[p]
                    .iter()
                    .enumerate()
                    .map(|(c, facets)| {
                        facets
                            .iter()
                            .map(|&(f, s)| Entry {
                                row: f,
                                coeff: Integer::from(s),
                                mono: self.cells[p - 1][f]
                                    .label
                                    .quotient_of(&self.cells[p][c].label)
                                    .expect("facet label divides"),
                            })
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(self.cells[p - 1].len(), cols)
            })
            .collect();
        FreeComplex::new(
            self.ideal.clone(),
            self.elements.clone(),
            Provenance::Cellular,
            modules,
            differentials,
        )
        .expect("cell complex shapes are consistent")
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct FacetOut<'a> {
            h: &'a Monomial,
            tau: &'a VarSet,
            sign: i64,
        }
        #[derive(Serialize)]
        struct CellOut<'a> {
            h: &'a Monomial,
            tau: &'a VarSet,
            dim: usize,
            label: &'a Monomial,
            vertices: Vec<&'a Monomial>,
            degenerate_perms: usize,
            boundary: Vec<FacetOut<'a>>,
        }
        let cells: Vec<CellOut> = self
            .cells
            .iter()
            .enumerate()
            .flat_map(|(p, level)| {
                level.iter().enumerate().map(move |(c, cell)| CellOut {
                    h: &self.elements[cell.h],
                    tau: &cell.tau,
                    dim: p,
                    label: &cell.label,
                    vertices: cell.vertices.iter().map(|&v| &self.elements[v]).collect(),
                    degenerate_perms: cell.degenerate_perms,
                    boundary: self.boundary[p][c]
                        .iter()
                        .map(|&(f, sign)| {
                            let facet = &self.cells[p - 1][f];
                            FacetOut {
                                h: &self.elements[facet.h],
                                tau: &facet.tau,
                                sign,
                            }
                        })
                        .collect(),
                })
            })
            .collect();
        serde_json::json!({ "n": self.ideal.n(), "cells": cells })
    }

    /// Graphviz rendering of the 1-skeleton. Rings with at most three
    /// variables get `pos` hints from the exponent coordinates.
    pub fn to_dot(&self, ring: &Ring) -> String {
        let mut out = String::from("graph cells {\n");
        let positions = self.ideal.n() <= 3;
        for v in &self.elements {
            if positions {
                let coords: Vec<String> = v.exps().iter().map(u32::to_string).collect();
                let _ = writeln!(out, "  \"{}\" [pos=\"{}!\"];", ring.format(v), coords.join(","));
            } else {
                let _ = writeln!(out, "  \"{}\";", ring.format(v));
            }
        }
        if self.dimension() >= 1 {
            for cell in &self.cells[1] {
                let (_, other) = self.chain_endpoints(cell);
                let _ = writeln!(
                    out,
                    "  \"{}\" -- \"{}\" [label=\"{}\"];",
                    ring.format(&self.elements[cell.h]),
                    ring.format(&self.elements[other]),
                    ring.format_varset(&cell.tau)
                );
            }
        }
        out.push_str("}\n");
        out
    }

    fn chain_endpoints(&self, cell: &Cell) -> (usize, usize) {
        let chain = &cell.chains[0].0;
        (chain[0], *chain.last().expect("nonempty chain"))
    }
}

/// Checks that `cells` supports `f`: labels are lcms of vertices, the
/// grading is monotone, and the label-weighted cellular complex equals `f`
/// after rescaling generators by signs.
pub fn supports_check(cells: &CellComplex, f: &FreeComplex) -> Result<bool> {
    if cells.elements() != f.elements() || cells.ideal != *f.ideal() {
        return Err(Error::MismatchedBases);
    }
    if !cells.labels_are_lcms() || !cells.grading_is_monotone() {
        return Ok(false);
    }
    let cf = cells.to_free_complex();
    if cf.ranks() != f.ranks() {
        return Ok(false);
    }
    let mut maps = Vec::with_capacity(cf.modules().len());
    for (i, module) in cf.modules().iter().enumerate() {
        let index: HashMap<&GenLabel, usize> = f
            .module(i)
            .iter()
            .enumerate()
            .map(|(k, g)| (&g.label, k))
            .collect();
        let mut map = Vec::with_capacity(module.len());
        for g in module {
            match index.get(&g.label) {
                Some(&k) => map.push(k),
                None => return Ok(false),
            }
        }
        maps.push(map);
    }
    Ok(sign_equivalence(&cf, f, &maps).is_some())
}
