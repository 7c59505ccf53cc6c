//! Independent checks on free complexes: the chain-complex axioms, strand
//! exactness over the lcm lattice, minimality and the homological
//! invariants, plus random test ideals.

pub mod equivalence;
pub mod random;
pub mod rank;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::PommaretBasis;
use crate::complex::{BettiTable, FreeComplex};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::integer::Integer;
use crate::monomial::Monomial;
use crate::morse::minimize;
use crate::resolution::taylor_complex;

pub use equivalence::{find_equivalence, sign_equivalence, Equivalence};
pub use random::{random_quasi_stable, random_stable};
pub use rank::sparse_rank;

/// Default bound on the number of strands examined by [`check_exactness`].
pub const DEFAULT_STRAND_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ComplexFailure {
    /// `mono * multidegree(row) != multidegree(col)` for an entry of `d_degree`.
    Inhomogeneous { degree: usize, row: usize, col: usize },
    /// `d_{degree-1}(d_degree(col))` has a nonzero term. `row` is `None` when
    /// the outer map is the augmentation.
    NonZeroComposite {
        degree: usize,
        col: usize,
        row: Option<usize>,
        mono: Monomial,
        coeff: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub ok: bool,
    pub failures: Vec<ComplexFailure>,
}

/// Checks homogeneity of every entry and `d o d = 0`, including the
/// composite with the augmentation.
pub fn check_complex(f: &FreeComplex) -> ComplexReport {
    let mut failures = Vec::new();
    for i in 1..=f.length() {
        let d = f.differential(i);
        for (c, col) in d.columns().iter().enumerate() {
            let md = &f.module(i)[c].multidegree;
            for e in col {
                if &f.module(i - 1)[e.row].multidegree.mul(&e.mono) != md {
                    failures.push(ComplexFailure::Inhomogeneous {
                        degree: i,
                        row: e.row,
                        col: c,
                    });
                }
            }
        }
    }
    for i in 1..=f.length() {
        let d = f.differential(i);
        for (c, col) in d.columns().iter().enumerate() {
            let mut acc: BTreeMap<(Option<usize>, Monomial), Integer> = BTreeMap::new();
            for e in col {
                if i == 1 {
                    let m = f.module(0)[e.row].multidegree.mul(&e.mono);
                    let slot = acc.entry((None, m)).or_insert(Integer::ZERO);
                    *slot = &*slot + &e.coeff;
                } else {
                    for g in f.differential(i - 1).column(e.row) {
                        let m = g.mono.mul(&e.mono);
                        let slot = acc.entry((Some(g.row), m)).or_insert(Integer::ZERO);
                        *slot = &*slot + &(&g.coeff * &e.coeff);
                    }
                }
            }
            for ((row, mono), coeff) in acc {
                if !coeff.is_zero() {
                    failures.push(ComplexFailure::NonZeroComposite {
                        degree: i,
                        col: c,
                        row,
                        mono,
                        coeff: coeff.to_string(),
                    });
                }
            }
        }
    }
    ComplexReport {
        ok: failures.is_empty(),
        failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandFailure {
    pub mu: Monomial,
    /// Homological position of the failure; `None` for the augmentation.
    pub degree: Option<usize>,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub target_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub ok: bool,
    pub lattice_size: usize,
    pub strands_checked: usize,
    pub failures: Vec<StrandFailure>,
}

impl ExactnessReport {
    pub fn coverage(&self) -> f64 {
        if self.lattice_size == 0 {
            1.0
        } else {
            self.strands_checked as f64 / self.lattice_size as f64
        }
    }

    pub fn complete(&self) -> bool {
        self.strands_checked == self.lattice_size
    }
}

/// Scalar strand of `f` at `mu`: generator counts and differential ranks,
/// with `ranks[0]` the rank of the augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub mu: Monomial,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub target_dim: usize,
}

impl Strand {
    /// `None` if exact, otherwise the first failing position.
    pub fn defect(&self) -> Option<Option<usize>> {
        if self.ranks[0] != self.target_dim {
            return Some(None);
        }
        (0..self.dims.len()).find_map(|i| {
            let out = self.ranks[i];
            let inc = self.ranks.get(i + 1).copied().unwrap_or(0);
            (self.dims[i] != out + inc).then_some(Some(i))
        })
    }
}

pub fn strand(f: &FreeComplex, ideal: &MonomialIdeal, mu: &Monomial) -> Strand {
    let alive: Vec<Vec<bool>> = f
        .modules()
        .iter()
        .map(|m| m.iter().map(|g| g.multidegree.divides(mu)).collect())
        .collect();
    let dims: Vec<usize> = alive.iter().map(|a| a.iter().filter(|&&x| x).count()).collect();
    let target_dim = usize::from(ideal.contains(mu));
    let mut ranks = vec![usize::from(dims[0] > 0 && target_dim == 1)];
    for (d, alive) in f.differentials().iter().zip(&alive[1..]) {
        // every entry of a surviving column survives: row multidegrees divide
        // column multidegrees
        let rows: Vec<rank::SparseVec> = d
            .columns()
            .iter()
            .enumerate()
            .filter(|(c, _)| alive[*c])
            .map(|(_, col)| col.iter().map(|e| (e.row, e.coeff.clone())).collect())
            .collect();
        ranks.push(sparse_rank(rows));
    }
    Strand {
        mu: mu.clone(),
        dims,
        ranks,
        target_dim,
    }
}

/// All lcms of nonempty subsets of `atoms`, sorted by degree then
/// lexicographically.
pub fn lcm_lattice(atoms: &[Monomial]) -> Vec<Monomial> {
    let mut lattice: HashSet<Monomial> = HashSet::new();
    let mut unique: Vec<&Monomial> = atoms.iter().collect();
    unique.sort();
    unique.dedup();
    for a in unique {
        let joins: Vec<Monomial> = lattice.iter().map(|l| l.lcm(a)).collect();
        lattice.insert(a.clone());
        lattice.extend(joins);
    }
    let mut out: Vec<Monomial> = lattice.into_iter().collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

/// Exactness of `... -> F_0 -> I -> 0` in every multidegree.
///
/// A strand only depends on which generator multidegrees (and which minimal
/// generators of `I`) divide `mu`, and that pattern is the same at `mu` and
/// at the lcm of the dividing atoms. So the lcm lattice of the atoms covers
/// every multidegree. At most `cap` lattice points are examined, evenly
/// spaced through the sorted lattice.
pub fn check_exactness_with_cap(
    f: &FreeComplex,
    ideal: &MonomialIdeal,
    cap: usize,
) -> Result<ExactnessReport> {
    let axioms = check_complex(f);
    if !axioms.ok {
        return Err(Error::NotAComplex(format!(
            "{} axiom failures, first: {:?}",
            axioms.failures.len(),
            axioms.failures[0]
        )));
    }
    let mut atoms: Vec<Monomial> = f
        .modules()
        .iter()
        .flatten()
        .map(|g| g.multidegree.clone())
        .collect();
    atoms.extend(ideal.gens().iter().cloned());
    let lattice = lcm_lattice(&atoms);
    let chosen: Vec<&Monomial> = if lattice.len() <= cap {
        lattice.iter().collect()
    } else {
        (0..cap).map(|k| &lattice[k * lattice.len() / cap]).collect()
    };
    let failures: Vec<StrandFailure> = chosen
        .par_iter()
        .filter_map(|mu| {
            let s = strand(f, ideal, mu);
            s.defect().map(|degree| StrandFailure {
                mu: s.mu,
                degree,
                dims: s.dims,
                ranks: s.ranks,
                target_dim: s.target_dim,
            })
        })
        .collect();
    Ok(ExactnessReport {
        ok: failures.is_empty(),
        lattice_size: lattice.len(),
        strands_checked: chosen.len(),
        failures,
    })
}

pub fn check_exactness(f: &FreeComplex, ideal: &MonomialIdeal) -> Result<ExactnessReport> {
    check_exactness_with_cap(f, ideal, DEFAULT_STRAND_CAP)
}

/// Betti data read off a minimal resolution, with the expected values
/// `pd = n - d` and `reg = max degree of the Pommaret basis`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    #[serde(skip)]
    pub betti: BettiTable,
    pub totals: Vec<usize>,
    pub pd: usize,
    pub reg: i64,
    pub expected_pd: usize,
    pub basis_max_degree: u32,
    pub length_check: bool,
    pub reg_check: bool,
}

pub fn homological_invariants(fmin: &FreeComplex, basis: &PommaretBasis) -> Result<InvariantReport> {
    if let Some(&(degree, row, col)) = fmin.scalar_entries().first() {
        return Err(Error::NotMinimal { degree, row, col });
    }
    let betti = fmin.betti_table();
    let pd = betti.pd();
    let reg = betti.reg();
    let expected_pd = basis.n() - basis.min_class();
    let basis_max_degree = basis.max_degree();
    Ok(InvariantReport {
        totals: betti.totals(),
        betti,
        pd,
        reg,
        expected_pd,
        basis_max_degree,
        length_check: pd == expected_pd,
        reg_check: reg == i64::from(basis_max_degree),
    })
}

/// Betti numbers from the minimized Taylor resolution.
pub fn oracle_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    Ok(minimize(&taylor_complex(ideal))?.complex.betti_table())
}
