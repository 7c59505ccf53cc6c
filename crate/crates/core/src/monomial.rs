//! Exponent-vector monomials and the Pommaret division primitives.
//!
//! Variables are indexed from 1. The class of a monomial is its smallest
//! variable index with a nonzero exponent, and its multiplicative variables
//! for the Pommaret division are `x1, ..., x_cls`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The polynomial ring `k[x1, ..., xn]`, carrying only display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    n: usize,
    names: Vec<String>,
}

impl Ring {
    pub fn new(n: usize) -> Ring {
        assert!(n >= 1, "a ring needs at least one variable");
        Ring {
            n,
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    /// A ring with custom variable names; names must be distinct and there
    /// must be exactly `n` of them.
    pub fn with_names(names: Vec<String>) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::ArityMismatch {
                expected: names.len(),
                found: sorted.len(),
            });
        }
        Ok(Ring {
            n: names.len(),
            names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of variable `i` (1-based).
    pub fn name(&self, i: usize) -> &str {
        &self.names[i - 1]
    }

    /// Renders `m` as `x1^2*x2` (or `1`), using this ring's names.
    pub fn format(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }

    pub fn format_varset(&self, u: &VarSet) -> String {
        if u.is_empty() {
            return "1".to_string();
        }
        u.iter()
            .map(|i| self.names[i - 1].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A monomial `x^mu`, stored as its exponent vector.
///
/// The derived ordering is lexicographic on exponent vectors reading index 1
/// first. It is used only to make output deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        assert!(!exps.is_empty(), "monomials need at least one variable");
        Monomial { exps }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial::new(vec![0; n])
    }

    /// The variable `x_i` (1-based) in a ring with `n` variables.
    pub fn var(n: usize, i: usize) -> Monomial {
        assert!((1..=n).contains(&i), "variable x{i} out of range");
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    /// The squarefree monomial whose support is `u`.
    pub fn from_varset(n: usize, u: &VarSet) -> Monomial {
        let mut exps = vec![0; n];
        for i in u.iter() {
            exps[i - 1] = 1;
        }
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of variable `i` (1-based).
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .expect("monomial degree overflows u32")
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Ordinary divisibility `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "arity mismatch in product");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow in product"))
                .collect(),
        }
    }

    /// `x_i * self`.
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i - 1] = exps[i - 1]
            .checked_add(1)
            .expect("exponent overflow in product");
        Monomial { exps }
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i - 1] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i - 1] -= 1;
        Some(Monomial { exps })
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "arity mismatch in lcm");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "arity mismatch in gcd");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// Smallest variable index with nonzero exponent.
    pub fn cls(&self) -> Result<usize> {
        self.exps
            .iter()
            .position(|&e| e > 0)
            .map(|p| p + 1)
            .ok_or(Error::UnitMonomial)
    }

    /// Largest variable index with nonzero exponent, or 0 for the unit.
    pub fn max_var(&self) -> usize {
        self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1)
    }

    /// `{x1, ..., x_cls}`.
    pub fn multiplicative_vars(&self) -> Result<VarSet> {
        let c = self.cls()?;
        Ok(VarSet::from_sorted((1..=c).collect()))
    }

    /// `{x_{cls+1}, ..., xn}`.
    pub fn non_multiplicative_vars(&self) -> Result<VarSet> {
        let c = self.cls()?;
        Ok(VarSet::from_sorted((c + 1..=self.arity()).collect()))
    }

    /// True when `self` divides `other` and the quotient only involves
    /// variables multiplicative for `self`.
    pub fn involutively_divides(&self, other: &Monomial) -> Result<bool> {
        let c = self.cls()?;
        if !self.divides(other) {
            return Ok(false);
        }
        Ok(self.exps[c..] == other.exps[c..])
    }

    /// True when every variable occurring in `self` has index at most `k`.
    pub fn uses_only_vars_up_to(&self, k: usize) -> bool {
        self.exps[k.min(self.arity())..].iter().all(|&e| e == 0)
    }

    /// Support of the monomial.
    pub fn support(&self) -> VarSet {
        VarSet::from_sorted(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }

    /// Comparison used for the P-ordering inside one class: exponent vectors
    /// compared starting from the last variable.
    pub fn cmp_from_last(&self, other: &Monomial) -> std::cmp::Ordering {
        self.exps.iter().rev().cmp(other.exps.iter().rev())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Ring::new(self.arity()).format(self))
    }
}

/// A set of variable indices, kept sorted. Doubles as the squarefree monomial
/// with that support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VarSet {
    members: Vec<usize>,
}

impl VarSet {
    pub fn empty() -> VarSet {
        VarSet {
            members: Vec::new(),
        }
    }

    pub fn from_sorted(members: Vec<usize>) -> VarSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VarSet { members }
    }

    pub fn from_iter_unsorted(it: impl IntoIterator<Item = usize>) -> VarSet {
        let mut members: Vec<usize> = it.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VarSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn min_var(&self) -> Option<usize> {
        self.members.first().copied()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.members.last().copied()
    }

    pub fn without(&self, i: usize) -> VarSet {
        VarSet {
            members: self.members.iter().copied().filter(|&j| j != i).collect(),
        }
    }

    pub fn with(&self, i: usize) -> VarSet {
        VarSet::from_iter_unsorted(self.members.iter().copied().chain(Some(i)))
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    /// All subsets of size `k`, in lexicographic order of their sorted members.
    pub fn subsets_of_size(&self, k: usize) -> Vec<VarSet> {
        use itertools::Itertools;
        self.members
            .iter()
            .copied()
            .combinations(k)
            .map(VarSet::from_sorted)
            .collect()
    }
}

/// Free-function form of [`Monomial::cls`].
pub fn cls(m: &Monomial) -> Result<usize> {
    m.cls()
}

/// Free-function form of [`Monomial::multiplicative_vars`].
pub fn multiplicative_vars(m: &Monomial) -> Result<VarSet> {
    m.multiplicative_vars()
}

/// Free-function form of [`Monomial::involutively_divides`].
pub fn involutively_divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    a.involutively_divides(b)
}

/// Free-function form of [`Monomial::lcm`].
pub fn lcm(a: &Monomial, b: &Monomial) -> Monomial {
    a.lcm(b)
}
