//! Pommaret bases: involutive completion, the decomposition function and the
//! `Delta`/`t` tables.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, VarSet};

/// Entry of the Delta table: `x_k * h_alpha = t * h_target`, with `t` only
/// involving variables multiplicative for `h_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEntry {
    pub target: usize,
    pub t: Monomial,
}

/// A P-ordered Pommaret basis of a quasi-stable monomial ideal.
#[derive(Clone, Debug)]
pub struct PommaretBasis {
    ideal: MonomialIdeal,
    elements: Vec<Monomial>,
    classes: Vec<usize>,
    /// `delta[alpha][k - 1]`, populated exactly for non-multiplicative `k`.
    delta: Vec<Vec<Option<DeltaEntry>>>,
    min_class: usize,
}

/// P-ordering: ascending class, then ascending when exponent vectors are
/// compared from the last variable down.
pub fn p_order(a: &Monomial, b: &Monomial) -> Ordering {
    let ca = a.cls().expect("basis elements are not units");
    let cb = b.cls().expect("basis elements are not units");
    ca.cmp(&cb).then_with(|| a.cmp_from_last(b))
}

fn find_involutive_divisor(elements: &[Monomial], m: &Monomial) -> Option<usize> {
    elements
        .iter()
        .position(|h| h.involutively_divides(m).expect("basis elements are not units"))
}

/// Computes the Pommaret basis of `ideal`.
pub fn pommaret_basis(ideal: &MonomialIdeal) -> Result<PommaretBasis> {
    PommaretBasis::complete(ideal)
}

impl PommaretBasis {
    /// Involutive completion of the minimal generators.
    ///
    /// Each round collects every product `x_k * h` (with `x_k`
    /// non-multiplicative for `h`) that has no involutive divisor yet, adds
    /// those of least degree, and drops elements that became involutively
    /// divisible by a new one. Quasi-stability is checked up front, and a
    /// degree cap guards the loop.
    pub fn complete(ideal: &MonomialIdeal) -> Result<PommaretBasis> {
        if let Some((g, i, j)) = ideal.quasi_stability_witness() {
            return Err(Error::NotQuasiStable(format!(
                "no power of x{j} times {g} / x{i}^{} lies in the ideal",
                g.exp(i)
            )));
        }
        let n = ideal.n();
        let cap: u32 = (1..=n).map(|j| ideal.max_exponent(j)).sum::<u32>() + n as u32;
        let mut elements: Vec<Monomial> = ideal.gens().to_vec();
        loop {
            let mut candidates: Vec<Monomial> = Vec::new();
            for h in &elements {
                let c = h.cls().expect("nonunit");
                for k in c + 1..=n {
                    let m = h.mul_var(k);
                    if find_involutive_divisor(&elements, &m).is_none() {
                        candidates.push(m);
                    }
                }
            }
            if candidates.is_empty() {
                break;
            }
            let low = candidates.iter().map(Monomial::degree).min().expect("nonempty");
            if low > cap {
                return Err(Error::NotQuasiStable(format!(
                    "completion exceeded the degree cap {cap}"
                )));
            }
            candidates.retain(|m| m.degree() == low);
            candidates.sort();
            candidates.dedup();
            elements.retain(|h| {
                !candidates
                    .iter()
                    .any(|c| c.involutively_divides(h).expect("nonunit"))
            });
            elements.extend(candidates);
        }
        Self::from_involutive_set(ideal.clone(), elements)
    }

    /// Builds the basis data for a set already known to be involutively
    /// closed. Fails if some `x_k * h` has no involutive divisor in the set.
    pub fn from_involutive_set(
        ideal: MonomialIdeal,
        mut elements: Vec<Monomial>,
    ) -> Result<PommaretBasis> {
        let n = ideal.n();
        elements.sort_by(p_order);
        elements.dedup();
        let classes: Vec<usize> = elements
            .iter()
            .map(|h| h.cls())
            .collect::<Result<_>>()?;
        let mut delta = Vec::with_capacity(elements.len());
        for (alpha, h) in elements.iter().enumerate() {
            let mut row = vec![None; n];
            for k in classes[alpha] + 1..=n {
                let m = h.mul_var(k);
                let target = find_involutive_divisor(&elements, &m).ok_or_else(|| {
                    Error::NotQuasiStable(format!("x{k}*{h} has no involutive divisor"))
                })?;
                let t = elements[target].quotient_of(&m).expect("divisor divides");
                row[k - 1] = Some(DeltaEntry { target, t });
            }
            delta.push(row);
        }
        let min_class = *classes.iter().min().ok_or(Error::EmptyInput)?;
        Ok(PommaretBasis {
            ideal,
            elements,
            classes,
            delta,
            min_class,
        })
    }

    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, alpha: usize) -> &Monomial {
        &self.elements[alpha]
    }

    pub fn class(&self, alpha: usize) -> usize {
        self.classes[alpha]
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// `d`, the least class among basis elements.
    pub fn min_class(&self) -> usize {
        self.min_class
    }

    pub fn non_multiplicative(&self, alpha: usize) -> VarSet {
        VarSet::from_sorted((self.classes[alpha] + 1..=self.n()).collect())
    }

    /// `beta_0^(k)`: number of basis elements of class `k`, for k = 1..=n.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n()];
        for &c in &self.classes {
            counts[c - 1] += 1;
        }
        counts
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.elements.iter().position(|h| h == m)
    }

    /// The decomposition function `b`: the unique basis element that
    /// involutively divides `m`, or `None` when `m` is outside the ideal.
    pub fn involutive_divisor(&self, m: &Monomial) -> Option<usize> {
        find_involutive_divisor(&self.elements, m)
    }

    /// `(Delta(alpha, k), t_{alpha;k})`.
    pub fn delta_map(&self, alpha: usize, k: usize) -> Result<&DeltaEntry> {
        if k == 0 || k > self.n() {
            return Err(Error::VariableOutOfRange {
                index: k,
                n: self.n(),
            });
        }
        self.delta[alpha][k - 1]
            .as_ref()
            .ok_or(Error::NotNonMultiplicative {
                element: alpha,
                var: k,
            })
    }

    pub fn max_degree(&self) -> u32 {
        self.elements.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Checks `<h_{alpha+1}, ..., h_r> : <h_alpha> = <non-multiplicative
    /// variables of h_alpha>` for every alpha, by direct colon computation.
    pub fn has_linear_quotients(&self) -> bool {
        (0..self.len()).all(|alpha| {
            let h = &self.elements[alpha];
            let colon: Vec<Monomial> = self.elements[alpha + 1..]
                .iter()
                .map(|g| h.gcd(g).quotient_of(g).expect("gcd divides"))
                .collect();
            let nonmult = self.non_multiplicative(alpha);
            // each colon generator must be divisible by a non-multiplicative variable
            let inside = colon
                .iter()
                .all(|q| nonmult.iter().any(|k| q.exp(k) > 0));
            // and each non-multiplicative variable must itself be in the colon
            let spans = nonmult.iter().all(|k| {
                let x = Monomial::var(self.n(), k);
                colon.iter().any(|q| q.divides(&x))
            });
            inside && spans
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(gs: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(gs.iter().map(|e| m(e)).collect()).unwrap()
    }

    #[test]
    fn two_variable_example() {
        let b = pommaret_basis(&ideal(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(
            b.elements(),
            &[m(&[2, 0]), m(&[2, 1]), m(&[2, 2]), m(&[0, 3])]
        );
        assert_eq!(b.classes(), &[1, 1, 1, 2]);
        assert_eq!(b.min_class(), 1);
        assert!(b.has_linear_quotients());
    }

    #[test]
    fn pure_power_of_last_variable() {
        let b = pommaret_basis(&ideal(&[&[0, 0, 3]])).unwrap();
        assert_eq!(b.elements(), &[m(&[0, 0, 3])]);
    }

    #[test]
    fn not_quasi_stable() {
        assert!(matches!(
            pommaret_basis(&ideal(&[&[1, 0]])),
            Err(Error::NotQuasiStable(_))
        ));
    }

    #[test]
    fn decomposition_function() {
        let b = pommaret_basis(&ideal(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(b.involutive_divisor(&m(&[2, 5])), Some(3));
        assert_eq!(b.involutive_divisor(&m(&[3, 0])), Some(0));
        assert_eq!(b.involutive_divisor(&m(&[1, 1])), None);
        // uniqueness by brute force
        let hits = b
            .elements()
            .iter()
            .filter(|h| h.involutively_divides(&m(&[2, 5])).unwrap())
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn delta_examples() {
        let b = pommaret_basis(&ideal(&[&[2, 0], &[0, 3]])).unwrap();
        let e = b.delta_map(0, 2).unwrap();
        assert_eq!((e.target, &e.t), (1, &m(&[0, 0])));
        let e = b.delta_map(2, 2).unwrap();
        assert_eq!((e.target, &e.t), (3, &m(&[2, 0])));
        assert_eq!(
            b.delta_map(0, 1),
            Err(Error::NotNonMultiplicative { element: 0, var: 1 })
        );
        assert!(b.delta_map(3, 2).is_err());
    }

    #[test]
    fn descending_lex_breaks_linear_quotients() {
        // Guards the P-ordering choice: the reverse direction inside a class
        // fails on the 14-element example.
        let i = ideal(&[&[2, 0, 0], &[0, 4, 0], &[0, 2, 2], &[0, 0, 3]]);
        let b = pommaret_basis(&i).unwrap();
        assert!(b.has_linear_quotients());
        let mut els = b.elements().to_vec();
        els.sort_by(|a, b| {
            a.cls()
                .unwrap()
                .cmp(&b.cls().unwrap())
                .then_with(|| b.cmp(a))
        });
        let colon_fails = (0..els.len()).any(|alpha| {
            let h = &els[alpha];
            els[alpha + 1..]
                .iter()
                .any(|g| h.gcd(g).quotient_of(g).unwrap().is_one())
        });
        assert!(colon_fails);
    }
}
