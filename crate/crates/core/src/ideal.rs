//! Monomial ideals given by their minimal generators, with the stability and
//! quasi-stability criteria.

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A monomial ideal, stored as its canonically sorted minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Divisibility-minimal subset of `ms`, canonically sorted.
pub fn minimal_generators(ms: &[Monomial]) -> Result<MonomialIdeal> {
    MonomialIdeal::new(ms.to_vec())
}

impl MonomialIdeal {
    pub fn new(mut ms: Vec<Monomial>) -> Result<MonomialIdeal> {
        let n = ms.first().ok_or(Error::EmptyInput)?.arity();
        for m in &ms {
            if m.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: m.arity(),
                });
            }
            if m.is_one() {
                return Err(Error::UnitGenerator);
            }
        }
        // Sorting by degree first guarantees every divisor precedes its multiples.
        ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        ms.dedup();
        let mut gens: Vec<Monomial> = Vec::with_capacity(ms.len());
        for m in ms {
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        gens.sort();
        Ok(MonomialIdeal { n, gens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Checks the stable exchange `g * x_i / x_cls(g)` for every minimal
    /// generator `g` and every `i > cls(g)`. The exchange property is
    /// inherited by multiples, so generators suffice.
    pub fn is_stable(&self) -> bool {
        self.gens.iter().all(|g| {
            let c = g.cls().expect("generators are not units");
            let base = g.div_var(c).expect("x_cls divides g");
            (c + 1..=self.n).all(|i| self.contains(&base.mul_var(i)))
        })
    }

    /// The combinatorial criterion: for every generator `g`, every `i` with
    /// `x_i | g` and every `j > i`, some `x_j^t * g / x_i^{g_i}` lies in the
    /// ideal. Membership is monotone in `t`, and once `t` exceeds every
    /// generator's exponent of `x_j` no larger `t` can help, so testing that
    /// bound decides the search.
    pub fn is_quasi_stable(&self) -> bool {
        self.quasi_stability_witness().is_none()
    }

    /// A violating triple `(generator, i, j)` if the ideal is not quasi-stable.
    pub fn quasi_stability_witness(&self) -> Option<(Monomial, usize, usize)> {
        for g in &self.gens {
            for i in 1..=self.n {
                if g.exp(i) == 0 {
                    continue;
                }
                let mut stripped = g.exps().to_vec();
                stripped[i - 1] = 0;
                for j in i + 1..=self.n {
                    let t = self.max_exponent(j) + 1;
                    let mut e = stripped.clone();
                    e[j - 1] += t;
                    if !self.contains(&Monomial::new(e)) {
                        return Some((g.clone(), i, j));
                    }
                }
            }
        }
        None
    }

    /// Largest exponent of `x_j` among the minimal generators.
    pub fn max_exponent(&self, j: usize) -> u32 {
        self.gens.iter().map(|g| g.exp(j)).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
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
    fn minimalization() {
        let i = ideal(&[&[2, 0], &[2, 1], &[0, 3]]);
        assert_eq!(i.gens(), &[m(&[0, 3]), m(&[2, 0])]);
        let again = MonomialIdeal::new(i.gens().to_vec()).unwrap();
        assert_eq!(again, i);
        let both = ideal(&[&[2, 1], &[1, 2]]);
        assert_eq!(both.gens().len(), 2);
    }

    #[test]
    fn minimalization_errors() {
        assert_eq!(MonomialIdeal::new(vec![]), Err(Error::EmptyInput));
        assert_eq!(
            MonomialIdeal::new(vec![m(&[0, 0])]),
            Err(Error::UnitGenerator)
        );
        assert!(matches!(
            MonomialIdeal::new(vec![m(&[1, 0]), m(&[1])]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn membership() {
        let i = ideal(&[&[2, 0], &[0, 3]]);
        assert!(i.contains(&m(&[2, 1])));
        assert!(!i.contains(&m(&[1, 1])));
        assert!(!i.contains(&m(&[0, 0])));
    }

    #[test]
    fn stability() {
        assert!(!ideal(&[&[2, 0], &[0, 3]]).is_stable());
        assert!(ideal(&[&[0, 1], &[2, 0]]).is_stable());
        assert!(ideal(&[&[0, 0, 1]]).is_stable());
    }

    #[test]
    fn quasi_stability() {
        assert!(ideal(&[&[2, 0], &[0, 3]]).is_quasi_stable());
        assert!(!ideal(&[&[1, 0]]).is_quasi_stable());
        assert!(ideal(&[&[2, 0, 0], &[0, 4, 0], &[0, 2, 2], &[0, 0, 3]]).is_quasi_stable());
        assert_eq!(
            ideal(&[&[1, 0]]).quasi_stability_witness(),
            Some((m(&[1, 0]), 1, 2))
        );
    }
}
