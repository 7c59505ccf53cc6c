//! Explicit resolutions: Pommaret-Seiler, Eliahou-Kervaire and Taylor.

use std::collections::HashMap;

use itertools::Itertools;

use crate::basis::{p_order, PommaretBasis};
use crate::complex::{Entry, FreeComplex, GenLabel, Generator, Provenance, SparseMatrix, Symbol};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::integer::Integer;
use crate::monomial::{Monomial, VarSet};

/// Generators `[h, u]` of homological degree `i`: `|u| = i` and `u` made of
/// non-multiplicative variables of `h`. Ordered by basis position, then `u`
/// lexicographically.
pub fn ps_generators(basis: &PommaretBasis, i: usize) -> Result<Vec<Symbol>> {
    let max = basis.n() - basis.min_class();
    if i > max {
        return Err(Error::DegreeOutOfRange { degree: i, max });
    }
    let mut out = Vec::new();
    for alpha in 0..basis.len() {
        for u in basis.non_multiplicative(alpha).subsets_of_size(i) {
            out.push(Symbol { h: alpha, u });
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// `r_i = sum_{k=1}^{n-i} C(n-k, i) * beta_0^(k)`, from the class counts alone.
pub fn ps_rank_formula(basis: &PommaretBasis, i: usize) -> usize {
    let n = basis.n();
    let counts = basis.class_counts();
    (1..=n.saturating_sub(i))
        .map(|k| binomial(n - k, i) * counts[k - 1])
        .sum()
}

/// `sgn(x_i, u)`: +1 iff `|{ j in u : j >= i }|` is odd.
pub fn ek_sgn(i: usize, u: &VarSet) -> i64 {
    if u.iter().filter(|&j| j >= i).count() % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Shared construction behind the Pommaret-Seiler and Eliahou-Kervaire
/// complexes. For `u = u_1 < ... < u_i`,
///
/// `d[h, u] = sum_j sign(j, u) * ( u_j [h, u/u_j] - t_{h;u_j} [h_Delta, u/u_j] )`
///
/// where a term whose symbol is not admissible (some variable of `u/u_j`
/// multiplicative for `h_Delta`) vanishes.
fn symbol_complex(
    basis: &PommaretBasis,
    provenance: Provenance,
    sign: impl Fn(usize, &VarSet) -> i64,
) -> FreeComplex {
    let n = basis.n();
    let top = n - basis.min_class();
    let symbols: Vec<Vec<Symbol>> = (0..=top)
        .map(|i| ps_generators(basis, i).expect("degree in range"))
        .collect();
    let index: Vec<HashMap<&Symbol, usize>> = symbols
        .iter()
        .map(|level| level.iter().enumerate().map(|(k, s)| (s, k)).collect())
        .collect();
    let modules: Vec<Vec<Generator>> = symbols
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|s| Generator {
                    label: GenLabel::Symbol(s.clone()),
                    multidegree: basis.element(s.h).mul(&Monomial::from_varset(n, &s.u)),
                })
                .collect()
        })
        .collect();
    let mut differentials = Vec::with_capacity(top);
    for i in 1..=top {
        let cols = symbols[i]
            .iter()
            .map(|s| {
                let mut col = Vec::with_capacity(2 * i);
                for (pos, uj) in s.u.iter().enumerate() {
                    let sg = sign(pos + 1, &s.u);
                    let face = s.u.without(uj);
                    let own = Symbol { h: s.h, u: face.clone() };
                    col.push(Entry {
                        row: index[i - 1][&own],
                        coeff: Integer::from(sg),
                        mono: Monomial::var(n, uj),
                    });
                    let d = basis.delta_map(s.h, uj).expect("u_j is non-multiplicative");
                    let admissible = face.min_var().is_none_or(|m| m > basis.class(d.target));
                    if admissible {
                        let other = Symbol { h: d.target, u: face };
                        col.push(Entry {
                            row: index[i - 1][&other],
                            coeff: Integer::from(-sg),
                            mono: d.t.clone(),
                        });
                    }
                }
                col
            })
            .collect();
        differentials.push(SparseMatrix::from_columns(symbols[i - 1].len(), cols));
    }
    FreeComplex::new(
        basis.ideal().clone(),
        basis.elements().to_vec(),
        provenance,
        modules,
        differentials,
    )
    .expect("shapes are consistent by construction")
}

/// The Pommaret-Seiler resolution, with signs `(-1)^(i-j)`.
pub fn ps_complex(basis: &PommaretBasis) -> FreeComplex {
    symbol_complex(basis, Provenance::PommaretSeiler, |j, u| {
        if (u.len() - j) % 2 == 0 {
            1
        } else {
            -1
        }
    })
}

/// The minimal generators of a stable ideal, viewed as its Pommaret basis.
pub fn stable_basis(ideal: &MonomialIdeal) -> Result<PommaretBasis> {
    if !ideal.is_stable() {
        return Err(Error::NotStable);
    }
    PommaretBasis::from_involutive_set(ideal.clone(), ideal.gens().to_vec())
}

/// `(beg(m), end(m))`: the unique minimal generator `g` with `m = g * h` and
/// every variable of `h` of index at most `min(g)`.
pub fn decompose_beg_end(ideal: &MonomialIdeal, m: &Monomial) -> Result<(Monomial, Monomial)> {
    let basis = stable_basis(ideal)?;
    let g = basis.involutive_divisor(m).ok_or(Error::NotMember)?;
    let beg = basis.element(g).clone();
    let end = beg.quotient_of(m).expect("involutive divisor divides");
    Ok((beg, end))
}

/// The Eliahou-Kervaire resolution of a stable ideal.
pub fn ek_complex(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    let basis = stable_basis(ideal)?;
    Ok(symbol_complex(&basis, Provenance::EliahouKervaire, |j, u| {
        ek_sgn(u.as_slice()[j - 1], u)
    }))
}

/// The Taylor resolution: the full simplex on the minimal generators, faces
/// labelled by lcm, with simplicial signs. Vertices are taken in P-order.
pub fn taylor_complex(ideal: &MonomialIdeal) -> FreeComplex {
    let mut gens = ideal.gens().to_vec();
    gens.sort_by(p_order);
    let gens = &gens[..];
    let r = gens.len();
    let faces: Vec<Vec<Vec<usize>>> = (1..=r).map(|k| (0..r).combinations(k).collect()).collect();
    let label = |f: &[usize]| {
        f.iter()
            .map(|&v| gens[v].clone())
            .reduce(|a, b| a.lcm(&b))
            .expect("faces are nonempty")
    };
    let modules: Vec<Vec<Generator>> = faces
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|f| Generator {
                    label: GenLabel::Face(f.clone()),
                    multidegree: label(f),
                })
                .collect()
        })
        .collect();
    let index: Vec<HashMap<&Vec<usize>, usize>> = faces
        .iter()
        .map(|level| level.iter().enumerate().map(|(k, f)| (f, k)).collect())
        .collect();
    let mut differentials = Vec::new();
    for i in 1..r {
        let cols = faces[i]
            .iter()
            .enumerate()
            .map(|(c, f)| {
                let md = &modules[i][c].multidegree;
                (0..f.len())
                    .map(|m| {
                        let mut facet = f.clone();
                        facet.remove(m);
                        let row = index[i - 1][&facet];
                        Entry {
                            row,
                            coeff: Integer::from(if m % 2 == 0 { 1 } else { -1 }),
                            mono: modules[i - 1][row]
                                .multidegree
                                .quotient_of(md)
                                .expect("facet label divides face label"),
                        }
                    })
                    .collect()
            })
            .collect();
        differentials.push(SparseMatrix::from_columns(faces[i - 1].len(), cols));
    }
    FreeComplex::new(
        ideal.clone(),
        gens.to_vec(),
        Provenance::Taylor,
        modules,
        differentials,
    )
    .expect("shapes are consistent by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::pommaret_basis;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(gs: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(gs.iter().map(|e| m(e)).collect()).unwrap()
    }

    #[test]
    fn sgn_examples() {
        let u = VarSet::from_sorted(vec![2, 3]);
        assert_eq!(ek_sgn(2, &u), -1);
        assert_eq!(ek_sgn(3, &u), 1);
        assert_eq!(ek_sgn(4, &VarSet::from_sorted(vec![4])), 1);
    }

    #[test]
    fn ranks_two_variables() {
        let b = pommaret_basis(&ideal(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(ps_generators(&b, 0).unwrap().len(), 4);
        assert_eq!(ps_generators(&b, 1).unwrap().len(), 3);
        assert_eq!(
            ps_generators(&b, 2),
            Err(Error::DegreeOutOfRange { degree: 2, max: 1 })
        );
        assert_eq!(ps_rank_formula(&b, 0), 4);
        assert_eq!(ps_rank_formula(&b, 1), 3);
    }

    #[test]
    fn single_generator_has_no_syzygies() {
        let b = pommaret_basis(&ideal(&[&[0, 0, 5]])).unwrap();
        assert_eq!(ps_complex(&b).ranks(), vec![1]);
        for i in 1..=3 {
            assert_eq!(ps_rank_formula(&b, i), 0);
        }
        assert_eq!(taylor_complex(&ideal(&[&[1, 2]])).ranks(), vec![1]);
    }

    #[test]
    fn beg_end() {
        let i = ideal(&[&[0, 1], &[2, 0]]);
        assert_eq!(decompose_beg_end(&i, &m(&[2, 1])).unwrap(), (m(&[0, 1]), m(&[2, 0])));
        assert_eq!(decompose_beg_end(&i, &m(&[2, 0])).unwrap(), (m(&[2, 0]), m(&[0, 0])));
        assert_eq!(decompose_beg_end(&i, &m(&[1, 0])), Err(Error::NotMember));
        assert_eq!(
            decompose_beg_end(&ideal(&[&[2, 0], &[0, 3]]), &m(&[2, 0])),
            Err(Error::NotStable)
        );
    }

    #[test]
    fn ek_small_stable() {
        // d[x1^2, x2] = x2 [x1^2] - x1^2 [x2]
        let i = ideal(&[&[0, 1], &[2, 0]]);
        let ek = ek_complex(&i).unwrap();
        assert_eq!(ek.ranks(), vec![2, 1]);
        let d = ek.differential(1);
        let x1sq = ek.elements().iter().position(|e| e == &m(&[2, 0])).unwrap();
        let x2 = ek.elements().iter().position(|e| e == &m(&[0, 1])).unwrap();
        let row_of = |h: usize| {
            ek.find(0, &GenLabel::Symbol(Symbol { h, u: VarSet::empty() })).unwrap()
        };
        let col = d.column(0);
        let at = |row: usize| col.iter().find(|e| e.row == row).unwrap();
        assert_eq!(at(row_of(x1sq)).coeff, Integer::ONE);
        assert_eq!(at(row_of(x1sq)).mono, m(&[0, 1]));
        assert_eq!(at(row_of(x2)).coeff, Integer::MINUS_ONE);
        assert_eq!(at(row_of(x2)).mono, m(&[2, 0]));
        assert_eq!(ek_complex(&ideal(&[&[2, 0], &[0, 3]])).err(), Some(Error::NotStable));
    }

    #[test]
    fn taylor_two_generators() {
        let t = taylor_complex(&ideal(&[&[2, 0], &[0, 3]]));
        assert_eq!(t.ranks(), vec![2, 1]);
        let col = t.differential(1).column(0);
        let x1sq = t.find(0, &GenLabel::Face(vec![t.elements().iter().position(|e| e == &m(&[2, 0])).unwrap()])).unwrap();
        let entry = col.iter().find(|e| e.row == x1sq).unwrap();
        // the entry on [x1^2] is -x2^3, the entry on [x2^3] is +x1^2
        assert_eq!((entry.coeff.clone(), entry.mono.clone()), (Integer::MINUS_ONE, m(&[0, 3])));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
