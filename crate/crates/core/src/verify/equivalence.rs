//! Deciding whether two complexes agree up to reordering generators and
//! rescaling them by signs.
//!
//! Rescaling a generator of `F_i` by `-1` flips its column in `d_i` and its
//! row in `d_{i+1}`, so signs are solved degree by degree. Degree-0 signs
//! are pinned to `+1` by the augmentation, which sends every generator to its
//! multidegree.

use std::collections::HashMap;

use crate::complex::{Entry, FreeComplex};
use crate::integer::Integer;
use crate::monomial::Monomial;

/// Generator maps `maps[i][k]` (index in `b` of generator `k` of `a` in
/// degree `i`) together with the generator signs that make them agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub maps: Vec<Vec<usize>>,
    pub signs: Vec<Vec<i64>>,
}

fn unit_ratio(x: &Integer, y: &Integer) -> Option<i64> {
    if x == y {
        Some(1)
    } else if *x == -y {
        Some(-1)
    } else {
        None
    }
}

/// Sign `s` with `a_col = s * (row-rescaled b_col)`, if one exists.
fn column_sign(
    a_col: &[Entry],
    b_col: &[Entry],
    row_map: &[usize],
    row_signs: &[i64],
) -> Option<i64> {
    if a_col.len() != b_col.len() {
        return None;
    }
    let by_row: HashMap<usize, &Entry> = b_col.iter().map(|e| (e.row, e)).collect();
    let mut sign = None;
    for e in a_col {
        let other = by_row.get(&row_map[e.row])?;
        if other.mono != e.mono {
            return None;
        }
        let s = unit_ratio(&e.coeff, &other.coeff)? * row_signs[e.row];
        match sign {
            None => sign = Some(s),
            Some(t) if t != s => return None,
            _ => {}
        }
    }
    Some(sign.unwrap_or(1))
}

/// Checks `a` against `b` under fixed generator maps and solves for the
/// signs. `None` if no sign assignment works.
pub fn sign_equivalence(a: &FreeComplex, b: &FreeComplex, maps: &[Vec<usize>]) -> Option<Vec<Vec<i64>>> {
    if a.ranks() != b.ranks() || maps.len() != a.modules().len() {
        return None;
    }
    for (i, map) in maps.iter().enumerate() {
        if map.len() != a.rank(i) {
            return None;
        }
        let mut seen = vec![false; b.rank(i)];
        for (k, &t) in map.iter().enumerate() {
            if t >= seen.len() || seen[t] || a.module(i)[k].multidegree != b.module(i)[t].multidegree {
                return None;
            }
            seen[t] = true;
        }
    }
    let mut signs = vec![vec![1; a.rank(0)]];
    for i in 1..=a.length() {
        let (da, db) = (a.differential(i), b.differential(i));
        let mut level = Vec::with_capacity(a.rank(i));
        for c in 0..a.rank(i) {
            level.push(column_sign(
                da.column(c),
                db.column(maps[i][c]),
                &maps[i - 1],
                &signs[i - 1],
            )?);
        }
        signs.push(level);
    }
    Some(signs)
}

struct Search<'a> {
    a: &'a FreeComplex,
    b: &'a FreeComplex,
    budget: usize,
    maps: Vec<Vec<usize>>,
    signs: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn degree(&mut self, i: usize) -> bool {
        if i == self.a.modules().len() {
            return true;
        }
        let mut buckets: HashMap<&Monomial, Vec<usize>> = HashMap::new();
        for (t, g) in self.b.module(i).iter().enumerate() {
            buckets.entry(&g.multidegree).or_default().push(t);
        }
        // candidate targets with the sign each would force
        let mut options: Vec<Vec<(usize, i64)>> = Vec::with_capacity(self.a.rank(i));
        for (k, g) in self.a.module(i).iter().enumerate() {
            let Some(bucket) = buckets.get(&g.multidegree) else {
                return false;
            };
            let opts: Vec<(usize, i64)> = bucket
                .iter()
                .filter_map(|&t| {
                    if i == 0 {
                        return Some((t, 1));
                    }
                    column_sign(
                        self.a.differential(i).column(k),
                        self.b.differential(i).column(t),
                        &self.maps[i - 1],
                        &self.signs[i - 1],
                    )
                    .map(|s| (t, s))
                })
                .collect();
            if opts.is_empty() {
                return false;
            }
            options.push(opts);
        }
        let mut map = vec![usize::MAX; options.len()];
        let mut sign = vec![1; options.len()];
        let mut used = vec![false; self.b.rank(i)];
        self.assign(i, 0, &options, &mut map, &mut sign, &mut used)
    }

    fn assign(
        &mut self,
        i: usize,
        k: usize,
        options: &[Vec<(usize, i64)>],
        map: &mut Vec<usize>,
        sign: &mut Vec<i64>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == options.len() {
            self.maps.push(map.clone());
            self.signs.push(sign.clone());
            if self.degree(i + 1) {
                return true;
            }
            self.maps.pop();
            self.signs.pop();
            return false;
        }
        for &(t, s) in &options[k] {
            if used[t] {
                continue;
            }
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            used[t] = true;
            map[k] = t;
            sign[k] = s;
            if self.assign(i, k + 1, options, map, sign, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }
}

/// Searches for generator bijections (within equal multidegrees) and signs
/// making `a` and `b` agree. `budget` bounds the number of tentative
/// assignments explored.
pub fn find_equivalence(a: &FreeComplex, b: &FreeComplex, budget: usize) -> Option<Equivalence> {
    if a.ranks() != b.ranks() {
        return None;
    }
    let mut search = Search {
        a,
        b,
        budget,
        maps: Vec::new(),
        signs: Vec::new(),
    };
    if search.degree(0) {
        Some(Equivalence {
            maps: search.maps,
            signs: search.signs,
        })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::pommaret_basis;
    use crate::ideal::MonomialIdeal;
    use crate::resolution::{ps_complex, taylor_complex};

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn identity(f: &FreeComplex) -> Vec<Vec<usize>> {
        f.ranks().iter().map(|&r| (0..r).collect()).collect()
    }

    #[test]
    fn self_equivalence() {
        let i = MonomialIdeal::new(vec![m(&[2, 0, 0]), m(&[0, 4, 0]), m(&[0, 2, 2]), m(&[0, 0, 3])])
            .unwrap();
        let f = ps_complex(&pommaret_basis(&i).unwrap());
        let signs = sign_equivalence(&f, &f, &identity(&f)).unwrap();
        assert!(signs.iter().flatten().all(|&s| s == 1));
        assert!(find_equivalence(&f, &f, 100_000).is_some());
    }

    #[test]
    fn column_flip_is_detected() {
        let i = MonomialIdeal::new(vec![m(&[2, 0, 1]), m(&[0, 1, 0]), m(&[1, 0, 2])]).unwrap();
        let f = taylor_complex(&i);
        let modules = f.modules().to_vec();
        let mut ds = f.differentials().to_vec();
        // flip generator 0 of F_1: its column in d_1 and its row in d_2
        for e in ds[0].column_mut(0) {
            e.coeff = -&e.coeff;
        }
        for c in 0..ds[1].ncols() {
            for e in ds[1].column_mut(c) {
                if e.row == 0 {
                    e.coeff = -&e.coeff;
                }
            }
        }
        let g = FreeComplex::new(
            f.ideal().clone(),
            f.elements().to_vec(),
            f.provenance().clone(),
            modules,
            ds,
        )
        .unwrap();
        let signs = sign_equivalence(&f, &g, &identity(&f)).unwrap();
        assert_eq!(signs[1][0], -1);
        assert!(signs[1][1..].iter().all(|&s| s == 1));
        assert!(signs[2].iter().all(|&s| s == 1));
    }

    #[test]
    fn flipping_only_a_column_breaks_equivalence() {
        // a lone column flip in d_1 without the matching row flip in d_2
        let i = MonomialIdeal::new(vec![m(&[2, 0, 1]), m(&[0, 1, 0]), m(&[1, 0, 2])]).unwrap();
        let f = taylor_complex(&i);
        let mut ds = f.differentials().to_vec();
        for e in ds[0].column_mut(0) {
            e.coeff = -&e.coeff;
        }
        let g = FreeComplex::new(
            f.ideal().clone(),
            f.elements().to_vec(),
            f.provenance().clone(),
            f.modules().to_vec(),
            ds,
        )
        .unwrap();
        assert!(sign_equivalence(&f, &g, &identity(&f)).is_none());
    }
}
