//! Exact ranks of sparse integer matrices by fraction-free elimination.

use std::collections::HashMap;

use crate::integer::Integer;

/// A sparse integer vector, sorted by index, without zeros.
pub type SparseVec = Vec<(usize, Integer)>;

fn content(v: &SparseVec) -> Integer {
    let mut g = Integer::ZERO;
    for (_, x) in v {
        g = g.gcd(x);
        if g.is_unit() {
            break;
        }
    }
    g
}

/// `a * x - b * y`, merged by index.
fn combine(a: &Integer, x: &SparseVec, b: &Integer, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) => p.0.cmp(&q.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match take {
            std::cmp::Ordering::Less => {
                out.push((x[i].0, a * &x[i].1));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((y[j].0, -(b * &y[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = &(a * &x[i].1) - &(b * &y[j].1);
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Rank over the rationals of the matrix whose rows are `rows`.
///
/// Rows are reduced one at a time against the pivots found so far; each
/// combination is fraction-free and the result is divided by its content.
/// Rows with fewer non-unit entries are processed first, which keeps unit
/// pivots in front.
pub fn sparse_rank(mut rows: Vec<SparseVec>) -> usize {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| (r.iter().filter(|(_, x)| !x.is_unit()).count(), r.len()));
    let mut pivots: HashMap<usize, SparseVec> = HashMap::new();
    for mut r in rows {
        while let Some((lead, lc)) = r.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                let c = content(&r);
                if !c.is_unit() {
                    for (_, x) in r.iter_mut() {
                        *x = x.div_exact(&c);
                    }
                }
                pivots.insert(lead, r);
                break;
            };
            let pc = &p[0].1;
            let g = pc.gcd(&lc);
            let a = pc.div_exact(&g);
            let b = lc.div_exact(&g);
            r = combine(&a, &r, &b, p);
            let c = content(&r);
            if !c.is_zero() && !c.is_unit() {
                for (_, x) in r.iter_mut() {
                    *x = x.div_exact(&c);
                }
            }
        }
    }
    pivots.len()
}
