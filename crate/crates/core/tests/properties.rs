//! Structural properties checked against brute-force oracles written
//! independently of the library.

mod common;

use std::collections::HashMap;
use std::time::Instant;

use common::*;
use pommaret_core::verify::find_equivalence;
use pommaret_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every exponent vector `e` with `e <= bound` componentwise.
fn box_points(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn in_ideal(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

fn exps(ms: &[Monomial]) -> Vec<Vec<u32>> {
    ms.iter().map(|m| m.exps().to_vec()).collect()
}

/// Smallest index with a nonzero exponent, 1-based.
fn class_of(m: &[u32]) -> usize {
    m.iter().position(|&e| e > 0).unwrap() + 1
}

fn sample_ideals() -> Vec<MonomialIdeal> {
    let mut out = vec![
        worked_example(),
        ideal(&["x1", "x2"], &["x1^2", "x2^3"]),
        ideal(&XYZ, &["x", "y", "z"]),
        ideal(&XYZ, &["x^3", "x*y", "y^2", "y*z", "z^2"]),
    ];
    for k in 0..40u64 {
        let n = 2 + (k % 3) as usize;
        out.push(random_quasi_stable(100 + k, n, 1 + (k as u32 % 4), (k % 5) as usize));
    }
    for k in 0..10u64 {
        out.push(random_stable(300 + k, 2 + (k % 3) as usize, 3, 2));
    }
    out
}

fn bound_for(i: &MonomialIdeal, extra: u32) -> Vec<u32> {
    (1..=i.n()).map(|j| i.max_exponent(j) + extra).collect()
}

#[test]
fn cones_are_disjoint_and_cover_the_ideal() {
    for i in sample_ideals() {
        let b = pommaret_basis(&i).unwrap();
        let gens = exps(i.gens());
        let elems = exps(b.elements());
        for m in box_points(&bound_for(&i, 2)) {
            let owners = elems
                .iter()
                .filter(|h| {
                    let c = class_of(h);
                    divides(h, &m) && (c..m.len()).all(|k| m[k] == h[k])
                })
                .count();
            let expected = usize::from(in_ideal(&gens, &m));
            assert_eq!(owners, expected, "{m:?} in {:?}", i.gens());
        }
    }
}

/// For `x_i^s | m` and `j > i`, some `x_j^t * m / x_i^s` lies in `I`,
/// checked over every monomial of `I` in a box around the generators.
fn quasi_stable_oracle(i: &MonomialIdeal) -> bool {
    let gens = exps(i.gens());
    let n = i.n();
    let max_t = i.max_degree() + 1;
    for m in box_points(&bound_for(i, 1)) {
        if !in_ideal(&gens, &m) {
            continue;
        }
        for a in 0..n {
            for s in 1..=m[a] {
                for b in a + 1..n {
                    let ok = (0..=max_t).any(|t| {
                        let mut q = m.clone();
                        q[a] -= s;
                        q[b] += t;
                        in_ideal(&gens, &q)
                    });
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn quasi_stability_matches_oracle_and_completion() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = [0usize; 2];
    for _ in 0..300 {
        let n = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=4);
        let gens: Vec<Monomial> = (0..count)
            .map(|_| {
                let mut e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
                if e.iter().all(|&x| x == 0) {
                    e[n - 1] = 1;
                }
                Monomial::new(e)
            })
            .collect();
        let i = MonomialIdeal::new(gens).unwrap();
        let oracle = quasi_stable_oracle(&i);
        assert_eq!(i.is_quasi_stable(), oracle, "{:?}", i.gens());
        match pommaret_basis(&i) {
            Ok(b) => {
                assert!(oracle);
                assert!(b.len() >= i.gens().len());
            }
            Err(Error::NotQuasiStable(_)) => assert!(!oracle),
            Err(e) => panic!("{e}"),
        }
        seen[usize::from(oracle)] += 1;
    }
    assert!(seen[0] > 20 && seen[1] > 20, "{seen:?}");
}

fn stable_oracle(i: &MonomialIdeal) -> bool {
    let gens = exps(i.gens());
    gens.iter().all(|g| {
        let c = class_of(g);
        (c + 1..=g.len()).all(|j| {
            let mut q = g.clone();
            q[c - 1] -= 1;
            q[j - 1] += 1;
            in_ideal(&gens, &q)
        })
    })
}

#[test]
fn stable_iff_basis_is_minimal_generators() {
    for i in sample_ideals() {
        let b = pommaret_basis(&i).unwrap();
        let same = b.len() == i.gens().len();
        assert_eq!(same, stable_oracle(&i), "{:?}", i.gens());
        assert_eq!(i.is_stable(), stable_oracle(&i));
    }
}

#[test]
fn linear_quotients_in_p_order() {
    for i in sample_ideals() {
        let b = pommaret_basis(&i).unwrap();
        let elems = exps(b.elements());
        for (a, h) in elems.iter().enumerate() {
            let later = &elems[a + 1..];
            let c = class_of(h);
            for j in c + 1..=h.len() {
                let mut q = h.clone();
                q[j - 1] += 1;
                assert!(in_ideal(later, &q), "x{j} * {h:?} not in later span");
            }
            // No monomial in the multiplicative variables alone lands in
            // the later span.
            let mut bound = vec![0u32; h.len()];
            for slot in bound.iter_mut().take(c) {
                *slot = 3;
            }
            for m in box_points(&bound) {
                let q: Vec<u32> = h.iter().zip(&m).map(|(x, y)| x + y).collect();
                assert!(!in_ideal(later, &q), "{m:?} * {h:?}");
            }
        }
        assert!(b.has_linear_quotients());
    }
}

#[test]
fn delta_map_is_regular() {
    for i in sample_ideals() {
        let b = pommaret_basis(&i).unwrap();
        for a in 0..b.len() {
            for k in b.non_multiplicative(a).iter() {
                let d = b.delta_map(a, k).unwrap();
                let h = b.element(a);
                assert_eq!(d.t.mul(b.element(d.target)), h.mul_var(k));
                assert!(d.t.uses_only_vars_up_to(b.class(d.target)));
                assert!(b.class(d.target) >= b.class(a));
                assert!(d.target > a, "Delta must follow in P-order");
            }
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

#[test]
fn ranks_length_and_p_graph() {
    for i in sample_ideals() {
        let b = pommaret_basis(&i).unwrap();
        let f = ps_complex(&b);
        let n = i.n();
        let d = (0..b.len()).map(|a| b.class(a)).min().unwrap();
        assert_eq!(f.length(), n - d);
        for k in 0..=f.length() {
            let want: usize = (0..b.len()).map(|a| binom(n - b.class(a), k)).sum();
            assert_eq!(f.rank(k), want);
            assert_eq!(ps_rank_formula(&b, k), want);
            assert_eq!(ps_generators(&b, k).unwrap().len(), want);
        }
        assert_eq!(build_p_graph(&b).edges().len(), f.rank(1));
    }
}

/// `d_{k} d_{k+1} = 0`, `d_0 d_1 = 0` through the augmentation, and every
/// entry has the degree forced by the generator multidegrees.
fn assert_complex(f: &FreeComplex) {
    for k in 1..=f.length() {
        let d = f.differential(k);
        for (c, col) in d.columns().iter().enumerate() {
            for e in col {
                let row_deg = &f.module(k - 1)[e.row].multidegree;
                assert_eq!(&row_deg.mul(&e.mono), &f.module(k)[c].multidegree);
            }
        }
    }
    for k in 1..=f.length() {
        for (c, col) in f.differential(k).columns().iter().enumerate() {
            let mut acc: HashMap<(usize, Monomial), i128> = HashMap::new();
            for e in col {
                let a = e.coeff.to_i64().unwrap() as i128;
                if k == 1 {
                    let key = (0, f.module(0)[e.row].multidegree.mul(&e.mono));
                    *acc.entry(key).or_default() += a;
                } else {
                    for e2 in f.differential(k - 1).column(e.row) {
                        let key = (e2.row, e2.mono.mul(&e.mono));
                        *acc.entry(key).or_default() += a * e2.coeff.to_i64().unwrap() as i128;
                    }
                }
            }
            assert!(acc.values().all(|&v| v == 0), "d_{}d_{k} column {c}", k - 1);
        }
    }
}

#[test]
fn differentials_compose_to_zero() {
    for i in sample_ideals() {
        let b = pommaret_basis(&i).unwrap();
        assert_complex(&ps_complex(&b));
        if i.gens().len() <= 6 {
            assert_complex(&taylor_complex(&i));
        }
        if i.is_stable() {
            assert_complex(&ek_complex(&i).unwrap());
        }
        assert_complex(&minimize(&ps_complex(&b)).unwrap().complex);
    }
}

#[test]
fn boundary_of_a_two_cell() {
    let i = worked_example();
    let b = pommaret_basis(&i).unwrap();
    let f = ps_complex(&b);
    let r = Ring::with_names(XYZ.iter().map(|s| s.to_string()).collect()).unwrap();
    let sym = |h: &str, u: &[usize]| {
        let h = b.index_of(&mono(&XYZ, h)).unwrap();
        (h, VarSet::from_sorted(u.to_vec()))
    };
    let (h, u) = sym("x^2", &[2, 3]);
    let col = f.find_symbol(2, b.element(h), &u).unwrap();
    let mut got: Vec<(String, String)> = f
        .differential(2)
        .column(col)
        .iter()
        .map(|e| {
            (
                f.label_string(&r, &f.module(1)[e.row]),
                format_entry(&r, &e.coeff, &e.mono),
            )
        })
        .collect();
    got.sort();
    let mut want = vec![
        ("[x^2, z]".to_string(), "-y".to_string()),
        ("[x^2*y, z]".to_string(), "1".to_string()),
        ("[x^2, y]".to_string(), "z".to_string()),
        ("[x^2*z, y]".to_string(), "-1".to_string()),
    ];
    want.sort();
    assert_eq!(got, want);
}

/// Dense fraction-free rank over `i128`.
fn dense_rank(mut a: Vec<Vec<i128>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exactness of the augmented complex at every multidegree in a box that
/// contains all generator multidegrees.
fn assert_exact_in_box(f: &FreeComplex, i: &MonomialIdeal) {
    let mut bound = vec![0u32; i.n()];
    for g in f.modules().iter().flatten() {
        for (b, &e) in bound.iter_mut().zip(g.multidegree.exps()) {
            *b = (*b).max(e + 1);
        }
    }
    let gens = exps(i.gens());
    for mu in box_points(&bound) {
        let basis: Vec<Vec<usize>> = f
            .modules()
            .iter()
            .map(|m| (0..m.len()).filter(|&k| divides(m[k].multidegree.exps(), &mu)).collect())
            .collect();
        let mut ranks = vec![0usize; f.modules().len() + 1];
        ranks[0] = usize::from(!basis[0].is_empty());
        for k in 1..=f.length() {
            let d = f.differential(k);
            let mat: Vec<Vec<i128>> = basis[k]
                .iter()
                .map(|&c| {
                    basis[k - 1]
                        .iter()
                        .map(|&r| d.get(r, c).map_or(0, |e| e.coeff.to_i64().unwrap() as i128))
                        .collect()
                })
                .collect();
            ranks[k] = dense_rank(mat);
        }
        assert_eq!(ranks[0], usize::from(in_ideal(&gens, &mu)), "augmentation at {mu:?}");
        for k in 0..f.modules().len() {
            assert_eq!(basis[k].len(), ranks[k] + ranks[k + 1], "degree {k} at {mu:?}");
        }
    }
}

#[test]
fn exact_in_every_multidegree() {
    for i in sample_ideals().into_iter().take(30) {
        let b = pommaret_basis(&i).unwrap();
        let f = ps_complex(&b);
        assert_exact_in_box(&f, &i);
        let r = minimize(&f).unwrap();
        assert_exact_in_box(&r.complex, &i);
        assert!(r.complex.is_minimal());
    }
}

#[test]
fn lattice_check_agrees_with_box_check() {
    let i = worked_example();
    let f = ps_complex(&pommaret_basis(&i).unwrap());
    let rep = check_exactness(&f, &i).unwrap();
    assert!(rep.ok && rep.complete());
    // Dropping a column of d_2 breaks exactness at its multidegree.
    let mut broken = minimize(&f).unwrap().complex;
    broken.differential_mut(2).column_mut(0).clear();
    let rep = check_exactness(&broken, &i).unwrap();
    assert!(!rep.ok);
}

#[test]
fn cells_match_generators() {
    for i in sample_ideals() {
        let b = pommaret_basis(&i).unwrap();
        let f = ps_complex(&b);
        let cells = build_cell_complex(&b);
        assert_eq!(cells.counts(), f.ranks());
        assert!(cells.boundary_squares_to_zero());
        assert!(cells.labels_are_lcms());
        assert!(cells.grading_is_monotone());
        assert!(cells.degenerate_chains_are_faces());
        for cell in cells.cells().iter().flatten() {
            assert_eq!(cell.chains.iter().filter(|(_, d)| *d).count(), cell.degenerate_perms);
            assert!(cell.chains.iter().any(|(_, d)| !d), "no non-degenerate chain");
        }
        assert!(supports_check(&cells, &f).unwrap());
    }
}

#[test]
fn reduced_complete_intersection_is_taylor() {
    let i = ideal(&["x1", "x2"], &["x1^2", "x2^3"]);
    let b = pommaret_basis(&i).unwrap();
    let r = minimize(&ps_complex(&b)).unwrap();
    assert_eq!(r.complex.ranks(), vec![2, 1]);
    let t = taylor_complex(&i);
    assert!(find_equivalence(&r.complex, &t, 10_000).is_some());
}

#[test]
fn stable_ideals_need_no_reduction() {
    for k in 0..20 {
        let i = random_stable(700 + k, 2 + (k % 3) as usize, 3, 3);
        let b = pommaret_basis(&i).unwrap();
        let f = ps_complex(&b);
        assert!(f.is_minimal());
        assert!(build_matching_v(&f, &b).unwrap().is_empty());
        assert_eq!(minimize(&f).unwrap().complex.ranks(), f.ranks());
    }
}

#[test]
fn pure_fourth_powers_in_four_variables() {
    let i = MonomialIdeal::new(
        (0..4)
            .map(|k| {
                let mut e = vec![0; 4];
                e[k] = 4;
                Monomial::new(e)
            })
            .collect(),
    )
    .unwrap();
    let start = Instant::now();
    let b = pommaret_basis(&i).unwrap();
    let f = ps_complex(&b);
    let r = minimize(&f).unwrap();
    assert_eq!(r.safety_net, 0);
    assert_eq!(r.complex.ranks(), vec![4, 6, 4, 1]);
    let rep = check_exactness(&r.complex, &i).unwrap();
    assert!(rep.ok && rep.complete());
    let rep = check_exactness(&f, &i).unwrap();
    assert!(rep.ok);
    let inv = homological_invariants(&r.complex, &b).unwrap();
    assert_eq!((inv.pd, inv.reg), (3, 13));
    assert!(start.elapsed().as_secs() < 30);
}
