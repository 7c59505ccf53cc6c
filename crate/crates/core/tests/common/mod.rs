//! Helpers shared by the integration tests: a tiny monomial parser over
//! named variables and builders for hand-written reference complexes.
#![allow(dead_code)]

use pommaret_core::{
    Entry, FreeComplex, GenLabel, Generator, Integer, Monomial, MonomialIdeal, Provenance,
    SparseMatrix,
};

pub const XYZ: [&str; 3] = ["x", "y", "z"];

/// Parses `x^2*y*z^3` (or `1`) over the given variable names.
pub fn mono(names: &[&str], s: &str) -> Monomial {
    let mut e = vec![0u32; names.len()];
    let s = s.trim();
    if s == "1" {
        return Monomial::new(e);
    }
    for factor in s.split('*') {
        let (var, exp) = match factor.split_once('^') {
            Some((v, x)) => (v, x.parse::<u32>().expect("exponent")),
            None => (factor, 1),
        };
        let k = names.iter().position(|n| *n == var).unwrap_or_else(|| panic!("unknown variable {var}"));
        e[k] += exp;
    }
    Monomial::new(e)
}

/// Parses a signed entry such as `-y^4`, `1`, `-1` or `0`.
pub fn entry(names: &[&str], s: &str) -> Option<(Integer, Monomial)> {
    let s = s.trim();
    if s == "0" {
        return None;
    }
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s),
    };
    Some((Integer::from(sign as i64), mono(names, rest)))
}

pub fn monos(names: &[&str], list: &[&str]) -> Vec<Monomial> {
    list.iter().map(|s| mono(names, s)).collect()
}

pub fn ideal(names: &[&str], list: &[&str]) -> MonomialIdeal {
    MonomialIdeal::new(monos(names, list)).unwrap()
}

/// A complex given by generator multidegrees per degree and dense matrices
/// of entry strings (`matrices[i - 1]` is `d_i`, rows by columns).
pub fn reference_complex(
    names: &[&str],
    ideal: &MonomialIdeal,
    multidegrees: &[&[&str]],
    matrices: &[&[&[&str]]],
) -> FreeComplex {
    let mut id = 0;
    let modules: Vec<Vec<Generator>> = multidegrees
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|s| {
                    id += 1;
                    Generator {
                        label: GenLabel::Opaque(id - 1),
                        multidegree: mono(names, s),
                    }
                })
                .collect()
        })
        .collect();
    let differentials = matrices
        .iter()
        .map(|rows| {
            let ncols = rows[0].len();
            let cols = (0..ncols)
                .map(|c| {
                    rows.iter()
                        .enumerate()
                        .filter_map(|(r, row)| {
                            entry(names, row[c]).map(|(coeff, mono)| Entry { row: r, coeff, mono })
                        })
                        .collect()
                })
                .collect();
            SparseMatrix::from_columns(rows.len(), cols)
        })
        .collect();
    FreeComplex::new(
        ideal.clone(),
        Vec::new(),
        Provenance::Custom,
        modules,
        differentials,
    )
    .unwrap()
}

pub fn worked_example() -> MonomialIdeal {
    ideal(&XYZ, &["x^2", "y^4", "y^2*z^2", "z^3"])
}

/// The 14-element Pommaret basis of the worked example.
pub const WORKED_BASIS: [&str; 14] = [
    "x^2", "x^2*y", "x^2*y^2", "x^2*y^3", "x^2*z", "x^2*y*z", "x^2*y^2*z", "x^2*y^3*z", "x^2*z^2",
    "x^2*y*z^2", "y^4", "y^4*z", "y^2*z^2", "z^3",
];

/// `(source h, source u, target h, target u)` of the pairs in `V_3`.
pub const WORKED_V3: [(&str, &str, &str, &str); 13] = [
    ("x^2", "y*z", "x^2*z", "y"),
    ("x^2*y", "y*z", "x^2*y*z", "y"),
    ("x^2*y^2", "y*z", "x^2*y^2*z", "y"),
    ("x^2*y^3", "y*z", "x^2*y^3*z", "y"),
    ("x^2*z", "y*z", "x^2*z^2", "y"),
    ("x^2*y*z", "y*z", "x^2*y*z^2", "y"),
    ("x^2", "z", "x^2*z", "1"),
    ("x^2*y", "z", "x^2*y*z", "1"),
    ("x^2*y^2", "z", "x^2*y^2*z", "1"),
    ("x^2*y^3", "z", "x^2*y^3*z", "1"),
    ("x^2*z", "z", "x^2*z^2", "1"),
    ("x^2*y*z", "z", "x^2*y*z^2", "1"),
    ("y^4", "z", "y^4*z", "1"),
];

pub const WORKED_V2: [(&str, &str, &str, &str); 5] = [
    ("x^2*y^2*z", "y*z", "x^2*y^3*z", "z"),
    ("x^2*z^2", "y*z", "x^2*y*z^2", "z"),
    ("x^2", "y", "x^2*y", "1"),
    ("x^2*y", "y", "x^2*y^2", "1"),
    ("x^2*y^2", "y", "x^2*y^3", "1"),
];

pub const WORKED_CRITICAL: [(&str, &str); 11] = [
    ("x^2", "1"),
    ("y^4", "1"),
    ("y^2*z^2", "1"),
    ("z^3", "1"),
    ("x^2*y^3", "y"),
    ("x^2*z^2", "z"),
    ("x^2*y^2*z", "z"),
    ("y^4*z", "z"),
    ("y^2*z^2", "z"),
    ("x^2*y^3*z", "y*z"),
    ("x^2*y*z^2", "y*z"),
];

pub const WORKED_MIN_MULTIDEGREES: [&[&str]; 3] = [
    &["x^2", "y^4", "y^2*z^2", "z^3"],
    &["x^2*y^4", "y^4*z^2", "x^2*y^2*z^2", "x^2*z^3", "y^2*z^3"],
    &["x^2*y^4*z^2", "x^2*y^2*z^3"],
];

/// Minimal `d_1` of the worked example as displayed in the reference.
pub const WORKED_D1: [[&str; 5]; 4] = [
    ["-y^4", "0", "-y^2*z^2", "-z^3", "0"],
    ["-x^2", "-z^2", "0", "0", "0"],
    ["0", "y^2", "x^2", "0", "-z"],
    ["0", "0", "0", "x^2", "y^2"],
];

pub const WORKED_D2: [[&str; 2]; 5] = [
    ["z^2", "0"],
    ["x^2", "0"],
    ["-y^2", "z"],
    ["0", "-y^2"],
    ["0", "x^2"],
];

pub fn rows<'a, const C: usize>(m: &'a [[&'static str; C]]) -> Vec<&'a [&'static str]> {
    m.iter().map(|r| &r[..]).collect()
}
