//! The resolution digraph, the matching `V`, and reduction of a free
//! complex along a Morse matching (or any unit entries) to a minimal one.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde_json::json;

use crate::basis::PommaretBasis;
use crate::complex::{Entry, FreeComplex, GenLabel, Generator, Provenance, SparseMatrix, Symbol};
use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::monomial::Monomial;

/// Edge `source -> target` from generator `source` of `F_degree` to
/// generator `target` of `F_{degree-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub coeff: Integer,
    pub mono: Monomial,
}

#[derive(Clone, Debug)]
pub struct ResolutionGraph {
    pub ranks: Vec<usize>,
    pub edges: Vec<GraphEdge>,
}

pub fn resolution_graph(f: &FreeComplex) -> ResolutionGraph {
    let mut edges = Vec::new();
    for i in 1..=f.length() {
        for (c, col) in f.differential(i).columns().iter().enumerate() {
            for e in col {
                edges.push(GraphEdge {
                    degree: i,
                    source: c,
                    target: e.row,
                    coeff: e.coeff.clone(),
                    mono: e.mono.clone(),
                });
            }
        }
    }
    ResolutionGraph {
        ranks: f.ranks(),
        edges,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    /// The variable extracted by this pair, for pairs of `V`.
    pub var: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Upper end of a matched edge.
    Source,
    /// Lower end of a matched edge.
    Target,
    Critical,
}

#[derive(Clone, Debug)]
pub struct Matching {
    ranks: Vec<usize>,
    pairs: Vec<MatchedPair>,
}

impl Matching {
    pub fn new(ranks: Vec<usize>, pairs: Vec<MatchedPair>) -> Matching {
        Matching { ranks, pairs }
    }

    pub fn empty(ranks: Vec<usize>) -> Matching {
        Matching::new(ranks, Vec::new())
    }

    pub fn pairs(&self) -> &[MatchedPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `|V_i|` for each variable that contributed pairs.
    pub fn sizes_by_var(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in &self.pairs {
            if let Some(v) = p.var {
                *out.entry(v).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn role(&self, degree: usize, g: usize) -> Role {
        for p in &self.pairs {
            if p.degree == degree && p.source == g {
                return Role::Source;
            }
            if p.degree == degree + 1 && p.target == g {
                return Role::Target;
            }
        }
        Role::Critical
    }

    /// Unmatched generators per degree.
    pub fn critical(&self) -> Vec<Vec<usize>> {
        let mut matched: Vec<Vec<bool>> = self.ranks.iter().map(|&r| vec![false; r]).collect();
        for p in &self.pairs {
            matched[p.degree][p.source] = true;
            matched[p.degree - 1][p.target] = true;
        }
        matched
            .iter()
            .map(|m| (0..m.len()).filter(|&k| !m[k]).collect())
            .collect()
    }
}

/// The matching `V = V_n + ... + V_{d+1}` on a Pommaret-Seiler complex.
///
/// For `i = n` down to `d + 1`, pairs `[h, u] -> [h_Delta(h, i), u / x_i]`
/// with `x_i | u` and a unit scalar entry are admitted, scanning degrees
/// upwards and generators in order, as long as neither endpoint is already
/// matched.
pub fn build_matching_v(f: &FreeComplex, basis: &PommaretBasis) -> Result<Matching> {
    if *f.provenance() != Provenance::PommaretSeiler || f.elements() != basis.elements() {
        return Err(Error::NotPsComplex);
    }
    let index: Vec<HashMap<&Symbol, usize>> = f
        .modules()
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .filter_map(|(k, g)| match &g.label {
                    GenLabel::Symbol(s) => Some((s, k)),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let mut matched: Vec<Vec<bool>> = f.ranks().iter().map(|&r| vec![false; r]).collect();
    let mut pairs = Vec::new();
    for i in (basis.min_class() + 1..=basis.n()).rev() {
        for p in 1..=f.length() {
            for (c, g) in f.module(p).iter().enumerate() {
                let GenLabel::Symbol(s) = &g.label else {
                    return Err(Error::NotPsComplex);
                };
                if !s.u.contains(i) || matched[p][c] {
                    continue;
                }
                let d = basis.delta_map(s.h, i)?;
                if !d.t.is_one() {
                    continue;
                }
                let target = Symbol {
                    h: d.target,
                    u: s.u.without(i),
                };
                let Some(&row) = index[p - 1].get(&target) else {
                    continue;
                };
                let Some(e) = f.differential(p).get(row, c) else {
                    continue;
                };
                if !e.coeff.is_unit() || !e.mono.is_one() || matched[p - 1][row] {
                    continue;
                }
                matched[p][c] = true;
                matched[p - 1][row] = true;
                pairs.push(MatchedPair {
                    degree: p,
                    source: c,
                    target: row,
                    var: Some(i),
                });
            }
        }
    }
    Ok(Matching::new(f.ranks(), pairs))
}

/// Checks that every pair is a unit scalar edge, that no generator lies on
/// two pairs, and that reversing the pairs leaves no directed cycle. Cycles
/// can only live between two consecutive degrees, so each such layer is
/// checked separately.
pub fn is_morse_matching(g: &ResolutionGraph, a: &Matching) -> bool {
    let edge_at: HashMap<(usize, usize, usize), &GraphEdge> = g
        .edges
        .iter()
        .map(|e| ((e.degree, e.source, e.target), e))
        .collect();
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    for p in &a.pairs {
        let Some(e) = edge_at.get(&(p.degree, p.source, p.target)) else {
            return false;
        };
        if !e.coeff.is_unit() || !e.mono.is_one() {
            return false;
        }
        *used.entry((p.degree, p.source)).or_insert(0) += 1;
        *used.entry((p.degree - 1, p.target)).or_insert(0) += 1;
    }
    if used.values().any(|&k| k > 1) {
        return false;
    }
    let reversed: std::collections::HashSet<(usize, usize, usize)> = a
        .pairs
        .iter()
        .map(|p| (p.degree, p.source, p.target))
        .collect();
    for p in 1..g.ranks.len() {
        // nodes: sources 0..ranks[p], then targets offset by ranks[p]
        let up = g.ranks[p];
        let total = up + g.ranks[p - 1];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
        let mut indeg = vec![0usize; total];
        for e in g.edges.iter().filter(|e| e.degree == p) {
            let (s, t) = (e.source, up + e.target);
            let (from, to) = if reversed.contains(&(p, e.source, e.target)) {
                (t, s)
            } else {
                (s, t)
            };
            adj[from].push(to);
            indeg[to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..total).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if seen != total {
            return false;
        }
    }
    true
}

/// Outcome of a reduction. Generator indices in `critical` refer to the
/// input complex.
#[derive(Clone, Debug)]
pub struct ReducedComplex {
    pub complex: FreeComplex,
    pub critical: Vec<Vec<usize>>,
    pub matching: Option<Matching>,
    /// Cancellations of pairs from the matching.
    pub matched_cancellations: usize,
    /// Extra unit cancellations performed after the matching.
    pub safety_net: usize,
    /// One JSON record per cancellation.
    pub trace: Vec<serde_json::Value>,
}

type Column = BTreeMap<usize, (Integer, Monomial)>;

/// Mutable working copy of a complex, indexed like the original.
struct Work<'a> {
    source: &'a FreeComplex,
    alive: Vec<Vec<bool>>,
    /// `cols[i][c]` is column `c` of `d_i`; `cols[0]` is empty.
    cols: Vec<Vec<Column>>,
    trace: Vec<serde_json::Value>,
}

impl<'a> Work<'a> {
    fn new(f: &'a FreeComplex) -> Work<'a> {
        let mut cols = vec![Vec::new()];
        for i in 1..=f.length() {
            cols.push(
                f.differential(i)
                    .columns()
                    .iter()
                    .map(|col| {
                        col.iter()
                            .map(|e| (e.row, (e.coeff.clone(), e.mono.clone())))
                            .collect()
                    })
                    .collect(),
            );
        }
        Work {
            source: f,
            alive: f.ranks().iter().map(|&r| vec![true; r]).collect(),
            cols,
            trace: Vec::new(),
        }
    }

    fn top(&self) -> usize {
        self.alive.len() - 1
    }

    fn entry(&self, i: usize, col: usize, row: usize) -> Option<&(Integer, Monomial)> {
        self.cols[i][col].get(&row)
    }

    /// `d_{i-1}(d_i(col)) = 0`, using the augmentation when `i = 1`.
    fn composite_vanishes(&self, i: usize, col: &Column) -> bool {
        let mut acc: HashMap<(usize, Monomial), Integer> = HashMap::new();
        for (&r, (c, m)) in col {
            if i == 1 {
                let md = self.source.module(0)[r].multidegree.mul(m);
                let slot = acc.entry((0, md)).or_insert(Integer::ZERO);
                *slot = &*slot + c;
            } else {
                for (&r2, (c2, m2)) in &self.cols[i - 1][r] {
                    let slot = acc.entry((r2, m.mul(m2))).or_insert(Integer::ZERO);
                    *slot = &*slot + &(c * c2);
                }
            }
        }
        acc.values().all(Integer::is_zero)
    }

    /// Gaussian elimination of the unit entry `(t, s)` of `d_i`.
    fn cancel(&mut self, i: usize, s: usize, t: usize, phase: &str) -> Result<()> {
        let lambda = match self.entry(i, s, t) {
            Some((c, m)) if c.is_unit() && m.is_one() => c.clone(),
            other => {
                return Err(Error::NonUnitPair {
                    degree: i,
                    source_gen: s,
                    target_gen: t,
                    coeff: other.map_or("0".to_string(), |(c, m)| {
                        if m.is_one() {
                            c.to_string()
                        } else {
                            format!("{c}*{m}")
                        }
                    }),
                })
            }
        };
        let ds: Vec<(usize, Integer, Monomial)> = self.cols[i][s]
            .iter()
            .filter(|(&r, _)| r != t)
            .map(|(&r, (c, m))| (r, c.clone(), m.clone()))
            .collect();
        let mut touched = Vec::new();
        for x in 0..self.cols[i].len() {
            if x == s || !self.alive[i][x] {
                continue;
            }
            let Some((cx, mx)) = self.cols[i][x].remove(&t) else {
                continue;
            };
            let factor = &lambda * &cx;
            let col = &mut self.cols[i][x];
            for (r, ce, me) in &ds {
                let add = -(&factor * ce);
                let mono = mx.mul(me);
                match col.get_mut(r) {
                    Some((c, m)) => {
                        assert_eq!(*m, mono, "inhomogeneous update");
                        *c = &*c + &add;
                        if c.is_zero() {
                            col.remove(r);
                        }
                    }
                    None => {
                        col.insert(*r, (add, mono));
                    }
                }
            }
            touched.push(x);
        }
        self.alive[i][s] = false;
        self.cols[i][s].clear();
        self.alive[i - 1][t] = false;
        if i >= 2 {
            self.cols[i - 1][t].clear();
        }
        let mut above = Vec::new();
        if i < self.top() {
            for y in 0..self.cols[i + 1].len() {
                if !self.alive[i + 1][y] {
                    continue;
                }
                let col = &mut self.cols[i + 1][y];
                let hit = col.remove(&s).is_some() || touched.iter().any(|x| col.contains_key(x));
                if hit {
                    above.push(y);
                }
            }
        }
        for &x in &touched {
            if !self.composite_vanishes(i, &self.cols[i][x]) {
                return Err(Error::NotAComplex(format!(
                    "d o d != 0 on column {x} of d_{i} after cancelling ({s}, {t})"
                )));
            }
        }
        for &y in &above {
            if !self.composite_vanishes(i + 1, &self.cols[i + 1][y]) {
                return Err(Error::NotAComplex(format!(
                    "d o d != 0 on column {y} of d_{} after cancelling ({s}, {t})",
                    i + 1
                )));
            }
        }
        self.trace.push(json!({
            "step": self.trace.len(),
            "phase": phase,
            "degree": i,
            "source": s,
            "target": t,
            "coeff": lambda,
            "touched": touched,
            "above": above,
        }));
        Ok(())
    }

    /// First unit scalar entry, scanning degrees downwards. `Err` if only
    /// non-unit scalars remain.
    fn next_unit(&self) -> Result<Option<(usize, usize, usize)>> {
        let mut stuck = None;
        for i in (1..=self.top()).rev() {
            for (c, col) in self.cols[i].iter().enumerate() {
                if !self.alive[i][c] {
                    continue;
                }
                for (&r, (coeff, m)) in col {
                    if m.is_one() {
                        if coeff.is_unit() {
                            return Ok(Some((i, c, r)));
                        }
                        stuck.get_or_insert((i, c, r, coeff.to_string()));
                    }
                }
            }
        }
        match stuck {
            Some((degree, source_gen, target_gen, coeff)) => Err(Error::NonUnitPair {
                degree,
                source_gen,
                target_gen,
                coeff,
            }),
            None => Ok(None),
        }
    }

    fn finish(self, matching: Option<Matching>, matched: usize, safety_net: usize) -> ReducedComplex {
        let f = self.source;
        let critical: Vec<Vec<usize>> = self
            .alive
            .iter()
            .map(|a| (0..a.len()).filter(|&k| a[k]).collect())
            .collect();
        let mut keep = critical.len();
        while keep > 1 && critical[keep - 1].is_empty() {
            keep -= 1;
        }
        let critical: Vec<Vec<usize>> = critical.into_iter().take(keep).collect();
        let renumber: Vec<HashMap<usize, usize>> = critical
            .iter()
            .map(|c| c.iter().enumerate().map(|(k, &g)| (g, k)).collect())
            .collect();
        let modules: Vec<Vec<Generator>> = critical
            .iter()
            .enumerate()
            .map(|(i, c)| c.iter().map(|&g| f.module(i)[g].clone()).collect())
            .collect();
        let differentials = (1..keep)
            .map(|i| {
                let cols = critical[i]
                    .iter()
                    .map(|&g| {
                        self.cols[i][g]
                            .iter()
                            .map(|(r, (c, m))| Entry {
                                row: renumber[i - 1][r],
                                coeff: c.clone(),
                                mono: m.clone(),
                            })
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(critical[i - 1].len(), cols)
            })
            .collect();
        let complex = FreeComplex::new(
            f.ideal().clone(),
            f.elements().to_vec(),
            Provenance::Reduced,
            modules,
            differentials,
        )
        .expect("reduced shapes are consistent");
        ReducedComplex {
            complex,
            critical,
            matching,
            matched_cancellations: matched,
            safety_net,
            trace: self.trace,
        }
    }
}

fn cancel_matching(work: &mut Work, a: &Matching) -> Result<usize> {
    let mut order: Vec<&MatchedPair> = a.pairs.iter().collect();
    order.sort_by(|x, y| y.degree.cmp(&x.degree).then(x.source.cmp(&y.source)));
    for p in &order {
        work.cancel(p.degree, p.source, p.target, "matching")?;
    }
    Ok(order.len())
}

/// Reduces `f` along the Morse matching `a`, one pair at a time, highest
/// homological degree first.
pub fn morse_reduce(f: &FreeComplex, a: &Matching) -> Result<ReducedComplex> {
    if !is_morse_matching(&resolution_graph(f), a) {
        return Err(Error::NotAMorseMatching(
            "pairs must be disjoint unit edges with an acyclic reversal".into(),
        ));
    }
    let mut work = Work::new(f);
    let matched = cancel_matching(&mut work, a)?;
    Ok(work.finish(Some(a.clone()), matched, 0))
}

/// Reduces `f` to a complex without unit entries. A Pommaret-Seiler complex
/// is first reduced along `V`; any unit entries left afterwards are cancelled
/// one at a time and counted in `safety_net`.
pub fn minimize(f: &FreeComplex) -> Result<ReducedComplex> {
    let mut work = Work::new(f);
    let mut matching = None;
    let mut matched = 0;
    if *f.provenance() == Provenance::PommaretSeiler {
        let basis = PommaretBasis::from_involutive_set(f.ideal().clone(), f.elements().to_vec())?;
        let v = build_matching_v(f, &basis)?;
        if !is_morse_matching(&resolution_graph(f), &v) {
            return Err(Error::NotAMorseMatching("V".into()));
        }
        matched = cancel_matching(&mut work, &v)?;
        matching = Some(v);
    }
    let mut safety_net = 0;
    while let Some((i, s, t)) = work.next_unit()? {
        work.cancel(i, s, t, "unit")?;
        safety_net += 1;
    }
    if matching.is_some() && safety_net > 0 {
        log::warn!("{safety_net} unit entries survived the matching V");
    }
    Ok(work.finish(matching, matched, safety_net))
}
