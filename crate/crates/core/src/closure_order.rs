//! The closure order on W(q−2,2).
//!
//! `w ⪯ w'` iff some `h` in W_J = S_{1,2} × S_{3..q} has `h•w ≤ w'` in the
//! Bruhat order, where `h•w = h·w·w0J·h⁻¹·w0J`.
//!
//! Two search strategies are provided. `Exhaustive` enumerates every `h`,
//! deduplicates the orbit and runs the generic Bruhat test against every
//! target. `Pruned` walks W_J by single transpositions (Heap's algorithm), so
//! each orbit element is obtained from the previous one by an O(1)
//! conjugation, and evaluates all targets at once through [`bruhat_corner`].

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strata_index::{all_strata, GammaUV};
use crate::symmetric_group::{bruhat_leq_slices, compose, inverse, longest_element_block2, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("{0} does not preserve the blocks {{1,2}} and {{3..q}}")]
    NotParabolic(Permutation),
    #[error("degree mismatch: expected {0}, got {1}")]
    Degree(usize, usize),
    #[error("strata come from different q")]
    MixedQ,
    #[error("thread pool: {0}")]
    Threads(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Pruned,
}

/// `dot_action(h, γ_source) ≤ γ_target` in the Bruhat order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureWitness {
    pub h: Permutation,
    pub source: GammaUV,
    pub target: GammaUV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoverKind {
    Bruhat,
    NonBruhat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverRelation {
    pub lower: GammaUV,
    pub upper: GammaUV,
    pub kind: CoverKind,
}

pub fn in_parabolic(h: &Permutation) -> bool {
    h.degree() >= 2 && h.as_slice()[0] < 2 && h.as_slice()[1] < 2
}

/// h•w = h · w · w0J · h⁻¹ · w0J.
pub fn dot_action(h: &Permutation, w: &Permutation, q: usize) -> Result<Permutation, ClosureError> {
    if h.degree() != q {
        return Err(ClosureError::Degree(q, h.degree()));
    }
    if w.degree() != q {
        return Err(ClosureError::Degree(q, w.degree()));
    }
    if !in_parabolic(h) {
        return Err(ClosureError::NotParabolic(h.clone()));
    }
    let w0j = w0j(q);
    let steps = [w, &w0j, &inverse(h), &w0j];
    let mut out = h.clone();
    for s in steps {
        out = compose(&out, s).expect("equal degrees");
    }
    Ok(out)
}

fn w0j(q: usize) -> Permutation {
    if q == 2 {
        return Permutation::transposition(2, 1, 2);
    }
    longest_element_block2(q).expect("q >= 3")
}

/// For `y` in S_q (0-based images), the set of strata with `y ≤ γ_{u,v}` is
/// `{(u,v) : u ≥ a, v ≥ b}` for the returned corner `(a,b)`, or empty when
/// `None` is returned.
///
/// From the rank criterion: with `M_k = max(y(1..k))`, `y ≤ γ_{u,v}` iff
/// `u ≥ y⁻¹(1)` and `[u ≤ k] + [v ≤ k] ≤ k + 2 − M_k` whenever `M_k ≥ 3`.
pub fn bruhat_corner(y: &[u8]) -> Option<(usize, usize)> {
    let q = y.len();
    let mut need1 = 0;
    let mut max = 0usize;
    let mut k0 = 0;
    let mut k1 = 0;
    for (k, &val) in y.iter().enumerate() {
        let val = val as usize + 1;
        if val == 1 {
            need1 = k + 1;
        }
        max = max.max(val);
        if max >= 3 {
            let e = (k + 3) as isize - max as isize;
            if e < 0 {
                return None;
            }
            if e == 0 {
                k0 = k + 1;
            }
            if e <= 1 {
                k1 = k + 1;
            }
        }
    }
    let a = need1.max(k0 + 1);
    let b = (k1 + 1).max(k0 + 1).max(a + 1);
    (b <= q).then_some((a, b))
}

/// Minimal corners reached from one source, each with a witness `h`.
#[derive(Debug, Clone, Default)]
struct CornerSet {
    // (a, b, witness)
    corners: Vec<(usize, usize, Permutation)>,
}

impl CornerSet {
    fn dominated(&self, a: usize, b: usize) -> bool {
        self.corners.iter().any(|&(x, y, _)| x <= a && y <= b)
    }

    fn insert(&mut self, a: usize, b: usize, h: Permutation) {
        if self.dominated(a, b) {
            return;
        }
        self.corners.retain(|&(x, y, _)| !(a <= x && b <= y));
        self.corners.push((a, b, h));
    }

    fn merge(mut self, other: CornerSet) -> CornerSet {
        for (a, b, h) in other.corners {
            self.insert(a, b, h);
        }
        self
    }
}

/// Walks the h with a fixed S_2 part `flip` and a fixed value `last` of
/// `h⁻¹(q)`, tracking `c = h x h⁻¹` with `x = w·w0J`.
fn pruned_task(x: &[u8], w0j: &[u8], flip: bool, last: Option<u8>) -> CornerSet {
    let q = x.len();
    let block: Vec<u8> = (2..q as u8).collect();
    // p[i] = h⁻¹(2 + i) on the block
    let mut p: Vec<u8> = match last {
        Some(r) => block.iter().copied().filter(|&b| b != r).chain(std::iter::once(r)).collect(),
        None => block.clone(),
    };
    let free = p.len().saturating_sub(1);

    let build_h = |p: &[u8]| -> Vec<u8> {
        let mut h = vec![0u8; q];
        h[0] = if flip { 1 } else { 0 };
        h[1] = if flip { 0 } else { 1 };
        for (i, &val) in p.iter().enumerate() {
            h[val as usize] = (i + 2) as u8;
        }
        h
    };
    let h0 = build_h(&p);
    let mut c = vec![0u8; q];
    for i in 0..q {
        c[h0[i] as usize] = h0[x[i] as usize];
    }
    let mut cinv = vec![0u8; q];
    for (i, &val) in c.iter().enumerate() {
        cinv[val as usize] = i as u8;
    }

    let mut found = CornerSet::default();
    let mut best = vec![usize::MAX; q + 2];
    let mut y = vec![0u8; q];
    let mut visit = |c: &[u8], p: &[u8], found: &mut CornerSet, best: &mut Vec<usize>| {
        for k in 0..q {
            y[k] = c[w0j[k] as usize];
        }
        if let Some((a, b)) = bruhat_corner(&y) {
            if best[..=a].iter().all(|&m| m > b) {
                best[a] = b;
                let h = Permutation::from_zero_based_unchecked(build_h(p));
                found.insert(a, b, h);
            }
        }
    };

    visit(&c, &p, &mut found, &mut best);
    // Heap's algorithm on p[0..free]
    let mut counters = vec![0usize; free];
    let mut i = 1;
    while i < free {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            p.swap(j, i);
            conjugate_by_transposition(&mut c, &mut cinv, (j + 2) as u8, (i + 2) as u8);
            visit(&c, &p, &mut found, &mut best);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    found
}

/// c ← τ c τ for τ = (s t).
#[inline]
fn conjugate_by_transposition(c: &mut [u8], cinv: &mut [u8], s: u8, t: u8) {
    let (s, t) = (s as usize, t as usize);
    c.swap(s, t);
    cinv[c[s] as usize] = s as u8;
    cinv[c[t] as usize] = t as u8;
    let ps = cinv[s] as usize;
    let pt = cinv[t] as usize;
    c[ps] = t as u8;
    c[pt] = s as u8;
    cinv.swap(s, t);
}

fn x_of(source: &GammaUV) -> (Vec<u8>, Vec<u8>) {
    let w = source.to_permutation();
    let w0j = w0j(source.q);
    let x = compose(&w, &w0j).expect("equal degrees");
    (x.as_slice().to_vec(), w0j.as_slice().to_vec())
}

fn pruned_corners(source: &GammaUV) -> CornerSet {
    let (x, w0j) = x_of(source);
    let q = source.q;
    let mut tasks: Vec<(bool, Option<u8>)> = Vec::new();
    for flip in [false, true] {
        if q >= 3 {
            for r in 2..q as u8 {
                tasks.push((flip, Some(r)));
            }
        } else {
            tasks.push((flip, None));
        }
    }
    tasks
        .par_iter()
        .map(|&(flip, last)| pruned_task(&x, &w0j, flip, last))
        .reduce(CornerSet::default, CornerSet::merge)
}

/// Every target reachable from one source, with a witness for each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceResult {
    pub source: GammaUV,
    pub targets: Vec<(GammaUV, Permutation)>,
}

pub fn search_source(source: &GammaUV, strategy: Strategy) -> SourceResult {
    let q = source.q;
    let strata = all_strata(q);
    let targets = match strategy {
        Strategy::Pruned => {
            let mut corners = pruned_corners(source).corners;
            corners.sort_by_key(|&(a, b, _)| (a, b));
            strata
                .iter()
                .filter_map(|t| {
                    corners
                        .iter()
                        .find(|&&(a, b, _)| a <= t.u && b <= t.v)
                        .map(|(_, _, h)| (*t, h.clone()))
                })
                .collect()
        }
        Strategy::Exhaustive => exhaustive_targets(source, &strata),
    };
    SourceResult { source: *source, targets }
}

fn exhaustive_targets(source: &GammaUV, strata: &[GammaUV]) -> Vec<(GammaUV, Permutation)> {
    let q = source.q;
    let w = source.to_permutation();
    let mut orbit: Vec<(Vec<u8>, Permutation)> = Vec::new();
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    for h in parabolic_elements(q) {
        let y = dot_action(&h, &w, q).expect("h in W_J");
        if seen.insert(y.as_slice().to_vec(), ()).is_none() {
            orbit.push((y.as_slice().to_vec(), h));
        }
    }
    let target_perms: Vec<Vec<u8>> = strata.iter().map(|t| t.to_permutation().as_slice().to_vec()).collect();
    let mut out = Vec::new();
    for (t, tp) in strata.iter().zip(&target_perms) {
        if let Some((_, h)) = orbit.iter().find(|(y, _)| bruhat_leq_slices(y, tp)) {
            out.push((*t, h.clone()));
        }
    }
    out
}

/// All of W_J = S_{1,2} × S_{3..q}, block part in lexicographic order.
pub fn parabolic_elements(q: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut block: Vec<u8> = (2..q as u8).collect();
    loop {
        for flip in [false, true] {
            let mut h = vec![if flip { 1 } else { 0 }, if flip { 0 } else { 1 }];
            h.extend_from_slice(&block);
            out.push(Permutation::from_zero_based_unchecked(h));
        }
        if !next_permutation(&mut block) {
            return out;
        }
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Single-pair query; returns a witness when `w1 ⪯ w2`.
pub fn closure_leq(w1: &GammaUV, w2: &GammaUV, strategy: Strategy) -> Result<Option<ClosureWitness>, ClosureError> {
    if w1.q != w2.q {
        return Err(ClosureError::MixedQ);
    }
    if w1.bruhat_leq(w2) {
        return Ok(Some(ClosureWitness { h: Permutation::identity(w1.q), source: *w1, target: *w2 }));
    }
    let res = search_source(w1, strategy);
    Ok(res
        .targets
        .into_iter()
        .find(|(t, _)| t == w2)
        .map(|(t, h)| ClosureWitness { h, source: *w1, target: t }))
}

/// The full relation ⪯ on the strata of one q.
#[derive(Debug, Clone)]
pub struct ClosureRelation {
    pub q: usize,
    pub strata: Vec<GammaUV>,
    // witness[i][j] is Some iff strata[i] ⪯ strata[j]
    witness: Vec<Vec<Option<Permutation>>>,
}

impl ClosureRelation {
    pub fn from_results(q: usize, results: &[SourceResult]) -> ClosureRelation {
        let strata = all_strata(q);
        let index: HashMap<GammaUV, usize> = strata.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut witness = vec![vec![None; strata.len()]; strata.len()];
        for r in results {
            let i = index[&r.source];
            for (t, h) in &r.targets {
                witness[i][index[t]] = Some(h.clone());
            }
        }
        ClosureRelation { q, strata, witness }
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.witness[i][j].is_some()
    }

    pub fn witness(&self, i: usize, j: usize) -> Option<&Permutation> {
        self.witness[i][j].as_ref()
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        self.witness.iter().map(|row| row.iter().map(Option::is_some).collect()).collect()
    }

    pub fn index_of(&self, g: &GammaUV) -> Option<usize> {
        self.strata.iter().position(|s| s == g)
    }

    pub fn is_partial_order(&self) -> bool {
        let m = self.matrix();
        let n = m.len();
        (0..n).all(|i| m[i][i])
            && (0..n).all(|i| (0..n).all(|j| i == j || !(m[i][j] && m[j][i])))
            && transitive_closure(&m) == m
    }
}

pub fn transitive_closure(rel: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let mut r = rel.to_vec();
    let n = r.len();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Covers of the transitive closure of `rel`, ordered by the (ℓ,u,v) keys
/// of lower then upper.
pub fn covers(strata: &[GammaUV], rel: &[Vec<bool>]) -> Vec<CoverRelation> {
    let r = transitive_closure(rel);
    let n = strata.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !r[i][j] || r[j][i] {
                continue;
            }
            let between = (0..n).any(|k| k != i && k != j && r[i][k] && r[k][j] && !r[k][i] && !r[j][k]);
            if !between {
                let (lower, upper) = (strata[i], strata[j]);
                let kind = if lower.bruhat_leq(&upper) { CoverKind::Bruhat } else { CoverKind::NonBruhat };
                out.push(CoverRelation { lower, upper, kind });
            }
        }
    }
    out.sort_by_key(|c| (c.lower.sort_key(), c.upper.sort_key()));
    out
}

pub fn bruhat_matrix(strata: &[GammaUV]) -> Vec<Vec<bool>> {
    strata.iter().map(|a| strata.iter().map(|b| a.bruhat_leq(b)).collect()).collect()
}

pub fn run_with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, ClosureError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| ClosureError::Threads(e.to_string()))?;
    Ok(pool.install(f))
}

/// Searches every source. `done` lists sources already computed (for
/// resuming); `on_result` sees each new result as it completes.
pub fn closure_relation_with(
    q: usize,
    strategy: Strategy,
    done: &[SourceResult],
    on_result: &(dyn Fn(&SourceResult) + Sync),
) -> ClosureRelation {
    let finished: BTreeSet<GammaUV> = done.iter().map(|r| r.source).collect();
    let todo: Vec<GammaUV> = all_strata(q).into_iter().filter(|s| !finished.contains(s)).collect();
    let mut results: Vec<SourceResult> = todo
        .par_iter()
        .map(|s| {
            let r = search_source(s, strategy);
            on_result(&r);
            r
        })
        .collect();
    results.extend(done.iter().cloned());
    ClosureRelation::from_results(q, &results)
}

pub fn closure_relation(q: usize, strategy: Strategy) -> ClosureRelation {
    closure_relation_with(q, strategy, &[], &|_| {})
}

#[derive(Debug, Clone)]
pub struct ClosurePoset {
    pub relation: ClosureRelation,
    pub covers: Vec<CoverRelation>,
}

impl ClosurePoset {
    pub fn from_relation(relation: ClosureRelation) -> ClosurePoset {
        let covers = covers(&relation.strata, &relation.matrix());
        ClosurePoset { relation, covers }
    }

    pub fn non_bruhat_covers(&self) -> Vec<CoverRelation> {
        self.covers.iter().filter(|c| c.kind == CoverKind::NonBruhat).copied().collect()
    }
}

pub fn closure_poset(q: usize, strategy: Strategy, threads: usize) -> Result<ClosurePoset, ClosureError> {
    run_with_threads(threads, || ClosurePoset::from_relation(closure_relation(q, strategy)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremFamily {
    /// γ_{j+1,q+1−j} ⪯ γ_{j,q+3−j}, 3 ≤ j < q/2
    PrimarySmall,
    /// γ_{q−j,j+1} ⪯ γ_{q−j+2,j}, q/2+1 < j ≤ q−1
    PrimaryLarge,
    /// γ_{j+1,q+1−j+i} ⪯ γ_{j,q+3−j+i}, 4 ≤ j < q/2, 1 ≤ i ≤ j−3
    SecondarySmall,
    /// γ_{q−j,j+1−i} ⪯ γ_{q+2−j,j−i}, q/2+2 < j ≤ q−1, 1 ≤ i < j−q/2−1
    SecondaryLarge,
}

impl TheoremFamily {
    pub fn is_primary(&self) -> bool {
        matches!(self, TheoremFamily::PrimarySmall | TheoremFamily::PrimaryLarge)
    }
}

/// A relation from the theorems. `witness` acts on inverses:
/// `witness • γ⁻¹_lower ≤ γ⁻¹_upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRelation {
    pub lower: GammaUV,
    pub upper: GammaUV,
    pub witness: Permutation,
    pub family: TheoremFamily,
    pub j: usize,
    pub i: usize,
}

impl TheoremRelation {
    /// The witness for the direct form `h • γ_lower ≤ γ_upper`,
    /// namely w0J · witness · w0J.
    pub fn direct_witness(&self) -> Permutation {
        let w = w0j(self.lower.q);
        compose(&compose(&w, &self.witness).unwrap(), &w).unwrap()
    }
}

fn product_of_simple(q: usize, ks: &[usize]) -> Permutation {
    ks.iter()
        .fold(Permutation::identity(q), |acc, &k| compose(&acc, &Permutation::simple_reflection(q, k)).unwrap())
}

pub fn theorem_relations(q: usize) -> Vec<TheoremRelation> {
    let mut out = Vec::new();
    if q < 5 {
        return out;
    }
    let g = |u, v| GammaUV { q, u, v };
    for j in 3..q {
        if 2 * j < q {
            out.push(TheoremRelation {
                lower: g(j + 1, q + 1 - j),
                upper: g(j, q + 3 - j),
                witness: Permutation::simple_reflection(q, j),
                family: TheoremFamily::PrimarySmall,
                j,
                i: 0,
            });
        }
        if q + 2 < 2 * j {
            out.push(TheoremRelation {
                lower: g(q - j, j + 1),
                upper: g(q - j + 2, j),
                witness: Permutation::simple_reflection(q, j),
                family: TheoremFamily::PrimaryLarge,
                j,
                i: 0,
            });
        }
    }
    for j in 4..q {
        if 2 * j < q {
            for i in 1..=j - 3 {
                let mut ks: Vec<usize> = (j - i..=j).rev().collect();
                ks.extend((1..=i).map(|l| q - (j - l)));
                out.push(TheoremRelation {
                    lower: g(j + 1, q + 1 - j + i),
                    upper: g(j, q + 3 - j + i),
                    witness: product_of_simple(q, &ks),
                    family: TheoremFamily::SecondarySmall,
                    j,
                    i,
                });
            }
        }
        if q + 4 < 2 * j {
            let mut i = 1;
            while 2 * i + q + 2 < 2 * j {
                let mut ks: Vec<usize> = (j - i..=j).rev().collect();
                ks.extend((1..=i).map(|l| q + 1 - (j - l)));
                out.push(TheoremRelation {
                    lower: g(q - j, j + 1 - i),
                    upper: g(q + 2 - j, j - i),
                    witness: product_of_simple(q, &ks),
                    family: TheoremFamily::SecondaryLarge,
                    j,
                    i,
                });
                i += 1;
            }
        }
    }
    out.sort_by_key(|r| (r.lower.sort_key(), r.upper.sort_key()));
    out
}

/// Order generated by the Bruhat order and the given extra pairs.
pub fn generated_order(strata: &[GammaUV], extra: &[(GammaUV, GammaUV)]) -> Vec<Vec<bool>> {
    let mut m = bruhat_matrix(strata);
    let index: HashMap<GammaUV, usize> = strata.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    for (a, b) in extra {
        m[index[a]][index[b]] = true;
    }
    transitive_closure(&m)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverWithWitness {
    pub lower: GammaUV,
    pub upper: GammaUV,
    pub witness: Permutation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub q: usize,
    pub holds: bool,
    pub is_partial_order: bool,
    pub non_bruhat_covers: Vec<CoverWithWitness>,
    pub extra_covers: Vec<CoverRelation>,
    pub missing_covers: Vec<CoverRelation>,
}

pub fn conjecture_report(poset: &ClosurePoset) -> ConjectureReport {
    let rel = &poset.relation;
    let q = rel.q;
    let extra: Vec<(GammaUV, GammaUV)> = theorem_relations(q).iter().map(|t| (t.lower, t.upper)).collect();
    let generated = generated_order(&rel.strata, &extra);
    let computed = transitive_closure(&rel.matrix());
    let gen_covers = covers(&rel.strata, &generated);
    let extra_covers: Vec<CoverRelation> = poset.covers.iter().filter(|c| !gen_covers.contains(c)).copied().collect();
    let missing_covers: Vec<CoverRelation> = gen_covers.iter().filter(|c| !poset.covers.contains(c)).copied().collect();
    let non_bruhat_covers = poset
        .non_bruhat_covers()
        .iter()
        .map(|c| {
            let i = rel.index_of(&c.lower).unwrap();
            let j = rel.index_of(&c.upper).unwrap();
            CoverWithWitness {
                lower: c.lower,
                upper: c.upper,
                witness: rel.witness(i, j).cloned().expect("cover is a relation"),
            }
        })
        .collect();
    ConjectureReport {
        q,
        holds: computed == generated,
        is_partial_order: rel.is_partial_order(),
        non_bruhat_covers,
        extra_covers,
        missing_covers,
    }
}

pub fn verify_conjecture(q: usize, strategy: Strategy, threads: usize) -> Result<ConjectureReport, ClosureError> {
    Ok(conjecture_report(&closure_poset(q, strategy, threads)?))
}

/// A relation realized by a single simple reflection `s_k`: `upper` is the
/// smallest stratum above `s_k • γ_lower`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScanHit {
    pub lower: GammaUV,
    pub upper: GammaUV,
    pub k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub q: usize,
    /// Non-Bruhat relations realized by a single s_k, one per (source, k).
    pub hits: Vec<ScanHit>,
    /// Non-Bruhat covers of the order generated by Bruhat and the hits.
    pub essential: Vec<(GammaUV, GammaUV)>,
    pub primary: Vec<(GammaUV, GammaUV)>,
    /// The hits generate the same order as the primary relations, and the
    /// essential relations are exactly the primary ones.
    pub matches_primary: bool,
}

pub fn single_transposition_scan(q_max: usize) -> Vec<ScanReport> {
    (3..=q_max).map(scan_one).collect()
}

pub fn scan_one(q: usize) -> ScanReport {
    let strata = all_strata(q);
    let mut hits = Vec::new();
    for s in &strata {
        let w = s.to_permutation();
        for k in (1..q).filter(|&k| k != 2) {
            let y = dot_action(&Permutation::simple_reflection(q, k), &w, q).unwrap();
            if let Some((a, b)) = bruhat_corner(y.as_slice()) {
                let upper = GammaUV { q, u: a, v: b };
                if !s.bruhat_leq(&upper) {
                    hits.push(ScanHit { lower: *s, upper, k });
                }
            }
        }
    }
    let pairs: Vec<(GammaUV, GammaUV)> = hits.iter().map(|h| (h.lower, h.upper)).collect();
    let primary: Vec<(GammaUV, GammaUV)> = theorem_relations(q)
        .iter()
        .filter(|t| t.family.is_primary())
        .map(|t| (t.lower, t.upper))
        .collect();
    let from_hits = generated_order(&strata, &pairs);
    let from_primary = generated_order(&strata, &primary);
    let mut essential: Vec<(GammaUV, GammaUV)> = covers(&strata, &from_hits)
        .into_iter()
        .filter(|c| c.kind == CoverKind::NonBruhat)
        .map(|c| (c.lower, c.upper))
        .collect();
    essential.sort_by_key(|(a, b)| (a.sort_key(), b.sort_key()));
    let mut primary_sorted = primary.clone();
    primary_sorted.sort_by_key(|(a, b)| (a.sort_key(), b.sort_key()));
    let matches_primary = from_hits == from_primary && essential == primary_sorted;
    ScanReport { q, hits, essential, primary: primary_sorted, matches_primary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric_group::bruhat_leq;

    fn g(q: usize, u: usize, v: usize) -> GammaUV {
        GammaUV::new(q, u, v).unwrap()
    }

    #[test]
    fn dot_action_identity_and_errors() {
        let w = g(6, 2, 5).to_permutation();
        assert_eq!(dot_action(&Permutation::identity(6), &w, 6).unwrap(), w);
        let s2 = Permutation::simple_reflection(6, 2);
        assert!(matches!(dot_action(&s2, &w, 6), Err(ClosureError::NotParabolic(_))));
    }

    #[test]
    fn dot_action_tau_example() {
        let src = g(8, 4, 6).to_permutation().inverse();
        let y = dot_action(&Permutation::simple_reflection(8, 3), &src, 8).unwrap();
        assert_eq!(y.one_line(), vec![3, 6, 1, 2, 4, 5, 8, 7]);
    }

    #[test]
    fn corner_matches_generic_bruhat() {
        // all of S_6, plus every orbit element at q = 7
        let strata6 = all_strata(6);
        for h in parabolic_elements(6).iter().chain(std::iter::once(&Permutation::identity(6))) {
            for s in &strata6 {
                let y = dot_action(h, &s.to_permutation(), 6).unwrap();
                let corner = bruhat_corner(y.as_slice());
                for t in &strata6 {
                    let expected = bruhat_leq(&y, &t.to_permutation()).unwrap();
                    let got = corner.is_some_and(|(a, b)| t.u >= a && t.v >= b);
                    assert_eq!(expected, got, "{y} {t}");
                }
            }
        }
    }

    #[test]
    fn heap_walk_visits_every_element() {
        // the pruned walk must find the same minimal corners as brute force
        for q in 2..=7 {
            for s in all_strata(q) {
                let w = s.to_permutation();
                let mut brute = CornerSet::default();
                for h in parabolic_elements(q) {
                    let y = dot_action(&h, &w, q).unwrap();
                    if let Some((a, b)) = bruhat_corner(y.as_slice()) {
                        brute.insert(a, b, h);
                    }
                }
                let mut x: Vec<(usize, usize)> = brute.corners.iter().map(|c| (c.0, c.1)).collect();
                let fast = pruned_corners(&s);
                let mut y: Vec<(usize, usize)> = fast.corners.iter().map(|c| (c.0, c.1)).collect();
                x.sort();
                y.sort();
                assert_eq!(x, y, "q={q} {s}");
                for (a, b, h) in &fast.corners {
                    let img = dot_action(h, &w, q).unwrap();
                    assert!(bruhat_leq(&img, &g(q, *a, *b).to_permutation()).unwrap());
                }
            }
        }
    }

    #[test]
    fn conjugation_update() {
        let mut c = vec![3u8, 0, 4, 1, 2];
        let mut cinv = vec![0u8; 5];
        for (i, &v) in c.iter().enumerate() {
            cinv[v as usize] = i as u8;
        }
        let before = Permutation::from_zero_based(c.clone()).unwrap();
        conjugate_by_transposition(&mut c, &mut cinv, 2, 4);
        let t = Permutation::transposition(5, 3, 5);
        let expected = compose(&compose(&t, &before).unwrap(), &t).unwrap();
        assert_eq!(c, expected.as_slice());
        assert_eq!(cinv, inverse(&expected).as_slice());
    }

    #[test]
    fn closure_leq_examples() {
        for strategy in [Strategy::Exhaustive, Strategy::Pruned] {
            let w = closure_leq(&g(5, 1, 5), &g(5, 3, 4), strategy).unwrap().unwrap();
            let img = dot_action(&w.h, &g(5, 1, 5).to_permutation(), 5).unwrap();
            assert!(bruhat_leq(&img, &g(5, 3, 4).to_permutation()).unwrap());
            assert!(closure_leq(&g(5, 1, 2), &g(5, 1, 3), strategy).unwrap().unwrap().h.is_identity());
            assert!(closure_leq(&g(5, 3, 4), &g(5, 1, 5), strategy).unwrap().is_none());
        }
        assert!(closure_leq(&g(5, 1, 2), &g(6, 1, 3), Strategy::Pruned).is_err());
    }

    #[test]
    fn small_posets() {
        for q in 2..=4 {
            let p = closure_poset(q, Strategy::Pruned, 1).unwrap();
            assert!(p.non_bruhat_covers().is_empty(), "q={q}");
            assert!(p.relation.is_partial_order());
        }
        let p = closure_poset(5, Strategy::Exhaustive, 1).unwrap();
        let nb = p.non_bruhat_covers();
        assert_eq!(nb.len(), 1);
        assert_eq!((nb[0].lower, nb[0].upper), (g(5, 1, 5), g(5, 3, 4)));
    }

    #[test]
    fn theorem_relation_examples() {
        let t11 = theorem_relations(11);
        let has = |l: GammaUV, u: GammaUV, fam| t11.iter().any(|t| t.lower == l && t.upper == u && t.family == fam);
        assert!(has(g(11, 4, 9), g(11, 3, 11), TheoremFamily::PrimarySmall));
        assert!(has(g(11, 5, 9), g(11, 4, 11), TheoremFamily::SecondarySmall));
        let t6 = theorem_relations(6);
        assert_eq!(t6.len(), 1);
        assert_eq!((t6[0].lower, t6[0].upper), (g(6, 1, 6), g(6, 3, 5)));
        assert!(theorem_relations(3).is_empty());
    }

    #[test]
    fn theorem_witnesses_hold_in_both_forms() {
        for q in 5..=14 {
            for t in theorem_relations(q) {
                assert!(in_parabolic(&t.witness));
                let src = t.lower.to_permutation().inverse();
                let tgt = t.upper.to_permutation().inverse();
                let y = dot_action(&t.witness, &src, q).unwrap();
                assert!(bruhat_leq(&y, &tgt).unwrap(), "{t:?}");
                assert_eq!(y.length(), src.length());
                let d = dot_action(&t.direct_witness(), &t.lower.to_permutation(), q).unwrap();
                assert!(bruhat_leq(&d, &t.upper.to_permutation()).unwrap());
            }
        }
    }

    #[test]
    fn scan_small() {
        let r = single_transposition_scan(7);
        assert!(r.iter().all(|s| s.matches_primary));
        assert!(r.iter().find(|s| s.q == 4).unwrap().hits.is_empty());
    }

    #[test]
    fn transitive_reduction_on_chain() {
        let strata = vec![g(4, 1, 2), g(4, 1, 3), g(4, 1, 4)];
        let m = bruhat_matrix(&strata);
        let c = covers(&strata, &m);
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.kind == CoverKind::Bruhat));
    }
}
