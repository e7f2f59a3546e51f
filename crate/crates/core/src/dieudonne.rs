//! Monomial mod-p Dieudonné modules and their filtrations.
//!
//! F and V send each basis vector to a basis vector or to zero. Everything is
//! computed at support level: a subspace is the set of basis vectors spanning
//! it, so Frobenius twists play no role.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::json;
use thiserror::Error;

use crate::strata_index::{CosetRep, Signature};
use crate::symmetric_group::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("module of dimension {0} exceeds the supported 128")]
    TooLarge(usize),
    #[error("{0} is not injective on its support")]
    NotInjective(&'static str),
    #[error("inconsistent table: {0}")]
    BadTable(String),
    #[error("pairing is not a fixed-point-free involution")]
    BadPairing,
    #[error("operation needs a pairing")]
    NoPairing,
    #[error("pairing plan inconsistent with blocks: {0}")]
    BadPlan(String),
    #[error("closure contains incomparable subspaces")]
    NotAChain,
    #[error("no refinement to a complete flag found")]
    NoRefinement,
    #[error("chain is not a complete flag")]
    IncompleteChain,
    #[error("expected {expected} jumps of eta, found {found}")]
    JumpCount { expected: usize, found: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// Coordinate subspace: the set of basis indices spanning it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Subspace(pub u128);

impl Subspace {
    pub const ZERO: Subspace = Subspace(0);

    pub fn full(dim: usize) -> Subspace {
        if dim == 128 {
            Subspace(u128::MAX)
        } else {
            Subspace((1u128 << dim) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subspace {
        Subspace(it.into_iter().fold(0u128, |acc, i| acc | (1u128 << i)))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(&self, i: usize) -> Subspace {
        Subspace(self.0 | 1u128 << i)
    }

    pub fn dim(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(&self, other: &Subspace) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        Subspace(self.0 & other.0)
    }

    pub fn union(&self, other: &Subspace) -> Subspace {
        Subspace(self.0 | other.0)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..128).filter(|&i| self.contains(i)).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(ser)
    }
}

/// Strictly nested subspaces from 0 to the full space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub members: Vec<Subspace>,
}

impl Chain {
    pub fn is_complete(&self, dim: usize) -> bool {
        self.members.len() == dim + 1 && self.members.iter().enumerate().all(|(i, s)| s.dim() == i)
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.members.contains(s)
    }

    /// Member of the given dimension, if any.
    pub fn of_dim(&self, d: usize) -> Option<Subspace> {
        self.members.iter().copied().find(|s| s.dim() == d)
    }

    pub fn refines(&self, other: &Chain) -> bool {
        other.members.iter().all(|s| self.contains(s))
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.members.len()))?;
        for m in &self.members {
            seq.serialize_element(m)?;
        }
        seq.end()
    }
}

/// Order in which basis vectors are tried when refining a filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefineOrder {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairingPlan {
    /// Keep the block's own pairing.
    Own,
    /// Pair e_i with e_{d−1−i} inside the block.
    Reversed,
    /// Pair e_i with f_{d−1−i} of the given block.
    Dual(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialModule {
    labels: Vec<String>,
    f: Vec<Option<usize>>,
    v: Vec<Option<usize>>,
    component: Vec<Option<u8>>,
    partner: Option<Vec<usize>>,
}

fn check_injective(map: &[Option<usize>], dim: usize, name: &'static str) -> Result<(), ModuleError> {
    let mut seen = vec![false; dim];
    for t in map.iter().flatten() {
        if *t >= dim {
            return Err(ModuleError::BadTable(format!("{name} target {t} out of range")));
        }
        if seen[*t] {
            return Err(ModuleError::NotInjective(name));
        }
        seen[*t] = true;
    }
    Ok(())
}

impl MonomialModule {
    pub fn new(
        labels: Vec<String>,
        f: Vec<Option<usize>>,
        v: Vec<Option<usize>>,
        component: Vec<Option<u8>>,
        partner: Option<Vec<usize>>,
    ) -> Result<MonomialModule, ModuleError> {
        let dim = labels.len();
        if dim > 128 {
            return Err(ModuleError::TooLarge(dim));
        }
        if f.len() != dim || v.len() != dim || component.len() != dim {
            return Err(ModuleError::BadTable("table lengths differ".into()));
        }
        check_injective(&f, dim, "F")?;
        check_injective(&v, dim, "V")?;
        if let Some(p) = &partner {
            let ok = p.len() == dim && p.iter().enumerate().all(|(i, &j)| j < dim && j != i && p[j] == i);
            if !ok {
                return Err(ModuleError::BadPairing);
            }
        }
        Ok(MonomialModule { labels, f, v, component, partner })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn f_map(&self) -> &[Option<usize>] {
        &self.f
    }

    pub fn v_map(&self) -> &[Option<usize>] {
        &self.v
    }

    pub fn component(&self, i: usize) -> Option<u8> {
        self.component[i]
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner.as_ref().map(|p| p[i])
    }

    pub fn is_paired(&self) -> bool {
        self.partner.is_some()
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// The span of the basis vectors tagged with component `i`.
    pub fn component_space(&self, i: u8) -> Subspace {
        Subspace::from_indices((0..self.dim()).filter(|&k| self.component[k] == Some(i)))
    }

    pub fn ker_f(&self) -> Subspace {
        Subspace::from_indices((0..self.dim()).filter(|&k| self.f[k].is_none()))
    }

    pub fn ker_v(&self) -> Subspace {
        Subspace::from_indices((0..self.dim()).filter(|&k| self.v[k].is_none()))
    }

    pub fn apply_f(&self, s: Subspace) -> Subspace {
        image(&self.f, s)
    }

    pub fn apply_v(&self, s: Subspace) -> Subspace {
        image(&self.v, s)
    }

    /// V⁻¹(s), which always contains ker V.
    pub fn preimage_v(&self, s: Subspace) -> Subspace {
        Subspace::from_indices((0..self.dim()).filter(|&k| self.v[k].is_none_or(|t| s.contains(t))))
    }

    /// Orthogonal complement: basis vectors whose partner is not in `s`.
    pub fn complement(&self, s: Subspace) -> Result<Subspace, ModuleError> {
        let p = self.partner.as_ref().ok_or(ModuleError::NoPairing)?;
        Ok(Subspace::from_indices((0..self.dim()).filter(|&k| !s.contains(p[k]))))
    }

    /// ⟨F a, b⟩ ≠ 0 ⇔ ⟨a, V b⟩ ≠ 0 for every pair of basis vectors.
    pub fn pairing_compatible(&self) -> bool {
        let Some(p) = &self.partner else { return false };
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let lhs = self.f[a].is_some_and(|fa| p[fa] == b);
                let rhs = self.v[b].is_some_and(|vb| p[a] == vb);
                lhs == rhs
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = |m: &[Option<usize>]| m.iter().map(|t| t.map_or(-1, |x| x as i64)).collect::<Vec<i64>>();
        json!({
            "dim": self.dim(),
            "F": enc(&self.f),
            "V": enc(&self.v),
            "component": self.component.iter().map(|c| c.map(|x| x as i64)).collect::<Vec<_>>(),
            "partner": self.partner.as_ref().map(|p| p.iter().map(|&x| x as i64).collect::<Vec<_>>()),
        })
    }

    /// Smallest chain containing 0 and the whole space closed under F, V⁻¹
    /// and (when paired) the orthogonal complement.
    pub fn canonical_filtration(&self) -> Result<Chain, ModuleError> {
        let mut slots = Slots::new(self.dim());
        let seeds = [Subspace::ZERO, self.full()];
        if !self.close(&mut slots, &seeds, self.is_paired()) {
            return Err(ModuleError::NotAChain);
        }
        Ok(slots.chain())
    }

    /// A complete flag refining the canonical filtration and stable under F
    /// and V⁻¹, built one basis vector at a time with backtracking.
    ///
    /// Fails with `NoRefinement` when F or V⁻¹ permutes basis vectors
    /// cyclically (an étale or multiplicative part): no coordinate flag is
    /// stable then. [`Self::stable_filtration`] covers those modules.
    pub fn final_filtration(&self) -> Result<Chain, ModuleError> {
        self.final_filtration_with(RefineOrder::Forward)
    }

    pub fn final_filtration_with(&self, order: RefineOrder) -> Result<Chain, ModuleError> {
        self.refined(order, false)
    }

    /// A chain refining the canonical filtration, stable under F and V⁻¹,
    /// in which every gap lies inside ker F or meets it trivially. This is
    /// all that η needs; such gaps are refined by any final filtration with
    /// η increasing by one per step or staying flat.
    pub fn stable_filtration(&self) -> Result<Chain, ModuleError> {
        self.stable_filtration_with(RefineOrder::Forward)
    }

    pub fn stable_filtration_with(&self, order: RefineOrder) -> Result<Chain, ModuleError> {
        self.refined(order, true)
    }

    fn refined(&self, order: RefineOrder, only_mixed: bool) -> Result<Chain, ModuleError> {
        let canonical = self.canonical_filtration()?;
        let mut slots = Slots::new(self.dim());
        if !self.close(&mut slots, &canonical.members, false) {
            return Err(ModuleError::NotAChain);
        }
        let kernel = if only_mixed { Some(self.ker_f()) } else { None };
        self.refine(slots, order, kernel).map(|s| s.chain()).ok_or(ModuleError::NoRefinement)
    }

    fn refine(&self, slots: Slots, order: RefineOrder, kernel: Option<Subspace>) -> Option<Slots> {
        let Some((lo, hi)) = slots.first_gap(kernel) else {
            return Some(slots);
        };
        let mut candidates: Vec<usize> = Subspace(hi.0 & !lo.0).indices();
        if order == RefineOrder::Reverse {
            candidates.reverse();
        }
        for e in candidates {
            let mut next = slots.clone();
            if self.close(&mut next, &[lo.with(e)], false) {
                if let Some(done) = self.refine(next, order, kernel) {
                    return Some(done);
                }
            }
        }
        None
    }

    fn close(&self, slots: &mut Slots, seeds: &[Subspace], with_complement: bool) -> bool {
        let mut work: Vec<Subspace> = Vec::new();
        for &s in seeds {
            match slots.insert(s) {
                None => return false,
                Some(true) => work.push(s),
                Some(false) => {}
            }
        }
        while let Some(s) = work.pop() {
            let mut images = vec![self.apply_f(s), self.preimage_v(s)];
            if with_complement {
                images.push(self.complement(s).expect("paired"));
            }
            for t in images {
                match slots.insert(t) {
                    None => return false,
                    Some(true) => work.push(t),
                    Some(false) => {}
                }
            }
        }
        true
    }

    /// η(j) = dim(W_j ∩ ker F) for j = 0..dim, for any final filtration W
    /// refining `chain`. Every gap of `chain` must lie inside ker F or meet
    /// it trivially (always true for a complete flag).
    pub fn eta(&self, chain: &Chain) -> Result<Vec<usize>, ModuleError> {
        interpolate_eta(&chain.members, self.ker_f(), self.dim())
    }

    /// Chain induced on component `i`.
    pub fn component_flag(&self, chain: &Chain, i: u8) -> Vec<Subspace> {
        let comp = self.component_space(i);
        let mut out: Vec<Subspace> = Vec::new();
        for s in &chain.members {
            let t = s.intersect(&comp);
            if out.last() != Some(&t) {
                out.push(t);
            }
        }
        out
    }

    /// η_i(j) = dim(C_{i,j} ∩ ker F) for j = 0..dim N_i.
    pub fn eta_component(&self, chain: &Chain, i: u8) -> Result<Vec<usize>, ModuleError> {
        let flag = self.component_flag(chain, i);
        interpolate_eta(&flag, self.ker_f(), self.component_space(i).dim())
    }

    /// The stratum γ_u̲ of a module with components: the jumps of η_1.
    pub fn extract_gamma(&self, b: usize) -> Result<CosetRep, ModuleError> {
        let chain = self.stable_filtration()?;
        let eta = self.eta_component(&chain, 1)?;
        let q = eta.len() - 1;
        let jumps = jumps(&eta);
        if jumps.len() != b {
            return Err(ModuleError::JumpCount { expected: b, found: jumps.len() });
        }
        CosetRep::new(Signature { a: q - b, b }, jumps).map_err(|e| ModuleError::BadParams(e.to_string()))
    }

    /// The Siegel permutation ω: jumps of η go to 1..q in order, the other
    /// indices to q+1..2q.
    pub fn extract_siegel(&self) -> Result<Permutation, ModuleError> {
        let chain = self.stable_filtration()?;
        let eta = self.eta(&chain)?;
        siegel_from_eta(&eta)
    }
}

fn interpolate_eta(members: &[Subspace], kernel: Subspace, dim: usize) -> Result<Vec<usize>, ModuleError> {
    let complete_ends = members.first().is_some_and(|s| s.dim() == 0) && members.last().is_some_and(|s| s.dim() == dim);
    if !complete_ends {
        return Err(ModuleError::IncompleteChain);
    }
    let mut eta = vec![0usize];
    for w in members.windows(2) {
        let gap = Subspace(w[1].0 & !w[0].0);
        let killed = gap.intersect(&kernel).dim();
        let base = *eta.last().unwrap();
        if killed == gap.dim() {
            eta.extend((1..=gap.dim()).map(|t| base + t));
        } else if killed == 0 {
            eta.extend(std::iter::repeat_n(base, gap.dim()));
        } else {
            return Err(ModuleError::IncompleteChain);
        }
    }
    Ok(eta)
}

fn image(map: &[Option<usize>], s: Subspace) -> Subspace {
    Subspace::from_indices((0..map.len()).filter(|&k| s.contains(k)).filter_map(|k| map[k]))
}

/// Positions j ≥ 1 where η(j) > η(j−1).
pub fn jumps(eta: &[usize]) -> Vec<usize> {
    (1..eta.len()).filter(|&j| eta[j] > eta[j - 1]).collect()
}

pub fn siegel_from_eta(eta: &[usize]) -> Result<Permutation, ModuleError> {
    let n = eta.len() - 1;
    let js = jumps(eta);
    if n % 2 != 0 || js.len() != n / 2 {
        return Err(ModuleError::JumpCount { expected: n / 2, found: js.len() });
    }
    let q = n / 2;
    let mut images = vec![0usize; n];
    let mut next_jump = 1;
    let mut next_other = q + 1;
    for i in 1..=n {
        if js.contains(&i) {
            images[i - 1] = next_jump;
            next_jump += 1;
        } else {
            images[i - 1] = next_other;
            next_other += 1;
        }
    }
    Permutation::from_one_line(&images).map_err(|e| ModuleError::BadParams(e.to_string()))
}

/// Chain members indexed by dimension.
#[derive(Clone)]
struct Slots {
    by_dim: Vec<Option<Subspace>>,
}

impl Slots {
    fn new(dim: usize) -> Slots {
        Slots { by_dim: vec![None; dim + 1] }
    }

    /// Some(true) if inserted, Some(false) if already present, None if the
    /// chain property would break.
    fn insert(&mut self, s: Subspace) -> Option<bool> {
        let d = s.dim();
        if let Some(t) = self.by_dim[d] {
            return (t == s).then_some(false);
        }
        let below = self.by_dim[..d].iter().rev().flatten().next();
        let above = self.by_dim[d + 1..].iter().flatten().next();
        if below.is_some_and(|b| !b.is_subset(&s)) || above.is_some_and(|a| !s.is_subset(a)) {
            return None;
        }
        self.by_dim[d] = Some(s);
        Some(true)
    }

    /// First gap of size ≥ 2; with a kernel given, only gaps that meet the
    /// kernel partially count.
    fn first_gap(&self, kernel: Option<Subspace>) -> Option<(Subspace, Subspace)> {
        let present: Vec<Subspace> = self.by_dim.iter().flatten().copied().collect();
        present
            .windows(2)
            .find(|w| {
                let gap = Subspace(w[1].0 & !w[0].0);
                gap.dim() >= 2
                    && kernel.is_none_or(|k| {
                        let killed = gap.intersect(&k).dim();
                        killed != 0 && killed != gap.dim()
                    })
            })
            .map(|w| (w[0], w[1]))
    }

    fn chain(&self) -> Chain {
        Chain { members: self.by_dim.iter().flatten().copied().collect() }
    }
}

fn label(i: usize, j: usize) -> String {
    format!("e{i},{j}")
}

/// Basis index of e_{i,j} in a standard object with components of size `q`.
pub fn std_index(q: usize, i: usize, j: usize) -> usize {
    (i - 1) * q + (j - 1)
}

/// C_{i,j} = span(e_{i,1}, …, e_{i,j}) in a standard object, shifted by `offset`.
pub fn std_prefix(q: usize, offset: usize, i: usize, j: usize) -> Subspace {
    Subspace::from_indices((1..=j).map(|k| offset + std_index(q, i, k)))
}

fn two_component_module(
    q: usize,
    f: impl Fn(usize, usize) -> Option<(usize, usize)>,
    v: impl Fn(usize, usize) -> Option<(usize, usize)>,
    partner: impl Fn(usize, usize) -> (usize, usize),
) -> Result<MonomialModule, ModuleError> {
    let mut labels = Vec::new();
    let mut fm = Vec::new();
    let mut vm = Vec::new();
    let mut comp = Vec::new();
    let mut pm = Vec::new();
    let idx = |(i, j): (usize, usize)| std_index(q, i, j);
    for i in 1..=2 {
        for j in 1..=q {
            labels.push(label(i, j));
            fm.push(f(i, j).map(idx));
            vm.push(v(i, j).map(idx));
            comp.push(Some(i as u8));
            pm.push(idx(partner(i, j)));
        }
    }
    MonomialModule::new(labels, fm, vm, comp, Some(pm))
}

/// Standard object of the stratum γ_{u,v} of W(q−2,2).
pub fn standard_object_a2(q: usize, u: usize, v: usize) -> Result<MonomialModule, ModuleError> {
    if !(1 <= u && u < v && v <= q) {
        return Err(ModuleError::BadParams(format!("(q,u,v)=({q},{u},{v})")));
    }
    let f = |i: usize, j: usize| -> Option<(usize, usize)> {
        if i == 1 {
            if j == u || j == v {
                None
            } else if j < u {
                Some((2, j))
            } else if j < v {
                Some((2, j - 1))
            } else {
                Some((2, j - 2))
            }
        } else if j == q + 1 - v {
            Some((1, 1))
        } else if j == q + 1 - u {
            Some((1, 2))
        } else {
            None
        }
    };
    let vmap = |i: usize, j: usize| -> Option<(usize, usize)> {
        if i == 1 {
            if j <= 2 {
                None
            } else if j <= q + 2 - v {
                Some((2, j - 2))
            } else if j <= q + 1 - u {
                Some((2, j - 1))
            } else {
                Some((2, j))
            }
        } else if j + 1 == q {
            Some((1, u))
        } else if j == q {
            Some((1, v))
        } else {
            None
        }
    };
    two_component_module(q, f, vmap, |i, j| (3 - i, q + 1 - j))
}

/// Standard object of the stratum γ_{a+1} of W(m,1).
pub fn standard_object_m1(m: usize, a: usize) -> Result<MonomialModule, ModuleError> {
    if a > m {
        return Err(ModuleError::BadParams(format!("(m,a)=({m},{a})")));
    }
    let q = m + 1;
    let f = |i: usize, j: usize| -> Option<(usize, usize)> {
        if i == 1 {
            match j {
                j if j <= a => Some((2, j)),
                j if j == a + 1 => None,
                j => Some((2, j - 1)),
            }
        } else {
            (j == m + 1 - a).then_some((1, 1))
        }
    };
    let vmap = |i: usize, j: usize| -> Option<(usize, usize)> {
        if i == 1 {
            match j {
                1 => None,
                j if j <= m + 1 - a => Some((2, j - 1)),
                j => Some((2, j)),
            }
        } else {
            (j == m + 1).then_some((1, a + 1))
        }
    };
    two_component_module(q, f, vmap, |i, j| (3 - i, m + 2 - j))
}

/// Two-dimensional superspecial block: F(g1) = V(g1) = g2.
pub fn superspecial_block() -> MonomialModule {
    MonomialModule::new(
        vec!["g1".into(), "g2".into()],
        vec![Some(1), None],
        vec![Some(1), None],
        vec![Some(1), Some(2)],
        Some(vec![1, 0]),
    )
    .expect("valid table")
}

/// M_{m,n}: F(e_i) = e_{i+n} for i < m, V(e_i) = e_{i+m} for i < n.
pub fn minimal_block(m: usize, n: usize) -> Result<MonomialModule, ModuleError> {
    if m + n == 0 {
        return Err(ModuleError::BadParams("m = n = 0".into()));
    }
    let d = m + n;
    MonomialModule::new(
        (0..d).map(|i| format!("e{i}")).collect(),
        (0..d).map(|i| (i < m).then_some(i + n)).collect(),
        (0..d).map(|i| (i < n).then_some(i + m)).collect(),
        vec![None; d],
        None,
    )
}

/// Block-diagonal sum. With a plan, the blocks are paired as described and
/// different blocks are orthogonal.
pub fn direct_sum(blocks: &[MonomialModule], plan: Option<&[PairingPlan]>) -> Result<MonomialModule, ModuleError> {
    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.dim();
            Some(o)
        })
        .collect();
    let shift = |m: &[Option<usize>], o: usize| m.iter().map(|t| t.map(|x| x + o)).collect::<Vec<_>>();
    let mut labels = Vec::new();
    let mut f = Vec::new();
    let mut v = Vec::new();
    let mut comp = Vec::new();
    for (k, (b, &o)) in blocks.iter().zip(&offsets).enumerate() {
        labels.extend(b.labels.iter().map(|l| format!("{l}#{k}")));
        f.extend(shift(&b.f, o));
        v.extend(shift(&b.v, o));
        comp.extend(b.component.iter().copied());
    }
    let partner = match plan {
        None => None,
        Some(plan) => {
            if plan.len() != blocks.len() {
                return Err(ModuleError::BadPlan("one entry per block required".into()));
            }
            let mut p = Vec::new();
            for (k, (b, &o)) in blocks.iter().zip(&offsets).enumerate() {
                let d = b.dim();
                match &plan[k] {
                    PairingPlan::Own => {
                        let own = b.partner.as_ref().ok_or_else(|| ModuleError::BadPlan(format!("block {k} has no pairing")))?;
                        p.extend(own.iter().map(|&x| x + o));
                    }
                    PairingPlan::Reversed => p.extend((0..d).map(|i| o + d - 1 - i)),
                    PairingPlan::Dual(other) => {
                        let other = *other;
                        if other >= blocks.len() || plan[other] != PairingPlan::Dual(k) || other == k {
                            return Err(ModuleError::BadPlan(format!("block {k} dual entry not symmetric")));
                        }
                        if blocks[other].dim() != d {
                            return Err(ModuleError::BadPlan(format!("blocks {k} and {other} differ in dimension")));
                        }
                        p.extend((0..d).map(|i| offsets[other] + d - 1 - i));
                    }
                }
            }
            Some(p)
        }
    };
    MonomialModule::new(labels, f, v, comp, partner)
}
