//! The forgetful map to the Siegel index set W_q, supersingularity criteria
//! read off ω, minimal strata of non-supersingular Newton strata, and the
//! per-stratum classification.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dieudonne::{direct_sum, minimal_block, standard_object_a2, ModuleError, MonomialModule, PairingPlan, Subspace};
use crate::product_maps::Certificate;
use crate::strata_index::{all_strata, GammaUV, StrataError};
use crate::symmetric_group::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SiegelError {
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("{0} is not in W_q")]
    NotInWq(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("word {word} predicts eta({point}) = {expected}, filtration gives {found}")]
    WordMismatch { word: String, point: usize, expected: usize, found: usize },
    #[error("conflicting verdicts for {stratum}: {first:?} and {second:?}")]
    Conflict { stratum: String, first: Verdict, second: Verdict },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("empty profile")]
    Empty,
    #[error("condition (i): parts sum to {found}, expected {expected}")]
    Sum { expected: usize, found: usize },
    #[error("condition (ii): gcd(n_{l}, n_{mirror}) = {gcd}")]
    NotCoprime { l: usize, mirror: usize, gcd: usize },
    #[error("condition (iii): every n_l + n_(r+1-l) equals 2")]
    AllHalf,
}

/// An element of W_q ⊂ S_{2q}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiegelPerm(Permutation);

impl SiegelPerm {
    pub fn new(p: Permutation) -> Result<SiegelPerm, SiegelError> {
        if !in_wq(&p) {
            return Err(SiegelError::NotInWq(p.to_string()));
        }
        Ok(SiegelPerm(p))
    }

    pub fn q(&self) -> usize {
        self.0.degree() / 2
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    /// 1-based image.
    pub fn image(&self, i: usize) -> usize {
        self.0.image(i)
    }

    pub fn first_half(&self) -> Vec<usize> {
        (1..=self.q()).map(|i| self.image(i)).collect()
    }
}

impl fmt::Display for SiegelPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// ω⁻¹(1) < ⋯ < ω⁻¹(q) and ω(i) + ω(2q+1−i) = 2q+1.
pub fn in_wq(p: &Permutation) -> bool {
    let d = p.degree();
    if d % 2 != 0 {
        return false;
    }
    let q = d / 2;
    let inv = p.inverse();
    (1..q).all(|k| inv.image(k) < inv.image(k + 1)) && (1..=d).all(|i| p.image(i) + p.image(d + 1 - i) == d + 1)
}

fn complete_by_duality(q: usize, first: &[usize]) -> Result<SiegelPerm, SiegelError> {
    let mut images = first.to_vec();
    images.extend((q + 1..=2 * q).map(|i| 2 * q + 1 - first[2 * q - i]));
    let p = Permutation::from_one_line(&images).map_err(|_| SiegelError::NotInWq(format!("{images:?}")))?;
    SiegelPerm::new(p)
}

/// ψ(γ_{u,v}) by the closed-form tables on 1..q, completed by duality.
pub fn psi(q: usize, u: usize, v: usize) -> Result<SiegelPerm, SiegelError> {
    GammaUV::new(q, u, v)?;
    let first: Vec<usize> = (1..=q).map(|i| psi_first_half(q, u, v, i)).collect();
    complete_by_duality(q, &first)
}

fn psi_first_half(q: usize, u: usize, v: usize, i: usize) -> usize {
    if u == 1 && v == 2 {
        return i;
    }
    if u == 1 {
        return match i {
            i if i < q + 2 - v => i,
            i if i == q + 2 - v => q + 1,
            i if i < q => i - 1,
            _ => q + 2,
        };
    }
    if u == 2 {
        if v == q {
            return if i <= 2 { q + i } else { i - 2 };
        }
        // second non-jump index
        let k = if q + 1 - v <= v - 2 { q + 2 - v } else { q + 3 - v };
        return match i {
            1 => 1,
            2 => q + 1,
            i if i < k => i - 1,
            i if i == k => q + 2,
            i => i - 2,
        };
    }
    if u == q - 1 {
        return if i <= 4 { q + i } else { i - 4 };
    }
    let ku = q + 3 - u;
    if v == q - 1 {
        return match i {
            1 => 1,
            i if i <= 4 => q + i - 1,
            i if i < ku => i - 3,
            i if i == ku => q + 4,
            i => i - 4,
        };
    }
    if v == q {
        return match i {
            1 | 2 => q + i,
            3 => 1,
            4 => q + 3,
            i if i < ku => i - 3,
            i if i == ku => q + 4,
            i => i - 4,
        };
    }
    let kv = q + 3 - v;
    match i {
        1 | 2 => i,
        3 | 4 => q + i - 2,
        i if i < kv => i - 2,
        i if i == kv => q + 3,
        i if i < ku => i - 3,
        i if i == ku => q + 4,
        i => i - 4,
    }
}

/// ψ(γ_{u,v}) read off η of the standard object.
pub fn psi_oracle(q: usize, u: usize, v: usize) -> Result<SiegelPerm, SiegelError> {
    GammaUV::new(q, u, v)?;
    let p = standard_object_a2(q, u, v)?.extract_siegel()?;
    SiegelPerm::new(p)
}

/// (A_q)_ω lies in the supersingular locus iff ω(i) = i for i ≤ ⌈q/2⌉.
pub fn ss_contained(w: &SiegelPerm) -> bool {
    (1..=w.q().div_ceil(2)).all(|i| w.image(i) == i)
}

/// F is nilpotent on the module iff ω(1) = 1.
pub fn f_nilpotent(w: &SiegelPerm) -> bool {
    w.image(1) == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    F,
    Vinv,
}

/// A word in F and V⁻¹, written left to right; the rightmost letter acts first.
pub type Word = Vec<Letter>;

pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| if *l == Letter::F { "F" } else { "V^-1" }).collect::<Vec<_>>().join(" ")
}

fn step_value(l: Letter, x: usize, m: usize, n: usize) -> usize {
    match l {
        Letter::F => x.saturating_sub(n),
        Letter::Vinv => (x + m).min(m + n),
    }
}

/// w(m,n) by the recursion from the empty word's value m+n.
pub fn word_value(word: &[Letter], m: usize, n: usize) -> usize {
    word.iter().rev().fold(m + n, |x, &l| step_value(l, x, m, n))
}

/// w(M) as a subspace: the word applied to the full space.
pub fn apply_word(module: &MonomialModule, word: &[Letter]) -> Subspace {
    word.iter().rev().fold(module.full(), |s, &l| match l {
        Letter::F => module.apply_f(s),
        Letter::Vinv => module.preimage_v(s),
    })
}

/// Slope data n_1, …, n_r.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopeProfile {
    pub n: Vec<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SlopeProfile {
    /// Checks conditions (i)–(iii) for the given q.
    pub fn new(q: usize, n: Vec<usize>) -> Result<SlopeProfile, ProfileError> {
        let r = n.len();
        if r == 0 {
            return Err(ProfileError::Empty);
        }
        let total: usize = n.iter().sum();
        if total != q {
            return Err(ProfileError::Sum { expected: q, found: total });
        }
        for l in 0..r {
            let g = gcd(n[l], n[r - 1 - l]);
            if g != 1 {
                return Err(ProfileError::NotCoprime { l: l + 1, mirror: r - l, gcd: g });
            }
        }
        if (0..r).all(|l| n[l] + n[r - 1 - l] == 2) {
            return Err(ProfileError::AllHalf);
        }
        Ok(SlopeProfile { n })
    }

    pub fn q(&self) -> usize {
        self.n.iter().sum()
    }

    /// Block parameters (m_l, n_l) = (n_{r+1−l}, n_l).
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let r = self.n.len();
        (0..r).map(|l| (self.n[r - 1 - l], self.n[l])).collect()
    }

    /// M_α = ⊕ M_{n_{r+1−l}, n_l}, block l paired with block r+1−l.
    pub fn module(&self) -> Result<MonomialModule, SiegelError> {
        let r = self.n.len();
        let blocks: Vec<MonomialModule> =
            self.blocks().into_iter().map(|(m, n)| minimal_block(m, n)).collect::<Result<_, _>>()?;
        let plan: Vec<PairingPlan> =
            (0..r).map(|l| if 2 * l + 1 == r { PairingPlan::Reversed } else { PairingPlan::Dual(r - 1 - l) }).collect();
        Ok(direct_sum(&blocks, Some(&plan))?)
    }
}

impl fmt::Display for SlopeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.n.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// ω_α together with the word cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalOmega {
    pub profile: SlopeProfile,
    pub omega: SiegelPerm,
    pub eta: Vec<usize>,
    /// Distinct points (Σ w(m_l,n_l), η) reached by words.
    pub word_points: Vec<(usize, usize)>,
    /// Whether the word constraints alone force η.
    pub words_pin_eta: bool,
}

/// ω_α of the minimal stratum for an admissible profile. η is taken from a
/// filtration of M_α and checked against every word of length ≤ 4q.
pub fn minimal_omega(profile: &SlopeProfile) -> Result<MinimalOmega, SiegelError> {
    let q = profile.q();
    let module = profile.module()?;
    let chain = module.stable_filtration()?;
    let eta = module.eta(&chain)?;
    let omega = SiegelPerm::new(crate::dieudonne::siegel_from_eta(&eta)?)?;
    let blocks = profile.blocks();
    let mut points = BTreeMap::new();
    for (state, word) in word_states(&blocks, 4 * q) {
        let point: usize = state.iter().sum();
        let expected: usize = state.iter().zip(&blocks).map(|(&w, &(_, n))| n.min(w)).sum();
        if eta[point] != expected {
            return Err(SiegelError::WordMismatch {
                word: word_to_string(&word),
                point,
                expected,
                found: eta[point],
            });
        }
        points.insert(point, expected);
    }
    let word_points: Vec<(usize, usize)> = points.into_iter().collect();
    let words_pin_eta = word_points.windows(2).all(|w| {
        let (dj, de) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        de == 0 || de == dj
    });
    Ok(MinimalOmega { profile: profile.clone(), omega, eta, word_points, words_pin_eta })
}

/// Distinct tuples (w(m_l,n_l))_l over all words of length ≤ `max_len`, each
/// with a shortest word reaching it.
pub fn word_states(blocks: &[(usize, usize)], max_len: usize) -> Vec<(Vec<usize>, Word)> {
    let start: Vec<usize> = blocks.iter().map(|&(m, n)| m + n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut out = vec![(start.clone(), Word::new())];
    let mut frontier = vec![(start, Word::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (state, word) in &frontier {
            for l in [Letter::F, Letter::Vinv] {
                let s: Vec<usize> = state.iter().zip(blocks).map(|(&x, &(m, n))| step_value(l, x, m, n)).collect();
                if seen.insert(s.clone()) {
                    let mut w = vec![l];
                    w.extend(word.iter().copied());
                    next.push((s.clone(), w.clone()));
                    out.push((s, w));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    out
}

/// All admissible profiles for q up to reordering of blocks (which does not
/// change M_α up to isomorphism): a nonempty multiset of coprime pairs
/// a < b plus c copies of the slope-1/2 part, with Σ(a+b) + c = q. Each is
/// returned as the sequence (b_1, …, b_p, 1^c, a_p, …, a_1). `max_parts`
/// bounds r.
pub fn admissible_profiles(q: usize, max_parts: Option<usize>) -> Vec<SlopeProfile> {
    let mut pairs = Vec::new();
    for s in 1..=q {
        for a in 0..=s / 2 {
            let b = s - a;
            if a < b && gcd(a, b) == 1 {
                pairs.push((a, b));
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect_profiles(&pairs, 0, q, &mut chosen, &mut out, max_parts);
    out
}

fn collect_profiles(
    pairs: &[(usize, usize)],
    from: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<SlopeProfile>,
    max_parts: Option<usize>,
) {
    if !chosen.is_empty() {
        let r = 2 * chosen.len() + left;
        if max_parts.is_none_or(|k| r <= k) {
            let mut n: Vec<usize> = chosen.iter().map(|p| p.1).collect();
            n.extend(std::iter::repeat_n(1, left));
            n.extend(chosen.iter().rev().map(|p| p.0));
            out.push(SlopeProfile { n });
        }
    }
    for k in from..pairs.len() {
        let (a, b) = pairs[k];
        if a + b > left {
            continue;
        }
        if max_parts.is_some_and(|mp| 2 * (chosen.len() + 1) > mp) {
            break;
        }
        chosen.push((a, b));
        collect_profiles(pairs, k, left - a - b, chosen, out, max_parts);
        chosen.pop();
    }
}

/// ω_α for every admissible profile of q, keyed by ω.
#[derive(Debug, Clone, Default)]
pub struct MinimalCatalog {
    pub q: usize,
    pub by_omega: BTreeMap<SiegelPerm, Vec<SlopeProfile>>,
    /// Profiles whose word constraints did not force η.
    pub unpinned: Vec<SlopeProfile>,
}

impl MinimalCatalog {
    pub fn build(q: usize, max_parts: Option<usize>) -> Result<MinimalCatalog, SiegelError> {
        let mut by_omega: BTreeMap<SiegelPerm, Vec<SlopeProfile>> = BTreeMap::new();
        let mut unpinned = Vec::new();
        for p in admissible_profiles(q, max_parts) {
            let m = minimal_omega(&p)?;
            if !m.words_pin_eta {
                unpinned.push(p.clone());
            }
            by_omega.entry(m.omega).or_default().push(p);
        }
        Ok(MinimalCatalog { q, by_omega, unpinned })
    }

    pub fn profiles_for(&self, w: &SiegelPerm) -> &[SlopeProfile] {
        self.by_omega.get(w).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Contained,
    Intersects,
    Disjoint,
    Unknown,
}

/// Result that supports a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// ω(i) = i for i ≤ ⌈q/2⌉.
    PrefixIdentity,
    /// ω(1) ≠ 1, so F is not nilpotent.
    FNotNilpotent,
    /// ψ(γ) is the minimal stratum of a non-supersingular Newton stratum.
    MinimalStratum { profile: SlopeProfile },
    /// Product construction of a supersingular point.
    Product { certificate: Certificate },
}

impl Provenance {
    pub fn verdict(&self) -> Verdict {
        match self {
            Provenance::PrefixIdentity => Verdict::Contained,
            Provenance::FNotNilpotent | Provenance::MinimalStratum { .. } => Verdict::Disjoint,
            Provenance::Product { .. } => Verdict::Intersects,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SSStatus {
    pub verdict: Verdict,
    pub provenance: Vec<Provenance>,
}

/// Strongest verdict supported by the criteria. Contained and Intersects
/// are compatible (Contained is reported); either one alongside Disjoint is
/// an error.
pub fn classify(
    q: usize,
    u: usize,
    v: usize,
    certificates: &BTreeMap<GammaUV, Certificate>,
    catalog: &MinimalCatalog,
) -> Result<SSStatus, SiegelError> {
    let g = GammaUV::new(q, u, v)?;
    let w = psi(q, u, v)?;
    let mut provenance = Vec::new();
    if ss_contained(&w) {
        provenance.push(Provenance::PrefixIdentity);
    }
    if let Some(c) = certificates.get(&g) {
        provenance.push(Provenance::Product { certificate: c.clone() });
    }
    if !f_nilpotent(&w) {
        provenance.push(Provenance::FNotNilpotent);
    }
    if catalog.q == q {
        for p in catalog.profiles_for(&w) {
            provenance.push(Provenance::MinimalStratum { profile: p.clone() });
        }
    }
    let verdicts: BTreeSet<Verdict> = provenance.iter().map(|p| p.verdict()).collect();
    if verdicts.contains(&Verdict::Disjoint) {
        if let Some(&other) = verdicts.iter().find(|&&x| x != Verdict::Disjoint) {
            return Err(SiegelError::Conflict { stratum: g.to_string(), first: other, second: Verdict::Disjoint });
        }
    }
    let verdict = verdicts.into_iter().next().unwrap_or(Verdict::Unknown);
    Ok(SSStatus { verdict, provenance })
}

/// One row of a per-q report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub u: usize,
    pub v: usize,
    pub dim: usize,
    pub verdict: Verdict,
    pub provenance: Vec<Provenance>,
}

pub fn ss_report(q: usize, max_parts: Option<usize>) -> Result<Vec<StratumReport>, SiegelError> {
    let certs = crate::product_maps::certified_ss_intersections(q);
    let catalog = MinimalCatalog::build(q, max_parts)?;
    all_strata(q)
        .into_iter()
        .map(|g| {
            let s = classify(q, g.u, g.v, &certs, &catalog)?;
            Ok(StratumReport { u: g.u, v: g.v, dim: g.length(), verdict: s.verdict, provenance: s.provenance })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product_maps::certified_ss_intersections;

    #[test]
    fn psi_examples() {
        assert!(psi(5, 1, 2).unwrap().permutation().is_identity());
        assert_eq!(psi(5, 1, 3).unwrap().first_half(), vec![1, 2, 3, 6, 7]);
        for q in 5..=10 {
            let w = psi(q, q - 1, q).unwrap();
            for i in 1..=4 {
                assert_eq!(w.image(i), q + i);
            }
        }
        assert!(psi(5, 3, 3).is_err());
    }

    #[test]
    fn psi_matches_oracle() {
        for q in 2..=12 {
            for g in all_strata(q) {
                assert_eq!(psi(q, g.u, g.v).unwrap(), psi_oracle(q, g.u, g.v).unwrap(), "q={q} {g}");
            }
        }
    }

    #[test]
    fn containment_and_nilpotence() {
        assert!(ss_contained(&psi(6, 1, 4).unwrap()));
        assert!(!ss_contained(&psi(6, 1, 5).unwrap()));
        for q in 2..=12 {
            for g in all_strata(q) {
                let w = psi(q, g.u, g.v).unwrap();
                assert_eq!(ss_contained(&w), g.u == 1 && g.v < q / 2 + 2, "q={q} {g}");
                assert_eq!(f_nilpotent(&w), !(g.u > 1 && g.v == q), "q={q} {g}");
            }
        }
    }

    #[test]
    fn word_values() {
        assert_eq!(word_value(&[], 2, 1), 3);
        assert_eq!(word_value(&[Letter::F], 2, 1), 2);
        assert_eq!(word_value(&[Letter::Vinv, Letter::F], 2, 1), 3);
        for m in 0..=4 {
            for n in 0..=4 {
                if m + n == 0 {
                    continue;
                }
                let block = minimal_block(m, n).unwrap();
                for (state, word) in word_states(&[(m, n)], 12) {
                    let d = m + n;
                    let expected = Subspace::from_indices(d - state[0]..d);
                    assert_eq!(apply_word(&block, &word), expected, "m={m} n={n} {}", word_to_string(&word));
                    assert_eq!(word_value(&word, m, n), state[0]);
                }
            }
        }
    }

    #[test]
    fn profile_validation() {
        assert!(SlopeProfile::new(3, vec![1, 2]).is_ok());
        assert_eq!(SlopeProfile::new(4, vec![1, 1, 1, 1]), Err(ProfileError::AllHalf));
        assert_eq!(SlopeProfile::new(4, vec![2, 2]), Err(ProfileError::NotCoprime { l: 1, mirror: 2, gcd: 2 }));
        assert_eq!(SlopeProfile::new(4, vec![1, 2]), Err(ProfileError::Sum { expected: 4, found: 3 }));
        assert_eq!(SlopeProfile::new(0, vec![]), Err(ProfileError::Empty));
        assert!(SlopeProfile::new(3, vec![0, 2, 1]).is_err());
    }

    #[test]
    fn minimal_omega_small() {
        let p = SlopeProfile::new(3, vec![1, 2]).unwrap();
        assert_eq!(p.blocks(), vec![(2, 1), (1, 2)]);
        assert!(p.module().unwrap().pairing_compatible());
        let m = minimal_omega(&p).unwrap();
        assert!(in_wq(m.omega.permutation()));
        assert!(f_nilpotent(&m.omega));
        // ordinary: blocks M_{0,1} and M_{1,0}
        let ord = minimal_omega(&SlopeProfile::new(2, vec![1, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!(ord.omega.first_half(), vec![3, 4]);
        assert!(ord.words_pin_eta);
    }

    #[test]
    fn enumerated_profiles_are_admissible() {
        for q in 1..=10 {
            let all = admissible_profiles(q, None);
            assert!(!all.is_empty());
            for p in &all {
                assert_eq!(SlopeProfile::new(q, p.n.clone()).as_ref(), Ok(p), "q={q} {p}");
            }
            let distinct: BTreeSet<&SlopeProfile> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            for p in admissible_profiles(q, Some(4)) {
                assert!(p.n.len() <= 4);
            }
        }
        let two: Vec<Vec<usize>> = admissible_profiles(2, None).into_iter().map(|p| p.n).collect();
        assert_eq!(two, vec![vec![1, 1, 0], vec![1, 1, 0, 0]]);
    }

    #[test]
    fn minimal_omegas_sweep() {
        for q in 1..=8 {
            for p in admissible_profiles(q, None) {
                let m = minimal_omega(&p).unwrap();
                let eta = &m.eta;
                for j in 0..=2 * q {
                    assert_eq!(eta[j] + q, eta[2 * q - j] + j);
                }
                let etale = p.blocks().iter().any(|&(a, b)| a == 0 || b == 0);
                assert_eq!(!f_nilpotent(&m.omega), etale, "q={q} {p}");
                assert!(!ss_contained(&m.omega), "q={q} {p}");
            }
        }
    }

    #[test]
    fn classify_q5() {
        let certs = certified_ss_intersections(5);
        let cat = MinimalCatalog::build(5, None).unwrap();
        let v = |u, w| classify(5, u, w, &certs, &cat).unwrap().verdict;
        assert_eq!(v(1, 2), Verdict::Contained);
        assert_eq!(v(1, 3), Verdict::Contained);
        assert_eq!(v(2, 5), Verdict::Disjoint);
        assert_eq!(v(3, 5), Verdict::Disjoint);
        assert_eq!(v(4, 5), Verdict::Disjoint);
        assert_eq!(v(2, 3), Verdict::Intersects);
    }

    #[test]
    fn reports_have_no_conflicts() {
        for q in 2..=10 {
            let rows = ss_report(q, None).unwrap();
            assert_eq!(rows.len(), q * (q - 1) / 2);
        }
    }
}
