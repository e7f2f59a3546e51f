//! Product maps M(m,1)×M(n,1) → M(m+n,2) and M(m,2)×M(n,0) → M(m+n,2) on
//! Ekedahl–Oort indices, and the supersingular-intersection certificates
//! they produce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dieudonne::{
    direct_sum, standard_object_a2, standard_object_m1, superspecial_block, ModuleError, MonomialModule, PairingPlan,
    Subspace,
};
use crate::strata_index::{GammaUV, StrataError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("invalid M(m,1) stratum (m,a)=({0},{1})")]
    BadM1(usize, usize),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// The stratum γ_{a+1} of M(m,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct M1Stratum {
    pub m: usize,
    pub a: usize,
}

impl M1Stratum {
    pub fn new(m: usize, a: usize) -> Result<M1Stratum, ProductError> {
        if a > m {
            return Err(ProductError::BadM1(m, a));
        }
        Ok(M1Stratum { m, a })
    }

    pub fn is_ss(&self) -> bool {
        is_ss_m1(self.m, self.a)
    }

    pub fn thresholds(&self) -> Thresholds {
        Thresholds::new(self.m, self.a)
    }
}

/// Known classification for M(m,1): γ_{a+1} is supersingular iff a ≤ m/2.
pub fn is_ss_m1(m: usize, a: usize) -> bool {
    2 * a <= m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub s1: usize,
    pub s2: usize,
}

impl Thresholds {
    pub fn new(m: usize, a: usize) -> Thresholds {
        Thresholds { s1: (a + 1).min(m + 1 - a), s2: a.max(m + 1 - a) }
    }
}

/// S_up, S_down and their second-smallest / second-largest elements, for a
/// stratum γ_{u,v} of M(m,2) (so q_M = m+2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpDownSets {
    pub s_up: [usize; 4],
    pub s_down: [usize; 4],
    pub r2: usize,
    pub r3: usize,
}

impl UpDownSets {
    pub fn new(m: usize, u: usize, v: usize) -> UpDownSets {
        let qm = m + 2;
        let s_up = [u, v, qm + 2 - v, qm + 1 - u];
        let s_down = [u - 1, v - 1, qm + 2 - v, qm + 1 - u];
        let mut up = s_up;
        up.sort_unstable();
        let mut down = s_down;
        down.sort_unstable();
        UpDownSets { s_up, s_down, r2: up[1], r3: down[2] }
    }
}

/// Which case of the 1×1 formula applies, after normalizing the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case1x1 {
    /// both supersingular, a ≥ b
    A,
    /// neither supersingular, m−a ≤ n−b
    B,
    /// first not supersingular, second supersingular
    C,
}

/// Case and normalized (m,a,n,b) for a 1×1 product.
pub fn normalize_1x1(m: usize, a: usize, n: usize, b: usize) -> (Case1x1, [usize; 4]) {
    let (ss1, ss2) = (is_ss_m1(m, a), is_ss_m1(n, b));
    let swap = match (ss1, ss2) {
        (true, true) => a < b,
        (false, false) => m - a > n - b,
        (true, false) => true,
        (false, true) => false,
    };
    let p = if swap { [n, b, m, a] } else { [m, a, n, b] };
    let case = match (ss1, ss2) {
        (true, true) => Case1x1::A,
        (false, false) => Case1x1::B,
        _ => Case1x1::C,
    };
    (case, p)
}

/// Closed form of φ(γ_{a+1}, γ_{b+1}) ∈ W(m+n, 2).
pub fn phi_1x1(m: usize, a: usize, n: usize, b: usize) -> Result<GammaUV, ProductError> {
    M1Stratum::new(m, a)?;
    M1Stratum::new(n, b)?;
    let q = m + n + 2;
    let (case, [m, a, n, b]) = normalize_1x1(m, a, n, b);
    let (u, v) = match case {
        Case1x1::A if a == b => (2 * b + 1, 2 * b + 2),
        Case1x1::A => (2 * b + 2, a + b + 2),
        Case1x1::B => (a + b + 1, 2 * a + n + 2 - m),
        Case1x1::C => {
            let top = (n as isize + a as isize - m as isize).max((n - b) as isize);
            (b + 2 + b.min(m - a), (a as isize + 2 + top) as usize)
        }
    };
    Ok(GammaUV::new(q, u, v)?)
}

/// M ⊕ N for standard objects of γ_{a+1} ∈ W(m,1) and γ_{b+1} ∈ W(n,1).
pub fn product_module_1x1(m: usize, a: usize, n: usize, b: usize) -> Result<MonomialModule, ProductError> {
    M1Stratum::new(m, a)?;
    M1Stratum::new(n, b)?;
    let blocks = [standard_object_m1(m, a)?, standard_object_m1(n, b)?];
    Ok(direct_sum(&blocks, Some(&[PairingPlan::Own, PairingPlan::Own]))?)
}

/// φ(γ_{a+1}, γ_{b+1}) read off the jumps of η_1 of M ⊕ N.
pub fn phi_1x1_oracle(m: usize, a: usize, n: usize, b: usize) -> Result<GammaUV, ProductError> {
    let l = product_module_1x1(m, a, n, b)?;
    let rep = l.extract_gamma(2)?;
    Ok(GammaUV::from_rep(&rep)?)
}

/// Closed form of φ(γ_{u,v}, id) ∈ W(m+n, 2) for γ_{u,v} ∈ W(m,2).
pub fn phi_2x0(m: usize, u: usize, v: usize, n: usize) -> Result<GammaUV, ProductError> {
    GammaUV::new(m + 2, u, v)?;
    let r2 = UpDownSets::new(m, u, v).r2;
    let lift = |x: usize| if x <= r2 { x } else { x + n };
    Ok(GammaUV::new(m + n + 2, lift(u), lift(v))?)
}

/// L = M ⊕ N^n with M the standard object of γ_{u,v} ∈ W(m,2).
pub fn product_module_2x0(m: usize, u: usize, v: usize, n: usize) -> Result<MonomialModule, ProductError> {
    GammaUV::new(m + 2, u, v)?;
    let mut blocks = vec![standard_object_a2(m + 2, u, v)?];
    blocks.extend(std::iter::repeat_n(superspecial_block(), n));
    let plan = vec![PairingPlan::Own; n + 1];
    Ok(direct_sum(&blocks, Some(&plan))?)
}

pub fn phi_2x0_oracle(m: usize, u: usize, v: usize, n: usize) -> Result<GammaUV, ProductError> {
    let l = product_module_2x0(m, u, v, n)?;
    let rep = l.extract_gamma(2)?;
    Ok(GammaUV::from_rep(&rep)?)
}

/// (V⁻¹F)^c applied to `start`.
pub fn vinv_f_power(module: &MonomialModule, start: Subspace, c: usize) -> Subspace {
    (0..c).fold(start, |s, _| module.preimage_v(module.apply_f(s)))
}

/// Iterates V⁻¹F from `start` until the subspace stops changing.
pub fn vinv_f_limit(module: &MonomialModule, start: Subspace) -> Subspace {
    let mut s = start;
    loop {
        let t = module.preimage_v(module.apply_f(s));
        if t == s {
            return s;
        }
        s = t;
    }
}

/// One application of a known result in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "map", content = "params")]
pub enum CertStep {
    /// A stratum of M(0,2) or M(2,2) known to meet the supersingular locus.
    #[serde(rename = "base")]
    Base { m: usize, u: usize, v: usize },
    /// Product of supersingular strata γ_{a+1} ∈ W(m,1), γ_{b+1} ∈ W(n,1).
    #[serde(rename = "1x1")]
    OneByOne { m: usize, a: usize, n: usize, b: usize },
    /// Product of a certified γ_{u,v} ∈ W(m,2) with M(n,0).
    #[serde(rename = "2x0")]
    TwoByZero { m: usize, u: usize, v: usize, n: usize },
}

/// Steps in application order; the last step yields the stratum.
pub type Certificate = Vec<CertStep>;

fn base_strata(m: usize) -> Vec<(usize, usize)> {
    match m {
        0 => vec![(1, 2)],
        2 => vec![(1, 2), (1, 3), (1, 4), (2, 3)],
        _ => Vec::new(),
    }
}

/// Certified strata of M(m,2) meeting the supersingular locus, for every m
/// up to `m_max`. Only nonemptiness is certified.
pub fn certified_by_m(m_max: usize) -> Vec<BTreeMap<GammaUV, Certificate>> {
    let mut out: Vec<BTreeMap<GammaUV, Certificate>> = Vec::new();
    for m in 0..=m_max {
        let q = m + 2;
        let mut cert: BTreeMap<GammaUV, Certificate> = BTreeMap::new();
        for (u, v) in base_strata(m) {
            cert.entry(GammaUV { q, u, v }).or_insert_with(|| vec![CertStep::Base { m, u, v }]);
        }
        for m1 in 0..=m {
            let n1 = m - m1;
            for a in 0..=m1 / 2 {
                for b in 0..=n1 / 2 {
                    let g = phi_1x1(m1, a, n1, b).expect("valid product");
                    cert.entry(g).or_insert_with(|| vec![CertStep::OneByOne { m: m1, a, n: n1, b }]);
                }
            }
        }
        for (src_m, known) in out.iter().enumerate() {
            let n = m - src_m;
            if n == 0 {
                continue;
            }
            for (g, c) in known {
                let y = phi_2x0(src_m, g.u, g.v, n).expect("valid product");
                cert.entry(y).or_insert_with(|| {
                    let mut chain = c.clone();
                    chain.push(CertStep::TwoByZero { m: src_m, u: g.u, v: g.v, n });
                    chain
                });
            }
        }
        out.push(cert);
    }
    out
}

/// Certified strata of M(q−2,2) meeting the supersingular locus.
pub fn certified_ss_intersections(q: usize) -> BTreeMap<GammaUV, Certificate> {
    if q < 2 {
        return BTreeMap::new();
    }
    certified_by_m(q - 2).pop().unwrap_or_default()
}

/// Re-checks a certificate step by step: every 1×1 factor is supersingular,
/// every 2×0 source is the result of the preceding steps, and the chain
/// ends at `target`.
pub fn verify_certificate(target: &GammaUV, cert: &Certificate) -> bool {
    let mut current: Option<GammaUV> = None;
    for (k, step) in cert.iter().enumerate() {
        let next = match *step {
            CertStep::Base { m, u, v } => {
                if k != 0 || !base_strata(m).contains(&(u, v)) {
                    return false;
                }
                GammaUV { q: m + 2, u, v }
            }
            CertStep::OneByOne { m, a, n, b } => {
                if k != 0 || a > m || b > n || !is_ss_m1(m, a) || !is_ss_m1(n, b) {
                    return false;
                }
                match phi_1x1(m, a, n, b) {
                    Ok(g) => g,
                    Err(_) => return false,
                }
            }
            CertStep::TwoByZero { m, u, v, n } => {
                if current != Some(GammaUV { q: m + 2, u, v }) {
                    return false;
                }
                match phi_2x0(m, u, v, n) {
                    Ok(g) => g,
                    Err(_) => return false,
                }
            }
        };
        current = Some(next);
    }
    current.as_ref() == Some(target)
}

/// Replays a certificate with the Dieudonné oracles instead of the closed
/// forms. Base steps are taken as given.
pub fn replay_with_oracle(cert: &Certificate) -> Result<GammaUV, ProductError> {
    let mut current: Option<GammaUV> = None;
    for step in cert {
        current = Some(match *step {
            CertStep::Base { m, u, v } => GammaUV::new(m + 2, u, v)?,
            CertStep::OneByOne { m, a, n, b } => phi_1x1_oracle(m, a, n, b)?,
            CertStep::TwoByZero { m, n, .. } => {
                let g = current.ok_or(ProductError::BadM1(m, n))?;
                phi_2x0_oracle(m, g.u, g.v, n)?
            }
        });
    }
    current.ok_or(ProductError::BadM1(0, 0))
}
