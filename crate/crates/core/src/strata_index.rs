//! Index sets W(a,b) of minimal coset representatives, their lengths,
//! Bruhat order and dimension counts.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symmetric_group::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("invalid signature ({0},{1})")]
    BadSignature(usize, usize),
    #[error("invalid u-tuple {0:?} for signature ({1},{2})")]
    BadTuple(Vec<usize>, usize, usize),
    #[error("invalid stratum (u,v)=({1},{2}) for q={0}")]
    BadStratum(usize, usize, usize),
    #[error("signature mismatch")]
    SignatureMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub a: usize,
    pub b: usize,
}

impl Signature {
    /// Normalizes so that a ≥ b.
    pub fn new(a: usize, b: usize) -> Result<Signature, StrataError> {
        if a + b == 0 {
            return Err(StrataError::BadSignature(a, b));
        }
        Ok(Signature { a: a.max(b), b: a.min(b) })
    }

    pub fn q(&self) -> usize {
        self.a + self.b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetRep {
    pub signature: Signature,
    u: Vec<usize>,
}

impl CosetRep {
    pub fn new(signature: Signature, u: Vec<usize>) -> Result<CosetRep, StrataError> {
        let q = signature.q();
        let ok = u.len() == signature.b
            && u.iter().all(|&x| (1..=q).contains(&x))
            && u.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(StrataError::BadTuple(u, signature.a, signature.b));
        }
        Ok(CosetRep { signature, u })
    }

    pub fn u_tuple(&self) -> &[usize] {
        &self.u
    }
}

/// The stratum label γ_{u,v} of W(q−2,2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaUV {
    pub q: usize,
    pub u: usize,
    pub v: usize,
}

impl GammaUV {
    pub fn new(q: usize, u: usize, v: usize) -> Result<GammaUV, StrataError> {
        if q < 2 || u < 1 || u >= v || v > q {
            return Err(StrataError::BadStratum(q, u, v));
        }
        Ok(GammaUV { q, u, v })
    }

    pub fn length(&self) -> usize {
        self.u + self.v - 3
    }

    pub fn to_rep(&self) -> CosetRep {
        CosetRep { signature: Signature { a: self.q - 2, b: 2 }, u: vec![self.u, self.v] }
    }

    pub fn from_rep(rep: &CosetRep) -> Result<GammaUV, StrataError> {
        if rep.signature.b != 2 {
            return Err(StrataError::SignatureMismatch);
        }
        GammaUV::new(rep.signature.q(), rep.u[0], rep.u[1])
    }

    pub fn to_permutation(&self) -> Permutation {
        to_permutation(&self.to_rep())
    }

    /// Componentwise comparison, which is the Bruhat order on W(q−2,2).
    pub fn bruhat_leq(&self, other: &GammaUV) -> bool {
        self.q == other.q && self.u <= other.u && self.v <= other.v
    }

    /// Key ordering strata by (length, u, v).
    pub fn sort_key(&self) -> (usize, usize, usize) {
        (self.length(), self.u, self.v)
    }
}

impl fmt::Display for GammaUV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// All strata γ_{u,v} for a given q, lexicographic in (u,v).
pub fn all_strata(q: usize) -> Vec<GammaUV> {
    let mut out = Vec::new();
    for u in 1..=q {
        for v in u + 1..=q {
            out.push(GammaUV { q, u, v });
        }
    }
    out
}

/// All C(a+b, b) representatives, lexicographic by u-tuple.
pub fn enumerate(signature: Signature) -> Vec<CosetRep> {
    let q = signature.q();
    let b = signature.b;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=b).collect();
    loop {
        out.push(CosetRep { signature, u: cur.clone() });
        // next combination
        let mut i = b;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < q - (b - 1 - i) {
                cur[i] += 1;
                for j in i + 1..b {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// γ(u_i) = i, and the complement goes in order to b+1..q.
pub fn to_permutation(rep: &CosetRep) -> Permutation {
    let q = rep.signature.q();
    let b = rep.signature.b;
    let mut images = vec![0u8; q];
    let mut next = b;
    let mut k = 0;
    for x in 1..=q {
        if k < b && rep.u[k] == x {
            images[x - 1] = k as u8;
            k += 1;
        } else {
            images[x - 1] = next as u8;
            next += 1;
        }
    }
    Permutation::from_zero_based_unchecked(images)
}

pub fn coset_length(rep: &CosetRep) -> usize {
    rep.u.iter().enumerate().map(|(i, &x)| x - (i + 1)).sum()
}

pub fn bruhat_leq_reps(r1: &CosetRep, r2: &CosetRep) -> Result<bool, StrataError> {
    if r1.signature != r2.signature {
        return Err(StrataError::SignatureMismatch);
    }
    Ok(r1.u.iter().zip(&r2.u).all(|(x, y)| x <= y))
}

/// n_d(a,b): number of representatives of length d, by enumeration.
pub fn count_by_dimension(signature: Signature, d: usize) -> usize {
    enumerate(signature).iter().filter(|r| coset_length(r) == d).count()
}

/// Closed piecewise formula for n_d(q−2,2).
pub fn count_formula_b2(q: usize, d: usize) -> usize {
    if q < 2 {
        return 0;
    }
    let base = d / 2 + 1;
    if d <= q - 2 {
        base
    } else {
        base.saturating_sub(d - (q - 2))
    }
}

/// Coefficients of the Gaussian binomial [a+b choose b]_t, by polynomial
/// multiplication and exact division.
pub fn gaussian_binomial(a: usize, b: usize) -> Vec<u128> {
    let n = a + b;
    let k = a.min(b);
    // numerator: Π_{i=0}^{k−1} (1 − t^{n−i}); signed intermediate coefficients
    let mut signed: Vec<i128> = vec![1];
    for i in 0..k {
        let e = n - i;
        let mut next = vec![0i128; signed.len() + e];
        for (j, &c) in signed.iter().enumerate() {
            next[j] += c;
            next[j + e] -= c;
        }
        signed = next;
    }
    // divide by Π_{i=1}^{k} (1 − t^i): multiplying by 1/(1 − t^i) is a running sum
    for i in 1..=k {
        for j in i..signed.len() {
            signed[j] += signed[j - i];
        }
    }
    signed.truncate(a * b + 1);
    signed.iter().map(|&c| c as u128).collect()
}
