//! Permutations of {1..n} in one-line notation, with the Bruhat order.
//!
//! Composition is right-to-left: `compose(p, r)(x) = p(r(x))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images do not form a bijection on 1..{0}")]
    NotBijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 255;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation { images: (0..n as u8).collect() }
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Permutation, PermError> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(PermError::DegreeOutOfRange(n));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(PermError::NotBijection(n));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation from 0-based images.
    pub fn from_zero_based(images: Vec<u8>) -> Result<Permutation, PermError> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(PermError::DegreeOutOfRange(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_zero_based_unchecked(images: Vec<u8>) -> Permutation {
        debug_assert!(Permutation::from_zero_based(images.clone()).is_ok());
        Permutation { images }
    }

    /// The simple reflection s_i = (i, i+1), 1 ≤ i < n.
    pub fn simple_reflection(n: usize, i: usize) -> Permutation {
        assert!(i >= 1 && i < n, "s_{i} not in S_{n}");
        Permutation::transposition(n, i, i + 1)
    }

    /// The transposition (a, b), 1-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// The cycle (c_1, c_2, ..., c_k) sending c_1 to c_2 and so on, 1-based.
    pub fn cycle(n: usize, elems: &[usize]) -> Result<Permutation, PermError> {
        let mut p = Permutation::identity(n);
        let mut seen = vec![false; n];
        for (idx, &c) in elems.iter().enumerate() {
            if c == 0 || c > n || seen[c - 1] {
                return Err(PermError::Parse(format!("bad cycle entry {c}")));
            }
            seen[c - 1] = true;
            let next = elems[(idx + 1) % elems.len()];
            p.images[c - 1] = (next - 1) as u8;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `i`, both 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 0-based images.
    pub fn as_slice(&self) -> &[u8] {
        &self.images
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, r: &Permutation) -> Result<Permutation, PermError> {
        compose(self, r)
    }

    pub fn inverse(&self) -> Permutation {
        inverse(self)
    }

    pub fn length(&self) -> usize {
        length(self)
    }

    /// Parses one-line `[3,1,4,2]` or cycle form `(2,3)(1,2)`.
    /// Cycle form needs `degree` unless the largest entry is meant to be the degree.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let s = s.trim();
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| PermError::Parse(s.to_string()))?;
            let vals = parse_list(inner)?;
            let p = Permutation::from_one_line(&vals)?;
            if let Some(d) = degree {
                if d != p.degree() {
                    return Err(PermError::DegreeMismatch(d, p.degree()));
                }
            }
            return Ok(p);
        }
        if s.is_empty() || s == "()" || s == "id" {
            return degree
                .map(Permutation::identity)
                .ok_or_else(|| PermError::Parse("identity needs a degree".into()));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            let body = rest_trim
                .strip_prefix('(')
                .ok_or_else(|| PermError::Parse(s.to_string()))?;
            let close = body.find(')').ok_or_else(|| PermError::Parse(s.to_string()))?;
            cycles.push(parse_list(&body[..close])?);
            rest = &body[close + 1..];
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(1);
        let n = degree.unwrap_or(max);
        if max > n {
            return Err(PermError::Parse(format!("entry {max} exceeds degree {n}")));
        }
        let mut p = Permutation::identity(n);
        // rightmost cycle acts first
        for c in &cycles {
            p = compose(&p, &Permutation::cycle(n, c)?)?;
        }
        Ok(p)
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, PermError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| PermError::Parse(t.to_string())))
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", *x as usize + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s, None)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(de)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

pub fn compose(p: &Permutation, r: &Permutation) -> Result<Permutation, PermError> {
    if p.degree() != r.degree() {
        return Err(PermError::DegreeMismatch(p.degree(), r.degree()));
    }
    Ok(Permutation { images: r.images.iter().map(|&x| p.images[x as usize]).collect() })
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut out = vec![0u8; p.degree()];
    for (i, &x) in p.images.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    Permutation { images: out }
}

/// Number of inversions.
pub fn length(p: &Permutation) -> usize {
    let v = &p.images;
    let mut count = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                count += 1;
            }
        }
    }
    count
}

/// Bruhat order by the sorted-prefix criterion.
pub fn bruhat_leq(p: &Permutation, r: &Permutation) -> Result<bool, PermError> {
    if p.degree() != r.degree() {
        return Err(PermError::DegreeMismatch(p.degree(), r.degree()));
    }
    Ok(bruhat_leq_slices(&p.images, &r.images))
}

/// Same criterion on raw 0-based images of equal length. The sorted prefix of
/// `p` is entrywise below that of `r` iff for every threshold t the prefix of
/// `p` has no more entries ≥ t than the prefix of `r`.
pub(crate) fn bruhat_leq_slices(p: &[u8], r: &[u8]) -> bool {
    let n = p.len();
    // diff[t] = #{p entries >= t} - #{r entries >= t} over the current prefix,
    // maintained through per-value counts.
    let mut delta = vec![0i32; n];
    for k in 0..n.saturating_sub(1) {
        delta[p[k] as usize] += 1;
        delta[r[k] as usize] -= 1;
        let mut acc = 0;
        for t in (0..n).rev() {
            acc += delta[t];
            if acc > 0 {
                return false;
            }
        }
    }
    true
}

pub fn longest_element(n: usize) -> Result<Permutation, PermError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(PermError::DegreeOutOfRange(n));
    }
    Ok(Permutation { images: (0..n as u8).rev().collect() })
}

/// Longest element of S_{1,2} × S_{3..q}: [2,1,q,q−1,…,3].
pub fn longest_element_block2(q: usize) -> Result<Permutation, PermError> {
    if !(3..=MAX_DEGREE).contains(&q) {
        return Err(PermError::DegreeOutOfRange(q));
    }
    let mut images = vec![1u8, 0u8];
    images.extend((2..q as u8).rev());
    Ok(Permutation { images })
}
