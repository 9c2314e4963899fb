//! Permutations of `{1..n}` acting on the right: `p·q` sends `x` to
//! `(x p) q`. Internally points are `0..n`; cycle notation is 1-based.

mod conjugacy;
mod group;
mod table;

pub use conjugacy::{all_conjugators, centralizer, simultaneous_conjugator};
pub use group::{generate, generate_with_cap, PermGroup, DEFAULT_ELEMENT_CAP};
pub use table::CayleyTable;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection of 1..{0}")]
    NotBijection(usize),
    #[error("cannot parse cycle notation `{0}`")]
    Parse(String),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("tuples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("permutation is not an element of the group")]
    NotInGroup,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// `images[i]` is the image of point `i` (0-based).
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
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

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x == 0 || x > n || touched[x - 1] {
                    return Err(PermError::NotBijection(n));
                }
                touched[x - 1] = true;
                images[x - 1] = (cyc[(i + 1) % cyc.len()] - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,2)(3,4)` or `()` for degree `n`.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self, PermError> {
        let bad = || PermError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "()" {
            return Ok(Self::identity(n));
        }
        if !t.starts_with('(') || !t.ends_with(')') {
            return Err(bad());
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in t[1..t.len() - 1].split(")(") {
            let pts: Result<Vec<usize>, _> = chunk.split(',').map(str::parse::<usize>).collect();
            cycles.push(pts.map_err(|_| bad())?);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs).map_err(|_| bad())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Right-action product: first `self`, then `q`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.then(q))
    }

    /// [`Permutation::compose`] for callers that already know the degrees
    /// agree; panics otherwise.
    pub fn then(&self, q: &Permutation) -> Permutation {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| q.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    /// `c⁻¹·self·c`.
    pub fn conjugate_by(&self, c: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[c.images[x] as usize] = c.images[y as usize];
        }
        Permutation { images: out }
    }

    /// All cycles including fixed points, each starting at its least point,
    /// ordered by least point. Points are 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts_unchecked(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions.is_multiple_of(2)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x as usize).count()
    }
}

/// Right-action product.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    p.compose(q)
}

pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}

pub fn element_order(p: &Permutation) -> u64 {
    p.order()
}

/// Right-action product of a whole tuple.
pub fn product(entries: &[Permutation]) -> Option<Permutation> {
    let first = entries.first()?;
    Some(entries[1..].iter().fold(first.clone(), |acc, p| acc.then(p)))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

/// Multiset of cycle lengths, sorted descending, fixed points included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PermError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(PermError::Parse(format!("{parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    fn from_parts_unchecked(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.parts.len()
    }

    /// The lexicographically least permutation with this cycle type:
    /// consecutive blocks `(1,..,m1)(m1+1,..)` taken longest first.
    pub fn least_permutation(&self) -> Permutation {
        let n = self.degree();
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut start = 0;
        // lex-least image array puts short cycles first
        for &len in self.parts.iter().rev() {
            for i in 0..len {
                images[start + i] = (start + (i + 1) % len) as u32;
            }
            start += len;
        }
        Permutation { images }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for CycleType {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Result<Vec<usize>, _> = t.split(',').map(|x| x.trim().parse::<usize>()).collect();
        CycleType::new(parts.map_err(|_| PermError::Parse(s.to_string()))?)
    }
}
