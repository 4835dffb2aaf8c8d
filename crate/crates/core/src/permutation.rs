//! Elements of the symmetric group on `{1, ..., size}`.
//!
//! Composition follows function application: `sigma.compose(&tau)` maps
//! `x` to `sigma(tau(x))`. Cycle notation uses `x -> next` within a cycle,
//! so `(1,2,3)` sends 1 to 2, 2 to 3 and 3 to 1.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PermutationRepr", into = "PermutationRepr")]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    images: Vec<usize>,
}

impl TryFrom<PermutationRepr> for Permutation {
    type Error = Error;

    fn try_from(repr: PermutationRepr) -> Result<Self> {
        Permutation::from_images(repr.images)
    }
}

impl From<Permutation> for PermutationRepr {
    fn from(p: Permutation) -> Self {
        PermutationRepr { images: p.images }
    }
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation { images: (1..=size).collect() }
    }

    /// Builds a permutation from its 1-based image list.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let size = images.len();
        let mut seen = vec![false; size + 1];
        for &x in &images {
            if x == 0 || x > size {
                return Err(Error::InvalidPermutation(format!("image {x} outside 1..={size}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(i: usize, j: usize, size: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > size || j > size || i == j {
            return Err(Error::InvalidPermutation(format!("transposition ({i},{j}) on 1..={size}")));
        }
        let mut p = Self::identity(size);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    /// Parses cycle notation such as `(1,3,2)(4,5)`. `()` and `id` denote the identity.
    ///
    /// Cycles may be separated by commas or whitespace inside the parentheses.
    pub fn from_cycles(text: &str, size: usize) -> Result<Self> {
        let text = text.trim();
        let mut images: Vec<usize> = (1..=size).collect();
        if text.is_empty() || text == "id" || text == "e" {
            return Ok(Permutation { images });
        }
        let mut rest = text;
        let mut touched = vec![false; size + 1];
        while !rest.is_empty() {
            let open =
                rest.strip_prefix('(').ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {text:?}")))?;
            let close =
                open.find(')').ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let cycle: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| Error::InvalidPermutation(format!("bad entry {s:?}"))))
                .collect::<Result<_>>()?;
            for &x in &cycle {
                if x == 0 || x > size {
                    return Err(Error::InvalidPermutation(format!("cycle entry {x} outside 1..={size}")));
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation(format!("entry {x} appears in more than one place")));
                }
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Accepts either cycle notation or a bracketed image list like `[2,1,3]`.
    pub fn parse(text: &str, size: usize) -> Result<Self> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner =
                inner.strip_suffix(']').ok_or_else(|| Error::InvalidPermutation(format!("unclosed list {t:?}")))?;
            let images = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| Error::InvalidPermutation(format!("bad entry {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != size {
                return Err(Error::InvalidPermutation(format!("expected {size} images, got {}", images.len())));
            }
            Self::from_images(images)
        } else {
            Self::from_cycles(t, size)
        }
    }

    /// All permutations of `{1..size}`, ordered lexicographically by image list.
    pub fn all(size: usize) -> Vec<Permutation> {
        (1..=size).permutations(size).map(|images| Permutation { images }).collect()
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.size(), other.size(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Disjoint cycles of length at least two, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size() + 1];
        let mut out = Vec::new();
        for start in 1..=self.size() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_string(&self) -> String {
        if self.is_identity() {
            return "()".to_string();
        }
        self.cycles().iter().map(|c| format!("({})", c.iter().join(","))).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// Parses cycle notation; the size is taken from the largest entry.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let size = s.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse::<usize>().ok()).max().unwrap_or(0);
        Self::parse(s, size)
    }
}
