use std::fmt;
use std::ops::Mul;

use crate::error::{GroupError, Result};

/// A bijection of `{0, …, degree-1}` stored as its image array.
///
/// Products act on the right: `(a * b).image(i) == b.image(a.image(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(GroupError::Parse(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parses cycle notation over the 1-based points `1..=degree`.
    ///
    /// `"()"` and the empty string denote the identity. Cycles must be
    /// disjoint; separators inside a cycle may be commas or whitespace.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let s = text.trim();
        let mut chars = s.char_indices().peekable();
        while let Some(&(pos, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(GroupError::Parse(format!(
                    "expected '(' at offset {pos} in {text:?}"
                )));
            }
            chars.next();
            let mut body = String::new();
            let mut closed = false;
            for (_, c) in chars.by_ref() {
                if c == ')' {
                    closed = true;
                    break;
                }
                if c == '(' {
                    return Err(GroupError::Parse(format!("nested '(' in {text:?}")));
                }
                body.push(c);
            }
            if !closed {
                return Err(GroupError::Parse(format!("unclosed cycle in {text:?}")));
            }
            let mut points = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| GroupError::Parse(format!("bad point {tok:?} in {text:?}")))?;
                if p == 0 || p > degree {
                    return Err(GroupError::Parse(format!(
                        "point {p} out of range 1..={degree}"
                    )));
                }
                let p = p - 1;
                if used[p] {
                    return Err(GroupError::Parse(format!(
                        "point {} repeated in {text:?}",
                        p + 1
                    )));
                }
                used[p] = true;
                points.push(p);
            }
            if body.contains(',') && points.is_empty() {
                return Err(GroupError::Parse(format!("empty cycle in {text:?}")));
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Canonical cycle notation with 1-based points; identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", body.join(","))
            })
            .collect()
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycle_string())
    }
}
