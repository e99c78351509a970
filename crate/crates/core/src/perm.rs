//! Permutations in one-line notation.
//!
//! Values are stored 1-based as bytes, so lengths are limited to 255. The
//! enumeration engine never gets anywhere near that.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest permutation representable with byte-sized values.
pub const MAX_LEN: usize = u8::MAX as usize;

/// A permutation of `[n]` in one-line notation. The empty permutation is legal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    /// Builds a permutation from 1-based values, checking that they are exactly `1..=n`.
    pub fn new<I>(values: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: TryInto<u8> + Copy + fmt::Debug,
    {
        let mut out = Vec::new();
        for v in values {
            let b: u8 = v
                .try_into()
                .map_err(|_| Error::InvalidWord(format!("value {v:?} out of range")))?;
            out.push(b);
        }
        Self::from_bytes(out)
    }

    pub(crate) fn from_bytes(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n > MAX_LEN {
            return Err(Error::InvalidWord(format!("length {n} exceeds {MAX_LEN}")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidWord(format!(
                    "value {v} is not in 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidWord(format!("value {v} repeats")));
            }
            seen[v] = true;
        }
        Ok(Self(values))
    }

    /// Wraps bytes already known to be a permutation of `[n]`.
    pub(crate) fn from_bytes_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Self::from_bytes(values.clone()).is_ok());
        Self(values)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `12…n`
    pub fn identity(n: usize) -> Self {
        Self((1..=n as u8).collect())
    }

    /// `n…21`
    pub fn decreasing(n: usize) -> Self {
        Self((1..=n as u8).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u8> {
        self.0
    }

    /// Number of positions `j` with `π_j > π_{j+1}`.
    pub fn descent_count(&self) -> usize {
        descents(&self.0)
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// Maps each value `v` to `n + 1 − v`.
    pub fn complement(&self) -> Self {
        let top = self.0.len() as u8 + 1;
        Self(self.0.iter().map(|&v| top - v).collect())
    }

    /// Length of the first component, i.e. the smallest `i` such that
    /// `π_1…π_i` is a permutation of `[i]`.
    pub fn first_component_end(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::UndefinedForEmpty("first_component_end"));
        }
        Ok(first_closure(&self.0))
    }

    pub fn is_indecomposable(&self) -> Result<bool> {
        Ok(self.first_component_end()? == self.len())
    }

    /// Splits into components. Segments are left unreduced, so
    /// `312465` yields `312`, `4`, `65`.
    pub fn components(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut max = 0u8;
        for (j, &v) in self.0.iter().enumerate() {
            max = max.max(v);
            if max as usize == j + 1 {
                out.push(self.0[start..=j].to_vec());
                start = j + 1;
            }
        }
        out
    }

    /// Splits `π = π⁽¹⁾π′` at the end of the first component. `π′` keeps its
    /// original values.
    pub fn split_first_component(&self) -> Result<(&[u8], &[u8])> {
        let i = self.first_component_end()?;
        Ok(self.0.split_at(i))
    }

    pub fn is_increasing(&self) -> bool {
        is_increasing(&self.0)
    }

    pub fn is_decreasing(&self) -> bool {
        is_decreasing(&self.0)
    }

    /// Every permutation of `[n]` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n as u8).collect()),
        }
    }
}

/// Order-isomorphic relabelling of a word of distinct values onto `[len]`.
///
/// `reduce(&[2, 5, 3, 7])` is `1324`.
pub fn reduce<T: Ord>(word: &[T]) -> Result<Permutation> {
    if word.len() > MAX_LEN {
        return Err(Error::InvalidWord(format!(
            "length {} exceeds {MAX_LEN}",
            word.len()
        )));
    }
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::InvalidWord("entries are not distinct".into()));
    }
    let mut out = vec![0u8; word.len()];
    for (rank, &pos) in order.iter().enumerate() {
        out[pos] = rank as u8 + 1;
    }
    Ok(Permutation(out))
}

pub(crate) fn descents(w: &[u8]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

pub(crate) fn is_increasing(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] < p[1])
}

pub(crate) fn is_decreasing(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] > p[1])
}

/// Length of the shortest nonempty prefix of `w` that is a permutation of `[i]`.
/// Assumes `w` is a nonempty permutation.
pub(crate) fn first_closure(w: &[u8]) -> usize {
    let mut max = 0u8;
    for (j, &v) in w.iter().enumerate() {
        max = max.max(v);
        if max as usize == j + 1 {
            return j + 1;
        }
    }
    w.len()
}

/// Lexicographic successor iterator over `S_n`.
pub struct AllPermutations {
    next: Option<Vec<u8>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lex(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation(current))
    }
}

fn next_lex(w: &mut [u8]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    /// Concatenated digits when every value is a single digit, otherwise
    /// space-separated values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts either a run of digits (`"23514"`) or whitespace/comma
    /// separated values (`"10 3 1 ..."`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.chars().all(|c| c.is_ascii_digit()) {
            let vals: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
            return Self::from_bytes(vals);
        }
        let vals = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::InvalidWord(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_bytes(vals)
    }
}
