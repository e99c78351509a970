//! Exhaustive generation of pattern avoiders.
//!
//! Avoiders are grown one letter at a time. A prefix is abandoned as soon as
//! it contains the pattern: appending letters never destroys an occurrence,
//! adjacent pairs included, so every extension of a containing prefix
//! contains the pattern too. Only occurrences ending at the newest letter
//! need checking at each step.

mod lemmas;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pattern::{Matcher, VincularPattern};
use crate::perm::{descents, Permutation};
use crate::series::BivariateSeries;

pub use lemmas::{check_structure_lemma, Lemma, LemmaReport};

/// Default cap on the permutation length the oracle will enumerate.
pub const DEFAULT_MAX_N: usize = 11;

/// Hard ceiling imposed by the 32-bit used-value mask.
const HARD_MAX_N: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Restrict {
    All,
    IndecomposableOnly,
    DecomposableOnly,
}

/// Brute-force oracle with a configurable length cap.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    max_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_max_n(max_n: usize) -> Self {
        Self {
            max_n: max_n.min(HARD_MAX_N),
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::ResourceLimit {
                requested: n,
                max: self.max_n,
            });
        }
        Ok(())
    }

    /// Avoiders of `[n]` satisfying `restrict`, in lexicographic order.
    pub fn enumerate_avoiders(
        &self,
        pattern: &VincularPattern,
        n: usize,
        restrict: Restrict,
    ) -> Result<Avoiders> {
        self.check(n)?;
        Ok(Avoiders::new(pattern, n, restrict, None))
    }

    pub fn count_avoiders(
        &self,
        pattern: &VincularPattern,
        n: usize,
        restrict: Restrict,
    ) -> Result<BigInt> {
        let dist = self.descent_distribution(pattern, n, restrict)?;
        Ok(dist.into_iter().sum())
    }

    /// Entry `i` counts class members with exactly `i` descents. The vector
    /// has length `max(1, n)`.
    pub fn descent_distribution(
        &self,
        pattern: &VincularPattern,
        n: usize,
        restrict: Restrict,
    ) -> Result<Vec<BigInt>> {
        self.check(n)?;
        let width = n.max(1);
        if n == 0 {
            let empty = u64::from(restrict == Restrict::All);
            return Ok(vec![BigInt::from(empty)]);
        }
        // One worker per first letter; tallies are summed in a fixed order.
        let tallies: Vec<Vec<u64>> = (1..=n as u8)
            .into_par_iter()
            .map(|first| {
                let mut tally = vec![0u64; width];
                let mut it = Avoiders::new(pattern, n, restrict, Some(first));
                while let Some(w) = it.advance() {
                    tally[descents(w)] += 1;
                }
                tally
            })
            .collect();
        let mut out = vec![0u64; width];
        for t in &tallies {
            for (o, v) in out.iter_mut().zip(t) {
                *o += v;
            }
        }
        Ok(out.into_iter().map(BigInt::from).collect())
    }

    /// Counts `A_{n,i}` (or `I_{n,i}`, …) for every `n ≤ max_n`.
    pub fn descent_table(
        &self,
        pattern: &VincularPattern,
        restrict: Restrict,
        max_n: usize,
    ) -> Result<DescentTable> {
        self.check(max_n)?;
        let rows = (0..=max_n)
            .map(|n| self.descent_distribution(pattern, n, restrict))
            .collect::<Result<Vec<_>>>()?;
        Ok(DescentTable {
            pattern: pattern.clone(),
            restrict,
            rows,
        })
    }

    /// Class sizes for `n = 0..=max_n`.
    pub fn counts(
        &self,
        pattern: &VincularPattern,
        restrict: Restrict,
        max_n: usize,
    ) -> Result<Vec<BigInt>> {
        (0..=max_n)
            .map(|n| self.count_avoiders(pattern, n, restrict))
            .collect()
    }
}

/// Lazy lexicographic stream of avoiders.
pub struct Avoiders {
    matcher: Matcher,
    n: usize,
    restrict: Restrict,
    first: Option<u8>,
    prefix: Vec<u8>,
    /// `closed[d]`: some proper prefix of length `≤ d` is a permutation of
    /// an initial segment.
    closed: Vec<bool>,
    max: Vec<u8>,
    cursor: Vec<u8>,
    used: u32,
    state: State,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Yielded,
    Done,
}

impl Avoiders {
    fn new(pattern: &VincularPattern, n: usize, restrict: Restrict, first: Option<u8>) -> Self {
        Self {
            matcher: Matcher::new(pattern),
            n,
            restrict,
            first,
            prefix: Vec::with_capacity(n),
            closed: vec![false],
            max: vec![0],
            cursor: vec![1; n + 1],
            used: 0,
            state: State::Fresh,
        }
    }

    /// Moves to the next avoider and borrows it.
    pub fn advance(&mut self) -> Option<&[u8]> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                if self.n == 0 {
                    self.state = State::Done;
                    return (self.restrict == Restrict::All).then_some(&[][..]);
                }
                self.cursor[0] = self.first.unwrap_or(1);
            }
            State::Yielded => self.pop(),
        }
        loop {
            let d = self.prefix.len();
            if d == self.n {
                let keep = match self.restrict {
                    Restrict::DecomposableOnly => self.closed[d],
                    _ => true,
                };
                if keep {
                    self.state = State::Yielded;
                    return Some(&self.prefix);
                }
                self.pop();
                continue;
            }
            let limit = match (d, self.first) {
                (0, Some(f)) => f,
                _ => self.n as u8,
            };
            let mut pushed = false;
            while self.cursor[d] <= limit {
                let v = self.cursor[d];
                self.cursor[d] += 1;
                if self.used & (1 << v) == 0 && self.push(v) {
                    pushed = true;
                    break;
                }
            }
            if pushed {
                self.cursor[d + 1] = 1;
            } else if d == 0 {
                self.state = State::Done;
                return None;
            } else {
                self.pop();
            }
        }
    }

    fn push(&mut self, v: u8) -> bool {
        self.prefix.push(v);
        if self.matcher.ends_at_last(&self.prefix) {
            self.prefix.pop();
            return false;
        }
        let len = self.prefix.len();
        let max = self.max[len - 1].max(v);
        let closes = len < self.n && max as usize == len;
        if closes && self.restrict == Restrict::IndecomposableOnly {
            self.prefix.pop();
            return false;
        }
        self.used |= 1 << v;
        self.max.push(max);
        let c = self.closed[len - 1] || closes;
        self.closed.push(c);
        true
    }

    fn pop(&mut self) {
        if let Some(v) = self.prefix.pop() {
            self.used &= !(1 << v);
            self.max.pop();
            self.closed.pop();
        }
    }
}

impl Iterator for Avoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.advance()
            .map(|w| Permutation::from_bytes_unchecked(w.to_vec()))
    }
}

/// Counts by length and descent number for one pattern class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTable {
    pattern: VincularPattern,
    restrict: Restrict,
    /// `rows[n][i]`, `0 ≤ i ≤ max(0, n − 1)`.
    rows: Vec<Vec<BigInt>>,
}

impl DescentTable {
    pub fn pattern(&self) -> &VincularPattern {
        &self.pattern
    }

    pub fn restrict(&self) -> Restrict {
        self.restrict
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn count(&self, n: usize, descents: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(descents))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn total(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }

    pub fn totals(&self) -> Vec<BigInt> {
        (0..self.rows.len()).map(|n| self.total(n)).collect()
    }

    /// The table as a series in `x` (length) and `q` (descents).
    pub fn to_series(&self) -> BivariateSeries {
        BivariateSeries::from_integer_rows(&self.rows)
    }
}
