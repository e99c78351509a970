//! Classical, vincular and consecutive patterns.
//!
//! Text form uses dashes: adjacent digits with no dash between them must
//! occupy adjacent positions in an occurrence. `"1-32"` is a 1 anywhere,
//! followed later by an adjacent pair playing 3 and 2; `"1-2-3"` is the
//! classical pattern 123; `"132"` is fully consecutive.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VincularPattern {
    pattern: Permutation,
    /// `adjacency[j]` ties pattern positions `j` and `j + 1` together.
    adjacency: Vec<bool>,
}

impl VincularPattern {
    pub fn new(pattern: Permutation, adjacency: Vec<bool>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::PatternParse {
                text: String::new(),
                reason: "pattern must have length at least 1".into(),
            });
        }
        if adjacency.len() + 1 != pattern.len() {
            return Err(Error::PatternParse {
                text: pattern.to_string(),
                reason: format!(
                    "expected {} adjacency flags, got {}",
                    pattern.len() - 1,
                    adjacency.len()
                ),
            });
        }
        Ok(Self { pattern, adjacency })
    }

    /// No adjacency constraints.
    pub fn classical(pattern: Permutation) -> Result<Self> {
        let k = pattern.len();
        Self::new(pattern, vec![false; k.saturating_sub(1)])
    }

    /// Every position adjacent to the next.
    pub fn consecutive(pattern: Permutation) -> Result<Self> {
        let k = pattern.len();
        Self::new(pattern, vec![true; k.saturating_sub(1)])
    }

    /// The classical pattern `12…k`.
    pub fn increasing(k: usize) -> Self {
        Self::classical(Permutation::identity(k)).expect("k >= 1")
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn adjacency(&self) -> &[bool] {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_classical(&self) -> bool {
        self.adjacency.iter().all(|a| !a)
    }

    pub fn is_consecutive(&self) -> bool {
        self.adjacency.iter().all(|&a| a)
    }

    /// Reverses the pattern word and the adjacency flags.
    pub fn reverse(&self) -> Self {
        Self {
            pattern: self.pattern.reverse(),
            adjacency: self.adjacency.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            pattern: self.pattern.complement(),
            adjacency: self.adjacency.clone(),
        }
    }

    /// Number of occurrences of this pattern in `perm`.
    pub fn count_occurrences(&self, perm: &Permutation) -> u64 {
        Matcher::new(self).count(perm.values())
    }

    pub fn is_avoided_by(&self, perm: &Permutation) -> bool {
        !Matcher::new(self).occurs(perm.values())
    }
}

/// Convenience wrapper for [`VincularPattern::count_occurrences`].
pub fn count_occurrences(perm: &Permutation, pattern: &VincularPattern) -> u64 {
    pattern.count_occurrences(perm)
}

/// True iff `perm` has no occurrence of `pattern`.
pub fn avoids(perm: &Permutation, pattern: &VincularPattern) -> bool {
    pattern.is_avoided_by(perm)
}

/// Parses dash notation.
pub fn parse_pattern(text: &str) -> Result<VincularPattern> {
    text.parse()
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::PatternParse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if text.is_empty() {
            return Err(err("empty pattern"));
        }
        let mut digits = Vec::new();
        let mut adjacency = Vec::new();
        let mut pending_dash = false;
        for c in text.chars() {
            match c {
                '1'..='9' => {
                    if !digits.is_empty() {
                        adjacency.push(!pending_dash);
                    }
                    pending_dash = false;
                    digits.push(c as u8 - b'0');
                }
                '-' => {
                    if digits.is_empty() {
                        return Err(err("leading dash"));
                    }
                    if pending_dash {
                        return Err(err("double dash"));
                    }
                    pending_dash = true;
                }
                _ => return Err(err(&format!("unexpected character {c:?}"))),
            }
        }
        if pending_dash {
            return Err(err("trailing dash"));
        }
        let pattern = Permutation::new(digits)
            .map_err(|_| err("digits do not form a permutation of [k]"))?;
        Self::new(pattern, adjacency)
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, v) in self.pattern.values().iter().enumerate() {
            if j > 0 && !self.adjacency[j - 1] {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VincularPattern({self})")
    }
}

/// Backtracking occurrence search over raw value slices.
///
/// Works on any word of distinct values, not only permutations of `[n]`,
/// since containment depends only on relative order.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    pat: Vec<u8>,
    adj: Vec<bool>,
}

impl Matcher {
    pub(crate) fn new(p: &VincularPattern) -> Self {
        Self {
            pat: p.pattern.values().to_vec(),
            adj: p.adjacency.clone(),
        }
    }

    pub(crate) fn count(&self, word: &[u8]) -> u64 {
        let mut idx = vec![0usize; self.pat.len()];
        let mut total = 0;
        self.forward(word, &mut idx, 0, &mut |_| {
            total += 1;
            false
        });
        total
    }

    pub(crate) fn occurs(&self, word: &[u8]) -> bool {
        let mut idx = vec![0usize; self.pat.len()];
        self.forward(word, &mut idx, 0, &mut |_| true)
    }

    /// Assigns pattern positions left to right; `hit` returns true to stop.
    fn forward(
        &self,
        word: &[u8],
        idx: &mut [usize],
        t: usize,
        hit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let k = self.pat.len();
        if t == k {
            return hit(idx);
        }
        if word.len() < k {
            return false;
        }
        let last = word.len() - (k - t);
        let range = if t == 0 {
            0..=last
        } else if self.adj[t - 1] {
            let c = idx[t - 1] + 1;
            if c > last {
                return false;
            }
            c..=c
        } else {
            idx[t - 1] + 1..=last
        };
        for c in range {
            if self.consistent(word, idx, t, c, 0..t) {
                idx[t] = c;
                if self.forward(word, idx, t + 1, hit) {
                    return true;
                }
            }
        }
        false
    }

    /// True iff some occurrence places the last pattern entry on the last
    /// letter of `word`. Used to extend an avoiding prefix one letter at a time.
    pub(crate) fn ends_at_last(&self, word: &[u8]) -> bool {
        let k = self.pat.len();
        let m = word.len();
        if m < k {
            return false;
        }
        let mut idx = vec![0usize; k];
        idx[k - 1] = m - 1;
        self.backward(word, &mut idx, k - 1)
    }

    /// Positions `t + 1..k` are assigned; fill position `t` and below.
    fn backward(&self, word: &[u8], idx: &mut [usize], t: usize) -> bool {
        if t == 0 {
            return true;
        }
        let s = t - 1;
        let right = idx[t];
        if right < t {
            return false;
        }
        let k = self.pat.len();
        if self.adj[s] {
            let c = right - 1;
            if self.consistent(word, idx, s, c, t..k) {
                idx[s] = c;
                return self.backward(word, idx, s);
            }
            return false;
        }
        for c in (s..right).rev() {
            if self.consistent(word, idx, s, c, t..k) {
                idx[s] = c;
                if self.backward(word, idx, s) {
                    return true;
                }
            }
        }
        false
    }

    #[inline]
    fn consistent(
        &self,
        word: &[u8],
        idx: &[usize],
        t: usize,
        c: usize,
        assigned: std::ops::Range<usize>,
    ) -> bool {
        let v = word[c];
        let pv = self.pat[t];
        assigned
            .into_iter()
            .all(|u| (v < word[idx[u]]) == (pv < self.pat[u]))
    }
}
