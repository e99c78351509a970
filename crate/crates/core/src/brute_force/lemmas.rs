//! Exhaustive checks of the decomposition lemmas.
//!
//! Each lemma characterizes the decomposable avoiders of one pattern in terms
//! of the split `π = π⁽¹⁾π′` at the end of the first component. A check runs
//! over all of `S_n` and compares "decomposable and avoiding" against the
//! characterization in both directions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pattern::{Matcher, VincularPattern};
use crate::perm::{first_closure, is_decreasing, is_increasing, Permutation};

/// How many counterexamples of each kind a report keeps.
const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    L123,
    L132,
    L2314,
    L3124,
    L3214,
    L2143,
    L2134,
    L1324,
    L1234,
    /// `12⋯k` for `k ≥ 3`.
    Increasing(usize),
    V1_23,
    /// `π′ = (i_π+1)⋯n`, the reading that holds.
    V1_32,
    /// `π′ = i_π(i_π+1)⋯n` taken literally. Never satisfiable; kept so the
    /// discrepancy can be demonstrated.
    V1_32Literal,
    V3_12,
    V3_21,
}

impl Lemma {
    /// Every lemma expected to hold. Excludes [`Lemma::V1_32Literal`].
    pub fn catalog() -> Vec<Lemma> {
        use Lemma::*;
        vec![
            L123,
            L132,
            L2314,
            L3124,
            L3214,
            L2143,
            L2134,
            L1324,
            L1234,
            Increasing(3),
            Increasing(4),
            Increasing(5),
            Increasing(6),
            V1_23,
            V1_32,
            V3_12,
            V3_21,
        ]
    }

    pub fn id(&self) -> String {
        match self {
            Lemma::L123 => "lemma_123".into(),
            Lemma::L132 => "lemma_132".into(),
            Lemma::L2314 => "lemma_2314".into(),
            Lemma::L3124 => "lemma_3124".into(),
            Lemma::L3214 => "lemma_3214".into(),
            Lemma::L2143 => "lemma_2143".into(),
            Lemma::L2134 => "lemma_2134".into(),
            Lemma::L1324 => "lemma_1324".into(),
            Lemma::L1234 => "lemma_1234".into(),
            Lemma::Increasing(k) => format!("lemma_inc_{k}"),
            Lemma::V1_23 => "lemma_1-23".into(),
            Lemma::V1_32 => "lemma_1-32".into(),
            Lemma::V1_32Literal => "lemma_1-32_literal".into(),
            Lemma::V3_12 => "lemma_3-12".into(),
            Lemma::V3_21 => "lemma_3-21".into(),
        }
    }

    /// The pattern whose decomposable avoiders the lemma describes.
    pub fn pattern(&self) -> VincularPattern {
        let text = match self {
            Lemma::L123 => "1-2-3",
            Lemma::L132 => "1-3-2",
            Lemma::L2314 => "2-3-1-4",
            Lemma::L3124 => "3-1-2-4",
            Lemma::L3214 => "3-2-1-4",
            Lemma::L2143 => "2-1-4-3",
            Lemma::L2134 => "2-1-3-4",
            Lemma::L1324 => "1-3-2-4",
            Lemma::L1234 => "1-2-3-4",
            Lemma::Increasing(k) => return VincularPattern::increasing(*k),
            Lemma::V1_23 => "1-23",
            Lemma::V1_32 | Lemma::V1_32Literal => "1-32",
            Lemma::V3_12 => "3-12",
            Lemma::V3_21 => "3-21",
        };
        text.parse().expect("catalog patterns parse")
    }

    /// Whether `first` (the first component, values `1..=i`) and `rest`
    /// (values `i+1..=n`) fit the lemma's description. The caller guarantees
    /// `rest` is nonempty.
    fn characterizes(&self, first: &[u8], rest: &[u8]) -> bool {
        let avoids = |w: &[u8], p: &str| !Matcher::new(&p.parse().unwrap()).occurs(w);
        let i = first.len();
        match self {
            Lemma::L123 => is_decreasing(first) && is_decreasing(rest),
            Lemma::L132 => avoids(first, "1-3-2") && is_increasing(rest),
            Lemma::L2314 => avoids(first, "2-3-1") && avoids(rest, "2-3-1-4"),
            Lemma::L3124 => avoids(first, "3-1-2") && avoids(rest, "3-1-2-4"),
            Lemma::L3214 => avoids(first, "3-2-1") && avoids(rest, "3-2-1-4"),
            Lemma::L2143 => {
                (i == 1 && avoids(rest, "2-1-4-3"))
                    || (i >= 2 && avoids(first, "2-1-4-3") && is_increasing(rest))
            }
            Lemma::L2134 => {
                (i == 1 && avoids(rest, "2-1-3-4"))
                    || (i >= 2 && avoids(first, "2-1-3") && is_decreasing(rest))
            }
            Lemma::L1324 => avoids(first, "1-3-2") && avoids(rest, "2-1-3"),
            Lemma::L1234 => {
                let dec = is_decreasing(first);
                (dec && avoids(rest, "1-2-3"))
                    || (!dec && avoids(first, "1-2-3") && is_decreasing(rest) && i >= 3)
            }
            Lemma::Increasing(k) => {
                let m = longest_increasing(first);
                (1..=k - 2).contains(&m)
                    && !Matcher::new(&VincularPattern::increasing(k - m)).occurs(rest)
            }
            Lemma::V1_23 => {
                first[i - 1] == 1 && avoids(&first[..i - 1], "1-23") && is_decreasing(rest)
            }
            Lemma::V1_32 => avoids(first, "1-32") && is_increasing(rest),
            Lemma::V1_32Literal => {
                let literal: Vec<u8> = (i as u8..=(i + rest.len()) as u8).collect();
                avoids(first, "1-32") && rest == literal.as_slice()
            }
            Lemma::V3_12 => avoids(first, "3-12") && avoids(rest, "3-12"),
            Lemma::V3_21 => avoids(first, "3-21") && avoids(rest, "3-21"),
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(k) = s.strip_prefix("lemma_inc_") {
            return match k.parse::<usize>() {
                Ok(k) if (3..=9).contains(&k) => Ok(Lemma::Increasing(k)),
                _ => Err(Error::UnknownLemma(s.into())),
            };
        }
        let all = [Lemma::V1_32Literal]
            .into_iter()
            .chain(Lemma::catalog())
            .find(|l| l.id() == s);
        all.ok_or_else(|| Error::UnknownLemma(s.into()))
    }
}

fn longest_increasing(w: &[u8]) -> usize {
    // Patience sorting tails.
    let mut tails: Vec<u8> = Vec::new();
    for &v in w {
        match tails.binary_search(&v) {
            Ok(_) => {}
            Err(pos) if pos == tails.len() => tails.push(v),
            Err(pos) => tails[pos] = v,
        }
    }
    tails.len()
}

/// Outcome of checking one lemma at one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub n: usize,
    /// Decomposable avoiders found by exhaustive search.
    pub decomposable_avoiders: usize,
    /// Permutations matching the characterization.
    pub characterized: usize,
    /// Decomposable avoiders the characterization misses.
    pub missed: Vec<Permutation>,
    /// Characterized permutations that are not decomposable avoiders.
    pub spurious: Vec<Permutation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.missed.is_empty() && self.spurious.is_empty()
    }
}

/// Runs `lemma` against every permutation of `[n]`.
pub fn check_structure_lemma(lemma_id: &str, n: usize) -> Result<LemmaReport> {
    let lemma: Lemma = lemma_id.parse()?;
    lemma.check(n)
}

impl Lemma {
    pub fn check(&self, n: usize) -> Result<LemmaReport> {
        if n < 2 {
            return Err(Error::Domain(format!("{self} needs n >= 2, got {n}")));
        }
        let limit = super::DEFAULT_MAX_N - 1;
        if n > limit {
            return Err(Error::ResourceLimit {
                requested: n,
                max: limit,
            });
        }
        let matcher = Matcher::new(&self.pattern());
        let mut report = LemmaReport {
            lemma: *self,
            n,
            decomposable_avoiders: 0,
            characterized: 0,
            missed: Vec::new(),
            spurious: Vec::new(),
        };
        for perm in Permutation::all(n) {
            let w = perm.values();
            let i = first_closure(w);
            let decomposable = i < n;
            let actual = decomposable && !matcher.occurs(w);
            let claimed = decomposable && self.characterizes(&w[..i], &w[i..]);
            report.decomposable_avoiders += usize::from(actual);
            report.characterized += usize::from(claimed);
            if actual && !claimed && report.missed.len() < MAX_WITNESSES {
                report.missed.push(perm);
            } else if claimed && !actual && report.spurious.len() < MAX_WITNESSES {
                report.spurious.push(perm);
            }
        }
        Ok(report)
    }
}
