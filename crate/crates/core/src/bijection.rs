//! A bijection between the `1-32`-avoiding indecomposable permutations of
//! `[n]` and the `1-32`-avoiding permutations of `[n]` that end with a rise.
//!
//! Split the `1-32`-avoiders of `[n]`, `n ≥ 2`, by their last value:
//! `S1` ends with `1`, `S2` ends with `n`, `S3` is the rest. Every value to
//! the right of `1` is increasing, so `S1` is exactly the indecomposable
//! avoiders that end with a descent, `S2` is decomposable, and `S3` is both
//! indecomposable and ends with a rise. The map sends `ρ·1 ∈ S1` to
//! `red(ρ)·n ∈ S2` and fixes `S3`.

use crate::error::{Error, Result};
use crate::pattern::{Matcher, VincularPattern};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AvoiderClass {
    /// Ends with `1`.
    S1,
    /// Ends with `n`.
    S2,
    /// Ends with neither.
    S3,
}

fn one_thirty_two() -> VincularPattern {
    "1-32".parse().expect("valid pattern")
}

fn avoids_132(w: &[u8]) -> bool {
    !Matcher::new(&one_thirty_two()).occurs(w)
}

fn ends_with_rise(w: &[u8]) -> bool {
    w.len() >= 2 && w[w.len() - 2] < w[w.len() - 1]
}

pub fn classify(perm: &Permutation) -> Result<AvoiderClass> {
    let w = perm.values();
    let n = w.len();
    if n < 2 {
        return Err(Error::Domain(format!("classes need n >= 2, got {n}")));
    }
    if !avoids_132(w) {
        return Err(Error::Domain(format!("{perm} contains 1-32")));
    }
    Ok(match w[n - 1] as usize {
        1 => AvoiderClass::S1,
        last if last == n => AvoiderClass::S2,
        _ => AvoiderClass::S3,
    })
}

/// `ρ·1 ↦ red(ρ)·n` on `S1`, identity on `S3`.
pub fn forward(perm: &Permutation) -> Result<Permutation> {
    let class = classify(perm)?;
    let w = perm.values();
    let n = w.len();
    match class {
        AvoiderClass::S2 => Err(Error::Domain(format!("{perm} is decomposable"))),
        AvoiderClass::S3 => Ok(perm.clone()),
        AvoiderClass::S1 => {
            let image: Vec<u8> = w[..n - 1].iter().map(|v| v - 1).chain([n as u8]).collect();
            Ok(Permutation::from_bytes_unchecked(image))
        }
    }
}

/// `τ·n ↦ (τ+1)·1` on `S2`, identity on `S3`.
pub fn backward(perm: &Permutation) -> Result<Permutation> {
    let class = classify(perm)?;
    let w = perm.values();
    let n = w.len();
    match class {
        AvoiderClass::S1 => Err(Error::Domain(format!("{perm} ends with a descent"))),
        AvoiderClass::S3 => Ok(perm.clone()),
        AvoiderClass::S2 => {
            let image: Vec<u8> = w[..n - 1].iter().map(|v| v + 1).chain([1]).collect();
            Ok(Permutation::from_bytes_unchecked(image))
        }
    }
}

/// The recursion `f(π) = f(π_1−1 ⋯ π_{n−1}−1)·n` with `f(21) = 12`, applied
/// literally. The inner argument can be decomposable, where `f` is
/// undefined; such arguments pass through unchanged. Not injective: at
/// `n = 3` both `231` and `321` go to `123`.
pub fn literal_recursive_forward(perm: &Permutation) -> Permutation {
    let w = perm.values();
    let n = w.len();
    if n < 2 || !avoids_132(w) || perm.is_indecomposable() != Ok(true) || w[n - 1] != 1 {
        return perm.clone();
    }
    if n == 2 {
        return Permutation::identity(2);
    }
    let inner = Permutation::from_bytes_unchecked(w[..n - 1].iter().map(|v| v - 1).collect());
    let mut image = literal_recursive_forward(&inner).into_values();
    image.push(n as u8);
    Permutation::from_bytes_unchecked(image)
}

/// Exhaustive check of the bijection at one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: usize,
    /// `1-32`-avoiding indecomposable permutations.
    pub domain_size: usize,
    /// `1-32`-avoiding permutations ending with a rise.
    pub codomain_size: usize,
    /// Images that are avoiders ending with a rise.
    pub lands_in_codomain: bool,
    pub injective: bool,
    pub onto: bool,
    /// `backward ∘ forward` and `forward ∘ backward` are identities.
    pub round_trip: bool,
    /// The structural facts hold on every avoider.
    pub structure: bool,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.domain_size == self.codomain_size
            && self.lands_in_codomain
            && self.injective
            && self.onto
            && self.round_trip
            && self.structure
    }
}

/// Right of `1` is increasing; `S3` has `n` before `1`; `S1` is
/// indecomposable; `S2` is decomposable.
fn structure_holds(perm: &Permutation, class: AvoiderClass) -> bool {
    let w = perm.values();
    let n = w.len();
    let pos = |v: u8| w.iter().position(|&x| x == v).expect("value present");
    let one = pos(1);
    let indecomposable = perm.is_indecomposable() == Ok(true);
    crate::perm::is_increasing(&w[one..])
        && match class {
            AvoiderClass::S1 => indecomposable,
            AvoiderClass::S2 => !indecomposable,
            AvoiderClass::S3 => pos(n as u8) < one,
        }
}

pub fn verify(n: usize) -> Result<BijectionReport> {
    if n < 2 {
        return Err(Error::Domain(format!("bijection needs n >= 2, got {n}")));
    }
    let limit = crate::brute_force::DEFAULT_MAX_N;
    if n > limit {
        return Err(Error::ResourceLimit {
            requested: n,
            max: limit,
        });
    }
    let avoiders: Vec<Permutation> = crate::Oracle::default()
        .enumerate_avoiders(&one_thirty_two(), n, crate::Restrict::All)?
        .collect();
    let mut domain = Vec::new();
    let mut codomain = std::collections::HashSet::new();
    let mut structure = true;
    for perm in &avoiders {
        let class = classify(perm)?;
        structure &= structure_holds(perm, class);
        if perm.is_indecomposable()? {
            domain.push(perm);
        }
        if ends_with_rise(perm.values()) {
            codomain.insert(perm.clone());
        }
    }
    let mut images = std::collections::HashSet::new();
    let mut lands = true;
    let mut round_trip = true;
    for perm in &domain {
        let image = forward(perm)?;
        lands &= codomain.contains(&image);
        round_trip &= backward(&image)? == **perm;
        images.insert(image);
    }
    for perm in &codomain {
        round_trip &= forward(&backward(perm)?)? == *perm;
    }
    Ok(BijectionReport {
        n,
        domain_size: domain.len(),
        codomain_size: codomain.len(),
        lands_in_codomain: lands,
        injective: images.len() == domain.len(),
        onto: images == codomain,
        round_trip,
        structure,
    })
}

/// Every `(π, f(π))` pair at length `n`, in lexicographic order of `π`.
pub fn table(n: usize) -> Result<Vec<(Permutation, Permutation)>> {
    if n < 2 {
        return Err(Error::Domain(format!("bijection needs n >= 2, got {n}")));
    }
    crate::Oracle::default()
        .enumerate_avoiders(&one_thirty_two(), n, crate::Restrict::IndecomposableOnly)?
        .map(|p| forward(&p).map(|f| (p, f)))
        .collect()
}
