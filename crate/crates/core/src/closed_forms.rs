//! Closed forms and recursions for avoider counts.
//!
//! Everything is evaluated in exact rationals and coerced to integers with a
//! hard check. The two counts with no known formula (`A^{1324}` and
//! `I^{4231}`), and `A^{12⋯m}` for `m ≥ 5`, come from the brute-force oracle.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::brute_force::{Oracle, Restrict};
use crate::error::{Error, Result};
use crate::pattern::VincularPattern;
use crate::series::TruncatedSeries;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial(BigInt::from(n), BigInt::from(k))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn to_integer(r: BigRational, formula: &'static str, n: usize) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::FormulaIntegrity { formula, n })
    }
}

/// `C_n = binom(2n, n) / (n + 1)`
pub fn catalan(n: usize) -> BigInt {
    binom(2 * n, n) / BigInt::from(n + 1)
}

const BELL_TABLE: usize = 64;

/// Bell numbers from the Bell triangle.
pub fn bell(n: usize) -> BigInt {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    let table = TABLE.get_or_init(|| bell_triangle(BELL_TABLE));
    match table.get(n) {
        Some(b) => b.clone(),
        None => bell_triangle(n).swap_remove(n),
    }
}

fn bell_triangle(max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..max {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let s = next.last().unwrap() + v;
            next.push(s);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// Number of indecomposable permutations of `[n]`, read off
/// `1 − 1/Σ k! x^k`.
pub fn comtet_indecomposable(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("indecomposable counts start at n = 1".into()));
    }
    let s = TruncatedSeries::one(n).sub(&factorial_series(n).reciprocal()?);
    to_integer(s.coefficient(n)?.clone(), "comtet", n)
}

/// Avoiders of `1234` (and its Wilf class).
pub fn e_n(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("the E_n sum is stated for n >= 1".into()));
    }
    let nn = n as i64;
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let kk = k as i64;
        let num = binom(2 * k, k) * binom(n, k).pow(2) * big(3 * kk * kk + 2 * kk - 2 * kk * nn - nn + 1);
        let den = big((kk + 1) * (kk + 1) * (kk + 2) * (nn - kk + 1));
        sum += BigRational::new(num, den);
    }
    to_integer(sum * BigInt::from(2), "E_n", n)
}

/// Avoiders of `1342` (and its Wilf class).
pub fn f_n(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("the F_n sum is stated for n >= 1".into()));
    }
    let nn = n as i64;
    let sign = |e: usize| if e.is_multiple_of(2) { big(1) } else { big(-1) };
    let mut total = BigRational::new(big(7 * nn * nn - 3 * nn - 2) * sign(n - 1), big(2));
    for i in 2..=n {
        let term = BigRational::new(
            sign(n - i) * (BigInt::one() << (i + 1)) * factorial(2 * i - 4),
            factorial(i) * factorial(i - 2),
        ) * binom(n - i + 2, 2);
        total += term * BigInt::from(3);
    }
    to_integer(total, "F_n", n)
}

fn series_from(order: usize, f: impl Fn(usize) -> Result<BigInt>) -> Result<TruncatedSeries> {
    let coeffs = (0..=order).map(f).collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_integers(coeffs))
}

/// `C(x)`
pub fn catalan_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers((0..=order).map(catalan))
}

/// `B(x) = Σ B_n x^n`
pub fn bell_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers((0..=order).map(bell))
}

/// `E(x)` with `E_0 = 1`.
pub fn e_series(order: usize) -> Result<TruncatedSeries> {
    series_from(order, |n| if n == 0 { Ok(BigInt::one()) } else { e_n(n) })
}

/// `F(x)` with `F_0 = 1`.
pub fn f_series(order: usize) -> Result<TruncatedSeries> {
    series_from(order, |n| if n == 0 { Ok(BigInt::one()) } else { f_n(n) })
}

/// `Σ k! x^k`
pub fn factorial_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers((0..=order).map(factorial))
}

/// `I(x)` for the 2431 class as `1 − 1/F(x)`.
pub fn class2431_via_reciprocal(order: usize) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::one(order).sub(&f_series(order)?.reciprocal()?))
}

/// `I(x)` for the 2431 class as `(−1 + 12x + 8x² + (1 − 8x)^{3/2}) / (32x)`.
pub fn class2431_via_sqrt(order: usize) -> Result<TruncatedSeries> {
    let top = order + 1;
    let one_minus_8x = TruncatedSeries::polynomial(&[1, -8], top);
    let three_halves = one_minus_8x.mul(&one_minus_8x.sqrt()?);
    let poly = TruncatedSeries::polynomial(&[-1, 12, 8], top);
    let numerator = poly.add(&three_halves);
    let scale = BigRational::new(big(1), big(32));
    Ok(numerator.div_x()?.scale(&scale))
}

/// The resolved pattern cases, each with its own counting route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternClassId {
    /// 231, 312, 321
    Catalan3,
    /// 2431, 4213, 3241, 4132, 2413, 3142
    Class2431,
    /// 4321, 3421, 4312, 2341, 4123, 3412
    Class4321,
    P4231,
    P123,
    /// 132, 213
    P132_213,
    /// 2314, 3124 and their reverse-complements 1423, 1342
    P2314_3124,
    /// 3214 and 1432
    P3214,
    P2143,
    /// 2134 and 1243
    P2134,
    P1324,
    P1234,
    /// `12⋯k` with `k ≥ 5`
    IncK(usize),
    /// `1-23` and `12-3`
    V123,
    /// `1-32` and `21-3`
    V132,
    /// `3-12`, `3-21` and their reverse-complements
    V312_321,
    /// `2-13`, `13-2`, same counts as 213
    V213,
    /// `2-31`, `31-2`, same counts as 231
    V231,
}

impl PatternClassId {
    /// Looks up the case a pattern belongs to. Patterns related by
    /// reverse-complement share a case.
    pub fn classify(p: &VincularPattern) -> Option<Self> {
        Self::lookup(p).or_else(|| Self::lookup(&p.reverse().complement()))
    }

    fn lookup(p: &VincularPattern) -> Option<Self> {
        use PatternClassId::*;
        let word = p.pattern().to_string();
        if p.is_classical() {
            let k = p.len();
            if k >= 5 && *p == VincularPattern::increasing(k) {
                return Some(IncK(k));
            }
            return Some(match word.as_str() {
                "231" | "312" | "321" => Catalan3,
                "123" => P123,
                "132" | "213" => P132_213,
                "2431" | "4213" | "3241" | "4132" | "2413" | "3142" => Class2431,
                "4321" | "3421" | "4312" | "2341" | "4123" | "3412" => Class4321,
                "4231" => P4231,
                "2314" | "3124" => P2314_3124,
                "3214" => P3214,
                "2143" => P2143,
                "2134" => P2134,
                "1324" => P1324,
                "1234" => P1234,
                _ => return None,
            });
        }
        if p.len() == 3 && p.adjacency() == [false, true] {
            return Some(match word.as_str() {
                "123" => V123,
                "132" => V132,
                "312" | "321" => V312_321,
                "213" => V213,
                "231" => V231,
                _ => return None,
            });
        }
        None
    }

    /// Whether the count is supplied by exhaustive search rather than a formula.
    pub fn is_oracle_backed(&self) -> bool {
        matches!(self, PatternClassId::P4231 | PatternClassId::P1324 | PatternClassId::IncK(_))
    }
}

impl fmt::Display for PatternClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternClassId::IncK(k) => write!(f, "IncK({k})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Which constant term to use in the `1234` count; see
/// [`i1234_alternate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form1234 {
    /// `E_n − 2 Σ_{i=1}^{n−1} C_i + n(n−1)/2`
    Standard,
    /// `E_n − 2 Σ_{i=0}^{n−1} C_i + (n² − n − 4)/2`
    Alternate,
}

/// `I^{1234}_n = E_n − 2 Σ_{i=1}^{n−1} C_i + n(n−1)/2` for `n ≥ 2`.
pub fn i1234(n: usize, form: Form1234) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("n >= 1".into()));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let nn = n as i64;
    let e = e_n(n)?;
    Ok(match form {
        Form1234::Standard => {
            let s: BigInt = (1..n).map(catalan).sum();
            e - s * 2 + big(nn * (nn - 1) / 2)
        }
        Form1234::Alternate => {
            let s: BigInt = (0..n).map(catalan).sum();
            e - s * 2 + big((nn * nn - nn - 4) / 2)
        }
    })
}

/// The variant of the `1234` count whose constant is `(n² − n − 4)/2`.
/// Disagrees with exhaustive search from `n = 2` on (`−3` against `1`).
pub fn i1234_alternate(n: usize) -> Result<BigInt> {
    i1234(n, Form1234::Alternate)
}

/// Number of indecomposable avoiders of `[n]` for the given case.
pub fn indecomposable_count(id: PatternClassId, n: usize) -> Result<BigInt> {
    indecomposable_count_with(id, n, &Oracle::default())
}

/// As [`indecomposable_count`], with an explicit oracle for the
/// search-backed cases.
pub fn indecomposable_count_with(id: PatternClassId, n: usize, oracle: &Oracle) -> Result<BigInt> {
    use PatternClassId::*;
    if n == 0 {
        return Err(Error::Domain("indecomposable counts start at n = 1".into()));
    }
    let c = catalan;
    Ok(match id {
        Catalan3 | V231 => c(n - 1),
        P123 => c(n) - BigInt::from(n - 1),
        P132_213 | V213 => {
            if n == 1 {
                BigInt::one()
            } else {
                c(n) - c(n - 1)
            }
        }
        Class2431 => class2431_via_reciprocal(n)?.coefficient(n)?.to_integer(),
        Class4321 => {
            let s = TruncatedSeries::one(n).sub(&e_series(n)?.reciprocal()?);
            to_integer(s.coefficient(n)?.clone(), "Class4321", n)?
        }
        P4231 => {
            let p: VincularPattern = "4-2-3-1".parse().expect("static pattern");
            oracle.count_avoiders(&p, n, Restrict::IndecomposableOnly)?
        }
        P2314_3124 => {
            if n == 1 {
                BigInt::one()
            } else {
                let conv: BigInt = (0..=n - 2).map(|i| Ok(c(i) * f_or_one(n - 1 - i)?)).sum::<Result<BigInt>>()?;
                f_n(n)? - conv
            }
        }
        P3214 => {
            if n == 1 {
                BigInt::one()
            } else {
                let conv: BigInt = (0..=n - 2).map(|i| Ok(c(i) * e_or_one(n - 1 - i)?)).sum::<Result<BigInt>>()?;
                e_n(n)? - conv
            }
        }
        P2143 => {
            if n == 1 {
                BigInt::one()
            } else {
                e_or_one(n)? - e_or_one(n - 1)? * 2 + e_or_one(n - 2)?
            }
        }
        P2134 => {
            if n == 1 {
                BigInt::one()
            } else {
                e_n(n)? - e_n(n - 1)? - c(n - 1) + 1
            }
        }
        P1324 => {
            if n == 1 {
                BigInt::one()
            } else {
                let p: VincularPattern = "1-3-2-4".parse().expect("static pattern");
                let a = oracle.count_avoiders(&p, n, Restrict::All)?;
                a - c(n + 1) + c(n) * 3 - c(n - 1) * 2
            }
        }
        P1234 => i1234(n, Form1234::Standard)?,
        IncK(k) => inc_pattern_indecomposable_with(k, n, oracle)?,
        V123 => {
            if n == 1 {
                BigInt::one()
            } else {
                bell(n) - (0..=n - 2).map(bell).sum::<BigInt>()
            }
        }
        V132 => {
            if n == 1 {
                BigInt::one()
            } else {
                bell(n) - bell(n - 1)
            }
        }
        V312_321 => {
            let s = TruncatedSeries::one(n).sub(&bell_series(n).reciprocal()?);
            to_integer(s.coefficient(n)?.clone(), "V312_321", n)?
        }
    })
}

fn e_or_one(n: usize) -> Result<BigInt> {
    if n == 0 {
        Ok(BigInt::one())
    } else {
        e_n(n)
    }
}

fn f_or_one(n: usize) -> Result<BigInt> {
    if n == 0 {
        Ok(BigInt::one())
    } else {
        f_n(n)
    }
}

/// Number of avoiders of `[n]`, for the patterns with a known closed form:
/// length at most 2, classical length 3 (Catalan), length 3 with one
/// adjacency (Catalan when the unattached letter is `2`, Bell otherwise),
/// and the two length-4 Wilf classes counted by `E_n` and `F_n`.
pub fn avoider_count(p: &VincularPattern, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    let w = p.pattern().values();
    let adj = p.adjacency();
    let none = || Error::NoFormula(format!("no closed form for A^{p}"));
    match w.len() {
        1 => Ok(BigInt::zero()),
        2 => Ok(BigInt::one()),
        3 if p.is_classical() => Ok(catalan(n)),
        3 if !p.is_consecutive() => {
            let lone = if adj[0] { w[2] } else { w[0] };
            Ok(if lone == 2 { catalan(n) } else { bell(n) })
        }
        4 if p.is_classical() => match p.pattern().to_string().as_str() {
            "1234" | "4321" | "1243" | "2134" | "3421" | "4312" | "1432" | "2341" | "3214"
            | "4123" | "2143" | "3412" => e_n(n),
            "1342" | "2431" | "3124" | "4213" | "1423" | "2314" | "3241" | "4132" | "2413"
            | "3142" => f_n(n),
            _ => Err(none()),
        },
        _ => Err(none()),
    }
}

/// Indecomposable `12⋯k` avoiders via the recursion over the length `m` of
/// the longest increasing subsequence in the first component.
pub fn inc_pattern_indecomposable(k: usize, n: usize) -> Result<BigInt> {
    inc_pattern_indecomposable_with(k, n, &Oracle::default())
}

pub fn inc_pattern_indecomposable_with(k: usize, n: usize, oracle: &Oracle) -> Result<BigInt> {
    if k < 3 {
        return Err(Error::Domain(format!("k must be at least 3, got {k}")));
    }
    let series = inc_pattern_series(k, n, oracle)?;
    to_integer(series.coefficient(n)?.clone(), "12..k recursion", n)
}

/// `I^{12⋯k}(x)` to order `order`. `A^{12}` and `A^{123}`, `A^{1234}` use
/// closed forms; longer increasing patterns use the oracle.
pub fn inc_pattern_series(k: usize, order: usize, oracle: &Oracle) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(order);
    // a[m], i[m] for m = 1..=k, index 0 unused.
    let mut a = vec![TruncatedSeries::zero(order); k + 1];
    let mut ind = vec![TruncatedSeries::zero(order); k + 1];
    a[1] = one.clone();
    if k >= 2 {
        // Only the decreasing permutations avoid 12, and all are indecomposable.
        a[2] = TruncatedSeries::from_integers(vec![1; order + 1]);
        ind[2] = a[2].sub(&one);
    }
    for m in 3..=k {
        a[m] = match m {
            3 => catalan_series(order),
            4 => e_series(order)?,
            _ => {
                let counts = oracle.counts(&VincularPattern::increasing(m), Restrict::All, order)?;
                TruncatedSeries::from_integers(counts)
            }
        };
        let mut decomposable = TruncatedSeries::zero(order);
        for j in 1..=m - 2 {
            let first = ind[j + 1].sub(&ind[j]);
            decomposable = decomposable.add(&first.mul(&a[m - j].sub(&one)));
        }
        ind[m] = a[m].sub(&one).sub(&decomposable);
    }
    Ok(ind[k].clone())
}
