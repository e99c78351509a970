//! Exact truncated power series.
//!
//! [`TruncatedSeries`] is a series in `x` known up to `x^N`.
//! [`BivariateSeries`] additionally tracks a descent-marking variable `q`;
//! the `x^n` slice is a polynomial in `q` of degree at most `max(0, n − 1)`.
//! Binary operations truncate to the smaller order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 12;

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    /// `c_0 … c_N`
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Series with coefficients `c_0 … c_N`; `coeffs` must be nonempty.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs c_0");
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(rat).collect())
    }

    /// A polynomial padded with zeros (or truncated) to `order`.
    pub fn polynomial<T: Into<BigInt> + Clone>(coeffs: &[T], order: usize) -> Self {
        Self::from_fn(order, |k| {
            coeffs
                .get(k)
                .map(|c| rat(c.clone()))
                .unwrap_or_else(BigRational::zero)
        })
    }

    /// `c_n = f(n)` for `n ≤ order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, rat(1), order)
    }

    /// `c · x^k`, or zero when `k > order`.
    pub fn monomial(k: usize, c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `x`
    pub fn x(order: usize) -> Self {
        Self::monomial(1, rat(1), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> Result<&BigRational> {
        self.coeffs.get(n).ok_or(Error::OutOfOrder {
            index: n,
            order: self.order(),
        })
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as integers, failing on the first non-integer.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x · s`, keeping the order.
    pub fn mul_x(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len());
        c.push(BigRational::zero());
        c.extend_from_slice(&self.coeffs[..self.order()]);
        Self::new(c)
    }

    /// `s / x`; the constant term must vanish and the order drops by one.
    pub fn div_x(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("division by x needs a zero constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::Domain("division by x of an order-0 series".into()));
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| &self.coeffs[k] + &other.coeffs[k])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| &self.coeffs[k] - &other.coeffs[k])
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| {
            (0..=k)
                .filter(|&j| !self.coeffs[j].is_zero())
                .map(|j| &self.coeffs[j] * &other.coeffs[k - j])
                .sum()
        })
    }

    /// `1 / s`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let mut r: Vec<BigRational> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let acc: BigRational = (1..=n).map(|k| &self.coeffs[k] * &r[n - k]).sum();
            r.push(-acc * &inv0);
        }
        Ok(Self::new(r))
    }

    /// The square root with constant term 1, from the coefficient
    /// recurrence of `r² = s`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NoSquareRoot);
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut r: Vec<BigRational> = vec![rat(1)];
        for n in 1..=self.order() {
            let cross: BigRational = (1..n).map(|k| &r[k] * &r[n - k]).sum();
            r.push((&self.coeffs[n] - cross) * &half);
        }
        Ok(Self::new(r))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// First index where the two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}; O(x^{})]", terms.join(", "), self.order() + 1)
    }
}

macro_rules! forward_ops {
    ($ty:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: Self) -> $ty {
                <$ty>::add(self, rhs)
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: Self) -> $ty {
                <$ty>::sub(self, rhs)
            }
        }
        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: Self) -> $ty {
                <$ty>::mul(self, rhs)
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.scale(&-BigRational::one())
            }
        }
    };
}

forward_ops!(TruncatedSeries);
forward_ops!(BivariateSeries);

/// Polynomial in `q`, dense from degree 0.
type QPoly = Vec<BigRational>;

fn width(n: usize) -> usize {
    n.max(1)
}

#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    /// `rows[n][i]` is the coefficient of `x^n q^i`.
    rows: Vec<QPoly>,
}

impl BivariateSeries {
    fn from_rows(rows: Vec<QPoly>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == width(n)));
        Self { rows }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_rows((0..=order).map(|n| vec![BigRational::zero(); width(n)]).collect())
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.rows[0][0] = rat(1);
        s
    }

    /// `c · x^n q^i`. Fails when `i` exceeds the descent bound of the slice.
    pub fn monomial(n: usize, i: usize, c: BigRational, order: usize) -> Result<Self> {
        if i >= width(n) {
            return Err(Error::Domain(format!("q^{i} not allowed in the x^{n} slice")));
        }
        let mut s = Self::zero(order);
        if n <= order {
            s.rows[n][i] = c;
        }
        Ok(s)
    }

    /// Table of integer counts, `rows[n][i]`. Missing entries are zero and
    /// rows are padded or checked against the descent bound.
    pub fn from_integer_rows(rows: &[Vec<BigInt>]) -> Self {
        assert!(!rows.is_empty());
        let mut out = Self::zero(rows.len() - 1);
        for (n, row) in rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                if i >= width(n) {
                    assert!(v.is_zero(), "x^{n} q^{i} exceeds the descent bound");
                    continue;
                }
                out.rows[n][i] = rat(v.clone());
            }
        }
        out
    }

    /// A univariate series viewed as having no `q` dependence.
    pub fn from_univariate(s: &TruncatedSeries) -> Self {
        let mut out = Self::zero(s.order());
        for (n, c) in s.coefficients().iter().enumerate() {
            out.rows[n][0] = c.clone();
        }
        out
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficient of `x^n q^i`; zero when `i` is past the descent bound.
    pub fn coefficient(&self, n: usize, i: usize) -> Result<BigRational> {
        let row = self.rows.get(n).ok_or(Error::OutOfOrder {
            index: n,
            order: self.order(),
        })?;
        Ok(row.get(i).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn slice(&self, n: usize) -> &[BigRational] {
        &self.rows[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_rows(self.rows[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(|a| a * c).collect())
                .collect(),
        )
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let n = self.order().min(other.order());
        Self::from_rows(
            (0..=n)
                .map(|k| {
                    self.rows[k]
                        .iter()
                        .zip(&other.rows[k])
                        .map(|(a, b)| f(a, b))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Product convolving in both `x` and `q`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let rows = (0..=order)
            .map(|n| {
                let mut acc = vec![BigRational::zero(); width(n)];
                for a in 0..=n {
                    q_mul_acc(&mut acc, &self.rows[a], &other.rows[n - a]);
                }
                acc
            })
            .collect();
        Self::from_rows(rows)
    }

    /// `x · s`, keeping the order.
    pub fn mul_x(&self) -> Self {
        self.shift(false)
    }

    /// `x q · s`, keeping the order. The constant term must vanish; every
    /// other slice `n` has degree at most `n − 1`, so the shift stays within
    /// the descent bound.
    pub fn mul_xq(&self) -> Result<Self> {
        if !self.rows[0][0].is_zero() {
            return Err(Error::Domain("x q times a nonzero constant exceeds the descent bound".into()));
        }
        Ok(self.shift(true))
    }

    fn shift(&self, with_q: bool) -> Self {
        let mut out = Self::zero(self.order());
        let off = usize::from(with_q);
        for n in usize::from(with_q)..self.order() {
            for (i, c) in self.rows[n].iter().enumerate() {
                if !c.is_zero() {
                    out.rows[n + 1][i + off] = c.clone();
                }
            }
        }
        out
    }

    /// `1 / s`; the `x^0` coefficient must be nonzero.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.rows[0][0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let mut r: Vec<QPoly> = vec![vec![inv0.clone()]];
        for n in 1..=self.order() {
            let mut acc = vec![BigRational::zero(); width(n)];
            for k in 1..=n {
                q_mul_acc(&mut acc, &self.rows[k], &r[n - k]);
            }
            r.push(acc.into_iter().map(|c| -c * &inv0).collect());
        }
        Ok(Self::from_rows(r))
    }

    /// Sum each slice over `i`.
    pub fn at_q_one(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.rows.iter().map(|r| r.iter().sum()).collect())
    }

    /// First `(n, i)` where the two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        let order = self.order().min(other.order());
        (0..=order).find_map(|n| {
            (0..width(n))
                .find(|&i| self.rows[n][i] != other.rows[n][i])
                .map(|i| (n, i))
        })
    }

    /// Expansion of one of the fixed structural factors.
    pub fn geometric_block(shape: Shape, order: usize) -> Self {
        let mut s = Self::zero(order);
        for n in 0..=order {
            match shape {
                Shape::One if n == 0 => s.rows[0][0] = rat(1),
                Shape::X if n == 1 => s.rows[1][0] = rat(1),
                Shape::GeometricX if n >= 1 => s.rows[n][0] = rat(1),
                Shape::GeometricXq if n >= 1 => s.rows[n][n - 1] = rat(1),
                Shape::GeometricXqSquared if n >= 2 => s.rows[n][n - 2] = rat(n as i64 - 1),
                _ => {}
            }
        }
        s
    }

    /// Whether every nonzero `x^n q^i` satisfies `i ≤ max(0, n − 1)`.
    /// Always true by construction; exposed for tests.
    pub fn respects_descent_bound(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, r)| r.len() == width(n))
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.rows.iter().flatten().any(|c| c.is_negative())
    }
}

fn q_mul_acc(acc: &mut [BigRational], a: &[BigRational], b: &[BigRational]) {
    for (j, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (l, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            acc[j + l] += x * y;
        }
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, r) in self.rows.iter().enumerate() {
            let terms: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            write!(f, "{}x^{n}:({})", if n > 0 { ", " } else { "" }, terms.join(" "))?;
        }
        write!(f, "; O(x^{})]", self.order() + 1)
    }
}

/// Structural factors that occur in the decomposition identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `1`
    One,
    /// `x`
    X,
    /// `x/(1−x)`: a nonempty increasing run.
    GeometricX,
    /// `x/(1−xq)`: a nonempty decreasing run.
    GeometricXq,
    /// `x²/(1−xq)²`: two nonempty decreasing runs.
    GeometricXqSquared,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(match compact.as_str() {
            "1" => Shape::One,
            "x" => Shape::X,
            "x/(1-x)" => Shape::GeometricX,
            "x/(1-xq)" => Shape::GeometricXq,
            "x^2/(1-xq)^2" | "x²/(1-xq)²" => Shape::GeometricXqSquared,
            _ => return Err(Error::UnknownShape(s.to_string())),
        })
    }
}

/// Parses `shape` and expands it; see [`BivariateSeries::geometric_block`].
pub fn geometric_block(shape: &str, order: usize) -> Result<BivariateSeries> {
    Ok(BivariateSeries::geometric_block(shape.parse()?, order))
}
