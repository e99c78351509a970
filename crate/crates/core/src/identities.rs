//! Generating-function identities checked coefficient by coefficient.
//!
//! Every `A` and `I` series in an identity comes from the brute-force
//! oracle, never from [`crate::closed_forms`], so a pass here is independent
//! of the closed forms. Structural factors come from
//! [`BivariateSeries::geometric_block`].

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::bijection;
use crate::brute_force::{Lemma, Oracle, Restrict};
use crate::closed_forms::{self, Form1234, PatternClassId};
use crate::error::{Error, Result};
use crate::pattern::VincularPattern;
use crate::perm::Permutation;
use crate::series::{BivariateSeries, Shape, TruncatedSeries};

/// The three Wilf classes of length-4 patterns.
pub const WILF_CLASSES: [&[&str]; 3] = [
    &[
        "1234", "4321", "1243", "2134", "3421", "4312", "1432", "2341", "3214", "4123", "2143",
        "3412",
    ],
    &[
        "1342", "2431", "3124", "4213", "1423", "2314", "3241", "4132", "2413", "3142",
    ],
    &["1324", "4231"],
];

/// Patterns related by reverse-complement whose indecomposable counts agree.
pub const RC_PAIRS: [(&str, &str); 4] = [
    ("2314", "1423"),
    ("3124", "1342"),
    ("3214", "1432"),
    ("2134", "1243"),
];

const IND_FACTOR_PATTERNS: [&str; 18] = [
    "231", "312", "321", "2431", "4213", "3241", "4132", "2413", "3142", "4321", "3421", "4312",
    "2341", "4123", "3412", "4231", "3-12", "3-21",
];

/// Classical pattern from its digits, vincular from dash notation.
fn pattern(text: &str) -> VincularPattern {
    let dashed = if text.contains('-') {
        text.to_string()
    } else {
        text.chars().map(String::from).collect::<Vec<_>>().join("-")
    };
    dashed.parse().expect("catalog patterns parse")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `I = 1 − 1/A` for an indecomposable pattern.
    IndFactor(String),
    Eq123,
    /// `σ ∈ {132, 213}`
    Eq132(String),
    Eq2314,
    Eq3124,
    Eq3214,
    Eq2143,
    Eq2134,
    Eq1324,
    Eq1234,
    /// Decomposition of `12⋯k` avoiders by the longest increasing run of
    /// the first component.
    EqIncK(usize),
    EqV123,
    EqV132,
    /// `I(x) = 1 − 1/B(x)` for `3-12` or `3-21`; no descent refinement.
    EqV312(String),
}

impl Identity {
    pub fn catalog() -> Vec<Identity> {
        use Identity::*;
        let mut out: Vec<Identity> = IND_FACTOR_PATTERNS
            .iter()
            .map(|p| IndFactor(p.to_string()))
            .collect();
        out.extend([
            Eq123,
            Eq132("132".into()),
            Eq132("213".into()),
            Eq2314,
            Eq3124,
            Eq3214,
            Eq2143,
            Eq2134,
            Eq1324,
            Eq1234,
            EqIncK(3),
            EqIncK(4),
            EqIncK(5),
            EqV123,
            EqV132,
            EqV312("3-12".into()),
            EqV312("3-21".into()),
        ]);
        out
    }

    /// Catalog entries whose id equals `selector` or starts with
    /// `selector/`, e.g. `IND_FACTOR` selects every `IND_FACTOR/…` entry.
    pub fn select(selector: &str) -> Result<Vec<Identity>> {
        let prefix = format!("{selector}/");
        let found: Vec<Identity> = Self::catalog()
            .into_iter()
            .filter(|i| {
                let id = i.id();
                id == selector || id.starts_with(&prefix)
            })
            .collect();
        if found.is_empty() {
            // Allow ids outside the default catalog, e.g. EQ_INCK/6.
            return selector.parse::<Identity>().map(|i| vec![i]);
        }
        Ok(found)
    }

    pub fn id(&self) -> String {
        use Identity::*;
        match self {
            IndFactor(p) => format!("IND_FACTOR/{p}"),
            Eq123 => "EQ_123".into(),
            Eq132(p) => format!("EQ_132/{p}"),
            Eq2314 => "EQ_2314".into(),
            Eq3124 => "EQ_3124".into(),
            Eq3214 => "EQ_3214".into(),
            Eq2143 => "EQ_2143".into(),
            Eq2134 => "EQ_2134".into(),
            Eq1324 => "EQ_1324".into(),
            Eq1234 => "EQ_1234".into(),
            EqIncK(k) => format!("EQ_INCK/{k}"),
            EqV123 => "EQ_V123".into(),
            EqV132 => "EQ_V132".into(),
            EqV312(p) => format!("EQ_V312/{p}"),
        }
    }

    pub fn equation(&self) -> String {
        use Identity::*;
        match self {
            IndFactor(p) => format!("I^{p}(x,q) = 1 - 1/A^{p}(x,q)"),
            Eq123 => "A^123(x,q) = I^123(x,q) + x^2/(1-xq)^2 + 1".into(),
            Eq132(p) => format!("A^{p}(x,q) = 1 + I^{p}(x,q)/(1-x)"),
            Eq2314 => "A^2314 = 1 + I^2314 + I^231 (A^2314 - 1)".into(),
            Eq3124 => "A^3124 = 1 + I^3124 + I^312 (A^3124 - 1)".into(),
            Eq3214 => "A^3214 = 1 + I^3214 + I^321 (A^3214 - 1)".into(),
            Eq2143 => "A^2143 = 1 + I^2143 + x (A^2143 - 1) + x/(1-x) (I^2143 - x)".into(),
            Eq2134 => "A^2134 = 1 + I^2134 + x (A^2134 - 1) + x/(1-xq) (I^213 - x)".into(),
            Eq1324 => "A^1324 = 1 + I^1324 + I^132 (A^213 - 1)".into(),
            Eq1234 => {
                "A^1234 = 1 + I^1234 + x/(1-xq) (A^123 - 1) + x/(1-xq) (I^123 - x/(1-xq))".into()
            }
            EqIncK(k) => format!(
                "A^(12..{k}) = 1 + I^(12..{k}) + sum_(m=1)^({}) (I^(12..m+1) - I^(12..m)) (A^(12..{k}-m) - 1)",
                k - 2
            ),
            EqV123 => "A^1-23 = 1 + I^1-23 + x/(1-xq) [(A^1-23 - 1) xq + x]".into(),
            EqV132 => "A^1-32 = 1 + I^1-32 + x/(1-x) I^1-32".into(),
            EqV312(p) => format!("I^{p}(x) = 1 - 1/B(x)"),
        }
    }

    /// Whether the identity refines by descents.
    pub fn is_bivariate(&self) -> bool {
        !matches!(self, Identity::EqV312(_))
    }

    /// Left- and right-hand sides to `order`.
    fn sides(&self, ctx: &Ctx) -> Result<(BivariateSeries, BivariateSeries)> {
        use Identity::*;
        let one = BivariateSeries::one(ctx.order);
        let x = ctx.block(Shape::X);
        let inc_run = ctx.block(Shape::GeometricX);
        let dec_run = ctx.block(Shape::GeometricXq);
        let a = |p: &str| ctx.series(p, Restrict::All);
        let i = |p: &str| ctx.series(p, Restrict::IndecomposableOnly);
        Ok(match self {
            IndFactor(p) => (i(p)?, &one - &a(p)?.reciprocal()?),
            Eq123 => {
                let rhs = &(&i("123")? + &ctx.block(Shape::GeometricXqSquared)) + &one;
                (a("123")?, rhs)
            }
            Eq132(p) => {
                let geometric = &one + &inc_run;
                (a(p)?, &one + &(&geometric * &i(p)?))
            }
            Eq2314 | Eq3124 | Eq3214 => {
                let (big, small) = match self {
                    Eq2314 => ("2314", "231"),
                    Eq3124 => ("3124", "312"),
                    _ => ("3214", "321"),
                };
                let ab = a(big)?;
                let rhs = &(&one + &i(big)?) + &(&i(small)? * &(&ab - &one));
                (ab, rhs)
            }
            Eq2143 => {
                let ab = a("2143")?;
                let ib = i("2143")?;
                let rhs = &(&(&one + &ib) + &(&x * &(&ab - &one))) + &(&inc_run * &(&ib - &x));
                (ab, rhs)
            }
            Eq2134 => {
                let ab = a("2134")?;
                let rhs = &(&(&one + &i("2134")?) + &(&x * &(&ab - &one)))
                    + &(&dec_run * &(&i("213")? - &x));
                (ab, rhs)
            }
            Eq1324 => {
                let rhs = &(&one + &i("1324")?) + &(&i("132")? * &(&a("213")? - &one));
                (a("1324")?, rhs)
            }
            Eq1234 => {
                let first = &dec_run * &(&a("123")? - &one);
                let second = &dec_run * &(&i("123")? - &dec_run);
                let rhs = &(&(&one + &i("1234")?) + &first) + &second;
                (a("1234")?, rhs)
            }
            EqIncK(k) => {
                let inc = |m: usize| VincularPattern::increasing(m).to_string();
                let mut rhs = &one + &i(&inc(*k))?;
                for m in 1..=k - 2 {
                    let first = &i(&inc(m + 1))? - &i(&inc(m))?;
                    rhs = &rhs + &(&first * &(&a(&inc(k - m))? - &one));
                }
                (a(&inc(*k))?, rhs)
            }
            EqV123 => {
                let av = a("1-23")?;
                let inner = &(&av - &one).mul_xq()? + &x;
                let rhs = &(&one + &i("1-23")?) + &(&dec_run * &inner);
                (av, rhs)
            }
            EqV132 => {
                let iv = i("1-32")?;
                let rhs = &(&one + &iv) + &(&inc_run * &iv);
                (a("1-32")?, rhs)
            }
            EqV312(p) => {
                let b = closed_forms::bell_series(ctx.order);
                let rhs = TruncatedSeries::one(ctx.order).sub(&b.reciprocal()?);
                (i(p)?, BivariateSeries::from_univariate(&rhs))
            }
        })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(k) = s.strip_prefix("EQ_INCK/") {
            return match k.parse::<usize>() {
                Ok(k) if (3..=9).contains(&k) => Ok(Identity::EqIncK(k)),
                _ => Err(Error::UnknownIdentity(s.into())),
            };
        }
        Identity::catalog()
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.into()))
    }
}

struct Ctx {
    oracle: Oracle,
    order: usize,
}

impl Ctx {
    fn series(&self, text: &str, restrict: Restrict) -> Result<BivariateSeries> {
        let table = self.oracle.descent_table(&pattern(text), restrict, self.order)?;
        Ok(table.to_series())
    }

    fn block(&self, shape: Shape) -> BivariateSeries {
        BivariateSeries::geometric_block(shape, self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Unchecked,
    Pass,
    /// First differing coefficient. `descents` is `None` for checks at `q = 1`.
    Fail {
        n: usize,
        descents: Option<usize>,
        lhs: BigRational,
        rhs: BigRational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRecord {
    pub id: String,
    pub equation: String,
    pub bivariate: bool,
    pub order: usize,
    pub status: Status,
}

impl IdentityRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Checks one identity to order `order`, refining by descents when asked
/// and when the identity supports it.
pub fn verify_identity(id: &str, order: usize, track_descents: bool) -> Result<IdentityRecord> {
    let identity: Identity = id.parse()?;
    check(&identity, order, track_descents, &Oracle::default())
}

pub fn check(
    identity: &Identity,
    order: usize,
    track_descents: bool,
    oracle: &Oracle,
) -> Result<IdentityRecord> {
    let ctx = Ctx {
        oracle: *oracle,
        order,
    };
    let bivariate = track_descents && identity.is_bivariate();
    let (lhs, rhs) = identity.sides(&ctx)?;
    let status = if bivariate {
        match lhs.first_mismatch(&rhs) {
            None => Status::Pass,
            Some((n, i)) => Status::Fail {
                n,
                descents: Some(i),
                lhs: lhs.coefficient(n, i)?,
                rhs: rhs.coefficient(n, i)?,
            },
        }
    } else {
        let (l, r) = (lhs.at_q_one(), rhs.at_q_one());
        match l.first_mismatch(&r) {
            None => Status::Pass,
            Some(n) => Status::Fail {
                n,
                descents: None,
                lhs: l.coefficient(n)?.clone(),
                rhs: r.coefficient(n)?.clone(),
            },
        }
    };
    Ok(IdentityRecord {
        id: identity.id(),
        equation: identity.equation(),
        bivariate,
        order,
        status,
    })
}

/// Avoiders of an indecomposable pattern with exactly `c` components,
/// compared with the coefficients of `I(x)^c`. Returns the first mismatch
/// as `(n, c, from_powers, by_search)`.
pub fn verify_component_powers(
    pattern: &VincularPattern,
    order: usize,
    max_components: usize,
    oracle: &Oracle,
) -> Result<Option<(usize, usize, BigInt, BigInt)>> {
    let ind = oracle.counts(pattern, Restrict::IndecomposableOnly, order)?;
    let ind = TruncatedSeries::from_integers(ind);
    let mut tally = vec![vec![0u64; max_components + 1]; order + 1];
    for (n, row) in tally.iter_mut().enumerate() {
        for perm in oracle.enumerate_avoiders(pattern, n, Restrict::All)? {
            let c = perm.components().len();
            if c <= max_components {
                row[c] += 1;
            }
        }
    }
    for c in 1..=max_components {
        let power = ind.pow(c as u32);
        for (n, row) in tally.iter().enumerate() {
            let expect = power.coefficient(n)?.to_integer();
            let got = BigInt::from(row[c]);
            if expect != got {
                return Ok(Some((n, c, expect, got)));
            }
        }
    }
    Ok(None)
}

/// Counts for one Wilf class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassProfile {
    pub class: usize,
    pub patterns: Vec<String>,
    /// `A_n` for `n = 0..=order` of the first member.
    pub counts: Vec<BigInt>,
    /// Members whose counts differ from the first member's.
    pub outliers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilfReport {
    pub order: usize,
    pub classes: Vec<ClassProfile>,
    /// Number of distinct count profiles among the three classes.
    pub distinct_profiles: usize,
    /// Distinct profiles over all 24 length-4 patterns.
    pub distinct_profiles_all_patterns: usize,
    /// Reverse-complement pairs with their indecomposable counts equal.
    pub rc_pairs: Vec<(String, String, bool)>,
    /// All six length-3 patterns give the Catalan numbers.
    pub length3_catalan: bool,
}

impl WilfReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.outliers.is_empty())
            && self.rc_pairs.iter().all(|p| p.2)
            && self.length3_catalan
    }
}

pub fn verify_wilf_classes(order: usize) -> Result<WilfReport> {
    verify_wilf_classes_with(order, &Oracle::default())
}

pub fn verify_wilf_classes_with(order: usize, oracle: &Oracle) -> Result<WilfReport> {
    let totals = |p: &str| oracle.counts(&pattern(p), Restrict::All, order);
    let mut classes = Vec::new();
    let mut all_profiles: Vec<Vec<BigInt>> = Vec::new();
    for (idx, members) in WILF_CLASSES.iter().enumerate() {
        let counts: Vec<Vec<BigInt>> = members
            .par_iter()
            .map(|p| totals(p))
            .collect::<Result<_>>()?;
        let outliers = members
            .iter()
            .zip(&counts)
            .filter(|(_, c)| **c != counts[0])
            .map(|(p, _)| p.to_string())
            .collect();
        for c in &counts {
            if !all_profiles.contains(c) {
                all_profiles.push(c.clone());
            }
        }
        classes.push(ClassProfile {
            class: idx + 1,
            patterns: members.iter().map(|s| s.to_string()).collect(),
            counts: counts[0].clone(),
            outliers,
        });
    }
    let mut distinct: Vec<&Vec<BigInt>> = Vec::new();
    for c in &classes {
        if !distinct.contains(&&c.counts) {
            distinct.push(&c.counts);
        }
    }
    let rc_pairs = RC_PAIRS
        .iter()
        .map(|(a, b)| {
            let ia = oracle.counts(&pattern(a), Restrict::IndecomposableOnly, order)?;
            let ib = oracle.counts(&pattern(b), Restrict::IndecomposableOnly, order)?;
            Ok((a.to_string(), b.to_string(), ia == ib))
        })
        .collect::<Result<_>>()?;
    let catalan: Vec<BigInt> = (0..=order).map(closed_forms::catalan).collect();
    let mut length3_catalan = true;
    for perm in Permutation::all(3) {
        let p = VincularPattern::classical(perm)?;
        length3_catalan &= oracle.counts(&p, Restrict::All, order)? == catalan;
    }
    Ok(WilfReport {
        order,
        distinct_profiles: distinct.len(),
        distinct_profiles_all_patterns: all_profiles.len(),
        classes,
        rc_pairs,
        length3_catalan,
    })
}

/// One line of a [`Summary`].
#[derive(Clone, Debug)]
pub struct SummaryEntry {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub order: usize,
    pub entries: Vec<SummaryEntry>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SummaryEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

/// Every length-3 and length-4 classical pattern, the twelve non-consecutive
/// vincular patterns of length 3, and `12345`, `123456`.
fn closed_form_patterns() -> Vec<VincularPattern> {
    let mut out = Vec::new();
    for k in [3, 4] {
        for perm in Permutation::all(k) {
            out.push(VincularPattern::classical(perm).expect("nonempty"));
        }
    }
    for perm in Permutation::all(3) {
        for adj in [[false, true], [true, false]] {
            out.push(VincularPattern::new(perm.clone(), adj.to_vec()).expect("valid"));
        }
    }
    out.push(VincularPattern::increasing(5));
    out.push(VincularPattern::increasing(6));
    out
}

/// Compares the closed form for `pattern`'s case with exhaustive search for
/// `n = 1..=order`. Returns the first mismatch as `(n, formula, search)`.
pub fn compare_closed_form(
    pattern: &VincularPattern,
    order: usize,
    form: Form1234,
    oracle: &Oracle,
) -> Result<Option<(usize, BigInt, BigInt)>> {
    let id = PatternClassId::classify(pattern)
        .ok_or_else(|| Error::NoFormula(format!("no case covers {pattern}")))?;
    for n in 1..=order {
        let formula = match id {
            PatternClassId::P1234 => closed_forms::i1234(n, form)?,
            _ => closed_forms::indecomposable_count_with(id, n, oracle)?,
        };
        let search = oracle.count_avoiders(pattern, n, Restrict::IndecomposableOnly)?;
        if formula != search {
            return Ok(Some((n, formula, search)));
        }
    }
    Ok(None)
}

type Job = Box<dyn Fn() -> Result<(bool, String)> + Send + Sync>;

/// Runs the whole catalog at `order`.
pub fn run_all(order: usize) -> Result<Summary> {
    run_all_with(order, Form1234::Standard)
}

/// As [`run_all`], choosing which `1234` constant the closed-form checks use.
pub fn run_all_with(order: usize, form: Form1234) -> Result<Summary> {
    let oracle = Oracle::default();
    if order > oracle.max_n() {
        return Err(Error::ResourceLimit {
            requested: order,
            max: oracle.max_n(),
        });
    }
    let mut jobs: Vec<(String, Job)> = Vec::new();

    for identity in Identity::catalog() {
        let id = identity.id();
        jobs.push((
            id,
            Box::new(move || {
                let r = check(&identity, order, true, &oracle)?;
                Ok((r.passed(), format!("{:?}", r.status)))
            }),
        ));
    }
    jobs.push((
        "WILF_CLASSES".into(),
        Box::new(move || {
            let r = verify_wilf_classes_with(order, &oracle)?;
            Ok((r.passed(), format!("{} distinct class profiles", r.distinct_profiles)))
        }),
    ));
    for p in closed_form_patterns() {
        let id = format!("CLOSED_FORM/{p}");
        jobs.push((
            id,
            Box::new(move || {
                let limit = if p.len() >= 5 { order.min(9) } else { order };
                Ok(match compare_closed_form(&p, limit, form, &oracle)? {
                    None => (true, format!("matches search for n <= {limit}")),
                    Some((n, f, s)) => (false, format!("n = {n}: formula {f}, search {s}")),
                })
            }),
        ));
    }
    jobs.push((
        "ARBITRATION/1234".into(),
        Box::new(move || {
            let search = oracle.count_avoiders(&pattern("1234"), 2, Restrict::IndecomposableOnly)?;
            let alternate = closed_forms::i1234(2, Form1234::Alternate)?;
            let standard = closed_forms::i1234(2, Form1234::Standard)?;
            let chosen = closed_forms::i1234(2, form)?;
            Ok((
                chosen == search,
                format!(
                    "n = 2: search {search}, constant n(n-1)/2 gives {standard}, constant (n^2-n-4)/2 gives {alternate}"
                ),
            ))
        }),
    ));
    let lemma_top = order.min(8);
    for lemma in Lemma::catalog() {
        jobs.push((
            lemma.id(),
            Box::new(move || {
                for n in 2..=lemma_top {
                    let r = lemma.check(n)?;
                    if !r.passed() {
                        return Ok((false, format!("n = {n}: {r:?}")));
                    }
                }
                Ok((true, format!("both directions hold for 2 <= n <= {lemma_top}")))
            }),
        ));
    }
    jobs.push((
        "LEMMA_1-32_READING".into(),
        Box::new(move || {
            let n = order.clamp(2, 8);
            let literal = Lemma::V1_32Literal.check(n)?;
            let forced = Lemma::V1_32.check(n)?;
            Ok((
                forced.passed() && !literal.passed(),
                format!(
                    "n = {n}: rest = (i+1)..n holds; rest = i(i+1)..n matches {} of {} decomposable avoiders",
                    literal.characterized, literal.decomposable_avoiders
                ),
            ))
        }),
    ));
    for p in ["231", "2431", "4231", "3-12"] {
        jobs.push((
            format!("COMPONENT_POWERS/{p}"),
            Box::new(move || {
                let top = order.min(7);
                Ok(match verify_component_powers(&pattern(p), top, 4, &oracle)? {
                    None => (true, format!("n <= {top}, c <= 4")),
                    Some(w) => (false, format!("mismatch {w:?}")),
                })
            }),
        ));
    }
    jobs.push((
        "BIJECTION/1-32".into(),
        Box::new(move || {
            let top = order.min(9);
            for n in 2..=top {
                let r = bijection::verify(n)?;
                if !r.passed() {
                    return Ok((false, format!("{r:?}")));
                }
            }
            Ok((true, format!("bijective for 2 <= n <= {top}")))
        }),
    ));

    let entries = jobs
        .into_par_iter()
        .map(|(id, job)| {
            let start = Instant::now();
            let (passed, detail) = match job() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            SummaryEntry {
                id,
                passed,
                detail,
                elapsed: start.elapsed(),
            }
        })
        .collect();
    Ok(Summary { order, entries })
}
