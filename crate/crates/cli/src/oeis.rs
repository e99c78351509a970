//! OEIS b-files: parsing, a local cache, and index-aligned comparison.

use std::borrow::Cow;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;

use crate::CliError;

/// Overrides the cache directory when `--cache-dir` is absent.
pub const CACHE_ENV: &str = "INDPERM_CACHE_DIR";
/// Overrides the server root, e.g. for a local mirror.
pub const BASE_URL_ENV: &str = "INDPERM_OEIS_BASE";
pub const DEFAULT_BASE_URL: &str = "https://oeis.org";
const TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    BruteForce,
    ClosedForm,
    Oeis,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::BruteForce => "brute_force",
            Provenance::ClosedForm => "closed_form",
            Provenance::Oeis => "oeis",
        })
    }
}

/// A named integer sequence. Indices are strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRecord {
    pub name: String,
    pub values: Vec<(i64, BigInt)>,
    pub provenance: Provenance,
    pub oeis_id: Option<String>,
}

impl SequenceRecord {
    pub fn new(
        name: impl Into<String>,
        values: Vec<(i64, BigInt)>,
        provenance: Provenance,
        oeis_id: Option<String>,
    ) -> Result<Self, CliError> {
        let name = name.into();
        if let Some(w) = values.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(CliError::Data(format!(
                "{name}: index {} does not increase past {}",
                w[1].0, w[0].0
            )));
        }
        Ok(Self {
            name,
            values,
            provenance,
            oeis_id,
        })
    }

    /// Values at consecutive indices starting from `first`.
    pub fn from_counts(
        name: impl Into<String>,
        first: i64,
        counts: impl IntoIterator<Item = BigInt>,
        provenance: Provenance,
    ) -> Self {
        let values = (first..).zip(counts).collect();
        Self {
            name: name.into(),
            values,
            provenance,
            oeis_id: None,
        }
    }

    pub fn get(&self, n: i64) -> Option<&BigInt> {
        self.values
            .binary_search_by_key(&n, |(i, _)| *i)
            .ok()
            .map(|k| &self.values[k].1)
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Some((self.values.first()?.0, self.values.last()?.0))
    }
}

/// Checks `A` followed by six digits.
pub fn validate_id(id: &str) -> Result<(), CliError> {
    let digits = id.strip_prefix('A').unwrap_or("");
    if digits.len() == 6 && digits.bytes().all(|b| b.is_ascii_digit()) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("malformed OEIS id {id:?}")))
    }
}

/// `b000108.txt` for `A000108`.
pub fn bfile_name(id: &str) -> Result<String, CliError> {
    validate_id(id)?;
    Ok(format!("b{}.txt", &id[1..]))
}

/// Lines of `n a(n)`; blank lines and lines starting with `#` are skipped.
pub fn parse_bfile(id: &str, text: &str) -> Result<SequenceRecord, CliError> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || CliError::Data(format!("{id} line {}: {line:?}", lineno + 1));
        let mut fields = line.split_whitespace();
        let n: i64 = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let v: BigInt = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if fields.next().is_some() {
            return Err(bad());
        }
        values.push((n, v));
    }
    if values.is_empty() {
        return Err(CliError::Data(format!("{id}: b-file has no terms")));
    }
    SequenceRecord::new(id, values, Provenance::Oeis, Some(id.to_string()))
}

/// `INDPERM_CACHE_DIR`, else `$HOME/.cache/indperm/oeis`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    let home = std::env::var_os("HOME").map(PathBuf::from).unwrap_or_default();
    home.join(".cache").join("indperm").join("oeis")
}

/// Reads the b-file from `cache_dir`, downloading it on a miss unless
/// `offline`. Downloads are stored verbatim.
pub fn fetch_bfile(id: &str, cache_dir: &Path, offline: bool) -> Result<SequenceRecord, CliError> {
    let name = bfile_name(id)?;
    let path = cache_dir.join(&name);
    if path.is_file() {
        let text = fs::read_to_string(&path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        return parse_bfile(id, &text);
    }
    if offline {
        return Err(CliError::Network(format!(
            "{id} is not cached in {} and --offline was given",
            cache_dir.display()
        )));
    }
    let base = std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.into());
    let url = format!("{}/{id}/{name}", base.trim_end_matches('/'));
    let text = download(&url)?;
    let record = parse_bfile(id, &text)?;
    fs::create_dir_all(cache_dir)
        .and_then(|_| fs::write(&path, &text))
        .map_err(|e| CliError::Data(format!("caching {}: {e}", path.display())))?;
    Ok(record)
}

fn download(url: &str) -> Result<String, CliError> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(TIMEOUT))
        .build()
        .into();
    agent
        .get(url)
        .call()
        .and_then(|mut r| r.body_mut().read_to_string())
        .map_err(|e| CliError::Network(format!("{url}: {e}")))
}

/// Result of aligning two records with `b[n + shift] ≟ a[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub shift: i64,
    /// Indices of `a` present in both, as `(first, last)`.
    pub overlap: (i64, i64),
    /// Leading indices that agree.
    pub matched: usize,
    /// `(n, a[n], b[n + shift])`
    pub first_mismatch: Option<(i64, BigInt, BigInt)>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn compare(a: &SequenceRecord, b: &SequenceRecord, shift: i64) -> Result<Comparison, CliError> {
    let common: Vec<(i64, &BigInt, &BigInt)> = a
        .values
        .iter()
        .filter_map(|(n, v)| b.get(n + shift).map(|w| (*n, v, w)))
        .collect();
    let (Some(first), Some(last)) = (common.first(), common.last()) else {
        return Err(CliError::Data(format!(
            "{} and {} do not overlap at shift {shift}",
            a.name, b.name
        )));
    };
    let overlap = (first.0, last.0);
    let matched = common.iter().take_while(|(_, v, w)| v == w).count();
    let first_mismatch = common
        .get(matched)
        .map(|(n, v, w)| (*n, (*v).clone(), (*w).clone()));
    Ok(Comparison {
        shift,
        overlap,
        matched,
        first_mismatch,
    })
}

/// What a manifest entry counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Avoiders of a pattern, optionally only the indecomposable ones.
    Pattern {
        pattern: Cow<'static, str>,
        indecomposable: bool,
    },
    /// All indecomposable permutations.
    Indecomposable,
}

/// A sequence of ours with its OEIS counterpart and index alignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: Cow<'static, str>,
    pub oeis_id: Cow<'static, str>,
    pub source: Source,
    /// Our `n` corresponds to OEIS index `n + shift`.
    pub shift: i64,
    /// Smallest `n` where the correspondence holds.
    pub first_n: usize,
}

pub const MANIFEST: &[ManifestEntry] = &[
    ManifestEntry {
        name: Cow::Borrowed("catalan"),
        oeis_id: Cow::Borrowed("A000108"),
        source: Source::Pattern {
            pattern: Cow::Borrowed("1-2-3"),
            indecomposable: false,
        },
        shift: 0,
        first_n: 1,
    },
    ManifestEntry {
        name: Cow::Borrowed("bell"),
        oeis_id: Cow::Borrowed("A000110"),
        source: Source::Pattern {
            pattern: Cow::Borrowed("1-23"),
            indecomposable: false,
        },
        shift: 0,
        first_n: 1,
    },
    ManifestEntry {
        name: Cow::Borrowed("indecomposable"),
        oeis_id: Cow::Borrowed("A003319"),
        source: Source::Indecomposable,
        shift: 0,
        first_n: 1,
    },
    ManifestEntry {
        name: Cow::Borrowed("class2431_indecomposable"),
        oeis_id: Cow::Borrowed("A000257"),
        source: Source::Pattern {
            pattern: Cow::Borrowed("2-4-3-1"),
            indecomposable: true,
        },
        shift: -1,
        first_n: 1,
    },
    ManifestEntry {
        name: Cow::Borrowed("132_indecomposable"),
        oeis_id: Cow::Borrowed("A000245"),
        source: Source::Pattern {
            pattern: Cow::Borrowed("1-3-2"),
            indecomposable: true,
        },
        shift: -1,
        first_n: 2,
    },
    ManifestEntry {
        name: Cow::Borrowed("3-12_indecomposable"),
        oeis_id: Cow::Borrowed("A074664"),
        source: Source::Pattern {
            pattern: Cow::Borrowed("3-12"),
            indecomposable: true,
        },
        shift: 0,
        first_n: 1,
    },
    ManifestEntry {
        name: Cow::Borrowed("1-32_indecomposable"),
        oeis_id: Cow::Borrowed("A005493"),
        source: Source::Pattern {
            pattern: Cow::Borrowed("1-32"),
            indecomposable: true,
        },
        shift: -2,
        first_n: 2,
    },
];

/// The manifest entry for an OEIS id and source, if any.
pub fn lookup(oeis_id: &str, pattern: &str, indecomposable: bool) -> Option<&'static ManifestEntry> {
    MANIFEST.iter().find(|e| {
        e.oeis_id == oeis_id
            && matches!(&e.source, Source::Pattern { pattern: p, indecomposable: i }
                if *i == indecomposable && same_pattern(p, pattern))
    })
}

fn same_pattern(a: &str, b: &str) -> bool {
    match (a.parse::<indperm::VincularPattern>(), b.parse::<indperm::VincularPattern>()) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(first: i64, v: &[i64]) -> SequenceRecord {
        SequenceRecord::from_counts("t", first, v.iter().map(|&x| BigInt::from(x)), Provenance::ClosedForm)
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let r = parse_bfile("A000108", "# header\n0 1\n\n1 1\n2 2\n3   5\n").unwrap();
        assert_eq!(r.range(), Some((0, 3)));
        assert_eq!(r.get(3), Some(&BigInt::from(5)));
        assert_eq!(r.provenance, Provenance::Oeis);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(parse_bfile("A1", "0 x\n"), Err(CliError::Data(_))));
        assert!(matches!(parse_bfile("A1", "0 1 2\n"), Err(CliError::Data(_))));
        assert!(matches!(parse_bfile("A1", "1 1\n0 1\n"), Err(CliError::Data(_))));
        assert!(matches!(parse_bfile("A1", "# only\n"), Err(CliError::Data(_))));
    }

    #[test]
    fn big_terms_survive() {
        let r = parse_bfile("A1", "30 192014557748061108436992\n").unwrap();
        assert_eq!(r.get(30).unwrap().to_string(), "192014557748061108436992");
    }

    #[test]
    fn ids() {
        assert_eq!(bfile_name("A000257").unwrap(), "b000257.txt");
        for bad in ["A00025", "a000257", "A0002577", "B000257", "A00025x"] {
            assert!(matches!(validate_id(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn compare_aligns_by_shift() {
        let ours = ints(1, &[1, 1, 3, 12, 56]);
        let theirs = ints(0, &[1, 1, 3, 12, 56, 288]);
        let c = compare(&ours, &theirs, -1).unwrap();
        assert!(c.passed());
        assert_eq!((c.overlap, c.matched), ((1, 5), 5));
        let c = compare(&ours, &theirs, 0).unwrap();
        assert_eq!(c.first_mismatch, Some((2, BigInt::from(1), BigInt::from(3))));
        assert_eq!(c.matched, 1);
        assert!(compare(&ours, &theirs, 100).is_err());
        assert!(compare(&ours, &ours, 0).unwrap().passed());
    }

    #[test]
    fn offline_miss_is_a_network_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(fetch_bfile("A000108", dir.path(), true), Err(CliError::Network(_))));
    }

    #[test]
    fn manifest_lookup_ignores_spelling() {
        assert!(lookup("A000257", "2-4-3-1", true).is_some());
        assert!(lookup("A000257", "2-4-3-1", false).is_none());
        assert!(lookup("A074664", "3-12", true).is_some());
        for e in MANIFEST {
            validate_id(&e.oeis_id).unwrap();
        }
    }
}
