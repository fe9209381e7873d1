//! Perfect matchings of `2n` sorted elements.
//!
//! Indices are 1-based throughout, so a matching of six elements pairs up
//! `{1, ..., 6}`. A matching is stored canonically: `i < j` inside each pair
//! and pairs sorted by their first index.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::semigroup::{cmp_same, combine, Carrier, Element, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("input is empty")]
    Empty,
    #[error("input has odd length {0}")]
    OddLength(usize),
    #[error("input mixes carriers {0} and {1}")]
    MixedCarriers(Carrier, Carrier),
    #[error("input is not sorted ascending at position {0}")]
    Unsorted(usize),
    #[error("invalid matching: {0}")]
    Invalid(String),
    #[error("matching covers 2n = {matching} indices but the input has {input} elements")]
    RangeMismatch { matching: usize, input: usize },
    #[error("cannot parse matching {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// `2n` elements of one carrier, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedInput {
    elements: Vec<Element>,
    carrier: Carrier,
}

impl SortedInput {
    /// Accepts elements that are already sorted; use [`sort_input`] otherwise.
    pub fn from_sorted(elements: Vec<Element>) -> Result<Self, MatchingError> {
        let carrier = validate_shape(&elements)?;
        if let Some(k) = elements
            .windows(2)
            .position(|w| cmp_same(&w[0], &w[1]) == Ordering::Greater)
        {
            return Err(MatchingError::Unsorted(k + 1));
        }
        Ok(SortedInput { elements, carrier })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn n(&self) -> usize {
        self.elements.len() / 2
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element at 1-based index `i`.
    pub fn get(&self, i: usize) -> &Element {
        &self.elements[i - 1]
    }

    /// `a_i * a_j`.
    pub fn pair_value(&self, (i, j): (usize, usize)) -> Element {
        combine(self.get(i), self.get(j)).expect("input shares one carrier")
    }
}

fn validate_shape(elements: &[Element]) -> Result<Carrier, MatchingError> {
    let first = elements.first().ok_or(MatchingError::Empty)?;
    if !elements.len().is_multiple_of(2) {
        return Err(MatchingError::OddLength(elements.len()));
    }
    let carrier = first.carrier();
    if let Some(other) = elements.iter().find(|e| e.carrier() != carrier) {
        return Err(MatchingError::MixedCarriers(carrier, other.carrier()));
    }
    Ok(carrier)
}

/// Sorts `raw` ascending. The sort is stable, so equal elements keep their
/// input order.
pub fn sort_input(raw: Vec<Element>) -> Result<SortedInput, MatchingError> {
    let carrier = validate_shape(&raw)?;
    let mut elements = raw;
    elements.sort_by(cmp_same);
    Ok(SortedInput { elements, carrier })
}

pub type Pair = (usize, usize);

/// A partition of `{1, ..., 2n}` into `n` pairs, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pairs: Vec<Pair>,
}

impl Matching {
    /// Validates and canonicalizes `pairs`.
    pub fn new(pairs: impl IntoIterator<Item = Pair>) -> Result<Self, MatchingError> {
        let mut pairs: Vec<Pair> = pairs
            .into_iter()
            .map(|(i, j)| if i <= j { (i, j) } else { (j, i) })
            .collect();
        if pairs.is_empty() {
            return Err(MatchingError::Invalid("no pairs".into()));
        }
        pairs.sort_unstable();
        let size = 2 * pairs.len();
        let mut seen = vec![false; size + 1];
        for &(i, j) in &pairs {
            if i == j {
                return Err(MatchingError::Invalid(format!(
                    "index {i} paired with itself"
                )));
            }
            for k in [i, j] {
                if k == 0 || k > size {
                    return Err(MatchingError::Invalid(format!(
                        "index {k} outside 1..={size}"
                    )));
                }
                if std::mem::replace(&mut seen[k], true) {
                    return Err(MatchingError::Invalid(format!("index {k} used twice")));
                }
            }
        }
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        let pair = if pair.0 <= pair.1 {
            pair
        } else {
            (pair.1, pair.0)
        };
        self.pairs.binary_search(&pair).is_ok()
    }

    /// The index matched with `i`.
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == i {
                Some(b)
            } else if b == i {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Swaps two present pairs for two absent ones over the same indices.
    pub(crate) fn exchange(&self, removed: [Pair; 2], inserted: [Pair; 2]) -> Option<Matching> {
        if !removed.iter().all(|&p| self.contains(p)) || inserted.iter().any(|&p| self.contains(p))
        {
            return None;
        }
        let kept = self.pairs.iter().copied().filter(|p| !removed.contains(p));
        Matching::new(kept.chain(inserted)).ok()
    }

    pub fn is_symmetric(&self) -> bool {
        let size = 2 * self.n();
        self.pairs
            .iter()
            .enumerate()
            .all(|(k, &(i, j))| i == k + 1 && j == size - k)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in &self.pairs {
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

impl FromStr for Matching {
    type Err = MatchingError;

    /// Parses `(i1,j1)(i2,j2)...`; whitespace between tokens is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| MatchingError::Parse {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| fail("expected (i,j)(k,l)..."))?;
        let pairs = body
            .split(")(")
            .map(|chunk| {
                let (i, j) = chunk
                    .split_once(',')
                    .ok_or_else(|| fail("pair needs two indices"))?;
                let i = i.parse::<usize>().map_err(|_| fail("bad index"))?;
                let j = j.parse::<usize>().map_err(|_| fail("bad index"))?;
                Ok((i, j))
            })
            .collect::<Result<Vec<_>, MatchingError>>()?;
        Matching::new(pairs)
    }
}

/// Parses a single pair `(i,j)` and orders it so that `i < j`.
pub fn parse_pair(text: &str) -> Result<Pair, MatchingError> {
    let fail = |reason: &str| MatchingError::Parse {
        literal: text.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (i, j) = compact
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .and_then(|t| t.split_once(','))
        .ok_or_else(|| fail("expected a single pair (i,j)"))?;
    let i = i.parse::<usize>().map_err(|_| fail("bad index"))?;
    let j = j.parse::<usize>().map_err(|_| fail("bad index"))?;
    if i == 0 || j == 0 || i == j {
        return Err(fail("indices must be distinct and at least 1"));
    }
    Ok((i.min(j), i.max(j)))
}

/// Formats a single pair as `(i,j)`.
pub fn format_pair((i, j): Pair) -> String {
    format!("({i},{j})")
}

/// The pairing `(k, 2n+1-k)` for `k = 1..=n`.
///
/// # Panics
///
/// If `n == 0`.
pub fn symmetric_matching(n: usize) -> Matching {
    assert!(n >= 1, "symmetric matching needs n >= 1");
    Matching {
        pairs: (1..=n).map(|k| (k, 2 * n + 1 - k)).collect(),
    }
}

/// `(2n-1)!! = 1 * 3 * ... * (2n-1)`.
pub fn count_matchings(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(2 * k - 1))
}

/// Lazy enumeration of all canonical matchings of `{1, ..., 2n}`.
///
/// At every level the smallest unmatched index is paired with each larger
/// unmatched index in ascending order, so matchings come out in lexicographic
/// order of their pair lists.
#[derive(Debug, Clone)]
pub struct Matchings {
    n: usize,
    /// `choice[k]` selects the partner of the level-k anchor among the
    /// `2(n-k)-1` unmatched indices above it.
    choice: Vec<usize>,
    /// The level-0 choice stays fixed when set (a single top-level branch).
    pinned_first: bool,
    done: bool,
}

impl Matchings {
    fn build(&self) -> Matching {
        let mut free: Vec<usize> = (1..=2 * self.n).collect();
        let mut pairs = Vec::with_capacity(self.n);
        for &c in &self.choice {
            let anchor = free.remove(0);
            let partner = free.remove(c);
            pairs.push((anchor, partner));
        }
        Matching { pairs }
    }

    fn advance(&mut self) {
        let floor = usize::from(self.pinned_first);
        for k in (floor..self.n).rev() {
            let options = 2 * (self.n - k) - 1;
            if self.choice[k] + 1 < options {
                self.choice[k] += 1;
                self.choice[k + 1..].iter_mut().for_each(|c| *c = 0);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Matchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        let m = self.build();
        self.advance();
        Some(m)
    }
}

/// Every canonical matching of `2n` indices, `(2n-1)!!` in total.
pub fn enumerate_matchings(n: usize) -> Matchings {
    Matchings {
        n,
        choice: vec![0; n],
        pinned_first: false,
        done: n == 0,
    }
}

/// The matchings that pair index 1 with `partner`: one of the `2n-1`
/// disjoint top-level branches of [`enumerate_matchings`].
pub fn enumerate_branch(n: usize, partner: usize) -> Matchings {
    let valid = n >= 1 && (2..=2 * n).contains(&partner);
    let mut choice = vec![0; n];
    if valid {
        choice[0] = partner - 2;
    }
    Matchings {
        n,
        choice,
        pinned_first: true,
        done: !valid,
    }
}

/// Pair values of one matching against an input, with their extrema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationRow {
    pub matching: Matching,
    pub pair_values: Vec<Element>,
    pub max_value: Element,
    pub min_value: Element,
}

pub fn evaluate(m: &Matching, input: &SortedInput) -> Result<EvaluationRow, MatchingError> {
    check_range(m, input)?;
    let pair_values: Vec<Element> = m.pairs().iter().map(|&p| input.pair_value(p)).collect();
    let max_value = pair_values
        .iter()
        .max_by(|a, b| cmp_same(a, b))
        .expect("n >= 1")
        .clone();
    let min_value = pair_values
        .iter()
        .min_by(|a, b| cmp_same(a, b))
        .expect("n >= 1")
        .clone();
    Ok(EvaluationRow {
        matching: m.clone(),
        pair_values,
        max_value,
        min_value,
    })
}

pub(crate) fn check_range(m: &Matching, input: &SortedInput) -> Result<(), MatchingError> {
    if 2 * m.n() != input.len() {
        return Err(MatchingError::RangeMismatch {
            matching: 2 * m.n(),
            input: input.len(),
        });
    }
    Ok(())
}
