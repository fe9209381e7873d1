//! Upper and lower bounding of pair values.
//!
//! Given `a_1 <= ... <= a_2n` in a totally ordered commutative semigroup and a
//! perfect matching whose pair values all lie strictly below a bound `N`, the
//! symmetric matching `(1,2n), (2,2n-1), ..., (n,n+1)` also lies strictly below
//! `N`. The lower-bounding statement mirrors this with `>`.
//!
//! [`exchange_transform`] turns a feasible matching into the symmetric one one
//! level at a time. At level `r` (with `s = 2n+1-r`) the pair `(r, s)` is either
//! already present, or `r` is matched with some `l` and `s` with some `l'`;
//! those two pairs are replaced by `(r, s)` and `(l, l')`. In the upper case
//! both new pairs are dominated by the old `(l', s)`:
//!
//! ```text
//! a_r * a_s  <= a_l' * a_s  < N     since a_r <= a_l'
//! a_l * a_l' <= a_s  * a_l' < N     since a_l <= a_s
//! ```
//!
//! and in the lower case both dominate the old `(r, l)`. Each step records
//! these four inequalities so that [`verify_certificate`] can re-check them
//! without trusting the producer.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::matching::{
    check_range, count_matchings, enumerate_branch, evaluate, format_pair, symmetric_matching,
    EvaluationRow, Matching, MatchingError, Pair, SortedInput,
};
use crate::semigroup::{cmp_same, combine, compare, Element, SemigroupError};

/// Largest `n` scanned exhaustively unless the caller raises the cap.
pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundingError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("witness {} is not feasible: pair {} has value {}, not {} {}", .0.witness, .0.pair, .0.value, .0.relation, .0.bound)]
    InfeasibleWitness(Box<Infeasibility>),
    #[error("theorem violation: {0}")]
    TheoremViolation(Box<ViolationReport>),
    #[error("n = {n} exceeds the exhaustive-scan cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// The first pair of a witness that misses the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasibility {
    pub witness: Matching,
    pub pair: String,
    pub value: Element,
    pub relation: Relation,
    pub bound: Element,
}

/// State dump for a bounding claim that failed under exact evaluation. This
/// only happens if a carrier breaks its laws or the engine has a defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    pub carrier: String,
    pub elements: Vec<String>,
    pub bound: String,
    pub direction: Direction,
    pub level: Option<usize>,
    pub matching: String,
    pub failed: String,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} failed (carrier {}, elements [{}], bound {}, direction {}, matching {}",
            self.failed,
            self.carrier,
            self.elements.join(", "),
            self.bound,
            self.direction,
            self.matching
        )?;
        if let Some(level) = self.level {
            write!(f, ", level {level}")?;
        }
        f.write_str(")")
    }
}

/// Comparison relation between two values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    LessEq,
    Greater,
    GreaterEq,
}

impl Relation {
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Less => ord == Ordering::Less,
            Relation::LessEq => ord != Ordering::Greater,
            Relation::Greater => ord == Ordering::Greater,
            Relation::GreaterEq => ord != Ordering::Less,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "<" => Relation::Less,
            "<=" => Relation::LessEq,
            ">" => Relation::Greater,
            ">=" => Relation::GreaterEq,
            _ => return None,
        })
    }

    pub fn mirrored(self) -> Self {
        match self {
            Relation::Less => Relation::Greater,
            Relation::LessEq => Relation::GreaterEq,
            Relation::Greater => Relation::Less,
            Relation::GreaterEq => Relation::LessEq,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Every pair value `< N`.
    UpperStrict,
    /// Every pair value `> N`.
    LowerStrict,
}

impl Direction {
    pub fn strict(self) -> Relation {
        match self {
            Direction::UpperStrict => Relation::Less,
            Direction::LowerStrict => Relation::Greater,
        }
    }

    pub fn weak(self) -> Relation {
        match self {
            Direction::UpperStrict => Relation::LessEq,
            Direction::LowerStrict => Relation::GreaterEq,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::UpperStrict => "upper",
            Direction::LowerStrict => "lower",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "upper" => Some(Direction::UpperStrict),
            "lower" => Some(Direction::LowerStrict),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sorted input, bound `N` and direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingInstance {
    input: SortedInput,
    bound: Element,
    direction: Direction,
}

impl BoundingInstance {
    pub fn new(
        input: SortedInput,
        bound: Element,
        direction: Direction,
    ) -> Result<Self, BoundingError> {
        if bound.carrier() != input.carrier() {
            return Err(SemigroupError::CarrierMismatch {
                left: input.carrier(),
                right: bound.carrier(),
            }
            .into());
        }
        Ok(BoundingInstance {
            input,
            bound,
            direction,
        })
    }

    pub fn input(&self) -> &SortedInput {
        &self.input
    }

    pub fn bound(&self) -> &Element {
        &self.bound
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn n(&self) -> usize {
        self.input.n()
    }

    fn satisfies(&self, value: &Element) -> bool {
        self.direction.strict().holds(cmp_same(value, &self.bound))
    }

    /// First pair of `m` whose value misses the bound.
    fn first_failure(&self, m: &Matching) -> Option<(Pair, Element)> {
        m.pairs().iter().find_map(|&p| {
            let value = self.input.pair_value(p);
            (!self.satisfies(&value)).then_some((p, value))
        })
    }

    fn dump(&self, level: Option<usize>, matching: &Matching, failed: String) -> ViolationReport {
        ViolationReport {
            carrier: self.input.carrier().to_string(),
            elements: self
                .input
                .elements()
                .iter()
                .map(ToString::to_string)
                .collect(),
            bound: self.bound.to_string(),
            direction: self.direction,
            level,
            matching: matching.to_string(),
            failed,
        }
    }
}

/// True iff every pair value of `m` satisfies the strict bound.
pub fn feasible(m: &Matching, inst: &BoundingInstance) -> Result<bool, BoundingError> {
    check_range(m, &inst.input)?;
    Ok(inst.first_failure(m).is_none())
}

fn require_feasible(m: &Matching, inst: &BoundingInstance) -> Result<(), BoundingError> {
    check_range(m, &inst.input)?;
    match inst.first_failure(m) {
        None => Ok(()),
        Some((pair, value)) => Err(BoundingError::InfeasibleWitness(Box::new(Infeasibility {
            witness: m.clone(),
            pair: format_pair(pair),
            value,
            relation: inst.direction.strict(),
            bound: inst.bound.clone(),
        }))),
    }
}

/// Checks the bounding statement for one feasible witness: the symmetric
/// matching must be feasible too.
///
/// Returns `Ok(true)` when it is. A symmetric matching that misses the bound
/// is reported as [`BoundingError::TheoremViolation`], never as `Ok(false)`.
pub fn theorem_check(inst: &BoundingInstance, witness: &Matching) -> Result<bool, BoundingError> {
    require_feasible(witness, inst)?;
    let symmetric = symmetric_matching(inst.n());
    match inst.first_failure(&symmetric) {
        None => Ok(true),
        Some((pair, value)) => Err(BoundingError::TheoremViolation(Box::new(inst.dump(
            None,
            &symmetric,
            format!(
                "symmetric pair {} = {value} {} {}",
                format_pair(pair),
                inst.direction.strict(),
                inst.bound
            ),
        )))),
    }
}

/// Right-hand side of a recorded inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Against {
    /// The instance bound `N`.
    Bound,
    /// The value of another pair.
    Pair(Pair),
}

impl fmt::Display for Against {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Against::Bound => f.write_str("N"),
            Against::Pair(p) => f.write_str(&format_pair(*p)),
        }
    }
}

/// `value(pair) relation against_value`, as recorded by the producer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub pair: Pair,
    pub value: Element,
    pub relation: Relation,
    pub against: Against,
    pub against_value: Element,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} {} {} = {}",
            format_pair(self.pair),
            self.value,
            self.relation,
            self.against,
            self.against_value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeStep {
    /// `r`; the step installs the pair `(r, 2n+1-r)`.
    pub level: usize,
    /// Partner of `r` before the step.
    pub ell: usize,
    /// Partner of `2n+1-r` before the step.
    pub ell_prime: usize,
    /// `[(r, ell), (ell_prime, 2n+1-r)]`
    pub removed: [Pair; 2],
    /// `[(r, 2n+1-r), (min(ell, ell_prime), max(ell, ell_prime))]`
    pub inserted: [Pair; 2],
    pub justifications: Vec<Justification>,
}

/// A feasible witness together with the exchange steps that carry it to the
/// symmetric matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub instance: BoundingInstance,
    pub witness: Matching,
    pub steps: Vec<ExchangeStep>,
    pub final_matching: Matching,
}

fn ordered(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

/// The removed pair that both inserted pairs are compared against: `(l', s)`
/// when bounding from above, `(r, l)` when bounding from below.
fn dominating_pair(direction: Direction, removed: [Pair; 2]) -> Pair {
    match direction {
        Direction::UpperStrict => removed[1],
        Direction::LowerStrict => removed[0],
    }
}

/// Runs the constructive proof on a feasible witness.
pub fn exchange_transform(
    witness: &Matching,
    inst: &BoundingInstance,
) -> Result<Certificate, BoundingError> {
    require_feasible(witness, inst)?;
    let n = inst.n();
    let input = &inst.input;
    let mut current = witness.clone();
    let mut steps = Vec::new();

    for r in 1..=n {
        let s = 2 * n + 1 - r;
        if current.contains((r, s)) {
            continue;
        }
        // Each index has exactly one partner, so l and l' are forced; both
        // lie strictly between r and s because the outer levels are settled.
        let ell = current.partner(r).expect("perfect matching");
        let ell_prime = current.partner(s).expect("perfect matching");
        let removed = [(r, ell), (ell_prime, s)];
        let inserted = [(r, s), ordered(ell, ell_prime)];
        let dominator = dominating_pair(inst.direction, removed);
        let dominator_value = input.pair_value(dominator);

        let mut justifications = Vec::with_capacity(4);
        for pair in inserted {
            let value = input.pair_value(pair);
            justifications.push(Justification {
                pair,
                value: value.clone(),
                relation: inst.direction.weak(),
                against: Against::Pair(dominator),
                against_value: dominator_value.clone(),
            });
            justifications.push(Justification {
                pair,
                value,
                relation: inst.direction.strict(),
                against: Against::Bound,
                against_value: inst.bound.clone(),
            });
        }
        if let Some(bad) = justifications
            .iter()
            .find(|j| !j.relation.holds(cmp_same(&j.value, &j.against_value)))
        {
            return Err(BoundingError::TheoremViolation(Box::new(inst.dump(
                Some(r),
                &current,
                format!("justification {bad}"),
            ))));
        }

        current = current
            .exchange(removed, inserted)
            .expect("removed pairs present, inserted pairs absent");
        if let Some((pair, value)) = inst.first_failure(&current) {
            return Err(BoundingError::TheoremViolation(Box::new(inst.dump(
                Some(r),
                &current,
                format!("intermediate pair {} = {value}", format_pair(pair)),
            ))));
        }
        steps.push(ExchangeStep {
            level: r,
            ell,
            ell_prime,
            removed,
            inserted,
            justifications,
        });
    }

    debug_assert!(current.is_symmetric());
    Ok(Certificate {
        instance: inst.clone(),
        witness: witness.clone(),
        steps,
        final_matching: current,
    })
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectReason {
    WitnessInfeasible,
    TooManySteps,
    LevelOrder,
    StepShape,
    PairAbsent,
    PairPresent,
    JustificationMismatch,
    JustificationFailed,
    IntermediateInfeasible,
    FinalMismatch,
    FinalNotSymmetric,
    CarrierMismatch,
}

impl RejectReason {
    pub fn describe(self) -> &'static str {
        match self {
            RejectReason::WitnessInfeasible => "witness infeasible",
            RejectReason::TooManySteps => "too many steps",
            RejectReason::LevelOrder => "level order",
            RejectReason::StepShape => "step shape",
            RejectReason::PairAbsent => "removed pair absent",
            RejectReason::PairPresent => "inserted pair already present",
            RejectReason::JustificationMismatch => "justification mismatch",
            RejectReason::JustificationFailed => "justification failed",
            RejectReason::IntermediateInfeasible => "intermediate infeasible",
            RejectReason::FinalMismatch => "final mismatch",
            RejectReason::FinalNotSymmetric => "final not symmetric",
            RejectReason::CarrierMismatch => "carrier mismatch",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason}: {detail}")]
pub struct Rejection {
    pub reason: RejectReason,
    pub detail: String,
}

fn reject(reason: RejectReason, detail: impl Into<String>) -> Rejection {
    Rejection {
        reason,
        detail: detail.into(),
    }
}

/// Re-checks a certificate from scratch. Every stored value is recomputed
/// with `combine` and every stored relation re-decided with `compare`; the
/// first failure is returned.
pub fn verify_certificate(cert: &Certificate) -> Result<(), Rejection> {
    let inst = &cert.instance;
    let input = inst.input();
    let n = input.n();
    let size = 2 * n;
    let strict = inst.direction().strict();
    let weak = inst.direction().weak();

    let holds = |value: &Element, relation: Relation, other: &Element| -> Result<bool, Rejection> {
        compare(value, other)
            .map(|ord| relation.holds(ord))
            .map_err(|e| reject(RejectReason::CarrierMismatch, e.to_string()))
    };
    let value_of = |(i, j): Pair| -> Result<Element, Rejection> {
        combine(input.get(i), input.get(j))
            .map_err(|e| reject(RejectReason::CarrierMismatch, e.to_string()))
    };
    let check_feasible = |m: &Matching, reason: RejectReason| -> Result<(), Rejection> {
        if 2 * m.n() != size {
            return Err(reject(reason, format!("{m} does not cover 1..={size}")));
        }
        for &p in m.pairs() {
            let value = value_of(p)?;
            if !holds(&value, strict, inst.bound())? {
                return Err(reject(
                    reason,
                    format!(
                        "{m}: {} = {value} is not {strict} {}",
                        format_pair(p),
                        inst.bound()
                    ),
                ));
            }
        }
        Ok(())
    };

    check_feasible(&cert.witness, RejectReason::WitnessInfeasible)?;
    if cert.steps.len() > n.saturating_sub(1) {
        return Err(reject(
            RejectReason::TooManySteps,
            format!("{} steps for n = {n}", cert.steps.len()),
        ));
    }

    let mut current = cert.witness.clone();
    let mut last_level = 0;
    for step in &cert.steps {
        let r = step.level;
        if r <= last_level || r > n {
            return Err(reject(
                RejectReason::LevelOrder,
                format!("level {r} after level {last_level} (n = {n})"),
            ));
        }
        last_level = r;
        let s = size + 1 - r;
        let (l, lp) = (step.ell, step.ell_prime);
        let inside = |k: usize| r < k && k < s;
        if !inside(l) || !inside(lp) || l == lp {
            return Err(reject(
                RejectReason::StepShape,
                format!("level {r}: ell {l}, ell' {lp} outside ({r},{s})"),
            ));
        }
        let removed = [(r, l), (lp, s)];
        let inserted = [(r, s), ordered(l, lp)];
        if step.removed != removed || step.inserted != inserted {
            return Err(reject(
                RejectReason::StepShape,
                format!("level {r}: pairs do not match ell = {l}, ell' = {lp}"),
            ));
        }
        if let Some(p) = removed.iter().find(|&&p| !current.contains(p)) {
            return Err(reject(
                RejectReason::PairAbsent,
                format!("level {r}: {} not in {current}", format_pair(*p)),
            ));
        }
        if let Some(p) = inserted.iter().find(|&&p| current.contains(p)) {
            return Err(reject(
                RejectReason::PairPresent,
                format!("level {r}: {} already in {current}", format_pair(*p)),
            ));
        }

        let dominator = dominating_pair(inst.direction(), removed);
        let expected: Vec<(Pair, Relation, Against)> = inserted
            .iter()
            .flat_map(|&p| {
                [
                    (p, weak, Against::Pair(dominator)),
                    (p, strict, Against::Bound),
                ]
            })
            .collect();
        if step.justifications.len() != expected.len() {
            return Err(reject(
                RejectReason::JustificationMismatch,
                format!(
                    "level {r}: {} justifications, expected {}",
                    step.justifications.len(),
                    expected.len()
                ),
            ));
        }
        for (j, &(pair, relation, against)) in step.justifications.iter().zip(&expected) {
            if (j.pair, j.relation, j.against) != (pair, relation, against) {
                return Err(reject(
                    RejectReason::JustificationMismatch,
                    format!(
                        "level {r}: recorded {j}, expected {} {relation} {against}",
                        format_pair(pair)
                    ),
                ));
            }
            let value = value_of(pair)?;
            let against_value = match against {
                Against::Bound => inst.bound().clone(),
                Against::Pair(q) => value_of(q)?,
            };
            if j.value != value || j.against_value != against_value {
                return Err(reject(
                    RejectReason::JustificationMismatch,
                    format!("level {r}: recorded {j}, recomputed {value} and {against_value}"),
                ));
            }
            if !holds(&value, relation, &against_value)? {
                return Err(reject(
                    RejectReason::JustificationFailed,
                    format!("level {r}: {j} is false"),
                ));
            }
        }

        current = current.exchange(removed, inserted).ok_or_else(|| {
            reject(
                RejectReason::StepShape,
                format!("level {r}: exchange failed"),
            )
        })?;
        check_feasible(&current, RejectReason::IntermediateInfeasible)?;
    }

    if current != cert.final_matching {
        return Err(reject(
            RejectReason::FinalMismatch,
            format!(
                "replay ends at {current}, certificate claims {}",
                cert.final_matching
            ),
        ));
    }
    if !cert.final_matching.is_symmetric() {
        return Err(reject(
            RejectReason::FinalNotSymmetric,
            format!("{} is not {}", cert.final_matching, symmetric_matching(n)),
        ));
    }
    Ok(())
}

/// Which extreme of the pair values an exhaustive scan optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Objective {
    /// Minimize the maximum pair value.
    MinMax,
    /// Maximize the minimum pair value.
    MaxMin,
}

impl Objective {
    fn improves(self, candidate: &Element, incumbent: &Element) -> bool {
        let ord = cmp_same(candidate, incumbent);
        match self {
            Objective::MinMax => ord == Ordering::Less,
            Objective::MaxMin => ord == Ordering::Greater,
        }
    }
}

fn check_cap(input: &SortedInput, cap: usize) -> Result<(), BoundingError> {
    if input.n() > cap {
        Err(BoundingError::CapExceeded { n: input.n(), cap })
    } else {
        Ok(())
    }
}

/// `a_i * a_j` for every `i < j`, indexed `[i - 1][j - 1]`.
struct PairTable(Vec<Vec<Option<Element>>>);

impl PairTable {
    fn new(input: &SortedInput) -> Self {
        let size = input.len();
        PairTable(
            (1..=size)
                .map(|i| {
                    (1..=size)
                        .map(|j| (i < j).then(|| input.pair_value((i, j))))
                        .collect()
                })
                .collect(),
        )
    }

    fn get(&self, (i, j): Pair) -> &Element {
        self.0[i - 1][j - 1].as_ref().expect("canonical pair")
    }

    /// The objective's extreme pair value of `m`.
    fn extreme(&self, m: &Matching, objective: Objective) -> &Element {
        let mut values = m.pairs().iter().map(|&p| self.get(p));
        let first = values.next().expect("n >= 1");
        values.fold(first, |acc, v| {
            let ord = cmp_same(v, acc);
            let replace = match objective {
                Objective::MinMax => ord == Ordering::Greater,
                Objective::MaxMin => ord == Ordering::Less,
            };
            if replace {
                v
            } else {
                acc
            }
        })
    }
}

fn scan_branch(
    table: &PairTable,
    n: usize,
    partner: usize,
    objective: Objective,
) -> Option<(Matching, Element)> {
    let mut best: Option<(Matching, &Element)> = None;
    for m in enumerate_branch(n, partner) {
        let value = table.extreme(&m, objective);
        if best
            .as_ref()
            .is_none_or(|(_, incumbent)| objective.improves(value, incumbent))
        {
            best = Some((m, value));
        }
    }
    best.map(|(m, v)| (m, v.clone()))
}

/// Scans every matching against a table of pair values computed once.
/// Branches (the partner of index 1) are searched in
/// parallel and merged in branch order keeping the earlier winner on ties, so
/// the result is the first optimum in enumeration order either way.
fn exhaustive(input: &SortedInput, objective: Objective, parallel: bool) -> (Matching, Element) {
    let table = PairTable::new(input);
    let n = input.n();
    let branches: Vec<usize> = (2..=input.len()).collect();
    let results: Vec<Option<(Matching, Element)>> = if parallel {
        branches
            .par_iter()
            .map(|&p| scan_branch(&table, n, p, objective))
            .collect()
    } else {
        branches
            .iter()
            .map(|&p| scan_branch(&table, n, p, objective))
            .collect()
    };
    results
        .into_iter()
        .flatten()
        .reduce(|best, next| {
            if objective.improves(&next.1, &best.1) {
                next
            } else {
                best
            }
        })
        .expect("at least one matching")
}

/// Brute-force matching minimizing the largest pair value.
pub fn minimax_matching(
    input: &SortedInput,
    cap: usize,
) -> Result<(Matching, Element), BoundingError> {
    check_cap(input, cap)?;
    Ok(exhaustive(input, Objective::MinMax, true))
}

/// Brute-force matching maximizing the smallest pair value.
pub fn maximin_matching(
    input: &SortedInput,
    cap: usize,
) -> Result<(Matching, Element), BoundingError> {
    check_cap(input, cap)?;
    Ok(exhaustive(input, Objective::MaxMin, true))
}

/// Single-threaded variants, kept for cross-checking the parallel scan.
pub fn minimax_matching_serial(
    input: &SortedInput,
    cap: usize,
) -> Result<(Matching, Element), BoundingError> {
    check_cap(input, cap)?;
    Ok(exhaustive(input, Objective::MinMax, false))
}

pub fn maximin_matching_serial(
    input: &SortedInput,
    cap: usize,
) -> Result<(Matching, Element), BoundingError> {
    check_cap(input, cap)?;
    Ok(exhaustive(input, Objective::MaxMin, false))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalityReport {
    pub symmetric: EvaluationRow,
    pub minimax: (Matching, Element),
    pub maximin: (Matching, Element),
    pub scanned: BigUint,
    pub passed: bool,
}

impl OptimalityReport {
    pub fn max_agrees(&self) -> bool {
        self.symmetric.max_value == self.minimax.1
    }

    pub fn min_agrees(&self) -> bool {
        self.symmetric.min_value == self.maximin.1
    }
}

/// Compares the symmetric matching's Max and Min with the brute-force
/// minimax and maximin values.
pub fn optimality_report(
    input: &SortedInput,
    cap: usize,
) -> Result<OptimalityReport, BoundingError> {
    check_cap(input, cap)?;
    let symmetric = evaluate(&symmetric_matching(input.n()), input)?;
    let minimax = exhaustive(input, Objective::MinMax, true);
    let maximin = exhaustive(input, Objective::MaxMin, true);
    let passed = symmetric.max_value == minimax.1 && symmetric.min_value == maximin.1;
    Ok(OptimalityReport {
        symmetric,
        minimax,
        maximin,
        scanned: count_matchings(input.n()),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{enumerate_matchings, sort_input};
    use crate::semigroup::Carrier;

    fn ints(vals: &[i64]) -> SortedInput {
        sort_input(vals.iter().map(|&v| Element::integer(v)).collect()).unwrap()
    }

    fn muls(vals: &[i64]) -> SortedInput {
        sort_input(
            vals.iter()
                .map(|&v| Element::ratio(Carrier::PositiveRationalMul, v, 1).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn m(text: &str) -> Matching {
        text.parse().unwrap()
    }

    fn upper(input: SortedInput, bound: i64) -> BoundingInstance {
        BoundingInstance::new(input, Element::integer(bound), Direction::UpperStrict).unwrap()
    }

    #[test]
    fn feasible_examples() {
        let inst = upper(ints(&[1, 2, 3, 4, 5, 6]), 8);
        assert!(feasible(&m("(1,6)(2,5)(3,4)"), &inst).unwrap());
        assert!(!feasible(&m("(1,2)(3,4)(5,6)"), &inst).unwrap());

        let input = ints(&[1, 2, 3, 4, 5, 6]);
        for w in enumerate_matchings(3) {
            let row = evaluate(&w, &input).unwrap();
            let at_min =
                BoundingInstance::new(input.clone(), row.min_value, Direction::LowerStrict)
                    .unwrap();
            assert!(!feasible(&w, &at_min).unwrap());
        }
        assert!(feasible(&m("(1,2)"), &inst).is_err());
    }

    #[test]
    fn bound_must_share_carrier() {
        let err = BoundingInstance::new(
            ints(&[1, 2]),
            Element::ratio(Carrier::RationalAdd, 1, 2).unwrap(),
            Direction::UpperStrict,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            BoundingError::Semigroup(SemigroupError::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn theorem_check_examples() {
        let inst = upper(ints(&[1, 3, 6, 8, 9, 11]), 18);
        assert!(theorem_check(&inst, &m("(1,2)(3,6)(4,5)")).unwrap());

        let inst = BoundingInstance::new(
            muls(&[2, 7, 11, 14, 16, 17]),
            Element::ratio(Carrier::PositiveRationalMul, 155, 1).unwrap(),
            Direction::UpperStrict,
        )
        .unwrap();
        assert!(theorem_check(&inst, &symmetric_matching(3)).unwrap());

        let inst = upper(ints(&[4, 9]), 14);
        assert!(theorem_check(&inst, &m("(1,2)")).unwrap());

        let inst = upper(ints(&[1, 2, 3, 4, 5, 6]), 8);
        assert!(matches!(
            theorem_check(&inst, &m("(1,2)(3,4)(5,6)")),
            Err(BoundingError::InfeasibleWitness(_))
        ));
    }

    #[test]
    fn transform_hand_executed_example() {
        let inst = upper(ints(&[1, 2, 3, 4, 5, 6]), 10);
        let cert = exchange_transform(&m("(1,4)(2,6)(3,5)"), &inst).unwrap();
        assert_eq!(cert.steps.len(), 2);

        let first = &cert.steps[0];
        assert_eq!((first.level, first.ell, first.ell_prime), (1, 4, 2));
        assert_eq!(first.removed, [(1, 4), (2, 6)]);
        assert_eq!(first.inserted, [(1, 6), (2, 4)]);
        let to_bound: Vec<String> = first
            .justifications
            .iter()
            .filter(|j| j.against == Against::Bound)
            .map(ToString::to_string)
            .collect();
        assert_eq!(to_bound, ["(1,6) = 7 < N = 10", "(2,4) = 6 < N = 10"]);

        let second = &cert.steps[1];
        assert_eq!((second.level, second.ell, second.ell_prime), (2, 4, 3));
        assert_eq!(second.removed, [(2, 4), (3, 5)]);
        assert_eq!(second.inserted, [(2, 5), (3, 4)]);
        let j = &second.justifications[3];
        assert_eq!((j.pair, j.value.clone()), ((3, 4), Element::integer(7)));

        assert_eq!(cert.final_matching, symmetric_matching(3));
        assert_eq!(verify_certificate(&cert), Ok(()));
    }

    #[test]
    fn transform_of_symmetric_is_empty() {
        let inst = upper(ints(&[1, 2, 3, 4, 5, 6]), 8);
        let cert = exchange_transform(&symmetric_matching(3), &inst).unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(verify_certificate(&cert), Ok(()));
    }

    #[test]
    fn transform_rejects_infeasible_witness() {
        let inst = upper(ints(&[1, 2, 3, 4, 5, 6]), 8);
        assert!(matches!(
            exchange_transform(&m("(1,2)(3,4)(5,6)"), &inst),
            Err(BoundingError::InfeasibleWitness(_))
        ));
    }

    #[test]
    fn lower_direction_mirrors_upper() {
        let input = ints(&[1, 2, 3, 4, 5, 6]);
        let witness = m("(1,4)(2,6)(3,5)");
        let up = exchange_transform(&witness, &upper(input.clone(), 10)).unwrap();
        let low = exchange_transform(
            &witness,
            &BoundingInstance::new(input, Element::integer(4), Direction::LowerStrict).unwrap(),
        )
        .unwrap();
        assert_eq!(up.steps.len(), low.steps.len());
        for (a, b) in up.steps.iter().zip(&low.steps) {
            assert_eq!((a.level, a.ell, a.ell_prime), (b.level, b.ell, b.ell_prime));
            assert_eq!((a.removed, a.inserted), (b.removed, b.inserted));
            for (x, y) in a.justifications.iter().zip(&b.justifications) {
                assert_eq!(x.relation.mirrored(), y.relation);
                assert_eq!(x.pair, y.pair);
            }
        }
        assert_eq!(verify_certificate(&low), Ok(()));
    }

    #[test]
    fn tampered_justification_value_is_rejected() {
        let inst = upper(ints(&[1, 2, 3, 4, 5, 6]), 10);
        let mut cert = exchange_transform(&m("(1,4)(2,6)(3,5)"), &inst).unwrap();
        cert.steps[0].justifications[1].value = Element::integer(8);
        let err = verify_certificate(&cert).unwrap_err();
        assert_eq!(err.reason, RejectReason::JustificationMismatch);
        assert_eq!(err.reason.to_string(), "justification mismatch");
    }

    #[test]
    fn non_symmetric_final_is_rejected() {
        let inst = upper(ints(&[1, 2, 3, 4, 5, 6]), 12);
        let mut cert = exchange_transform(&m("(1,4)(2,6)(3,5)"), &inst).unwrap();
        cert.final_matching = m("(1,6)(2,4)(3,5)");
        assert_eq!(
            verify_certificate(&cert).unwrap_err().reason,
            RejectReason::FinalMismatch
        );

        // An empty certificate claiming a non-symmetric matching as final.
        let mut cert = exchange_transform(&symmetric_matching(3), &inst).unwrap();
        cert.witness = m("(1,2)(3,4)(5,6)");
        cert.final_matching = m("(1,2)(3,4)(5,6)");
        assert_eq!(
            verify_certificate(&cert).unwrap_err().reason,
            RejectReason::FinalNotSymmetric
        );
    }

    #[test]
    fn oracle_examples() {
        let (_, v) = minimax_matching(&ints(&[1, 2, 3, 4, 5, 6]), DEFAULT_CAP).unwrap();
        assert_eq!(v, Element::integer(7));
        let (_, v) = minimax_matching(&muls(&[1, 3, 6, 8, 9, 11]), DEFAULT_CAP).unwrap();
        assert_eq!(
            v,
            Element::ratio(Carrier::PositiveRationalMul, 48, 1).unwrap()
        );
        let (w, v) = minimax_matching(&ints(&[3, 5]), DEFAULT_CAP).unwrap();
        assert_eq!((w, v), (m("(1,2)"), Element::integer(8)));

        let (w, v) = maximin_matching(&ints(&[2, 7, 11, 14, 16, 17]), DEFAULT_CAP).unwrap();
        assert_eq!(v, Element::integer(19));
        // Rows 14 and 15 tie at 19; the earlier row wins.
        assert_eq!(w, m("(1,6)(2,4)(3,5)"));
        let (_, v) = maximin_matching(&muls(&[1, 2, 3, 4, 5, 6]), DEFAULT_CAP).unwrap();
        assert_eq!(
            v,
            Element::ratio(Carrier::PositiveRationalMul, 6, 1).unwrap()
        );
        let (_, v) = maximin_matching(&muls(&[3, 5]), DEFAULT_CAP).unwrap();
        assert_eq!(
            v,
            Element::ratio(Carrier::PositiveRationalMul, 15, 1).unwrap()
        );
    }

    #[test]
    fn parallel_and_serial_scans_agree() {
        let input = ints(&[-3, 0, 0, 2, 2, 5, 7, 7, 9, 12]);
        assert_eq!(
            minimax_matching(&input, DEFAULT_CAP).unwrap(),
            minimax_matching_serial(&input, DEFAULT_CAP).unwrap()
        );
        assert_eq!(
            maximin_matching(&input, DEFAULT_CAP).unwrap(),
            maximin_matching_serial(&input, DEFAULT_CAP).unwrap()
        );
    }

    #[test]
    fn cap_is_enforced() {
        let input = ints(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(
            minimax_matching(&input, 2).unwrap_err(),
            BoundingError::CapExceeded { n: 3, cap: 2 }
        );
        assert!(optimality_report(&input, 2).is_err());
    }

    #[test]
    fn optimality_report_examples() {
        let report = optimality_report(&ints(&[1, 3, 6, 8, 9, 11]), DEFAULT_CAP).unwrap();
        assert!(report.passed);
        assert_eq!(report.symmetric.max_value, Element::integer(14));
        assert_eq!(report.symmetric.min_value, Element::integer(12));
        assert_eq!(report.scanned, BigUint::from(15u32));

        let report = optimality_report(&muls(&[2, 7, 11, 14, 16, 17]), DEFAULT_CAP).unwrap();
        assert!(report.passed);
        assert_eq!(report.minimax.1.to_string(), "154");
        assert_eq!(report.maximin.1.to_string(), "34");

        let report = optimality_report(&ints(&[5, 5, 5, 5, 5, 5]), DEFAULT_CAP).unwrap();
        assert!(report.passed);
        assert_eq!(report.minimax.1, report.maximin.1);
    }
}
