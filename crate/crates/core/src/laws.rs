//! Randomized sampling of the carrier laws.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::semigroup::{
    check_monotonicity_law, cmp_same, combine, Carrier, Element, MonotonicityViolation, Quadruple,
    SemigroupError,
};

/// Draws a small element of `carrier`. Values are kept in a narrow range so
/// that ties and equal pair values show up often.
pub fn sample_element<R: Rng + ?Sized>(carrier: Carrier, rng: &mut R) -> Element {
    match carrier {
        Carrier::IntegerAdd => Element::integer(rng.gen_range(-40i64..=40)),
        Carrier::RationalAdd => {
            let r = BigRational::new(
                BigInt::from(rng.gen_range(-40i64..=40)),
                BigInt::from(rng.gen_range(1i64..=8)),
            );
            Element::rational(carrier, r).expect("any rational is in the additive domain")
        }
        Carrier::PositiveRationalMul => {
            let r = BigRational::new(
                BigInt::from(rng.gen_range(1i64..=30)),
                BigInt::from(rng.gen_range(1i64..=6)),
            );
            Element::rational(carrier, r).expect("positive by construction")
        }
        Carrier::NaturalVectorLexAdd { dim } => {
            let components: Vec<BigUint> = (0..dim)
                .map(|_| BigUint::from(rng.gen_range(0u32..=4)))
                .collect();
            Element::vector(dim, components).expect("dimension matches")
        }
    }
}

fn ordered_pair<R: Rng + ?Sized>(carrier: Carrier, rng: &mut R) -> (Element, Element) {
    let a = sample_element(carrier, rng);
    let b = sample_element(carrier, rng);
    if cmp_same(&a, &b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    }
}

/// Draws `count` quadruples with `alpha <= beta` and `gamma <= delta`.
pub fn sample_quadruples<R: Rng + ?Sized>(
    carrier: Carrier,
    count: usize,
    rng: &mut R,
) -> Vec<Quadruple> {
    (0..count)
        .map(|_| {
            let (alpha, beta) = ordered_pair(carrier, rng);
            let (gamma, delta) = ordered_pair(carrier, rng);
            Quadruple::new(alpha, beta, gamma, delta)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub carrier: String,
    pub samples: usize,
    pub seed: u64,
    pub commutativity_violations: usize,
    pub associativity_violations: usize,
    pub monotonicity_violations: usize,
    pub total_order_violations: usize,
    /// Up to ten rendered counterexamples.
    pub examples: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.commutativity_violations == 0
            && self.associativity_violations == 0
            && self.monotonicity_violations == 0
            && self.total_order_violations == 0
    }
}

fn antisymmetric(a: &Element, b: &Element) -> bool {
    cmp_same(a, b) == cmp_same(b, a).reverse()
}

fn transitive(a: &Element, b: &Element, c: &Element) -> bool {
    let ab = cmp_same(a, b);
    let bc = cmp_same(b, c);
    let ac = cmp_same(a, c);
    match (ab, bc) {
        (Ordering::Greater, Ordering::Greater) => ac == Ordering::Greater,
        (Ordering::Less, Ordering::Less) => ac == Ordering::Less,
        (Ordering::Equal, Ordering::Equal) => ac == Ordering::Equal,
        (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
            ac != Ordering::Less
        }
        (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => {
            ac != Ordering::Greater
        }
        _ => true,
    }
}

/// Samples `samples` quadruples with a fixed seed and checks commutativity,
/// associativity, the total order and the monotonicity law on each.
pub fn check_laws(
    carrier: Carrier,
    samples: usize,
    seed: u64,
) -> Result<LawReport, SemigroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quads = sample_quadruples(carrier, samples, &mut rng);

    let mut report = LawReport {
        carrier: carrier.to_string(),
        samples,
        seed,
        commutativity_violations: 0,
        associativity_violations: 0,
        monotonicity_violations: 0,
        total_order_violations: 0,
        examples: Vec::new(),
    };
    let note = |report: &mut LawReport, msg: String| {
        if report.examples.len() < 10 {
            report.examples.push(msg);
        }
    };

    for q in &quads {
        let (a, b, c) = (&q.alpha, &q.gamma, &q.delta);
        if combine(a, b)? != combine(b, a)? {
            report.commutativity_violations += 1;
            note(&mut report, format!("commutativity: {a}, {b}"));
        }
        if combine(&combine(a, b)?, c)? != combine(a, &combine(b, c)?)? {
            report.associativity_violations += 1;
            note(&mut report, format!("associativity: {a}, {b}, {c}"));
        }
        let reflexive = cmp_same(a, a) == Ordering::Equal;
        if !reflexive || !antisymmetric(a, b) || !transitive(a, b, c) || !transitive(c, b, a) {
            report.total_order_violations += 1;
            note(&mut report, format!("total order: {a}, {b}, {c}"));
        }
    }

    let violations: Vec<MonotonicityViolation> = check_monotonicity_law(carrier, &quads)?;
    report.monotonicity_violations = violations.len();
    for v in violations.iter().take(10) {
        note(
            &mut report,
            format!(
                "monotonicity: sample {} gives {} > {}",
                v.index, v.lhs, v.rhs
            ),
        );
    }
    Ok(report)
}
