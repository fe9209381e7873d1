//! Totally ordered commutative semigroups.
//!
//! A carrier is a set with a commutative, associative operation `*` and a
//! total order `<=` satisfying the monotonicity law
//!
//! ```text
//! a <= b  and  c <= d   implies   a * c <= b * d
//! ```
//!
//! Every built-in carrier works over exact values. Integers and rationals are
//! arbitrary precision, vectors hold arbitrary-precision naturals, and nothing
//! in this module rounds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: Carrier, right: Carrier },
    #[error("value {value} is outside the domain of {carrier}: {reason}")]
    Domain {
        carrier: Carrier,
        value: String,
        reason: &'static str,
    },
    #[error("cannot parse {literal:?} as an element of `{carrier}`: {reason}")]
    Parse {
        carrier: Carrier,
        literal: String,
        reason: String,
    },
    #[error("unknown carrier {0:?} (expected add, radd, mul or lexadd)")]
    UnknownCarrier(String),
    #[error("sample {index}: expected alpha <= beta and gamma <= delta")]
    UnorderedSample { index: usize },
}

/// A concrete totally ordered commutative semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    /// Integers (negatives allowed) under addition.
    IntegerAdd,
    /// Rationals (negatives allowed) under addition.
    RationalAdd,
    /// Strictly positive rationals under multiplication.
    PositiveRationalMul,
    /// Vectors of `dim` naturals under componentwise addition, ordered
    /// lexicographically from the first component.
    NaturalVectorLexAdd { dim: usize },
}

impl Carrier {
    /// Resolves a CLI operator name (`add`, `radd`, `mul`, `lexadd`).
    pub fn from_op(op: &str, dim: Option<usize>) -> Result<Self, SemigroupError> {
        match op {
            "add" => Ok(Carrier::IntegerAdd),
            "radd" => Ok(Carrier::RationalAdd),
            "mul" => Ok(Carrier::PositiveRationalMul),
            "lexadd" => match dim {
                Some(dim) if dim > 0 => Ok(Carrier::NaturalVectorLexAdd { dim }),
                _ => Err(SemigroupError::UnknownCarrier(
                    "lexadd requires a positive dimension".into(),
                )),
            },
            other => Err(SemigroupError::UnknownCarrier(other.to_string())),
        }
    }

    pub fn op_name(&self) -> &'static str {
        match self {
            Carrier::IntegerAdd => "add",
            Carrier::RationalAdd => "radd",
            Carrier::PositiveRationalMul => "mul",
            Carrier::NaturalVectorLexAdd { .. } => "lexadd",
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Carrier::NaturalVectorLexAdd { dim } => Some(*dim),
            _ => None,
        }
    }

    /// Infix symbol used when rendering `a * b`.
    pub fn symbol(&self) -> &'static str {
        match self {
            Carrier::PositiveRationalMul => "·",
            _ => "+",
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, Carrier::PositiveRationalMul)
    }

    pub fn parse_element(&self, literal: &str) -> Result<Element, SemigroupError> {
        Element::parse(*self, literal)
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::NaturalVectorLexAdd { dim } => write!(f, "lexadd:{dim}"),
            other => f.write_str(other.op_name()),
        }
    }
}

impl FromStr for Carrier {
    type Err = SemigroupError;

    /// Parses the `Display` form: `add`, `radd`, `mul` or `lexadd:K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some(("lexadd", dim)) => {
                let dim = dim
                    .parse::<usize>()
                    .map_err(|_| SemigroupError::UnknownCarrier(s.to_string()))?;
                Carrier::from_op("lexadd", Some(dim))
            }
            Some(_) => Err(SemigroupError::UnknownCarrier(s.to_string())),
            None if s == "lexadd" => Err(SemigroupError::UnknownCarrier(s.to_string())),
            None => Carrier::from_op(s, None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Integer(BigInt),
    Rational(BigRational),
    Vector(Vec<BigUint>),
}

/// An exact value tagged with the carrier it lives in.
///
/// Construction checks the carrier's domain, so every `Element` in
/// circulation is valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    carrier: Carrier,
    value: Value,
}

impl Element {
    pub fn integer(value: impl Into<BigInt>) -> Self {
        Element {
            carrier: Carrier::IntegerAdd,
            value: Value::Integer(value.into()),
        }
    }

    /// Builds a rational element for `RationalAdd` or `PositiveRationalMul`.
    pub fn rational(carrier: Carrier, value: BigRational) -> Result<Self, SemigroupError> {
        match carrier {
            Carrier::RationalAdd => {}
            Carrier::PositiveRationalMul => {
                if !value.is_positive() {
                    return Err(SemigroupError::Domain {
                        carrier,
                        value: format_rational(&value),
                        reason: "multiplicative carrier requires a strictly positive value",
                    });
                }
            }
            _ => {
                return Err(SemigroupError::Domain {
                    carrier,
                    value: format_rational(&value),
                    reason: "carrier does not hold rationals",
                })
            }
        }
        Ok(Element {
            carrier,
            value: Value::Rational(value),
        })
    }

    /// Shorthand for the rational `numer/denom`.
    pub fn ratio(
        carrier: Carrier,
        numer: impl Into<BigInt>,
        denom: impl Into<BigInt>,
    ) -> Result<Self, SemigroupError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(SemigroupError::Domain {
                carrier,
                value: "x/0".into(),
                reason: "zero denominator",
            });
        }
        Element::rational(carrier, BigRational::new(numer.into(), denom))
    }

    pub fn vector<I, T>(dim: usize, components: I) -> Result<Self, SemigroupError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let carrier = Carrier::NaturalVectorLexAdd { dim };
        let components: Vec<BigUint> = components.into_iter().map(Into::into).collect();
        if dim == 0 || components.len() != dim {
            return Err(SemigroupError::Domain {
                carrier,
                value: format_vector(&components),
                reason: "vector length differs from the carrier dimension",
            });
        }
        Ok(Element {
            carrier,
            value: Value::Vector(components),
        })
    }

    /// Parses the textual form for `carrier`: optional-sign decimal for
    /// integers, `p/q` (or a bare integer) for rationals, `(n1,...,nk)` for
    /// vectors. Rationals are reduced to lowest terms.
    pub fn parse(carrier: Carrier, literal: &str) -> Result<Self, SemigroupError> {
        let text = literal.trim();
        let fail = |reason: &str| SemigroupError::Parse {
            carrier,
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        match carrier {
            Carrier::IntegerAdd => parse_bigint(text)
                .map(Element::integer)
                .ok_or_else(|| fail("expected an optionally signed decimal integer")),
            Carrier::RationalAdd | Carrier::PositiveRationalMul => {
                let value = match text.split_once('/') {
                    Some((p, q)) => {
                        let p = parse_bigint(p.trim()).ok_or_else(|| fail("bad numerator"))?;
                        let q = parse_bigint(q.trim()).ok_or_else(|| fail("bad denominator"))?;
                        if !q.is_positive() {
                            return Err(fail("denominator must be positive"));
                        }
                        BigRational::new(p, q)
                    }
                    None => BigRational::from_integer(
                        parse_bigint(text).ok_or_else(|| fail("expected p/q or an integer"))?,
                    ),
                };
                Element::rational(carrier, value)
            }
            Carrier::NaturalVectorLexAdd { dim } => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| fail("expected (n1,...,nk)"))?;
                let components = inner
                    .split(',')
                    .map(|c| {
                        let c = c.trim();
                        if c.is_empty() || !c.bytes().all(|b| b.is_ascii_digit()) {
                            return None;
                        }
                        c.parse::<BigUint>().ok()
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| fail("components must be non-negative decimal integers"))?;
                if components.len() != dim {
                    return Err(fail(&format!(
                        "expected {dim} components, found {}",
                        components.len()
                    )));
                }
                Element::vector(dim, components)
            }
        }
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// The scalar value as a rational, when the carrier is scalar.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Integer(i) => Some(BigRational::from_integer(i.clone())),
            Value::Rational(r) => Some(r.clone()),
            Value::Vector(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Integer(i) => Some(i),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<&[BigUint]> {
        match &self.value {
            Value::Vector(v) => Some(v),
            _ => None,
        }
    }

    fn same_carrier(&self, other: &Element) -> Result<(), SemigroupError> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(SemigroupError::CarrierMismatch {
                left: self.carrier,
                right: other.carrier,
            })
        }
    }
}

fn parse_bigint(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_vector(v: &[BigUint]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Integer(i) => write!(f, "{i}"),
            Value::Rational(r) => f.write_str(&format_rational(r)),
            Value::Vector(v) => f.write_str(&format_vector(v)),
        }
    }
}

/// `a * b` in the shared carrier.
pub fn combine(a: &Element, b: &Element) -> Result<Element, SemigroupError> {
    a.same_carrier(b)?;
    let value = match (&a.value, &b.value) {
        (Value::Integer(x), Value::Integer(y)) => Value::Integer(x + y),
        (Value::Rational(x), Value::Rational(y)) => match a.carrier {
            Carrier::PositiveRationalMul => Value::Rational(x * y),
            _ => Value::Rational(x + y),
        },
        (Value::Vector(x), Value::Vector(y)) => {
            if x.len() != y.len() {
                return Err(SemigroupError::Domain {
                    carrier: a.carrier,
                    value: format_vector(y),
                    reason: "mixed vector dimensions",
                });
            }
            Value::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
        }
        // Construction ties each value variant to exactly one carrier kind.
        _ => unreachable!("value variant does not match carrier {}", a.carrier),
    };
    Ok(Element {
        carrier: a.carrier,
        value,
    })
}

/// Total order of the shared carrier; vectors compare lexicographically.
pub fn compare(a: &Element, b: &Element) -> Result<Ordering, SemigroupError> {
    a.same_carrier(b)?;
    Ok(match (&a.value, &b.value) {
        (Value::Integer(x), Value::Integer(y)) => x.cmp(y),
        (Value::Rational(x), Value::Rational(y)) => x.cmp(y),
        // Vec's Ord is lexicographic from the first component.
        (Value::Vector(x), Value::Vector(y)) => x.cmp(y),
        _ => unreachable!("value variant does not match carrier {}", a.carrier),
    })
}

/// Orders elements already known to share a carrier.
pub(crate) fn cmp_same(a: &Element, b: &Element) -> Ordering {
    compare(a, b).expect("elements share a carrier")
}

/// One sample `(alpha, beta, gamma, delta)` for the monotonicity law, with
/// `alpha <= beta` and `gamma <= delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadruple {
    pub alpha: Element,
    pub beta: Element,
    pub gamma: Element,
    pub delta: Element,
}

impl Quadruple {
    pub fn new(alpha: Element, beta: Element, gamma: Element, delta: Element) -> Self {
        Quadruple {
            alpha,
            beta,
            gamma,
            delta,
        }
    }
}

/// A quadruple for which `alpha * gamma <= beta * delta` failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityViolation {
    pub index: usize,
    pub quadruple: Quadruple,
    pub lhs: Element,
    pub rhs: Element,
}

/// Returns every sample that breaks `alpha * gamma <= beta * delta`.
pub fn check_monotonicity_law(
    carrier: Carrier,
    samples: &[Quadruple],
) -> Result<Vec<MonotonicityViolation>, SemigroupError> {
    let mut violations = Vec::new();
    for (index, q) in samples.iter().enumerate() {
        for e in [&q.alpha, &q.beta, &q.gamma, &q.delta] {
            if e.carrier != carrier {
                return Err(SemigroupError::CarrierMismatch {
                    left: carrier,
                    right: e.carrier,
                });
            }
        }
        if compare(&q.alpha, &q.beta)? == Ordering::Greater
            || compare(&q.gamma, &q.delta)? == Ordering::Greater
        {
            return Err(SemigroupError::UnorderedSample { index });
        }
        let lhs = combine(&q.alpha, &q.gamma)?;
        let rhs = combine(&q.beta, &q.delta)?;
        if compare(&lhs, &rhs)? == Ordering::Greater {
            violations.push(MonotonicityViolation {
                index,
                quadruple: q.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Element {
        Element::integer(v)
    }

    fn mul(p: i64, q: i64) -> Element {
        Element::ratio(Carrier::PositiveRationalMul, p, q).unwrap()
    }

    fn vec2(a: u32, b: u32) -> Element {
        Element::vector(2, [a, b]).unwrap()
    }

    #[test]
    fn combine_examples() {
        assert_eq!(combine(&int(1), &int(6)).unwrap(), int(7));
        assert_eq!(combine(&mul(11, 1), &mul(14, 1)).unwrap(), mul(154, 1));
        assert_eq!(combine(&vec2(0, 0), &vec2(3, 5)).unwrap(), vec2(3, 5));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&int(3), &int(7)).unwrap(), Ordering::Less);
        assert_eq!(compare(&vec2(1, 9), &vec2(2, 0)).unwrap(), Ordering::Less);
        assert_eq!(compare(&mul(1, 2), &mul(2, 4)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn mismatched_carriers_are_rejected() {
        let err = combine(&int(1), &mul(1, 1)).unwrap_err();
        assert!(matches!(err, SemigroupError::CarrierMismatch { .. }));
        assert!(compare(&vec2(1, 1), &Element::vector(3, [1u32, 1, 1]).unwrap()).is_err());
    }

    #[test]
    fn multiplicative_domain_excludes_non_positive() {
        assert!(Element::ratio(Carrier::PositiveRationalMul, 0, 1).is_err());
        assert!(Element::ratio(Carrier::PositiveRationalMul, -3, 2).is_err());
        assert!(Element::parse(Carrier::PositiveRationalMul, "-1/2").is_err());
        assert!(Element::ratio(Carrier::RationalAdd, -3, 2).is_ok());
    }

    #[test]
    fn vector_dimension_is_enforced() {
        assert!(Element::vector(2, [1u32, 2, 3]).is_err());
        assert!(Element::vector(0, Vec::<u32>::new()).is_err());
        assert!(Element::parse(Carrier::NaturalVectorLexAdd { dim: 2 }, "(1,2,3)").is_err());
        assert!(Element::parse(Carrier::NaturalVectorLexAdd { dim: 2 }, "(1,-2)").is_err());
    }

    #[test]
    fn textual_forms() {
        let r = Element::parse(Carrier::RationalAdd, "6/4").unwrap();
        assert_eq!(r.to_string(), "3/2");
        assert_eq!(
            Element::parse(Carrier::RationalAdd, "-3/1")
                .unwrap()
                .to_string(),
            "-3"
        );
        assert!(Element::parse(Carrier::RationalAdd, "1/0").is_err());
        assert!(Element::parse(Carrier::RationalAdd, "1/-2").is_err());
        assert_eq!(Element::parse(Carrier::IntegerAdd, "+12").unwrap(), int(12));
        assert!(Element::parse(Carrier::IntegerAdd, "1/2").is_err());
        assert!(Element::parse(Carrier::IntegerAdd, "").is_err());
        let v = Element::parse(Carrier::NaturalVectorLexAdd { dim: 3 }, "( 1, 0 ,22)").unwrap();
        assert_eq!(v.to_string(), "(1,0,22)");
    }

    #[test]
    fn carrier_names_round_trip() {
        for c in [
            Carrier::IntegerAdd,
            Carrier::RationalAdd,
            Carrier::PositiveRationalMul,
            Carrier::NaturalVectorLexAdd { dim: 3 },
        ] {
            assert_eq!(c.to_string().parse::<Carrier>().unwrap(), c);
        }
        assert!("lexadd".parse::<Carrier>().is_err());
        assert!("lexadd:0".parse::<Carrier>().is_err());
        assert!("sub".parse::<Carrier>().is_err());
    }

    #[test]
    fn monotonicity_check_accepts_valid_and_rejects_unordered() {
        let q = Quadruple::new(int(1), int(2), int(3), int(4));
        assert!(check_monotonicity_law(Carrier::IntegerAdd, &[q])
            .unwrap()
            .is_empty());
        let bad = Quadruple::new(int(2), int(1), int(3), int(4));
        assert_eq!(
            check_monotonicity_law(Carrier::IntegerAdd, &[bad]).unwrap_err(),
            SemigroupError::UnorderedSample { index: 0 }
        );
        let mixed = Quadruple::new(int(1), int(2), mul(1, 1), mul(2, 1));
        assert!(check_monotonicity_law(Carrier::IntegerAdd, &[mixed]).is_err());
    }
}
