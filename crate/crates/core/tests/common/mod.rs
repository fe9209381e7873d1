#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use pairbound::laws::sample_element;
use pairbound::matching::Pair;
use pairbound::{combine, compare, sort_input, Carrier, Element, Matching, SortedInput};
use rand::Rng;

/// One of the worked tables: six elements, fifteen rows of pair values in
/// enumeration order, and the printed Max and Min columns.
pub struct WorkedTable {
    pub name: &'static str,
    pub op: &'static str,
    pub values: [i64; 6],
    pub rows: [[i64; 3]; 15],
    pub max: [i64; 15],
    pub min: [i64; 15],
}

#[rustfmt::skip]
pub const WORKED_TABLES: [WorkedTable; 6] = [
    WorkedTable {
        name: "add_1_2_3_4_5_6",
        op: "add",
        values: [1, 2, 3, 4, 5, 6],
        rows: [
            [3, 7, 11], [3, 8, 10], [3, 9, 9], [4, 6, 11], [4, 7, 10],
            [4, 8, 9], [5, 5, 11], [5, 7, 9], [5, 8, 8], [6, 5, 10],
            [6, 6, 9], [6, 8, 7], [7, 5, 9], [7, 6, 8], [7, 7, 7],
        ],
        max: [11, 10, 9, 11, 10, 9, 11, 9, 8, 10, 9, 8, 9, 8, 7],
        min: [3, 3, 3, 4, 4, 4, 5, 5, 5, 5, 6, 6, 5, 6, 7],
    },
    WorkedTable {
        name: "mul_1_2_3_4_5_6",
        op: "mul",
        values: [1, 2, 3, 4, 5, 6],
        rows: [
            [2, 12, 30], [2, 15, 24], [2, 18, 20], [3, 8, 30], [3, 10, 24],
            [3, 12, 20], [4, 6, 30], [4, 10, 18], [4, 12, 15], [5, 6, 24],
            [5, 8, 18], [5, 12, 12], [6, 6, 20], [6, 8, 15], [6, 10, 12],
        ],
        max: [30, 24, 20, 30, 24, 20, 30, 18, 15, 24, 18, 12, 20, 15, 12],
        min: [2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6],
    },
    WorkedTable {
        name: "add_1_3_6_8_9_11",
        op: "add",
        values: [1, 3, 6, 8, 9, 11],
        rows: [
            [4, 14, 20], [4, 15, 19], [4, 17, 17], [7, 11, 20], [7, 12, 19],
            [7, 14, 17], [9, 9, 20], [9, 12, 17], [9, 14, 15], [10, 9, 19],
            [10, 11, 17], [10, 14, 14], [12, 9, 17], [12, 11, 15], [12, 12, 14],
        ],
        max: [20, 19, 17, 20, 19, 17, 20, 17, 15, 19, 17, 14, 17, 15, 14],
        min: [4, 4, 4, 7, 7, 7, 9, 9, 9, 9, 10, 10, 9, 11, 12],
    },
    WorkedTable {
        name: "mul_1_3_6_8_9_11",
        op: "mul",
        values: [1, 3, 6, 8, 9, 11],
        rows: [
            [3, 48, 99], [3, 54, 88], [3, 66, 72], [6, 24, 99], [6, 27, 88],
            [6, 33, 72], [8, 18, 99], [8, 27, 66], [8, 33, 54], [9, 18, 88],
            [9, 24, 66], [9, 33, 48], [11, 18, 72], [11, 24, 54], [11, 27, 48],
        ],
        max: [99, 88, 72, 99, 88, 72, 99, 66, 54, 88, 66, 48, 72, 54, 48],
        min: [3, 3, 3, 6, 6, 6, 8, 8, 8, 9, 9, 9, 11, 11, 11],
    },
    WorkedTable {
        name: "add_2_7_11_14_16_17",
        op: "add",
        values: [2, 7, 11, 14, 16, 17],
        rows: [
            [9, 25, 33], [9, 27, 31], [9, 28, 30], [13, 21, 33], [13, 23, 31],
            [13, 24, 30], [16, 18, 33], [16, 23, 28], [16, 24, 27], [18, 18, 31],
            [18, 21, 28], [18, 24, 25], [19, 18, 30], [19, 21, 27], [19, 23, 25],
        ],
        max: [33, 31, 30, 33, 31, 30, 33, 28, 27, 31, 28, 25, 30, 27, 25],
        min: [9, 9, 9, 13, 13, 13, 16, 16, 16, 18, 18, 18, 18, 19, 19],
    },
    WorkedTable {
        name: "mul_2_7_11_14_16_17",
        op: "mul",
        values: [2, 7, 11, 14, 16, 17],
        rows: [
            [14, 154, 272], [14, 176, 238], [14, 187, 224], [22, 98, 272], [22, 112, 238],
            [22, 119, 224], [28, 77, 272], [28, 112, 187], [28, 119, 176], [32, 77, 238],
            [32, 98, 187], [32, 119, 154], [34, 77, 224], [34, 98, 176], [34, 112, 154],
        ],
        max: [272, 238, 224, 272, 238, 224, 272, 187, 176, 238, 187, 154, 224, 176, 154],
        min: [14, 14, 14, 22, 22, 22, 28, 28, 28, 32, 32, 32, 34, 34, 34],
    },
];

impl WorkedTable {
    pub fn carrier(&self) -> Carrier {
        Carrier::from_op(self.op, None).unwrap()
    }

    pub fn input(&self) -> SortedInput {
        let carrier = self.carrier();
        sort_input(
            self.values
                .iter()
                .map(|v| Element::parse(carrier, &v.to_string()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    pub fn values_arg(&self) -> String {
        self.values.map(|v| v.to_string()).join(",")
    }
}

pub fn random_input<R: Rng>(carrier: Carrier, n: usize, rng: &mut R) -> SortedInput {
    sort_input((0..2 * n).map(|_| sample_element(carrier, rng)).collect()).unwrap()
}

pub fn random_carrier<R: Rng>(kind: usize, rng: &mut R) -> Carrier {
    match kind {
        0 => Carrier::IntegerAdd,
        1 => Carrier::PositiveRationalMul,
        2 => Carrier::NaturalVectorLexAdd {
            dim: rng.gen_range(1..=3),
        },
        _ => Carrier::RationalAdd,
    }
}

/// Pair value computed straight from `combine`.
pub fn pair_value(input: &SortedInput, (i, j): Pair) -> Element {
    combine(&input.elements()[i - 1], &input.elements()[j - 1]).unwrap()
}

fn extreme(input: &SortedInput, m: &Matching, keep: Ordering) -> Element {
    let mut values = m.pairs().iter().map(|&p| pair_value(input, p));
    let first = values.next().unwrap();
    values.fold(first, |best, v| {
        if compare(&v, &best).unwrap() == keep {
            v
        } else {
            best
        }
    })
}

pub fn max_pair(input: &SortedInput, m: &Matching) -> Element {
    extreme(input, m, Ordering::Greater)
}

pub fn min_pair(input: &SortedInput, m: &Matching) -> Element {
    extreme(input, m, Ordering::Less)
}

fn all_pair_values(input: &SortedInput) -> Vec<Element> {
    let size = input.len();
    (1..=size)
        .flat_map(|i| (i + 1..=size).map(move |j| (i, j)))
        .map(|p| pair_value(input, p))
        .collect()
}

fn rational(e: &Element) -> BigRational {
    e.as_rational().unwrap()
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// Smallest bound strictly above `value` that the carrier offers: `v + 1`
/// for integers, the lexicographic successor for vectors, and for rationals
/// the midpoint to the next larger pair value of the input.
pub fn bound_above(input: &SortedInput, value: &Element) -> Element {
    let carrier = value.carrier();
    match carrier {
        Carrier::IntegerAdd => Element::integer(value.as_integer().unwrap() + 1),
        Carrier::NaturalVectorLexAdd { dim } => {
            let mut c = value.components().unwrap().to_vec();
            *c.last_mut().unwrap() += BigUint::from(1u32);
            Element::vector(dim, c).unwrap()
        }
        Carrier::RationalAdd | Carrier::PositiveRationalMul => {
            let v = rational(value);
            let next = all_pair_values(input)
                .iter()
                .map(rational)
                .filter(|p| *p > v)
                .min();
            let bound = match next {
                Some(next) => midpoint(&v, &next),
                None => &v + &v.abs() + BigRational::from_integer(BigInt::from(1)),
            };
            Element::rational(carrier, bound).unwrap()
        }
    }
}

/// Largest bound strictly below `value` the carrier offers, mirroring
/// [`bound_above`]. `None` when nothing in the domain lies below.
pub fn bound_below(input: &SortedInput, value: &Element) -> Option<Element> {
    let carrier = value.carrier();
    match carrier {
        Carrier::IntegerAdd => Some(Element::integer(value.as_integer().unwrap() - 1)),
        Carrier::NaturalVectorLexAdd { dim } => {
            let c = value.components().unwrap();
            let last = c.last().unwrap();
            if *last > BigUint::from(0u32) {
                let mut c = c.to_vec();
                *c.last_mut().unwrap() -= BigUint::from(1u32);
                return Element::vector(dim, c).ok();
            }
            let below = all_pair_values(input)
                .into_iter()
                .filter(|p| compare(p, value).unwrap() == Ordering::Less)
                .max_by(|a, b| compare(a, b).unwrap());
            below.or_else(|| {
                let zero = Element::vector(dim, vec![0u32; dim]).unwrap();
                (compare(&zero, value).unwrap() == Ordering::Less).then_some(zero)
            })
        }
        Carrier::RationalAdd | Carrier::PositiveRationalMul => {
            let v = rational(value);
            let prev = all_pair_values(input)
                .iter()
                .map(rational)
                .filter(|p| *p < v)
                .max();
            let bound = match prev {
                Some(prev) => midpoint(&prev, &v),
                None if carrier == Carrier::PositiveRationalMul => {
                    &v / BigRational::from_integer(BigInt::from(2))
                }
                None => &v - BigRational::from_integer(BigInt::from(1)),
            };
            Element::rational(carrier, bound).ok()
        }
    }
}
