//! JSON encoding of certificates.
//!
//! Elements, matchings and pairs are written in their textual forms, fields
//! in a fixed order, steps by level, so certificate files diff cleanly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounding::{
    Against, BoundingError, BoundingInstance, Certificate, Direction, ExchangeStep, Justification,
    Relation,
};
use crate::matching::{format_pair, parse_pair, Matching, MatchingError, Pair, SortedInput};
use crate::semigroup::{Carrier, Element, SemigroupError};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Bounding(#[from] BoundingError),
    #[error("unknown {field} {value:?}")]
    Unknown { field: &'static str, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub instance: InstanceDoc,
    pub witness: String,
    pub steps: Vec<StepDoc>,
    #[serde(rename = "final")]
    pub final_matching: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub carrier: String,
    pub elements: Vec<String>,
    pub bound: String,
    pub direction: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub level: usize,
    pub ell: usize,
    pub ell_prime: usize,
    pub removed: [String; 2],
    pub inserted: [String; 2],
    pub justifications: Vec<JustificationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JustificationDoc {
    pub pair: String,
    pub value: String,
    pub relation: String,
    /// `"N"` for the bound, otherwise a pair `"(i,j)"`.
    pub against: String,
    pub against_value: String,
}

impl From<&Certificate> for CertificateDoc {
    fn from(cert: &Certificate) -> Self {
        let inst = &cert.instance;
        CertificateDoc {
            instance: InstanceDoc {
                carrier: inst.input().carrier().to_string(),
                elements: inst
                    .input()
                    .elements()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                bound: inst.bound().to_string(),
                direction: inst.direction().to_string(),
            },
            witness: cert.witness.to_string(),
            steps: cert
                .steps
                .iter()
                .map(|s| StepDoc {
                    level: s.level,
                    ell: s.ell,
                    ell_prime: s.ell_prime,
                    removed: s.removed.map(format_pair),
                    inserted: s.inserted.map(format_pair),
                    justifications: s
                        .justifications
                        .iter()
                        .map(|j| JustificationDoc {
                            pair: format_pair(j.pair),
                            value: j.value.to_string(),
                            relation: j.relation.symbol().to_string(),
                            against: j.against.to_string(),
                            against_value: j.against_value.to_string(),
                        })
                        .collect(),
                })
                .collect(),
            final_matching: cert.final_matching.to_string(),
        }
    }
}

impl TryFrom<&CertificateDoc> for Certificate {
    type Error = CertificateError;

    fn try_from(doc: &CertificateDoc) -> Result<Self, Self::Error> {
        let carrier: Carrier = doc.instance.carrier.parse()?;
        let elements = doc
            .instance
            .elements
            .iter()
            .map(|e| Element::parse(carrier, e))
            .collect::<Result<Vec<_>, _>>()?;
        let direction = Direction::from_name(&doc.instance.direction).ok_or_else(|| {
            CertificateError::Unknown {
                field: "direction",
                value: doc.instance.direction.clone(),
            }
        })?;
        let instance = BoundingInstance::new(
            SortedInput::from_sorted(elements)?,
            Element::parse(carrier, &doc.instance.bound)?,
            direction,
        )?;

        let pair2 = |pairs: &[String; 2]| -> Result<[Pair; 2], MatchingError> {
            Ok([parse_pair(&pairs[0])?, parse_pair(&pairs[1])?])
        };
        let steps = doc
            .steps
            .iter()
            .map(|s| {
                let justifications = s
                    .justifications
                    .iter()
                    .map(|j| {
                        let relation = Relation::from_symbol(&j.relation).ok_or_else(|| {
                            CertificateError::Unknown {
                                field: "relation",
                                value: j.relation.clone(),
                            }
                        })?;
                        let against = if j.against == "N" {
                            Against::Bound
                        } else {
                            Against::Pair(parse_pair(&j.against)?)
                        };
                        Ok(Justification {
                            pair: parse_pair(&j.pair)?,
                            value: Element::parse(carrier, &j.value)?,
                            relation,
                            against,
                            against_value: Element::parse(carrier, &j.against_value)?,
                        })
                    })
                    .collect::<Result<Vec<_>, CertificateError>>()?;
                Ok(ExchangeStep {
                    level: s.level,
                    ell: s.ell,
                    ell_prime: s.ell_prime,
                    removed: pair2(&s.removed)?,
                    inserted: pair2(&s.inserted)?,
                    justifications,
                })
            })
            .collect::<Result<Vec<_>, CertificateError>>()?;

        Ok(Certificate {
            instance,
            witness: doc.witness.parse::<Matching>()?,
            steps,
            final_matching: doc.final_matching.parse::<Matching>()?,
        })
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(cert: &Certificate) -> String {
    let mut text = serde_json::to_string_pretty(&CertificateDoc::from(cert))
        .expect("certificate documents always serialize");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
    let doc: CertificateDoc = serde_json::from_str(text)?;
    Certificate::try_from(&doc)
}
