//! JSON document types for instances, certificates and verification reports.
//!
//! Field order is fixed by the struct definitions and maps are keyed by
//! generator letter in `BTreeMap`s, so serialisation is byte-deterministic.
//! The group order is carried as a decimal string: factorials overflow
//! 64-bit integers long before the degrees here become impractical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use altquot::permgroup::{Classification, GroupDescription};
use altquot::separation::{
    ElementCheck, Mode, ProblemInstance, SeparationCertificate, SubgroupCheck, VerificationReport,
};
use altquot::words::{Sign, Word};
use altquot::{Permutation, SignVector};

/// The text format caps generator letters at 'z'.
pub const MAX_RANK: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeField {
    Hall,
    Alternating,
    Symmetric,
}

impl From<ModeField> for Mode {
    fn from(mode: ModeField) -> Mode {
        match mode {
            ModeField::Hall => Mode::Hall,
            ModeField::Alternating => Mode::Alternating,
            ModeField::Symmetric => Mode::Symmetric,
        }
    }
}

impl From<Mode> for ModeField {
    fn from(mode: Mode) -> ModeField {
        match mode {
            Mode::Hall => ModeField::Hall,
            Mode::Alternating => ModeField::Alternating,
            Mode::Symmetric => ModeField::Symmetric,
        }
    }
}

/// One separation problem as supplied by the user.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub rank: usize,
    pub subgroup: Vec<String>,
    pub elements: Vec<String>,
    pub mode: ModeField,
}

impl InstanceDocument {
    pub fn to_instance(&self) -> Result<ProblemInstance, String> {
        if self.rank < 1 || self.rank > MAX_RANK {
            return Err(format!(
                "rank must be between 1 and {MAX_RANK}, got {}",
                self.rank
            ));
        }
        let parse_all = |texts: &[String]| -> Result<Vec<Word>, String> {
            texts
                .iter()
                .map(|t| Word::parse(t, self.rank).map_err(|e| format!("word {t:?}: {e}")))
                .collect()
        };
        Ok(ProblemInstance {
            rank: self.rank,
            subgroup: parse_all(&self.subgroup)?,
            elements: parse_all(&self.elements)?,
            mode: self.mode.into(),
        })
    }
}

/// A generator image: the 0-indexed image array for machines, cycle notation
/// for people.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageEntry {
    pub array: Vec<usize>,
    pub cycles: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupCheckEntry {
    pub word: String,
    pub image: Vec<usize>,
    /// Whether the image fixes the base vertex.
    pub result: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementCheckEntry {
    pub word: String,
    pub image: Vec<usize>,
    pub base_image: usize,
    /// Whether the image moves the base vertex.
    pub result: bool,
}

/// Serialised form of a separation certificate. Order, classification and
/// sign vector are present exactly when the mode is not `hall`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub mode: ModeField,
    pub rank: usize,
    pub degree: usize,
    pub base: usize,
    pub images: BTreeMap<String, ImageEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_vector: Option<BTreeMap<String, i8>>,
    pub subgroup_checks: Vec<SubgroupCheckEntry>,
    pub element_checks: Vec<ElementCheckEntry>,
}

fn letter(index: usize) -> String {
    ((b'a' + (index - 1) as u8) as char).to_string()
}

impl CertificateDocument {
    pub fn from_certificate(certificate: &SeparationCertificate) -> CertificateDocument {
        let images = certificate
            .generator_images
            .iter()
            .enumerate()
            .map(|(i, perm)| {
                (
                    letter(i + 1),
                    ImageEntry {
                        array: perm.images().to_vec(),
                        cycles: perm.to_string(),
                    },
                )
            })
            .collect();
        CertificateDocument {
            mode: certificate.mode.into(),
            rank: certificate.rank,
            degree: certificate.degree,
            base: certificate.base,
            images,
            order: certificate.group.as_ref().map(|g| g.order.to_string()),
            classification: certificate
                .group
                .as_ref()
                .map(|g| g.classification.to_string()),
            sign_vector: certificate.sign_vector.as_ref().map(|signs| {
                signs
                    .signs()
                    .iter()
                    .enumerate()
                    .map(|(i, sign)| (letter(i + 1), sign.as_i8()))
                    .collect()
            }),
            subgroup_checks: certificate
                .subgroup_checks
                .iter()
                .map(|check| SubgroupCheckEntry {
                    word: check.word.to_string(),
                    image: check.image.images().to_vec(),
                    result: check.fixes_base,
                })
                .collect(),
            element_checks: certificate
                .element_checks
                .iter()
                .map(|check| ElementCheckEntry {
                    word: check.word.to_string(),
                    image: check.image.images().to_vec(),
                    base_image: check.base_image,
                    result: check.moves_base,
                })
                .collect(),
        }
    }

    /// Rebuilds the in-memory certificate, validating the document shape:
    /// image keys, array lengths and bijectivity, base range, order and
    /// classification syntax, and the hall/gadget field split.
    pub fn to_certificate(&self) -> Result<SeparationCertificate, String> {
        if self.rank < 1 || self.rank > MAX_RANK {
            return Err(format!("rank {} out of range", self.rank));
        }
        if self.base >= self.degree {
            return Err(format!(
                "base {} out of range for degree {}",
                self.base, self.degree
            ));
        }
        if self.images.len() != self.rank {
            return Err(format!(
                "expected {} generator images, found {}",
                self.rank,
                self.images.len()
            ));
        }
        let mut generator_images = Vec::with_capacity(self.rank);
        for index in 1..=self.rank {
            let key = letter(index);
            let entry = self
                .images
                .get(&key)
                .ok_or_else(|| format!("missing image for generator {key:?}"))?;
            if entry.array.len() != self.degree {
                return Err(format!(
                    "image of {key:?} has length {}, expected degree {}",
                    entry.array.len(),
                    self.degree
                ));
            }
            let perm = Permutation::from_images(entry.array.clone())
                .map_err(|e| format!("image of {key:?}: {e}"))?;
            if perm.to_string() != entry.cycles {
                return Err(format!(
                    "cycle notation for {key:?} does not match its image array"
                ));
            }
            generator_images.push(perm);
        }

        let parse_word = |text: &str| {
            Word::parse(text, self.rank).map_err(|e| format!("word {text:?}: {e}"))
        };
        let parse_image = |image: &[usize], word: &str| {
            if image.len() != self.degree {
                return Err(format!("check image for {word:?} has the wrong degree"));
            }
            Permutation::from_images(image.to_vec())
                .map_err(|e| format!("check image for {word:?}: {e}"))
        };
        let subgroup_checks = self
            .subgroup_checks
            .iter()
            .map(|entry| {
                Ok(SubgroupCheck {
                    word: parse_word(&entry.word)?,
                    image: parse_image(&entry.image, &entry.word)?,
                    fixes_base: entry.result,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        let element_checks = self
            .element_checks
            .iter()
            .map(|entry| {
                Ok(ElementCheck {
                    word: parse_word(&entry.word)?,
                    image: parse_image(&entry.image, &entry.word)?,
                    base_image: entry.base_image,
                    moves_base: entry.result,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;

        let mode: Mode = self.mode.into();
        let (group, sign_vector) = if mode == Mode::Hall {
            if self.order.is_some() || self.classification.is_some() || self.sign_vector.is_some()
            {
                return Err("hall certificates carry no order, classification or signs".into());
            }
            (None, None)
        } else {
            let order_text = self
                .order
                .as_ref()
                .ok_or_else(|| "missing group order".to_string())?;
            let order = num_bigint::BigUint::parse_bytes(order_text.as_bytes(), 10)
                .ok_or_else(|| format!("order {order_text:?} is not a decimal integer"))?;
            let classification = match self.classification.as_deref() {
                Some("alternating") => Classification::Alternating,
                Some("symmetric") => Classification::Symmetric,
                Some("other") => Classification::Other,
                Some(text) => return Err(format!("unknown classification {text:?}")),
                None => return Err("missing classification".into()),
            };
            let signs = self
                .sign_vector
                .as_ref()
                .ok_or_else(|| "missing sign vector".to_string())?;
            if signs.len() != self.rank {
                return Err(format!(
                    "sign vector has {} entries, expected {}",
                    signs.len(),
                    self.rank
                ));
            }
            let mut sign_list = Vec::with_capacity(self.rank);
            for index in 1..=self.rank {
                let key = letter(index);
                match signs.get(&key) {
                    Some(1) => sign_list.push(Sign::Plus),
                    Some(-1) => sign_list.push(Sign::Minus),
                    Some(other) => {
                        return Err(format!("sign for {key:?} must be 1 or -1, got {other}"))
                    }
                    None => return Err(format!("missing sign for generator {key:?}")),
                }
            }
            let group = GroupDescription {
                degree: self.degree,
                generators: generator_images.clone(),
                order,
                classification,
            };
            (Some(group), Some(SignVector::from_signs(sign_list)))
        };

        Ok(SeparationCertificate {
            mode,
            rank: self.rank,
            degree: self.degree,
            base: self.base,
            generator_images,
            subgroup_checks,
            element_checks,
            group,
            sign_vector,
        })
    }
}

/// Machine-readable verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub passed: bool,
    pub checks: Vec<ReportEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    pub passed: bool,
}

impl ReportDocument {
    pub fn from_report(report: &VerificationReport) -> ReportDocument {
        ReportDocument {
            passed: report.passed(),
            checks: report
                .checks
                .iter()
                .map(|check| ReportEntry {
                    label: check.label.clone(),
                    passed: check.passed,
                })
                .collect(),
        }
    }
}
