//! End-to-end pipelines producing machine-checkable separation certificates.
//!
//! Given a subgroup `H` of a free group and words outside `H`, [`separate`]
//! builds the core graph of `H`, traces each word from the base (growing the
//! graph where needed), completes the result to a covering in the requested
//! mode, and certifies the outcome: the image of every subgroup generator
//! fixes the base vertex while the image of every separated word moves it, so
//! no separated word can map into the image of `H`.

use thiserror::Error;

use crate::completion::{
    alternating_complete, hall_complete, symmetric_complete, CompletionError, GadgetPlan,
    SignVector,
};
use crate::permgroup::{
    evaluate_word, graph_to_perms, Classification, GroupDescription, Permutation,
};
use crate::stallings::{core_graph, StallingsGraph};
use crate::words::{Sign, Word};

/// Which completion the pipeline applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Covering on the traced graph's own vertex set; smallest degree, no
    /// control over the group.
    Hall,
    /// Prime-degree cover verified to generate the full alternating group.
    Alternating,
    /// Prime-degree cover verified to generate the full symmetric group.
    Symmetric,
}

impl Mode {
    fn minimum_rank(self) -> usize {
        match self {
            Mode::Hall => 1,
            Mode::Alternating | Mode::Symmetric => 2,
        }
    }
}

/// One separation problem: a subgroup given by generator words and a
/// non-empty list of words to separate from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub rank: usize,
    pub subgroup: Vec<Word>,
    pub elements: Vec<Word>,
    pub mode: Mode,
}

/// Evaluation record for one subgroup generator: its image permutation must
/// fix the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCheck {
    pub word: Word,
    pub image: Permutation,
    pub fixes_base: bool,
}

/// Evaluation record for one separated word: its image permutation must move
/// the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementCheck {
    pub word: Word,
    pub image: Permutation,
    pub base_image: usize,
    pub moves_base: bool,
}

/// Everything needed to re-check a separation without re-running the
/// construction: the generator images, the per-word evaluations, and (outside
/// Hall mode) the verified group and the gadget sign choices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub mode: Mode,
    pub rank: usize,
    pub degree: usize,
    pub base: usize,
    pub generator_images: Vec<Permutation>,
    pub subgroup_checks: Vec<SubgroupCheck>,
    pub element_checks: Vec<ElementCheck>,
    pub group: Option<GroupDescription>,
    pub sign_vector: Option<SignVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("no elements to separate")]
    EmptyElementList,
    #[error("this mode needs rank at least {needed}, got {rank}")]
    RankTooSmall { rank: usize, needed: usize },
    #[error("element {index} lies in the subgroup, so no quotient can separate it")]
    ElementInSubgroup { index: usize },
    #[error(
        "the subgroup has finite index in the free group; alternating and symmetric \
         quotients exist only for subgroups of infinite index"
    )]
    FiniteIndexSubgroup,
    #[error("no candidate degree up to {cutoff} verified as the requested group")]
    VerificationExhausted { cutoff: usize },
}

fn validate(instance: &ProblemInstance) -> Result<(), SeparationError> {
    if instance.elements.is_empty() {
        return Err(SeparationError::EmptyElementList);
    }
    let needed = instance.mode.minimum_rank();
    if instance.rank < needed {
        return Err(SeparationError::RankTooSmall {
            rank: instance.rank,
            needed,
        });
    }
    for word in instance.subgroup.iter().chain(&instance.elements) {
        assert!(
            word.max_index() <= instance.rank,
            "word {word} uses a generator beyond rank {}",
            instance.rank
        );
    }
    Ok(())
}

/// The traced graph: the subgroup's core graph grown by the path of each
/// element. Errors take precedence in this order: empty element list and
/// rank, then membership of each element (in input order, decided on the core
/// graph alone), then the finite-index check (which only blocks the
/// alternating and symmetric completions).
pub fn traced_graph(instance: &ProblemInstance) -> Result<StallingsGraph, SeparationError> {
    validate(instance)?;
    let core = core_graph(instance.rank, &instance.subgroup);
    for (index, word) in instance.elements.iter().enumerate() {
        if core.accepts(word) {
            return Err(SeparationError::ElementInSubgroup { index });
        }
    }
    if instance.mode != Mode::Hall && core.is_covering() {
        return Err(SeparationError::FiniteIndexSubgroup);
    }
    let mut traced = core;
    for word in &instance.elements {
        traced.trace_and_grow(word);
    }
    Ok(traced)
}

/// The completed cover for the instance's mode, with the gadget data when a
/// gadget construction ran.
pub fn completed_cover(
    instance: &ProblemInstance,
) -> Result<(StallingsGraph, Option<(GadgetPlan, SignVector)>), SeparationError> {
    let traced = traced_graph(instance)?;
    match instance.mode {
        Mode::Hall => Ok((hall_complete(&traced), None)),
        Mode::Alternating => {
            let (cover, plan, signs) =
                alternating_complete(&traced).map_err(completion_error)?;
            Ok((cover, Some((plan, signs))))
        }
        Mode::Symmetric => {
            let (cover, plan, signs) = symmetric_complete(&traced).map_err(completion_error)?;
            Ok((cover, Some((plan, signs))))
        }
    }
}

fn completion_error(error: CompletionError) -> SeparationError {
    match error {
        CompletionError::VerificationExhausted { cutoff } => {
            SeparationError::VerificationExhausted { cutoff }
        }
        // The pipeline checks rank and the covering condition before
        // completing, and builds plans that match the graph.
        other => unreachable!("completion rejected a validated pipeline input: {other}"),
    }
}

/// Runs the full pipeline and emits a certificate. The construction is
/// deterministic: the same instance always yields the same certificate.
pub fn separate(instance: &ProblemInstance) -> Result<SeparationCertificate, SeparationError> {
    let (cover, gadget) = completed_cover(instance)?;
    let images = graph_to_perms(&cover).expect("completed graph is a covering");
    let base = cover.base();
    let degree = cover.vertex_count();

    let subgroup_checks = instance
        .subgroup
        .iter()
        .map(|word| {
            let image = evaluate_word(&images, word).expect("validated word");
            let fixes_base = image.apply(base) == base;
            SubgroupCheck {
                word: word.clone(),
                image,
                fixes_base,
            }
        })
        .collect();
    let element_checks = instance
        .elements
        .iter()
        .map(|word| {
            let image = evaluate_word(&images, word).expect("validated word");
            let base_image = image.apply(base);
            ElementCheck {
                word: word.clone(),
                image,
                base_image,
                moves_base: base_image != base,
            }
        })
        .collect();

    let (group, sign_vector) = match gadget {
        Some((_, signs)) => {
            let description = GroupDescription::compute(&images, degree)
                .expect("cover permutations share one degree");
            (Some(description), Some(signs))
        }
        None => (None, None),
    };

    Ok(SeparationCertificate {
        mode: instance.mode,
        rank: instance.rank,
        degree,
        base,
        generator_images: images,
        subgroup_checks,
        element_checks,
        group,
        sign_vector,
    })
}

/// One named pass/fail entry of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
}

/// The outcome of independently re-checking a certificate against an
/// instance. Failures are entries, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|check| check.passed)
    }

    fn push(&mut self, label: impl Into<String>, passed: bool) {
        self.checks.push(CheckResult {
            label: label.into(),
            passed,
        });
    }
}

/// Re-derives every claim of the certificate from the stored generator
/// images: shape of the data, base fixed by each subgroup generator, base
/// moved by each separated word, agreement of the stored per-word images with
/// re-evaluation, transitivity, and (outside Hall mode) the exact group order
/// and classification expected for the mode.
pub fn verify_certificate(
    instance: &ProblemInstance,
    certificate: &SeparationCertificate,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let images = &certificate.generator_images;

    report.push("instance and certificate agree on the mode", certificate.mode == instance.mode);
    report.push(
        "one generator image per generator",
        images.len() == instance.rank && certificate.rank == instance.rank,
    );
    report.push(
        "generator images all have the certified degree",
        images.iter().all(|p| p.degree() == certificate.degree),
    );
    report.push(
        "base vertex lies in range",
        certificate.base < certificate.degree,
    );
    report.push(
        "one check per subgroup generator",
        certificate.subgroup_checks.len() == instance.subgroup.len(),
    );
    report.push(
        "one check per separated element",
        certificate.element_checks.len() == instance.elements.len(),
    );
    if !report.passed() {
        return report;
    }

    for (index, word) in instance.subgroup.iter().enumerate() {
        let stored = &certificate.subgroup_checks[index];
        match evaluate_word(images, word) {
            Ok(image) => {
                let fixes = image.apply(certificate.base) == certificate.base;
                report.push(format!("subgroup generator {word:} fixes the base"), fixes);
                report.push(
                    format!("subgroup check {index} matches re-evaluation"),
                    stored.word == *word && stored.image == image && stored.fixes_base == fixes,
                );
            }
            Err(error) => report.push(
                format!("subgroup generator {word} evaluates ({error})"),
                false,
            ),
        }
    }

    for (index, word) in instance.elements.iter().enumerate() {
        let stored = &certificate.element_checks[index];
        match evaluate_word(images, word) {
            Ok(image) => {
                let base_image = image.apply(certificate.base);
                report.push(
                    format!("element {word} moves the base"),
                    base_image != certificate.base,
                );
                report.push(
                    format!("element check {index} matches re-evaluation"),
                    stored.word == *word
                        && stored.image == image
                        && stored.base_image == base_image
                        && stored.moves_base == (base_image != certificate.base),
                );
            }
            Err(error) => report.push(format!("element {word} evaluates ({error})"), false),
        }
    }

    match crate::permgroup::is_transitive(images) {
        Ok(transitive) => report.push("generator images act transitively", transitive),
        Err(error) => report.push(format!("transitivity check runs ({error})"), false),
    }

    match certificate.mode {
        Mode::Hall => {
            report.push(
                "hall certificates carry no group description",
                certificate.group.is_none() && certificate.sign_vector.is_none(),
            );
        }
        Mode::Alternating | Mode::Symmetric => {
            let expected = if certificate.mode == Mode::Alternating {
                Classification::Alternating
            } else {
                Classification::Symmetric
            };
            match GroupDescription::compute(images, certificate.degree) {
                Ok(description) => {
                    report.push(
                        format!("generated group verifies as {expected}"),
                        description.classification == expected,
                    );
                    match &certificate.group {
                        Some(stored) => {
                            report.push(
                                "stored order matches the recomputed order",
                                stored.order == description.order,
                            );
                            report.push(
                                "stored classification matches the recomputed one",
                                stored.classification == description.classification,
                            );
                        }
                        None => report.push("certificate carries a group description", false),
                    }
                }
                Err(error) => report.push(format!("group verification runs ({error})"), false),
            }
            if certificate.mode == Mode::Alternating {
                report.push(
                    "every generator image is even",
                    images.iter().all(|p| p.sign() == Sign::Plus),
                );
            }
            report.push(
                "certificate carries a sign vector of full rank",
                certificate
                    .sign_vector
                    .as_ref()
                    .is_some_and(|signs| signs.rank() == certificate.rank),
            );
        }
    }

    report
}
