//! Completing immersed graphs to coverings.
//!
//! [`hall_complete`] closes every deficiency on the existing vertex set, so
//! the traced graph embeds in a covering with the same vertices. The
//! remaining functions force the resulting permutation action to be the full
//! alternating or symmetric group: [`partial_complete`] reduces the
//! deficiencies to a single in/out pair for one label, gadget graphs built by
//! [`interval_gadget`] and [`sign_gadget`] pad the cover to a prime number of
//! vertices while keeping one generator's support small and making every
//! generator's parity adjustable, and [`assemble`] splices everything
//! together with three connector edges. [`alternating_complete`] and
//! [`symmetric_complete`] search ascending prime degrees and accept the first
//! cover whose generated group verifies (by exact order) as the target group.

use thiserror::Error;

use crate::permgroup::{graph_to_perms, Classification, GroupDescription};
use crate::primes::{is_prime, next_prime_at_least};
use crate::stallings::StallingsGraph;
use crate::words::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("graph already satisfies the covering condition")]
    AlreadyCovering,
    #[error("alternating and symmetric completions need rank at least 2, got {rank}")]
    RankTooSmall { rank: usize },
    #[error("no candidate degree up to {cutoff} verified as the requested group")]
    VerificationExhausted { cutoff: usize },
    #[error("gadget plan does not match the graph: {0}")]
    PlanMismatch(String),
}

/// One orientation choice per generator. Flipping the entry for a generator
/// flips the sign of that generator's permutation on the assembled cover and
/// leaves every other sign unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn all_plus(rank: usize) -> SignVector {
        SignVector {
            signs: vec![Sign::Plus; rank],
        }
    }

    pub fn from_signs(signs: Vec<Sign>) -> SignVector {
        assert!(!signs.is_empty());
        SignVector { signs }
    }

    pub fn rank(&self) -> usize {
        self.signs.len()
    }

    /// Entry for the 1-based generator `label`.
    pub fn get(&self, label: usize) -> Sign {
        self.signs[label - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn with_flipped(&self, label: usize) -> SignVector {
        let mut signs = self.signs.clone();
        signs[label - 1] = signs[label - 1].flip();
        SignVector { signs }
    }
}

/// The decisions fixing one gadget assembly: which label keeps the open
/// deficiency pair, which label's action will have small support, where the
/// connector edges attach, and the vertex arithmetic `degree = graph_size +
/// 4 + interval_size` with `degree` prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetPlan {
    /// Label with the single remaining deficiency pair.
    pub deficient_label: usize,
    /// Label acting trivially on the interval gadget; distinct from
    /// `deficient_label`.
    pub fixing_label: usize,
    /// Vertex missing an outgoing `deficient_label` edge; the first connector
    /// leaves from here.
    pub source_vertex: usize,
    /// Vertex missing an incoming `deficient_label` edge; the last connector
    /// returns here. May equal `source_vertex`.
    pub target_vertex: usize,
    /// Vertex count of the partially completed graph.
    pub graph_size: usize,
    /// Vertex count of the assembled cover; always prime.
    pub degree: usize,
    /// Vertex count of the interval gadget, `degree - graph_size - 4`.
    pub interval_size: usize,
}

impl GadgetPlan {
    pub fn new(
        deficient_label: usize,
        fixing_label: usize,
        source_vertex: usize,
        target_vertex: usize,
        graph_size: usize,
        degree: usize,
    ) -> Result<GadgetPlan, CompletionError> {
        if deficient_label == fixing_label {
            return Err(CompletionError::PlanMismatch(
                "deficient and fixing labels must differ".into(),
            ));
        }
        if !is_prime(degree) {
            return Err(CompletionError::PlanMismatch(format!(
                "degree {degree} is not prime"
            )));
        }
        if degree < graph_size + 5 {
            return Err(CompletionError::PlanMismatch(format!(
                "degree {degree} leaves no room for the gadgets on {graph_size} vertices"
            )));
        }
        Ok(GadgetPlan {
            deficient_label,
            fixing_label,
            source_vertex,
            target_vertex,
            graph_size,
            degree,
            interval_size: degree - graph_size - 4,
        })
    }
}

/// Completes an immersed graph to a covering on the same vertex set: for each
/// label, the k-th smallest out-deficient vertex is joined to the k-th
/// smallest in-deficient vertex. Any bijection works; the sorted matching
/// makes the output a function of the input. A covering comes back unchanged.
pub fn hall_complete(graph: &StallingsGraph) -> StallingsGraph {
    let mut out = graph.clone();
    for label in 1..=graph.rank() {
        let report = graph.deficiencies(label);
        for (&from, &to) in report.out_deficient.iter().zip(&report.in_deficient) {
            out.add_edge(from, label, to);
        }
    }
    out
}

/// Completes every label except the smallest deficient one, for which the
/// largest-index deficiency pair is left open. Returns the graph together
/// with the kept label and its open pair `(source, target)`.
pub fn partial_complete(
    graph: &StallingsGraph,
) -> Result<(StallingsGraph, usize, usize, usize), CompletionError> {
    let deficient_label = (1..=graph.rank())
        .find(|&label| !graph.deficiencies(label).is_empty())
        .ok_or(CompletionError::AlreadyCovering)?;
    let mut out = graph.clone();
    let mut open_pair = (0, 0);
    for label in 1..=graph.rank() {
        let report = graph.deficiencies(label);
        let keep = if label == deficient_label {
            let source = *report.out_deficient.last().expect("deficient label");
            let target = *report.in_deficient.last().expect("deficient label");
            open_pair = (source, target);
            report.out_deficient.len() - 1
        } else {
            report.out_deficient.len()
        };
        for (&from, &to) in report
            .out_deficient
            .iter()
            .zip(&report.in_deficient)
            .take(keep)
        {
            out.add_edge(from, label, to);
        }
    }
    Ok((out, deficient_label, open_pair.0, open_pair.1))
}

/// A chain of `size` vertices joined by `chain_label` edges, with a loop of
/// every other label at every vertex. Every label except `chain_label` fixes
/// all of its vertices; the only deficiencies are the missing incoming
/// `chain_label` edge at the first vertex and outgoing one at the last.
pub fn interval_gadget(size: usize, rank: usize, chain_label: usize) -> StallingsGraph {
    assert!(size >= 1);
    assert!(rank >= 2);
    assert!((1..=rank).contains(&chain_label));
    let mut g = StallingsGraph::new(rank, size, 0);
    for v in 0..size - 1 {
        g.add_edge(v, chain_label, v + 1);
    }
    for label in 1..=rank {
        if label != chain_label {
            for v in 0..size {
                g.add_edge(v, label, v);
            }
        }
    }
    g
}

/// The four-vertex parity gadget. Vertices 0 and 1 are the entry and exit of
/// the open `deficient_label` pair (0 lacks the incoming edge, 1 the
/// outgoing one); vertices 2 and 3 carry the switchable part.
///
/// Per label the edges are:
/// * `deficient_label`: the edge `0 -> 1`, plus loops at `{2, 3}` when its
///   sign is `Plus` or the 2-cycle `2 <-> 3` when `Minus`;
/// * `fixing_label`: the two 2-cycles `0 <-> 2` and `1 <-> 3` when `Plus`,
///   or the 4-cycle `0 -> 2 -> 1 -> 3 -> 0` when `Minus` (which also keeps
///   the gadget connected);
/// * every other label: loops at `{0, 1}`, plus loops at `{2, 3}` (`Plus`)
///   or the 2-cycle `2 <-> 3` (`Minus`).
///
/// Flipping one label's sign therefore composes exactly that label's
/// permutation with an odd permutation of the gadget.
pub fn sign_gadget(
    signs: &SignVector,
    rank: usize,
    deficient_label: usize,
    fixing_label: usize,
) -> StallingsGraph {
    assert!(rank >= 2);
    assert!(signs.rank() == rank);
    assert!(deficient_label != fixing_label);
    assert!((1..=rank).contains(&deficient_label) && (1..=rank).contains(&fixing_label));
    let mut g = StallingsGraph::new(rank, 4, 0);
    g.add_edge(0, deficient_label, 1);
    for label in 1..=rank {
        if label == fixing_label {
            continue;
        }
        if label != deficient_label {
            g.add_edge(0, label, 0);
            g.add_edge(1, label, 1);
        }
        match signs.get(label) {
            Sign::Plus => {
                g.add_edge(2, label, 2);
                g.add_edge(3, label, 3);
            }
            Sign::Minus => {
                g.add_edge(2, label, 3);
                g.add_edge(3, label, 2);
            }
        }
    }
    match signs.get(fixing_label) {
        Sign::Plus => {
            g.add_edge(0, fixing_label, 2);
            g.add_edge(2, fixing_label, 0);
            g.add_edge(1, fixing_label, 3);
            g.add_edge(3, fixing_label, 1);
        }
        Sign::Minus => {
            g.add_edge(0, fixing_label, 2);
            g.add_edge(2, fixing_label, 1);
            g.add_edge(1, fixing_label, 3);
            g.add_edge(3, fixing_label, 0);
        }
    }
    g
}

/// Splices the partially completed graph, the sign gadget and the interval
/// gadget into one cover: the three remaining deficiency pairs are closed by
/// connector edges from the open source vertex into the gadget entry, from
/// the gadget exit into the interval, and from the interval's end back to the
/// open target vertex. The result is a connected covering on exactly
/// `plan.degree` vertices, based at the input graph's base.
pub fn assemble(
    graph: &StallingsGraph,
    plan: &GadgetPlan,
    signs: &SignVector,
) -> Result<StallingsGraph, CompletionError> {
    let rank = graph.rank();
    if signs.rank() != rank {
        return Err(CompletionError::PlanMismatch(format!(
            "sign vector has rank {}, graph has rank {rank}",
            signs.rank()
        )));
    }
    if graph.vertex_count() != plan.graph_size {
        return Err(CompletionError::PlanMismatch(format!(
            "plan says {} vertices, graph has {}",
            plan.graph_size,
            graph.vertex_count()
        )));
    }
    for label in 1..=rank {
        let report = graph.deficiencies(label);
        if label == plan.deficient_label {
            if report.out_deficient != [plan.source_vertex]
                || report.in_deficient != [plan.target_vertex]
            {
                return Err(CompletionError::PlanMismatch(format!(
                    "label {label} deficiencies do not match the plan's open pair"
                )));
            }
        } else if !report.is_empty() {
            return Err(CompletionError::PlanMismatch(format!(
                "label {label} is still deficient"
            )));
        }
    }

    let gadget = sign_gadget(signs, rank, plan.deficient_label, plan.fixing_label);
    let interval = interval_gadget(plan.interval_size, rank, plan.deficient_label);
    let gadget_at = plan.graph_size;
    let interval_at = plan.graph_size + 4;

    let mut cover = StallingsGraph::new(rank, plan.degree, graph.base());
    for (from, label, to) in graph.edges() {
        cover.add_edge(from, label, to);
    }
    for (from, label, to) in gadget.edges() {
        cover.add_edge(gadget_at + from, label, gadget_at + to);
    }
    for (from, label, to) in interval.edges() {
        cover.add_edge(interval_at + from, label, interval_at + to);
    }
    cover.add_edge(plan.source_vertex, plan.deficient_label, gadget_at);
    cover.add_edge(gadget_at + 1, plan.deficient_label, interval_at);
    cover.add_edge(
        interval_at + plan.interval_size - 1,
        plan.deficient_label,
        plan.target_vertex,
    );
    debug_assert!(cover.is_covering());
    debug_assert!(cover.is_connected());
    Ok(cover)
}

/// First candidate degree for a graph on `from_size` vertices (the smallest
/// prime leaving room for the gadgets), or the next prime after `previous`.
pub fn next_candidate_prime(from_size: usize, previous: Option<usize>) -> usize {
    match previous {
        None => next_prime_at_least(from_size + 5),
        Some(p) => next_prime_at_least(p + 1),
    }
}

/// Completes a connected immersed non-covering graph (rank at least 2) to a
/// covering on a prime number of vertices whose permutation action is the
/// full alternating group, verified by exact order computation. Returns the
/// cover, the gadget plan, and the sign vector used; the input graph embeds
/// in the cover with base and vertex ids unchanged.
pub fn alternating_complete(
    graph: &StallingsGraph,
) -> Result<(StallingsGraph, GadgetPlan, SignVector), CompletionError> {
    verified_complete(graph, Classification::Alternating)
}

/// As [`alternating_complete`], but the sign choice for the deficient label
/// is flipped, making that generator's permutation odd and the verified group
/// the full symmetric group.
pub fn symmetric_complete(
    graph: &StallingsGraph,
) -> Result<(StallingsGraph, GadgetPlan, SignVector), CompletionError> {
    verified_complete(graph, Classification::Symmetric)
}

fn verified_complete(
    graph: &StallingsGraph,
    target: Classification,
) -> Result<(StallingsGraph, GadgetPlan, SignVector), CompletionError> {
    let rank = graph.rank();
    if rank < 2 {
        return Err(CompletionError::RankTooSmall { rank });
    }
    let (partial, deficient_label, source_vertex, target_vertex) = partial_complete(graph)?;
    let fixing_label = if deficient_label == 1 { 2 } else { 1 };
    let size = partial.vertex_count();

    // Every prime beyond this bound works: a primitive group of degree n
    // other than the alternating or symmetric group cannot contain a
    // non-identity element moving at most 2*sqrt(n) - 1 points, and the
    // fixing label moves at most size + 4 of them. Running past the bound
    // therefore signals a bug rather than an unlucky search.
    let support = 2 * (size + 4) + 1;
    let cutoff = next_prime_at_least(support * support + 1);

    let mut degree = next_candidate_prime(size, None);
    loop {
        if degree > cutoff {
            return Err(CompletionError::VerificationExhausted { cutoff });
        }
        let plan = GadgetPlan::new(
            deficient_label,
            fixing_label,
            source_vertex,
            target_vertex,
            size,
            degree,
        )?;

        // Probe assembly with every sign positive, read off each generator's
        // parity, then flip exactly the odd ones so the final assembly is
        // all-even (alternating) or all-even except the deficient label
        // (symmetric).
        let probe = assemble(&partial, &plan, &SignVector::all_plus(rank))?;
        let probe_perms = graph_to_perms(&probe).expect("assembly is a covering");
        let mut signs = SignVector::from_signs(probe_perms.iter().map(|p| p.sign()).collect());
        if target == Classification::Symmetric {
            signs = signs.with_flipped(deficient_label);
        }

        let cover = assemble(&partial, &plan, &signs)?;
        let perms = graph_to_perms(&cover).expect("assembly is a covering");
        let description =
            GroupDescription::compute(&perms, degree).expect("covering action has one degree");
        if description.classification == target {
            return Ok((cover, plan, signs));
        }
        degree = next_candidate_prime(size, Some(degree));
    }
}
