//! Labelled, oriented graphs over a rose: folding, core graphs of finitely
//! generated subgroups, path tracing, and subgroup membership.
//!
//! A graph stores one partial map per generator label. `succ(label, v) = w`
//! encodes an oriented edge labelled `label` from `v` to `w`; the inverse map
//! `pred` is kept in sync. Each map being a partial injection is exactly the
//! immersion condition (at most one incoming and one outgoing edge per label
//! at each vertex), and a graph is a covering when every map is a total
//! bijection.

use crate::words::{Sign, Word};

/// A folded (immersed) labelled oriented graph with a base vertex.
///
/// Vertex ids are `0..vertex_count`. Labels are 1-based generator indices,
/// matching [`crate::words::Letter`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallingsGraph {
    rank: usize,
    base: usize,
    succ: Vec<Vec<Option<usize>>>,
    pred: Vec<Vec<Option<usize>>>,
}

impl StallingsGraph {
    /// A graph with `vertex_count` isolated vertices and no edges.
    pub fn new(rank: usize, vertex_count: usize, base: usize) -> StallingsGraph {
        assert!(rank >= 1, "rank must be at least 1");
        assert!(
            vertex_count == 0 || base < vertex_count,
            "base vertex out of range"
        );
        StallingsGraph {
            rank,
            base,
            succ: vec![vec![None; vertex_count]; rank],
            pred: vec![vec![None; vertex_count]; rank],
        }
    }

    /// The one-vertex graph with no edges, based at its only vertex.
    pub fn single_vertex(rank: usize) -> StallingsGraph {
        StallingsGraph::new(rank, 1, 0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.succ[0].len()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        for label in 0..self.rank {
            self.succ[label].push(None);
            self.pred[label].push(None);
        }
        self.vertex_count() - 1
    }

    /// Adds the oriented edge `from --label--> to`.
    ///
    /// Panics if either endpoint already carries an edge of this label in the
    /// same direction: the graph type only holds immersed graphs. Use
    /// [`RawGraph`] and folding to build graphs from unconstrained edge sets.
    pub fn add_edge(&mut self, from: usize, label: usize, to: usize) {
        self.check_label(label);
        assert!(from < self.vertex_count() && to < self.vertex_count());
        let slot = &mut self.succ[label - 1][from];
        assert!(
            slot.is_none(),
            "vertex {from} already has an outgoing edge labelled {label}"
        );
        *slot = Some(to);
        let slot = &mut self.pred[label - 1][to];
        assert!(
            slot.is_none(),
            "vertex {to} already has an incoming edge labelled {label}"
        );
        *slot = Some(from);
    }

    /// Endpoint of the `label`-edge leaving `v`, if present.
    pub fn successor(&self, label: usize, v: usize) -> Option<usize> {
        self.check_label(label);
        self.succ[label - 1][v]
    }

    /// Source of the `label`-edge entering `v`, if present.
    pub fn predecessor(&self, label: usize, v: usize) -> Option<usize> {
        self.check_label(label);
        self.pred[label - 1][v]
    }

    /// All edges as `(from, label, to)`, ordered by source vertex then label.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |v| {
            (1..=self.rank).filter_map(move |label| {
                self.succ[label - 1][v].map(|to| (v, label, to))
            })
        })
    }

    /// True when `v` has both an incoming and an outgoing `label`-edge.
    pub fn is_complete_at(&self, label: usize, v: usize) -> bool {
        self.check_label(label);
        self.succ[label - 1][v].is_some() && self.pred[label - 1][v].is_some()
    }

    /// The covering condition: every label map is a total bijection.
    pub fn is_covering(&self) -> bool {
        (1..=self.rank)
            .all(|label| (0..self.vertex_count()).all(|v| self.is_complete_at(label, v)))
    }

    /// Vertices missing an outgoing (respectively incoming) `label`-edge, in
    /// ascending order. The two lists always have equal length: each label's
    /// edges pair off sources and targets.
    pub fn deficiencies(&self, label: usize) -> DeficiencyReport {
        self.check_label(label);
        let out_deficient = (0..self.vertex_count())
            .filter(|&v| self.succ[label - 1][v].is_none())
            .collect();
        let in_deficient = (0..self.vertex_count())
            .filter(|&v| self.pred[label - 1][v].is_none())
            .collect();
        DeficiencyReport {
            label,
            out_deficient,
            in_deficient,
        }
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![self.base];
        seen[self.base] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for label in 0..self.rank {
                for neighbour in [self.succ[label][v], self.pred[label][v]].into_iter().flatten() {
                    if !seen[neighbour] {
                        seen[neighbour] = true;
                        count += 1;
                        stack.push(neighbour);
                    }
                }
            }
        }
        count == n
    }

    /// Follows `word` from `start` using existing edges only.
    pub fn trace_from(&self, start: usize, word: &Word) -> Option<usize> {
        let mut current = start;
        for letter in word.letters() {
            current = match letter.sign() {
                Sign::Plus => self.successor(letter.index(), current)?,
                Sign::Minus => self.predecessor(letter.index(), current)?,
            };
        }
        Some(current)
    }

    /// True when `word` traces a closed loop at the base using existing
    /// edges. For a core graph this is membership of `word` in the subgroup.
    pub fn accepts(&self, word: &Word) -> bool {
        self.trace_from(self.base, word) == Some(self.base)
    }

    /// Follows `word` from the base, appending a fresh vertex and edge
    /// whenever the next step is missing, and returns the endpoint. Existing
    /// vertices and edges are never altered, and the result is still
    /// immersed: an edge is only added where the relevant slot was empty, and
    /// the new vertex carries a single edge.
    pub fn trace_and_grow(&mut self, word: &Word) -> usize {
        let mut current = self.base;
        for letter in word.letters() {
            let label = letter.index();
            current = match letter.sign() {
                Sign::Plus => match self.successor(label, current) {
                    Some(next) => next,
                    None => {
                        let fresh = self.add_vertex();
                        self.add_edge(current, label, fresh);
                        fresh
                    }
                },
                Sign::Minus => match self.predecessor(label, current) {
                    Some(previous) => previous,
                    None => {
                        let fresh = self.add_vertex();
                        self.add_edge(fresh, label, current);
                        fresh
                    }
                },
            };
        }
        current
    }

    /// Relabels vertices by breadth-first discovery order from the base,
    /// exploring labels in ascending order and forward edges before backward
    /// ones. Based isomorphic graphs have identical canonical forms.
    /// Unreachable vertices (never produced by the pipeline) keep their
    /// relative order after the reachable part.
    pub fn canonical_form(&self) -> StallingsGraph {
        let n = self.vertex_count();
        if n == 0 {
            return self.clone();
        }
        let mut new_id = vec![usize::MAX; n];
        let mut queue = vec![self.base];
        new_id[self.base] = 0;
        let mut next = 1;
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for label in 0..self.rank {
                for neighbour in [self.succ[label][v], self.pred[label][v]].into_iter().flatten() {
                    if new_id[neighbour] == usize::MAX {
                        new_id[neighbour] = next;
                        next += 1;
                        queue.push(neighbour);
                    }
                }
            }
        }
        for v in 0..n {
            if new_id[v] == usize::MAX {
                new_id[v] = next;
                next += 1;
            }
        }
        let mut out = StallingsGraph::new(self.rank, n, new_id[self.base]);
        for (from, label, to) in self.edges() {
            out.add_edge(new_id[from], label, new_id[to]);
        }
        out
    }

    fn check_label(&self, label: usize) {
        assert!(
            (1..=self.rank).contains(&label),
            "label {label} out of range for rank {}",
            self.rank
        );
    }
}

/// Missing-edge report for one label; see [`StallingsGraph::deficiencies`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficiencyReport {
    pub label: usize,
    pub out_deficient: Vec<usize>,
    pub in_deficient: Vec<usize>,
}

impl DeficiencyReport {
    pub fn is_empty(&self) -> bool {
        self.out_deficient.is_empty() && self.in_deficient.is_empty()
    }
}

/// An unconstrained edge multiset over labelled vertices, used as input to
/// folding. Unlike [`StallingsGraph`] it may hold several same-label edges at
/// a vertex, parallel edges, and duplicates.
#[derive(Debug, Clone)]
pub struct RawGraph {
    rank: usize,
    base: usize,
    vertex_count: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl RawGraph {
    pub fn new(rank: usize, vertex_count: usize, base: usize) -> RawGraph {
        assert!(rank >= 1);
        assert!(vertex_count > 0 && base < vertex_count);
        RawGraph {
            rank,
            base,
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, from: usize, label: usize, to: usize) {
        assert!((1..=self.rank).contains(&label));
        assert!(from < self.vertex_count && to < self.vertex_count);
        self.edges.push((from, label, to));
    }

    /// Stallings folding: repeatedly identify the endpoints of same-label
    /// edges sharing a source or a target until the immersion condition
    /// holds. Implemented with a union-find over vertices and a worklist of
    /// pending identifications; the result does not depend on edge order
    /// (folding is confluent), and an already immersed input comes back
    /// unchanged.
    pub fn fold(&self) -> StallingsGraph {
        let rank = self.rank;
        let mut uf = UnionFind::new(self.vertex_count);
        // Outgoing/incoming neighbour per (representative, label). Stored
        // vertex names may be stale; resolve through `find` before use.
        let mut out = vec![vec![None; rank]; self.vertex_count];
        let mut inn = vec![vec![None; rank]; self.vertex_count];
        let mut pending: Vec<(usize, usize)> = Vec::new();

        for &(from, label, to) in &self.edges {
            let l = label - 1;
            let f = uf.find(from);
            let t = uf.find(to);
            match out[f][l] {
                Some(existing) => {
                    let e = uf.find(existing);
                    if e != t {
                        pending.push((e, t));
                    }
                }
                None => {
                    out[f][l] = Some(t);
                    match inn[t][l] {
                        Some(existing) => {
                            let e = uf.find(existing);
                            if e != f {
                                pending.push((e, f));
                            }
                        }
                        None => inn[t][l] = Some(f),
                    }
                }
            }
            while let Some((a, b)) = pending.pop() {
                let a = uf.find(a);
                let b = uf.find(b);
                if a == b {
                    continue;
                }
                let (root, dead) = if a < b { (a, b) } else { (b, a) };
                uf.merge_into(dead, root);
                for l in 0..rank {
                    match (out[root][l], out[dead][l]) {
                        (Some(x), Some(y)) => {
                            let x = uf.find(x);
                            let y = uf.find(y);
                            if x != y {
                                pending.push((x, y));
                            }
                        }
                        (None, Some(y)) => out[root][l] = Some(y),
                        _ => {}
                    }
                    match (inn[root][l], inn[dead][l]) {
                        (Some(x), Some(y)) => {
                            let x = uf.find(x);
                            let y = uf.find(y);
                            if x != y {
                                pending.push((x, y));
                            }
                        }
                        (None, Some(y)) => inn[root][l] = Some(y),
                        _ => {}
                    }
                }
            }
        }

        // Compact representatives in ascending order so that a fold with no
        // identifications is the identity on vertex ids.
        let mut new_id = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if uf.find(v) == v {
                new_id[v] = next;
                next += 1;
            }
        }
        let mut graph = StallingsGraph::new(rank, next, new_id[uf.find(self.base)]);
        for v in 0..self.vertex_count {
            if uf.find(v) != v {
                continue;
            }
            for l in 0..rank {
                if let Some(to) = out[v][l] {
                    graph.add_edge(new_id[v], l + 1, new_id[uf.find(to)]);
                }
            }
        }
        graph
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Both arguments must be representatives.
    fn merge_into(&mut self, dead: usize, root: usize) {
        self.parent[dead] = root;
    }
}

/// The core graph of the subgroup generated by `generators`: a wedge of loops
/// at the base, one per generator word, folded and put in canonical form. A
/// reduced word traces a closed loop at the base exactly when it lies in the
/// subgroup.
pub fn core_graph(rank: usize, generators: &[Word]) -> StallingsGraph {
    let mut raw = RawGraph::new(rank, 1, 0);
    for word in generators {
        assert!(
            word.max_index() <= rank,
            "generator word uses a letter beyond rank {rank}"
        );
        let len = word.len();
        let mut previous = 0;
        for (i, letter) in word.letters().iter().enumerate() {
            let next = if i + 1 == len { 0 } else { raw.add_vertex() };
            match letter.sign() {
                Sign::Plus => raw.add_edge(previous, letter.index(), next),
                Sign::Minus => raw.add_edge(next, letter.index(), previous),
            }
            previous = next;
        }
    }
    raw.fold().canonical_form()
}

/// Membership of `word` in the subgroup generated by `generators`.
pub fn is_member(rank: usize, generators: &[Word], word: &Word) -> bool {
    assert!(word.max_index() <= rank);
    core_graph(rank, generators).accepts(word)
}

/// A finitely generated subgroup has finite index exactly when its core graph
/// is itself a covering; the index is then the number of vertices.
pub fn has_finite_index(rank: usize, generators: &[Word]) -> bool {
    core_graph(rank, generators).is_covering()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Letter;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn words(texts: &[&str], rank: usize) -> Vec<Word> {
        texts.iter().map(|t| w(t, rank)).collect()
    }

    #[test]
    fn single_vertex_has_no_edges() {
        for rank in [1, 2, 3] {
            let g = StallingsGraph::single_vertex(rank);
            assert_eq!(g.vertex_count(), 1);
            assert_eq!(g.base(), 0);
            assert_eq!(g.edges().count(), 0);
            assert_eq!(g.rank(), rank);
        }
    }

    #[test]
    fn fold_collapses_duplicate_generator() {
        // Wedge for H = <a, a>: two a-loops at the base fold to one.
        let mut raw = RawGraph::new(2, 1, 0);
        raw.add_edge(0, 1, 0);
        raw.add_edge(0, 1, 0);
        let g = raw.fold();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.successor(1, 0), Some(0));
        assert_eq!(g.successor(2, 0), None);
    }

    #[test]
    fn fold_identifies_duplicate_loops() {
        // Wedge for H = <ab, ab>: the two length-2 loops fold together.
        // Hand fold: both a-edges at the base force v1 = v3, then the two
        // b-edges into the base force nothing new; result is base ->a v ->b base.
        let mut raw = RawGraph::new(2, 1, 0);
        let v1 = raw.add_vertex();
        raw.add_edge(0, 1, v1);
        raw.add_edge(v1, 2, 0);
        let v2 = raw.add_vertex();
        raw.add_edge(0, 1, v2);
        raw.add_edge(v2, 2, 0);
        let g = raw.fold();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.successor(1, 0), Some(1));
        assert_eq!(g.successor(2, 1), Some(0));
        assert_eq!(g.successor(2, 0), None);
    }

    #[test]
    fn fold_fixes_immersed_input() {
        let mut raw = RawGraph::new(2, 1, 0);
        let v1 = raw.add_vertex();
        raw.add_edge(0, 1, v1);
        raw.add_edge(v1, 2, v1);
        let folded = raw.fold();
        assert_eq!(folded.vertex_count(), 2);
        assert_eq!(folded.successor(1, 0), Some(1));
        assert_eq!(folded.successor(2, 1), Some(1));
        assert_eq!(folded.base(), 0);
    }

    #[test]
    fn core_graph_of_trivial_subgroup() {
        let g = core_graph(2, &[]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges().count(), 0);
    }

    #[test]
    fn core_graph_of_single_letter() {
        let g = core_graph(2, &words(&["a"], 2));
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.successor(1, 0), Some(0));
        assert_eq!(g.successor(2, 0), None);
    }

    #[test]
    fn core_graph_of_aa_and_b() {
        // Hand fold: aa contributes base ->a v ->a base, b a loop at base.
        let g = core_graph(2, &words(&["aa", "b"], 2));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.successor(1, 0), Some(1));
        assert_eq!(g.successor(1, 1), Some(0));
        assert_eq!(g.successor(2, 0), Some(0));
        assert_eq!(g.successor(2, 1), None);
    }

    #[test]
    fn trace_loop_does_not_grow() {
        let mut g = core_graph(2, &words(&["a"], 2));
        let end = g.trace_and_grow(&w("a", 2));
        assert_eq!(end, 0);
        assert_eq!(g.vertex_count(), 1);
    }

    #[test]
    fn trace_grows_missing_edge() {
        let mut g = core_graph(2, &words(&["a"], 2));
        let end = g.trace_and_grow(&w("b", 2));
        assert_eq!(end, 1);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.successor(2, 0), Some(1));
    }

    #[test]
    fn trace_grows_a_path() {
        let mut g = core_graph(2, &words(&["a"], 2));
        let end = g.trace_and_grow(&w("ba", 2));
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.successor(2, 0), Some(1));
        assert_eq!(g.successor(1, 1), Some(2));
        assert_eq!(end, 2);
    }

    #[test]
    fn backward_letters_grow_reversed_edges() {
        let mut g = StallingsGraph::single_vertex(2);
        let end = g.trace_and_grow(&w("A", 2));
        assert_eq!(end, 1);
        assert_eq!(g.successor(1, 1), Some(0));
    }

    #[test]
    fn retracing_is_idempotent() {
        let mut g = core_graph(2, &words(&["a", "baB"], 2));
        let first = g.trace_and_grow(&w("bb", 2));
        let snapshot = g.clone();
        let second = g.trace_and_grow(&w("bb", 2));
        assert_eq!(first, second);
        assert_eq!(g, snapshot);
    }

    #[test]
    fn membership_examples() {
        let h = words(&["a", "baB"], 2);
        assert!(is_member(2, &h, &w("baB", 2)));
        assert!(!is_member(2, &h, &w("b", 2)));
        assert!(is_member(2, &h, &Word::empty()));
    }

    #[test]
    fn covering_and_deficiencies() {
        let mut g = StallingsGraph::single_vertex(2);
        g.add_edge(0, 1, 0);
        g.add_edge(0, 2, 0);
        assert!(g.is_covering());

        let core = core_graph(2, &words(&["a"], 2));
        let report = core.deficiencies(2);
        assert_eq!(report.out_deficient, vec![0]);
        assert_eq!(report.in_deficient, vec![0]);
        assert!(core.deficiencies(1).is_empty());
        assert!(!core.is_covering());
    }

    #[test]
    fn finite_index_detection() {
        assert!(has_finite_index(2, &words(&["a", "b"], 2)));
        assert!(!has_finite_index(2, &words(&["a"], 2)));
        // Index-2 subgroup: the core is a 2-vertex covering.
        let h = words(&["aa", "b", "abA"], 2);
        assert!(has_finite_index(2, &h));
        assert_eq!(core_graph(2, &h).vertex_count(), 2);
    }

    #[test]
    fn canonical_form_is_stable_under_generator_shuffles() {
        let gens = words(&["abA", "bb", "aBab"], 2);
        let reference = core_graph(2, &gens);
        let shuffled = vec![gens[2].clone(), gens[0].clone(), gens[1].clone()];
        assert_eq!(core_graph(2, &shuffled), reference);
        let inverted: Vec<Word> = gens.iter().map(|g| g.inverse()).collect();
        assert_eq!(core_graph(2, &inverted), reference);
    }

    #[test]
    fn folding_is_confluent_on_random_generating_sets() {
        use rand::prelude::*;
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..40 {
            let rank = rng.random_range(2..=3);
            let count = rng.random_range(1..=4);
            let gens: Vec<Word> = (0..count)
                .map(|_| {
                    let len = rng.random_range(0..=6);
                    Word::from_letters((0..len).map(|_| {
                        Letter::new(
                            rng.random_range(1..=rank),
                            if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus },
                        )
                    }))
                })
                .collect();
            let reference = core_graph(rank, &gens);
            let mut variant = gens.clone();
            variant.shuffle(&mut rng);
            for g in variant.iter_mut() {
                if rng.random_bool(0.5) {
                    *g = g.inverse();
                }
            }
            assert_eq!(core_graph(rank, &variant), reference, "gens {gens:?}");
        }
    }

    #[test]
    fn deficiency_lists_balance() {
        let mut g = core_graph(3, &words(&["abc", "aCb"], 3));
        g.trace_and_grow(&w("cab", 3));
        for label in 1..=3 {
            let report = g.deficiencies(label);
            assert_eq!(report.out_deficient.len(), report.in_deficient.len());
        }
    }

    #[test]
    fn membership_accepts_generator_products() {
        use std::collections::HashSet;
        let h = words(&["ab", "aab", "Aba"], 2);
        let core = core_graph(2, &h);
        // Every product of up to five generators and inverses stays inside.
        let mut members: HashSet<Word> = HashSet::from([Word::empty()]);
        let mut frontier = vec![Word::empty()];
        for _ in 0..5 {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &h {
                    for factor in [g.clone(), g.inverse()] {
                        let product = m.concat(&factor);
                        if members.insert(product.clone()) {
                            next.push(product);
                        }
                    }
                }
            }
            frontier = next;
        }
        for m in &members {
            assert!(core.accepts(m), "product {m} should be a member");
        }
    }
}
