//! Graphviz DOT rendering of labelled graphs.

use altquot::StallingsGraph;

/// Renders the graph as a DOT digraph. Vertices are renumbered into
/// canonical breadth-first order from the base, so isomorphic inputs produce
/// identical output; the base vertex is drawn with a double circle and edges
/// carry their generator letter.
pub fn to_dot(graph: &StallingsGraph) -> String {
    let canonical = graph.canonical_form();
    let mut out = String::from("digraph stallings {\n");
    for v in 0..canonical.vertex_count() {
        if v == canonical.base() {
            out.push_str(&format!("    {v} [shape=doublecircle];\n"));
        } else {
            out.push_str(&format!("    {v} [shape=circle];\n"));
        }
    }
    for (from, label, to) in canonical.edges() {
        let letter = (b'a' + (label - 1) as u8) as char;
        out.push_str(&format!("    {from} -> {to} [label=\"{letter}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use altquot::core_graph;
    use altquot::Word;

    #[test]
    fn single_loop_core() {
        let graph = core_graph(2, &[Word::parse("a", 2).unwrap()]);
        let dot = to_dot(&graph);
        assert_eq!(
            dot,
            "digraph stallings {\n    0 [shape=doublecircle];\n    0 -> 0 [label=\"a\"];\n}\n"
        );
    }

    #[test]
    fn edges_carry_letters_and_base_is_marked() {
        let graph = core_graph(2, &[Word::parse("ab", 2).unwrap()]);
        let dot = to_dot(&graph);
        assert!(dot.contains("0 [shape=doublecircle];"));
        assert!(dot.contains("1 [shape=circle];"));
        assert!(dot.contains("0 -> 1 [label=\"a\"];"));
        assert!(dot.contains("1 -> 0 [label=\"b\"];"));
    }
}
