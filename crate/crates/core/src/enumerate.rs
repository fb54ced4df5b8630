//! Bounded depth-first enumeration of simple paths and circuits.
//!
//! Used by the exhaustive oracle and by the verifier. Every enumeration is
//! deterministic: edges are explored in increasing id order.

use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::walk::{Walk, WalkKind};

/// Upper bound on how many walks an enumeration may report.
#[derive(Debug, Clone)]
pub struct Budget {
    remaining: usize,
    truncated: bool,
}

impl Budget {
    pub fn new(limit: usize) -> Self {
        Budget {
            remaining: limit,
            truncated: false,
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(usize::MAX)
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Consumes one unit; false (and truncated) once exhausted.
    pub fn spend(&mut self) -> bool {
        if self.remaining == 0 {
            self.truncated = true;
            false
        } else {
            self.remaining -= 1;
            true
        }
    }
}

/// Partial path state handed to the step filter.
pub struct Frontier<'a> {
    pub vertices: &'a [VertexId],
    pub edges: &'a [EdgeId],
}

/// Enumerates simple paths with at least one edge starting at `start`,
/// with at most `max_len` edges. `step` decides whether edge `e` leading to
/// `w` may extend the current path; `visit` sees every accepted path.
/// Loops never appear on paths.
pub fn for_each_path_from(
    g: &Multigraph,
    start: VertexId,
    max_len: usize,
    budget: &mut Budget,
    step: &mut dyn FnMut(&Frontier<'_>, EdgeId, VertexId) -> bool,
    visit: &mut dyn FnMut(&Walk),
) {
    let mut on_path = vec![false; g.vertex_count()];
    on_path[start] = true;
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    extend(g, max_len, budget, step, visit, &mut on_path, &mut vertices, &mut edges);
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Multigraph,
    max_len: usize,
    budget: &mut Budget,
    step: &mut dyn FnMut(&Frontier<'_>, EdgeId, VertexId) -> bool,
    visit: &mut dyn FnMut(&Walk),
    on_path: &mut [bool],
    vertices: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
) {
    if edges.len() >= max_len || budget.truncated {
        return;
    }
    let at = *vertices.last().unwrap();
    for &e in g.incident(at) {
        let w = g.opposite(e, at);
        if on_path[w] {
            continue;
        }
        let frontier = Frontier { vertices, edges };
        if !step(&frontier, e, w) {
            continue;
        }
        if !budget.spend() {
            return;
        }
        on_path[w] = true;
        vertices.push(w);
        edges.push(e);
        visit(&Walk::from_parts(vertices.clone(), edges.clone(), WalkKind::Path));
        extend(g, max_len, budget, step, visit, on_path, vertices, edges);
        edges.pop();
        vertices.pop();
        on_path[w] = false;
    }
}

/// All simple paths between `x` and `y` with at most `max_len` edges.
pub fn simple_paths_between(
    g: &Multigraph,
    x: VertexId,
    y: VertexId,
    max_len: usize,
    budget: &mut Budget,
) -> Vec<Walk> {
    let mut found = Vec::new();
    // a path may not pass through y
    for_each_path_from(
        g,
        x,
        max_len,
        budget,
        &mut |fr, _, _| *fr.vertices.last().unwrap() != y,
        &mut |w| {
            if w.end() == y {
                found.push(w.clone());
            }
        },
    );
    found
}

/// Every circuit through `x` with at most `max_len` edges, each reported once.
pub fn circuits_through(g: &Multigraph, x: VertexId, max_len: usize, budget: &mut Budget) -> Vec<Walk> {
    let mut found = Vec::new();
    collect_circuits(g, x, max_len, budget, &|_| true, &mut found);
    found
}

/// Every circuit of `g` with at most `max_len` edges, each reported once
/// (rooted at its smallest vertex).
pub fn all_circuits(g: &Multigraph, max_len: usize, budget: &mut Budget) -> Vec<Walk> {
    let mut found = Vec::new();
    for s in g.vertices() {
        collect_circuits(g, s, max_len, budget, &|v| v > s, &mut found);
    }
    found
}

fn collect_circuits(
    g: &Multigraph,
    root: VertexId,
    max_len: usize,
    budget: &mut Budget,
    allowed: &dyn Fn(VertexId) -> bool,
    found: &mut Vec<Walk>,
) {
    if max_len == 0 {
        return;
    }
    for &e in g.incident(root) {
        if g.is_loop(e) && budget.spend() {
            found.push(Walk::from_parts(vec![root, root], vec![e], WalkKind::Circuit));
        }
    }
    let mut extra = Vec::new();
    for_each_path_from(g, root, max_len - 1, budget, &mut |_, _, w| allowed(w), &mut |path| {
        let first = path.edges()[0];
        let tail = path.end();
        for &e in g.incident(tail) {
            // orientation is fixed by requiring the closing edge to exceed the first
            if e > first && g.opposite(e, tail) == root {
                let mut vs = path.vertices().to_vec();
                vs.push(root);
                let mut es = path.edges().to_vec();
                es.push(e);
                extra.push(Walk::from_parts(vs, es, WalkKind::Circuit));
            }
        }
    });
    for c in extra {
        if !budget.spend() {
            break;
        }
        found.push(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_in_c4() {
        let g = Multigraph::with_default_labels(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let paths = simple_paths_between(&g, 0, 2, 10, &mut Budget::unlimited());
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn circuits_counted_once() {
        let c4 = Multigraph::with_default_labels(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(all_circuits(&c4, 10, &mut Budget::unlimited()).len(), 1);
        assert_eq!(circuits_through(&c4, 2, 10, &mut Budget::unlimited()).len(), 1);
        assert!(all_circuits(&c4, 3, &mut Budget::unlimited()).is_empty());

        // K4 has 7 circuits: 4 triangles and 3 four-cycles
        let k4 = Multigraph::with_default_labels(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(all_circuits(&k4, 10, &mut Budget::unlimited()).len(), 7);

        let multi = Multigraph::with_default_labels(2, vec![(0, 1), (0, 1), (1, 1)]).unwrap();
        let cs = all_circuits(&multi, 10, &mut Budget::unlimited());
        assert_eq!(cs.len(), 2);
        for c in &cs {
            Walk::circuit(&multi, c.vertices().to_vec(), c.edges().to_vec()).unwrap();
        }
    }

    #[test]
    fn budget_truncates() {
        let k4 = Multigraph::with_default_labels(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mut budget = Budget::new(3);
        let mut seen = 0;
        for_each_path_from(&k4, 0, 10, &mut budget, &mut |_, _, _| true, &mut |_| seen += 1);
        assert_eq!(seen, 3);
        assert!(budget.truncated());
    }
}
