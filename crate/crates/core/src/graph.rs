//! Associated graphs, perfect elimination orderings and sparsity.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::field::{Field, Rational};
use crate::poly::Polynomial;

/// Undirected simple graph on variable indices, optionally edge-weighted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AssociatedGraph {
    adj: BTreeMap<usize, BTreeSet<usize>>,
    weights: Option<BTreeMap<(usize, usize), u32>>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl AssociatedGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_edges(vertices: impl IntoIterator<Item = usize>, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty();
        for v in vertices {
            g.add_vertex(v);
        }
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: usize) {
        self.adj.entry(v).or_default();
    }

    /// Adds an edge (and its endpoints). Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.add_vertex(u);
        self.add_vertex(v);
        if u != v {
            self.adj.get_mut(&u).expect("present").insert(v);
            self.adj.get_mut(&v).expect("present").insert(u);
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.adj.keys().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        self.weights.as_ref()?.get(&key(u, v)).copied()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn total_weight(&self) -> u64 {
        match &self.weights {
            Some(w) => w.values().map(|&x| x as u64).sum(),
            None => self.num_edges() as u64,
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.num_vertices();
        self.num_edges() == n * n.saturating_sub(1) / 2
    }

    /// Whether `ascending` (smallest first) is a perfect elimination ordering:
    /// every vertex together with its smaller neighbours forms a clique.
    /// Entries that are not vertices are ignored; every vertex must be listed.
    pub fn is_peo(&self, ascending: &[usize]) -> bool {
        let mut pos = BTreeMap::new();
        for (i, &v) in ascending.iter().enumerate() {
            if self.has_vertex(v) && pos.insert(v, i).is_some() {
                return false;
            }
        }
        if pos.len() != self.num_vertices() {
            return false;
        }
        for (&v, ns) in &self.adj {
            let lower: Vec<usize> = ns.iter().copied().filter(|u| pos[u] < pos[&v]).collect();
            for (i, &a) in lower.iter().enumerate() {
                for &b in &lower[i + 1..] {
                    if !self.has_edge(a, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Copy without weights.
    pub fn unweighted(&self) -> Self {
        Self {
            adj: self.adj.clone(),
            weights: None,
        }
    }

    /// DOT rendering with deterministic vertex order; weights become edge labels.
    pub fn to_dot<S: AsRef<str>>(&self, names: &[S]) -> String {
        let name = |v: usize| names.get(v).map_or_else(|| format!("v{v}"), |s| s.as_ref().to_string());
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            out.push_str(&format!("  \"{}\";\n", name(v)));
        }
        for (u, v) in self.edges() {
            match self.weight(u, v) {
                Some(w) => out.push_str(&format!("  \"{}\" -- \"{}\" [label=\"{w}\"];\n", name(u), name(v))),
                None => out.push_str(&format!("  \"{}\" -- \"{}\";\n", name(u), name(v))),
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `G(F)`: vertices are the variables occurring in `F`, edges join variables
/// occurring together in some member. With `weighted`, each edge counts the
/// members containing both endpoints.
pub fn associated_graph<F: Field>(polys: &[Polynomial<F>], weighted: bool) -> AssociatedGraph {
    let mut g = AssociatedGraph::empty();
    let mut w: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for p in polys {
        let s: Vec<usize> = p.support().into_iter().collect();
        for (i, &a) in s.iter().enumerate() {
            g.add_vertex(a);
            for &b in &s[i + 1..] {
                g.add_edge(a, b);
                *w.entry(key(a, b)).or_default() += 1;
            }
        }
    }
    if weighted {
        g.weights = Some(w);
    }
    g
}

/// Maximum cardinality search followed by an explicit clique check.
///
/// Returns the visit order (smallest variable first) when it is a perfect
/// elimination ordering, which happens exactly when the graph is chordal.
pub fn mcs_peo(g: &AssociatedGraph) -> Option<Vec<usize>> {
    let mut weight: BTreeMap<usize, usize> = g.vertices().map(|v| (v, 0)).collect();
    let mut order = Vec::with_capacity(g.num_vertices());
    while !weight.is_empty() {
        // Largest weight, ties to the smallest index.
        let (&v, _) = weight
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .expect("nonempty");
        weight.remove(&v);
        for u in g.neighbors(v) {
            if let Some(w) = weight.get_mut(&u) {
                *w += 1;
            }
        }
        order.push(v);
    }
    g.is_peo(&order).then_some(order)
}

/// A chordal supergraph of `g` on the same vertices, with a perfect
/// elimination ordering of it.
///
/// Chordal inputs are returned unchanged (without weights). Otherwise the
/// elimination game runs with minimum-degree selection, ties to the smallest
/// index; the ordering is the elimination sequence reversed.
pub fn chordal_completion(g: &AssociatedGraph) -> (AssociatedGraph, Vec<usize>) {
    if let Some(order) = mcs_peo(g) {
        return (g.unweighted(), order);
    }
    let mut filled = g.unweighted();
    let mut work = g.unweighted();
    let mut sequence = Vec::with_capacity(g.num_vertices());
    while work.num_vertices() > 0 {
        let v = work
            .vertices()
            .min_by_key(|&v| (work.degree(v), v))
            .expect("nonempty");
        let ns: Vec<usize> = work.neighbors(v).collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                filled.add_edge(a, b);
                work.add_edge(a, b);
            }
        }
        for &u in &ns {
            work.adj.get_mut(&u).expect("present").remove(&v);
        }
        work.adj.remove(&v);
        sequence.push(v);
    }
    sequence.reverse();
    debug_assert!(filled.is_peo(&sequence));
    (filled, sequence)
}

pub fn is_subgraph(a: &AssociatedGraph, b: &AssociatedGraph) -> bool {
    a.adj.iter().all(|(v, ns)| {
        b.adj
            .get(v)
            .is_some_and(|bn| ns.iter().all(|u| bn.contains(u)))
    })
}

fn pairs(n: usize) -> BigInt {
    BigInt::from(n * n.saturating_sub(1) / 2)
}

/// `|E| / C(|V|, 2)`; graphs with fewer than two vertices count as complete.
pub fn graph_sparsity(g: &AssociatedGraph) -> Rational {
    let n = g.num_vertices();
    if n < 2 {
        return Rational::from_integer(1.into());
    }
    Rational::new(BigInt::from(g.num_edges()), pairs(n))
}

pub fn variable_sparsity<F: Field>(polys: &[Polynomial<F>]) -> Rational {
    graph_sparsity(&associated_graph(polys, false))
}

/// `(sum of edge weights) / (#F * C(|V|, 2))`; zero for an empty set.
pub fn weighted_variable_sparsity<F: Field>(polys: &[Polynomial<F>]) -> Rational {
    if polys.is_empty() {
        return Rational::from_integer(0.into());
    }
    let g = associated_graph(polys, true);
    let n = g.num_vertices();
    if n < 2 {
        return Rational::from_integer(1.into());
    }
    Rational::new(
        BigInt::from(g.total_weight()),
        BigInt::from(polys.len()) * pairs(n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polys_indexed;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn example_p() -> Vec<Polynomial<crate::field::Rationals>> {
        parse_polys_indexed("x2+x1; x3+x1; x4^2+x2; x4^3+x3; x5+x2; x5+x3+x2", 5).unwrap()
    }

    fn example_q() -> Vec<Polynomial<crate::field::Rationals>> {
        parse_polys_indexed("x2+x1; x3+x1; x3; x4^2+x2; x4^3+x3; x5+x2", 5).unwrap()
    }

    fn cycle(n: usize) -> AssociatedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        AssociatedGraph::from_edges(0..n, &edges)
    }

    /// Exhaustive search for an induced cycle of length at least four.
    fn has_chordless_cycle(g: &AssociatedGraph) -> bool {
        fn extend(g: &AssociatedGraph, path: &mut Vec<usize>) -> bool {
            let (first, last) = (path[0], *path.last().unwrap());
            for u in g.neighbors(last).collect::<Vec<_>>() {
                if u <= first || path.contains(&u) {
                    continue;
                }
                // No chords from u back into the interior of the path.
                let chordless = path[..path.len() - 1]
                    .iter()
                    .skip(1)
                    .all(|&w| !g.has_edge(u, w));
                if !chordless {
                    continue;
                }
                path.push(u);
                let closes = path.len() >= 3 && g.has_edge(u, first);
                if closes && path.len() >= 4 {
                    return true;
                }
                if !closes && extend(g, path) {
                    return true;
                }
                path.pop();
            }
            false
        }
        g.vertices().any(|v| extend(g, &mut vec![v]))
    }

    fn random_graph(n: usize, mask: u64) -> AssociatedGraph {
        let mut g = AssociatedGraph::empty();
        let mut bit = 0;
        for v in 0..n {
            g.add_vertex(v);
            for u in 0..v {
                if mask >> (bit % 64) & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    #[test]
    fn graphs_of_the_reduction_example() {
        let gp = associated_graph(&example_p(), false);
        assert_eq!(
            gp.edges(),
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
        );
        let gq = associated_graph(&example_q(), false);
        assert_eq!(gq.num_vertices(), 5);
        assert!(!gq.has_edge(1, 2));
        assert_eq!(gq.num_edges(), 5);
        assert!(is_subgraph(&gq, &gp));
        assert!(!is_subgraph(&gp, &gq));
    }

    #[test]
    fn single_polynomial_gives_clique() {
        let f = parse_polys_indexed("x1*x2*x3", 3).unwrap();
        let g = associated_graph(&f, false);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn chordality_of_worked_graphs() {
        let gp = associated_graph(&example_p(), false);
        assert!(gp.is_peo(&[0, 1, 2, 3, 4]));
        assert!(mcs_peo(&gp).is_some());
        let gq = associated_graph(&example_q(), false);
        assert!(mcs_peo(&gq).is_none());
        assert!(mcs_peo(&cycle(4)).is_none());

        let f = parse_polys_indexed("x2+x1+2; (x2+2)*x3+x1; (x3+x2)*x4 + x3 - 1; x4+x2", 4).unwrap();
        assert!(associated_graph(&f, false).is_peo(&[0, 1, 2, 3]));
    }

    #[test]
    fn completion_of_four_cycle_adds_one_chord() {
        let (h, order) = chordal_completion(&cycle(4));
        assert_eq!(h.num_edges(), 5);
        assert!(h.is_peo(&order));
        assert!(is_subgraph(&cycle(4), &h));
    }

    #[test]
    fn completion_of_the_reduced_graph() {
        let gq = associated_graph(&example_q(), false);
        let (h, order) = chordal_completion(&gq);
        assert!(is_subgraph(&gq, &h));
        assert!(h.is_peo(&order));
        assert!(mcs_peo(&h).is_some());
        let gp = associated_graph(&example_p(), false);
        assert_eq!(chordal_completion(&gp).0, gp);
    }

    #[test]
    fn sparsity_values() {
        let f = parse_polys_indexed("x1*x2", 2).unwrap();
        assert_eq!(variable_sparsity(&f), q(1, 1));
        assert_eq!(weighted_variable_sparsity(&f), q(1, 1));
        let two = parse_polys_indexed("x1+x2; x1*x2+1", 2).unwrap();
        assert_eq!(weighted_variable_sparsity(&two), q(1, 1));
        let none: Vec<Polynomial<crate::field::Rationals>> = Vec::new();
        assert_eq!(weighted_variable_sparsity(&none), q(0, 1));
        assert_eq!(variable_sparsity(&parse_polys_indexed("x1", 2).unwrap()), q(1, 1));
    }

    #[test]
    fn weighted_sparsity_worked_example() {
        let f = parse_polys_indexed(
            "x1*x2*x3*x4*x5*x6 - 1; x1^2+x2; x2^2+x3; x3^2+x4; x4^2+x5; x5^2+x6",
            6,
        )
        .unwrap();
        assert_eq!(f.len(), 6);
        let g = associated_graph(&f, true);
        assert_eq!(g.total_weight(), 20);
        assert_eq!(variable_sparsity(&f), q(1, 1));
        assert_eq!(weighted_variable_sparsity(&f), q(20, 90));
        // A constant 4 in place of x4 in the fourth member drops one unit of weight.
        let variant = parse_polys_indexed(
            "x1*x2*x3*x4*x5*x6 - 1; x1^2+x2; x2^2+x3; x3^2+4; x4^2+x5; x5^2+x6",
            6,
        )
        .unwrap();
        assert_eq!(weighted_variable_sparsity(&variant), q(19, 90));
    }

    #[test]
    fn dot_export_is_deterministic() {
        let f = parse_polys_indexed("x1*x2; x2*x3; x1*x2+1", 3).unwrap();
        let dot = associated_graph(&f, true).to_dot(&["a", "b", "c"]);
        assert_eq!(
            dot,
            "graph G {\n  \"a\";\n  \"b\";\n  \"c\";\n  \"a\" -- \"b\" [label=\"2\"];\n  \"b\" -- \"c\" [label=\"1\"];\n}\n"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn mcs_agrees_with_cycle_search(n in 1usize..=8, mask in any::<u64>()) {
            let g = random_graph(n, mask);
            let peo = mcs_peo(&g);
            if let Some(order) = &peo {
                prop_assert!(g.is_peo(order));
            }
            prop_assert_eq!(peo.is_some(), !has_chordless_cycle(&g));
        }

        #[test]
        fn completion_is_chordal_supergraph(n in 1usize..=10, mask in any::<u64>()) {
            let g = random_graph(n, mask);
            let (h, order) = chordal_completion(&g);
            prop_assert!(is_subgraph(&g, &h));
            prop_assert!(h.is_peo(&order));
            prop_assert!(mcs_peo(&h).is_some());
            prop_assert_eq!(h.vertex_set(), g.vertex_set());
        }

        #[test]
        fn sparsity_bounds(n in 2usize..=12, mask in any::<u64>()) {
            let g = random_graph(n, mask);
            let s = graph_sparsity(&g);
            prop_assert!(s >= q(0, 1) && s <= q(1, 1));
            prop_assert_eq!(s == q(1, 1), g.is_complete());
        }
    }
}
