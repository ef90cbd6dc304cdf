//! Ordering selection from the chordal structure of the input, followed by
//! decomposition under the chosen ordering.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decompose::{decompose, Algorithm, Config, DecompositionTree, TriangularSystem};
use crate::error::Result;
use crate::field::{Field, Rational};
use crate::graph::{associated_graph, chordal_completion, mcs_peo, variable_sparsity};
use crate::poly::Polynomial;
use crate::vars::VarTable;

/// Default sparsity threshold below which the chordal ordering is used.
pub fn default_threshold() -> Rational {
    Rational::new(3.into(), 10.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingSource {
    /// A perfect elimination ordering of the associated graph itself.
    Peo,
    /// A perfect elimination ordering of a chordal completion.
    CompletionPeo,
    /// The input was not sparse enough; a seeded random ordering.
    Random,
}

#[derive(Clone, Debug)]
pub struct SparseDecompositionReport<F: Field> {
    /// Ordering the systems are expressed in (ranks index this table).
    pub chosen_ordering: VarTable,
    pub source: OrderingSource,
    pub used_completion: bool,
    pub sparsity: Rational,
    pub threshold: Rational,
    pub systems: Vec<TriangularSystem<F>>,
    pub tree: DecompositionTree<F>,
    pub nodes_processed: usize,
}

/// Ascending ranks (in the input ordering) forming a perfect elimination
/// ordering of `G(F)` or, if that graph is not chordal, of its min-degree
/// completion. Variables outside the support come first.
pub fn chordal_ordering<F: Field>(polys: &[Polynomial<F>], n: usize) -> (Vec<usize>, bool) {
    let g = associated_graph(polys, false);
    let (peo, completed) = match mcs_peo(&g) {
        Some(order) => (order, false),
        None => (chordal_completion(&g).1, true),
    };
    let mut ascending: Vec<usize> = (0..n).filter(|v| !g.has_vertex(*v)).collect();
    ascending.extend(peo);
    (ascending, completed)
}

/// A uniformly random permutation of `0..n`, determined by `seed`.
pub fn random_ordering(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Picks the ordering by comparing the variable sparsity of `polys` with
/// `threshold`, re-indexes, and decomposes.
pub fn sparse_decompose<F: Field>(
    polys: &[Polynomial<F>],
    vars: &VarTable,
    threshold: &Rational,
    alg: Algorithm,
    seed: u64,
    config: &Config,
) -> Result<SparseDecompositionReport<F>> {
    let n = vars.len();
    let sparsity = variable_sparsity(polys);
    let (ascending, source) = if &sparsity < threshold {
        let (order, completed) = chordal_ordering(polys, n);
        let source = if completed {
            OrderingSource::CompletionPeo
        } else {
            OrderingSource::Peo
        };
        (order, source)
    } else {
        (random_ordering(n, seed), OrderingSource::Random)
    };
    let chosen = vars.permuted(&ascending)?;
    let translated = vars.translate(polys, &chosen);
    let d = decompose(&translated, &chosen, alg, config)?;
    Ok(SparseDecompositionReport {
        chosen_ordering: chosen,
        source,
        used_completion: source == OrderingSource::CompletionPeo,
        sparsity,
        threshold: threshold.clone(),
        systems: d.systems,
        tree: d.tree,
        nodes_processed: d.nodes_processed,
    })
}
