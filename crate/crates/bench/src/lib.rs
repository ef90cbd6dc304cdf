//! Inputs for the ordering benchmarks under `benches/`.

use chordal_td::sparse::{chordal_ordering, random_ordering};
use chordal_td::{gen_family, Family, Polynomial, Rationals, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    /// Perfect elimination ordering of the associated graph.
    Peo,
    /// Seeded uniformly random ordering.
    Random(u64),
}

impl Ordering {
    pub fn label(self) -> String {
        match self {
            Ordering::Peo => "peo".into(),
            Ordering::Random(seed) => format!("random-{seed}"),
        }
    }
}

/// A family member re-indexed so that its ranks follow `ordering`.
pub fn instance(family: Family, i: usize, ordering: Ordering) -> (Vec<Polynomial<Rationals>>, VarTable) {
    let (f, vars) = gen_family(&Rationals, family, i).expect("family index is positive");
    let ascending = match ordering {
        Ordering::Peo => chordal_ordering(&f, vars.len()).0,
        Ordering::Random(seed) => random_ordering(vars.len(), seed),
    };
    let target = vars.permuted(&ascending).expect("a permutation of the ranks");
    (vars.translate(&f, &target), target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chordal_td::associated_graph;

    #[test]
    fn peo_instance_is_chordal_in_rank_order() {
        let (f, vars) = instance(Family::Adjacent, 4, Ordering::Peo);
        let natural: Vec<usize> = (0..vars.len()).collect();
        assert!(associated_graph(&f, false).is_peo(&natural));
        let (g, _) = instance(Family::Adjacent, 4, Ordering::Random(3));
        assert_eq!(associated_graph(&g, false).num_edges(), associated_graph(&f, false).num_edges());
    }
}
