//! Seeded generators for random polynomials, graphs and systems.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{Field, PrimeField, Rational, Rationals};
use crate::graph::AssociatedGraph;
use crate::poly::{Exponents, Polynomial};

/// Shape of a random polynomial.
#[derive(Clone, Debug)]
pub struct PolyShape {
    /// Variables allowed to appear.
    pub vars: Vec<usize>,
    pub max_total_degree: u32,
    pub max_terms: usize,
    /// Integer coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
}

fn random_exponents<R: Rng>(rng: &mut R, nvars: usize, shape: &PolyShape) -> Exponents {
    let mut e = vec![0; nvars];
    if shape.vars.is_empty() {
        return e;
    }
    let total = rng.gen_range(0..=shape.max_total_degree);
    for _ in 0..total {
        let v = *shape.vars.choose(rng).expect("nonempty");
        e[v] += 1;
    }
    e
}

/// Random polynomial with integer coefficients mapped into `field`. May be zero.
pub fn random_poly<F: Field, R: Rng>(rng: &mut R, field: &F, nvars: usize, shape: &PolyShape) -> Polynomial<F> {
    let nterms = rng.gen_range(1..=shape.max_terms.max(1));
    let terms = (0..nterms).map(|_| {
        let c = rng.gen_range(-shape.coeff_bound..=shape.coeff_bound);
        (random_exponents(rng, nvars, shape), field.from_i64(c))
    });
    Polynomial::from_terms(field, nvars, terms.collect::<Vec<_>>())
}

/// Random polynomial whose support is exactly `shape.vars` (nonzero by construction).
pub fn random_poly_with_support<F: Field, R: Rng>(
    rng: &mut R,
    field: &F,
    nvars: usize,
    shape: &PolyShape,
) -> Polynomial<F> {
    loop {
        let mut p = random_poly(rng, field, nvars, shape);
        // One term through each required variable keeps the support full.
        for &v in &shape.vars {
            if !p.contains_var(v) {
                let d = rng.gen_range(1..=shape.max_total_degree.max(1));
                let c = field.from_i64(rng.gen_range(1..=shape.coeff_bound.max(1)));
                p = &p + &Polynomial::var_pow(field, nvars, v, d).scale(&c);
            }
        }
        if p.support() == shape.vars.iter().copied().collect::<BTreeSet<_>>() {
            return p;
        }
    }
}

pub fn random_rational_poly<R: Rng>(rng: &mut R, nvars: usize, shape: &PolyShape) -> Polynomial<Rationals> {
    let q = Rationals;
    let nterms = rng.gen_range(1..=shape.max_terms.max(1));
    let terms = (0..nterms).map(|_| {
        let n = rng.gen_range(-shape.coeff_bound..=shape.coeff_bound);
        let d = rng.gen_range(1..=3i64);
        (random_exponents(rng, nvars, shape), Rational::new(n.into(), d.into()))
    });
    Polynomial::from_terms(&q, nvars, terms.collect::<Vec<_>>())
}

/// Random chordal graph on `0..n` built so that the natural order is a
/// perfect elimination ordering: each new vertex attaches to a random subset
/// of a random maximal clique seen so far.
pub fn random_chordal_graph<R: Rng>(rng: &mut R, n: usize, attach_prob: f64) -> AssociatedGraph {
    let mut g = AssociatedGraph::empty();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        g.add_vertex(v);
        let mut lower = Vec::new();
        if let Some(c) = cliques.choose(rng) {
            lower = c.iter().copied().filter(|_| rng.gen_bool(attach_prob)).collect();
        }
        for &u in &lower {
            g.add_edge(u, v);
        }
        let mut clique = lower.clone();
        clique.push(v);
        cliques.retain(|c| !c.iter().all(|x| lower.contains(x)));
        cliques.push(clique);
    }
    g
}

/// A random system whose associated graph is exactly a random chordal graph
/// on `0..n` with the natural order as a perfect elimination ordering.
///
/// Each vertex contributes one polynomial supported on its closed lower
/// neighbourhood; `extra` further polynomials use random sub-cliques.
pub fn random_chordal_system<F: Field, R: Rng>(
    rng: &mut R,
    field: &F,
    n: usize,
    max_degree: u32,
    extra: usize,
) -> (Vec<Polynomial<F>>, AssociatedGraph) {
    let g = random_chordal_graph(rng, n, 0.6);
    let mut cliques = Vec::new();
    for v in 0..n {
        let mut c: Vec<usize> = g.neighbors(v).filter(|&u| u < v).collect();
        c.push(v);
        cliques.push(c);
    }
    let mut polys = Vec::new();
    for c in &cliques {
        let shape = PolyShape {
            vars: c.clone(),
            max_total_degree: max_degree,
            max_terms: 3,
            coeff_bound: 3,
        };
        polys.push(random_poly_with_support(rng, field, n, &shape));
    }
    for _ in 0..extra {
        let c = cliques.choose(rng).expect("n >= 1");
        let sub: Vec<usize> = c.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
        if sub.is_empty() {
            continue;
        }
        let shape = PolyShape {
            vars: sub,
            max_total_degree: max_degree,
            max_terms: 3,
            coeff_bound: 3,
        };
        polys.push(random_poly_with_support(rng, field, n, &shape));
    }
    (polys, g)
}

/// A random system of `count` polynomials in `n` variables over GF(p).
pub fn random_system<R: Rng>(
    rng: &mut R,
    field: &PrimeField,
    n: usize,
    count: usize,
    max_degree: u32,
) -> Vec<Polynomial<PrimeField>> {
    let all: Vec<usize> = (0..n).collect();
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=n);
            let vars: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
            let shape = PolyShape {
                vars,
                max_total_degree: max_degree,
                max_terms: 3,
                coeff_bound: field.modulus() as i64,
            };
            random_poly(rng, field, n, &shape)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::mcs_peo;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chordal_generator_respects_natural_peo() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..9 {
            let (f, g) = random_chordal_system(&mut rng, &PrimeField::new(7).unwrap(), n, 3, 2);
            assert!(g.is_peo(&(0..n).collect::<Vec<_>>()));
            assert!(mcs_peo(&g).is_some());
            let h = crate::graph::associated_graph(&f, false);
            assert_eq!(h.edges(), g.edges());
        }
    }
}
