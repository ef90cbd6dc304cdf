//! Top-down triangular and regular decomposition.
//!
//! A node `(P, Q, k)` holds equations `P`, inequations `Q` and the level `k`
//! still to be processed; every level above `k` carries at most one equation.
//! Nodes are processed level by level from `n` down to `1` with a LIFO
//! worklist per level, and nodes reaching level `0` are harvested as
//! triangular systems `[T, U]`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::elim::{pquo, prem, srs};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::vars::VarTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Pseudo-remainder splitting on initials.
    Wang,
    /// Subresultant regular subchains; triangular output.
    Srs,
    /// Subresultant regular subchains plus inequation handling; regular output.
    Regser,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Wang, Algorithm::Srs, Algorithm::Regser];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Wang => "wang",
            Algorithm::Srs => "srs",
            Algorithm::Regser => "regser",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wang" => Ok(Algorithm::Wang),
            "srs" => Ok(Algorithm::Srs),
            "regser" => Ok(Algorithm::Regser),
            _ => Err(Error::Invalid(format!("unknown algorithm `{s}`"))),
        }
    }
}

/// How to break ties among level-`k` equations of minimal (or maximal) degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotRule {
    /// Lowest total degree of the tail, then earliest in the list.
    #[default]
    TailDegree,
    /// Fewest terms, then smallest in the canonical polynomial order.
    FewestTerms,
    /// Earliest in the node's equation list.
    FirstListed,
    /// Most terms, then greatest in the canonical polynomial order.
    MostTerms,
}

/// Which sequence feeds the subresultant splits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubchainMode {
    /// `H_2 = G` followed by the regular subresultants of `(F, G)`.
    #[default]
    WithDivisor,
    /// Only the regular subresultants. Loses zeros; kept for comparison.
    RegularOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub pivot: PivotRule,
    pub subchain: SubchainMode,
    /// Cap on processed nodes before failing with a resource error.
    pub max_nodes: usize,
    /// Fail with a resource error before splitting a node holding a
    /// polynomial with more terms than this.
    pub max_poly_terms: Option<usize>,
    pub record_tree: bool,
    /// Discard nodes with a nonzero constant equation, a zero inequation, a
    /// polynomial that is both (up to a constant factor) or a monomial
    /// equation in variables forced nonzero by monomial inequations, as soon
    /// as they are created.
    pub prune: bool,
    /// At the current level and below, replace each inequation by its
    /// monomial-free part plus one inequation per variable of its monomial
    /// content, and reduce the monomial content of each equation to the
    /// product of its variables not already forced nonzero. Zero sets are
    /// unchanged; without it repeated pseudo-division can grow exponents
    /// without bound.
    pub strip_monomials: bool,
    /// In the equation/inequation split, first split on the initial of the
    /// smaller-degree polynomial unless it is already known to be nonzero.
    pub regser_ini_guard: bool,
    /// Normalize pseudo-remainders to primitive form.
    pub normalize: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            pivot: PivotRule::default(),
            subchain: SubchainMode::default(),
            max_nodes: 1_000_000,
            max_poly_terms: None,
            record_tree: true,
            prune: true,
            strip_monomials: true,
            regser_ini_guard: true,
            normalize: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node<F: Field> {
    pub p: Vec<Polynomial<F>>,
    pub q: Vec<Polynomial<F>>,
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum BranchLabel {
    Root,
    /// Pseudo-reduction assuming the pivot's initial is nonzero.
    Left,
    /// Pivot replaced by its initial and tail.
    Right,
    /// Subresultant branch `i` of an equation/equation split.
    Srs(usize),
    /// Subresultant branch `i` of an equation/inequation split.
    Reg(usize),
    /// Inequation replaced by its tail, its initial becoming an equation.
    IneqSplit,
    /// Case split on an initial before an equation/inequation split.
    Guard,
    Advance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEvent<F: Field> {
    pub id: usize,
    pub parent: Option<usize>,
    pub label: BranchLabel,
    pub node: Node<F>,
}

/// Append-only log of every node created during a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree<F: Field> {
    pub events: Vec<TreeEvent<F>>,
}

impl<F: Field> Default for DecompositionTree<F> {
    fn default() -> Self {
        Self { events: Vec::new() }
    }
}

/// `[T, U]`: equations with strictly increasing leading variables and inequations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularSystem<F: Field> {
    pub t: Vec<Polynomial<F>>,
    pub u: Vec<Polynomial<F>>,
}

impl<F: Field> TriangularSystem<F> {
    pub fn is_triangular(&self) -> bool {
        self.t.iter().all(|p| !p.is_constant())
            && self.t.windows(2).all(|w| w[0].class() < w[1].class())
    }

    /// For each level, equations and inequations do not both occur.
    pub fn levels_disjoint(&self) -> bool {
        let tl: Vec<usize> = self.t.iter().map(Polynomial::class).collect();
        self.u.iter().all(|q| !tl.contains(&q.class()))
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub vars: VarTable,
    pub algorithm: Algorithm,
    pub systems: Vec<TriangularSystem<F>>,
    pub tree: DecompositionTree<F>,
    pub nodes_processed: usize,
}

/// Members of `polys` whose leading variable is `x_k` (1-based level).
pub fn at_level<F: Field>(polys: &[Polynomial<F>], k: usize) -> Vec<&Polynomial<F>> {
    polys.iter().filter(|p| p.class() == k).collect()
}

/// Smallest `i` such that every level above `i` holds at most one member.
pub fn level<F: Field>(polys: &[Polynomial<F>]) -> usize {
    let top = polys.iter().map(Polynomial::class).max().unwrap_or(0);
    (1..=top)
        .rev()
        .find(|&k| at_level(polys, k).len() > 1)
        .unwrap_or(0)
}

fn insert<F: Field>(set: &mut Vec<Polynomial<F>>, p: Polynomial<F>) {
    if !set.contains(&p) {
        set.push(p);
    }
}

/// Membership up to a nonzero constant factor.
fn contains_assoc<F: Field>(set: &[Polynomial<F>], p: &Polynomial<F>) -> bool {
    let m = p.monic();
    set.iter().any(|s| s.num_terms() == p.num_terms() && s.monic() == m)
}

fn without<F: Field>(set: &[Polynomial<F>], drop: &[&Polynomial<F>]) -> Vec<Polynomial<F>> {
    set.iter().filter(|p| !drop.contains(p)).cloned().collect()
}

/// Replaces `target` in place by `with` (skipping duplicates).
fn replace<F: Field>(set: &[Polynomial<F>], target: &Polynomial<F>, with: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut out = Vec::with_capacity(set.len() + with.len());
    let mut with = Some(with);
    for p in set {
        if p == target {
            for w in with.take().into_iter().flatten() {
                if !set.contains(&w) || &w == target {
                    insert(&mut out, w);
                }
            }
        } else {
            insert(&mut out, p.clone());
        }
    }
    out
}

fn union<F: Field>(set: &[Polynomial<F>], extra: impl IntoIterator<Item = Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut out = set.to_vec();
    for p in extra {
        insert(&mut out, p);
    }
    out
}

fn tail_degree<F: Field>(p: &Polynomial<F>, v: usize) -> Option<u32> {
    let tail = p.tail_in(v);
    (!tail.is_zero()).then(|| tail.total_degree())
}

fn tie_cmp<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize, rule: PivotRule) -> Ordering {
    match rule {
        PivotRule::TailDegree => tail_degree(a, v).cmp(&tail_degree(b, v)),
        PivotRule::FewestTerms => a
            .num_terms()
            .cmp(&b.num_terms())
            .then_with(|| a.canonical_cmp(b)),
        PivotRule::MostTerms => b
            .num_terms()
            .cmp(&a.num_terms())
            .then_with(|| b.canonical_cmp(a)),
        PivotRule::FirstListed => Ordering::Equal,
    }
}

/// Index of the member with minimal degree in `x_v`, ties broken by `rule`
/// and then by list position.
pub fn pick_min_degree<F: Field>(cands: &[&Polynomial<F>], v: usize, rule: PivotRule) -> usize {
    (0..cands.len())
        .min_by(|&i, &j| {
            cands[i]
                .degree_in(v)
                .cmp(&cands[j].degree_in(v))
                .then_with(|| tie_cmp(cands[i], cands[j], v, rule))
                .then(i.cmp(&j))
        })
        .expect("nonempty candidate list")
}

/// Index of the member with maximal degree in `x_v`, ties as in [`pick_min_degree`].
pub fn pick_max_degree<F: Field>(cands: &[&Polynomial<F>], v: usize, rule: PivotRule) -> usize {
    (0..cands.len())
        .min_by(|&i, &j| {
            cands[j]
                .degree_in(v)
                .cmp(&cands[i].degree_in(v))
                .then_with(|| tie_cmp(cands[i], cands[j], v, rule))
                .then(i.cmp(&j))
        })
        .expect("nonempty candidate list")
}

fn maybe_normalize<F: Field>(p: Polynomial<F>, config: &Config) -> Polynomial<F> {
    if config.normalize {
        p.primitive()
    } else {
        p
    }
}

/// Applies the standing simplifications to a freshly built node.
/// Returns `None` when the node is inconsistent (and pruning is on).
fn tidy<F: Field>(mut node: Node<F>, config: &Config) -> Option<Node<F>> {
    node.p.retain(|p| !p.is_zero());
    node.q.retain(|q| !q.is_nonzero_constant());
    if node.q.iter().any(Polynomial::is_zero) {
        return None;
    }
    if config.strip_monomials {
        strip_monomials(&mut node);
        node.q.retain(|q| !q.is_nonzero_constant());
    }
    if config.prune
        && (node.p.iter().any(Polynomial::is_nonzero_constant)
            || node.p.iter().any(|p| contains_assoc(&node.q, p))
            || monomial_conflict(&node))
    {
        return None;
    }
    Some(node)
}

fn nonzero_vars<F: Field>(q: &[Polynomial<F>]) -> BTreeSet<usize> {
    q.iter()
        .filter(|q| q.num_terms() == 1)
        .flat_map(Polynomial::support)
        .collect()
}

fn strip_monomials<F: Field>(node: &mut Node<F>) {
    let k = node.k;
    let mut q = Vec::with_capacity(node.q.len());
    for p in std::mem::take(&mut node.q) {
        let m = p.monomial_content();
        if p.class() > k || m.iter().all(|&e| e == 0) {
            insert(&mut q, p);
            continue;
        }
        for (v, _) in m.iter().enumerate().filter(|(_, &e)| e > 0) {
            insert(&mut q, Polynomial::var(p.field(), p.nvars(), v));
        }
        insert(&mut q, p.div_monomial(&m));
    }
    node.q = q;

    let nonzero = nonzero_vars(&node.q);
    let p = std::mem::take(&mut node.p);
    node.p = union(
        &[],
        p.into_iter().map(|p| {
            if p.class() > k {
                return p;
            }
            let mut m = p.monomial_content();
            for (v, e) in m.iter_mut().enumerate() {
                if *e > 0 && !nonzero.contains(&v) {
                    *e -= 1;
                }
            }
            if m.iter().all(|&e| e == 0) {
                p
            } else {
                p.div_monomial(&m)
            }
        }),
    );
}

/// `p` is a nonzero constant, or its monomial part only involves variables
/// forced nonzero by `q` and its cofactor is (up to a constant) a member of `q`.
fn known_nonzero<F: Field>(q: &[Polynomial<F>], p: &Polynomial<F>) -> bool {
    if p.is_nonzero_constant() || contains_assoc(q, p) {
        return true;
    }
    let m = p.monomial_content();
    if m.iter().all(|&e| e == 0) {
        return false;
    }
    let nonzero = nonzero_vars(q);
    let rest = p.div_monomial(&m);
    m.iter().enumerate().all(|(v, &e)| e == 0 || nonzero.contains(&v))
        && (rest.is_nonzero_constant() || contains_assoc(q, &rest))
}

/// Some equation is a monomial whose variables are all nonzero because they
/// divide monomial inequations.
fn monomial_conflict<F: Field>(node: &Node<F>) -> bool {
    let nonzero = nonzero_vars(&node.q);
    !nonzero.is_empty()
        && node
            .p
            .iter()
            .any(|p| p.num_terms() == 1 && p.support().is_subset(&nonzero))
}

type Children<F> = Vec<(BranchLabel, Node<F>)>;

fn level_var<F: Field>(node: &Node<F>) -> Result<usize> {
    node.k
        .checked_sub(1)
        .ok_or_else(|| Error::Contract("cannot split a node at level 0".into()))
}

/// Wang's split of a node with more than one equation at its level.
/// Children are the left node and, unless the pivot's initial is a nonzero
/// constant, the right node.
pub fn split_wang<F: Field>(node: &Node<F>, config: &Config) -> Result<Children<F>> {
    let v = level_var(node)?;
    let pk = at_level(&node.p, node.k);
    if pk.len() < 2 {
        return Err(Error::Contract(format!(
            "Wang split needs at least two equations at level {}",
            node.k
        )));
    }
    let t = pk[pick_min_degree(&pk, v, config.pivot)].clone();
    let ini = t.ini_in(v);
    let mut out = Vec::with_capacity(2);

    let mut left_p = Vec::with_capacity(node.p.len());
    for p in &node.p {
        if p.class() == node.k && *p != t {
            insert(&mut left_p, maybe_normalize(prem(p, &t, v)?, config));
        } else {
            insert(&mut left_p, p.clone());
        }
    }
    out.push((
        BranchLabel::Left,
        Node {
            p: left_p,
            q: union(&node.q, [ini.clone()]),
            k: node.k,
        },
    ));
    if !ini.is_nonzero_constant() {
        out.push((
            BranchLabel::Right,
            Node {
                p: replace(&node.p, &t, vec![ini, t.tail_in(v)]),
                q: node.q.clone(),
                k: node.k,
            },
        ));
    }
    Ok(out)
}

fn subchain<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize, mode: SubchainMode) -> Result<Vec<Polynomial<F>>> {
    let regular = srs(a, b, v)?;
    Ok(match mode {
        SubchainMode::WithDivisor => std::iter::once(b.clone()).chain(regular).collect(),
        SubchainMode::RegularOnly => regular,
    })
}

/// Subresultant split of a node with more than one equation at its level.
/// The first child is the right node (absent when the pivot's initial is a
/// nonzero constant), followed by one branch per element of the subchain.
pub fn split_srs<F: Field>(node: &Node<F>, config: &Config) -> Result<Children<F>> {
    let v = level_var(node)?;
    let pk = at_level(&node.p, node.k);
    if pk.len() < 2 {
        return Err(Error::Contract(format!(
            "subresultant split needs at least two equations at level {}",
            node.k
        )));
    }
    let i2 = pick_min_degree(&pk, v, config.pivot);
    let t2 = pk[i2].clone();
    let rest: Vec<&Polynomial<F>> = pk.iter().enumerate().filter(|&(i, _)| i != i2).map(|(_, p)| *p).collect();
    let t1 = rest[pick_max_degree(&rest, v, config.pivot)].clone();
    let ini2 = t2.ini_in(v);
    let mut out = Vec::new();
    if !ini2.is_nonzero_constant() {
        out.push((
            BranchLabel::Right,
            Node {
                p: replace(&node.p, &t2, vec![ini2.clone(), t2.tail_in(v)]),
                q: node.q.clone(),
                k: node.k,
            },
        ));
    }
    let h = subchain(&t1, &t2, v, config.subchain)?;
    let base = without(&node.p, &[&t1]);
    for i in 0..h.len() {
        let mut adds = vec![maybe_normalize(h[i].clone(), config)];
        adds.extend(h[i + 1..].iter().map(|x| x.ini_in(v)));
        out.push((
            BranchLabel::Srs(i + 2),
            Node {
                p: replace(&base, &t2, adds),
                q: union(&node.q, [ini2.clone(), h[i].ini_in(v)]),
                k: node.k,
            },
        ));
    }
    Ok(out)
}

/// Regular-decomposition step for a node with at most one equation at its
/// level. Without inequations at the level the only child is the advance node.
pub fn split_regser<F: Field>(node: &Node<F>, config: &Config) -> Result<Children<F>> {
    let v = level_var(node)?;
    let pk = at_level(&node.p, node.k);
    if pk.len() > 1 {
        return Err(Error::Contract(format!(
            "inequation split needs at most one equation at level {}",
            node.k
        )));
    }
    let qk = at_level(&node.q, node.k);
    if qk.is_empty() {
        return Ok(vec![(BranchLabel::Advance, Node { k: node.k - 1, ..node.clone() })]);
    }
    if let Some(&t2) = pk.first() {
        let t2 = t2.clone();
        let t1 = qk[pick_min_degree(&qk, v, config.pivot)].clone();
        let b_is_t2 = t1.degree_in(v) >= t2.degree_in(v);
        let (a, b) = if b_is_t2 { (&t1, &t2) } else { (&t2, &t1) };

        let ini_b = b.ini_in(v);
        if config.regser_ini_guard && !known_nonzero(&node.q, &ini_b) {
            let zero_branch = if b_is_t2 {
                Node {
                    p: replace(&node.p, &t2, vec![ini_b.clone(), t2.tail_in(v)]),
                    q: node.q.clone(),
                    k: node.k,
                }
            } else {
                Node {
                    p: union(&node.p, [ini_b.clone()]),
                    q: replace(&node.q, &t1, vec![t1.tail_in(v)]),
                    k: node.k,
                }
            };
            let nonzero_branch = Node {
                p: node.p.clone(),
                q: union(&node.q, [ini_b]),
                k: node.k,
            };
            return Ok(vec![
                (BranchLabel::Guard, zero_branch),
                (BranchLabel::Guard, nonzero_branch),
            ]);
        }

        let h = subchain(a, b, v, config.subchain)?;
        let mut out = Vec::with_capacity(h.len());
        for i in 0..h.len() {
            let last = i + 1 == h.len();
            let mut adds = vec![pquo(&t2, &h[i], v)?];
            adds.extend(h[i + 1..].iter().map(|x| x.ini_in(v)));
            let q = if last && !h[i].contains_var(v) {
                union(&without(&node.q, &[&t1]), [h[i].ini_in(v)])
            } else {
                union(&node.q, [h[i].ini_in(v)])
            };
            out.push((
                BranchLabel::Reg(i + 2),
                Node {
                    p: replace(&node.p, &t2, adds),
                    q,
                    k: node.k,
                },
            ));
        }
        return Ok(out);
    }

    let mut q = node.q.clone();
    let mut out = Vec::with_capacity(qk.len() + 1);
    for qe in qk {
        out.push((
            BranchLabel::IneqSplit,
            Node {
                p: union(&node.p, [qe.ini_in(v)]),
                q: replace(&q, qe, vec![qe.tail_in(v)]),
                k: node.k,
            },
        ));
        insert(&mut q, qe.ini_in(v));
    }
    out.push((
        BranchLabel::Advance,
        Node {
            p: node.p.clone(),
            q,
            k: node.k - 1,
        },
    ));
    Ok(out)
}

fn children<F: Field>(node: &Node<F>, alg: Algorithm, config: &Config) -> Result<Children<F>> {
    let many = at_level(&node.p, node.k).len() > 1;
    match (alg, many) {
        (Algorithm::Wang, true) => split_wang(node, config),
        (Algorithm::Srs | Algorithm::Regser, true) => split_srs(node, config),
        (Algorithm::Regser, false) => split_regser(node, config),
        (_, false) => Ok(vec![(BranchLabel::Advance, Node { k: node.k - 1, ..node.clone() })]),
    }
}

fn harvest<F: Field>(node: Node<F>) -> Option<TriangularSystem<F>> {
    if node.p.iter().any(Polynomial::is_nonzero_constant) {
        return None;
    }
    let mut t: Vec<_> = node.p.into_iter().filter(|p| !p.is_zero()).collect();
    t.sort_by_key(Polynomial::class);
    let u = node.q.into_iter().filter(|q| !q.is_constant()).collect();
    Some(TriangularSystem { t, u })
}

/// Decomposes `polys` (indexed by rank in `vars`) with the given algorithm.
pub fn decompose<F: Field>(
    polys: &[Polynomial<F>],
    vars: &VarTable,
    alg: Algorithm,
    config: &Config,
) -> Result<Decomposition<F>> {
    let root = Node {
        p: union(&[], polys.iter().cloned()),
        q: Vec::new(),
        k: vars.len(),
    };
    decompose_from(root, vars, alg, config)
}

/// Runs the worklist starting from an arbitrary node, e.g. one taken from a
/// recorded tree.
pub fn decompose_from<F: Field>(
    root: Node<F>,
    vars: &VarTable,
    alg: Algorithm,
    config: &Config,
) -> Result<Decomposition<F>> {
    let mut tree = DecompositionTree::default();
    let (systems, processed) = run(root, vars.len(), alg, config, &mut |e: &TreeEvent<F>| {
        if config.record_tree {
            tree.events.push(e.clone());
        }
    })?;
    Ok(Decomposition {
        vars: vars.clone(),
        algorithm: alg,
        systems,
        tree,
        nodes_processed: processed,
    })
}

/// Like [`decompose`], but hands every tree event to `observer` as soon as it
/// is created, so callers see the partial tree even when a budget is hit.
pub fn decompose_observed<F: Field>(
    polys: &[Polynomial<F>],
    vars: &VarTable,
    alg: Algorithm,
    config: &Config,
    observer: &mut dyn FnMut(&TreeEvent<F>),
) -> Result<Vec<TriangularSystem<F>>> {
    let root = Node {
        p: union(&[], polys.iter().cloned()),
        q: Vec::new(),
        k: vars.len(),
    };
    run(root, vars.len(), alg, config, observer).map(|(systems, _)| systems)
}

fn run<F: Field>(
    root: Node<F>,
    n: usize,
    alg: Algorithm,
    config: &Config,
    observer: &mut dyn FnMut(&TreeEvent<F>),
) -> Result<(Vec<TriangularSystem<F>>, usize)> {
    if let Some(p) = root.p.iter().chain(&root.q).find(|p| p.nvars() != n) {
        return Err(Error::Invalid(format!(
            "polynomial over {} variables, ordering has {n}",
            p.nvars()
        )));
    }
    if root.k > n {
        return Err(Error::Invalid(format!("node level {} exceeds {n}", root.k)));
    }
    let mut next_id = 0usize;
    let mut emit = |parent: Option<usize>, label, node: &Node<F>| {
        let id = next_id;
        next_id += 1;
        observer(&TreeEvent {
            id,
            parent,
            label,
            node: node.clone(),
        });
        id
    };

    let mut stacks: Vec<Vec<(usize, Node<F>)>> = vec![Vec::new(); n + 1];
    let root_id = emit(None, BranchLabel::Root, &root);
    if let Some(root) = tidy(root, config) {
        let k = root.k;
        stacks[k].push((root_id, root));
    }

    let mut processed = 0usize;
    for k in (1..=n).rev() {
        while let Some((id, node)) = stacks[k].pop() {
            processed += 1;
            if processed > config.max_nodes {
                return Err(Error::Resource(format!(
                    "more than {} nodes processed",
                    config.max_nodes
                )));
            }
            if let Some(limit) = config.max_poly_terms {
                if let Some(p) = node.p.iter().chain(&node.q).find(|p| p.num_terms() > limit) {
                    return Err(Error::Resource(format!(
                        "polynomial with {} terms exceeds the limit of {limit}",
                        p.num_terms()
                    )));
                }
            }
            let mut kids = Vec::new();
            for (label, child) in children(&node, alg, config)? {
                let cid = emit(Some(id), label, &child);
                kids.extend(tidy(child, config).map(|c| (cid, c)));
            }
            // Pushed in reverse so the first listed child is processed first.
            for (cid, child) in kids.into_iter().rev() {
                stacks[child.k].push((cid, child));
            }
        }
    }
    let systems = stacks[0]
        .drain(..)
        .filter_map(|(_, node)| harvest(node))
        .collect();
    Ok((systems, processed))
}

/// Chooses the reducing polynomial among the members of one level.
pub trait Reducer<F: Field> {
    fn choose(&self, level_polys: &[&Polynomial<F>], v: usize) -> usize;
}

/// Minimal degree, ties broken by a [`PivotRule`].
#[derive(Clone, Copy, Debug, Default)]
pub struct MinDegree(pub PivotRule);

impl<F: Field> Reducer<F> for MinDegree {
    fn choose(&self, level_polys: &[&Polynomial<F>], v: usize) -> usize {
        pick_min_degree(level_polys, v, self.0)
    }
}

/// One reduction step at level `i`: keep the chosen `T_i` and replace the
/// other members of the level by their pseudo-remainders.
pub fn reduce_level<F: Field>(
    polys: &[Polynomial<F>],
    i: usize,
    reducer: &dyn Reducer<F>,
) -> Result<Vec<Polynomial<F>>> {
    let v = i - 1;
    let level = at_level(polys, i);
    if level.len() < 2 {
        return Ok(polys.to_vec());
    }
    let t = level[reducer.choose(&level, v)].clone();
    let mut out = Vec::with_capacity(polys.len());
    for p in polys {
        if p.class() == i && *p != t {
            let r = prem(p, &t, v)?;
            if !r.is_zero() {
                insert(&mut out, r);
            }
        } else {
            insert(&mut out, p.clone());
        }
    }
    Ok(out)
}

/// Branch-free reduction chain. Snapshot `j` is the set after levels
/// `n, .., n - j` have each been reduced to at most one member, repeating
/// the single-level step until the level is settled.
pub fn reduce_chain<F: Field>(
    polys: &[Polynomial<F>],
    nvars: usize,
    reducer: &dyn Reducer<F>,
) -> Result<Vec<Vec<Polynomial<F>>>> {
    let mut cur: Vec<Polynomial<F>> = union(&[], polys.iter().filter(|p| !p.is_zero()).cloned());
    let mut snapshots = Vec::with_capacity(nvars);
    for i in (1..=nvars).rev() {
        while at_level(&cur, i).len() > 1 {
            cur = reduce_level(&cur, i, reducer)?;
        }
        snapshots.push(cur.clone());
    }
    Ok(snapshots)
}
