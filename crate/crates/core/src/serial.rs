//! JSON documents for decompositions, graph analyses and verification
//! reports. Polynomials are written as canonical strings over the rank names.

use serde::{Deserialize, Serialize};

use crate::decompose::{Algorithm, BranchLabel, Config, Decomposition, TreeEvent, TriangularSystem};
use crate::error::{Error, Result};
use crate::field::{Field, Rational, Rationals};
use crate::graph::{associated_graph, chordal_completion, mcs_peo, variable_sparsity, weighted_variable_sparsity};
use crate::oracle::VerificationReport;
use crate::parse::parse_poly_in;
use crate::poly::Polynomial;
use crate::sparse::{OrderingSource, SparseDecompositionReport};
use crate::vars::VarTable;

pub const SCHEMA: u32 = 1;

fn strings<F: Field>(polys: &[Polynomial<F>], names: &[String]) -> Vec<String> {
    polys.iter().map(|p| p.to_string_with(names)).collect()
}

fn parse_all(src: &[String], names: &[String]) -> Result<Vec<Polynomial<Rationals>>> {
    src.iter().map(|s| parse_poly_in(s, names)).collect()
}

fn ratio_string(r: &Rational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub t: Vec<String>,
    pub u: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEventJson {
    pub id: usize,
    pub parent: Option<usize>,
    pub label: BranchLabel,
    pub k: usize,
    pub p: Vec<String>,
    pub q: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingJson {
    pub source: String,
    pub sparsity: String,
    pub threshold: String,
    pub used_completion: bool,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub schema: u32,
    pub field: String,
    pub algorithm: Algorithm,
    /// Variables in ascending order; ranks index this list.
    pub variables: Vec<String>,
    pub input: Vec<String>,
    pub config: Config,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingJson>,
    pub systems: Vec<SystemJson>,
    pub nodes_processed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<Vec<TreeEventJson>>,
}

fn systems_json<F: Field>(systems: &[TriangularSystem<F>], names: &[String]) -> Vec<SystemJson> {
    systems
        .iter()
        .map(|s| SystemJson {
            t: strings(&s.t, names),
            u: strings(&s.u, names),
        })
        .collect()
}

fn tree_json<F: Field>(events: &[TreeEvent<F>], names: &[String]) -> Vec<TreeEventJson> {
    events
        .iter()
        .map(|e| TreeEventJson {
            id: e.id,
            parent: e.parent,
            label: e.label,
            k: e.node.k,
            p: strings(&e.node.p, names),
            q: strings(&e.node.q, names),
        })
        .collect()
}

impl DecompositionJson {
    /// `input` must be indexed by the ranks of `d.vars`.
    pub fn new<F: Field>(input: &[Polynomial<F>], d: &Decomposition<F>, config: &Config, field: &F) -> Self {
        let names = d.vars.rank_names();
        Self {
            schema: SCHEMA,
            field: field.name(),
            algorithm: d.algorithm,
            input: strings(input, &names),
            config: config.clone(),
            ordering: None,
            systems: systems_json(&d.systems, &names),
            nodes_processed: d.nodes_processed,
            tree: config.record_tree.then(|| tree_json(&d.tree.events, &names)),
            variables: names,
        }
    }

    /// `input` is indexed by the caller's ordering; it is re-indexed to the
    /// report's chosen ordering.
    pub fn from_sparse<F: Field>(
        input: &[Polynomial<F>],
        input_vars: &VarTable,
        r: &SparseDecompositionReport<F>,
        alg: Algorithm,
        config: &Config,
        field: &F,
        seed: u64,
    ) -> Self {
        let names = r.chosen_ordering.rank_names();
        let translated = input_vars.translate(input, &r.chosen_ordering);
        Self {
            schema: SCHEMA,
            field: field.name(),
            algorithm: alg,
            input: strings(&translated, &names),
            config: config.clone(),
            ordering: Some(OrderingJson {
                source: match r.source {
                    OrderingSource::Peo => "peo",
                    OrderingSource::CompletionPeo => "completion-peo",
                    OrderingSource::Random => "random",
                }
                .to_string(),
                sparsity: ratio_string(&r.sparsity),
                threshold: ratio_string(&r.threshold),
                used_completion: r.used_completion,
                seed: (r.source == OrderingSource::Random).then_some(seed),
            }),
            systems: systems_json(&r.systems, &names),
            nodes_processed: r.nodes_processed,
            tree: config.record_tree.then(|| tree_json(&r.tree.events, &names)),
            variables: names,
        }
    }

    pub fn from_str(src: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(src).map_err(|e| Error::Invalid(format!("bad decomposition JSON: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::Invalid(format!(
                "unsupported schema {} (expected {SCHEMA})",
                doc.schema
            )));
        }
        if doc.field != Rationals.name() {
            return Err(Error::Invalid(format!(
                "only decompositions over {} can be read back, got {}",
                Rationals.name(),
                doc.field
            )));
        }
        Ok(doc)
    }

    pub fn vars(&self) -> Result<VarTable> {
        VarTable::natural(self.variables.clone())
    }

    pub fn input_polys(&self) -> Result<Vec<Polynomial<Rationals>>> {
        parse_all(&self.input, &self.variables)
    }

    pub fn systems(&self) -> Result<Vec<TriangularSystem<Rationals>>> {
        self.systems
            .iter()
            .map(|s| {
                Ok(TriangularSystem {
                    t: parse_all(&s.t, &self.variables)?,
                    u: parse_all(&s.u, &self.variables)?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionJson {
    pub added_edges: Vec<(String, String)>,
    pub peo: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub schema: u32,
    pub variables: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub chordal: bool,
    /// Ascending perfect elimination ordering, when the graph is chordal.
    pub peo: Option<Vec<String>>,
    pub completion: Option<CompletionJson>,
    pub sparsity: String,
    pub weighted_sparsity: String,
}

impl AnalysisJson {
    pub fn new<F: Field>(polys: &[Polynomial<F>], vars: &VarTable) -> Self {
        let names = vars.rank_names();
        let g = associated_graph(polys, false);
        let named = |v: usize| names[v].clone();
        let edge_names = |es: Vec<(usize, usize)>| es.into_iter().map(|(a, b)| (named(a), named(b))).collect();
        let peo = mcs_peo(&g);
        let completion = peo.is_none().then(|| {
            let (h, order) = chordal_completion(&g);
            let added = h.edges().into_iter().filter(|&(a, b)| !g.has_edge(a, b)).collect();
            CompletionJson {
                added_edges: edge_names(added),
                peo: order.into_iter().map(named).collect(),
            }
        });
        Self {
            schema: SCHEMA,
            edges: edge_names(g.edges()),
            chordal: peo.is_some(),
            peo: peo.map(|o| o.into_iter().map(named).collect()),
            completion,
            sparsity: ratio_string(&variable_sparsity(polys)),
            weighted_sparsity: ratio_string(&weighted_variable_sparsity(polys)),
            variables: names,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationJson {
    pub schema: u32,
    pub algorithm: Algorithm,
    /// Whether re-running the decomposition reproduced the stored systems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduced: Option<bool>,
    #[serde(flatten)]
    pub report: VerificationReport,
}
