//! Variable names and orderings.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;

/// Variable names plus an ordering.
///
/// `order[r]` is the index into `names` of the variable with rank `r`, so
/// `names[order[0]] < names[order[1]] < ..`. Polynomials attached to a table
/// index their variables by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarTable {
    names: Vec<String>,
    order: Vec<usize>,
}

impl VarTable {
    pub fn new(names: Vec<String>, order: Vec<usize>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::Invalid(format!("duplicate variable name `{n}`")));
            }
        }
        let mut hit = vec![false; names.len()];
        if order.len() != names.len() {
            return Err(Error::Invalid("ordering length differs from variable count".into()));
        }
        for &i in &order {
            if i >= names.len() || std::mem::replace(&mut hit[i], true) {
                return Err(Error::Invalid("ordering is not a permutation".into()));
            }
        }
        Ok(Self { names, order })
    }

    /// Names in ascending order.
    pub fn natural(names: Vec<String>) -> Result<Self> {
        let order = (0..names.len()).collect();
        Self::new(names, order)
    }

    /// `x1 < x2 < .. < xn`.
    pub fn indexed(n: usize) -> Self {
        Self::natural((1..=n).map(|i| format!("x{i}")).collect()).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn name_of_rank(&self, r: usize) -> &str {
        &self.names[self.order[r]]
    }

    /// Names listed from the smallest variable to the greatest.
    pub fn rank_names(&self) -> Vec<String> {
        self.order.iter().map(|&i| self.names[i].clone()).collect()
    }

    pub fn rank_of(&self, name: &str) -> Option<usize> {
        let idx = self.names.iter().position(|n| n == name)?;
        self.order.iter().position(|&i| i == idx)
    }

    /// Same names, new ordering given as ascending rank names.
    pub fn reordered<S: AsRef<str>>(&self, ascending: &[S]) -> Result<Self> {
        let mut order = Vec::with_capacity(ascending.len());
        for s in ascending {
            let s = s.as_ref();
            let idx = self
                .names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownVariable(s.to_string()))?;
            order.push(idx);
        }
        Self::new(self.names.clone(), order)
    }

    /// Same names, ordering given as a rank permutation of this table:
    /// `ranks[r]` is the current rank of the variable that gets new rank `r`.
    pub fn permuted(&self, ranks: &[usize]) -> Result<Self> {
        let order = ranks.iter().map(|&r| self.order[r]).collect();
        Self::new(self.names.clone(), order)
    }

    /// `perm[r]` is the rank in `target` of the variable with rank `r` here.
    pub fn transition(&self, target: &VarTable) -> Vec<usize> {
        let mut rank_in_target = vec![0; self.len()];
        for (r, &i) in target.order.iter().enumerate() {
            rank_in_target[i] = r;
        }
        self.order.iter().map(|&i| rank_in_target[i]).collect()
    }

    /// Re-expresses polynomials indexed by this table in the ranks of `target`.
    pub fn translate<F: Field>(&self, polys: &[Polynomial<F>], target: &VarTable) -> Vec<Polynomial<F>> {
        let perm = self.transition(target);
        polys.iter().map(|p| p.permute(&perm)).collect()
    }
}
