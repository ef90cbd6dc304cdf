//! Binomial benchmark families with chordal associated graphs.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::poly::Polynomial;
use crate::vars::VarTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `x_k x_{k+3} - x_{k+1} x_{k+2}` for `k = 1..i`, on `i + 3` variables.
    Lattice,
    /// `x_{2k-1} x_{2k+2} - x_{2k} x_{2k+1}` for `k = 1..i`, on `2i + 2` variables.
    Adjacent,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lattice => "lattice",
            Family::Adjacent => "adjacent",
        }
    }

    pub fn num_vars(self, i: usize) -> usize {
        match self {
            Family::Lattice => i + 3,
            Family::Adjacent => 2 * i + 2,
        }
    }

    /// Closed-form variable sparsity of the `n`-variable member.
    pub fn sparsity_formula(self, n: usize) -> Rational {
        let n = n as i64;
        let num = match self {
            Family::Lattice => 6 * n - 12,
            Family::Adjacent => 5 * n - 8,
        };
        Ratio::new(num.into(), (n * n - n).into())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lattice" => Ok(Family::Lattice),
            "adjacent" => Ok(Family::Adjacent),
            _ => Err(Error::Invalid(format!(
                "unknown family `{s}` (expected lattice or adjacent)"
            ))),
        }
    }
}

/// The `i`-th member of `family` over `field`, with variables `x1..xn`.
pub fn gen_family<F: Field>(field: &F, family: Family, i: usize) -> Result<(Vec<Polynomial<F>>, VarTable)> {
    if i == 0 {
        return Err(Error::Invalid("family index must be at least 1".into()));
    }
    let n = family.num_vars(i);
    // Zero-based indices of the four variables in the k-th binomial.
    let quad = |k: usize| match family {
        Family::Lattice => [k, k + 3, k + 1, k + 2],
        Family::Adjacent => [2 * k, 2 * k + 3, 2 * k + 1, 2 * k + 2],
    };
    let polys = (0..i)
        .map(|k| {
            let [a, b, c, d] = quad(k);
            let x = |v| Polynomial::var(field, n, v);
            &(&x(a) * &x(b)) - &(&x(c) * &x(d))
        })
        .collect();
    Ok((polys, VarTable::indexed(n)))
}
