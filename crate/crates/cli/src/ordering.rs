use std::str::FromStr;

use chordal_td::sparse::{chordal_ordering, random_ordering};
use chordal_td::{Field, Polynomial, VarTable};

/// Value of `--order` (and of one item of `bench --orders`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    /// Variables listed from smallest to greatest.
    Names(Vec<String>),
    /// First appearance in the input (or `x1 < .. < xn` for generated families).
    Natural,
    /// Perfect elimination ordering of `G(F)`, or of its chordal completion.
    Peo,
    /// The `k`-th seeded random ordering (`bench`: `k` random orderings).
    Random(u64),
    /// Let the sparsity threshold `--s0` decide between `peo` and a random ordering.
    Auto,
}

impl FromStr for OrderSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "" => Err("empty ordering".into()),
            "natural" => Ok(OrderSpec::Natural),
            "peo" => Ok(OrderSpec::Peo),
            "auto" => Ok(OrderSpec::Auto),
            _ => {
                if let Some(k) = s.strip_prefix("random:") {
                    return k
                        .parse()
                        .map(OrderSpec::Random)
                        .map_err(|_| format!("bad random ordering count `{k}`"));
                }
                let names: Vec<String> = s.split(',').map(|n| n.trim().to_string()).collect();
                if names.iter().any(String::is_empty) {
                    return Err(format!("bad variable list `{s}`"));
                }
                Ok(OrderSpec::Names(names))
            }
        }
    }
}

/// Seed of the `j`-th random ordering in the stream started by `seed`.
pub fn stream_seed(seed: u64, j: u64) -> u64 {
    seed.wrapping_add(j)
}

/// Resolves a non-`Names`, non-`Auto` spec to a table over the same names as `vars`.
pub fn resolve<F: Field>(spec: &OrderSpec, polys: &[Polynomial<F>], vars: &VarTable, seed: u64) -> chordal_td::Result<VarTable> {
    let ascending = match spec {
        OrderSpec::Natural => (0..vars.len()).collect(),
        OrderSpec::Peo => chordal_ordering(polys, vars.len()).0,
        OrderSpec::Random(j) => random_ordering(vars.len(), stream_seed(seed, *j)),
        OrderSpec::Names(names) => return vars.reordered(names),
        OrderSpec::Auto => unreachable!("auto orderings go through the sparse driver"),
    };
    vars.permuted(&ascending)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("peo".parse::<OrderSpec>().unwrap(), OrderSpec::Peo);
        assert_eq!("random:5".parse::<OrderSpec>().unwrap(), OrderSpec::Random(5));
        assert_eq!(
            "x1, x2,x3".parse::<OrderSpec>().unwrap(),
            OrderSpec::Names(vec!["x1".into(), "x2".into(), "x3".into()])
        );
        assert!("random:x".parse::<OrderSpec>().is_err());
        assert!("x1,,x2".parse::<OrderSpec>().is_err());
    }
}
