//! Brute-force zero-set checks over small prime fields.
//!
//! A decomposition of `F` is correct when the zeros of `F` equal the union of
//! `Zero(T / U)` over the output systems. Over a finite field both sides can
//! be enumerated point by point. Inputs over Q are reduced mod `p` and the
//! whole decomposition is re-run natively over GF(p).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::decompose::{decompose, Algorithm, Config, TriangularSystem};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::poly::Polynomial;
use crate::vars::VarTable;

pub const DEFAULT_POINT_CAP: u64 = 10_000_000;
pub const DEFAULT_PRIMES: [u64; 4] = [5, 7, 11, 13];
const MAX_WITNESSES: usize = 16;

pub type Point = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSet {
    pub p: u64,
    pub n: usize,
    pub points: BTreeSet<Point>,
}

/// Calls `visit` on every point of GF(p)^n in lexicographic order.
fn for_each_point(p: u64, n: usize, cap: u64, mut visit: impl FnMut(&[u64])) -> Result<()> {
    let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::Resource(format!(
            "{p}^{n} points exceed the enumeration cap of {cap}"
        )));
    }
    let mut x = vec![0u64; n];
    loop {
        visit(&x);
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            x[i] += 1;
            if x[i] < p {
                break;
            }
            x[i] = 0;
        }
    }
}

fn check_arity(polys: &[&Polynomial<PrimeField>], n: usize) -> Result<()> {
    match polys.iter().find(|f| f.nvars() != n) {
        Some(f) => Err(Error::Invalid(format!(
            "polynomial over {} variables, expected {n}",
            f.nvars()
        ))),
        None => Ok(()),
    }
}

/// Common zeros in GF(p)^n.
pub fn enumerate_zeros(polys: &[Polynomial<PrimeField>], field: &PrimeField, n: usize, cap: u64) -> Result<PointSet> {
    check_arity(&polys.iter().collect::<Vec<_>>(), n)?;
    let mut points = BTreeSet::new();
    for_each_point(field.modulus(), n, cap, |x| {
        if polys.iter().all(|f| f.eval(x) == 0) {
            points.insert(x.to_vec());
        }
    })?;
    Ok(PointSet {
        p: field.modulus(),
        n,
        points,
    })
}

/// Points where every member of `T` vanishes and no member of `U` does.
pub fn zeros_of_system(sys: &TriangularSystem<PrimeField>, field: &PrimeField, n: usize, cap: u64) -> Result<PointSet> {
    zeros_of_systems(std::slice::from_ref(sys), field, n, cap)
}

/// Union of `Zero(T_i / U_i)`.
pub fn zeros_of_systems(systems: &[TriangularSystem<PrimeField>], field: &PrimeField, n: usize, cap: u64) -> Result<PointSet> {
    for s in systems {
        check_arity(&s.t.iter().chain(&s.u).collect::<Vec<_>>(), n)?;
    }
    let mut points = BTreeSet::new();
    for_each_point(field.modulus(), n, cap, |x| {
        let covered = systems.iter().any(|s| {
            s.t.iter().all(|f| f.eval(x) == 0) && s.u.iter().all(|g| g.eval(x) != 0)
        });
        if covered {
            points.insert(x.to_vec());
        }
    })?;
    Ok(PointSet {
        p: field.modulus(),
        n,
        points,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub p: u64,
    pub status: Status,
    pub zeros: usize,
    /// Zeros of `F` covered by no system (at most a few are kept).
    pub missing: Vec<Point>,
    /// Points covered by some system that are not zeros of `F`.
    pub extra: Vec<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub status: Status,
    pub primes: Vec<PrimeReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Compares `Zero(F)` with the union of the systems' zero sets over GF(p).
pub fn compare_zero_sets(
    polys: &[Polynomial<PrimeField>],
    systems: &[TriangularSystem<PrimeField>],
    field: &PrimeField,
    n: usize,
    cap: u64,
) -> Result<PrimeReport> {
    let lhs = enumerate_zeros(polys, field, n, cap)?;
    let rhs = zeros_of_systems(systems, field, n, cap)?;
    let missing: Vec<Point> = lhs.points.difference(&rhs.points).take(MAX_WITNESSES).cloned().collect();
    let extra: Vec<Point> = rhs.points.difference(&lhs.points).take(MAX_WITNESSES).cloned().collect();
    let status = if missing.is_empty() && extra.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(PrimeReport {
        p: field.modulus(),
        status,
        zeros: lhs.points.len(),
        missing,
        extra,
        note: None,
    })
}

/// Reduces a rational polynomial mod `p`; `None` if a denominator vanishes.
pub fn reduce_mod_p(f: &Polynomial<Rationals>, field: &PrimeField) -> Option<Polynomial<PrimeField>> {
    f.try_map_field(field, |c| field.from_rational(c))
}

/// Re-runs the decomposition of `polys` natively over each GF(p) and checks
/// the zero relation there.
pub fn verify_decomposition(
    polys: &[Polynomial<Rationals>],
    vars: &VarTable,
    alg: Algorithm,
    config: &Config,
    primes: &[u64],
) -> Result<VerificationReport> {
    let mut reports = Vec::with_capacity(primes.len());
    for &p in primes {
        let field = PrimeField::new(p)?;
        let reduced: Option<Vec<_>> = polys.iter().map(|f| reduce_mod_p(f, &field)).collect();
        let Some(reduced) = reduced else {
            reports.push(PrimeReport {
                p,
                status: Status::Skipped,
                zeros: 0,
                missing: Vec::new(),
                extra: Vec::new(),
                note: Some(format!("a coefficient denominator is divisible by {p}")),
            });
            continue;
        };
        let config = Config {
            record_tree: false,
            ..config.clone()
        };
        let dec = decompose(&reduced, vars, alg, &config)?;
        reports.push(compare_zero_sets(&reduced, &dec.systems, &field, vars.len(), DEFAULT_POINT_CAP)?);
    }
    Ok(summarize(reports))
}

pub fn summarize(primes: Vec<PrimeReport>) -> VerificationReport {
    let status = if primes.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if primes.iter().all(|r| r.status == Status::Skipped) {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    VerificationReport { status, primes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polys_indexed;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn polys_mod(src: &str, n: usize, p: u64) -> Vec<Polynomial<PrimeField>> {
        let f = gf(p);
        parse_polys_indexed(src, n)
            .unwrap()
            .iter()
            .map(|x| reduce_mod_p(x, &f).unwrap())
            .collect()
    }

    fn pts(v: &[&[u64]]) -> BTreeSet<Point> {
        v.iter().map(|x| x.to_vec()).collect()
    }

    #[test]
    fn enumerates_small_zero_sets() {
        let z = enumerate_zeros(&polys_mod("x1", 2, 3), &gf(3), 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(z.points, pts(&[&[0, 0], &[0, 1], &[0, 2]]));
        let z = enumerate_zeros(&polys_mod("x1*x2-1", 2, 3), &gf(3), 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(z.points, pts(&[&[1, 1], &[2, 2]]));
        let z = enumerate_zeros(&[], &gf(3), 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(z.points.len(), 9);
        let z = enumerate_zeros(&polys_mod("x1^2+1", 1, 5), &gf(5), 1, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(z.points, pts(&[&[2], &[3]]));
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_zeros(&[], &gf(13), 7, DEFAULT_POINT_CAP),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn system_zero_sets() {
        let s = TriangularSystem {
            t: polys_mod("x1", 2, 3),
            u: polys_mod("x2", 2, 3),
        };
        assert_eq!(
            zeros_of_system(&s, &gf(3), 2, DEFAULT_POINT_CAP).unwrap().points,
            pts(&[&[0, 1], &[0, 2]])
        );
        let s = TriangularSystem {
            t: polys_mod("x2+x1", 2, 5),
            u: polys_mod("x2-x1", 2, 5),
        };
        assert_eq!(
            zeros_of_system(&s, &gf(5), 2, DEFAULT_POINT_CAP).unwrap().points,
            pts(&[&[1, 4], &[2, 3], &[3, 2], &[4, 1]])
        );
        let s = TriangularSystem {
            t: polys_mod("x1", 2, 3),
            u: vec![Polynomial::zero(&gf(3), 2)],
        };
        assert!(zeros_of_system(&s, &gf(3), 2, DEFAULT_POINT_CAP).unwrap().points.is_empty());
    }

    #[test]
    fn dropped_system_is_detected() {
        let field = gf(7);
        let f = polys_mod("x1^2-1; x2-x1", 2, 7);
        let systems = vec![
            TriangularSystem { t: polys_mod("x1-1; x2-x1", 2, 7), u: vec![] },
            TriangularSystem { t: polys_mod("x1+1; x2-x1", 2, 7), u: vec![] },
        ];
        let ok = compare_zero_sets(&f, &systems, &field, 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(ok.status, Status::Pass);
        let bad = compare_zero_sets(&f, &systems[..1], &field, 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(bad.status, Status::Fail);
        assert_eq!(bad.missing, vec![vec![6, 6]]);
    }

    #[test]
    fn all_primes_skipped_is_inconclusive() {
        let f = parse_polys_indexed("1/35*x1 - 1", 1).unwrap();
        let vars = VarTable::indexed(1);
        let r = verify_decomposition(&f, &vars, Algorithm::Wang, &Config::default(), &[5, 7]).unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        let r = verify_decomposition(&f, &vars, Algorithm::Wang, &Config::default(), &[5, 7, 11]).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.primes[0].status, Status::Skipped);
    }

    proptest! {
        #[test]
        fn zeros_of_union_is_intersection(a in proptest::collection::vec((0u64..5, 0u32..3, 0u32..3), 1..4),
                                          b in proptest::collection::vec((0u64..5, 0u32..3, 0u32..3), 1..4)) {
            let field = gf(5);
            let mk = |v: &[(u64, u32, u32)]| Polynomial::from_terms(&field, 2, v.iter().map(|&(c, i, j)| (vec![i, j], c)));
            let (f, g) = (mk(&a), mk(&b));
            let both = enumerate_zeros(&[f.clone(), g.clone()], &field, 2, DEFAULT_POINT_CAP).unwrap();
            let zf = enumerate_zeros(&[f], &field, 2, DEFAULT_POINT_CAP).unwrap();
            let zg = enumerate_zeros(&[g], &field, 2, DEFAULT_POINT_CAP).unwrap();
            let inter: BTreeSet<Point> = zf.points.intersection(&zg.points).cloned().collect();
            prop_assert_eq!(both.points, inter);
        }
    }
}
