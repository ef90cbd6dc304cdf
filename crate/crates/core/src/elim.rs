//! Pseudo-division, Sylvester resultants and subresultant chains.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;

/// Result of pseudo-dividing `F` by `G` in `x_v`:
/// `ini(G)^s * F = quotient * G + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision<F: Field> {
    pub quotient: Polynomial<F>,
    pub remainder: Polynomial<F>,
    pub s: u32,
}

/// Pseudo-division with `s = max(deg(F) - deg(G) + 1, 0)`.
///
/// A divisor free of `x_v` gives quotient `F`, remainder `0` and `s = 1`.
pub fn pseudo_divide<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    v: usize,
) -> Result<PseudoDivision<F>> {
    if g.is_zero() {
        return Err(Error::Domain("pseudo-division by zero".to_string()));
    }
    let field = f.field();
    let n = f.nvars();
    let m = f.degree_in(v);
    let l = g.degree_in(v);
    if l == 0 {
        return Ok(PseudoDivision {
            quotient: f.clone(),
            remainder: Polynomial::zero(field, n),
            s: 1,
        });
    }
    if f.is_zero() || m < l {
        return Ok(PseudoDivision {
            quotient: Polynomial::zero(field, n),
            remainder: f.clone(),
            s: 0,
        });
    }
    let lc = g.ini_in(v);
    let mut r = f.clone();
    let mut q = Polynomial::zero(field, n);
    for e in (l..=m).rev() {
        let lead = r.coeff_of_power(v, e);
        r = &r * &lc;
        q = &q * &lc;
        if !lead.is_zero() {
            let t = lead.mul_var_pow(v, e - l);
            r = &r - &(&t * g);
            q = &q + &t;
        }
    }
    Ok(PseudoDivision {
        quotient: q,
        remainder: r,
        s: m - l + 1,
    })
}

pub fn prem<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, v: usize) -> Result<Polynomial<F>> {
    pseudo_divide(f, g, v).map(|d| d.remainder)
}

pub fn pquo<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, v: usize) -> Result<Polynomial<F>> {
    pseudo_divide(f, g, v).map(|d| d.quotient)
}

/// Fraction-free determinant (Bareiss) of a square matrix of polynomials.
pub fn det_bareiss<F: Field>(field: &F, nvars: usize, mut m: Vec<Vec<Polynomial<F>>>) -> Polynomial<F> {
    let size = m.len();
    if size == 0 {
        return Polynomial::one(field, nvars);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(field, nvars);
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Polynomial::zero(field, nvars),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[size - 1][size - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Rows `x^(rows-1) * P, .., P` of a Sylvester-type matrix with `width` columns,
/// column `c` holding the coefficient of `x^(width - 1 - c)`.
fn shifted_rows<F: Field>(coeffs: &[Polynomial<F>], rows: usize, width: usize) -> Vec<Vec<Polynomial<F>>> {
    let field = coeffs[0].field();
    let n = coeffs[0].nvars();
    let deg = coeffs.len() - 1;
    (0..rows)
        .map(|r| {
            let shift = rows - 1 - r;
            (0..width)
                .map(|c| {
                    let power = width - 1 - c;
                    match power.checked_sub(shift) {
                        Some(k) if k <= deg => coeffs[k].clone(),
                        _ => Polynomial::zero(field, n),
                    }
                })
                .collect()
        })
        .collect()
}

/// Sylvester matrix of `F` and `G` in `x_v`: `l` rows of `F`, then `m` rows of `G`.
pub fn sylvester_matrix<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    v: usize,
) -> Vec<Vec<Polynomial<F>>> {
    let (fc, gc) = (f.coeffs_in(v), g.coeffs_in(v));
    let (m, l) = (fc.len() - 1, gc.len() - 1);
    let mut rows = shifted_rows(&fc, l, m + l);
    rows.extend(shifted_rows(&gc, m, m + l));
    rows
}

fn require_common_var<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, v: usize) -> Result<()> {
    if !f.contains_var(v) || !g.contains_var(v) {
        return Err(Error::Domain(format!(
            "variable index {v} must occur in both polynomials"
        )));
    }
    Ok(())
}

pub fn sylvester_resultant<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    v: usize,
) -> Result<Polynomial<F>> {
    require_common_var(f, g, v)?;
    Ok(det_bareiss(f.field(), f.nvars(), sylvester_matrix(f, g, v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubresultantChain<F: Field> {
    pub f: Polynomial<F>,
    pub g: Polynomial<F>,
    pub var: usize,
    /// `(j, S_j)` for `j = mu-1, .., 0`.
    pub chain: Vec<(u32, Polynomial<F>)>,
    /// Indices `d_1 > .. > d_r` of the regular subresultants.
    pub regular_indices: Vec<u32>,
}

impl<F: Field> SubresultantChain<F> {
    pub fn get(&self, j: u32) -> Option<&Polynomial<F>> {
        self.chain.iter().find(|(i, _)| *i == j).map(|(_, s)| s)
    }

    /// The regular subresultants `S_{d_1}, .., S_{d_r}`.
    pub fn regular(&self) -> Vec<Polynomial<F>> {
        self.regular_indices
            .iter()
            .map(|&j| self.get(j).expect("regular index stored").clone())
            .collect()
    }
}

pub fn subresultant_chain<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    v: usize,
) -> Result<SubresultantChain<F>> {
    check_chain_input(f, g, v)?;
    let computed = prs_subresultants(f, g, v);
    build_chain(f, g, v, |j| {
        computed
            .iter()
            .find(|(i, _)| *i == j)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Polynomial::zero(f.field(), f.nvars()))
    })
}

/// The same chain with every `S_j` taken directly from the minors `M_ij`.
/// Much slower; kept as an independent route for cross-checking.
pub fn subresultant_chain_determinantal<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    v: usize,
) -> Result<SubresultantChain<F>> {
    check_chain_input(f, g, v)?;
    let (fc, gc) = (f.coeffs_in(v), g.coeffs_in(v));
    build_chain(f, g, v, |j| determinantal_subresultant(&fc, &gc, j as usize, v))
}

fn check_chain_input<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, v: usize) -> Result<()> {
    require_common_var(f, g, v)?;
    let (m, l) = (f.degree_in(v), g.degree_in(v));
    if m < l {
        return Err(Error::Domain(format!(
            "subresultant chain needs deg(F) >= deg(G), got {m} < {l}"
        )));
    }
    Ok(())
}

/// Assembles `S_{mu-1}, .., S_0`; `below_l(j)` supplies `S_j` for `j < l`.
fn build_chain<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    v: usize,
    below_l: impl Fn(u32) -> Polynomial<F>,
) -> Result<SubresultantChain<F>> {
    let (m, l) = (f.degree_in(v), g.degree_in(v));
    let mu = if m > l { m - 1 } else { l };
    let mut chain = Vec::with_capacity(mu as usize);
    for j in (0..mu).rev() {
        let s = if j < l {
            below_l(j)
        } else if j == l {
            &g.ini_in(v).pow(m - l - 1) * g
        } else {
            Polynomial::zero(f.field(), f.nvars())
        };
        chain.push((j, s));
    }
    let regular_indices = chain
        .iter()
        .filter(|(j, s)| !s.is_zero() && s.degree_in(v) == *j)
        .map(|(j, _)| *j)
        .collect();
    Ok(SubresultantChain {
        f: f.clone(),
        g: g.clone(),
        var: v,
        chain,
        regular_indices,
    })
}

/// Nonzero subresultants `(j, S_j)` for `j < l` by the subresultant
/// remainder sequence, with Lazard's scaling for defective steps.
fn prs_subresultants<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, v: usize) -> Vec<(u32, Polynomial<F>)> {
    let mut out = Vec::new();
    let (m, l) = (f.degree_in(v), g.degree_in(v));
    let mut s = g.ini_in(v).pow(m - l);
    let mut a = g.clone();
    let mut b = pseudo_divide(f, &-g, v).expect("nonconstant divisor").remainder;
    loop {
        if b.is_zero() {
            return out;
        }
        let (d, e) = (a.degree_in(v), b.degree_in(v));
        out.push((d - 1, b.clone()));
        let delta = d - e;
        let c = if delta > 1 {
            let lb = b.ini_in(v);
            let c = (&lb.pow(delta - 1) * &b)
                .div_exact(&s.pow(delta - 1))
                .expect("Lazard scaling divides exactly");
            out.push((e, c.clone()));
            c
        } else {
            b.clone()
        };
        if e == 0 {
            return out;
        }
        let next = pseudo_divide(&a, &-&b, v).expect("nonconstant divisor").remainder;
        b = next
            .div_exact(&(&s.pow(delta) * &a.ini_in(v)))
            .expect("subresultant step divides exactly");
        a = c;
        s = a.ini_in(v);
    }
}

/// `S_j` from the minors `M_ij`, valid for `j < l`.
///
/// All `M_ij` share their first `m+l-2j-1` columns, so one fraction-free
/// elimination of those columns leaves every `det(M_ij)` in the last row.
fn determinantal_subresultant<F: Field>(
    fc: &[Polynomial<F>],
    gc: &[Polynomial<F>],
    j: usize,
    v: usize,
) -> Polynomial<F> {
    let field = fc[0].field();
    let n = fc[0].nvars();
    let (m, l) = (fc.len() - 1, gc.len() - 1);
    let width = m + l - j;
    let mut rows = shifted_rows(fc, l - j, width);
    rows.extend(shifted_rows(gc, m - j, width));
    let keep = m + l - 2 * j - 1;
    let Some(last) = eliminate_leading_columns(rows, keep) else {
        return Polynomial::zero(field, n);
    };
    let mut s = Polynomial::zero(field, n);
    for i in 0..=j {
        let d = &last[width - 1 - i];
        if !d.is_zero() {
            s = &s + &d.mul_var_pow(v, i as u32);
        }
    }
    s
}

/// Bareiss elimination of the first `keep` columns of a `(keep+1)`-row
/// matrix. Entry `c` of the returned last row is the determinant of the
/// square minor on columns `0..keep` and `c` (for `c >= keep`). `None` when
/// those leading columns are rank deficient, i.e. all such minors vanish.
fn eliminate_leading_columns<F: Field>(mut m: Vec<Vec<Polynomial<F>>>, keep: usize) -> Option<Vec<Polynomial<F>>> {
    debug_assert_eq!(m.len(), keep + 1);
    let field = m[0][0].field().clone();
    let n = m[0][0].nvars();
    let width = m[0].len();
    let mut negate = false;
    let mut prev = Polynomial::one(&field, n);
    for k in 0..keep {
        if m[k][k].is_zero() {
            let i = (k + 1..=keep).find(|&i| !m[i][k].is_zero())?;
            m.swap(k, i);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..width {
                let num = &(&row[j] * &pivot_row[k]) - &(&row[k] * &pivot_row[j]);
                row[j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let last = m.pop().expect("keep + 1 rows");
    Some(if negate { last.iter().map(|p| -p).collect() } else { last })
}

/// Regular subresultants `S_{d_1}, .., S_{d_r}` of `T1` and `T2` in `x_v`, highest index first.
pub fn srs<F: Field>(t1: &Polynomial<F>, t2: &Polynomial<F>, v: usize) -> Result<Vec<Polynomial<F>>> {
    if t2.degree_in(v) == 0 || t1.degree_in(v) < t2.degree_in(v) {
        return Err(Error::Domain(
            "srs needs deg(T1) >= deg(T2) >= 1 in the given variable".to_string(),
        ));
    }
    Ok(subresultant_chain(t1, t2, v)?.regular())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polys_indexed;
    use crate::random::{random_poly, PolyShape};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Polynomial<Rationals>;

    /// `S_j` with one independent determinant per coefficient.
    fn subresultant_by_minors<F: Field>(fc: &[Polynomial<F>], gc: &[Polynomial<F>], j: usize, v: usize) -> Polynomial<F> {
        let (field, n) = (fc[0].field(), fc[0].nvars());
        let (m, l) = (fc.len() - 1, gc.len() - 1);
        let width = m + l - j;
        let mut rows = shifted_rows(fc, l - j, width);
        rows.extend(shifted_rows(gc, m - j, width));
        let keep = m + l - 2 * j - 1;
        let mut s = Polynomial::zero(field, n);
        for i in 0..=j {
            let minor = rows
                .iter()
                .map(|row| row[..keep].iter().chain([&row[width - 1 - i]]).cloned().collect())
                .collect();
            s = &s + &det_bareiss(field, n, minor).mul_var_pow(v, i as u32);
        }
        s
    }

    fn p(s: &str, n: usize) -> Q {
        parse_polys_indexed(s, n).unwrap().remove(0)
    }

    /// Independent oracle for division by a linear `a*x_v + b`: the pseudo-remainder
    /// is the homogenised evaluation `sum f_i (-b)^i a^(m-i)`.
    fn prem_by_linear(f: &Q, a: &Q, b: &Q, v: usize) -> Q {
        let cs = f.coeffs_in(v);
        let m = cs.len() as u32 - 1;
        let mut acc = Polynomial::zero(&Rationals, f.nvars());
        for (i, c) in cs.iter().enumerate() {
            acc = &acc + &(&(c * &(-b).pow(i as u32)) * &a.pow(m - i as u32));
        }
        acc
    }

    /// Independent oracle for resultants against a linear `a*x_v + b`:
    /// `(-1)^m` times the pseudo-remainder above.
    fn res_by_linear(f: &Q, a: &Q, b: &Q, v: usize) -> Q {
        let r = prem_by_linear(f, a, b, v);
        if f.degree_in(v) % 2 == 1 {
            -&r
        } else {
            r
        }
    }

    /// Monic gcd of univariate polynomials in `x_1` over GF(p) by Euclid.
    fn euclid_gcd(a: &Polynomial<PrimeField>, b: &Polynomial<PrimeField>) -> Polynomial<PrimeField> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = prem(&a, &b, 0).unwrap();
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    #[test]
    fn worked_pseudo_remainders() {
        assert_eq!(prem(&p("x5+x3+x2", 5), &p("x5+x2", 5), 4).unwrap(), p("x3", 5));
        assert_eq!(prem(&p("x4^3+x3", 4), &p("x4^2+x2", 4), 3).unwrap(), p("-x2*x4+x3", 4));
        let f = p("x4^2+x2", 4);
        let expected = prem_by_linear(&f, &p("-x2", 4), &p("x3", 4), 3);
        assert_eq!(expected, p("x2^3+x3^2", 4));
        assert_eq!(prem(&f, &p("-x2*x4+x3", 4), 3).unwrap(), expected);
    }

    #[test]
    fn worked_pseudo_quotients() {
        let f = p("x4^3+x3", 4);
        let g = p("x4^2+x2", 4);
        let d = pseudo_divide(&f, &g, 3).unwrap();
        assert_eq!(d.quotient, p("x4", 4));
        assert_eq!(d.s, 2);
        assert_eq!(&(&d.quotient * &g) + &d.remainder, f);
    }

    #[test]
    fn degree_zero_divisor_convention() {
        let f = p("x2+x1", 2);
        let c = p("-2*x1", 2);
        assert!(prem(&f, &c, 1).unwrap().is_zero());
        assert_eq!(pquo(&f, &c, 1).unwrap(), f);
        assert_eq!(pquo(&f, &p("1", 2), 1).unwrap(), f);
        assert!(matches!(prem(&f, &p("0", 2), 1), Err(Error::Domain(_))));
    }

    #[test]
    fn worked_resultants() {
        let (f, g) = (p("x1^2+1", 1), p("x1+1", 1));
        let oracle = res_by_linear(&f, &p("1", 1), &p("1", 1), 0);
        assert_eq!(oracle, p("2", 1));
        assert_eq!(sylvester_resultant(&f, &g, 0).unwrap(), oracle);

        let f = p("(x3+x2)*x4 + x3 - 1", 4);
        let g = p("x4+x2", 4);
        let oracle = res_by_linear(&f, &p("1", 4), &p("x2", 4), 3);
        assert_eq!(oracle, p("(x2-1)*x3 + x2^2 + 1", 4));
        assert_eq!(sylvester_resultant(&f, &g, 3).unwrap(), oracle);

        let common = p("x2-1", 2);
        let a = &common * &p("x2+x1", 2);
        let b = &common * &p("x1*x2^2+3", 2);
        assert!(sylvester_resultant(&a, &b, 1).unwrap().is_zero());
        assert!(sylvester_resultant(&p("x1", 2), &p("x2", 2), 1).is_err());
    }

    #[test]
    fn chain_of_cubic_and_quadratic() {
        let f = p("x1^3-1", 1);
        let g = p("x1^2-1", 1);
        let chain = subresultant_chain(&f, &g, 0).unwrap();
        assert_eq!(chain.chain.len(), 2);
        let s1 = chain.get(1).unwrap();
        assert_eq!(s1.monic(), p("x1-1", 1));
        assert!(chain.get(0).unwrap().is_zero());
        assert_eq!(chain.regular_indices, vec![1]);
        assert_eq!(srs(&f, &g, 0).unwrap(), vec![s1.clone()]);
    }

    #[test]
    fn linear_divisor_chain_is_the_resultant() {
        let f = p("x2^3 + x1*x2 + 5", 2);
        let g = p("x1*x2 - 2", 2);
        let chain = subresultant_chain(&f, &g, 1).unwrap();
        assert_eq!(chain.chain.len(), 2);
        // m > l + 1: S_1 = lc(G)^(m-l-1) * G.
        assert_eq!(chain.get(1).unwrap(), &(&p("x1", 2) * &g));
        assert_eq!(chain.get(0).unwrap(), &sylvester_resultant(&f, &g, 1).unwrap());

        let chain = subresultant_chain(&p("x1^2+1", 1), &p("x1+1", 1), 0).unwrap();
        assert_eq!(chain.chain, vec![(0, p("2", 1))]);
        assert_eq!(chain.regular_indices, vec![0]);
    }

    #[test]
    fn worked_regular_subchains() {
        assert_eq!(
            srs(&p("(x3+x2)*x4 + x3 - 1", 4), &p("x4+x2", 4), 3).unwrap(),
            vec![p("(x2-1)*x3 + x2^2 + 1", 4)]
        );
        assert_eq!(srs(&p("x2+x1", 2), &p("x2-x1", 2), 1).unwrap(), vec![p("-2*x1", 2)]);
        assert!(srs(&p("x2+x1", 2), &p("x2^2", 2), 1).is_err());
        assert!(subresultant_chain(&p("x2+x1", 2), &p("x2^2", 2), 1).is_err());
    }

    fn shape(n: usize, deg: u32) -> PolyShape {
        PolyShape {
            vars: (0..n).collect(),
            max_total_degree: deg,
            max_terms: 4,
            coeff_bound: 5,
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pseudo_division_identity(seed in any::<u64>(), n in 1usize..=4, v in 0usize..4) {
            let v = v % n;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gf = PrimeField::new(13).unwrap();
            let f = random_poly(&mut rng, &gf, n, &shape(n, 5));
            let g = random_poly(&mut rng, &gf, n, &shape(n, 5));
            prop_assume!(!g.is_zero());
            let d = pseudo_divide(&f, &g, v).unwrap();
            let lhs = &g.ini_in(v).pow(d.s) * &f;
            prop_assert_eq!(lhs, &(&d.quotient * &g) + &d.remainder);
            if g.degree_in(v) > 0 {
                prop_assert!(d.remainder.degree_in(v) < g.degree_in(v) || d.remainder.is_zero());
            } else {
                prop_assert!(d.remainder.is_zero());
            }
        }

        #[test]
        fn subresultant_degree_bounds(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_poly(&mut rng, &Rationals, 2, &shape(2, 4));
            let g = random_poly(&mut rng, &Rationals, 2, &shape(2, 3));
            let (f, g) = if f.degree_in(1) >= g.degree_in(1) { (f, g) } else { (g, f) };
            prop_assume!(g.degree_in(1) >= 1);
            let chain = subresultant_chain(&f, &g, 1).unwrap();
            for (j, s) in &chain.chain {
                prop_assert!(s.degree_in(1) <= *j);
                let regular = !s.is_zero() && s.degree_in(1) == *j;
                prop_assert_eq!(regular, chain.regular_indices.contains(j));
            }
        }

        #[test]
        fn last_regular_subresultant_is_the_gcd(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gf = PrimeField::new(7).unwrap();
            let common = random_poly(&mut rng, &gf, 1, &shape(1, 2));
            let a = &random_poly(&mut rng, &gf, 1, &shape(1, 3)) * &common;
            let b = &random_poly(&mut rng, &gf, 1, &shape(1, 3)) * &common;
            let (a, b) = if a.degree_in(0) >= b.degree_in(0) { (a, b) } else { (b, a) };
            prop_assume!(b.degree_in(0) >= 1);
            let regs = srs(&a, &b, 0).unwrap();
            let expected = euclid_gcd(&a, &b);
            let got = if expected.degree_in(0) == b.degree_in(0) {
                b.monic()
            } else {
                regs.last().expect("nonempty when gcd is a proper divisor").monic()
            };
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn resultant_is_multiplicative(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gf = PrimeField::new(11).unwrap();
            let f = random_poly(&mut rng, &gf, 2, &shape(2, 3));
            let h = random_poly(&mut rng, &gf, 2, &shape(2, 3));
            let g = random_poly(&mut rng, &gf, 2, &shape(2, 3));
            let fh = &f * &h;
            prop_assume!(f.contains_var(1) && h.contains_var(1) && g.contains_var(1));
            let lhs = sylvester_resultant(&fh, &g, 1).unwrap();
            let rhs = &sylvester_resultant(&f, &g, 1).unwrap() * &sylvester_resultant(&h, &g, 1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_mod_p_commutes_with_prem(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_poly(&mut rng, &Rationals, 3, &shape(3, 4));
            let g = random_poly(&mut rng, &Rationals, 3, &shape(3, 3));
            prop_assume!(!g.is_zero());
            let gf = PrimeField::new(101).unwrap();
            let red = |x: &Q| x.try_map_field(&gf, |c| gf.from_rational(c)).unwrap();
            // Reduction is a ring map, so it commutes whenever both degrees survive.
            prop_assume!(red(&g).degree_in(2) == g.degree_in(2));
            prop_assume!(red(&f).degree_in(2) == f.degree_in(2));
            let over_q = prem(&f, &g, 2).unwrap();
            let over_p = prem(&red(&f), &red(&g), 2).unwrap();
            prop_assert_eq!(red(&over_q), over_p);
        }

        #[test]
        fn one_pass_subresultants_match_minors(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gf = PrimeField::new(13).unwrap();
            let f = random_poly(&mut rng, &gf, 3, &shape(3, 4));
            let g = random_poly(&mut rng, &gf, 3, &shape(3, 4));
            prop_assume!(f.degree_in(2) >= g.degree_in(2) && g.degree_in(2) >= 1);
            let (fc, gc) = (f.coeffs_in(2), g.coeffs_in(2));
            for j in 0..g.degree_in(2) as usize {
                prop_assert_eq!(determinantal_subresultant(&fc, &gc, j, 2), subresultant_by_minors(&fc, &gc, j, 2));
            }
        }

        #[test]
        fn remainder_sequence_matches_determinants(seed in any::<u64>(), common in 0u32..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gf = PrimeField::new(13).unwrap();
            let mut f = random_poly(&mut rng, &gf, 3, &shape(3, 5));
            let mut g = random_poly(&mut rng, &gf, 3, &shape(3, 4));
            // A shared factor forces defective steps and zero tails in the chain.
            for _ in 0..common {
                let h = random_poly(&mut rng, &gf, 3, &shape(3, 2));
                f = &f * &h;
                g = &g * &h;
            }
            prop_assume!(f.degree_in(2) >= g.degree_in(2) && g.degree_in(2) >= 1);
            let fast = subresultant_chain(&f, &g, 2).unwrap();
            let slow = subresultant_chain_determinantal(&f, &g, 2).unwrap();
            prop_assert_eq!(fast.chain, slow.chain);
            prop_assert_eq!(fast.regular_indices, slow.regular_indices);
        }
    }
}
