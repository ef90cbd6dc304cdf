//! Sparse multivariate polynomials over a [`Field`].
//!
//! Variables are identified by their rank in the active variable ordering:
//! index `0` is the smallest variable, index `nvars - 1` the greatest. Terms
//! are kept in strictly descending lexicographic order with the greatest
//! variable most significant, so the leading term always carries the leading
//! variable.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

pub type Exponents = Vec<u32>;

/// Lexicographic comparison with the highest-indexed variable most significant.
pub fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Exponent vector ordered by [`cmp_lex`].
#[derive(Clone, PartialEq, Eq)]
struct LexKey(Exponents);

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_lex(&self.0, &other.0)
    }
}

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Exponents, F::Elem)>,
}

/// `F = ini * x_lv^ldeg + tail` with `deg(tail, x_lv) < ldeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingParts<F: Field> {
    pub lv: usize,
    pub ini: Polynomial<F>,
    pub tail: Polynomial<F>,
    pub ldeg: u32,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Hash for Polynomial<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        Self {
            field: field.clone(),
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, v: usize) -> Self {
        Self::var_pow(field, nvars, v, 1)
    }

    pub fn var_pow(field: &F, nvars: usize, v: usize, e: u32) -> Self {
        assert!(v < nvars, "variable index {v} out of range");
        let mut exps = vec![0; nvars];
        exps[v] = e;
        Self::monomial(field, exps, field.one())
    }

    pub fn monomial(field: &F, exps: Exponents, c: F::Elem) -> Self {
        let nvars = exps.len();
        let terms = if field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(exps, c)]
        };
        Self {
            field: field.clone(),
            nvars,
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zero coefficients.
    pub fn from_terms<I>(field: &F, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, F::Elem)>,
    {
        let mut acc: HashMap<Exponents, F::Elem> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            match acc.get_mut(&e) {
                Some(slot) => *slot = field.add(slot, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_map(field, nvars, acc)
    }

    fn from_map(field: &F, nvars: usize, acc: HashMap<Exponents, F::Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| cmp_lex(&b.0, &a.0));
        Self {
            field: field.clone(),
            nvars,
            terms,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, F::Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero field constants.
    pub fn is_constant(&self) -> bool {
        self.lv().is_none()
    }

    pub fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_value(&self) -> Option<F::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    /// Leading coefficient in the lexicographic term order.
    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Greatest variable effectively appearing, or `None` for constants.
    pub fn lv(&self) -> Option<usize> {
        let (lead, _) = self.terms.first()?;
        (0..self.nvars).rev().find(|&i| lead[i] > 0)
    }

    /// `lv + 1` for non-constants, `0` for constants.
    pub fn class(&self) -> usize {
        self.lv().map_or(0, |v| v + 1)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    s.insert(i);
                }
            }
        }
        s
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    /// Coefficient of `x_v^d`, as a polynomial free of `x_v`.
    pub fn coeff_of_power(&self, v: usize, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] == d)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[v] = 0;
                (e, c.clone())
            })
            .collect::<Vec<_>>();
        // Zeroing one exponent on a lex-sorted subset keeps the order.
        let mut out = Self::zero(&self.field, self.nvars);
        out.terms = terms;
        out.terms.sort_by(|a, b| cmp_lex(&b.0, &a.0));
        out
    }

    /// Coefficients `[a_0, .., a_d]` of `self` viewed as a polynomial in `x_v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v);
        (0..=d).map(|k| self.coeff_of_power(v, k)).collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(field: &F, nvars: usize, v: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(field, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &c.mul_var_pow(v, k as u32);
            }
        }
        out
    }

    /// Initial with respect to `x_v`. A polynomial free of `x_v` is its own initial.
    pub fn ini_in(&self, v: usize) -> Self {
        let d = self.degree_in(v);
        self.coeff_of_power(v, d)
    }

    /// Tail with respect to `x_v`: `self - ini_in(v) * x_v^d`. Zero when `x_v` is absent.
    pub fn tail_in(&self, v: usize) -> Self {
        let d = self.degree_in(v);
        let mut out = Self::zero(&self.field, self.nvars);
        if d == 0 {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] < d)
            .cloned()
            .collect();
        out
    }

    pub fn leading_parts(&self) -> Result<LeadingParts<F>> {
        let lv = self.lv().ok_or_else(|| {
            Error::Domain("leading variable of a constant polynomial".to_string())
        })?;
        Ok(LeadingParts {
            lv,
            ini: self.ini_in(lv),
            tail: self.tail_in(lv),
            ldeg: self.degree_in(lv),
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        let mut out = self.clone();
        for (_, t) in &mut out.terms {
            *t = self.field.mul(t, c);
        }
        out
    }

    pub fn mul_var_pow(&self, v: usize, e: u32) -> Self {
        let mut out = self.clone();
        if e > 0 {
            for (x, _) in &mut out.terms {
                x[v] += e;
            }
        }
        out
    }

    /// Exponents of the largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for (x, _) in &self.terms {
            match &mut m {
                None => m = Some(x.clone()),
                Some(m) => {
                    for (a, b) in m.iter_mut().zip(x) {
                        *a = (*a).min(*b);
                    }
                }
            }
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Divides by the monomial `x^m`, which must divide every term.
    pub fn div_monomial(&self, m: &[u32]) -> Self {
        let mut out = self.clone();
        for (x, _) in &mut out.terms {
            for (a, b) in x.iter_mut().zip(m) {
                *a = a.checked_sub(*b).expect("monomial does not divide every term");
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Makes the lexicographic leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&self.field.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Primitive form: coprime integer coefficients with a positive leading
    /// coefficient over Q, monic over a prime field.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<&F::Elem> = self.terms.iter().map(|(_, c)| c).collect();
        let c = self.field.content(&coeffs);
        self.scale(&self.field.inv(&c).expect("nonzero content"))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let f = &self.field;
        let (dm, dc) = &d.terms[0];
        let dc_inv = f.inv(dc)?;
        let mut rem: BTreeMap<LexKey, F::Elem> = self
            .terms
            .iter()
            .map(|(e, c)| (LexKey(e.clone()), c.clone()))
            .collect();
        let mut quotient_terms = Vec::new();
        while let Some((LexKey(lm), lc)) = rem.pop_last() {
            if lm.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Exponents = lm.iter().zip(dm).map(|(a, b)| a - b).collect();
            let qc = f.mul(&lc, &dc_inv);
            for (e, c) in &d.terms[1..] {
                let key = LexKey(e.iter().zip(&qm).map(|(a, b)| a + b).collect());
                let delta = f.neg(&f.mul(c, &qc));
                match rem.entry(key) {
                    Entry::Occupied(mut slot) => {
                        let sum = f.add(slot.get(), &delta);
                        if f.is_zero(&sum) {
                            slot.remove();
                        } else {
                            *slot.get_mut() = sum;
                        }
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(delta);
                    }
                }
            }
            quotient_terms.push((qm, qc));
        }
        // Quotient terms come out in strictly decreasing order.
        Some(Self {
            field: f.clone(),
            nvars: self.nvars,
            terms: quotient_terms,
        })
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[perm[i]] = k;
            }
            (ne, c.clone())
        });
        Self::from_terms(&self.field, self.nvars, terms)
    }

    /// Coefficient-wise map into another field; `None` if any coefficient fails to map.
    pub fn try_map_field<G: Field>(
        &self,
        target: &G,
        mut f: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Option<Polynomial<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            terms.push((e.clone(), f(c)?));
        }
        Some(Polynomial::from_terms(target, self.nvars, terms))
    }

    /// Canonical total order on polynomials: term by term from the leading
    /// term, comparing monomials first and then coefficients.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering
    where
        F::Elem: Ord,
    {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match cmp_lex(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    pub fn to_string_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        let f = &self.field;
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let name = names[i].as_ref();
                    if x == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&f.format(&abs));
            } else {
                if !f.is_one(&abs) {
                    out.push_str(&f.format(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let f = &self.field;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let oc = |c: &F::Elem| if negate_other { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match cmp_lex(&a.0, &b.0) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((b.0.clone(), oc(&b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        f.sub(&a.1, &b.1)
                    } else {
                        f.add(&a.1, &b.1)
                    };
                    if !f.is_zero(&c) {
                        terms.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), oc(c))));
        Self {
            field: f.clone(),
            nvars: self.nvars,
            terms,
        }
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.merge(rhs, false)
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.merge(rhs, true)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let mut out = self.clone();
        for (_, c) in &mut out.terms {
            *c = self.field.neg(c);
        }
        out
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f, self.nvars);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            let mut out = self.scale(c);
            for (e, _) in &mut out.terms {
                for (x, y) in e.iter_mut().zip(m) {
                    *x += y;
                }
            }
            return out;
        }
        let mut acc: HashMap<Exponents, F::Elem> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = f.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(slot) => *slot = f.add(slot, &c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Polynomial::from_map(f, self.nvars, acc)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.to_string_with(&names))
    }
}

/// Union of the supports of a family of polynomials.
pub fn support_of<'a, F: Field + 'a>(
    polys: impl IntoIterator<Item = &'a Polynomial<F>>,
) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    for p in polys {
        s.extend(p.support());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_poly_in;

    fn p(s: &str, n: usize) -> Polynomial<Rationals> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        parse_poly_in(s, &names).unwrap()
    }

    #[test]
    fn leading_parts_of_worked_example() {
        let f = p("(x3+x2)*x4 + x3 - 1", 4);
        let lp = f.leading_parts().unwrap();
        assert_eq!(lp.lv, 3);
        assert_eq!(lp.ini, p("x3+x2", 4));
        assert_eq!(lp.tail, p("x3-1", 4));
        assert_eq!(lp.ldeg, 1);
        let rebuilt = &(&lp.ini * &Polynomial::var_pow(&Rationals, 4, 3, lp.ldeg)) + &lp.tail;
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn leading_parts_monic_and_single_term() {
        let lp = p("x4^2 + x2", 4).leading_parts().unwrap();
        assert_eq!((lp.lv, lp.ldeg), (3, 2));
        assert_eq!(lp.ini, p("1", 4));
        assert_eq!(lp.tail, p("x2", 4));

        let lp = p("x1^5", 4).leading_parts().unwrap();
        assert_eq!((lp.lv, lp.ldeg), (0, 5));
        assert!(lp.tail.is_zero());
    }

    #[test]
    fn leading_parts_rejects_constants() {
        assert!(matches!(p("3", 2).leading_parts(), Err(Error::Domain(_))));
        assert!(matches!(p("0", 2).leading_parts(), Err(Error::Domain(_))));
    }

    #[test]
    fn support_examples() {
        assert_eq!(p("x2+x1", 3).support(), BTreeSet::from([0, 1]));
        assert!(p("0", 3).support().is_empty());
        let set = [
            "x2+x1", "x3+x1", "x4^2+x2", "x4^3+x3", "x5+x2", "x5+x3+x2",
        ]
        .map(|s| p(s, 5));
        assert_eq!(support_of(&set), BTreeSet::from([0, 1, 2, 3, 4]));
    }

    #[test]
    fn canonical_order_and_display() {
        let f = p("x1 + x2*x4 - 3 + x4^2", 4);
        assert_eq!(f.to_string(), "x4^2 + x2*x4 + x1 - 3");
        assert_eq!(p("-x2*x4 + x3", 4).to_string(), "-x2*x4 + x3");
        assert_eq!(p("1/2*x1 - 1/3", 1).to_string(), "1/2*x1 - 1/3");
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - x2^2", 2);
        let b = p("x1 + x2", 2);
        assert_eq!(a.div_exact(&b), Some(p("x1 - x2", 2)));
        assert_eq!(p("x1^2 + 1", 2).div_exact(&b), None);
    }

    #[test]
    fn coefficients_round_trip() {
        let f = p("x1*x3^2 + x2*x3 - x1 + 4", 3);
        let cs = f.coeffs_in(2);
        assert_eq!(cs.len(), 3);
        assert_eq!(Polynomial::from_coeffs_in(&Rationals, 3, 2, &cs), f);
    }

    #[test]
    fn eval_over_prime_field() {
        let gf = PrimeField::new(5).unwrap();
        let f = p("x1*x2 - 1", 2)
            .try_map_field(&gf, |c| gf.from_rational(c))
            .unwrap();
        assert_eq!(f.eval(&[2, 3]), 0);
        assert_eq!(f.eval(&[2, 2]), 3);
    }
}
