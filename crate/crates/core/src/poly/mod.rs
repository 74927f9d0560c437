//! Sparse exact polynomials over an [`ExtField`], Newton polygons, weighted
//! orders and the blow-up substitution kernel.

mod newton;
mod parse;
mod resultant;
mod transform;

pub use newton::{face_poly, newton_polygon, Face, NewtonPolygon};
pub use parse::parse_poly;
pub(crate) use resultant::{q_deriv, q_divrem, q_gcd, q_trim};
pub use resultant::{resultant, univariate_resultant, QPoly};
pub use transform::{blowup_transform, weighted_order, Chart};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ExtField, ExtResult, Rat, Value};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no zero coefficients are stored.
#[derive(Clone, Debug)]
pub struct SparsePoly {
    field: ExtField,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Value>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.field == other.field && self.terms == other.terms
    }
}

pub(crate) fn checked_exp(e: i64) -> u32 {
    assert!((0..=i32::MAX as i64).contains(&e), "exponent overflow: {e}");
    e as u32
}

impl SparsePoly {
    pub fn zero(field: &ExtField, vars: &[&str]) -> Self {
        SparsePoly {
            field: field.clone(),
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_like(&self) -> Self {
        SparsePoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: Value) -> Self {
        let mut p = self.zero_like();
        p.add_term(vec![0; self.nvars()], c);
        p
    }

    pub fn var_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        let mut p = self.zero_like();
        p.add_term(e, self.field.one());
        p
    }

    /// Builds a rational polynomial from `(exponents, coefficient)` pairs.
    pub fn from_rat_terms(vars: &[&str], terms: &[(Vec<u32>, Rat)]) -> Self {
        let f = ExtField::rational();
        let mut p = SparsePoly::zero(&f, vars);
        for (e, c) in terms {
            p.add_term(e.clone(), Value::Q(c.clone()));
        }
        p
    }

    pub fn from_int_terms(vars: &[&str], terms: &[(&[u32], i64)]) -> Self {
        let f = ExtField::rational();
        let mut p = SparsePoly::zero(&f, vars);
        for (e, c) in terms {
            p.add_term(e.to_vec(), Value::Q(Rat::from_integer((*c).into())));
        }
        p
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &Value)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().map(|m| m.0.clone()).collect()
    }

    pub fn coeff(&self, e: &[u32]) -> Value {
        self.terms
            .get(&Monomial(e.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Value {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Value) {
        assert_eq!(e.len(), self.nvars());
        let ctx = self.field.ctx();
        let key = Monomial(e);
        let new = match self.terms.get(&key) {
            Some(old) => ctx.add(old, &c),
            None => c,
        };
        if ctx.is_zero(&new) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, new);
        }
    }

    pub fn add(&self, o: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars(), o.nvars());
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.0.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> SparsePoly {
        let ctx = self.field.ctx();
        let mut r = self.zero_like();
        r.terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), ctx.neg(c)))
            .collect();
        r
    }

    pub fn sub(&self, o: &SparsePoly) -> SparsePoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars(), o.nvars());
        let ctx = self.field.ctx();
        let mut r = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let e: Vec<u32> =
                    m1.0.iter()
                        .zip(&m2.0)
                        .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                        .collect();
                r.add_term(e, ctx.mul(c1, c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &Value) -> SparsePoly {
        let ctx = self.field.ctx();
        let mut r = self.zero_like();
        for (m, v) in &self.terms {
            r.add_term(m.0.clone(), ctx.mul(v, c));
        }
        r
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut acc = self.constant_like(self.field.one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn min_exponent(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).min().unwrap_or(0)
    }

    /// Applies an exponent map that must be injective on the support.
    pub fn map_exponents(&self, f: impl Fn(&[u32]) -> Vec<u32>) -> SparsePoly {
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            let e = f(&m.0);
            let key = Monomial(e);
            assert!(!r.terms.contains_key(&key), "non-injective exponent map");
            r.terms.insert(key, c.clone());
        }
        r
    }

    /// Same coefficients with a new variable list of equal length.
    pub fn rename(&self, vars: &[&str]) -> SparsePoly {
        assert_eq!(vars.len(), self.nvars());
        let mut r = self.clone();
        r.vars = Arc::new(vars.iter().map(|s| s.to_string()).collect());
        r
    }

    pub fn derivative(&self, var: usize) -> SparsePoly {
        let ctx = self.field.ctx();
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            if m.0[var] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            r.add_term(e, ctx.mul(c, &ctx.int_value(m.0[var] as i64)));
        }
        r
    }

    /// Substitutes a constant for one variable (its exponent becomes 0).
    pub fn eval_var(&self, var: usize, x: &Value) -> SparsePoly {
        let ctx = self.field.ctx();
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] = 0;
            r.add_term(e, ctx.mul(c, &ctx.pow(x, k as u64)));
        }
        r
    }

    /// `f(..., x_var + a, ...)`.
    pub fn translate(&self, var: usize, a: &Value) -> SparsePoly {
        let ctx = self.field.ctx();
        if ctx.is_zero(a) {
            return self.clone();
        }
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            let k = m.0[var];
            // binomial expansion of (x + a)^k
            let mut binom = Rat::one();
            let mut apow = vec![ctx.one()];
            for _ in 0..k {
                let last = apow.last().unwrap().clone();
                apow.push(ctx.mul(&last, a));
            }
            for i in 0..=k {
                let mut e = m.0.clone();
                e[var] = i;
                let coeff = ctx.mul(c, &ctx.mul(&ctx.rat_value(&binom), &apow[(k - i) as usize]));
                r.add_term(e, coeff);
                binom =
                    binom * Rat::from_integer((k - i).into()) / Rat::from_integer((i + 1).into());
            }
        }
        r
    }

    /// Divides by `x^e` exactly.
    pub fn div_monomial(&self, e: &[u32]) -> SparsePoly {
        self.map_exponents(|m| {
            m.iter()
                .zip(e)
                .map(|(a, b)| a.checked_sub(*b).expect("inexact monomial division"))
                .collect()
        })
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Vec<u32> {
        (0..self.nvars()).map(|v| self.min_exponent(v)).collect()
    }

    /// Moves coefficients to a tower that was split off this polynomial's field.
    pub fn project(&self, field: &ExtField) -> SparsePoly {
        let mut r = SparsePoly {
            field: field.clone(),
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            r.add_term(m.0.clone(), field.project(c));
        }
        r
    }

    /// Re-embeds into a tower extending this polynomial's field.
    pub fn lift(&self, field: &ExtField) -> SparsePoly {
        assert!(field.depth() >= self.field.depth());
        let mut r = SparsePoly {
            field: field.clone(),
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            r.add_term(
                m.0.clone(),
                lift_value(c, self.field.depth(), field.depth()),
            );
        }
        r
    }

    /// D5 check that every stored coefficient is a unit.
    pub fn check_units(&self) -> ExtResult<()> {
        let ctx = self.field.ctx();
        for c in self.terms.values() {
            ctx.nonzero(c)?;
        }
        Ok(())
    }

    /// Dense coefficient vector in `var`, assuming no other variable occurs.
    pub fn to_dense(&self, var: usize) -> Vec<Value> {
        let n = self.degree_in(var) as usize;
        let mut out = vec![self.field.zero(); if self.is_zero() { 0 } else { n + 1 }];
        for (m, c) in &self.terms {
            debug_assert!(m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0));
            out[m.0[var] as usize] = c.clone();
        }
        out
    }

    pub fn from_dense(field: &ExtField, vars: &[&str], var: usize, coeffs: &[Value]) -> SparsePoly {
        let mut p = SparsePoly::zero(field, vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[var] = i as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Rational coefficients, when every coefficient lies in the prime field.
    pub fn rational_terms(&self) -> Option<Vec<(Vec<u32>, Rat)>> {
        let ctx = self.field.ctx();
        self.terms
            .iter()
            .map(|(m, c)| Some((m.0.clone(), ctx.as_rat(c)?)))
            .collect()
    }

    /// Squarefree test for polynomials with rational coefficients in at most
    /// two variables.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let terms = self.rational_terms().ok_or_else(|| {
            Error::Degenerate("squarefree test needs rational coefficients".into())
        })?;
        let f = SparsePoly::from_rat_terms(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &terms,
        );
        match f.nvars() {
            1 => {
                let ctx = f.field.ctx();
                let d = f.to_dense(0);
                Ok(ctx.p_gcd(&d, &ctx.p_deriv(&d))?.len() <= 1)
            }
            2 => resultant::bivariate_squarefree(&f),
            _ => Err(Error::Degenerate(
                "squarefree test supports at most two variables".into(),
            )),
        }
    }
}

pub(crate) fn lift_value(v: &Value, from: usize, to: usize) -> Value {
    let mut v = v.clone();
    for _ in from..to {
        v = if matches!(&v, Value::Q(r) if r.is_zero()) || matches!(&v, Value::P(c) if c.is_empty())
        {
            Value::P(Vec::new())
        } else {
            Value::P(vec![v])
        };
    }
    v
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ctx = self.field.ctx();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, body) = match ctx.as_rat(c) {
                Some(r) => {
                    let a = r.abs();
                    let s = if a.denom().is_one() {
                        format!("{}", a.numer())
                    } else {
                        format!("{}/{}", a.numer(), a.denom())
                    };
                    (r.is_negative(), s)
                }
                None => (false, format!("({})", self.field.format(c))),
            };
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", body, mono.join("*"))
            };
            match (first, neg) {
                (true, false) => write!(f, "{}", term)?,
                (true, true) => write!(f, "-{}", term)?,
                (false, false) => write!(f, " + {}", term)?,
                (false, true) => write!(f, " - {}", term)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Squarefree decomposition of a univariate polynomial: the squarefree
/// part and each squarefree factor with its multiplicity.
pub fn squarefree_part(f: &SparsePoly) -> ExtResult<(SparsePoly, Vec<(SparsePoly, usize)>)> {
    assert_eq!(
        f.nvars(),
        1,
        "squarefree_part expects a univariate polynomial"
    );
    let ctx = f.field.ctx();
    let dense = f.to_dense(0);
    let parts = ctx.p_squarefree(&dense)?;
    let vars: Vec<&str> = f.vars.iter().map(|s| s.as_str()).collect();
    let mut rad = vec![ctx.one()];
    let mut factors = Vec::new();
    for (p, m) in parts {
        rad = ctx.p_mul(&rad, &p);
        factors.push((SparsePoly::from_dense(&f.field, &vars, 0, &p), m));
    }
    Ok((SparsePoly::from_dense(&f.field, &vars, 0, &rad), factors))
}

impl Zero for Monomial {
    fn zero() -> Self {
        Monomial(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl std::ops::Add for Monomial {
    type Output = Monomial;
    fn add(self, o: Monomial) -> Monomial {
        if self.0.is_empty() {
            return o;
        }
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn grlex_display_is_deterministic() {
        assert_eq!(p("x^2 - y^4").to_string(), "-y^4 + x^2");
        assert_eq!(p("x*y + 3/2").to_string(), "x*y + 3/2");
    }

    #[test]
    fn translate_matches_expansion() {
        let f = p("x^2*y + y^3");
        let t = f.translate(1, &Value::Q(rat_int(1)));
        assert_eq!(t, p("x^2*y + x^2 + y^3 + 3*y^2 + 3*y + 1"));
    }

    #[test]
    fn squarefree_part_examples() {
        let t = |s: &str| parse_poly(s, &["t"]).unwrap();
        let (r, f) = squarefree_part(&t("(t-1)^2")).unwrap();
        assert_eq!(r, t("t - 1"));
        assert_eq!(f, vec![(t("t - 1"), 2)]);
        let (r, f) = squarefree_part(&t("t^2 - 1")).unwrap();
        assert_eq!(r, t("t^2 - 1"));
        assert_eq!(f, vec![(t("t^2 - 1"), 1)]);
        let (r, f) = squarefree_part(&t("t^3 - t^2")).unwrap();
        assert_eq!(r, t("t^2 - t"));
        assert_eq!(f, vec![(t("t - 1"), 1), (t("t"), 2)]);
    }

    #[test]
    fn bivariate_squarefree() {
        assert!(p("x^2 - y^4").is_squarefree().unwrap());
        assert!(!p("(y - x^2)^2").is_squarefree().unwrap());
        assert!(!p("x^2*(y - 1)").is_squarefree().unwrap());
        assert!(p("x*y*(x + y)").is_squarefree().unwrap());
        assert!(!p("(x+1)^2*y").is_squarefree().unwrap());
    }
}
