use num_traits::{One, Zero};

use super::SparsePoly;
use crate::error::{Error, Result};
use crate::exactnum::Rat;

/// Dense univariate polynomial over the rationals, low degree first, trimmed.
pub type QPoly = Vec<Rat>;

pub(crate) fn q_trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn q_add(a: &[Rat], b: &[Rat]) -> QPoly {
    let n = a.len().max(b.len());
    let z = Rat::zero();
    q_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub(crate) fn q_neg(a: &[Rat]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn q_mul(a: &[Rat], b: &[Rat]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(out)
}

pub(crate) fn q_divrem(a: &[Rat], b: &[Rat]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b.last().unwrap();
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / lb;
        for (i, bi) in b.iter().enumerate() {
            r[i + k] -= &c * bi;
        }
        q[k] = c;
        r.pop();
        r = q_trim(r);
    }
    (q_trim(q), r)
}

pub(crate) fn q_gcd(a: &[Rat], b: &[Rat]) -> QPoly {
    let (mut a, mut b) = (q_trim(a.to_vec()), q_trim(b.to_vec()));
    while !b.is_empty() {
        let r = q_divrem(&a, &b).1;
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        a = a.iter().map(|c| c / &l).collect();
    }
    a
}

pub(crate) fn q_deriv(a: &[Rat]) -> QPoly {
    q_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect(),
    )
}

/// Integral-domain operations needed by the subresultant sequence.
trait Domain: Clone {
    fn d_zero() -> Self;
    fn d_one() -> Self;
    fn d_is_zero(&self) -> bool;
    fn d_mul(&self, o: &Self) -> Self;
    fn d_sub(&self, o: &Self) -> Self;
    fn d_neg(&self) -> Self;
    fn d_div(&self, o: &Self) -> Self;
    fn d_pow(&self, n: usize) -> Self {
        let mut acc = Self::d_one();
        for _ in 0..n {
            acc = acc.d_mul(self);
        }
        acc
    }
}

impl Domain for Rat {
    fn d_zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn d_one() -> Self {
        <Rat as One>::one()
    }
    fn d_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn d_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn d_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn d_neg(&self) -> Self {
        -self
    }
    fn d_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Domain for QPoly {
    fn d_zero() -> Self {
        Vec::new()
    }
    fn d_one() -> Self {
        vec![Rat::one()]
    }
    fn d_is_zero(&self) -> bool {
        self.is_empty()
    }
    fn d_mul(&self, o: &Self) -> Self {
        q_mul(self, o)
    }
    fn d_sub(&self, o: &Self) -> Self {
        q_add(self, &q_neg(o))
    }
    fn d_neg(&self) -> Self {
        q_neg(self)
    }
    fn d_div(&self, o: &Self) -> Self {
        let (q, r) = q_divrem(self, o);
        debug_assert!(r.is_empty(), "inexact division in subresultant sequence");
        q
    }
}

fn trim<D: Domain>(mut a: Vec<D>) -> Vec<D> {
    while a.last().is_some_and(|c| c.d_is_zero()) {
        a.pop();
    }
    a
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem<D: Domain>(a: &[D], b: &[D]) -> Vec<D> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    let mut e = a.len() - b.len() + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let k = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.d_mul(&lb);
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + k] = r[i + k].d_sub(&lr.d_mul(bi));
        }
        r.pop();
        r = trim(r);
        e -= 1;
    }
    let f = lb.d_pow(e);
    r.into_iter().map(|c| c.d_mul(&f)).collect()
}

/// Resultant via the subresultant pseudo-remainder sequence.
fn subresultant<D: Domain>(a: &[D], b: &[D]) -> D {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() || b.is_empty() {
        return D::d_zero();
    }
    let mut s = D::d_one();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = s.d_neg();
        }
    }
    if b.len() == 1 {
        return s.d_mul(&b[0].d_pow(a.len() - 1));
    }
    let mut g = D::d_one();
    let mut h = D::d_one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.d_neg();
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return D::d_zero();
        }
        let div = g.d_mul(&h.d_pow(delta));
        a = b;
        b = r.into_iter().map(|c| c.d_div(&div)).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.d_pow(delta).d_div(&h.d_pow(delta - 1))
        };
        if b.len() == 1 {
            let da = a.len() - 1;
            let lb = b[0].clone();
            let res = if da == 0 {
                h
            } else {
                lb.d_pow(da).d_div(&h.d_pow(da - 1))
            };
            return s.d_mul(&res);
        }
    }
}

/// Resultant of two univariate rational polynomials.
pub fn univariate_resultant(a: &[Rat], b: &[Rat]) -> Rat {
    subresultant(a, b)
}

/// Coefficients of `f` in variable `var`, each a polynomial in the other one.
fn split_bivariate(f: &SparsePoly, var: usize) -> Result<Vec<QPoly>> {
    let terms = f
        .rational_terms()
        .ok_or_else(|| Error::Degenerate("resultant needs rational coefficients".into()))?;
    let other = 1 - var;
    let mut out: Vec<QPoly> = vec![Vec::new(); f.degree_in(var) as usize + 1];
    for (e, c) in terms {
        let row = &mut out[e[var] as usize];
        let k = if f.nvars() == 2 { e[other] as usize } else { 0 };
        if row.len() <= k {
            row.resize(k + 1, Rat::zero());
        }
        row[k] = c;
    }
    Ok(out.into_iter().map(q_trim).collect())
}

/// Resultant eliminating `var`; the result keeps the variable list with a
/// zero exponent in `var`. Supports one or two variables.
pub fn resultant(f: &SparsePoly, g: &SparsePoly, var: usize) -> Result<SparsePoly> {
    if f.nvars() != g.nvars() || f.nvars() > 2 || var >= f.nvars() {
        return Err(Error::Degenerate(
            "resultant supports one or two variables".into(),
        ));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = split_bivariate(f, var)?;
    let b = split_bivariate(g, var)?;
    let r = subresultant(&a, &b);
    let mut out = SparsePoly::zero(
        &crate::exactnum::ExtField::rational(),
        &f.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
    );
    for (k, c) in r.into_iter().enumerate() {
        let mut e = vec![0; f.nvars()];
        if f.nvars() == 2 {
            e[1 - var] = k as u32;
        }
        out.add_term(e, crate::exactnum::Value::Q(c));
    }
    Ok(out)
}

/// Squarefree test over the rationals for a bivariate polynomial.
pub(crate) fn bivariate_squarefree(f: &SparsePoly) -> Result<bool> {
    let coeffs = split_bivariate(f, 1)?;
    let content = coeffs.iter().fold(Vec::new(), |acc: QPoly, c| {
        if acc.is_empty() {
            q_gcd(c, c)
        } else {
            q_gcd(&acc, c)
        }
    });
    if q_gcd(&content, &q_deriv(&content)).len() > 1 {
        return Ok(false);
    }
    let prim: Vec<QPoly> = coeffs.iter().map(|c| q_divrem(c, &content).0).collect();
    if prim.len() <= 1 {
        return Ok(true);
    }
    if (0..8).any(|x0| squarefree_at(&prim, &Rat::from_integer(x0.into()))) {
        return Ok(true);
    }
    let dprim: Vec<QPoly> = prim
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.iter().map(|v| v * Rat::from_integer(i.into())).collect())
        .collect();
    Ok(!subresultant(&prim, &dprim).d_is_zero())
}

fn q_eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// A squarefree specialization with the leading coefficient kept certifies
/// a nonzero discriminant.
fn squarefree_at(coeffs: &[QPoly], x0: &Rat) -> bool {
    let u: QPoly = coeffs.iter().map(|c| q_eval(c, x0)).collect();
    if u.last().is_none_or(|c| c.is_zero()) {
        return false;
    }
    q_gcd(&u, &q_deriv(&u)).len() <= 1
}
