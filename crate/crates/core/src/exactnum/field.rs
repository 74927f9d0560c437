use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::Rat;

/// Raw element of some level of an [`ExtField`] tower.
///
/// Level 0 elements are `Q`. An element of level `k > 0` is `P(coeffs)`, a
/// polynomial in the level-`k` generator with level `k-1` coefficients,
/// stored low degree first, trimmed, and reduced modulo the level minimal
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Q(Rat),
    P(Vec<Value>),
}

#[derive(Debug)]
struct Level {
    name: String,
    /// Monic, squarefree, coefficients are values of the level below.
    minpoly: Vec<Value>,
}

/// A tower `Q ⊂ Q[t1]/(m1) ⊂ ... ⊂ Q[t1..tn]/(m1..mn)` of squarefree
/// (not necessarily irreducible) extensions.
#[derive(Clone, Debug)]
pub struct ExtField {
    levels: Arc<Vec<Level>>,
}

/// A factorization of one level's minimal polynomial discovered while
/// inverting a zero divisor.
#[derive(Clone, Debug)]
pub struct SplitEvent {
    /// 0-based index of the level whose minimal polynomial splits.
    pub level: usize,
    pub factors: (Vec<Value>, Vec<Value>),
}

#[derive(Clone, Debug)]
pub enum ExtError {
    Split(SplitEvent),
    DivisionByZero,
}

impl From<SplitEvent> for ExtError {
    fn from(e: SplitEvent) -> Self {
        ExtError::Split(e)
    }
}

pub type ExtResult<T> = std::result::Result<T, ExtError>;

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels)
            || (self.levels.len() == other.levels.len()
                && self
                    .levels
                    .iter()
                    .zip(other.levels.iter())
                    .all(|(a, b)| a.minpoly == b.minpoly))
    }
}

impl ExtField {
    pub fn rational() -> Self {
        ExtField {
            levels: Arc::new(Vec::new()),
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Degree of the tower over the rationals (number of complex embeddings).
    pub fn degree(&self) -> usize {
        self.levels.iter().map(|l| l.minpoly.len() - 1).product()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.levels.iter().map(|l| l.name.clone()).collect()
    }

    pub(crate) fn ctx(&self) -> Ctx<'_> {
        Ctx {
            levels: &self.levels,
        }
    }

    /// Minimal polynomial of level `i` (0-based), low degree first.
    pub fn minpoly(&self, i: usize) -> &[Value] {
        &self.levels[i].minpoly
    }

    /// Adjoins a root of `minpoly` (coefficients in this field, low degree first).
    ///
    /// A degree-one polynomial yields the same field. The polynomial is made
    /// monic first; it must be squarefree.
    pub fn adjoin(&self, name: &str, minpoly: &[Value]) -> Result<ExtField, AdjoinError> {
        let c = self.ctx();
        let m = c.p_trim(minpoly.to_vec());
        if m.len() < 2 {
            return Err(AdjoinError::Constant);
        }
        let m = c.p_monic(&m)?;
        if m.len() == 2 {
            return Ok(self.clone());
        }
        let g = c.p_gcd(&m, &c.p_deriv(&m))?;
        if g.len() > 1 {
            return Err(AdjoinError::NotSquarefree);
        }
        let mut levels: Vec<Level> = self
            .levels
            .iter()
            .map(|l| Level {
                name: l.name.clone(),
                minpoly: l.minpoly.clone(),
            })
            .collect();
        levels.push(Level {
            name: name.to_string(),
            minpoly: m,
        });
        Ok(ExtField {
            levels: Arc::new(levels),
        })
    }

    /// The two towers obtained by replacing the split level's minimal
    /// polynomial by each factor.
    pub fn split(&self, ev: &SplitEvent) -> (ExtField, ExtField) {
        let mk = |f: &Vec<Value>| {
            let levels = self
                .levels
                .iter()
                .enumerate()
                .map(|(i, l)| Level {
                    name: l.name.clone(),
                    minpoly: if i == ev.level {
                        f.clone()
                    } else {
                        l.minpoly.clone()
                    },
                })
                .collect();
            ExtField {
                levels: Arc::new(levels),
            }
        };
        let a = mk(&ev.factors.0);
        let b = mk(&ev.factors.1);
        // levels above the split one need their coefficients reduced again
        let fix = |f: ExtField| {
            let mut levels: Vec<Level> = Vec::new();
            for (i, l) in f.levels.iter().enumerate() {
                let minpoly = if i > ev.level {
                    let below = Ctx {
                        levels: &f.levels[..i],
                    };
                    below.p_trim(l.minpoly.iter().map(|v| below.canon(v)).collect())
                } else {
                    l.minpoly.clone()
                };
                levels.push(Level {
                    name: l.name.clone(),
                    minpoly,
                });
            }
            ExtField {
                levels: Arc::new(levels),
            }
        };
        (fix(a), fix(b))
    }

    /// Re-reduces a value of a field this one was split from.
    pub fn project(&self, v: &Value) -> Value {
        self.ctx().canon(v)
    }

    pub fn zero(&self) -> Value {
        self.ctx().zero()
    }

    pub fn one(&self) -> Value {
        self.ctx().one()
    }

    pub fn rat_value(&self, r: &Rat) -> Value {
        self.ctx().rat_value(r)
    }

    /// The top-level generator.
    pub fn generator(&self) -> Value {
        let c = self.ctx();
        assert!(c.depth() > 0, "rational field has no generator");
        Value::P(vec![c.base().zero(), c.base().one()])
    }

    pub fn elem(&self, v: Value) -> ExtElem {
        ExtElem {
            field: self.clone(),
            value: v,
        }
    }

    pub fn format(&self, v: &Value) -> String {
        let names = self.generator_names();
        fmt_value(v, &names)
    }
}

#[derive(Clone, Debug)]
pub enum AdjoinError {
    Constant,
    NotSquarefree,
    Ext(ExtError),
}

impl From<ExtError> for AdjoinError {
    fn from(e: ExtError) -> Self {
        AdjoinError::Ext(e)
    }
}

fn fmt_value(v: &Value, names: &[String]) -> String {
    match v {
        Value::Q(r) => {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        Value::P(cs) => {
            let depth = names.len();
            if cs.is_empty() {
                return "0".into();
            }
            let name = &names[depth - 1];
            let below = &names[..depth - 1];
            let mut parts = Vec::new();
            for (i, c) in cs.iter().enumerate().rev() {
                if is_zero_value(c) {
                    continue;
                }
                let cs = fmt_value(c, below);
                let cs = if matches!(c, Value::P(v) if v.len() > 1 || v.iter().filter(|x| !is_zero_value(x)).count() > 1)
                    || cs.contains(['+', ' '])
                {
                    format!("({})", cs)
                } else {
                    cs
                };
                parts.push(match i {
                    0 => cs,
                    1 if cs == "1" => name.clone(),
                    1 => format!("{}*{}", cs, name),
                    _ if cs == "1" => format!("{}^{}", name, i),
                    _ => format!("{}*{}^{}", cs, name, i),
                });
            }
            parts.join(" + ")
        }
    }
}

fn is_zero_value(v: &Value) -> bool {
    match v {
        Value::Q(r) => r.is_zero(),
        Value::P(c) => c.is_empty(),
    }
}

/// Arithmetic context for one level of a tower.
#[derive(Clone, Copy)]
pub(crate) struct Ctx<'a> {
    levels: &'a [Level],
}

impl<'a> Ctx<'a> {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn base(&self) -> Ctx<'a> {
        Ctx {
            levels: &self.levels[..self.levels.len() - 1],
        }
    }

    fn top(&self) -> &'a [Value] {
        &self.levels[self.levels.len() - 1].minpoly
    }

    pub fn zero(&self) -> Value {
        if self.depth() == 0 {
            Value::Q(Rat::zero())
        } else {
            Value::P(Vec::new())
        }
    }

    pub fn one(&self) -> Value {
        self.rat_value(&Rat::one())
    }

    pub fn rat_value(&self, r: &Rat) -> Value {
        if self.depth() == 0 {
            Value::Q(r.clone())
        } else if r.is_zero() {
            Value::P(Vec::new())
        } else {
            Value::P(vec![self.base().rat_value(r)])
        }
    }

    pub fn int_value(&self, n: i64) -> Value {
        self.rat_value(&Rat::from_integer(n.into()))
    }

    pub fn is_zero(&self, a: &Value) -> bool {
        is_zero_value(a)
    }

    /// The rational value when `a` lies in the prime field.
    pub fn as_rat(&self, a: &Value) -> Option<Rat> {
        match a {
            Value::Q(r) => Some(r.clone()),
            Value::P(c) if c.is_empty() => Some(Rat::zero()),
            Value::P(c) if c.len() == 1 => self.base().as_rat(&c[0]),
            _ => None,
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => Value::Q(x + y),
            (Value::P(x), Value::P(y)) => Value::P(self.base().p_add(x, y)),
            _ => panic!("mixed tower levels"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match a {
            Value::Q(x) => Value::Q(-x),
            Value::P(x) => Value::P(self.base().p_neg(x)),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => Value::Q(x * y),
            (Value::P(x), Value::P(y)) => {
                let base = self.base();
                let prod = base.p_mul(x, y);
                Value::P(base.p_rem_monic(&prod, self.top()))
            }
            _ => panic!("mixed tower levels"),
        }
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Inverse, or the split of some level's minimal polynomial revealed
    /// by `a` being a zero divisor.
    pub fn inv(&self, a: &Value) -> ExtResult<Value> {
        match a {
            Value::Q(x) => {
                if x.is_zero() {
                    Err(ExtError::DivisionByZero)
                } else {
                    Ok(Value::Q(x.recip()))
                }
            }
            Value::P(x) => {
                if x.is_empty() {
                    return Err(ExtError::DivisionByZero);
                }
                let base = self.base();
                let m = self.top();
                let (g, s, _t) = base.p_xgcd(x, m)?;
                if g.len() == 1 {
                    // g is monic, hence 1
                    Ok(Value::P(base.p_rem_monic(&s, m)))
                } else {
                    let (q, r) = base.p_divrem(m, &g)?;
                    debug_assert!(r.is_empty());
                    Err(ExtError::Split(SplitEvent {
                        level: self.depth() - 1,
                        factors: (g, q),
                    }))
                }
            }
        }
    }

    /// D5 zero test: `Ok(false)` for zero, `Ok(true)` for a unit.
    pub fn nonzero(&self, a: &Value) -> ExtResult<bool> {
        if self.is_zero(a) {
            return Ok(false);
        }
        self.inv(a).map(|_| true)
    }

    /// Fully reduces a value whose subvalues may not be reduced for this tower.
    pub fn canon(&self, v: &Value) -> Value {
        match v {
            Value::Q(r) => Value::Q(r.clone()),
            Value::P(cs) => {
                let base = self.base();
                let cs: Vec<Value> = cs.iter().map(|c| base.canon(c)).collect();
                let cs = base.p_trim(cs);
                Value::P(base.p_rem_monic(&cs, self.top()))
            }
        }
    }

    // ---- dense univariate polynomials with coefficients at this level ----

    pub fn p_trim(&self, mut a: Vec<Value>) -> Vec<Value> {
        while a.last().is_some_and(|c| self.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn p_add(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        let n = a.len().max(b.len());
        let z = self.zero();
        let out = (0..n)
            .map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.p_trim(out)
    }

    pub fn p_neg(&self, a: &[Value]) -> Vec<Value> {
        a.iter().map(|c| self.neg(c)).collect()
    }

    pub fn p_sub(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        self.p_add(a, &self.p_neg(b))
    }

    pub fn p_mul(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.is_zero(y) {
                    continue;
                }
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.p_trim(out)
    }

    pub fn p_scale(&self, a: &[Value], c: &Value) -> Vec<Value> {
        self.p_trim(a.iter().map(|x| self.mul(x, c)).collect())
    }

    /// Remainder modulo a monic polynomial; never inverts.
    pub fn p_rem_monic(&self, a: &[Value], m: &[Value]) -> Vec<Value> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        while r.len() > dm {
            let lc = r.pop().unwrap();
            if self.is_zero(&lc) {
                continue;
            }
            let shift = r.len() - dm;
            for (i, mc) in m[..dm].iter().enumerate() {
                r[shift + i] = self.sub(&r[shift + i], &self.mul(&lc, mc));
            }
        }
        self.p_trim(r)
    }

    pub fn p_divrem(&self, a: &[Value], b: &[Value]) -> ExtResult<(Vec<Value>, Vec<Value>)> {
        let b = self.p_trim(b.to_vec());
        if b.is_empty() {
            return Err(ExtError::DivisionByZero);
        }
        let inv_lc = self.inv(b.last().unwrap())?;
        let db = b.len() - 1;
        let mut r = self.p_trim(a.to_vec());
        if r.len() <= db {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![self.zero(); r.len() - db];
        while r.len() > db {
            let lc = r.pop().unwrap();
            if self.is_zero(&lc) {
                continue;
            }
            let f = self.mul(&lc, &inv_lc);
            let shift = r.len() - db;
            for (i, bc) in b[..db].iter().enumerate() {
                r[shift + i] = self.sub(&r[shift + i], &self.mul(&f, bc));
            }
            q[shift] = f;
        }
        Ok((self.p_trim(q), self.p_trim(r)))
    }

    pub fn p_monic(&self, a: &[Value]) -> ExtResult<Vec<Value>> {
        let a = self.p_trim(a.to_vec());
        match a.last() {
            None => Ok(a),
            Some(lc) => {
                let inv = self.inv(lc)?;
                Ok(self.p_scale(&a, &inv))
            }
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn p_gcd(&self, a: &[Value], b: &[Value]) -> ExtResult<Vec<Value>> {
        let mut a = self.p_trim(a.to_vec());
        let mut b = self.p_trim(b.to_vec());
        while !b.is_empty() {
            let (_, r) = self.p_divrem(&a, &b)?;
            a = b;
            b = r;
        }
        self.p_monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn p_xgcd(
        &self,
        a: &[Value],
        b: &[Value],
    ) -> ExtResult<(Vec<Value>, Vec<Value>, Vec<Value>)> {
        let mut r0 = self.p_trim(a.to_vec());
        let mut r1 = self.p_trim(b.to_vec());
        let mut s0 = vec![self.one()];
        let mut s1: Vec<Value> = Vec::new();
        let mut t0: Vec<Value> = Vec::new();
        let mut t1 = vec![self.one()];
        while !r1.is_empty() {
            let (q, r) = self.p_divrem(&r0, &r1)?;
            let s2 = self.p_sub(&s0, &self.p_mul(&q, &s1));
            let t2 = self.p_sub(&t0, &self.p_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => Ok((r0, s0, t0)),
            Some(lc) => {
                let inv = self.inv(lc)?;
                Ok((
                    self.p_scale(&r0, &inv),
                    self.p_scale(&s0, &inv),
                    self.p_scale(&t0, &inv),
                ))
            }
        }
    }

    pub fn p_deriv(&self, a: &[Value]) -> Vec<Value> {
        self.p_trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.mul(c, &self.int_value(i as i64)))
                .collect(),
        )
    }

    /// Squarefree decomposition (Yun): pairs `(factor, multiplicity)` with
    /// monic, pairwise coprime, squarefree, non-constant factors.
    pub fn p_squarefree(&self, a: &[Value]) -> ExtResult<Vec<(Vec<Value>, usize)>> {
        let a = self.p_monic(a)?;
        if a.len() <= 1 {
            return Ok(Vec::new());
        }
        let da = self.p_deriv(&a);
        let mut out = Vec::new();
        let g = self.p_gcd(&a, &da)?;
        let mut b = self.p_divrem(&a, &g)?.0;
        let mut c = self.p_divrem(&da, &g)?.0;
        let mut d = self.p_sub(&c, &self.p_deriv(&b));
        let mut i = 1;
        loop {
            let aa = self.p_gcd(&b, &d)?;
            if aa.len() > 1 {
                out.push((aa.clone(), i));
            }
            b = self.p_divrem(&b, &aa)?.0;
            if b.len() <= 1 {
                break;
            }
            c = self.p_divrem(&d, &aa)?.0;
            d = self.p_sub(&c, &self.p_deriv(&b));
            i += 1;
        }
        Ok(out)
    }
}

/// Element of an [`ExtField`] with its field attached.
#[derive(Clone, Debug)]
pub struct ExtElem {
    pub field: ExtField,
    pub value: Value,
}

/// Result of [`ExtElem::invert`].
#[derive(Clone, Debug)]
pub enum InvertOutcome {
    Inverse(ExtElem),
    Split {
        fields: (ExtField, ExtField),
        projections: (ExtElem, ExtElem),
    },
}

impl ExtElem {
    pub fn is_zero(&self) -> bool {
        is_zero_value(&self.value)
    }

    fn check(&self, other: &ExtElem) {
        assert!(self.field == other.field, "elements of different towers");
    }

    pub fn add(&self, o: &ExtElem) -> ExtElem {
        self.check(o);
        self.field.elem(self.field.ctx().add(&self.value, &o.value))
    }

    pub fn sub(&self, o: &ExtElem) -> ExtElem {
        self.check(o);
        self.field.elem(self.field.ctx().sub(&self.value, &o.value))
    }

    pub fn mul(&self, o: &ExtElem) -> ExtElem {
        self.check(o);
        self.field.elem(self.field.ctx().mul(&self.value, &o.value))
    }

    pub fn neg(&self) -> ExtElem {
        self.field.elem(self.field.ctx().neg(&self.value))
    }

    /// Inverse via extended gcd with the minimal polynomials; a zero divisor
    /// splits the tower instead.
    pub fn invert(&self) -> std::result::Result<InvertOutcome, ExtError> {
        match self.field.ctx().inv(&self.value) {
            Ok(v) => Ok(InvertOutcome::Inverse(self.field.elem(v))),
            Err(ExtError::Split(ev)) => {
                let (f1, f2) = self.field.split(&ev);
                let p1 = f1.elem(f1.project(&self.value));
                let p2 = f2.elem(f2.project(&self.value));
                Ok(InvertOutcome::Split {
                    fields: (f1, f2),
                    projections: (p1, p2),
                })
            }
            Err(e) => Err(e),
        }
    }
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use proptest::prelude::*;

    fn q(n: i64) -> Value {
        Value::Q(rat_int(n))
    }

    fn sqrt2() -> ExtField {
        ExtField::rational()
            .adjoin("g", &[q(-2), q(0), q(1)])
            .unwrap()
    }

    #[test]
    fn adjoin_degree_one_is_noop() {
        let f = ExtField::rational().adjoin("g", &[q(-3), q(1)]).unwrap();
        assert_eq!(f.depth(), 0);
    }

    #[test]
    fn adjoin_quadratic() {
        let f = sqrt2();
        assert_eq!(f.depth(), 1);
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn adjoin_rejects_square() {
        let r = ExtField::rational().adjoin("g", &[q(1), q(-2), q(1)]);
        assert!(matches!(r, Err(AdjoinError::NotSquarefree)));
    }

    #[test]
    fn invert_one_and_generator() {
        let f = sqrt2();
        let one = f.elem(f.one());
        match one.invert().unwrap() {
            InvertOutcome::Inverse(x) => assert_eq!(x.value, f.one()),
            _ => panic!(),
        }
        let g = f.elem(f.generator());
        let inv = match g.invert().unwrap() {
            InvertOutcome::Inverse(x) => x,
            _ => panic!(),
        };
        // g/2
        let half_g = f.elem(Value::P(vec![Value::Q(rat(0, 1)), Value::Q(rat(1, 2))]));
        assert_eq!(inv, half_g);
        assert_eq!(inv.mul(&g).value, f.one());
    }

    #[test]
    fn invert_zero_divisor_splits() {
        // t^2 - t = t (t - 1)
        let f = ExtField::rational()
            .adjoin("g", &[q(0), q(-1), q(1)])
            .unwrap();
        let x = f.elem(f.generator()).sub(&f.elem(f.one()));
        match x.invert().unwrap() {
            InvertOutcome::Split {
                fields: (f1, f2),
                projections: (p1, p2),
            } => {
                let roots: Vec<Value> =
                    [&f1, &f2].iter().map(|f| f.minpoly(0)[0].clone()).collect();
                // one factor is t, the other t - 1
                assert!(roots.contains(&q(0)) && roots.contains(&q(-1)));
                assert_eq!(f1.degree() + f2.degree(), 2);
                // in the t -> 1 factor, g - 1 vanishes
                let (zero_side, unit_side) = if f1.minpoly(0)[0] == q(-1) {
                    (p1, p2)
                } else {
                    (p2, p1)
                };
                assert!(zero_side.is_zero());
                assert!(!unit_side.is_zero());
            }
            _ => panic!("expected split"),
        }
    }

    #[test]
    fn invert_zero_is_error() {
        let f = sqrt2();
        assert!(matches!(
            f.elem(f.zero()).invert(),
            Err(ExtError::DivisionByZero)
        ));
    }

    #[test]
    fn squarefree_decomposition() {
        let c = ExtField::rational();
        let ctx = c.ctx();
        // t^3 - t^2 = t^2 (t - 1)
        let sf = ctx.p_squarefree(&[q(0), q(0), q(-1), q(1)]).unwrap();
        assert_eq!(sf, vec![(vec![q(-1), q(1)], 1), (vec![q(0), q(1)], 2)]);
    }

    /// Tower of depth <= 2 built from squarefree random polynomials.
    fn tower(m1: (i64, i64), m2: Option<(i64, i64)>) -> ExtField {
        let f = ExtField::rational();
        let f = f.adjoin("a", &[q(m1.0), q(m1.1), q(0), q(1)]).unwrap_or(f);
        match m2 {
            Some((c0, c1)) if f.depth() == 1 => {
                let c = f.ctx();
                let g = f.generator();
                // t^2 + (c1 + a) t + c0
                let coeff = c.add(&c.int_value(c1), &g);
                f.adjoin("b", &[c.int_value(c0), coeff, c.one()])
                    .unwrap_or(f)
            }
            _ => f,
        }
    }

    fn random_elem(f: &ExtField, seed: &[i64]) -> Value {
        let c = f.ctx();
        let mut acc = c.zero();
        let mut gens = Vec::new();
        // monomials in the generators
        let d = f.depth();
        let mut it = seed.iter();
        let basis: Vec<Value> = match d {
            0 => vec![c.one()],
            1 => {
                let g = f.generator();
                vec![c.one(), g.clone(), c.mul(&g, &g)]
            }
            _ => {
                let b = f.generator();
                let base = c.base();
                let a = Value::P(vec![base.generator_in()]);
                gens.push(a.clone());
                vec![c.one(), a.clone(), b.clone(), c.mul(&a, &b), c.mul(&a, &a)]
            }
        };
        for bv in basis {
            let k = *it.next().unwrap_or(&0);
            acc = c.add(&acc, &c.mul(&bv, &c.int_value(k)));
        }
        acc
    }

    impl Ctx<'_> {
        fn generator_in(&self) -> Value {
            Value::P(vec![self.base().zero(), self.base().one()])
        }
    }

    proptest! {
        #[test]
        fn field_axioms(
            m1 in (-5i64..5, -5i64..5),
            m2 in proptest::option::of((-5i64..5, -5i64..5)),
            xs in proptest::collection::vec(-4i64..4, 5),
            ys in proptest::collection::vec(-4i64..4, 5),
            zs in proptest::collection::vec(-4i64..4, 5),
        ) {
            let f = tower(m1, m2);
            let c = f.ctx();
            let x = random_elem(&f, &xs);
            let y = random_elem(&f, &ys);
            let z = random_elem(&f, &zs);
            prop_assert_eq!(c.mul(&c.mul(&x, &y), &z), c.mul(&x, &c.mul(&y, &z)));
            prop_assert_eq!(c.mul(&x, &c.add(&y, &z)), c.add(&c.mul(&x, &y), &c.mul(&x, &z)));
            prop_assert_eq!(c.mul(&x, &y), c.mul(&y, &x));
            match c.inv(&x) {
                Ok(ix) => prop_assert_eq!(c.mul(&x, &ix), c.one()),
                Err(ExtError::DivisionByZero) => prop_assert!(c.is_zero(&x)),
                Err(ExtError::Split(ev)) => {
                    let (f1, f2) = f.split(&ev);
                    if ev.level + 1 == f.depth() {
                        // split at the top: x vanishes in the gcd factor
                        let z1 = f1.ctx().is_zero(&f1.project(&x));
                        let z2 = f2.ctx().is_zero(&f2.project(&x));
                        prop_assert!(z1 || z2);
                    }
                    prop_assert_eq!(f1.degree() + f2.degree(), f.degree());
                }
            }
        }
    }
}
